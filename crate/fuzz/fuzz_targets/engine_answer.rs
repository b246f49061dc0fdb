#![no_main]

use fol2nar::engine::{parse_answer_line, verdict_from_transcript};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    for line in data.lines() {
        let _ = parse_answer_line(line);
    }
    let _ = verdict_from_transcript(data.lines().map(String::from).collect(), 0, false);
});
