#![no_main]

use fol2nar::dataset::{parse_record, read_jsonl};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = read_jsonl(data);
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_record(text, 1) {
        let line = r.to_json_line();
        let again = parse_record(&line, 1).expect("written record reparses");
        assert_eq!(again.to_json_line(), line);
    }
});
