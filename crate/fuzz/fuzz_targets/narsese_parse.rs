#![no_main]

use fol2nar::narsese::{parse_narsese, serialize};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(s) = parse_narsese(data) else { return };
    let text = serialize(&s);
    let again = parse_narsese(&text).expect("serialized sentence reparses");
    assert_eq!(serialize(&again), text);
});
