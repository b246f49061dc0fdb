#![no_main]

use fol2nar::fol::{parse_fol, to_ascii, to_unicode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(f) = parse_fol(data) else { return };
    let ascii = to_ascii(&f);
    let again = parse_fol(&ascii).expect("printed formula reparses");
    assert_eq!(to_ascii(&again), ascii);
    let uni = parse_fol(&to_unicode(&f)).expect("unicode form reparses");
    assert_eq!(to_ascii(&uni), ascii);
});
