#![no_main]

use fol2nar::compiler::{compile_unit, CompileUnit};
use fol2nar::narsese::{parse_narsese, serialize};
use libfuzzer_sys::fuzz_target;

// One formula per line, the last being the conclusion.
fuzz_target!(|data: &str| {
    let mut lines: Vec<&str> = data.lines().collect();
    let Some(conclusion) = lines.pop() else { return };
    let Ok(unit) = CompileUnit::parse(&lines, conclusion) else { return };
    let Ok(report) = compile_unit(&unit) else { return };
    for line in report.program.lines() {
        let s = parse_narsese(&line).expect("compiler output parses");
        assert_eq!(serialize(&s), line);
    }
});
