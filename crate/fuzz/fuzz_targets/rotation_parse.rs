#![no_main]

use grpchoose::plane::{parse_rotation_system, write_rotation_system};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(pg) = parse_rotation_system(text) {
        let written = write_rotation_system(&pg);
        let back = parse_rotation_system(&written).expect("writer output parses");
        assert_eq!(back.rotations(), pg.rotations());
        let degrees: usize = pg.faces().iter().map(|f| f.degree()).sum();
        assert_eq!(degrees, 2 * pg.graph().m());
    }
});
