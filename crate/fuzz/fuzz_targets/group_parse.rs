#![no_main]

use grpchoose::group::AbelianGroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(a) = text.parse::<AbelianGroup>() {
        let back: AbelianGroup = a.to_string().parse().expect("display output parses");
        assert_eq!(back, a);
    }
});
