#![no_main]

use grpchoose_cli::input::parse_graph6_lines;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    for entry in parse_graph6_lines(text) {
        assert!(entry.line >= 1);
    }
});
