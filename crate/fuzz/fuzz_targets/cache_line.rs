#![no_main]

use grpchoose_cli::parse_cache_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|line: &str| {
    if let Ok(rec) = parse_cache_line(line) {
        let text = serde_json::to_string(&rec).expect("records serialize");
        parse_cache_line(&text).expect("serialized records parse");
    }
});
