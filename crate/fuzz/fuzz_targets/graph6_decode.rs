#![no_main]

use grpchoose::graph::graph6::{decode_graph6, decode_graph6_bytes, encode_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = decode_graph6_bytes(data) {
        let text = encode_graph6(&g).expect("decoded graphs re-encode");
        let back = decode_graph6(&text).expect("encoder output decodes");
        assert_eq!(encode_graph6(&back).unwrap(), text);
    }
});
