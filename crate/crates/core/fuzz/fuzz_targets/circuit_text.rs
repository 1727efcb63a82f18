#![no_main]

use blockpec::circuit::{parse_circuit, to_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_circuit(text) {
        let again = parse_circuit(&to_text(&c)).expect("serialized circuit parses");
        assert_eq!(again.ops(), c.ops());
    }
});
