#![no_main]

use blockpec::bench::{mean_gain_by_n, read_gain_csv, write_gain_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = read_gain_csv(text) {
        let _ = mean_gain_by_n(&rows);
        let mut buf = Vec::new();
        write_gain_csv(&rows, &mut buf).unwrap();
    }
});
