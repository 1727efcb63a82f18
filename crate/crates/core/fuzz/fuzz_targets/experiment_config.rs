#![no_main]

use blockpec::bench::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // validation only; running the experiment would be too slow
    let _ = ExperimentConfig::from_json(text);
});
