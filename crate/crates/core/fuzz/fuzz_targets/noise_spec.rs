#![no_main]

use blockpec::noise::NoiseSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = serde_json::from_slice::<NoiseSpec>(data) {
        assert!((0.0..=0.5).contains(&spec.p()));
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<NoiseSpec>(&json).unwrap(), spec);
    }
});
