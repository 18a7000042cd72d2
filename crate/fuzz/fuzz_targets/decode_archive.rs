#![no_main]

use libfuzzer_sys::fuzz_target;
use moea_archive::{dominates, Archive};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = Archive::from_json(text) {
        let set = a.objective_set();
        for x in &set {
            assert!(!set.iter().any(|y| dominates(*y, *x)));
        }
        let back = Archive::from_json(&a.to_json().unwrap()).unwrap();
        assert_eq!(back, a);
    }
});
