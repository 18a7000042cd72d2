#![no_main]

use libfuzzer_sys::fuzz_target;
use moea_archive::Bitstring;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = text.parse::<Bitstring>() {
        assert_eq!(x.to_string(), text);
        assert_eq!(x.count_ones() + x.count_zeros(), x.len());
        assert!(x.leading_ones() + x.trailing_zeros() <= x.len());
    }
});
