#![no_main]

use libfuzzer_sys::fuzz_target;
use moea_archive::harness::{MuRule, ReportFormat};
use moea_archive::{AlgorithmKind, ProblemKind, ReferencePoint};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = text.parse::<ReferencePoint>() {
        assert_eq!(r.to_string().parse::<ReferencePoint>().unwrap(), r);
    }
    if let Ok(m) = text.parse::<MuRule>() {
        assert_eq!(m.to_string().parse::<MuRule>().unwrap(), m);
    }
    if let Ok(a) = text.parse::<AlgorithmKind>() {
        assert_eq!(a.to_string().parse::<AlgorithmKind>().unwrap(), a);
    }
    if let Ok(p) = text.parse::<ProblemKind>() {
        assert_eq!(p.short_name().parse::<ProblemKind>().unwrap(), p);
    }
    let _ = text.parse::<ReportFormat>();
});
