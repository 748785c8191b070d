#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitkit::ring::PolyRing;

fuzz_target!(|data: &str| {
    if let Ok(r) = PolyRing::parse_declaration(data) {
        let again = PolyRing::parse_declaration(&r.to_string()).expect("display output parses");
        assert_eq!(r.to_string(), again.to_string());
    }
});
