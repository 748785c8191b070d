#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use orbitkit::ring::{parse_poly, PolyRing};

fn ring() -> &'static Arc<PolyRing> {
    static RING: OnceLock<Arc<PolyRing>> = OnceLock::new();
    RING.get_or_init(|| {
        PolyRing::parse_declaration("vars x1:main, x2:main, x3:main, x4:main, t:param; domain QQ[z]/(z^4 + 1)").unwrap()
    })
}

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_poly(data, ring()) {
        let again = parse_poly(&p.to_string(), ring()).expect("display output parses");
        assert_eq!(p, again);
    }
});
