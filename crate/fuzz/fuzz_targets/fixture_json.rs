#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitkit::orbit::DegenerationFamily;

fuzz_target!(|data: &str| {
    if let Ok(fam) = DegenerationFamily::from_json(data) {
        let again = DegenerationFamily::from_json(&fam.to_json()).expect("serialized fixture parses");
        assert_eq!(fam.to_json(), again.to_json());
    }
});
