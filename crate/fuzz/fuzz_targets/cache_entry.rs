#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitkit::groebner::cache::CacheEntry;

fuzz_target!(|data: &str| {
    if let Ok(entry) = CacheEntry::parse(data) {
        let text = entry.to_text();
        let again = CacheEntry::parse(&text).expect("serialized entry parses");
        assert_eq!(text, again.to_text());
    }
});
