#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitkit::ring::MinimalPolynomial;

fuzz_target!(|data: &str| {
    let _ = MinimalPolynomial::parse(data);
});
