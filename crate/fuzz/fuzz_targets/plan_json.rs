#![no_main]

use libfuzzer_sys::fuzz_target;
use orbitkit::orbit::EliminationPlan;

fuzz_target!(|data: &str| {
    if let Ok(plan) = EliminationPlan::from_json(data) {
        let again = EliminationPlan::from_json(&plan.to_json()).expect("serialized plan parses");
        assert_eq!(plan, again);
    }
});
