#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((a, t)) = qdivisor::cli::parse_target(s) {
            // Accepted specs must round-trip through the canonical form.
            assert_eq!(qdivisor::cli::parse_target(&format!("U:{a}:{t}")), Ok((a, t)));
        }
    }
});
