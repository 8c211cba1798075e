#![no_main]

use libfuzzer_sys::fuzz_target;
use qdivisor::wz::Certificate;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(cert) = Certificate::from_json(s) {
            // Anything that parses must serialize to a stable fixpoint.
            let rendered = cert.to_json();
            let reparsed = Certificate::from_json(&rendered).expect("own output reparses");
            assert_eq!(reparsed.to_json(), rendered);
        }
    }
});
