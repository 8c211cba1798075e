#![no_main]

use libfuzzer_sys::fuzz_target;
use qdivisor::rational::{rat_from_str, rat_to_string};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Some(r) = rat_from_str(s) {
            // Parsing normalizes; the rendered form must parse back to the
            // same value and be a fixpoint of render/parse.
            let rendered = rat_to_string(&r);
            assert_eq!(rat_from_str(&rendered), Some(r));
        }
    }
});
