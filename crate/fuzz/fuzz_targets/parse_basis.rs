#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(basis) = qdivisor::quasimodular::parse_basis(s) {
            // Every accepted generator reparses from its display form.
            for id in basis {
                assert_eq!(
                    qdivisor::quasimodular::EisensteinId::parse(&id.to_string()),
                    Ok(id)
                );
            }
        }
    }
});
