//! Fuzz the claim-identifier parser used for `--claims` lists.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qeuler::divisibility::ClaimId;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for piece in text.split(',') {
        if let Ok(claim) = piece.parse::<ClaimId>() {
            // accepted names round-trip exactly
            assert_eq!(claim.as_str(), piece);
        }
    }
});
