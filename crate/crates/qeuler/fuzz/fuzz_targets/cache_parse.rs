//! Fuzz the cache store parser: arbitrary bytes must never panic it, and
//! anything it accepts must survive a serialize/reparse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qeuler::cache::CacheStore;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(store) = CacheStore::parse(text) {
        let canonical = store.serialize();
        let reparsed = CacheStore::parse(&canonical).expect("canonical form must reparse");
        assert_eq!(store, reparsed);
        // canonical serialization is a fixed point
        assert_eq!(reparsed.serialize(), canonical);
    }
});
