#![no_main]

use bigalg::rep::CacheFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = CacheFile::parse(s) {
        let dim = c.dim;
        if dim <= 32 {
            assert_eq!(c.into_rep().dim(), dim);
        }
    }
});
