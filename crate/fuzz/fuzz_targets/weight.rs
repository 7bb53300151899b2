#![no_main]

use bigalg::lie::{weyl_dimension, Weight};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = s.parse::<Weight>() {
        let back: Weight = w.to_string().parse().expect("display reparses");
        assert_eq!(back, w);
        if w.is_dominant() && w.rank() <= 7 && w.0.iter().all(|&c| c <= 64) {
            assert!(weyl_dimension(&w) >= 1);
        }
    }
});
