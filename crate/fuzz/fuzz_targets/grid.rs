#![no_main]

use bigalg::spectra::Grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = s.parse::<Grid>() {
        let pts = g.points();
        assert_eq!(pts.len(), g.steps + 1);
        assert!(pts.windows(2).all(|w| w[0] <= w[1]));
    }
});
