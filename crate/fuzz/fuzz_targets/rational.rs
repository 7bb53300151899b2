#![no_main]

use bigalg::exact::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = s.parse::<Rational>() {
        let back: Rational = r.to_string().parse().expect("display reparses");
        assert_eq!(back, r);
        let _ = r.to_decimal_string(12);
    }
});
