#![no_main]

use bigalg::exact::MultiPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = MultiPoly::parse_json(s) {
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(MultiPoly::parse_json(&json).unwrap(), p);
    }
});
