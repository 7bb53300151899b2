#![no_main]

use bigalg::big::{algebra_vars, parse_poly};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let names: Vec<String> = ["M1", "M2", "N1"].map(String::from).to_vec();
    let vars = algebra_vars(&names, 3);
    if let Ok(p) = parse_poly(s, &vars) {
        assert_eq!(parse_poly(&p.to_string(), &vars).unwrap(), p);
    }
});
