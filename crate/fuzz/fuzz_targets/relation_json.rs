#![no_main]

use bigalg::big::{algebra_vars, RelationFile};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = RelationFile::parse(s) {
        let names: Vec<String> = ["M1", "M2", "N1"].map(String::from).to_vec();
        let _ = f.to_polys(&algebra_vars(&names, 3));
        let again = RelationFile::parse(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again, f);
    }
});
