//! Builds a report document, writes it as JSON and reads it back.

use moduli_aut::cli::{build_report, parse_group_spec, ReportDocument};

fn main() {
    let gf = parse_group_spec("E6:adjoint").unwrap();
    let doc = build_report(&gf, 5, &vec![1]).unwrap();
    let json = serde_json::to_string_pretty(&doc).unwrap();
    println!("{json}");
    let back: ReportDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(back, doc);
    eprintln!("round trip ok ({} bytes)", json.len());
}
