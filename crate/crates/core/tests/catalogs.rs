use std::path::Path;
use tischler_core::enumerate::{enumerate_graphs, Catalog};

#[test]
fn golden_catalogs_match_enumeration() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalogs");
    for d in 2..=5 {
        let text = std::fs::read_to_string(dir.join(format!("d{d}.json"))).unwrap();
        let golden: Catalog = serde_json::from_str(&text).unwrap();
        assert_eq!(golden, enumerate_graphs(d).unwrap(), "degree {d}");
        let counts = [
            golden.len(),
            golden.entries.iter().filter(|e| !e.obstructed).count(),
        ];
        let expected = match d {
            2 => [1, 1],
            3 => [4, 3],
            4 => [18, 11],
            _ => [170, 82],
        };
        assert_eq!(counts, expected, "degree {d}");
    }
}
