//! The line-oriented algebra file format.
//!
//! Structure tables serialize to a diff-friendly text format: one
//! `generator` line per basis element, one `prod` line per stored n-th
//! product. Parsing is exact and printing is deterministic, so the files
//! in `algebras/` round trip byte for byte. Run with `--write` to
//! regenerate them from the built-in constructions.

use confalg::builders::{builtin, BUILTIN_NAMES};
use confalg::parse::{parse_algebra, print_algebra};
use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("algebras");
    let write = std::env::args().any(|a| a == "--write");
    for name in BUILTIN_NAMES {
        let table = builtin(name).expect("built-in");
        let text = print_algebra(&table);
        let path = dir.join(format!("{}.alg", name));
        if write {
            std::fs::write(&path, &text).expect("write algebra file");
            println!("wrote {}", path.display());
        } else {
            let on_disk = std::fs::read_to_string(&path).expect("shipped algebra file");
            assert_eq!(on_disk, text, "{}.alg drifted from the builder", name);
            let reparsed = parse_algebra(&on_disk).expect("parse");
            assert_eq!(print_algebra(&reparsed), text, "{}.alg does not round trip", name);
            println!("{}.alg: {} bytes, round trips", name, text.len());
        }
    }

    // a table defined purely in the file format
    let text = "\
algebra virasoro-like
generator L even

prod L L 0 = D L
prod L L 1 = 2 L
";
    let table = parse_algebra(text).expect("parse");
    let report = confalg::check_axioms(&table, 6, 4, 2).expect("check");
    assert!(report.passed());
    println!("inline virasoro-like table parses and passes the axioms");
}
