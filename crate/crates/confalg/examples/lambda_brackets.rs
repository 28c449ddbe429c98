//! Lambda-brackets in the N=4 algebra over the Laurent ring.
//!
//! Prints the brackets that generate the whole table in matrix form:
//! the Virasoro-like L sector, the current T sector, the L and T actions
//! on the odd part, and the G/G-bar pairing.

use confalg::builders::build_n4;
use confalg::parse::{parse_conf_element, render_lambda_poly};
use confalg::{lambda_bracket, RingSpec};

fn main() {
    let table = build_n4();
    let spec = RingSpec::Laurent;
    let pairs = [
        ("L ⊗ t", "L ⊗ 1"),
        ("L ⊗ t", "T1 ⊗ 1"),
        ("T1 ⊗ 1", "T2 ⊗ 1"),
        ("L ⊗ t", "G1 ⊗ 1"),
        ("T3 ⊗ 1", "G1 ⊗ 1"),
        ("G1 ⊗ 1", "Gb1 ⊗ t"),
    ];
    for (a, b) in pairs {
        let x = parse_conf_element(table.basis(), spec, a).expect("literal");
        let y = parse_conf_element(table.basis(), spec, b).expect("literal");
        let br = lambda_bracket(&table, &x, &y).expect("bracket");
        println!("[{} _lam {}] = {}", a, b, render_lambda_poly(table.basis(), &br, false));
    }

    // derivation shift: the bracket of a d-shifted argument drops the
    // lowest lambda coefficient and picks up -lam times the original
    let x = parse_conf_element(table.basis(), spec, "D L ⊗ 1").expect("literal");
    let y = parse_conf_element(table.basis(), spec, "L ⊗ 1").expect("literal");
    let br = lambda_bracket(&table, &x, &y).expect("bracket");
    println!("[D L _lam L] = {}", render_lambda_poly(table.basis(), &br, false));
}
