//! An automorphism that escapes the degree-zero part.
//!
//! In the alternate basis of K_2, the map phi swaps the odd generators,
//! negates the even current, and sends the unit to `one - D xiddxi`. The
//! image of `one` carries a derivation power, so phi does not stabilize
//! the span of the generators, yet it is a genuine automorphism: its own
//! inverse. A bounded search over signed permutation maps with one
//! derivation correction rediscovers a witness of the same shape, and the
//! same search over the N=4 algebra finds nothing.

use confalg::builders::{build_k2_alt, build_n4};
use confalg::morphism::{bounded_escape_search, is_conf_automorphism, k2_phi, AutoVerdict};
use confalg::parse::render_conf_element;
use confalg::ring::RingSpec;

fn main() {
    let table = build_k2_alt();
    let spec = RingSpec::Const;
    let phi = k2_phi(table.basis(), spec).unwrap();
    for g in 0..table.basis().len() {
        println!(
            "phi({}) = {}",
            table.basis().name(g),
            render_conf_element(table.basis(), phi.image(g), false)
        );
    }
    assert!(phi.compose(&phi).unwrap().is_identity());
    assert!(!phi.is_v_stable());
    assert_eq!(is_conf_automorphism(&table, &phi).unwrap(), AutoVerdict::Automorphism);
    println!("phi^2 = id, not V-stable, verified automorphism");

    let witness = bounded_escape_search(&table, spec, 1).unwrap();
    let w = witness.expect("k2-alt admits an escaping automorphism");
    println!("search witness on k2-alt:");
    for g in 0..table.basis().len() {
        println!(
            "  {} -> {}",
            table.basis().name(g),
            render_conf_element(table.basis(), w.image(g), false)
        );
    }

    let n4 = build_n4();
    for spec in [RingSpec::Const, RingSpec::Laurent] {
        let found = bounded_escape_search(&n4, spec, 1).unwrap();
        assert!(found.is_none());
        println!("n4 over {}: no escaping automorphism with d-power <= 1", spec);
    }
}
