//! The theta_{A,B} automorphism family of the N=4 algebra.
//!
//! A ranges over SL2 of the coefficient ring, B over SL2 of its constants.
//! theta twists L by a logarithmic-derivative current, conjugates the
//! currents by A, and maps the odd part M to A M B^{-1}. The assignment is
//! a group homomorphism: theta of a product is the composition.

use confalg::builders::build_n4;
use confalg::morphism::{is_conf_automorphism, theta, AutoVerdict, Sl2Pair};
use confalg::parse::{parse_mat2, render_conf_element};
use confalg::ring::RingSpec;
use confalg::sampling::Sampler;

fn main() {
    let table = build_n4();
    let spec = RingSpec::Laurent;

    // the shear A = [[1, t], [0, 1]] with B = I
    let a = parse_mat2(spec, "[[1, t], [0, 1]]").unwrap();
    let b = parse_mat2(spec, "[[1, 0], [0, 1]]").unwrap();
    let pair = Sl2Pair::new(a, b).unwrap();
    let phi = theta(&pair).unwrap();
    for g in 0..table.basis().len() {
        println!(
            "theta({}) = {}",
            table.basis().name(g),
            render_conf_element(table.basis(), phi.image(g), false)
        );
    }
    assert_eq!(is_conf_automorphism(&table, &phi).unwrap(), AutoVerdict::Automorphism);
    println!("shear pair verifies as an automorphism");

    // homomorphism law on sampled pairs
    let mut s = Sampler::from_seed(11);
    for _ in 0..10 {
        let p1 = s.sl2_pair(spec, 3);
        let p2 = s.sl2_pair(spec, 3);
        let lhs = theta(&p1.mul(&p2).unwrap()).unwrap();
        let rhs = theta(&p1).unwrap().compose(&theta(&p2).unwrap()).unwrap();
        assert_eq!(lhs.images(), rhs.images());
    }
    println!("theta(p1 * p2) = theta(p1) . theta(p2) on 10 sampled pairs");
}
