//! Base change along a ring embedding commutes with everything.
//!
//! The Laurent ring embeds into the Puiseux ring with half-integer
//! exponents. Transporting elements along that embedding commutes with the
//! lambda-bracket, and transporting a theta parameter pair commutes with
//! building the automorphism: the whole calculus is functorial in the
//! coefficient ring.

use confalg::builders::build_n4;
use confalg::conformal::lambda_bracket;
use confalg::morphism::{theta, Sl2Pair};
use confalg::ring::RingSpec;
use confalg::sampling::Sampler;

fn main() {
    let table = build_n4();
    let src = RingSpec::Laurent;
    let dst = RingSpec::Puiseux(2);
    let mut s = Sampler::from_seed(31);

    for k in 0..25 {
        let a = s.conf_element(table.basis().len(), src, 1, 3);
        let b = s.conf_element(table.basis().len(), src, 1, 3);
        let bracket_then_embed = lambda_bracket(&table, &a, &b).unwrap().embed(dst).unwrap();
        let embed_then_bracket =
            lambda_bracket(&table, &a.embed(dst).unwrap(), &b.embed(dst).unwrap()).unwrap();
        assert_eq!(bracket_then_embed, embed_then_bracket, "sample {}", k);
    }
    println!("lambda_bracket commutes with laurent -> puiseux:2 on 25 samples");

    for k in 0..25 {
        let pair = s.sl2_pair(src, 3);
        let embedded =
            Sl2Pair::new(pair.a.embed(dst).unwrap(), pair.b.embed(dst).unwrap()).unwrap();
        let theta_then_embed: Vec<_> = theta(&pair)
            .unwrap()
            .images()
            .iter()
            .map(|e| e.embed(dst).unwrap())
            .collect();
        let embed_then_theta = theta(&embedded).unwrap();
        assert_eq!(&theta_then_embed[..], embed_then_theta.images(), "sample {}", k);
    }
    println!("theta commutes with laurent -> puiseux:2 on 25 samples");
}
