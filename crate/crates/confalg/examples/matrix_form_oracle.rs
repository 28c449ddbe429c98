//! Two independent routes to the N=4 bracket, cross-checked.
//!
//! Elements of the degree-zero part are written in L/T/G coordinates:
//! a Virasoro coefficient, a traceless 2x2 matrix for the currents, and a
//! general 2x2 matrix for the odd part. `structured_bracket` evaluates the
//! closed-form relations in those coordinates; the generic engine expands
//! the same bracket from the structure table. The two must agree exactly.

use confalg::builders::build_n4;
use confalg::conformal::lambda_bracket;
use confalg::n4::{structured_bracket, LtgElement, Mat2};
use confalg::parse::render_lambda_poly;
use confalg::ring::{RingElement, RingSpec};
use confalg::sampling::Sampler;

fn main() {
    let table = build_n4();
    let spec = RingSpec::Laurent;

    // a concrete pair: L(t) + T(sigma^3) against G(I)
    let a = LtgElement::new(
        RingElement::t(spec).unwrap(),
        Mat2::pauli(spec, 3),
        Mat2::zero(spec),
    )
    .unwrap();
    let b = LtgElement::g_part(Mat2::identity(spec));
    let closed = structured_bracket(&a, &b).unwrap();
    let generic = lambda_bracket(&table, &a.encode(), &b.encode()).unwrap();
    assert_eq!(closed, generic);
    println!(
        "[L(t) + T(s3) _lam G(I)] = {}",
        render_lambda_poly(table.basis(), &closed, false)
    );

    // seeded random cross-check over several rings
    for spec in [RingSpec::Const, RingSpec::Laurent, RingSpec::Trunc(4), RingSpec::Puiseux(2)] {
        let mut s = Sampler::from_seed(2024);
        for _ in 0..50 {
            let a = s.ltg(spec, 2);
            let b = s.ltg(spec, 2);
            let closed = structured_bracket(&a, &b).unwrap();
            let generic = lambda_bracket(&table, &a.encode(), &b.encode()).unwrap();
            assert_eq!(closed, generic, "routes disagree over {}", spec);
        }
        println!("50 random pairs agree over {}", spec);
    }
}
