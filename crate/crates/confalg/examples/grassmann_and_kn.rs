//! Grassmann arithmetic and the contact superalgebras K_N.
//!
//! K_N is built on the exterior algebra in N odd variables: the basis is
//! indexed by subsets of the variables, products carry the sign of the
//! interleaving permutation, and partial derivatives anticommute past the
//! variables below them. The structure table for K_N packages the two
//! closed product formulas over that arithmetic.

use confalg::builders::{build_kn, GrassmannElement};
use confalg::conformal::{check_axioms, lambda_bracket, ConfElement};
use confalg::parse::render_lambda_poly;
use confalg::ring::RingSpec;
use confalg::scalar::Scalar;

fn main() {
    // xi1 * xi2 = xi12, xi2 * xi1 = -xi12
    let x1 = GrassmannElement::xi(3, 1);
    let x2 = GrassmannElement::xi(3, 2);
    println!("xi1 xi2 = {:?}", x1.mul(&x2));
    println!("xi2 xi1 = {:?}", x2.mul(&x1));
    assert_eq!(x1.mul(&x2), x2.mul(&x1).mul(&GrassmannElement::monomial(3, 0, Scalar::from_int(-1))));
    assert!(x1.mul(&x1).is_zero());

    // derivative steps over earlier variables with a sign
    let x12 = x1.mul(&x2);
    println!("d/dxi2 (xi1 xi2) = {:?}", x12.deriv(2).unwrap());

    for n in 1..=3 {
        let table = build_kn(n).unwrap();
        let report = check_axioms(&table, 6, 4, 2).unwrap();
        assert!(report.passed());
        println!("k{}: {} generators, axioms pass", n, table.basis().len());
    }

    // the unit of K_1 generates a Virasoro-like bracket with central shift
    let table = build_kn(1).unwrap();
    let spec = RingSpec::Const;
    let one = ConfElement::generator(0, spec);
    let br = lambda_bracket(&table, &one, &one).unwrap();
    println!("[1 _lam 1] in k1: {}", render_lambda_poly(table.basis(), &br, false));
}
