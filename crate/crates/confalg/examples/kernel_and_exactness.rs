//! The kernel of the pair parametrization (A, B) -> theta_{A,B}.
//!
//! theta_{A,B} is the identity exactly when A = B = aI with a^2 = 1 and
//! delta(a) = 0: the parametrization is a two-to-one covering of its image.
//! Over a ring with no exotic square roots of one the kernel is {(I, I),
//! (-I, -I)}; the truncated ring is checked by brute force.

use confalg::morphism::{kernel_witness, KernelVerdict, Sl2Pair};
use confalg::n4::Mat2;
use confalg::ring::{RingElement, RingSpec};
use confalg::scalar::Scalar;

fn scalar_pair(spec: RingSpec, a: i64) -> Sl2Pair {
    Sl2Pair::scalar_pair(spec, Scalar::from_int(a)).unwrap()
}

fn main() {
    for spec in [RingSpec::Const, RingSpec::Laurent, RingSpec::Trunc(4)] {
        for a in [1, -1] {
            let verdict = kernel_witness(&scalar_pair(spec, a)).unwrap();
            match verdict {
                KernelVerdict::InKernel { a: val } => {
                    println!("{}: (aI, aI) with a = {} is in kernel", spec, val)
                }
                KernelVerdict::NotInKernel { .. } => unreachable!("(aI, aI) with a^2 = 1"),
            }
        }
    }

    // mismatched signs leave the kernel; the odd sector betrays them
    let spec = RingSpec::Const;
    let pair = Sl2Pair::new(Mat2::identity(spec), Mat2::scalar_mat(spec, Scalar::from_int(-1)))
        .unwrap();
    match kernel_witness(&pair).unwrap() {
        KernelVerdict::NotInKernel { witness } => {
            println!("(I, -I) not in kernel, moved generator index {}", witness)
        }
        KernelVerdict::InKernel { .. } => unreachable!("B = -I acts as -1 on the odd part"),
    }

    // in trunc:4 the only square roots of one are the constant +-1, and
    // both are killed by delta, so no extra kernel elements hide there
    let spec = RingSpec::Trunc(4);
    let mut roots = Vec::new();
    for c0 in [-1i64, 1] {
        // units are c0 + higher order; square and compare with 1
        for c1 in -2..=2 {
            for c2 in -2..=2 {
                for c3 in -2..=2i64 {
                    let mut u = RingElement::scalar(spec, Scalar::from_int(c0));
                    for (k, c) in [(1i64, c1), (2, c2), (3, c3)] {
                        let m = RingElement::monomial(spec, Scalar::from_int(c), k.into())
                            .unwrap();
                        u = u.add(&m).unwrap();
                    }
                    if u.mul(&u).unwrap().is_one() {
                        roots.push(u);
                    }
                }
            }
        }
    }
    assert_eq!(roots.len(), 2);
    assert!(roots.iter().all(|r| r.is_constant()));
    println!("trunc:4 square roots of 1: {} and {}", roots[0], roots[1]);
}
