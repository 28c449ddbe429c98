//! Exact arithmetic in the Gaussian rationals Q(i).
//!
//! All structure constants of the built-in algebras live in this field.
//! Values are kept in canonical form (rationals in lowest terms with a
//! positive denominator), so `==` is decidable structural equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ConfError;

/// An element `re + im*i` of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    /// `(p/q) * i`.
    pub fn from_ratio_im(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(p), BigInt::from(q)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, a non-negative rational.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ConfError> {
        if self.is_zero() {
            return Err(ConfError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    /// A square root in Q(i), if one exists.
    ///
    /// The returned root is the lexicographically least of the pair
    /// `{s, -s}` under `(re, im)` ordering, so the choice is deterministic.
    pub fn sqrt_if_exists(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let root = if self.im.is_zero() {
            if self.re.is_positive() {
                // re = a^2
                rational_sqrt(&self.re).map(|a| Scalar::new(a, BigRational::zero()))
            } else {
                // re = -b^2, root = b*i
                rational_sqrt(&-&self.re).map(|b| Scalar::new(BigRational::zero(), b))
            }
        } else {
            // (a + bi)^2 = re + im*i with im != 0 forces a != 0:
            //   a^2 - b^2 = re, 2ab = im, a^2 = (re + |self|)/2.
            let n = rational_sqrt(&self.norm())?;
            let a2 = (&self.re + &n) / BigRational::from_integer(BigInt::from(2));
            let a = rational_sqrt(&a2)?;
            if a.is_zero() {
                return None;
            }
            let b = &self.im / (BigRational::from_integer(BigInt::from(2)) * &a);
            Some(Scalar::new(a, b))
        }?;
        let neg = -root.clone();
        Some(if neg < root { neg } else { root })
    }
}

/// Square root of a non-negative rational, if it is rational.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let p = x.numer().sqrt();
    let q = x.denom().sqrt();
    if &(&p * &p) == x.numer() && &(&q * &q) == x.denom() {
        Some(BigRational::new(p, q))
    } else {
        None
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero scalar")
    }
}
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Renders in the literal grammar: `p`, `p/q`, `i`, `p/q i`, `re + im i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im).is_one() {
                write!(f, "-i")
            } else {
                fmt_rational(im, f)?;
                write!(f, " i")
            }
        };
        if self.re.is_zero() {
            return write_im(f, &self.im);
        }
        fmt_rational(&self.re, f)?;
        if self.im.is_negative() {
            write!(f, " - ")?;
            write_im(f, &-&self.im)
        } else {
            write!(f, " + ")?;
            write_im(f, &self.im)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Scalar {
        Scalar::from_ratio(p, q)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(s(1, 2) + s(1, 2), Scalar::one());
        assert_eq!(Scalar::i() + Scalar::from_ratio_im(-1, 1), Scalar::zero());
        let lhs = (s(1, 3) + Scalar::from_ratio_im(1, 2)) + (s(1, 6) + Scalar::from_ratio_im(1, 2));
        assert_eq!(lhs, s(1, 2) + Scalar::i());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        let lhs = (Scalar::one() + Scalar::i()) * (Scalar::one() - Scalar::i());
        assert_eq!(lhs, Scalar::from_int(2));
        assert_eq!(Scalar::zero() * s(7, 3), Scalar::zero());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Scalar::from_int(2).inv().unwrap(), s(1, 2));
        assert_eq!(Scalar::i().inv().unwrap(), Scalar::from_ratio_im(-1, 1));
        assert_eq!(
            (Scalar::one() + Scalar::i()).inv().unwrap(),
            s(1, 2) + Scalar::from_ratio_im(-1, 2)
        );
        assert!(matches!(Scalar::zero().inv(), Err(ConfError::DivisionByZero)));
    }

    #[test]
    fn sqrt_examples() {
        // Tie-break picks the lexicographically least of {s, -s}.
        assert_eq!(Scalar::from_int(4).sqrt_if_exists().unwrap(), Scalar::from_int(-2));
        assert_eq!(
            Scalar::from_int(-1).sqrt_if_exists().unwrap(),
            Scalar::from_ratio_im(-1, 1)
        );
        assert_eq!(Scalar::from_int(2).sqrt_if_exists(), None);
        // 2i = (1+i)^2
        let r = Scalar::from_ratio_im(2, 1).sqrt_if_exists().unwrap();
        assert_eq!(&r * &r, Scalar::from_ratio_im(2, 1));
        assert_eq!(Scalar::zero().sqrt_if_exists().unwrap(), Scalar::zero());
    }

    #[test]
    fn sqrt_is_deterministic_and_squares_back() {
        for v in [s(9, 4), s(-9, 4), Scalar::i(), s(1, 2) * Scalar::i()] {
            if let Some(r) = v.sqrt_if_exists() {
                assert_eq!(&r * &r, v.clone());
                assert_eq!(v.sqrt_if_exists().unwrap(), r);
            }
        }
    }

    #[test]
    fn display_round_values() {
        assert_eq!(Scalar::from_int(-2).to_string(), "-2");
        assert_eq!(s(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!(Scalar::from_ratio_im(3, 2).to_string(), "3/2 i");
        assert_eq!((s(1, 2) + Scalar::i()).to_string(), "1/2 + i");
        assert_eq!((Scalar::from_int(-2) - Scalar::from_ratio_im(1, 3)).to_string(), "-2 - 1/3 i");
    }
}
