//! Differential rings `(R, delta)`: a commutative k-algebra with a k-linear
//! derivation, together with the concrete exact instances the engine works
//! over. Elements are sparse maps from exponents to `Scalar` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::ConfError;
use crate::scalar::Scalar;

/// Exponent of `t` in a ring element. Integral except in Puiseux rings,
/// where the denominator divides the `RingSpec::Puiseux` bound `D`.
pub type Exponent = Rational64;

/// The shape of a differential ring:
///
/// - `Const`   = (k, 0)
/// - `Laurent` = (k[t^{+-1}], d/dt)
/// - `Puiseux(D)` = (k[t^{+-1/D}], d/dt)
/// - `Trunc(N)`   = (k[t]/(t^N), d/dt), a non-domain with nilpotents
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RingSpec {
    Const,
    Laurent,
    Puiseux(u32),
    Trunc(u32),
}

impl RingSpec {
    pub fn validate(&self) -> Result<(), ConfError> {
        match self {
            RingSpec::Puiseux(d) if *d == 0 => {
                Err(ConfError::Usage("puiseux denominator must be >= 1".into()))
            }
            RingSpec::Trunc(n) if *n == 0 => {
                Err(ConfError::Usage("trunc order must be >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    fn allows_exponent(&self, e: Exponent) -> bool {
        match self {
            RingSpec::Const => e.is_zero(),
            RingSpec::Laurent => e.is_integer(),
            RingSpec::Puiseux(d) => (e * Exponent::from_integer(*d as i64)).is_integer(),
            RingSpec::Trunc(n) => {
                e.is_integer() && !e.is_negative() && e < Exponent::from_integer(*n as i64)
            }
        }
    }

    pub fn is_integral_domain(&self) -> bool {
        !matches!(self, RingSpec::Trunc(_))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Const => write!(f, "const"),
            RingSpec::Laurent => write!(f, "laurent"),
            RingSpec::Puiseux(d) => write!(f, "puiseux:{}", d),
            RingSpec::Trunc(n) => write!(f, "trunc:{}", n),
        }
    }
}

/// A sparse element of a differential ring; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RingElement {
    spec: RingSpec,
    coeffs: BTreeMap<Exponent, Scalar>,
}

impl RingElement {
    pub fn zero(spec: RingSpec) -> Self {
        RingElement { spec, coeffs: BTreeMap::new() }
    }

    pub fn one(spec: RingSpec) -> Self {
        Self::scalar(spec, Scalar::one())
    }

    pub fn scalar(spec: RingSpec, c: Scalar) -> Self {
        let mut e = Self::zero(spec);
        if !c.is_zero() {
            e.coeffs.insert(Exponent::zero(), c);
        }
        e
    }

    /// `c * t^q`, with the exponent validated against the ring's `RingSpec`.
    pub fn monomial(spec: RingSpec, c: Scalar, q: Exponent) -> Result<Self, ConfError> {
        if !spec.allows_exponent(q) {
            return Err(ConfError::BadExponent(q.to_string(), spec.to_string()));
        }
        let mut e = Self::zero(spec);
        if !c.is_zero() {
            e.coeffs.insert(q, c);
        }
        Ok(e)
    }

    /// `t` in Laurent or Puiseux rings, `t` in Trunc(N) for N >= 2.
    pub fn t(spec: RingSpec) -> Result<Self, ConfError> {
        Self::monomial(spec, Scalar::one(), Exponent::one())
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self.coeffs.get(&Exponent::zero()).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Scalar)> {
        self.coeffs.iter().map(|(q, c)| (*q, c))
    }

    /// Coefficient of `t^0`.
    pub fn constant_term(&self) -> Scalar {
        self.coeffs.get(&Exponent::zero()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// If the element is a pure scalar (supported on exponent 0 only),
    /// return it.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.coeffs.is_empty() {
            Some(Scalar::zero())
        } else if self.coeffs.len() == 1 {
            self.coeffs.get(&Exponent::zero()).cloned()
        } else {
            None
        }
    }

    fn check_spec(&self, other: &Self) -> Result<(), ConfError> {
        if self.spec != other.spec {
            Err(ConfError::SpecMismatch(self.spec.to_string(), other.spec.to_string()))
        } else {
            Ok(())
        }
    }

    fn insert_term(&mut self, q: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let RingSpec::Trunc(n) = self.spec {
            if q >= Exponent::from_integer(n as i64) {
                return;
            }
        }
        match self.coeffs.entry(q) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ConfError> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (q, c) in &other.coeffs {
            out.insert_term(*q, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ConfError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElement {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|(q, c)| (*q, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ConfError> {
        self.check_spec(other)?;
        let mut out = Self::zero(self.spec);
        for (qa, ca) in &self.coeffs {
            for (qb, cb) in &other.coeffs {
                out.insert_term(qa + qb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.spec);
        }
        RingElement {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|(q, x)| (*q, x * c)).collect(),
        }
    }

    /// The derivation: zero on `Const`, `d/dt` on the Laurent and Puiseux
    /// rings, and the Euler operator `t d/dt` on `Trunc(N)`.
    ///
    /// The truncated ring admits no derivation with `delta(t) = 1`: the
    /// ideal `(t^N)` would have to absorb `N t^{N-1}`. The Euler operator
    /// preserves degrees, so it descends to the quotient and satisfies the
    /// Leibniz rule exactly on truncated representatives.
    pub fn delta(&self) -> Self {
        let mut out = Self::zero(self.spec);
        if self.spec == RingSpec::Const {
            return out;
        }
        let euler = matches!(self.spec, RingSpec::Trunc(_));
        for (q, c) in &self.coeffs {
            if q.is_zero() {
                continue;
            }
            let factor = Scalar::from_ratio(*q.numer(), *q.denom());
            let target = if euler { *q } else { q - Exponent::one() };
            out.insert_term(target, c * factor);
        }
        out
    }

    /// Divided power of the derivation, `delta^j / j!`.
    pub fn delta_divided(&self, j: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..j {
            out = out.delta();
        }
        let mut fact = Scalar::one();
        for m in 1..=j as i64 {
            fact = fact * Scalar::from_int(m);
        }
        out.scale(&fact.inv().expect("factorial is nonzero"))
    }

    /// True iff `delta` kills the element.
    pub fn is_constant(&self) -> bool {
        self.delta().is_zero()
    }

    /// Two-sided inverse, when the element is a unit.
    ///
    /// Trunc(N) inverts by Neumann series when the constant term is a unit.
    /// Laurent/Puiseux use a bounded division attempt from the lowest
    /// exponent (support bound 2x the input's exponent span); this is sound
    /// but incomplete, which is enough for the monomial-times-unit cases the
    /// theorems need.
    pub fn inverse_if_unit(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self.spec {
            RingSpec::Const => {
                let c = self.constant_term();
                Some(Self::scalar(self.spec, c.inv().ok()?))
            }
            RingSpec::Trunc(n) => {
                let c0 = self.constant_term();
                if c0.is_zero() {
                    return None;
                }
                // x = c0(1 - u) with u nilpotent; invert by geometric series.
                let c0_inv = Self::scalar(self.spec, c0.inv().ok()?);
                let u = Self::one(self.spec)
                    .sub(&self.mul(&c0_inv).ok()?)
                    .ok()?;
                let mut inv = Self::one(self.spec);
                let mut pow = Self::one(self.spec);
                for _ in 1..n {
                    pow = pow.mul(&u).ok()?;
                    if pow.is_zero() {
                        break;
                    }
                    inv = inv.add(&pow).ok()?;
                }
                inv = inv.mul(&c0_inv).ok()?;
                debug_assert!(self.mul(&inv).unwrap().is_one());
                Some(inv)
            }
            RingSpec::Laurent | RingSpec::Puiseux(_) => {
                let lo = *self.coeffs.keys().next().unwrap();
                let hi = *self.coeffs.keys().next_back().unwrap();
                let span = hi - lo;
                let bound = -lo + span * Exponent::from_integer(2);
                let lead = self.coeffs[&lo].clone();
                let lead_inv = lead.inv().ok()?;
                let mut quot = Self::zero(self.spec);
                let mut rem = Self::one(self.spec);
                while !rem.is_zero() {
                    let e = *rem.coeffs.keys().next().unwrap();
                    let q = e - lo;
                    if q > bound {
                        return None;
                    }
                    let c = &rem.coeffs[&e] * &lead_inv;
                    let term = Self::monomial(self.spec, c, q).ok()?;
                    rem = rem.sub(&term.mul(self).ok()?).ok()?;
                    quot = quot.add(&term).ok()?;
                }
                Some(quot)
            }
        }
    }

    /// Image under the canonical derivation-compatible inclusion into
    /// `target`, when one exists (Const -> any, Laurent -> Puiseux,
    /// Puiseux(D) -> Puiseux(D') with D | D', or the identity).
    pub fn embed(&self, target: RingSpec) -> Result<Self, ConfError> {
        let ok = match (self.spec, target) {
            (a, b) if a == b => true,
            (RingSpec::Const, _) => true,
            (RingSpec::Laurent, RingSpec::Puiseux(_)) => true,
            (RingSpec::Puiseux(d), RingSpec::Puiseux(d2)) => d2 % d == 0,
            _ => false,
        };
        if !ok {
            return Err(ConfError::NoCanonicalMap(self.spec.to_string(), target.to_string()));
        }
        let mut out = Self::zero(target);
        for (q, c) in &self.coeffs {
            out.insert_term(*q, c.clone());
        }
        Ok(out)
    }
}

fn fmt_exponent(q: Exponent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RingElement {
    /// Renders in the element literal grammar: a sum of `<scalar> t^<q>`
    /// terms, lowest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, c) in &self.coeffs {
            // Split a complex coefficient into real and imaginary terms so
            // the output stays inside the literal grammar.
            let mut parts: Vec<Scalar> = Vec::new();
            if !c.re().is_zero() {
                parts.push(Scalar::new(c.re().clone(), num_rational::BigRational::zero()));
            }
            if !c.im().is_zero() {
                parts.push(Scalar::new(num_rational::BigRational::zero(), c.im().clone()));
            }
            for part in parts {
                let (neg, abs) = if (part.re().is_negative() && part.im().is_zero())
                    || (part.re().is_zero() && part.im().is_negative())
                {
                    (true, -&part)
                } else {
                    (false, part.clone())
                };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let coeff_is_one = abs.is_one();
                if q.is_zero() {
                    write!(f, "{}", abs)?;
                } else {
                    if !coeff_is_one {
                        write!(f, "{} ", abs)?;
                    }
                    write!(f, "t")?;
                    if !q.is_one() {
                        write!(f, "^")?;
                        fmt_exponent(*q, f)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(spec: RingSpec) -> RingElement {
        RingElement::t(spec).unwrap()
    }

    fn mono(spec: RingSpec, p: i64, q: i64, num: i64, den: i64) -> RingElement {
        RingElement::monomial(spec, Scalar::from_ratio(p, q), Exponent::new(num, den)).unwrap()
    }

    #[test]
    fn ring_arithmetic_examples() {
        let l = RingSpec::Laurent;
        let t_inv = mono(l, 1, 1, -1, 1);
        assert!(t(l).mul(&t_inv).unwrap().is_one());

        let tr = RingSpec::Trunc(3);
        let a = RingElement::one(tr).add(&t(tr)).unwrap();
        let b = RingElement::one(tr).add(&mono(tr, 1, 1, 2, 1)).unwrap();
        let expect = RingElement::one(tr)
            .add(&t(tr))
            .unwrap()
            .add(&mono(tr, 1, 1, 2, 1))
            .unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);

        let p = RingSpec::Puiseux(2);
        let half = mono(p, 1, 1, 1, 2);
        assert_eq!(half.mul(&half).unwrap(), t(p));
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = t(RingSpec::Laurent);
        let b = RingElement::one(RingSpec::Const);
        assert!(matches!(a.add(&b), Err(ConfError::SpecMismatch(_, _))));
    }

    #[test]
    fn delta_examples() {
        let l = RingSpec::Laurent;
        let t3 = mono(l, 1, 1, 3, 1);
        assert_eq!(t3.delta(), mono(l, 3, 1, 2, 1));
        let t_inv = mono(l, 1, 1, -1, 1);
        assert_eq!(t_inv.delta(), mono(l, -1, 1, -2, 1));
        let c = RingElement::scalar(RingSpec::Const, Scalar::from_ratio(7, 2));
        assert!(c.delta().is_zero());
    }

    #[test]
    fn delta_divided_examples() {
        let l = RingSpec::Laurent;
        let t3 = mono(l, 1, 1, 3, 1);
        assert_eq!(t3.delta_divided(2), mono(l, 3, 1, 1, 1));
        assert_eq!(t3.delta_divided(0), t3);
        assert!(t3.delta_divided(4).is_zero());
    }

    #[test]
    fn is_constant_examples() {
        let l = RingSpec::Laurent;
        assert!(RingElement::scalar(l, Scalar::from_int(5)).is_constant());
        assert!(!t(l).is_constant());
        let tr = RingSpec::Trunc(2);
        assert!(!RingElement::one(tr).add(&t(tr)).unwrap().is_constant());
    }

    #[test]
    fn inverse_examples() {
        let l = RingSpec::Laurent;
        let x = mono(l, 2, 1, 2, 1); // 2t^2
        assert_eq!(x.inverse_if_unit().unwrap(), mono(l, 1, 2, -2, 1));

        let tr = RingSpec::Trunc(3);
        let one_minus_t = RingElement::one(tr).sub(&t(tr)).unwrap();
        let geom = RingElement::one(tr)
            .add(&t(tr))
            .unwrap()
            .add(&mono(tr, 1, 1, 2, 1))
            .unwrap();
        assert_eq!(one_minus_t.inverse_if_unit().unwrap(), geom);

        let one_plus_t = RingElement::one(l).add(&t(l)).unwrap();
        assert_eq!(one_plus_t.inverse_if_unit(), None);
    }

    #[test]
    fn embed_examples() {
        let p2 = RingSpec::Puiseux(2);
        assert_eq!(t(RingSpec::Laurent).embed(p2).unwrap(), t(p2));
        let c = RingElement::scalar(RingSpec::Const, Scalar::from_int(3));
        assert_eq!(c.embed(RingSpec::Laurent).unwrap(), RingElement::scalar(RingSpec::Laurent, Scalar::from_int(3)));
        let tr = RingElement::one(RingSpec::Trunc(2));
        assert!(matches!(tr.embed(RingSpec::Laurent), Err(ConfError::NoCanonicalMap(_, _))));
    }

    #[test]
    fn trunc_square_roots_of_one_by_brute_force() {
        // In k[t]/(t^N) the only square roots of 1 are +-1; each is constant.
        // Solve coefficient equations degree by degree: r0^2 = 1 and, for
        // m >= 1, 2 r0 rm = -(sum_{0<j<m} rj r_{m-j}); induction gives rm = 0.
        // Brute-force over a small rational grid confirms at N = 4.
        let n = 4u32;
        let tr = RingSpec::Trunc(n);
        let pool: Vec<Scalar> = vec![
            Scalar::from_int(-2),
            Scalar::from_int(-1),
            Scalar::zero(),
            Scalar::from_int(1),
            Scalar::from_int(2),
        ];
        let mut roots = Vec::new();
        // coefficients (r0, r1) exhaustive over pool, r2, r3 forced to follow
        for r0 in &pool {
            for r1 in &pool {
                for r2 in &pool {
                    for r3 in &pool {
                        let mut e = RingElement::scalar(tr, r0.clone());
                        for (m, c) in [(1, r1), (2, r2), (3, r3)] {
                            e = e
                                .add(&RingElement::monomial(tr, c.clone(), Exponent::from_integer(m)).unwrap())
                                .unwrap();
                        }
                        if e.mul(&e).unwrap().is_one() {
                            roots.push(e);
                        }
                    }
                }
            }
        }
        let one = RingElement::one(tr);
        let minus_one = one.neg();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&one));
        assert!(roots.contains(&minus_one));
        for r in &roots {
            assert!(r.delta().is_zero());
        }
    }

    #[test]
    fn display_literals() {
        let l = RingSpec::Laurent;
        assert_eq!(t(l).to_string(), "t");
        assert_eq!(mono(l, -1, 2, -2, 1).to_string(), "-1/2 t^-2");
        let e = RingElement::one(l).add(&mono(l, 2, 1, 3, 1)).unwrap();
        assert_eq!(e.to_string(), "1 + 2 t^3");
        let p = RingSpec::Puiseux(2);
        assert_eq!(mono(p, 1, 1, 1, 2).to_string(), "t^1/2");
        assert_eq!(RingElement::zero(l).to_string(), "0");
    }
}
