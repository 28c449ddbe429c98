//! Matrix calculus for the N=4 algebra: 2x2 matrices over a differential
//! ring, the dagger involution, the L/T/G coordinates on `V (x) R`, and the
//! structured lambda-bracket computed from the six matrix-form relations.
//!
//! Everything here is an independent route: the generic engine in
//! [`crate::conformal`] computes the same brackets from the structure table,
//! and the two are cross-validated in tests.

use std::fmt;

use crate::builders::{n4_gen, pauli};
use crate::conformal::{ConfElement, LambdaPoly};
use crate::error::ConfError;
use crate::ring::{RingElement, RingSpec};
use crate::scalar::Scalar;

/// A 2x2 matrix over a differential ring, entries `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    spec: RingSpec,
    pub e: [[RingElement; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[RingElement; 2]; 2]) -> Result<Self, ConfError> {
        let spec = e[0][0].spec();
        for row in &e {
            for x in row {
                if x.spec() != spec {
                    return Err(ConfError::SpecMismatch(spec.to_string(), x.spec().to_string()));
                }
            }
        }
        Ok(Mat2 { spec, e })
    }

    pub fn zero(spec: RingSpec) -> Self {
        let z = || RingElement::zero(spec);
        Mat2 { spec, e: [[z(), z()], [z(), z()]] }
    }

    pub fn identity(spec: RingSpec) -> Self {
        let mut m = Self::zero(spec);
        m.e[0][0] = RingElement::one(spec);
        m.e[1][1] = RingElement::one(spec);
        m
    }

    /// `c * I` for a scalar `c`.
    pub fn scalar_mat(spec: RingSpec, c: Scalar) -> Self {
        let mut m = Self::zero(spec);
        m.e[0][0] = RingElement::scalar(spec, c.clone());
        m.e[1][1] = RingElement::scalar(spec, c);
        m
    }

    /// `r * I` for a ring element `r`.
    pub fn ring_scalar_mat(r: &RingElement) -> Self {
        let mut m = Self::zero(r.spec());
        m.e[0][0] = r.clone();
        m.e[1][1] = r.clone();
        m
    }

    /// The Pauli matrix `sigma^i` over the given ring.
    pub fn pauli(spec: RingSpec, i: usize) -> Self {
        let p = pauli(i);
        Mat2 {
            spec,
            e: [
                [
                    RingElement::scalar(spec, p[0][0].clone()),
                    RingElement::scalar(spec, p[0][1].clone()),
                ],
                [
                    RingElement::scalar(spec, p[1][0].clone()),
                    RingElement::scalar(spec, p[1][1].clone()),
                ],
            ],
        }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|row| row.iter().all(|x| x.is_zero()))
    }

    pub fn trace(&self) -> RingElement {
        self.e[0][0].add(&self.e[1][1]).expect("same spec")
    }

    pub fn det(&self) -> RingElement {
        let ad = self.e[0][0].mul(&self.e[1][1]).expect("same spec");
        let bc = self.e[0][1].mul(&self.e[1][0]).expect("same spec");
        ad.sub(&bc).expect("same spec")
    }

    /// The dagger involution: `(a, b; c, d) -> (-d, b; c, -a)`.
    /// It satisfies `M M^dag = -det(M) I` and `(M N)^dag = -N^dag M^dag`.
    pub fn dagger(&self) -> Self {
        Mat2 {
            spec: self.spec,
            e: [
                [self.e[1][1].neg(), self.e[0][1].clone()],
                [self.e[1][0].clone(), self.e[0][0].neg()],
            ],
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ConfError> {
        Ok(Mat2 {
            spec: self.spec,
            e: [
                [self.e[0][0].add(&other.e[0][0])?, self.e[0][1].add(&other.e[0][1])?],
                [self.e[1][0].add(&other.e[1][0])?, self.e[1][1].add(&other.e[1][1])?],
            ],
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ConfError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Mat2 {
            spec: self.spec,
            e: [
                [self.e[0][0].neg(), self.e[0][1].neg()],
                [self.e[1][0].neg(), self.e[1][1].neg()],
            ],
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ConfError> {
        let mut out = Self::zero(self.spec);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = RingElement::zero(self.spec);
                for k in 0..2 {
                    acc = acc.add(&self.e[i][k].mul(&other.e[k][j])?)?;
                }
                out.e[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, ConfError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Mat2 {
            spec: self.spec,
            e: [
                [self.e[0][0].scale(c), self.e[0][1].scale(c)],
                [self.e[1][0].scale(c), self.e[1][1].scale(c)],
            ],
        }
    }

    pub fn scale_ring(&self, r: &RingElement) -> Result<Self, ConfError> {
        Ok(Mat2 {
            spec: self.spec,
            e: [
                [self.e[0][0].mul(r)?, self.e[0][1].mul(r)?],
                [self.e[1][0].mul(r)?, self.e[1][1].mul(r)?],
            ],
        })
    }

    /// Entrywise derivation.
    pub fn delta(&self) -> Self {
        Mat2 {
            spec: self.spec,
            e: [
                [self.e[0][0].delta(), self.e[0][1].delta()],
                [self.e[1][0].delta(), self.e[1][1].delta()],
            ],
        }
    }

    /// True iff every entry is killed by the derivation (entries in `R_0`).
    pub fn is_constant(&self) -> bool {
        self.e.iter().all(|row| row.iter().all(|x| x.delta().is_zero()))
    }

    /// `A^{-1} = -A^dag / det(A)` when the determinant is a unit.
    pub fn inverse(&self) -> Result<Self, ConfError> {
        let det = self.det();
        let det_inv = det.inverse_if_unit().ok_or(ConfError::DivisionByZero)?;
        self.dagger().neg().scale_ring(&det_inv)
    }

    pub fn embed(&self, target: RingSpec) -> Result<Self, ConfError> {
        Ok(Mat2 {
            spec: target,
            e: [
                [self.e[0][0].embed(target)?, self.e[0][1].embed(target)?],
                [self.e[1][0].embed(target)?, self.e[1][1].embed(target)?],
            ],
        })
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// An element of `V (x) R` for the N=4 algebra, in L/T/G coordinates:
/// `L(r) + T(X) + G(M)` with `X` traceless.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LtgElement {
    pub l: RingElement,
    pub x: Mat2,
    pub m: Mat2,
}

impl LtgElement {
    pub fn new(l: RingElement, x: Mat2, m: Mat2) -> Result<Self, ConfError> {
        if l.spec() != x.spec() || l.spec() != m.spec() {
            return Err(ConfError::SpecMismatch(l.spec().to_string(), x.spec().to_string()));
        }
        if !x.trace().is_zero() {
            return Err(ConfError::NonzeroTrace);
        }
        Ok(LtgElement { l, x, m })
    }

    pub fn zero(spec: RingSpec) -> Self {
        LtgElement {
            l: RingElement::zero(spec),
            x: Mat2::zero(spec),
            m: Mat2::zero(spec),
        }
    }

    pub fn l_part(l: RingElement) -> Self {
        let spec = l.spec();
        LtgElement { l, x: Mat2::zero(spec), m: Mat2::zero(spec) }
    }

    pub fn t_part(x: Mat2) -> Result<Self, ConfError> {
        let spec = x.spec();
        Self::new(RingElement::zero(spec), x, Mat2::zero(spec))
    }

    pub fn g_part(m: Mat2) -> Self {
        LtgElement { l: RingElement::zero(m.spec()), x: Mat2::zero(m.spec()), m }
    }

    pub fn spec(&self) -> RingSpec {
        self.l.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.l.is_zero() && self.x.is_zero() && self.m.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ConfError> {
        Ok(LtgElement {
            l: self.l.add(&other.l)?,
            x: self.x.add(&other.x)?,
            m: self.m.add(&other.m)?,
        })
    }

    /// Expand into the generator basis:
    ///
    ///   L(r) = L (x) r
    ///   T(X) = T1 (x) (y+z) + i T2 (x) (y-z) + 2 T3 (x) x
    ///   G(M) = -i G1 (x) d - i Gb1 (x) a + i G2 (x) b - i Gb2 (x) c
    pub fn encode(&self) -> ConfElement {
        use n4_gen::*;
        let spec = self.spec();
        let i = Scalar::i;
        let mut out = ConfElement::zero(spec);
        out.insert(L, 0, self.l.clone());
        let (x, y, z) = (&self.x.e[0][0], &self.x.e[0][1], &self.x.e[1][0]);
        out.insert(T1, 0, y.add(z).expect("same spec"));
        out.insert(T2, 0, y.sub(z).expect("same spec").scale(&i()));
        out.insert(T3, 0, x.scale(&Scalar::from_int(2)));
        let (a, b, c, d) = (
            &self.m.e[0][0],
            &self.m.e[0][1],
            &self.m.e[1][0],
            &self.m.e[1][1],
        );
        out.insert(G1, 0, d.scale(&-i()));
        out.insert(GB1, 0, a.scale(&-i()));
        out.insert(G2, 0, b.scale(&i()));
        out.insert(GB2, 0, c.scale(&-i()));
        out
    }

    /// Inverse of [`LtgElement::encode`]. Fails with `OutsideV` when the
    /// element has a nonzero d-power.
    pub fn decode(e: &ConfElement) -> Result<Self, ConfError> {
        use n4_gen::*;
        if !e.is_dpow_zero() {
            return Err(ConfError::OutsideV(
                "element has a nonzero d-power".to_string(),
            ));
        }
        let i = Scalar::i;
        let half = Scalar::from_ratio(1, 2);
        let c1 = e.coeff(T1, 0);
        let c2 = e.coeff(T2, 0);
        let c3 = e.coeff(T3, 0);
        let y = c1.sub(&c2.scale(&i()))?.scale(&half);
        let z = c1.add(&c2.scale(&i()))?.scale(&half);
        let x = c3.scale(&half);
        let xmat = Mat2::new([[x.clone(), y], [z, x.neg()]])?;
        let a = e.coeff(GB1, 0).scale(&i());
        let b = e.coeff(G2, 0).scale(&-i());
        let c = e.coeff(GB2, 0).scale(&i());
        let d = e.coeff(G1, 0).scale(&i());
        let mmat = Mat2::new([[a, b], [c, d]])?;
        LtgElement::new(e.coeff(L, 0), xmat, mmat)
    }
}

/// The matrix `M` with `G(M)` equal to the given odd generator:
/// `G1 = G([[0,0],[0,i]])`, `G2 = G([[0,-i],[0,0]])`,
/// `Gb1 = G([[i,0],[0,0]])`, `Gb2 = G([[0,0],[i,0]])`.
pub fn g_gen_matrix(spec: RingSpec, gen: usize) -> Result<Mat2, ConfError> {
    use n4_gen::*;
    let i = || RingElement::scalar(spec, Scalar::i());
    let ni = || RingElement::scalar(spec, -Scalar::i());
    let z = || RingElement::zero(spec);
    match gen {
        G1 => Mat2::new([[z(), z()], [z(), i()]]),
        G2 => Mat2::new([[z(), ni()], [z(), z()]]),
        GB1 => Mat2::new([[i(), z()], [z(), z()]]),
        GB2 => Mat2::new([[z(), z()], [i(), z()]]),
        _ => Err(ConfError::BadGenerator(gen)),
    }
}

/// The lambda-bracket on `V (x) R` computed from the six matrix-form
/// relations (`d` below is the shift `d_A (x) 1`):
///
///   [L(r) lam L(s)]   = (d + 2 lam) L(rs) + 2 L(delta(r) s)
///   [L(r) lam T(X)]   = (d + lam) T(rX) + T(delta(r) X)
///   [T(X) lam T(Y)]   = T([X, Y])
///   [L(r) lam G(M)]   = (d + 3/2 lam) G(rM) + 3/2 G(delta(r) M)
///   [T(X) lam G(M)]   = G(XM)
///   [G(M) lam G(N)]   = 2 L(tr(M N*)) + (d + 2 lam) T(M N* - N M*)
///                       + 2 T(delta(M) N* - N delta(M)*)
///
/// (`*` is the dagger involution). The reversed sector pairs use their own
/// closed forms (obtained from the above by conformal skew-symmetry):
///
///   [T(X) lam L(r)]   = T(delta(X) r) + lam T(X r)
///   [G(M) lam L(r)]   = 1/2 d G(M r) + 3/2 G(delta(M) r) + 3/2 lam G(M r)
///   [G(M) lam T(X)]   = -G(X M)
///
/// written so that delta lands on the left argument's coefficients only,
/// the same convention as the engine's base-change sum. Over a genuine
/// differential ring the two conventions agree; over the truncated ring,
/// whose representative-wise derivation fails the Leibniz rule at the top
/// degree, only this form matches the engine exactly.
pub fn structured_bracket(a: &LtgElement, b: &LtgElement) -> Result<LambdaPoly, ConfError> {
    if a.spec() != b.spec() {
        return Err(ConfError::SpecMismatch(a.spec().to_string(), b.spec().to_string()));
    }
    let spec = a.spec();
    let mut out = LambdaPoly::zero(spec);

    let add_poly = |out: &mut LambdaPoly, p: LambdaPoly| {
        for (n, e) in p.coeffs() {
            out.insert(n, e.clone());
        }
    };
    // L-L
    add_poly(&mut out, bracket_ll(&a.l, &b.l)?);
    // L-T and T-L
    add_poly(&mut out, bracket_lt(&a.l, &b.x)?);
    add_poly(&mut out, bracket_tl(&a.x, &b.l)?);
    // T-T
    let mut p = LambdaPoly::zero(spec);
    p.insert(0, LtgElement::t_part(a.x.commutator(&b.x)?)?.encode());
    add_poly(&mut out, p);
    // L-G and G-L
    add_poly(&mut out, bracket_lg(&a.l, &b.m)?);
    add_poly(&mut out, bracket_gl(&a.m, &b.l)?);
    // T-G and G-T
    let mut p = LambdaPoly::zero(spec);
    p.insert(0, LtgElement::g_part(a.x.mul(&b.m)?).encode());
    add_poly(&mut out, p);
    let mut p = LambdaPoly::zero(spec);
    p.insert(0, LtgElement::g_part(b.x.mul(&a.m)?).encode().neg());
    add_poly(&mut out, p);
    // G-G
    add_poly(&mut out, bracket_gg(&a.m, &b.m)?);
    Ok(out)
}

fn bracket_tl(x: &Mat2, r: &RingElement) -> Result<LambdaPoly, ConfError> {
    let spec = r.spec();
    let mut p = LambdaPoly::zero(spec);
    p.insert(0, LtgElement::t_part(x.delta().scale_ring(r)?)?.encode());
    p.insert(1, LtgElement::t_part(x.scale_ring(r)?)?.encode());
    Ok(p)
}

fn bracket_gl(m: &Mat2, r: &RingElement) -> Result<LambdaPoly, ConfError> {
    let spec = r.spec();
    let three_half = Scalar::from_ratio(3, 2);
    let mr = LtgElement::g_part(m.scale_ring(r)?).encode();
    let mut p = LambdaPoly::zero(spec);
    p.insert(0, mr.apply_d().scale_scalar(&Scalar::from_ratio(1, 2)));
    p.insert(0, LtgElement::g_part(m.delta().scale_ring(r)?).encode().scale_scalar(&three_half));
    p.insert(1, mr.scale_scalar(&three_half));
    Ok(p)
}

fn bracket_ll(r: &RingElement, s: &RingElement) -> Result<LambdaPoly, ConfError> {
    let spec = r.spec();
    let mut p = LambdaPoly::zero(spec);
    let rs = LtgElement::l_part(r.mul(s)?).encode();
    p.insert(0, rs.apply_d());
    p.insert(0, LtgElement::l_part(r.delta().mul(s)?).encode().scale_scalar(&Scalar::from_int(2)));
    p.insert(1, rs.scale_scalar(&Scalar::from_int(2)));
    Ok(p)
}

fn bracket_lt(r: &RingElement, x: &Mat2) -> Result<LambdaPoly, ConfError> {
    let spec = r.spec();
    let mut p = LambdaPoly::zero(spec);
    let rx = LtgElement::t_part(x.scale_ring(r)?)?.encode();
    p.insert(0, rx.apply_d());
    p.insert(0, LtgElement::t_part(x.scale_ring(&r.delta())?)?.encode());
    p.insert(1, rx);
    Ok(p)
}

fn bracket_lg(r: &RingElement, m: &Mat2) -> Result<LambdaPoly, ConfError> {
    let spec = r.spec();
    let three_half = Scalar::from_ratio(3, 2);
    let mut p = LambdaPoly::zero(spec);
    let rm = LtgElement::g_part(m.scale_ring(r)?).encode();
    p.insert(0, rm.apply_d());
    p.insert(0, LtgElement::g_part(m.scale_ring(&r.delta())?).encode().scale_scalar(&three_half));
    p.insert(1, rm.scale_scalar(&three_half));
    Ok(p)
}

fn bracket_gg(m: &Mat2, n: &Mat2) -> Result<LambdaPoly, ConfError> {
    let spec = m.spec();
    let mn = m.mul(&n.dagger())?;
    let nm = n.mul(&m.dagger())?;
    let sym = mn.sub(&nm)?;
    let mut p = LambdaPoly::zero(spec);
    p.insert(0, LtgElement::l_part(mn.trace()).encode().scale_scalar(&Scalar::from_int(2)));
    let t_sym = LtgElement::t_part(sym)?.encode();
    p.insert(0, t_sym.apply_d());
    p.insert(1, t_sym.scale_scalar(&Scalar::from_int(2)));
    let dcorr = m.delta().mul(&n.dagger())?.sub(&n.mul(&m.delta().dagger())?)?;
    p.insert(0, LtgElement::t_part(dcorr)?.encode().scale_scalar(&Scalar::from_int(2)));
    Ok(p)
}
