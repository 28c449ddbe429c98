//! Constructors for the built-in algebras: current algebras Cur(g), the
//! N=4 algebra, the K_N family realized on Grassmann algebras (N = 1..3),
//! and the alternate realization of K_2 on Der(Lambda(1)) + Lambda(1).

use std::collections::BTreeMap;

use crate::conformal::{GeneratorBasis, KElem, Parity, StructureTable, TableBuilder};
use crate::error::ConfError;
use crate::scalar::Scalar;

/// Generator indices of the N=4 table, in canonical order.
pub mod n4_gen {
    pub const L: usize = 0;
    pub const T1: usize = 1;
    pub const T2: usize = 2;
    pub const T3: usize = 3;
    pub const G1: usize = 4;
    pub const G2: usize = 5;
    pub const GB1: usize = 6;
    pub const GB2: usize = 7;
}

/// Pauli matrix `sigma^i` (i = 1, 2, 3) as scalar entries `[[a,b],[c,d]]`.
pub fn pauli(i: usize) -> [[Scalar; 2]; 2] {
    match i {
        1 => [
            [Scalar::zero(), Scalar::one()],
            [Scalar::one(), Scalar::zero()],
        ],
        2 => [
            [Scalar::zero(), -Scalar::i()],
            [Scalar::i(), Scalar::zero()],
        ],
        3 => [
            [Scalar::one(), Scalar::zero()],
            [Scalar::zero(), -Scalar::one()],
        ],
        _ => panic!("pauli index must be 1..=3"),
    }
}

/// Sign of the cycle `(i j l)` for distinct i, j, l in {1,2,3}; zero when
/// any two coincide.
pub fn epsilon(i: usize, j: usize, l: usize) -> i64 {
    match (i, j, l) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1,
        _ => 0,
    }
}

/// The generator basis of the N=4 algebra.
pub fn n4_basis() -> GeneratorBasis {
    GeneratorBasis::new(vec![
        ("L".into(), Parity::Even),
        ("T1".into(), Parity::Even),
        ("T2".into(), Parity::Even),
        ("T3".into(), Parity::Even),
        ("G1".into(), Parity::Odd),
        ("G2".into(), Parity::Odd),
        ("Gb1".into(), Parity::Odd),
        ("Gb2".into(), Parity::Odd),
    ])
    .expect("valid basis")
}

/// The N=4 Lie conformal superalgebra on generators
/// `L; T1, T2, T3; G1, G2, Gb1, Gb2`.
///
/// The displayed bracket table is transcribed once here; the unlisted
/// orientations are resolved through skew-symmetry. The matrix-form bracket
/// in `n4` cross-validates this hand-entered data.
pub fn build_n4() -> StructureTable {
    use n4_gen::*;
    let mut b = TableBuilder::new("n4", n4_basis());

    let t = |i: usize| T1 + i - 1;
    let g = |p: usize| G1 + p - 1;
    let gb = |p: usize| GB1 + p - 1;

    // [L_lam L] = (d + 2 lam) L
    b.set_product(L, L, 0, KElem::term(L, 1, Scalar::one()));
    b.set_product(L, L, 1, KElem::term(L, 0, Scalar::from_int(2)));
    // [L_lam T^i] = (d + lam) T^i
    for i in 1..=3 {
        b.set_product(L, t(i), 0, KElem::term(t(i), 1, Scalar::one()));
        b.set_product(L, t(i), 1, KElem::term(t(i), 0, Scalar::one()));
    }
    // [L_lam G^p] = [L_lam Gb^p] = (d + 3/2 lam) (.)
    for p in 1..=2 {
        for gp in [g(p), gb(p)] {
            b.set_product(L, gp, 0, KElem::term(gp, 1, Scalar::one()));
            b.set_product(L, gp, 1, KElem::term(gp, 0, Scalar::from_ratio(3, 2)));
        }
    }
    // [T^i_lam T^j] = i eps_{ijl} T^l
    for i in 1..=3 {
        for j in 1..=3 {
            b.declare_pair(t(i), t(j));
            for l in 1..=3 {
                let e = epsilon(i, j, l);
                if e != 0 {
                    b.set_product(t(i), t(j), 0, KElem::term(t(l), 0, Scalar::i() * Scalar::from_int(e)));
                }
            }
        }
    }
    // [G^p_lam G^q] = [Gb^p_lam Gb^q] = 0
    for p in 1..=2 {
        for q in 1..=2 {
            b.declare_pair(g(p), g(q));
            b.declare_pair(gb(p), gb(q));
        }
    }
    // [T^i_lam G^p] = -1/2 sum_q sigma^i_{pq} G^q
    // [T^i_lam Gb^p] = 1/2 sum_q sigma^i_{qp} Gb^q
    for i in 1..=3 {
        let sigma = pauli(i);
        for p in 1..=2 {
            b.declare_pair(t(i), g(p));
            b.declare_pair(t(i), gb(p));
            let mut v = KElem::zero();
            let mut vb = KElem::zero();
            for q in 1..=2 {
                v.insert(g(q), 0, sigma[p - 1][q - 1].clone() * Scalar::from_ratio(-1, 2));
                vb.insert(gb(q), 0, sigma[q - 1][p - 1].clone() * Scalar::from_ratio(1, 2));
            }
            b.set_product(t(i), g(p), 0, v);
            b.set_product(t(i), gb(p), 0, vb);
        }
    }
    // [G^p_lam Gb^q] = 2 delta_{pq} L - 2 (d + 2 lam) sum_i sigma^i_{pq} T^i
    for p in 1..=2 {
        for q in 1..=2 {
            let mut n0 = KElem::zero();
            let mut n1 = KElem::zero();
            if p == q {
                n0.insert(L, 0, Scalar::from_int(2));
            }
            for i in 1..=3 {
                let s = pauli(i)[p - 1][q - 1].clone();
                n0.insert(t(i), 1, &s * Scalar::from_int(-2));
                n1.insert(t(i), 0, &s * Scalar::from_int(-4));
            }
            b.declare_pair(g(p), gb(q));
            b.set_product(g(p), gb(q), 0, n0);
            b.set_product(g(p), gb(q), 1, n1);
        }
    }
    b.build().expect("n4 table is well formed")
}

/// Structure constants of a finite-dimensional Lie superalgebra, validated
/// (graded antisymmetry and the Jacobi identity) at construction.
#[derive(Clone, Debug)]
pub struct LieStructConsts {
    names: Vec<String>,
    parity: Vec<Parity>,
    /// (i, j) -> bracket [a_i, a_j] as a list of (k, coefficient).
    brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl LieStructConsts {
    pub fn new(
        gens: Vec<(String, Parity)>,
        brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    ) -> Result<Self, ConfError> {
        let names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
        let parity: Vec<Parity> = gens.iter().map(|(_, p)| *p).collect();
        let mut map = BTreeMap::new();
        for (i, j, v) in brackets {
            if i >= names.len() || j >= names.len() {
                return Err(ConfError::BadGenerator(i.max(j)));
            }
            map.insert((i, j), v);
        }
        let lie = LieStructConsts { names, parity, brackets: map };
        lie.validate()?;
        Ok(lie)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn sign(&self, i: usize, j: usize) -> Scalar {
        if self.parity[i] == Parity::Odd && self.parity[j] == Parity::Odd {
            Scalar::from_int(-1)
        } else {
            Scalar::one()
        }
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        if let Some(v) = self.brackets.get(&(i, j)) {
            for (k, c) in v {
                out[*k] = &out[*k] + c;
            }
        }
        out
    }

    fn bracket_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j).into_iter().enumerate() {
                    out[k] = &out[k] + &(&c * &(ca * cb));
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), ConfError> {
        let d = self.dim();
        let basis = |i: usize| {
            let mut v = vec![Scalar::zero(); d];
            v[i] = Scalar::one();
            v
        };
        // graded antisymmetry: [a,b] + (-1)^{p(a)p(b)} [b,a] = 0
        for i in 0..d {
            for j in 0..d {
                let ab = self.bracket_basis(i, j);
                let ba = self.bracket_basis(j, i);
                let s = self.sign(i, j);
                for k in 0..d {
                    if !(&ab[k] + &(&s * &ba[k])).is_zero() {
                        return Err(ConfError::Usage(format!(
                            "antisymmetry fails on ({}, {})",
                            self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        // Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.bracket_vec(&basis(i), &self.bracket_basis(j, k));
                    let ab_c = self.bracket_vec(&self.bracket_basis(i, j), &basis(k));
                    let b_ac = self.bracket_vec(&basis(j), &self.bracket_basis(i, k));
                    let s = self.sign(i, j);
                    for m in 0..d {
                        if !(&lhs[m] - &(&ab_c[m] + &(&s * &b_ac[m]))).is_zero() {
                            return Err(ConfError::Usage(format!(
                                "Jacobi fails on ({}, {}, {})",
                                self.names[i], self.names[j], self.names[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `sl2(k)` with basis e, f, h.
pub fn sl2_consts() -> LieStructConsts {
    let two = Scalar::from_int(2);
    LieStructConsts::new(
        vec![
            ("e".into(), Parity::Even),
            ("f".into(), Parity::Even),
            ("h".into(), Parity::Even),
        ],
        vec![
            (0, 1, vec![(2, Scalar::one())]),
            (1, 0, vec![(2, -Scalar::one())]),
            (2, 0, vec![(0, two.clone())]),
            (0, 2, vec![(0, -two.clone())]),
            (2, 1, vec![(1, -two.clone())]),
            (1, 2, vec![(1, two)]),
        ],
    )
    .expect("sl2 constants are consistent")
}

/// The current algebra Cur(g): `a (0) b = [a, b]`, all higher products zero.
pub fn build_current(name: impl Into<String>, g: &LieStructConsts) -> StructureTable {
    let basis = GeneratorBasis::new(
        g.names
            .iter()
            .cloned()
            .zip(g.parity.iter().copied())
            .collect(),
    )
    .expect("valid Lie basis");
    let mut b = TableBuilder::new(name, basis);
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            b.declare_pair(i, j);
            let mut v = KElem::zero();
            for (k, c) in g.bracket_basis(i, j).into_iter().enumerate() {
                v.insert(k, 0, c);
            }
            b.set_product(i, j, 0, v);
        }
    }
    b.build().expect("current table is well formed")
}

/// Element of the Grassmann algebra Lambda(N), keyed by index subsets
/// (bit i-1 of the mask encodes `xi_i`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassmannElement {
    n: u32,
    coeffs: BTreeMap<u32, Scalar>,
}

/// Signed product of disjoint monomials: `(-1)^{#{(x,y) in a x b : x > y}}`.
fn mask_mul(a: u32, b: u32) -> Option<(u32, i64)> {
    if a & b != 0 {
        return None;
    }
    let mut sign = 1i64;
    for x in 0..32 {
        if a & (1 << x) == 0 {
            continue;
        }
        // count elements of b strictly below x
        let below = (b & ((1u32 << x) - 1)).count_ones();
        if below % 2 == 1 {
            sign = -sign;
        }
    }
    // the sign above counts b-elements below each a-element; moving each
    // a-element right past them gives (-1)^inversions for the merge
    let mut inv = 0u32;
    for x in 0..32 {
        if a & (1 << x) != 0 {
            inv += (b & ((1u32 << x) - 1)).count_ones();
        }
    }
    sign = if inv % 2 == 0 { 1 } else { -1 };
    Some((a | b, sign))
}

/// Signed left derivative `d_i` on a monomial.
fn mask_deriv(i: u32, a: u32) -> Option<(u32, i64)> {
    let bit = 1u32 << (i - 1);
    if a & bit == 0 {
        return None;
    }
    let before = (a & (bit - 1)).count_ones();
    let sign = if before % 2 == 0 { 1 } else { -1 };
    Some((a & !bit, sign))
}

impl GrassmannElement {
    pub fn zero(n: u32) -> Self {
        GrassmannElement { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        Self::monomial(n, 0, Scalar::one())
    }

    /// `c * xi_S` for the subset encoded by `mask`.
    pub fn monomial(n: u32, mask: u32, c: Scalar) -> Self {
        assert!(mask < (1 << n), "mask outside Lambda({})", n);
        let mut e = Self::zero(n);
        if !c.is_zero() {
            e.coeffs.insert(mask, c);
        }
        e
    }

    pub fn xi(n: u32, i: u32) -> Self {
        assert!((1..=n).contains(&i));
        Self::monomial(n, 1 << (i - 1), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, mask: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(mask).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.insert(*m, c.clone());
        }
        out
    }

    /// Signed exterior product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if let Some((m, s)) = mask_mul(*ma, *mb) {
                    out.insert(m, (ca * cb) * Scalar::from_int(s));
                }
            }
        }
        out
    }

    /// Signed left derivative with respect to `xi_i`.
    pub fn deriv(&self, i: u32) -> Result<Self, ConfError> {
        if i == 0 || i > self.n {
            return Err(ConfError::BadGenerator(i as usize));
        }
        let mut out = Self::zero(self.n);
        for (m, c) in &self.coeffs {
            if let Some((m2, s)) = mask_deriv(i, *m) {
                out.insert(m2, c * Scalar::from_int(s));
            }
        }
        Ok(out)
    }
}

/// Name of the Lambda(N) monomial generator for a subset mask.
fn kn_gen_name(mask: u32) -> String {
    if mask == 0 {
        return "one".into();
    }
    let mut s = "xi".to_string();
    for i in 1..=32 {
        if mask & (1 << (i - 1)) != 0 {
            s.push_str(&i.to_string());
        }
    }
    s
}

/// K_N on the 2^N monomial generators of Lambda(N), with products generated
/// programmatically from the Grassmann realization:
///
///   f (0) g = (|f|/2 - 1) d (x) fg + 1/2 (-1)^{|f|} sum_i (d_i f)(d_i g)
///   f (1) g = ((|f| + |g|)/2 - 2) fg
///
/// and all higher products zero.
pub fn build_kn(n: u32) -> Result<StructureTable, ConfError> {
    if !(1..=3).contains(&n) {
        return Err(ConfError::Usage(format!("K_N is built for N in 1..=3, got {}", n)));
    }
    let count = 1u32 << n;
    let basis = GeneratorBasis::new(
        (0..count)
            .map(|m| {
                let p = if m.count_ones() % 2 == 0 { Parity::Even } else { Parity::Odd };
                (kn_gen_name(m), p)
            })
            .collect(),
    )?;
    let mut b = TableBuilder::new(format!("k{}", n), basis);
    for f in 0..count {
        for g in 0..count {
            b.declare_pair(f as usize, g as usize);
            let df = f.count_ones() as i64;
            let dg = g.count_ones() as i64;
            let mut p0 = KElem::zero();
            if let Some((m, s)) = mask_mul(f, g) {
                p0.insert(m as usize, 1, Scalar::from_ratio(df - 2, 2) * Scalar::from_int(s));
            }
            let half_sign = Scalar::from_ratio(if df % 2 == 0 { 1 } else { -1 }, 2);
            for i in 1..=n {
                if let (Some((mf, sf)), Some((mg, sg))) = (mask_deriv(i, f), mask_deriv(i, g)) {
                    if let Some((m, s)) = mask_mul(mf, mg) {
                        p0.insert(m as usize, 0, &half_sign * Scalar::from_int(sf * sg * s));
                    }
                }
            }
            b.set_product(f as usize, g as usize, 0, p0);
            let mut p1 = KElem::zero();
            if let Some((m, s)) = mask_mul(f, g) {
                p1.insert(m as usize, 0, Scalar::from_ratio(df + dg - 4, 2) * Scalar::from_int(s));
            }
            b.set_product(f as usize, g as usize, 1, p1);
        }
    }
    b.build()
}

/// Generator indices of the alternate K_2 realization on
/// `Der(Lambda(1)) + Lambda(1)` with basis `{d/dxi, xi d/dxi, 1, xi}`.
pub mod k2_alt_gen {
    pub const DDXI: usize = 0;
    pub const XIDDXI: usize = 1;
    pub const ONE: usize = 2;
    pub const XI: usize = 3;
}

/// The alternate realization of K_2. The displayed mixed products use
/// `a (0) f = a(f)` and `a (n) f = -delta_{n1} (-1)^{p(a)p(f)} f a`; the
/// Lambda-sector `f (n) g = -2 delta_{n1} fg` reads the displayed index as
/// the product index n (the axiom checker passes under this reading).
pub fn build_k2_alt() -> StructureTable {
    use k2_alt_gen::*;
    let basis = GeneratorBasis::new(vec![
        ("ddxi".into(), Parity::Odd),
        ("xiddxi".into(), Parity::Even),
        ("one".into(), Parity::Even),
        ("xi".into(), Parity::Odd),
    ])
    .expect("valid basis");
    let mut b = TableBuilder::new("k2-alt", basis);
    let one = Scalar::one;
    let neg = || Scalar::from_int(-1);

    // Der x Der: a (0) b = [a, b]
    b.declare_pair(DDXI, DDXI); // [d, d] = 0
    b.declare_pair(XIDDXI, XIDDXI);
    b.set_product(DDXI, XIDDXI, 0, KElem::term(DDXI, 0, one())); // [d, xi d] = d
    b.set_product(XIDDXI, DDXI, 0, KElem::term(DDXI, 0, neg()));

    // Der x Lambda: a (0) f = a(f); a (1) f = -(-1)^{p(a)p(f)} f a
    b.declare_pair(DDXI, ONE);
    b.set_product(DDXI, ONE, 1, KElem::term(DDXI, 0, neg()));
    b.set_product(DDXI, XI, 0, KElem::term(ONE, 0, one()));
    b.set_product(DDXI, XI, 1, KElem::term(XIDDXI, 0, one()));
    b.declare_pair(XIDDXI, ONE);
    b.set_product(XIDDXI, ONE, 1, KElem::term(XIDDXI, 0, neg()));
    b.set_product(XIDDXI, XI, 0, KElem::term(XI, 0, one()));
    // xi * (xi d/dxi) = 0, so (xi d/dxi) (1) xi = 0

    // Lambda x Lambda: f (0) g = -d(fg); f (1) g = -2 fg
    b.set_product(ONE, ONE, 0, KElem::term(ONE, 1, neg()));
    b.set_product(ONE, ONE, 1, KElem::term(ONE, 0, Scalar::from_int(-2)));
    b.set_product(ONE, XI, 0, KElem::term(XI, 1, neg()));
    b.set_product(ONE, XI, 1, KElem::term(XI, 0, Scalar::from_int(-2)));
    b.set_product(XI, ONE, 0, KElem::term(XI, 1, neg()));
    b.set_product(XI, ONE, 1, KElem::term(XI, 0, Scalar::from_int(-2)));
    b.declare_pair(XI, XI); // xi xi = 0

    b.build().expect("k2-alt table is well formed")
}

/// Look up a built-in algebra by its CLI name.
pub fn builtin(name: &str) -> Option<StructureTable> {
    match name {
        "n4" => Some(build_n4()),
        "cur-sl2" => Some(build_current("cur-sl2", &sl2_consts())),
        "k1" => build_kn(1).ok(),
        "k2" => build_kn(2).ok(),
        "k3" => build_kn(3).ok(),
        "k2-alt" => Some(build_k2_alt()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 6] = ["n4", "cur-sl2", "k1", "k2", "k3", "k2-alt"];
