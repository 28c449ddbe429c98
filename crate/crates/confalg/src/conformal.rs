//! Core engine: graded free k[d]-modules with structure tables, normalized
//! elements of the base change `A (x) R`, n-th products, lambda-brackets,
//! and the CS0-CS3 axiom checkers.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::ConfError;
use crate::ring::{RingElement, RingSpec};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Ordered generator names with parities. The order fixes the canonical
/// term ordering everywhere downstream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorBasis {
    names: Vec<String>,
    parity: Vec<Parity>,
}

impl GeneratorBasis {
    pub fn new(gens: Vec<(String, Parity)>) -> Result<Self, ConfError> {
        let mut names = Vec::new();
        let mut parity = Vec::new();
        for (n, p) in gens {
            if names.contains(&n) {
                return Err(ConfError::Usage(format!("duplicate generator name `{}`", n)));
            }
            names.push(n);
            parity.push(p);
        }
        Ok(GeneratorBasis { names, parity })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Koszul sign `(-1)^{p(a)p(b)}` as a scalar.
    pub fn pair_sign(&self, i: usize, j: usize) -> Scalar {
        if self.parity(i) == Parity::Odd && self.parity(j) == Parity::Odd {
            Scalar::from_int(-1)
        } else {
            Scalar::one()
        }
    }
}

/// Element of `k[d] (x) V`: sparse map `(generator, d-power) -> Scalar`.
/// This is the value type of generator products.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KElem {
    terms: BTreeMap<(usize, u32), Scalar>,
}

impl KElem {
    pub fn zero() -> Self {
        KElem::default()
    }

    pub fn term(g: usize, m: u32, c: Scalar) -> Self {
        let mut e = KElem::zero();
        e.insert(g, m, c);
        e
    }

    pub fn insert(&mut self, g: usize, m: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((g, m)) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, &Scalar)> {
        self.terms.iter().map(|(&(g, m), c)| (g, m, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, m, c) in other.terms() {
            out.insert(g, m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return KElem::zero();
        }
        KElem {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiply by `d` (shift every d-power up by one).
    pub fn dshift(&self) -> Self {
        KElem {
            terms: self.terms.iter().map(|(&(g, m), c)| ((g, m + 1), c.clone())).collect(),
        }
    }

    pub fn max_dpow(&self) -> u32 {
        self.terms.keys().map(|&(_, m)| m).max().unwrap_or(0)
    }
}

/// A finite presentation of a Lie conformal superalgebra by generator
/// products. Only one orientation of each pair needs to be declared; the
/// transpose is resolved through skew-symmetry (CS2) at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureTable {
    name: String,
    basis: GeneratorBasis,
    /// Declared orientations. An entry with an empty inner map declares all
    /// products of that ordered pair to be zero.
    declared: BTreeMap<(usize, usize), BTreeMap<u32, KElem>>,
    /// Fully resolved products for every ordered pair that is reachable from
    /// the declarations.
    resolved: BTreeMap<(usize, usize), BTreeMap<u32, KElem>>,
}

/// Incremental construction of a [`StructureTable`].
pub struct TableBuilder {
    name: String,
    basis: GeneratorBasis,
    declared: BTreeMap<(usize, usize), BTreeMap<u32, KElem>>,
}

impl TableBuilder {
    pub fn new(name: impl Into<String>, basis: GeneratorBasis) -> Self {
        TableBuilder { name: name.into(), basis, declared: BTreeMap::new() }
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    /// Declare the ordered pair `(i, j)` (all products zero unless set).
    pub fn declare_pair(&mut self, i: usize, j: usize) {
        self.declared.entry((i, j)).or_default();
    }

    pub fn set_product(&mut self, i: usize, j: usize, n: u32, value: KElem) {
        let entry = self.declared.entry((i, j)).or_default();
        if value.is_zero() {
            entry.remove(&n);
        } else {
            entry.insert(n, value);
        }
    }

    /// Declare every pair with no orientation present as all-zero. The DSL
    /// parser uses this so that an empty product section yields the abelian
    /// table.
    pub fn fill_undeclared_zero(&mut self) {
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                if !self.declared.contains_key(&(i, j)) && !self.declared.contains_key(&(j, i)) {
                    self.declare_pair(i, j);
                }
            }
        }
    }

    pub fn build(self) -> Result<StructureTable, ConfError> {
        let TableBuilder { name, basis, declared } = self;
        for (&(i, j), prods) in &declared {
            if i >= basis.len() || j >= basis.len() {
                return Err(ConfError::BadGenerator(i.max(j)));
            }
            // parity homogeneity of every entry
            for value in prods.values() {
                for (g, _, _) in value.terms() {
                    let expect = match (basis.parity(i), basis.parity(j)) {
                        (Parity::Even, Parity::Even) | (Parity::Odd, Parity::Odd) => Parity::Even,
                        _ => Parity::Odd,
                    };
                    if basis.parity(g) != expect {
                        return Err(ConfError::ParityMismatch(basis.name(g).to_string()));
                    }
                }
            }
        }
        let mut table = StructureTable { name, basis, declared, resolved: BTreeMap::new() };
        table.resolve();
        Ok(table)
    }
}

impl StructureTable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    pub fn declared_pairs(&self) -> impl Iterator<Item = (usize, usize, &BTreeMap<u32, KElem>)> {
        self.declared.iter().map(|(&(i, j), m)| (i, j, m))
    }

    fn resolve(&mut self) {
        let mut resolved = BTreeMap::new();
        for (&(i, j), prods) in &self.declared {
            resolved.insert((i, j), prods.clone());
        }
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                if resolved.contains_key(&(i, j)) {
                    continue;
                }
                if let Some(stored) = self.declared.get(&(j, i)) {
                    let bound = stored.keys().max().copied().unwrap_or(0);
                    let mut prods = BTreeMap::new();
                    for nn in 0..=bound {
                        let v = cs2_from_stored(&self.basis, i, j, nn, stored);
                        if !v.is_zero() {
                            prods.insert(nn, v);
                        }
                    }
                    resolved.insert((i, j), prods);
                }
            }
        }
        self.resolved = resolved;
    }

    /// `a_i (n) a_j` on bare generators, as an element of `k[d] (x) V`.
    pub fn gen_product(&self, i: usize, j: usize, n: u32) -> Result<KElem, ConfError> {
        match self.resolved.get(&(i, j)) {
            Some(prods) => Ok(prods.get(&n).cloned().unwrap_or_default()),
            None => Err(ConfError::UndefinedProduct(
                self.basis.name(i).to_string(),
                self.basis.name(j).to_string(),
            )),
        }
    }

    /// Recompute `a_i (n) a_j` through the skew-symmetry (CS2) sum from the
    /// transpose pair. Independent route used by the axiom checker and the
    /// involution test.
    pub fn cs2_fallback(&self, i: usize, j: usize, n: u32) -> Result<KElem, ConfError> {
        let transpose = self
            .resolved
            .get(&(j, i))
            .ok_or_else(|| {
                ConfError::UndefinedProduct(
                    self.basis.name(i).to_string(),
                    self.basis.name(j).to_string(),
                )
            })?;
        Ok(cs2_from_stored(&self.basis, i, j, n, transpose))
    }

    /// Largest `n` with a (possibly) nonzero product for the ordered pair,
    /// counting d-powers in the entries.
    pub fn pair_bound(&self, i: usize, j: usize) -> Result<u32, ConfError> {
        let prods = self.resolved.get(&(i, j)).ok_or_else(|| {
            ConfError::UndefinedProduct(
                self.basis.name(i).to_string(),
                self.basis.name(j).to_string(),
            )
        })?;
        Ok(prods.keys().max().copied().unwrap_or(0))
    }

    /// Largest stored `n` over the whole table.
    pub fn support_bound(&self) -> u32 {
        self.resolved
            .values()
            .flat_map(|m| m.keys())
            .max()
            .copied()
            .unwrap_or(0)
    }

    /// Largest d-power appearing in any entry.
    pub fn max_entry_dpow(&self) -> u32 {
        self.resolved
            .values()
            .flat_map(|m| m.values())
            .map(|v| v.max_dpow())
            .max()
            .unwrap_or(0)
    }
}

/// CS2: `a (n) b = -p(a,b) sum_j (-1)^{j+n} d^{(j)} (b (n+j) a)`.
fn cs2_from_stored(
    basis: &GeneratorBasis,
    i: usize,
    j: usize,
    n: u32,
    transpose: &BTreeMap<u32, KElem>,
) -> KElem {
    let bound = transpose.keys().max().copied().unwrap_or(0);
    let mut acc = KElem::zero();
    let mut fact = Scalar::one();
    for jj in 0..=bound.saturating_sub(n) {
        if jj > 0 {
            fact = fact * Scalar::from_int(jj as i64);
        }
        if let Some(v) = transpose.get(&(n + jj)) {
            let mut shifted = v.clone();
            for _ in 0..jj {
                shifted = shifted.dshift();
            }
            let sign = if (jj + n) % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            let coeff = sign * fact.inv().expect("nonzero factorial");
            acc = acc.add(&shifted.scale(&coeff));
        }
    }
    acc.scale(&-basis.pair_sign(i, j))
}

/// Normalized element of `A (x) R`: a finite sum of terms
/// `(d^m g) (x) r`, keyed by `(generator, d-power)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConfElement {
    spec: RingSpec,
    terms: BTreeMap<(usize, u32), RingElement>,
}

impl ConfElement {
    pub fn zero(spec: RingSpec) -> Self {
        ConfElement { spec, terms: BTreeMap::new() }
    }

    pub fn generator(g: usize, spec: RingSpec) -> Self {
        Self::term(g, 0, RingElement::one(spec))
    }

    pub fn term(g: usize, m: u32, r: RingElement) -> Self {
        let mut e = ConfElement::zero(r.spec());
        e.insert(g, m, r);
        e
    }

    pub fn from_kelem(k: &KElem, spec: RingSpec) -> Self {
        let mut e = ConfElement::zero(spec);
        for (g, m, c) in k.terms() {
            e.insert(g, m, RingElement::scalar(spec, c.clone()));
        }
        e
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn insert(&mut self, g: usize, m: u32, r: RingElement) {
        debug_assert_eq!(r.spec(), self.spec);
        if r.is_zero() {
            return;
        }
        match self.terms.entry((g, m)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&r).expect("spec checked");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, &RingElement)> {
        self.terms.iter().map(|(&(g, m), r)| (g, m, r))
    }

    /// Ring coefficient of `(d^m g)`, zero if absent.
    pub fn coeff(&self, g: usize, m: u32) -> RingElement {
        self.terms
            .get(&(g, m))
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.spec))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ConfError> {
        if self.spec != other.spec {
            return Err(ConfError::SpecMismatch(self.spec.to_string(), other.spec.to_string()));
        }
        let mut out = self.clone();
        for (g, m, r) in other.terms() {
            out.insert(g, m, r.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ConfError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ConfElement {
            spec: self.spec,
            terms: self.terms.iter().map(|(k, r)| (*k, r.neg())).collect(),
        }
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return ConfElement::zero(self.spec);
        }
        ConfElement {
            spec: self.spec,
            terms: self.terms.iter().map(|(k, r)| (*k, r.scale(c))).collect(),
        }
    }

    /// Right action of `R`: `(a (x) s) * r = a (x) sr`.
    pub fn scale_ring(&self, r: &RingElement) -> Result<Self, ConfError> {
        let mut out = ConfElement::zero(self.spec);
        for (g, m, s) in self.terms() {
            out.insert(g, m, s.mul(r)?);
        }
        Ok(out)
    }

    /// `d_A (x) 1` alone: shift every d-power up without touching the ring
    /// coefficients. The matrix-form bracket relations are stated with this
    /// operator, their delta-corrections written out separately.
    pub fn apply_d(&self) -> Self {
        ConfElement {
            spec: self.spec,
            terms: self.terms.iter().map(|(&(g, m), r)| ((g, m + 1), r.clone())).collect(),
        }
    }

    /// `d-hat = d_A (x) 1 + 1 (x) delta`.
    pub fn apply_dhat(&self) -> Self {
        let mut out = ConfElement::zero(self.spec);
        for (g, m, r) in self.terms() {
            out.insert(g, m + 1, r.clone());
            out.insert(g, m, r.delta());
        }
        out
    }

    pub fn dhat_pow(&self, m: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..m {
            out = out.apply_dhat();
        }
        out
    }

    pub fn max_dpow(&self) -> u32 {
        self.terms.keys().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// True iff the element lies in `V (x) R` (d-power zero only).
    pub fn is_dpow_zero(&self) -> bool {
        self.terms.keys().all(|&(_, m)| m == 0)
    }

    pub fn embed(&self, target: RingSpec) -> Result<Self, ConfError> {
        let mut out = ConfElement::zero(target);
        for (g, m, r) in self.terms() {
            out.insert(g, m, r.embed(target)?);
        }
        Ok(out)
    }
}

/// A polynomial in `lambda` with `ConfElement` coefficients: the value of a
/// lambda-bracket.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaPoly {
    spec: RingSpec,
    coeffs: BTreeMap<u32, ConfElement>,
}

impl LambdaPoly {
    pub fn zero(spec: RingSpec) -> Self {
        LambdaPoly { spec, coeffs: BTreeMap::new() }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn insert(&mut self, n: u32, e: ConfElement) {
        if e.is_zero() {
            return;
        }
        match self.coeffs.entry(n) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(e);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&e).expect("spec checked");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &ConfElement)> {
        self.coeffs.iter().map(|(&n, e)| (n, e))
    }

    pub fn coeff(&self, n: u32) -> ConfElement {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| ConfElement::zero(self.spec))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().max().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ConfError> {
        let mut out = self.clone();
        for (n, e) in other.coeffs() {
            out.insert(n, e.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ConfError> {
        self.add(&other.map(|e| e.neg()))
    }

    pub fn map(&self, f: impl Fn(&ConfElement) -> ConfElement) -> Self {
        let mut out = LambdaPoly::zero(self.spec);
        for (n, e) in self.coeffs() {
            out.insert(n, f(e));
        }
        out
    }

    /// Transport every coefficient along a ring embedding.
    pub fn embed(&self, target: RingSpec) -> Result<Self, ConfError> {
        let mut out = LambdaPoly::zero(target);
        for (n, e) in self.coeffs() {
            out.insert(n, e.embed(target)?);
        }
        Ok(out)
    }

    /// Substitute `lambda -> -lambda - d-hat`, the conformal skew-symmetry
    /// substitution: each `lambda^n c_n` becomes
    /// `(-1)^n sum_k C(n,k) lambda^k d-hat^{n-k}(c_n)`.
    pub fn substitute_minus_lambda_dhat(&self) -> Self {
        let mut out = LambdaPoly::zero(self.spec);
        for (n, c) in self.coeffs() {
            let sign =
                if n % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            for k in 0..=n {
                let b = binomial(n, k);
                out.insert(k, c.dhat_pow(n - k).scale_scalar(&(&sign * &b)));
            }
        }
        out
    }
}

pub fn binomial(n: u32, k: u32) -> Scalar {
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for i in 0..k {
        num = num * Scalar::from_int((n - i) as i64);
        den = den * Scalar::from_int((i + 1) as i64);
    }
    &num / &den
}

pub fn factorial(n: u32) -> Scalar {
    let mut f = Scalar::one();
    for i in 1..=n as i64 {
        f = f * Scalar::from_int(i);
    }
    f
}

/// Product of bare generators with d-powers, inside `A` over k:
/// `(d^ma a) (nu) (d^mb b)` reduced by CS1 on the left and by the derived
/// right rule `a (n) (d b) = d(a (n) b) + n a (n-1) b`.
fn a_product(
    table: &StructureTable,
    ga: usize,
    ma: u32,
    gb: usize,
    mb: u32,
    nu: i64,
) -> Result<KElem, ConfError> {
    if nu < 0 {
        return Ok(KElem::zero());
    }
    if ma > 0 {
        // CS1: (d a)(n) b = -n a(n-1) b, iterated.
        if (nu as u32) < ma {
            return Ok(KElem::zero());
        }
        let mut fall = Scalar::one();
        for s in 0..ma {
            fall = fall * Scalar::from_int(-(nu - s as i64));
        }
        let inner = a_product(table, ga, 0, gb, mb, nu - ma as i64)?;
        return Ok(inner.scale(&fall));
    }
    if mb > 0 {
        let left = a_product(table, ga, 0, gb, mb - 1, nu)?.dshift();
        let right = a_product(table, ga, 0, gb, mb - 1, nu - 1)?
            .scale(&Scalar::from_int(nu));
        return Ok(left.add(&right));
    }
    table.gen_product(ga, gb, nu as u32)
}

/// The n-th product on `A (x) R`, by bilinear extension of
/// `(a (x) r) (n) (b (x) s) = sum_j (a (n+j) b) (x) delta^{(j)}(r) s`.
pub fn nth_product(
    table: &StructureTable,
    a: &ConfElement,
    b: &ConfElement,
    n: u32,
) -> Result<ConfElement, ConfError> {
    if a.spec() != b.spec() {
        return Err(ConfError::SpecMismatch(a.spec().to_string(), b.spec().to_string()));
    }
    let spec = a.spec();
    let mut out = ConfElement::zero(spec);
    for (ga, ma, r) in a.terms() {
        for (gb, mb, s) in b.terms() {
            let bound = table.pair_bound(ga, gb)?;
            let top = ma as i64 + mb as i64 + bound as i64 - n as i64;
            if top < 0 {
                continue;
            }
            for j in 0..=top as u32 {
                let coeff = r.delta_divided(j).mul(s)?;
                if coeff.is_zero() {
                    continue;
                }
                let prod = a_product(table, ga, ma, gb, mb, n as i64 + j as i64)?;
                for (g, m, c) in prod.terms() {
                    out.insert(g, m, coeff.scale(c));
                }
            }
        }
    }
    Ok(out)
}

/// `[a_lambda b] = sum_n (1/n!) lambda^n (a (n) b)`.
pub fn lambda_bracket(
    table: &StructureTable,
    a: &ConfElement,
    b: &ConfElement,
) -> Result<LambdaPoly, ConfError> {
    let mut bound: i64 = -1;
    for (ga, ma, _) in a.terms() {
        for (gb, mb, _) in b.terms() {
            let pb = table.pair_bound(ga, gb)?;
            bound = bound.max(ma as i64 + mb as i64 + pb as i64);
        }
    }
    let mut out = LambdaPoly::zero(a.spec());
    for n in 0..=bound.max(0) as u32 {
        let v = nth_product(table, a, b, n)?;
        if !v.is_zero() {
            out.insert(n, v.scale_scalar(&factorial(n).inv().expect("nonzero factorial")));
        }
        if bound < 0 {
            break;
        }
    }
    Ok(out)
}

/// Outcome of running the CS0-CS3 checks on a structure table.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub support_bound: u32,
    /// (axiom name, passed)
    pub checks: Vec<(String, bool)>,
    pub counterexample: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{}: {}", name, if *ok { "pass" } else { "FAIL" })?;
        }
        if let Some(ce) = &self.counterexample {
            writeln!(f, "counterexample: {}", ce)?;
        }
        Ok(())
    }
}

/// Verify CS0-CS3 over the constants ring `(k, 0)`.
///
/// CS1 and the derived right-d rule are exercised for d-powers up to
/// `dpow_max`, CS2 on all generator pairs for `n <= n_max`, CS3 on all
/// generator triples for `m, n <= m_max`. Checking over `(k, 0)` suffices:
/// the base change construction transports the axioms to every ring.
pub fn check_axioms(
    table: &StructureTable,
    n_max: u32,
    m_max: u32,
    dpow_max: u32,
) -> Result<AxiomReport, ConfError> {
    let spec = RingSpec::Const;
    let ngen = table.basis().len();
    let gen = |i: usize| ConfElement::generator(i, spec);
    let mut checks = Vec::new();
    let mut counterexample = None;

    // CS0: products have finite support by construction; verify the stored
    // support and that every ordered pair is resolvable.
    let mut cs0 = true;
    'cs0: for i in 0..ngen {
        for j in 0..ngen {
            if table.gen_product(i, j, 0).is_err() {
                cs0 = false;
                counterexample = Some(format!(
                    "product of {} and {} undefined in both orientations",
                    table.basis().name(i),
                    table.basis().name(j)
                ));
                break 'cs0;
            }
        }
    }
    checks.push(("CS0".to_string(), cs0));

    // CS1 and the derived right-d rule.
    let mut cs1 = true;
    'cs1: for d in 1..=dpow_max {
        for i in 0..ngen {
            for j in 0..ngen {
                for n in 0..=n_max {
                    let a_hi = gen(i).dhat_pow(d);
                    let a_lo = gen(i).dhat_pow(d - 1);
                    let lhs = nth_product(table, &a_hi, &gen(j), n)?;
                    let rhs = if n == 0 {
                        ConfElement::zero(spec)
                    } else {
                        nth_product(table, &a_lo, &gen(j), n - 1)?
                            .scale_scalar(&Scalar::from_int(-(n as i64)))
                    };
                    if lhs != rhs {
                        cs1 = false;
                        counterexample.get_or_insert(format!(
                            "CS1 fails at (d^{} {}, {}, n={})",
                            d,
                            table.basis().name(i),
                            table.basis().name(j),
                            n
                        ));
                        break 'cs1;
                    }
                    let b_hi = gen(j).dhat_pow(d);
                    let b_lo = gen(j).dhat_pow(d - 1);
                    let lhs = nth_product(table, &gen(i), &b_hi, n)?;
                    let mut rhs = nth_product(table, &gen(i), &b_lo, n)?.apply_dhat();
                    if n > 0 {
                        rhs = rhs.add(
                            &nth_product(table, &gen(i), &b_lo, n - 1)?
                                .scale_scalar(&Scalar::from_int(n as i64)),
                        )?;
                    }
                    if lhs != rhs {
                        cs1 = false;
                        counterexample.get_or_insert(format!(
                            "right-d rule fails at ({}, d^{} {}, n={})",
                            table.basis().name(i),
                            d,
                            table.basis().name(j),
                            n
                        ));
                        break 'cs1;
                    }
                }
            }
        }
    }
    checks.push(("CS1".to_string(), cs1));

    // CS2 on all ordered pairs.
    let mut cs2 = true;
    'cs2: for i in 0..ngen {
        for j in 0..ngen {
            for n in 0..=n_max {
                let direct = table.gen_product(i, j, n)?;
                let via_cs2 = table.cs2_fallback(i, j, n)?;
                if direct != via_cs2 {
                    cs2 = false;
                    counterexample.get_or_insert(format!(
                        "CS2 fails at ({}, {}, n={})",
                        table.basis().name(i),
                        table.basis().name(j),
                        n
                    ));
                    break 'cs2;
                }
            }
        }
    }
    checks.push(("CS2".to_string(), cs2));

    // CS3 (Jacobi) on all generator triples.
    let mut cs3 = true;
    'cs3: for i in 0..ngen {
        for j in 0..ngen {
            for l in 0..ngen {
                for m in 0..=m_max {
                    for n in 0..=m_max {
                        let bc = nth_product(table, &gen(j), &gen(l), n)?;
                        let lhs = nth_product(table, &gen(i), &bc, m)?;
                        let mut rhs = ConfElement::zero(spec);
                        for jj in 0..=m {
                            let ab = nth_product(table, &gen(i), &gen(j), jj)?;
                            let term = nth_product(table, &ab, &gen(l), m + n - jj)?;
                            rhs = rhs.add(&term.scale_scalar(&binomial(m, jj)))?;
                        }
                        let ac = nth_product(table, &gen(i), &gen(l), m)?;
                        let swap = nth_product(table, &gen(j), &ac, n)?;
                        rhs = rhs.add(&swap.scale_scalar(&table.basis().pair_sign(i, j)))?;
                        if lhs != rhs {
                            cs3 = false;
                            counterexample.get_or_insert(format!(
                                "CS3 fails at ({}, {}, {}; m={}, n={})",
                                table.basis().name(i),
                                table.basis().name(j),
                                table.basis().name(l),
                                m,
                                n
                            ));
                            break 'cs3;
                        }
                    }
                }
            }
        }
    }
    checks.push(("CS3".to_string(), cs3));

    Ok(AxiomReport { support_bound: table.support_bound(), checks, counterexample })
}
