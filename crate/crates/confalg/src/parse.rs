//! Literal parsers (scalars, ring specs, ring elements, elements of
//! `A (x) R`, 2x2 matrices, and the line-oriented algebra file format) and
//! the deterministic renderers the CLI prints with.
//!
//! Rendering conventions: `lam` for lambda, `D` for the module derivation,
//! `⊗` for the tensor (ASCII fallback `(x)`), terms sorted by
//! (generator, d-power), lambda-polynomials lowest power first.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::conformal::{
    ConfElement, GeneratorBasis, KElem, LambdaPoly, Parity, StructureTable, TableBuilder,
};
use crate::error::ConfError;
use crate::ring::{Exponent, RingElement, RingSpec};
use crate::scalar::Scalar;

// ---------------------------------------------------------------------------
// cursor

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_base: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { chars: s.chars().collect(), pos: 0, line: 1, col_base: 1, _src: s }
    }

    fn with_location(s: &'a str, line: usize, col: usize) -> Self {
        Cursor { chars: s.chars().collect(), pos: 0, line, col_base: col, _src: s }
    }

    fn err(&self, msg: impl Into<String>) -> ConfError {
        ConfError::parse(self.line, self.col_base + self.pos, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<char> {
        self.chars.get(self.pos + off).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ConfError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> Result<(), ConfError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn parse_u64(&mut self) -> Result<u64, ConfError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("number out of range"))
    }

    fn parse_i64(&mut self) -> Result<i64, ConfError> {
        let neg = self.eat('-');
        let n = self.parse_u64()? as i64;
        Ok(if neg { -n } else { n })
    }

    /// `p` or `p/q`, as a signed rational.
    fn parse_signed_ratio(&mut self) -> Result<(i64, i64), ConfError> {
        let p = self.parse_i64()?;
        if self.eat('/') {
            let q = self.parse_u64()? as i64;
            if q == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok((p, q))
        } else {
            Ok((p, 1))
        }
    }

    /// True iff an `i` token starts here (not the head of an identifier).
    fn at_i_token(&self) -> bool {
        self.peek() == Some('i')
            && !matches!(self.peek_at(1), Some(c) if c.is_alphanumeric() || c == '_')
    }

    fn parse_ident(&mut self) -> Result<String, ConfError> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_alphabetic() || c == '_') {
            return Err(self.err("expected an identifier"));
        }
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}

// ---------------------------------------------------------------------------
// scalar literals

/// One scalar summand: `i`, `p/q`, or `p/q i`. Returns the signed value.
fn parse_scalar_term(cur: &mut Cursor) -> Result<Scalar, ConfError> {
    cur.skip_ws();
    if cur.at_i_token() {
        cur.bump();
        return Ok(Scalar::i());
    }
    let (p, q) = cur.parse_signed_ratio()?;
    cur.skip_ws();
    if cur.at_i_token() {
        cur.bump();
        Ok(Scalar::from_ratio_im(p, q))
    } else {
        Ok(Scalar::from_ratio(p, q))
    }
}

fn parse_scalar_sum(cur: &mut Cursor) -> Result<Scalar, ConfError> {
    cur.skip_ws();
    let mut neg = cur.eat('-');
    let mut acc = Scalar::zero();
    loop {
        cur.skip_ws();
        let mut term = parse_scalar_term(cur)?;
        if neg {
            term = -term;
        }
        acc = acc + term;
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                neg = false;
            }
            Some('-') => {
                cur.bump();
                neg = true;
            }
            _ => return Ok(acc),
        }
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, ConfError> {
    let mut cur = Cursor::new(s);
    let v = parse_scalar_sum(&mut cur)?;
    cur.expect_end()?;
    Ok(v)
}

// ---------------------------------------------------------------------------
// ring specs and ring elements

/// `const`, `laurent`, `puiseux:D`, or `trunc:N`.
pub fn parse_ring_spec(s: &str) -> Result<RingSpec, ConfError> {
    let spec = match s.trim() {
        "const" => RingSpec::Const,
        "laurent" => RingSpec::Laurent,
        other => {
            if let Some(d) = other.strip_prefix("puiseux:") {
                RingSpec::Puiseux(
                    d.parse().map_err(|_| ConfError::parse(1, 1, "bad puiseux denominator"))?,
                )
            } else if let Some(n) = other.strip_prefix("trunc:") {
                RingSpec::Trunc(
                    n.parse().map_err(|_| ConfError::parse(1, 1, "bad trunc order"))?,
                )
            } else {
                return Err(ConfError::Usage(format!(
                    "unknown ring `{}` (expected const, laurent, puiseux:D, trunc:N)",
                    other
                )));
            }
        }
    };
    spec.validate()?;
    Ok(spec)
}

/// True iff a `t` token (the ring variable) starts here.
fn at_t_token(cur: &Cursor) -> bool {
    cur.peek() == Some('t')
        && !matches!(cur.peek_at(1), Some(c) if c.is_alphanumeric() || c == '_')
}

/// One ring summand: `[<scalar>] [t[^q]]` with at least one part present.
fn parse_ring_term(cur: &mut Cursor, spec: RingSpec) -> Result<RingElement, ConfError> {
    cur.skip_ws();
    let mut coeff = None;
    if cur.at_i_token() || matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        coeff = Some(parse_scalar_term(cur)?);
        cur.skip_ws();
    }
    if at_t_token(cur) {
        cur.bump();
        let q = if cur.eat('^') {
            let (p, d) = cur.parse_signed_ratio()?;
            Exponent::new(p, d)
        } else {
            Exponent::one()
        };
        RingElement::monomial(spec, coeff.unwrap_or_else(Scalar::one), q)
    } else {
        match coeff {
            Some(c) => Ok(RingElement::scalar(spec, c)),
            None => Err(cur.err("expected a ring term")),
        }
    }
}

fn parse_ring_sum(cur: &mut Cursor, spec: RingSpec) -> Result<RingElement, ConfError> {
    cur.skip_ws();
    let mut neg = cur.eat('-');
    let mut acc = RingElement::zero(spec);
    loop {
        cur.skip_ws();
        let mut term = parse_ring_term(cur, spec)?;
        if neg {
            term = term.neg();
        }
        acc = acc.add(&term)?;
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                neg = false;
            }
            Some('-') => {
                cur.bump();
                neg = true;
            }
            _ => return Ok(acc),
        }
    }
}

pub fn parse_ring_element(spec: RingSpec, s: &str) -> Result<RingElement, ConfError> {
    let mut cur = Cursor::new(s);
    let v = parse_ring_sum(&mut cur, spec)?;
    cur.expect_end()?;
    Ok(v)
}

// ---------------------------------------------------------------------------
// elements of A (x) R

/// Whether a tensor symbol starts here: `⊗` or the ASCII `(x)`.
fn eat_tensor(cur: &mut Cursor) -> bool {
    if cur.eat('⊗') {
        return true;
    }
    if cur.peek() == Some('(') && cur.peek_at(1) == Some('x') && cur.peek_at(2) == Some(')') {
        cur.pos += 3;
        return true;
    }
    false
}

/// One summand `[<scalar>] [D[^m]] <gen> [⊗ <ring>]`; the scalar may be
/// parenthesized to allow complex sums.
fn parse_conf_term(
    cur: &mut Cursor,
    basis: &GeneratorBasis,
    spec: RingSpec,
) -> Result<ConfElement, ConfError> {
    cur.skip_ws();
    let mut coeff = Scalar::one();
    if cur.peek() == Some('(') && !(cur.peek_at(1) == Some('x') && cur.peek_at(2) == Some(')')) {
        cur.bump();
        coeff = parse_scalar_sum(cur)?;
        cur.expect(')')?;
        cur.skip_ws();
    } else if cur.at_i_token() || matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        coeff = parse_scalar_term(cur)?;
        cur.skip_ws();
    }
    let mut dpow = 0u32;
    if cur.peek() == Some('D')
        && matches!(cur.peek_at(1), None | Some(' ') | Some('^') | Some('\t'))
    {
        cur.bump();
        if cur.eat('^') {
            dpow = cur.parse_u64()? as u32;
        } else {
            dpow = 1;
        }
        cur.skip_ws();
    }
    let name = cur.parse_ident()?;
    let g = basis
        .index(&name)
        .ok_or_else(|| cur.err(format!("unknown generator `{}`", name)))?;
    cur.skip_ws();
    let r = if eat_tensor(cur) {
        cur.skip_ws();
        if cur.eat('(') {
            let r = parse_ring_sum(cur, spec)?;
            cur.expect(')')?;
            r
        } else {
            parse_ring_term(cur, spec)?
        }
    } else {
        RingElement::one(spec)
    };
    Ok(ConfElement::term(g, dpow, r).scale_scalar(&coeff))
}

pub fn parse_conf_element(
    basis: &GeneratorBasis,
    spec: RingSpec,
    s: &str,
) -> Result<ConfElement, ConfError> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    if cur.peek() == Some('0') && cur.peek_at(1).is_none() {
        return Ok(ConfElement::zero(spec));
    }
    let mut neg = cur.eat('-');
    let mut acc = ConfElement::zero(spec);
    loop {
        let mut term = parse_conf_term(&mut cur, basis, spec)?;
        if neg {
            term = term.neg();
        }
        acc = acc.add(&term)?;
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                neg = false;
            }
            Some('-') => {
                cur.bump();
                neg = true;
            }
            None => return Ok(acc),
            _ => return Err(cur.err("expected `+`, `-`, or end of input")),
        }
    }
}

// ---------------------------------------------------------------------------
// matrices

/// `[[a, b], [c, d]]` with ring element entries.
pub fn parse_mat2(spec: RingSpec, s: &str) -> Result<crate::n4::Mat2, ConfError> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    cur.expect('[')?;
    let mut rows = Vec::new();
    for row in 0..2 {
        cur.skip_ws();
        cur.expect('[')?;
        let mut entries = Vec::new();
        for col in 0..2 {
            let start = cur.pos;
            while !matches!(cur.peek(), Some(',') | Some(']') | None) {
                cur.pos += 1;
            }
            let text: String = cur.chars[start..cur.pos].iter().collect();
            let mut inner = Cursor::with_location(&text, cur.line, cur.col_base + start);
            let e = parse_ring_sum(&mut inner, spec)?;
            inner.expect_end()?;
            entries.push(e);
            if col == 0 {
                cur.expect(',')?;
            }
        }
        cur.skip_ws();
        cur.expect(']')?;
        if row == 0 {
            cur.skip_ws();
            cur.expect(',')?;
        }
        rows.push(entries);
    }
    cur.skip_ws();
    cur.expect(']')?;
    cur.expect_end()?;
    let mut it = rows.into_iter();
    let r0 = it.next().unwrap();
    let r1 = it.next().unwrap();
    let mut e0 = r0.into_iter();
    let mut e1 = r1.into_iter();
    crate::n4::Mat2::new([
        [e0.next().unwrap(), e0.next().unwrap()],
        [e1.next().unwrap(), e1.next().unwrap()],
    ])
}

// ---------------------------------------------------------------------------
// renderers

/// Split a scalar into printable real/imaginary parts with signs.
fn scalar_parts(c: &Scalar) -> Vec<(bool, String)> {
    use num_traits::Signed;
    let mut out = Vec::new();
    if !c.re().is_zero() {
        let neg = c.re().is_negative();
        let abs = if neg { -c.re() } else { c.re().clone() };
        let s = if abs.denom().is_one() {
            format!("{}", abs.numer())
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        out.push((neg, s));
    }
    if !c.im().is_zero() {
        let neg = c.im().is_negative();
        let abs = if neg { -c.im() } else { c.im().clone() };
        let s = if abs.is_one() {
            "i".to_string()
        } else if abs.denom().is_one() {
            format!("{} i", abs.numer())
        } else {
            format!("{}/{} i", abs.numer(), abs.denom())
        };
        out.push((neg, s));
    }
    out
}

/// Scalar as a single token for use as a multiplier: simple values render
/// bare, mixed complex values are parenthesized.
fn scalar_token(c: &Scalar) -> (bool, String) {
    let parts = scalar_parts(c);
    match parts.len() {
        0 => (false, "0".to_string()),
        1 => {
            let (neg, s) = parts.into_iter().next().unwrap();
            (neg, s)
        }
        _ => (false, format!("({})", c)),
    }
}

/// Join pre-signed term strings with ` + ` / ` - `.
fn join_signed(terms: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (k, (neg, s)) in terms.into_iter().enumerate() {
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&s);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The `⊗r` suffix of a rendered term (empty over the constants when
/// `r = 1`; parenthesized when `r` has several terms).
fn tensor_suffix(r: &RingElement, ascii: bool) -> String {
    let sym = if ascii { "(x)" } else { "⊗" };
    if r.is_one() {
        return if r.spec() == RingSpec::Const { String::new() } else { format!("{}1", sym) };
    }
    let mut terms = r.terms();
    let single = match (terms.next(), terms.next()) {
        (Some((q, c)), None) if c.is_one() && !q.is_zero() => true,
        _ => false,
    };
    if single {
        format!("{}{}", sym, r)
    } else {
        format!("{}({})", sym, r)
    }
}

/// Render a lambda-polynomial in grouped factored form: terms with the
/// same generator and the same ring direction are collected into one
/// polynomial in `D` and `lam`, e.g. `(D + 2*lam) L⊗t + 2 L⊗1`.
pub fn render_lambda_poly(basis: &GeneratorBasis, p: &LambdaPoly, ascii: bool) -> String {
    use std::cmp::Reverse;
    // (generator, normalized ring element) -> (lam-power, d-power) -> Scalar
    let mut groups: BTreeMap<(usize, Reverse<RingElement>), BTreeMap<(u32, u32), Scalar>> =
        BTreeMap::new();
    for (n, e) in p.coeffs() {
        for (g, m, r) in e.terms() {
            let lead = r.terms().next().expect("nonzero coefficient").1.clone();
            let rnorm = r.scale(&lead.inv().expect("nonzero"));
            let slot = groups
                .entry((g, Reverse(rnorm)))
                .or_default()
                .entry((n, m))
                .or_insert_with(Scalar::zero);
            *slot = &*slot + &lead;
        }
    }
    let mut rendered: Vec<(bool, String)> = Vec::new();
    for ((g, Reverse(rnorm)), poly) in groups {
        let mut monos: Vec<(bool, String)> = Vec::new();
        for ((n, m), c) in poly {
            if c.is_zero() {
                continue;
            }
            let (neg, ctok) = scalar_token(&c);
            let mut parts: Vec<String> = Vec::new();
            if ctok != "1" || (m == 0 && n == 0) {
                parts.push(ctok);
            }
            if m > 0 {
                parts.push(if m == 1 { "D".to_string() } else { format!("D^{}", m) });
            }
            if n > 0 {
                parts.push(if n == 1 { "lam".to_string() } else { format!("lam^{}", n) });
            }
            monos.push((neg, parts.join("*")));
        }
        if monos.is_empty() {
            continue;
        }
        let suffix = format!("{}{}", basis.name(g), tensor_suffix(&rnorm, ascii));
        let term = if monos.len() == 1 {
            let (neg, s) = monos.into_iter().next().unwrap();
            if s == "1" {
                (neg, suffix)
            } else {
                (neg, format!("{} {}", s, suffix))
            }
        } else {
            (false, format!("({}) {}", join_signed(monos), suffix))
        };
        rendered.push(term);
    }
    join_signed(rendered)
}

/// Render an element of `A (x) R` with the same conventions (no `lam`).
pub fn render_conf_element(basis: &GeneratorBasis, e: &ConfElement, ascii: bool) -> String {
    let mut p = LambdaPoly::zero(e.spec());
    p.insert(0, e.clone());
    render_lambda_poly(basis, &p, ascii)
}

/// Render a `k[d] (x) V` value in the algebra-file term grammar.
pub fn render_kelem(basis: &GeneratorBasis, k: &KElem) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (g, m, c) in k.terms() {
        for (neg, ctok) in scalar_parts(c) {
            let mut parts: Vec<String> = Vec::new();
            if ctok != "1" {
                parts.push(ctok);
            }
            if m > 0 {
                parts.push(if m == 1 { "D".to_string() } else { format!("D^{}", m) });
            }
            parts.push(basis.name(g).to_string());
            terms.push((neg, parts.join(" ")));
        }
    }
    join_signed(terms)
}

// ---------------------------------------------------------------------------
// algebra files

/// Parse the line-oriented algebra format:
///
/// ```text
/// algebra <name>
/// generator <name> <even|odd>
/// prod <g1> <g2> <n> = <term> (+|- <term>)* | 0
/// ```
///
/// `#` starts a comment. Pairs not mentioned in any orientation default to
/// all-zero products, so a file with no `prod` lines is an abelian algebra.
pub fn parse_algebra(text: &str) -> Result<StructureTable, ConfError> {
    let mut name: Option<String> = None;
    let mut gens: Vec<(String, Parity)> = Vec::new();
    // (line number, g1, g2, n, rhs text, column of rhs)
    let mut prods: Vec<(usize, String, String, u32, String, usize)> = Vec::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = match raw.find('#') {
            Some(idx) => &raw[..idx],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("algebra") => {
                let n = words
                    .next()
                    .ok_or_else(|| ConfError::parse(ln, 1, "algebra needs a name"))?;
                if words.next().is_some() {
                    return Err(ConfError::parse(ln, 1, "trailing input after algebra name"));
                }
                name = Some(n.to_string());
            }
            Some("generator") => {
                let n = words
                    .next()
                    .ok_or_else(|| ConfError::parse(ln, 1, "generator needs a name"))?;
                let p = match words.next() {
                    Some("even") => Parity::Even,
                    Some("odd") => Parity::Odd,
                    _ => return Err(ConfError::parse(ln, 1, "generator parity must be even or odd")),
                };
                gens.push((n.to_string(), p));
            }
            Some("prod") => {
                let g1 = words
                    .next()
                    .ok_or_else(|| ConfError::parse(ln, 1, "prod needs two generators"))?;
                let g2 = words
                    .next()
                    .ok_or_else(|| ConfError::parse(ln, 1, "prod needs two generators"))?;
                let n: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| ConfError::parse(ln, 1, "prod needs a product index"))?;
                let eq = line
                    .find('=')
                    .ok_or_else(|| ConfError::parse(ln, 1, "prod needs `= <value>`"))?;
                let rhs = line[eq + 1..].to_string();
                prods.push((ln, g1.to_string(), g2.to_string(), n, rhs, eq + 2));
            }
            Some(other) => {
                return Err(ConfError::parse(ln, 1, format!("unknown directive `{}`", other)));
            }
            None => unreachable!(),
        }
    }

    let name = name.ok_or_else(|| ConfError::parse(1, 1, "missing `algebra <name>` line"))?;
    let basis = GeneratorBasis::new(gens)?;
    let mut b = TableBuilder::new(name, basis.clone());
    for (ln, g1, g2, n, rhs, col) in prods {
        let i = basis
            .index(&g1)
            .ok_or_else(|| ConfError::parse(ln, 1, format!("unknown generator `{}`", g1)))?;
        let j = basis
            .index(&g2)
            .ok_or_else(|| ConfError::parse(ln, 1, format!("unknown generator `{}`", g2)))?;
        b.declare_pair(i, j);
        let k = parse_kelem_rhs(&basis, &rhs, ln, col)?;
        b.set_product(i, j, n, k);
    }
    b.fill_undeclared_zero();
    b.build()
}

/// Parse the right side of a `prod` line as a `k[d] (x) V` value.
fn parse_kelem_rhs(
    basis: &GeneratorBasis,
    rhs: &str,
    line: usize,
    col: usize,
) -> Result<KElem, ConfError> {
    let mut cur = Cursor::with_location(rhs, line, col);
    cur.skip_ws();
    if cur.peek() == Some('0') {
        cur.bump();
        cur.expect_end()?;
        return Ok(KElem::zero());
    }
    let mut neg = cur.eat('-');
    let mut acc = KElem::zero();
    loop {
        cur.skip_ws();
        let mut coeff = Scalar::one();
        if cur.at_i_token() || matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = parse_scalar_term(&mut cur)?;
            cur.skip_ws();
        }
        let mut dpow = 0u32;
        if cur.peek() == Some('D')
            && matches!(cur.peek_at(1), None | Some(' ') | Some('^') | Some('\t'))
        {
            cur.bump();
            if cur.eat('^') {
                dpow = cur.parse_u64()? as u32;
            } else {
                dpow = 1;
            }
            cur.skip_ws();
        }
        let gname = cur.parse_ident()?;
        let g = basis
            .index(&gname)
            .ok_or_else(|| cur.err(format!("unknown generator `{}`", gname)))?;
        if neg {
            coeff = -coeff;
        }
        acc.insert(g, dpow, coeff);
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                neg = false;
            }
            Some('-') => {
                cur.bump();
                neg = true;
            }
            None => return Ok(acc),
            _ => return Err(cur.err("expected `+`, `-`, or end of line")),
        }
    }
}

/// Print a structure table in the algebra file format. Deterministic, and
/// `parse_algebra(print_algebra(t))` resolves to the same products.
pub fn print_algebra(table: &StructureTable) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", table.name()));
    let basis = table.basis();
    for g in 0..basis.len() {
        out.push_str(&format!("generator {} {}\n", basis.name(g), basis.parity(g)));
    }
    out.push('\n');
    for (i, j, prods) in table.declared_pairs() {
        if prods.is_empty() {
            out.push_str(&format!("prod {} {} 0 = 0\n", basis.name(i), basis.name(j)));
            continue;
        }
        for (n, v) in prods {
            out.push_str(&format!(
                "prod {} {} {} = {}\n",
                basis.name(i),
                basis.name(j),
                n,
                render_kelem(basis, v)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_k2_alt, build_kn, build_n4, n4_basis, n4_gen};
    use crate::conformal::lambda_bracket;

    #[test]
    fn scalar_literals_round_trip() {
        for s in ["0", "1", "-2", "3/2", "i", "-i", "3/2 i", "1/2 + i", "-2 - 1/3 i"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(v.to_string(), s, "round trip of `{}`", s);
        }
        assert!(parse_scalar("3/0").is_err());
        assert!(parse_scalar("1 +").is_err());
    }

    #[test]
    fn ring_spec_literals() {
        assert_eq!(parse_ring_spec("const").unwrap(), RingSpec::Const);
        assert_eq!(parse_ring_spec("laurent").unwrap(), RingSpec::Laurent);
        assert_eq!(parse_ring_spec("puiseux:3").unwrap(), RingSpec::Puiseux(3));
        assert_eq!(parse_ring_spec("trunc:4").unwrap(), RingSpec::Trunc(4));
        assert!(parse_ring_spec("puiseux:0").is_err());
        assert!(parse_ring_spec("weird").is_err());
    }

    #[test]
    fn ring_element_literals_round_trip() {
        let l = RingSpec::Laurent;
        for s in ["0", "1", "t", "-1/2 t^-2", "1 + 2 t^3", "t + i t", "3 - t"] {
            let v = parse_ring_element(l, s).unwrap();
            assert_eq!(v.to_string(), s, "round trip of `{}`", s);
        }
        let p = RingSpec::Puiseux(2);
        assert_eq!(parse_ring_element(p, "t^1/2").unwrap().to_string(), "t^1/2");
        // exponent outside the ring
        assert!(parse_ring_element(l, "t^1/2").is_err());
        assert!(parse_ring_element(RingSpec::Const, "t").is_err());
    }

    #[test]
    fn conf_element_literals() {
        let basis = n4_basis();
        let l = RingSpec::Laurent;
        let e = parse_conf_element(&basis, l, "L ⊗ t").unwrap();
        assert_eq!(e, ConfElement::term(n4_gen::L, 0, RingElement::t(l).unwrap()));
        let e2 = parse_conf_element(&basis, l, "L (x) t").unwrap();
        assert_eq!(e, e2);
        let e3 = parse_conf_element(&basis, RingSpec::Const, "2 D^2 T1 - i G1").unwrap();
        let expect = ConfElement::term(
            n4_gen::T1,
            2,
            RingElement::scalar(RingSpec::Const, Scalar::from_int(2)),
        )
        .add(&ConfElement::term(
            n4_gen::G1,
            0,
            RingElement::scalar(RingSpec::Const, -Scalar::i()),
        ))
        .unwrap();
        assert_eq!(e3, expect);
        let e4 = parse_conf_element(&basis, l, "(1/2 + i) L ⊗ (1 + t)").unwrap();
        let r = parse_ring_element(l, "1 + t").unwrap();
        assert_eq!(e4, ConfElement::term(n4_gen::L, 0, r).scale_scalar(&parse_scalar("1/2 + i").unwrap()));
        assert!(parse_conf_element(&basis, l, "L ⊗ q").is_err());
        assert!(parse_conf_element(&basis, l, "Z").is_err());
    }

    #[test]
    fn mat2_literals() {
        let l = RingSpec::Laurent;
        let m = parse_mat2(l, "[[1, t], [0, 1]]").unwrap();
        assert_eq!(m.e[0][1], RingElement::t(l).unwrap());
        assert!(m.det().is_one());
        assert!(parse_mat2(l, "[[1, t], [0]]").is_err());
    }

    #[test]
    fn bracket_render_example() {
        let table = build_n4();
        let l = RingSpec::Laurent;
        let a = parse_conf_element(table.basis(), l, "L ⊗ t").unwrap();
        let b = parse_conf_element(table.basis(), l, "L ⊗ 1").unwrap();
        let br = lambda_bracket(&table, &a, &b).unwrap();
        assert_eq!(
            render_lambda_poly(table.basis(), &br, false),
            "(D + 2*lam) L⊗t + 2 L⊗1"
        );
        assert_eq!(
            render_lambda_poly(table.basis(), &br, true),
            "(D + 2*lam) L(x)t + 2 L(x)1"
        );
    }

    #[test]
    fn render_zero_and_const() {
        let table = build_n4();
        let basis = table.basis();
        assert_eq!(
            render_conf_element(basis, &ConfElement::zero(RingSpec::Const), false),
            "0"
        );
        let g1 = ConfElement::generator(n4_gen::G1, RingSpec::Const);
        assert_eq!(render_conf_element(basis, &g1, false), "G1");
        let e = g1.scale_scalar(&Scalar::from_ratio(-3, 2));
        assert_eq!(render_conf_element(basis, &e, false), "-3/2 G1");
    }

    #[test]
    fn algebra_files_round_trip() {
        for table in [build_n4(), build_k2_alt(), build_kn(2).unwrap()] {
            let text = print_algebra(&table);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back.basis(), table.basis());
            assert_eq!(print_algebra(&back), text);
            // resolved products agree everywhere
            for i in 0..table.basis().len() {
                for j in 0..table.basis().len() {
                    for n in 0..=table.pair_bound(i, j).unwrap() + 1 {
                        assert_eq!(
                            back.gen_product(i, j, n).unwrap(),
                            table.gen_product(i, j, n).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn empty_product_section_is_abelian() {
        let t = parse_algebra("algebra free2\ngenerator a even\ngenerator b even\n").unwrap();
        assert!(t.gen_product(0, 1, 0).unwrap().is_zero());
        assert!(t.gen_product(1, 0, 0).unwrap().is_zero());
    }

    #[test]
    fn dsl_errors_carry_positions() {
        let r = parse_algebra("algebra x\ngenerator a even\nprod a a 0 = 2 q\n");
        match r {
            Err(ConfError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error, got {:?}", other),
        }
    }
}
