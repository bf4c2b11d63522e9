//! Sparse multivariate polynomials with exact coefficients over a fixed
//! variable shape.
//!
//! Terms are held in a BTreeMap keyed by graded-lex monomial order, so
//! iteration, display, and serialization are deterministic. Zero
//! coefficients are never stored.

use crate::error::{CoreError, Result};
use crate::monomial::Monomial;
use crate::rational::{GaussRat, Rat, Scalar};
use crate::shape::{Shape, VarIndex};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C: Scalar> {
    shape: Shape,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with rational coefficients.
pub type Poly = Polynomial<Rat>;
/// Polynomial with Gaussian rational coefficients.
pub type CxPoly = Polynomial<GaussRat>;

impl<C: Scalar> Polynomial<C> {
    pub fn zero(shape: Shape) -> Self {
        Polynomial {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(shape: Shape, c: C) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(Monomial::unit(shape), c);
        p
    }

    pub fn one(shape: Shape) -> Self {
        Self::constant(shape, C::one())
    }

    /// The variable x[row, col].
    pub fn var(shape: Shape, row: usize, col: usize) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(Monomial::var(shape, VarIndex::new(row, col)), C::one());
        p
    }

    pub fn from_monomial(shape: Shape, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(shape);
        p.add_term(m, c);
        p
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Accumulate a term, dropping the entry when it cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.exps().len(), self.shape.nvars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(CoreError::ShapeMismatch(format!(
                "{} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.shape);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        let mut out = Self::zero(self.shape);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(self.shape);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.mul(mono), v.mul_ref(c));
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = Self::zero(self.shape);
        for (m, c) in &other.terms {
            for (m2, c2) in &self.terms {
                out.add_term(m2.mul(m), c2.mul_ref(c));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.shape);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Largest total degree among terms; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Some(d) when nonzero and every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        let mut out = Self::zero(self.shape);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D, shape: Shape) -> Polynomial<D> {
        let mut out = Polynomial::zero(shape);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Substitute each variable (flat order) by the given polynomial.
    /// All replacement polynomials must share one shape, which becomes the
    /// shape of the result.
    pub fn substitute<D: Scalar>(
        &self,
        images: &[Polynomial<D>],
        embed: impl Fn(&C) -> D,
    ) -> Result<Polynomial<D>> {
        if images.len() != self.shape.nvars() {
            return Err(CoreError::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.shape.nvars(),
                images.len()
            )));
        }
        let out_shape = images
            .first()
            .map(|p| p.shape())
            .ok_or_else(|| CoreError::InvalidArgument("substitution into empty shape".into()))?;
        let mut out = Polynomial::zero(out_shape);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(out_shape, embed(c));
            for (pos, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[pos].pow(e));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl Poly {
    pub fn to_complex(&self) -> CxPoly {
        self.map_coeffs(GaussRat::from_rat, self.shape)
    }
}

impl CxPoly {
    /// Exact real part check; complex polynomials from real data stay real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }
}

/// Render one term of a canonical text form from its coefficient and
/// (symbol, row, col, exponent) factors.
pub(crate) fn render_term<C: Scalar>(
    coeff: &C,
    mono_parts: &[(char, usize, usize, u32)],
) -> (bool, String) {
    let mut vars = String::new();
    for (sym, r, c, e) in mono_parts {
        if !vars.is_empty() {
            vars.push('*');
        }
        vars.push_str(&format!("{sym}[{r},{c}]"));
        if *e > 1 {
            vars.push_str(&format!("^{e}"));
        }
    }
    let (neg, mag) = split_sign(coeff);
    if vars.is_empty() {
        return (neg, mag.coeff_string());
    }
    if mag == C::one() {
        return (neg, vars);
    }
    let cs = if mag.needs_parens() {
        format!("({})", mag.coeff_string())
    } else {
        mag.coeff_string()
    };
    (neg, format!("{cs}*{vars}"))
}

/// Split a displayable sign off a coefficient so terms can be joined with
/// " + " / " - ". Mixed complex values keep their sign inside parentheses.
fn split_sign<C: Scalar>(c: &C) -> (bool, C) {
    let s = c.coeff_string();
    if s.starts_with('-') && !c.needs_parens() {
        (true, c.neg_ref())
    } else {
        (false, c.clone())
    }
}

pub(crate) fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.shape;
        let rendered = self
            .terms
            .iter()
            .map(|(m, c)| {
                let parts: Vec<(char, usize, usize, u32)> = m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(pos, &e)| {
                        let v = VarIndex::unflatten(pos, shape);
                        ('x', v.row, v.col, e)
                    })
                    .collect();
                render_term(c, &parts)
            })
            .collect();
        write!(f, "{}", join_terms(rendered))
    }
}

/// Tokenized term: sign, coefficient text (empty means 1), variable factors
/// (symbol, row, col, exponent).
pub(crate) struct RawTerm {
    pub neg: bool,
    pub coeff: String,
    pub factors: Vec<(char, usize, usize, u32)>,
}

/// Split a canonical polynomial/operator string into raw terms. Signs
/// inside parenthesized coefficients are preserved.
pub(crate) fn tokenize_terms(s: &str) -> Result<Vec<RawTerm>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CoreError::Parse("empty polynomial text".into()));
    }
    if s == "0" {
        return Ok(Vec::new());
    }
    // split on top-level " + " / " - "
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut cur_neg = s.starts_with('-');
    let body = s.strip_prefix('-').unwrap_or(s);
    let bytes: Vec<char> = body.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
                i += 1;
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
                i += 1;
            }
            ' ' if depth == 0 && i + 2 < bytes.len() && bytes[i + 2] == ' ' => {
                let op = bytes[i + 1];
                if op == '+' || op == '-' {
                    chunks.push((cur_neg, std::mem::take(&mut cur)));
                    cur_neg = op == '-';
                    i += 3;
                } else {
                    cur.push(ch);
                    i += 1;
                }
            }
            _ => {
                cur.push(ch);
                i += 1;
            }
        }
    }
    chunks.push((cur_neg, cur));

    let mut out = Vec::new();
    for (neg, chunk) in chunks {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(CoreError::Parse("empty term".into()));
        }
        // split on '*' at depth 0
        let mut factors_txt: Vec<String> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for ch in chunk.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    cur.push(ch);
                }
                '*' if depth == 0 => factors_txt.push(std::mem::take(&mut cur)),
                _ => cur.push(ch),
            }
        }
        factors_txt.push(cur);

        let mut coeff = String::new();
        let mut factors = Vec::new();
        for (idx, ftxt) in factors_txt.iter().enumerate() {
            let ftxt = ftxt.trim();
            if idx == 0 && !(ftxt.starts_with('x') || ftxt.starts_with('d')) {
                let inner = ftxt
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(ftxt);
                coeff = inner.to_string();
                continue;
            }
            factors.push(parse_factor(ftxt)?);
        }
        out.push(RawTerm {
            neg,
            coeff,
            factors,
        });
    }
    Ok(out)
}

fn parse_factor(t: &str) -> Result<(char, usize, usize, u32)> {
    let err = || CoreError::Parse(format!("bad factor {t:?}"));
    let sym = t.chars().next().ok_or_else(err)?;
    if sym != 'x' && sym != 'd' {
        return Err(err());
    }
    let rest = &t[1..];
    let (idx_part, exp_part) = match rest.split_once('^') {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let inner = idx_part
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(err)?;
    let (r, c) = inner.split_once(',').ok_or_else(err)?;
    let row: usize = r.trim().parse().map_err(|_| err())?;
    let col: usize = c.trim().parse().map_err(|_| err())?;
    let e: u32 = match exp_part {
        Some(v) => v.trim().parse().map_err(|_| err())?,
        None => 1,
    };
    Ok((sym, row, col, e))
}

impl<C: Scalar> Polynomial<C> {
    /// Parse the canonical text form produced by Display.
    pub fn parse(s: &str, shape: Shape) -> Result<Self> {
        let mut out = Self::zero(shape);
        for term in tokenize_terms(s)? {
            let mut coeff = if term.coeff.is_empty() {
                C::one()
            } else {
                C::parse_coeff(&term.coeff)?
            };
            if term.neg {
                coeff = coeff.neg_ref();
            }
            let mut mono = Monomial::unit(shape);
            for (sym, row, col, e) in term.factors {
                if sym != 'x' {
                    return Err(CoreError::Parse(format!(
                        "derivative symbol {sym} in polynomial text"
                    )));
                }
                if row == 0 || row > shape.n || col == 0 || col > shape.k {
                    return Err(CoreError::Parse(format!(
                        "variable x[{row},{col}] outside shape {shape}"
                    )));
                }
                let mut exps = mono.exps().to_vec();
                exps[VarIndex::new(row, col).flatten(shape)] += e;
                mono = Monomial::from_exps(exps);
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn s22() -> Shape {
        Shape::new(2, 2).unwrap()
    }

    #[test]
    fn display_is_sorted_and_canonical() {
        let s = Shape::new(2, 1).unwrap();
        let p = Poly::var(s, 2, 1)
            .pow(2)
            .sub(&Poly::var(s, 1, 1).pow(2))
            .add(&Poly::one(s));
        assert_eq!(p.to_string(), "1 - x[1,1]^2 + x[2,1]^2");
    }

    #[test]
    fn parse_round_trip() {
        let cases = [
            "0",
            "3/2",
            "x[1,1]",
            "-x[2,2]",
            "1 - x[1,1]^2 + x[2,1]^2",
            "5*x[1,1]*x[2,2]^3",
            "-1/2*x[1,2] + x[2,1]",
        ];
        for c in cases {
            let p = Poly::parse(c, s22()).unwrap();
            assert_eq!(p.to_string(), c, "round trip {c}");
        }
    }

    #[test]
    fn complex_coefficients_round_trip() {
        let cases = ["i*x[1,1]", "(1+i)*x[1,1]*x[2,1]", "-i + x[1,1]", "2i*x[1,2]"];
        for c in cases {
            let p = CxPoly::parse(c, s22()).unwrap();
            assert_eq!(p.to_string(), c, "round trip {c}");
        }
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let s = s22();
        let x = Poly::var(s, 1, 1);
        let y = Poly::var(s, 2, 2);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p, x.pow(2).sub(&y.pow(2)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn shape_mismatch_detected() {
        let a = Poly::one(s22());
        let b = Poly::one(Shape::new(1, 1).unwrap());
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitution_expands() {
        // x -> x + y in one variable
        let s1 = Shape::new(1, 1).unwrap();
        let s = s22();
        let p = Poly::var(s1, 1, 1).pow(2);
        let img = vec![Poly::var(s, 1, 1).add(&Poly::var(s, 2, 2))];
        let q = p.substitute(&img, |c| c.clone()).unwrap();
        let expect = Poly::parse("x[1,1]^2 + 2*x[1,1]*x[2,2] + x[2,2]^2", s).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn scale_and_coeff_queries() {
        let s = s22();
        let p = Poly::var(s, 1, 1).scale(&rat(3, 2));
        let m = Monomial::var(s, crate::shape::VarIndex::new(1, 1));
        assert_eq!(p.coeff(&m), rat(3, 2));
        assert_eq!(p.scale(&rat_int(0)), Poly::zero(s));
    }
}
