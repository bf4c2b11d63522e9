//! The three operator families acting on C[R^(n x k)]: the sl2 triple
//! (k=1 picture), the graded sp_2k family p+ / gl_k / p-, and the
//! orthogonal-side operators (infinitesimal rotations plus the signed
//! permutation subgroup at group level).
//!
//! certify_relations checks every commutation relation twice, through
//! independent mechanisms: once as a normal-ordered operator identity and
//! once by applying both sides to every monomial up to a degree cap.

use crate::basis::graded_basis;
use crate::diffop::Op;
use crate::error::{CoreError, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rational::{half_int, rat_int, Rat, Scalar};
use crate::shape::{Shape, VarIndex};
use num::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// e = -(1/2) sum_l x_l^2, h = n/2 + sum_l x_l d_l, f = (1/2) sum_l d_l^2
/// on the single-column space.
pub struct Sl2Triple {
    pub e: Op,
    pub h: Op,
    pub f: Op,
}

pub fn build_sl2(n: usize) -> Result<Sl2Triple> {
    let shape = Shape::new(n, 1)?;
    let mut e = Op::zero(shape);
    let mut h = Op::scalar(shape, half_int(n as i64));
    let mut f = Op::zero(shape);
    for l in 1..=n {
        let x = Monomial::var(shape, VarIndex::new(l, 1));
        let x2 = x.mul(&x);
        let unit = Monomial::unit(shape);
        e.add_term(x2.clone(), unit.clone(), half_int(-1));
        h.add_term(x.clone(), x.clone(), rat_int(1));
        f.add_term(unit, x2, half_int(1));
    }
    Ok(Sl2Triple { e, h, f })
}

/// The graded families: p_plus(i,j) = sum_l x_li x_lj (raising),
/// gl(i,j) = (n/2)delta_ij + sum_l x_li d_lj, p_minus(i,j) = sum_l d_li d_lj
/// (lowering). Indices are 1-based; p_plus and p_minus are symmetric.
pub struct Sp2kGenerators {
    shape: Shape,
    p_plus: Vec<Vec<Op>>,
    gl_k: Vec<Vec<Op>>,
    p_minus: Vec<Vec<Op>>,
}

pub fn build_sp2k(n: usize, k: usize) -> Result<Sp2kGenerators> {
    let shape = Shape::new(n, k)?;
    if k == 0 {
        return Err(CoreError::InvalidArgument("k = 0 has no sp family".into()));
    }
    let unit = Monomial::unit(shape);
    let mut p_plus = Vec::with_capacity(k);
    let mut gl_k = Vec::with_capacity(k);
    let mut p_minus = Vec::with_capacity(k);
    for i in 1..=k {
        let mut prow = Vec::with_capacity(k);
        let mut erow = Vec::with_capacity(k);
        let mut mrow = Vec::with_capacity(k);
        for j in 1..=k {
            let mut plus = Op::zero(shape);
            let mut e = if i == j {
                Op::scalar(shape, half_int(n as i64))
            } else {
                Op::zero(shape)
            };
            let mut minus = Op::zero(shape);
            for l in 1..=n {
                let xi = Monomial::var(shape, VarIndex::new(l, i));
                let xj = Monomial::var(shape, VarIndex::new(l, j));
                plus.add_term(xi.mul(&xj), unit.clone(), rat_int(1));
                e.add_term(xi.clone(), xj.clone(), rat_int(1));
                minus.add_term(unit.clone(), xi.mul(&xj), rat_int(1));
            }
            prow.push(plus);
            erow.push(e);
            mrow.push(minus);
        }
        p_plus.push(prow);
        gl_k.push(erow);
        p_minus.push(mrow);
    }
    Ok(Sp2kGenerators {
        shape,
        p_plus,
        gl_k,
        p_minus,
    })
}

impl Sp2kGenerators {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn p_plus(&self, i: usize, j: usize) -> &Op {
        &self.p_plus[i - 1][j - 1]
    }

    pub fn gl(&self, i: usize, j: usize) -> &Op {
        &self.gl_k[i - 1][j - 1]
    }

    pub fn p_minus(&self, i: usize, j: usize) -> &Op {
        &self.p_minus[i - 1][j - 1]
    }

    /// The p_plus family without symmetric duplicates, (i, j, op) with i <= j.
    pub fn p_plus_list(&self) -> Vec<(usize, usize, &Op)> {
        self.symmetric_list(&self.p_plus)
    }

    pub fn p_minus_list(&self) -> Vec<(usize, usize, &Op)> {
        self.symmetric_list(&self.p_minus)
    }

    pub fn gl_list(&self) -> Vec<(usize, usize, &Op)> {
        let k = self.shape.k;
        let mut out = Vec::new();
        for i in 1..=k {
            for j in 1..=k {
                out.push((i, j, self.gl(i, j)));
            }
        }
        out
    }

    fn symmetric_list<'a>(&'a self, fam: &'a [Vec<Op>]) -> Vec<(usize, usize, &'a Op)> {
        let k = self.shape.k;
        let mut out = Vec::new();
        for i in 1..=k {
            for j in i..=k {
                out.push((i, j, &fam[i - 1][j - 1]));
            }
        }
        out
    }

    /// Every generator with a display name, in a fixed order.
    pub fn named_ops(&self) -> Vec<(String, &Op)> {
        let mut out = Vec::new();
        for (i, j, op) in self.p_plus_list() {
            out.push((format!("p+({i},{j})"), op));
        }
        for (i, j, op) in self.gl_list() {
            out.push((format!("E({i},{j})"), op));
        }
        for (i, j, op) in self.p_minus_list() {
            out.push((format!("p-({i},{j})"), op));
        }
        out
    }
}

/// L(a,b) = sum_j (x_aj d_bj - x_bj d_aj) for a < b; empty when n = 1.
pub struct OrthGenerators {
    shape: Shape,
    list: Vec<(usize, usize, Op)>,
}

pub fn build_orth(n: usize, k: usize) -> Result<OrthGenerators> {
    let shape = Shape::new(n, k)?;
    let mut list = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            let mut op = Op::zero(shape);
            for j in 1..=k {
                let xa = Monomial::var(shape, VarIndex::new(a, j));
                let xb = Monomial::var(shape, VarIndex::new(b, j));
                op.add_term(xa.clone(), xb.clone(), rat_int(1));
                op.add_term(xb, xa, rat_int(-1));
            }
            list.push((a, b, op));
        }
    }
    Ok(OrthGenerators { shape, list })
}

impl OrthGenerators {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn list(&self) -> &[(usize, usize, Op)] {
        &self.list
    }

    pub fn ops(&self) -> Vec<&Op> {
        self.list.iter().map(|(_, _, op)| op).collect()
    }

    /// L(a,b) for any a != b, with L(b,a) = -L(a,b).
    pub fn l(&self, a: usize, b: usize) -> Op {
        for (s, t, op) in &self.list {
            if (*s, *t) == (a, b) {
                return op.clone();
            }
            if (*s, *t) == (b, a) {
                return op.neg();
            }
        }
        Op::zero(self.shape)
    }
}

/// A signed permutation g of the n rows: g(e_l) = s_l e_{perm(l)}.
/// Polynomials transform by (g.f)(x) = f(g^{-1} x), which substitutes
/// x_{l,j} -> s_l x_{perm(l),j}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPermAction {
    shape: Shape,
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl SignedPermAction {
    pub fn identity(shape: Shape) -> Self {
        SignedPermAction {
            shape,
            perm: (0..shape.n).collect(),
            flip: vec![false; shape.n],
        }
    }

    /// Swap of rows a and b (1-based).
    pub fn transposition(shape: Shape, a: usize, b: usize) -> Self {
        let mut g = Self::identity(shape);
        g.perm.swap(a - 1, b - 1);
        g
    }

    /// Sign flip of row a alone.
    pub fn reflection(shape: Shape, a: usize) -> Self {
        let mut g = Self::identity(shape);
        g.flip[a - 1] = true;
        g
    }

    pub fn minus_identity(shape: Shape) -> Self {
        let mut g = Self::identity(shape);
        g.flip.iter_mut().for_each(|f| *f = true);
        g
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// self after other.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.shape, other.shape);
        let n = self.shape.n;
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for l in 0..n {
            perm[l] = self.perm[other.perm[l]];
            flip[l] = other.flip[l] ^ self.flip[other.perm[l]];
        }
        SignedPermAction {
            shape: self.shape,
            perm,
            flip,
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.shape.n;
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for l in 0..n {
            perm[self.perm[l]] = l;
            flip[self.perm[l]] = self.flip[l];
        }
        SignedPermAction {
            shape: self.shape,
            perm,
            flip,
        }
    }

    pub fn det(&self) -> i64 {
        let mut seen = vec![false; self.perm.len()];
        let mut sign = 1i64;
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.perm[at];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        for &f in &self.flip {
            if f {
                sign = -sign;
            }
        }
        sign
    }

    fn act_exps(&self, exps: &[u32]) -> (Vec<u32>, bool) {
        let k = self.shape.k;
        let mut out = vec![0u32; exps.len()];
        let mut negate = false;
        for l in 0..self.shape.n {
            let mut row_deg = 0u32;
            for j in 0..k {
                let e = exps[l * k + j];
                out[self.perm[l] * k + j] = e;
                row_deg += e;
            }
            if self.flip[l] && row_deg % 2 == 1 {
                negate = !negate;
            }
        }
        (out, negate)
    }

    /// Image of a single monomial with its sign.
    pub fn act_monomial(&self, m: &Monomial) -> (i64, Monomial) {
        let (exps, negate) = self.act_exps(m.exps());
        (if negate { -1 } else { 1 }, Monomial::from_exps(exps))
    }

    pub fn act<C: Scalar>(&self, p: &Polynomial<C>) -> Polynomial<C> {
        debug_assert_eq!(self.shape, p.shape());
        let mut out = Polynomial::zero(self.shape);
        for (m, c) in p.terms() {
            let (exps, negate) = self.act_exps(m.exps());
            let coeff = if negate { c.neg_ref() } else { c.clone() };
            out.add_term(Monomial::from_exps(exps), coeff);
        }
        out
    }

    /// g . op . g^{-1} as an operator: both variable indices and derivative
    /// indices move by the row permutation, signs flip per odd row degree.
    pub fn conjugate_op(&self, op: &Op) -> Op {
        let mut out = Op::zero(self.shape);
        for ((xm, dm), c) in op.terms() {
            let (xe, nx) = self.act_exps(xm.exps());
            let (de, nd) = self.act_exps(dm.exps());
            let coeff = if nx ^ nd { c.neg_ref() } else { c.clone() };
            out.add_term(Monomial::from_exps(xe), Monomial::from_exps(de), coeff);
        }
        out
    }
}

/// Substitution action of a signed permutation on a polynomial.
pub fn group_act<C: Scalar>(
    g: &SignedPermAction,
    p: &Polynomial<C>,
) -> Result<Polynomial<C>> {
    if g.shape() != p.shape() {
        return Err(CoreError::ShapeMismatch(format!(
            "group element on {} vs polynomial on {}",
            g.shape(),
            p.shape()
        )));
    }
    Ok(g.act(p))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationReport {
    pub id: String,
    pub method: String,
    pub status: bool,
}

enum Check {
    Bracket { a: Op, b: Op, rhs: Op },
    PermCommute { g: SignedPermAction, t: Op },
}

struct Relation {
    id: String,
    check: Check,
}

/// Certify every commutation relation of the operator families on
/// C[R^(n x k)], each by two independent routes: exact normal-ordered
/// operator identity, and application of both sides to every monomial of
/// degree <= degree_cap. Two report rows per relation.
pub fn certify_relations(n: usize, k: usize, degree_cap: u32) -> Result<Vec<RelationReport>> {
    if degree_cap < 2 {
        return Err(CoreError::InvalidArgument(
            "degree cap below 2 certifies nothing".into(),
        ));
    }
    let shape = Shape::new(n, k)?;
    let sp = build_sp2k(n, k)?;
    let orth = build_orth(n, k)?;
    let sl2 = build_sl2(n)?;
    let sl2_shape = sl2.h.shape();

    let mut relations: Vec<Relation> = Vec::new();
    let mut bracket = |id: String, a: &Op, b: &Op, rhs: Op| {
        relations.push(Relation {
            id,
            check: Check::Bracket {
                a: a.clone(),
                b: b.clone(),
                rhs,
            },
        });
    };

    bracket("[e,f]=h".into(), &sl2.e, &sl2.f, sl2.h.clone());
    bracket("[h,e]=2e".into(), &sl2.h, &sl2.e, sl2.e.scale(&rat_int(2)));
    bracket("[h,f]=-2f".into(), &sl2.h, &sl2.f, sl2.f.scale(&rat_int(-2)));

    // gl_k internal brackets: [E(i,j), E(s,t)] = d_js E(i,t) - d_ti E(s,j)
    let gl_pairs = sp.gl_list();
    for (u, &(i, j, _)) in gl_pairs.iter().enumerate() {
        for &(s, t, _) in gl_pairs.iter().skip(u + 1) {
            let mut rhs = Op::zero(shape);
            if j == s {
                rhs = rhs.add(sp.gl(i, t));
            }
            if t == i {
                rhs = rhs.sub(sp.gl(s, j));
            }
            bracket(
                format!("[E({i},{j}),E({s},{t})]"),
                sp.gl(i, j),
                sp.gl(s, t),
                rhs,
            );
        }
    }
    // [E(i,j), p+(s,t)] = d_js p+(i,t) + d_jt p+(s,i)
    for &(i, j, _) in &gl_pairs {
        for (s, t, _) in sp.p_plus_list() {
            let mut rhs = Op::zero(shape);
            if j == s {
                rhs = rhs.add(sp.p_plus(i, t));
            }
            if j == t {
                rhs = rhs.add(sp.p_plus(s, i));
            }
            bracket(
                format!("[E({i},{j}),p+({s},{t})]"),
                sp.gl(i, j),
                sp.p_plus(s, t),
                rhs,
            );
        }
    }
    // [E(i,j), p-(s,t)] = -d_is p-(j,t) - d_it p-(s,j)
    for &(i, j, _) in &gl_pairs {
        for (s, t, _) in sp.p_minus_list() {
            let mut rhs = Op::zero(shape);
            if i == s {
                rhs = rhs.sub(sp.p_minus(j, t));
            }
            if i == t {
                rhs = rhs.sub(sp.p_minus(s, j));
            }
            bracket(
                format!("[E({i},{j}),p-({s},{t})]"),
                sp.gl(i, j),
                sp.p_minus(s, t),
                rhs,
            );
        }
    }
    // [p-(i,j), p+(s,t)] = d_js E(t,i) + d_jt E(s,i) + d_is E(t,j) + d_it E(s,j)
    for (i, j, _) in sp.p_minus_list() {
        for (s, t, _) in sp.p_plus_list() {
            let mut rhs = Op::zero(shape);
            if j == s {
                rhs = rhs.add(sp.gl(t, i));
            }
            if j == t {
                rhs = rhs.add(sp.gl(s, i));
            }
            if i == s {
                rhs = rhs.add(sp.gl(t, j));
            }
            if i == t {
                rhs = rhs.add(sp.gl(s, j));
            }
            bracket(
                format!("[p-({i},{j}),p+({s},{t})]"),
                sp.p_minus(i, j),
                sp.p_plus(s, t),
                rhs,
            );
        }
    }
    // same-grade families commute
    let plus_list = sp.p_plus_list();
    for (u, &(i, j, a)) in plus_list.iter().enumerate() {
        for &(s, t, b) in plus_list.iter().skip(u + 1) {
            bracket(
                format!("[p+({i},{j}),p+({s},{t})]"),
                a,
                b,
                Op::zero(shape),
            );
        }
    }
    let minus_list = sp.p_minus_list();
    for (u, &(i, j, a)) in minus_list.iter().enumerate() {
        for &(s, t, b) in minus_list.iter().skip(u + 1) {
            bracket(
                format!("[p-({i},{j}),p-({s},{t})]"),
                a,
                b,
                Op::zero(shape),
            );
        }
    }
    // the rotation generators commute with all of sp_2k
    for (a, b, l) in orth.list() {
        for (tname, t) in sp.named_ops() {
            bracket(format!("[L({a},{b}),{tname}]"), l, t, Op::zero(shape));
        }
    }
    // signed permutation generators commute with all of sp_2k
    let mut gens: Vec<(String, SignedPermAction)> = Vec::new();
    for i in 1..n {
        gens.push((
            format!("swap({i},{})", i + 1),
            SignedPermAction::transposition(shape, i, i + 1),
        ));
    }
    gens.push(("r".into(), SignedPermAction::reflection(shape, 1)));
    let minus = SignedPermAction::minus_identity(shape);
    if !gens.iter().any(|(_, g)| *g == minus) {
        gens.push(("-1".into(), minus));
    }
    for (gname, g) in &gens {
        for (tname, t) in sp.named_ops() {
            relations.push(Relation {
                id: format!("{gname}~{tname}"),
                check: Check::PermCommute {
                    g: g.clone(),
                    t: t.clone(),
                },
            });
        }
    }

    let pool_main = monomial_pool(shape, degree_cap);
    let pool_sl2 = if sl2_shape == shape {
        pool_main.clone()
    } else {
        monomial_pool(sl2_shape, degree_cap)
    };
    let packed_main = pack_pool(shape, degree_cap, &pool_main);
    let packed_sl2 = pack_pool(sl2_shape, degree_cap, &pool_sl2);

    let rows: Vec<[RelationReport; 2]> = relations
        .par_iter()
        .map(|rel| {
            let (symbolic, applied) = match &rel.check {
                Check::Bracket { a, b, rhs } => {
                    let symbolic = a.commutator(b) == *rhs;
                    let (pool, packed) = if a.shape() == shape {
                        (&pool_main, &packed_main)
                    } else {
                        (&pool_sl2, &packed_sl2)
                    };
                    let applied = applied_bracket_fast(a, b, rhs, packed.as_deref())
                        .unwrap_or_else(|| applied_bracket_generic(a, b, rhs, pool));
                    (symbolic, applied)
                }
                Check::PermCommute { g, t } => {
                    let symbolic = g.conjugate_op(t) == *t;
                    let applied = applied_perm_fast(g, t, packed_main.as_deref())
                        .unwrap_or_else(|| applied_perm_generic(g, t, &pool_main));
                    (symbolic, applied)
                }
            };
            [
                RelationReport {
                    id: rel.id.clone(),
                    method: "symbolic".into(),
                    status: symbolic,
                },
                RelationReport {
                    id: rel.id.clone(),
                    method: "applied".into(),
                    status: applied,
                },
            ]
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

fn monomial_pool(shape: Shape, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=cap {
        out.extend(graded_basis(shape, d).span.monomials().iter().cloned());
    }
    out
}

/// Evaluate [a,b](m) - rhs(m) for every pool monomial by direct application,
/// with no normal-ordered composition involved.
pub(crate) fn applied_bracket_generic(a: &Op, b: &Op, rhs: &Op, pool: &[Monomial]) -> bool {
    let one = <Rat as Scalar>::one();
    let minus_one = one.neg_ref();
    let mut stage: Vec<(Monomial, Rat)> = Vec::new();
    let mut acc: Vec<(Monomial, Rat)> = Vec::new();
    for m in pool {
        acc.clear();
        stage.clear();
        b.push_apply(m, &one, &mut stage);
        for (mm, c) in stage.drain(..) {
            a.push_apply(&mm, &c, &mut acc);
        }
        a.push_apply(m, &one, &mut stage);
        for (mm, c) in stage.drain(..) {
            b.push_apply(&mm, &c.neg_ref(), &mut acc);
        }
        rhs.push_apply(m, &minus_one, &mut acc);
        if !folds_to_zero_rat(&mut acc) {
            return false;
        }
    }
    true
}

pub(crate) fn applied_perm_generic(g: &SignedPermAction, t: &Op, pool: &[Monomial]) -> bool {
    for m in pool {
        let p = Polynomial::from_monomial(t.shape(), m.clone(), <Rat as Scalar>::one());
        if g.act(&t.apply(&p)) != t.apply(&g.act(&p)) {
            return false;
        }
    }
    true
}

fn folds_to_zero_rat(acc: &mut Vec<(Monomial, Rat)>) -> bool {
    acc.sort_unstable_by(|x, y| x.0.cmp(&y.0));
    let mut i = 0;
    while i < acc.len() {
        let mut sum = acc[i].1.clone();
        let mut j = i + 1;
        while j < acc.len() && acc[j].0 == acc[i].0 {
            sum = sum.add_ref(&acc[j].1);
            j += 1;
        }
        if !Scalar::is_zero(&sum) {
            return false;
        }
        i = j;
    }
    true
}

// Fast path for the applied route: monomials packed as u64 nibble vectors
// (one hex digit per variable), coefficients as i64 numerators over a fixed
// denominator. Only valid while every intermediate exponent stays below 16,
// which the degree guard in pack_pool ensures.

struct PackedTerm {
    xadd: u64,
    dsub: u64,
    dsupport: Vec<(u32, u32)>,
    coeff: i64,
}

struct PackedOp {
    terms: Vec<PackedTerm>,
}

impl PackedOp {
    /// scale must clear every denominator; the largest operator raise or
    /// lower is 2, so exponents stay within a nibble for pool degree <= 11.
    fn build(op: &Op, scale: i64) -> Option<PackedOp> {
        let nvars = op.shape().nvars();
        if nvars > 16 {
            return None;
        }
        let mut terms = Vec::new();
        for ((xm, dm), c) in op.terms() {
            let scaled = c * Rat::from_integer(scale.into());
            if !scaled.is_integer() {
                return None;
            }
            let coeff = scaled.to_integer().to_i64()?;
            if xm.degree() > 2 || dm.degree() > 2 {
                return None;
            }
            let mut dsupport = Vec::new();
            for (pos, &e) in dm.exps().iter().enumerate() {
                if e > 0 {
                    dsupport.push((4 * pos as u32, e));
                }
            }
            terms.push(PackedTerm {
                xadd: pack_exps(xm.exps())?,
                dsub: pack_exps(dm.exps())?,
                dsupport,
                coeff,
            });
        }
        Some(PackedOp { terms })
    }

    fn push_apply(&self, m: u64, factor: i64, out: &mut Vec<(u64, i64)>) {
        'terms: for t in &self.terms {
            let mut fall = 1i64;
            for &(shift, ord) in &t.dsupport {
                let e = ((m >> shift) & 0xF) as u32;
                if e < ord {
                    continue 'terms;
                }
                for step in 0..ord {
                    fall *= (e - step) as i64;
                }
            }
            out.push((m - t.dsub + t.xadd, t.coeff * factor * fall));
        }
    }
}

fn pack_exps(exps: &[u32]) -> Option<u64> {
    let mut out = 0u64;
    for (pos, &e) in exps.iter().enumerate() {
        if e > 15 || pos > 15 {
            return None;
        }
        out |= (e as u64) << (4 * pos);
    }
    Some(out)
}

/// None when the shape or cap exceeds the packed representation.
fn pack_pool(shape: Shape, cap: u32, pool: &[Monomial]) -> Option<Vec<u64>> {
    if shape.nvars() > 16 || cap + 4 > 15 {
        return None;
    }
    pool.iter().map(|m| pack_exps(m.exps())).collect()
}

pub(crate) fn applied_bracket_fast(
    a: &Op,
    b: &Op,
    rhs: &Op,
    packed_pool: Option<&[u64]>,
) -> Option<bool> {
    let pool = packed_pool?;
    let pa = PackedOp::build(a, 2)?;
    let pb = PackedOp::build(b, 2)?;
    let prhs = PackedOp::build(rhs, 4)?;
    let mut stage: Vec<(u64, i64)> = Vec::new();
    let mut acc: Vec<(u64, i64)> = Vec::new();
    for &m in pool {
        acc.clear();
        stage.clear();
        pb.push_apply(m, 1, &mut stage);
        for &(mm, c) in &stage {
            pa.push_apply(mm, c, &mut acc);
        }
        stage.clear();
        pa.push_apply(m, 1, &mut stage);
        for &(mm, c) in &stage {
            pb.push_apply(mm, -c, &mut acc);
        }
        prhs.push_apply(m, -1, &mut acc);
        if !folds_to_zero_i64(&mut acc) {
            return Some(false);
        }
    }
    Some(true)
}

pub(crate) fn applied_perm_fast(
    g: &SignedPermAction,
    t: &Op,
    packed_pool: Option<&[u64]>,
) -> Option<bool> {
    let pool = packed_pool?;
    let pt = PackedOp::build(t, 2)?;
    let shape = t.shape();
    // variable position map and per-position sign rows
    let mut posmap = vec![0u32; shape.nvars()];
    let mut flip = vec![false; shape.nvars()];
    for l in 1..=shape.n {
        for j in 1..=shape.k {
            let from = VarIndex::new(l, j).flatten(shape);
            let e_l = Polynomial::from_monomial(
                shape,
                Monomial::var(shape, VarIndex::new(l, j)),
                <Rat as Scalar>::one(),
            );
            let image = g.act(&e_l);
            let (im, ic) = image.terms().next().unwrap();
            let to = im.exps().iter().position(|&e| e == 1).unwrap();
            posmap[from] = 4 * to as u32;
            flip[from] = Scalar::is_zero(&ic.add_ref(&<Rat as Scalar>::one()));
        }
    }
    let act = |m: u64| -> (u64, i64) {
        let mut out = 0u64;
        let mut sign = 1i64;
        for pos in 0..shape.nvars() {
            let e = (m >> (4 * pos)) & 0xF;
            out |= e << posmap[pos];
            if flip[pos] && e & 1 == 1 {
                sign = -sign;
            }
        }
        (out, sign)
    };
    let mut stage: Vec<(u64, i64)> = Vec::new();
    let mut acc: Vec<(u64, i64)> = Vec::new();
    for &m in pool {
        acc.clear();
        stage.clear();
        pt.push_apply(m, 1, &mut stage);
        for &(mm, c) in &stage {
            let (pm, s) = act(mm);
            acc.push((pm, c * s));
        }
        let (gm, s) = act(m);
        pt.push_apply(gm, -s, &mut acc);
        if !folds_to_zero_i64(&mut acc) {
            return Some(false);
        }
    }
    Some(true)
}

fn folds_to_zero_i64(acc: &mut Vec<(u64, i64)>) -> bool {
    acc.sort_unstable_by_key(|e| e.0);
    let mut i = 0;
    while i < acc.len() {
        let mut sum = acc[i].1;
        let mut j = i + 1;
        while j < acc.len() && acc[j].0 == acc[i].0 {
            sum += acc[j].1;
            j += 1;
        }
        if sum != 0 {
            return false;
        }
        i = j;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rational::rat;

    fn s(n: usize, k: usize) -> Shape {
        Shape::new(n, k).unwrap()
    }

    #[test]
    fn single_column_family_reduces_to_sl2() {
        let sl2 = build_sl2(3).unwrap();
        let sp = build_sp2k(3, 1).unwrap();
        assert_eq!(*sp.p_plus(1, 1), sl2.e.scale(&rat_int(-2)));
        assert_eq!(*sp.gl(1, 1), sl2.h);
        assert_eq!(*sp.p_minus(1, 1), sl2.f.scale(&rat_int(2)));
    }

    #[test]
    fn generator_display_forms() {
        let sp = build_sp2k(2, 1).unwrap();
        assert_eq!(sp.p_plus(1, 1).to_string(), "x[1,1]^2 + x[2,1]^2");
        assert_eq!(
            sp.gl(1, 1).to_string(),
            "1 + x[1,1]*d[1,1] + x[2,1]*d[2,1]"
        );
        assert_eq!(sp.p_minus(1, 1).to_string(), "d[1,1]^2 + d[2,1]^2");
    }

    #[test]
    fn diagonal_gl_generator_eigenvalue() {
        // n=1, k=2: E(1,1) x_11 = (1/2 + 1) x_11
        let sp = build_sp2k(1, 2).unwrap();
        let x11 = Poly::parse("x[1,1]", s(1, 2)).unwrap();
        assert_eq!(sp.gl(1, 1).apply(&x11), x11.scale(&rat(3, 2)));
        assert_eq!(sp.gl(2, 2).apply(&x11), x11.scale(&rat(1, 2)));
    }

    #[test]
    fn mixed_bracket_lands_in_gl_span() {
        let sp = build_sp2k(2, 2).unwrap();
        let c = sp.p_plus(1, 1).commutator(sp.p_minus(1, 1));
        let family: Vec<Op> = sp.gl_list().iter().map(|(_, _, op)| (*op).clone()).collect();
        let coords = c.in_span(&family).unwrap();
        assert_eq!(
            coords,
            vec![rat_int(-4), rat_int(0), rat_int(0), rat_int(0)]
        );
    }

    #[test]
    fn rotations_annihilate_the_quadric() {
        let orth = build_orth(2, 1).unwrap();
        let q = Poly::parse("x[1,1]^2 + x[2,1]^2", s(2, 1)).unwrap();
        let (_, _, l12) = &orth.list()[0];
        assert!(l12.apply(&q).is_zero());
        assert!(build_orth(1, 1).unwrap().list().is_empty());
    }

    #[test]
    fn rotation_bracket_closure() {
        // [L(a,b), L(c,d)] = d_bc L(a,d) + d_ad L(b,c) - d_bd L(a,c) - d_ac L(b,d)
        let orth = build_orth(3, 2).unwrap();
        for (a, b, x) in orth.list() {
            for (c, d, y) in orth.list() {
                let mut rhs = Op::zero(orth.shape());
                if b == c {
                    rhs = rhs.add(&orth.l(*a, *d));
                }
                if a == d {
                    rhs = rhs.add(&orth.l(*b, *c));
                }
                if b == d {
                    rhs = rhs.sub(&orth.l(*a, *c));
                }
                if a == c {
                    rhs = rhs.sub(&orth.l(*b, *d));
                }
                assert_eq!(x.commutator(y), rhs, "[L({a},{b}),L({c},{d})]");
            }
        }
    }

    #[test]
    fn signed_permutation_action() {
        let sh = s(2, 1);
        let r = SignedPermAction::reflection(sh, 1);
        let p = Poly::parse("x[1,1]*x[2,1]", sh).unwrap();
        assert_eq!(group_act(&r, &p).unwrap(), p.neg());
        // -1 scales degree d by (-1)^d
        let minus = SignedPermAction::minus_identity(sh);
        let cubic = Poly::parse("x[1,1]^2*x[2,1]", sh).unwrap();
        assert_eq!(minus.act(&cubic), cubic.neg());
        // the quadric is invariant under all generators
        let sh3 = s(3, 1);
        let q = Poly::parse("x[1,1]^2 + x[2,1]^2 + x[3,1]^2", sh3).unwrap();
        for g in [
            SignedPermAction::transposition(sh3, 1, 2),
            SignedPermAction::transposition(sh3, 2, 3),
            SignedPermAction::reflection(sh3, 2),
        ] {
            assert_eq!(g.act(&q), q);
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let sh = s(3, 2);
        let g = SignedPermAction::transposition(sh, 1, 3);
        let h = SignedPermAction::reflection(sh, 1);
        let p = Poly::parse("x[1,1]^2*x[3,2] - x[2,1]*x[1,2]", sh).unwrap();
        assert_eq!(g.act(&h.act(&p)), g.compose(&h).act(&p));
        assert_eq!(h.act(&g.act(&p)), h.compose(&g).act(&p));
        let gi = g.inverse();
        assert_eq!(gi.act(&g.act(&p)), p);
        assert_eq!(g.det(), -1);
        assert_eq!(h.det(), -1);
        assert_eq!(SignedPermAction::minus_identity(s(2, 1)).det(), 1);
        assert_eq!(SignedPermAction::minus_identity(s(3, 1)).det(), -1);
    }

    #[test]
    fn h_eigenvalue_law() {
        for n in 1..=3 {
            let sl2 = build_sl2(n).unwrap();
            let sh = s(n, 1);
            for d in 0..=4u32 {
                let ev = half_int(n as i64) + Rat::from_integer(d.into());
                for m in graded_basis(sh, d).span.monomials() {
                    let p = Poly::from_monomial(sh, m.clone(), rat_int(1));
                    assert_eq!(sl2.h.apply(&p), p.scale(&ev));
                }
            }
        }
    }

    #[test]
    fn euler_trace_law() {
        for (n, k, dmax) in [(2usize, 2usize, 3u32), (3, 1, 4)] {
            let sp = build_sp2k(n, k).unwrap();
            let sh = s(n, k);
            let mut euler = Op::zero(sh);
            for j in 1..=k {
                euler = euler.add(sp.gl(j, j));
            }
            for d in 0..=dmax {
                let basis = graded_basis(sh, d);
                let mat = euler.matrix_between(&basis.span, &basis.span).unwrap();
                let mut trace = rat_int(0);
                for i in 0..basis.span.len() {
                    trace = trace + mat.at(i, i).clone();
                }
                let expected = (Rat::from_integer(d.into())
                    + half_int((n * k) as i64))
                    * Rat::from_integer(basis.span.len().into());
                assert_eq!(trace, expected, "trace at n={n} k={k} d={d}");
            }
        }
    }

    #[test]
    fn certification_passes_on_small_shapes() {
        let rows = certify_relations(3, 1, 4).unwrap();
        assert!(rows.iter().all(|r| r.status), "failures: {:?}", rows.iter().filter(|r| !r.status).collect::<Vec<_>>());
        assert!(rows.iter().any(|r| r.id == "[e,f]=h" && r.method == "symbolic"));
        assert!(rows.iter().any(|r| r.id == "[e,f]=h" && r.method == "applied"));
        // hand checks of [e,f]=h on 1, x1, x1^2
        let sl2 = build_sl2(3).unwrap();
        let sh = s(3, 1);
        for mono in ["1", "x[1,1]", "x[1,1]^2"] {
            let p = Poly::parse(mono, sh).unwrap();
            let lhs = sl2.e.apply(&sl2.f.apply(&p)).sub(&sl2.f.apply(&sl2.e.apply(&p)));
            assert_eq!(lhs, sl2.h.apply(&p), "on {mono}");
        }
    }

    #[test]
    fn rotation_commutation_rows() {
        let rows = certify_relations(2, 2, 4).unwrap();
        let l_rows: Vec<_> = rows.iter().filter(|r| r.id.starts_with("[L(1,2),")).collect();
        // 10 sp_4 generators, two methods each
        assert_eq!(l_rows.len(), 20);
        assert!(l_rows.iter().all(|r| r.status));
        assert!(rows.iter().all(|r| r.status));
    }

    #[test]
    fn single_point_edge_case() {
        let rows = certify_relations(1, 1, 2).unwrap();
        assert!(!rows.iter().any(|r| r.id.starts_with("[L(")));
        assert!(rows.iter().all(|r| r.status));
    }

    #[test]
    #[ignore = "timing probe for the largest certification shape"]
    fn certification_worst_case_timing() {
        let start = std::time::Instant::now();
        let rows = certify_relations(5, 3, 6).unwrap();
        let elapsed = start.elapsed();
        println!("(5,3,6): {} rows in {elapsed:?}", rows.len());
        assert!(rows.iter().all(|r| r.status));
    }

    #[test]
    fn fast_and_generic_applied_routes_agree() {
        let sp = build_sp2k(2, 2).unwrap();
        let shape = sp.shape();
        let pool = monomial_pool(shape, 4);
        let packed = pack_pool(shape, 4, &pool);
        assert!(packed.is_some());
        let a = sp.gl(1, 1).clone();
        let b = sp.p_plus(1, 2).clone();
        let good = sp.p_plus(1, 2).clone(); // [E(1,1), p+(1,2)] = p+(1,2)
        let bad = sp.p_plus(1, 2).scale(&rat_int(2));
        for (rhs, expect) in [(&good, true), (&bad, false)] {
            let fast = applied_bracket_fast(&a, &b, rhs, packed.as_deref()).unwrap();
            let generic = applied_bracket_generic(&a, &b, rhs, &pool);
            assert_eq!(fast, expect);
            assert_eq!(generic, expect);
        }
        // perm route, honest and broken
        let g = SignedPermAction::transposition(shape, 1, 2);
        assert!(applied_perm_fast(&g, &a, packed.as_deref()).unwrap());
        assert!(applied_perm_generic(&g, &a, &pool));
        let skew = Op::parse("x[1,1]*d[1,1]", shape).unwrap();
        assert!(!applied_perm_fast(&g, &skew, packed.as_deref()).unwrap());
        assert!(!applied_perm_generic(&g, &skew, &pool));
    }
}
