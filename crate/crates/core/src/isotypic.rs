//! Isotypic decomposition through highest weight vectors.
//!
//! A joint highest weight vector for the rotation and column actions is
//! supported in a single column-degree block and a single rotation weight
//! space, so the search runs over small (block, weight) slices of the
//! degree space instead of the whole thing. All solving happens in split
//! frame coordinates over the rationals; every reported vector is then
//! converted to x coordinates and re-verified against operators built by
//! an unrelated construction route.
//!
//! Label assembly from a highest weight, anchored by explicit examples in
//! the tests below:
//!   odd n:  the weight itself when the degree parity matches its size,
//!           otherwise its determinant twist (the sign character acts by
//!           (-1)^degree on each variable row);
//!   even n, last weight entry nonzero: the weight as a partition, with
//!           mirror-weight copies paired into one orthogonal type;
//!   even n, last weight entry zero: the swap of the last plane fixes the
//!           weight space and splits it; its +1 side keeps the partition
//!           label, the -1 side is the determinant twist. The trivial
//!           label lands on the +1 side (constants are swap-fixed), and
//!           the 2x2 determinant pins the -1 side.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::{column_blocks, graded_basis, MonoSpan};
use crate::diffop::Op;
use crate::error::{CoreError, Result};
use crate::frame::{gl_raising_x, so_cartan_x, OrthFrame};
use crate::harmonic::{harmonic_space, joint_kernel_on_span};
use crate::matrix::{coords_in_span, RationalMatrix, SpanBuilder};
use crate::monomial::Monomial;
use crate::operators::{build_sp2k, SignedPermAction};
use crate::partitions::{det_twist, gl_dimension, GlIrrepParam, OrthIrrepParam, Partition};
use crate::poly::{CxPoly, Poly, Polynomial};
use crate::rational::{half_int, rat_int, GaussRat, Rat, Scalar};
use crate::shape::Shape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    /// The joint Laplacian kernel in the given degree.
    Harmonic,
    /// All polynomials of the given degree.
    Full,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsotypicComponent {
    pub orth_label: OrthIrrepParam,
    /// Shifted column weight: block degrees plus n/2 each, as canonical
    /// rational strings.
    pub glk_weight: Vec<String>,
    /// Unshifted column degrees of the hosting block.
    pub col_degrees: Vec<u32>,
    pub so_weight: Vec<i64>,
    pub degree: u32,
    pub multiplicity: usize,
    /// Dimension of one orthogonal irreducible, found by closing the span
    /// of a highest weight vector under the spanning operator family (and
    /// the plane swap for even n), never by a character formula.
    pub orth_dimension: usize,
    /// Dimension of the column-group irreducible by the Weyl formula.
    pub gl_dimension: u64,
    /// Sign of the plane swap on the vectors below; only present for the
    /// split case (even n, weight ending in zero).
    pub swap_sign: Option<i8>,
    /// Highest weight vectors in canonical x-coordinate text.
    pub hwv_basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsotypicReport {
    pub n: usize,
    pub k: usize,
    pub degree: u32,
    pub space: SpaceKind,
    pub dimension: usize,
    pub zero: bool,
    pub components: Vec<IsotypicComponent>,
    /// Sum over components of multiplicity times both dimensions equals
    /// the dimension of the decomposed space.
    pub dimension_check: bool,
}

fn weakly_decreasing(c: &[u32]) -> bool {
    c.windows(2).all(|w| w[0] >= w[1])
}

fn dominant_nonneg(mu: &[i64]) -> bool {
    mu.last().is_none_or(|&last| last >= 0) && mu.windows(2).all(|w| w[0] >= w[1])
}

fn partition_from_weight(mu: &[i64]) -> Result<Partition> {
    let mut parts: Vec<u32> = Vec::new();
    for &x in mu {
        if x < 0 {
            return Err(CoreError::Identification(format!(
                "negative entry in candidate weight {mu:?}"
            )));
        }
        if x > 0 {
            parts.push(x as u32);
        }
    }
    Partition::new(parts)
}

/// One solved (block, weight) slice before label assembly.
struct Slice {
    col_weight: Vec<u32>,
    so_weight: Vec<i64>,
    span: MonoSpan,
    hwvs: Vec<Poly>,
}

fn hwv_slice(
    ops: &[&Op],
    shape: Shape,
    block: &MonoSpan,
    groups: &BTreeMap<Vec<i64>, Vec<Monomial>>,
    mu: &[i64],
) -> Option<(MonoSpan, Vec<Poly>)> {
    let monos = groups.get(mu)?;
    let span = MonoSpan::new(shape, monos.clone());
    let _ = block;
    let kernel = joint_kernel_on_span(ops, &[], &span);
    if kernel.is_empty() {
        return None;
    }
    let hwvs = kernel.iter().map(|v| span.poly_from_coords(v)).collect();
    Some((span, hwvs))
}

pub fn isotypic_decomposition(
    n: usize,
    k: usize,
    d: u32,
    space: SpaceKind,
) -> Result<IsotypicReport> {
    let shape = Shape::new(n, k)?;
    let dimension = match space {
        SpaceKind::Harmonic => harmonic_space(n, k, d)?.dimension(),
        SpaceKind::Full => graded_basis(shape, d).span.len(),
    };
    let mut components = Vec::new();
    if k == 0 {
        if d == 0 {
            components.push(IsotypicComponent {
                orth_label: OrthIrrepParam::new(n, Partition::empty())?,
                glk_weight: Vec::new(),
                col_degrees: Vec::new(),
                so_weight: vec![0; n / 2],
                degree: 0,
                multiplicity: 1,
                orth_dimension: 1,
                gl_dimension: 1,
                swap_sign: None,
                hwv_basis: vec!["1".into()],
            });
        }
        let total: u128 = components.len() as u128;
        return Ok(IsotypicReport {
            n,
            k,
            degree: d,
            space,
            dimension,
            zero: components.is_empty(),
            dimension_check: total == dimension as u128,
            components,
        });
    }

    let frame = OrthFrame::new(n, k)?;
    let m = frame.pairs();
    let mut op_store: Vec<Op> = Vec::new();
    op_store.extend(frame.so_simple_raising());
    op_store.extend(frame.gl_simple_raising());
    if space == SpaceKind::Harmonic {
        op_store.extend(frame.laplacians());
    }
    let ops: Vec<&Op> = op_store.iter().collect();
    let swap = frame.conjugation_swap();

    let mut slices: Vec<Slice> = Vec::new();
    for (c, block) in column_blocks(&graded_basis(shape, d)) {
        if !weakly_decreasing(&c) {
            continue;
        }
        let mut groups: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        for mono in block.monomials() {
            groups
                .entry(frame.so_weight(mono))
                .or_default()
                .push(mono.clone());
        }
        let weights: Vec<Vec<i64>> = groups.keys().rev().cloned().collect();
        for mu in weights {
            if !dominant_nonneg(&mu) {
                continue;
            }
            let Some((span, hwvs)) = hwv_slice(&ops, shape, &block, &groups, &mu) else {
                continue;
            };
            // mirror copy for even n with a nonzero last entry: the counts
            // must agree, and the mirror vectors belong to the same
            // orthogonal components
            if n % 2 == 0 && m >= 1 && mu[m - 1] > 0 {
                let mut mirror = mu.clone();
                mirror[m - 1] = -mirror[m - 1];
                let mirror_dim = hwv_slice(&ops, shape, &block, &groups, &mirror)
                    .map(|(_, hs)| hs.len())
                    .unwrap_or(0);
                if mirror_dim != hwvs.len() {
                    return Err(CoreError::Identification(format!(
                        "mirror weight spaces differ at c={c:?} mu={mu:?}: {} vs {}",
                        hwvs.len(),
                        mirror_dim
                    )));
                }
            }
            slices.push(Slice {
                col_weight: c.clone(),
                so_weight: mu,
                span,
                hwvs,
            });
        }
    }

    for slice in &slices {
        let base = partition_from_weight(&slice.so_weight)?;
        if n % 2 == 1 {
            let anchor = OrthIrrepParam::new(n, base)?;
            let label = if (d as i64 - anchor.lambda.size() as i64) % 2 == 0 {
                anchor
            } else {
                det_twist(&anchor)
            };
            components.push(build_component(
                &frame, shape, space, d, label, slice, &slice.hwvs, None,
            )?);
        } else if m >= 1 && slice.so_weight[m - 1] > 0 {
            let label = OrthIrrepParam::new(n, base)?;
            components.push(build_component(
                &frame, shape, space, d, label, slice, &slice.hwvs, None,
            )?);
        } else {
            // swap-split case; n even (m = 0 cannot happen: n >= 1 even
            // means m >= 1, and the all-zero weight always lands here)
            let action = swap.as_ref().expect("even n has a swap");
            let (plus, minus) = swap_split(action, &slice.span, &slice.hwvs)?;
            if !plus.is_empty() {
                let label = OrthIrrepParam::new(n, base.clone())?;
                components.push(build_component(
                    &frame,
                    shape,
                    space,
                    d,
                    label,
                    slice,
                    &plus,
                    Some(1),
                )?);
            }
            if !minus.is_empty() {
                let label = det_twist(&OrthIrrepParam::new(n, base)?);
                components.push(build_component(
                    &frame,
                    shape,
                    space,
                    d,
                    label,
                    slice,
                    &minus,
                    Some(-1),
                )?);
            }
        }
    }

    let mut total: u128 = 0;
    for comp in &components {
        total += comp.multiplicity as u128
            * comp.orth_dimension as u128
            * comp.gl_dimension as u128;
    }
    Ok(IsotypicReport {
        n,
        k,
        degree: d,
        space,
        dimension,
        zero: components.is_empty(),
        dimension_check: total == dimension as u128,
        components,
    })
}

/// Split a swap-stable highest weight space into +1 and -1 eigenvectors.
fn swap_split(
    action: &SignedPermAction,
    span: &MonoSpan,
    hwvs: &[Poly],
) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let dim = hwvs.len();
    let coords: Vec<Vec<Rat>> = hwvs
        .iter()
        .map(|h| span.coords(h))
        .collect::<Result<_>>()?;
    let mut t = RationalMatrix::zeros(dim, dim);
    for (i, h) in hwvs.iter().enumerate() {
        let image = span.coords(&action.act(h))?;
        let a = coords_in_span(&coords, &image).ok_or_else(|| {
            CoreError::Identification("plane swap leaves the highest weight space".into())
        })?;
        for (j, x) in a.iter().enumerate() {
            t.set(j, i, x.clone());
        }
    }
    // the swap is an involution on coefficient vectors
    for i in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[i] = <Rat as Scalar>::one();
        if t.mul_vec(&t.mul_vec(&e)) != e {
            return Err(CoreError::Identification("plane swap fails to square to one".into()));
        }
    }
    let eigens = |sign: i64| -> Vec<Poly> {
        let mut shifted = RationalMatrix::zeros(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                let mut v = t.at(r, c).clone();
                if r == c {
                    v = v.sub_ref(&rat_int(sign));
                }
                shifted.set(r, c, v);
            }
        }
        shifted
            .kernel()
            .into_iter()
            .map(|a| {
                let mut p = Polynomial::zero(span.shape());
                for (x, h) in a.iter().zip(hwvs) {
                    p = p.add(&h.scale(x));
                }
                p
            })
            .collect()
    };
    Ok((eigens(1), eigens(-1)))
}

#[allow(clippy::too_many_arguments)]
fn build_component(
    frame: &OrthFrame,
    shape: Shape,
    space: SpaceKind,
    d: u32,
    label: OrthIrrepParam,
    slice: &Slice,
    hwvs: &[Poly],
    swap_sign: Option<i8>,
) -> Result<IsotypicComponent> {
    let k = shape.k;
    let n = shape.n;
    let weight: Vec<Rat> = slice
        .col_weight
        .iter()
        .map(|&cj| rat_int(cj as i64) + half_int(n as i64))
        .collect();
    let glk_weight: Vec<String> = weight.iter().map(crate::rational::rat_string).collect();
    let gl_dim: u64 = gl_dimension(&GlIrrepParam::new(k, weight)?)?
        .try_into()
        .map_err(|_| CoreError::Identification("column dimension overflows u64".into()))?;
    let orth_dimension = orbit_dimension(frame, shape, d, &slice.col_weight, &hwvs[0])?;
    let mut hwv_basis = Vec::new();
    for h in hwvs {
        let hx = frame.to_x_real(h);
        verify_hwv_x(frame, shape, space, &hx, &slice.so_weight, &slice.col_weight)?;
        hwv_basis.push(hx.to_string());
    }
    Ok(IsotypicComponent {
        orth_label: label,
        glk_weight,
        col_degrees: slice.col_weight.clone(),
        so_weight: slice.so_weight.clone(),
        degree: d,
        multiplicity: hwvs.len(),
        orth_dimension,
        gl_dimension: gl_dim,
        swap_sign,
        hwv_basis,
    })
}

/// Dimension of the orthogonal irreducible generated by one highest
/// weight vector: close its span under the spanning family (plus the
/// plane swap for even n, which reaches the mirror chirality).
fn orbit_dimension(
    frame: &OrthFrame,
    shape: Shape,
    d: u32,
    col_weight: &[u32],
    hwv: &Poly,
) -> Result<usize> {
    // row operators preserve column degrees, so the orbit stays inside
    // this block
    let block = graded_basis(shape, d)
        .span
        .filter(|mono| mono.column_degrees(shape) == col_weight);
    let ops = frame.so_spanning();
    let swap = frame.conjugation_swap();
    let mut builder = SpanBuilder::new(block.len());
    builder.insert(block.coords(hwv)?);
    let mut frontier = vec![hwv.clone()];
    while let Some(p) = frontier.pop() {
        for op in &ops {
            let q = op.apply(&p);
            if !q.is_zero() && builder.insert(block.coords(&q)?) {
                frontier.push(q);
            }
        }
        if let Some(s) = &swap {
            let q = s.act(&p);
            if builder.insert(block.coords(&q)?) {
                frontier.push(q);
            }
        }
    }
    Ok(builder.rank())
}

/// Independent x-coordinate verification of a reported vector: killed by
/// the composed raising operators and (for harmonics) the Laplacians,
/// with the declared rotation and column weights.
pub(crate) fn verify_hwv_x(
    frame: &OrthFrame,
    shape: Shape,
    space: SpaceKind,
    hx: &CxPoly,
    mu: &[i64],
    col_weight: &[u32],
) -> Result<()> {
    let fail = |what: &str| {
        Err(CoreError::Identification(format!(
            "x-coordinate re-verification failed: {what} (n={} k={})",
            shape.n, shape.k
        )))
    };
    for op in frame.so_simple_raising_x() {
        if !op.apply(hx).is_zero() {
            return fail("rotation raising does not annihilate");
        }
    }
    for j in 1..shape.k {
        if !gl_raising_x(shape, j, j + 1).apply(hx).is_zero() {
            return fail("column raising does not annihilate");
        }
    }
    if space == SpaceKind::Harmonic {
        let sp = build_sp2k(shape.n, shape.k)?;
        for (_, _, op) in sp.p_minus_list() {
            if !op.to_complex().apply(hx).is_zero() {
                return fail("Laplacian does not annihilate");
            }
        }
    }
    for (p, &mu_p) in mu.iter().enumerate() {
        let eigen = so_cartan_x(shape, p + 1).apply(hx);
        if eigen != hx.scale(&GaussRat::real(rat_int(mu_p))) {
            return fail("rotation weight mismatch");
        }
    }
    for (j, &cj) in col_weight.iter().enumerate() {
        let euler = gl_raising_x(shape, j + 1, j + 1).apply(hx);
        if euler != hx.scale(&GaussRat::real(rat_int(cj as i64))) {
            return fail("column weight mismatch");
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrreducibilityRow {
    pub degree: u32,
    pub dimension: usize,
    pub zero: bool,
    pub component_count: usize,
    pub orth_label: Option<OrthIrrepParam>,
    pub expected_h_eigenvalue: String,
    pub h_eigenvalue_ok: bool,
    pub ladder_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrreducibilityCertificate {
    pub n: usize,
    pub max_degree: u32,
    pub rows: Vec<IrreducibilityRow>,
    pub pass: bool,
}

/// One-column harmonics: each degree is zero or a single orthogonal
/// isotypic component, the sl2 Cartan eigenvalue is d + n/2, and the
/// radial ladder above each nonzero space climbs as expected.
pub fn irreducibility_certificate(n: usize, max_degree: u32) -> Result<IrreducibilityCertificate> {
    let sl2 = crate::operators::build_sl2(n)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for d in 0..=max_degree {
        let rep = isotypic_decomposition(n, 1, d, SpaceKind::Harmonic)?;
        let space = harmonic_space(n, 1, d)?;
        let expected = rat_int(d as i64) + half_int(n as i64);
        let mut h_ok = true;
        for b in space.basis() {
            if sl2.h.apply(b) != b.scale(&expected) {
                h_ok = false;
            }
        }
        let ladder_ok = if rep.zero {
            true
        } else {
            crate::harmonic::weight_ladder(n, d, 2)?.pass
        };
        let row_ok =
            (rep.zero || rep.components.len() == 1) && h_ok && ladder_ok && rep.dimension_check;
        if !row_ok {
            pass = false;
        }
        rows.push(IrreducibilityRow {
            degree: d,
            dimension: rep.dimension,
            zero: rep.zero,
            component_count: rep.components.len(),
            orth_label: rep.components.first().map(|c| c.orth_label.clone()),
            expected_h_eigenvalue: crate::rational::rat_string(&expected),
            h_eigenvalue_ok: h_ok,
            ladder_ok,
        });
    }
    Ok(IrreducibilityCertificate {
        n,
        max_degree,
        rows,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualityPairRow {
    pub degree: u32,
    pub orth_label: OrthIrrepParam,
    pub glk_weight: Vec<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualityCertificate {
    pub n: usize,
    pub k: usize,
    pub max_degree: u32,
    pub pairs: Vec<DualityPairRow>,
    pub multiplicity_free: bool,
    pub orth_labels_distinct: bool,
    pub gl_weights_distinct: bool,
    pub dimension_checks: bool,
    pub pass: bool,
}

/// Across all harmonic degrees up to the bound, every orthogonal label
/// appears at most once, and occurring orthogonal labels and column
/// weights determine each other.
pub fn duality_certificate(n: usize, k: usize, max_degree: u32) -> Result<DualityCertificate> {
    let mut pairs = Vec::new();
    let mut mult_free = true;
    let mut dims_ok = true;
    for d in 0..=max_degree {
        let rep = isotypic_decomposition(n, k, d, SpaceKind::Harmonic)?;
        if !rep.dimension_check {
            dims_ok = false;
        }
        for comp in rep.components {
            if comp.multiplicity != 1 {
                mult_free = false;
            }
            pairs.push(DualityPairRow {
                degree: d,
                orth_label: comp.orth_label,
                glk_weight: comp.glk_weight,
                multiplicity: comp.multiplicity,
            });
        }
    }
    let distinct = |mut items: Vec<String>| -> bool {
        let before = items.len();
        items.sort();
        items.dedup();
        items.len() == before
    };
    let orth_labels_distinct = distinct(pairs.iter().map(|p| p.orth_label.to_string()).collect());
    let gl_weights_distinct = distinct(pairs.iter().map(|p| p.glk_weight.join(",")).collect());
    let pass = mult_free && orth_labels_distinct && gl_weights_distinct && dims_ok;
    Ok(DualityCertificate {
        n,
        k,
        max_degree,
        pairs,
        multiplicity_free: mult_free,
        orth_labels_distinct,
        gl_weights_distinct,
        dimension_checks: dims_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    
    fn decompose(n: usize, k: usize, d: u32, space: SpaceKind) -> IsotypicReport {
        let rep = isotypic_decomposition(n, k, d, space).unwrap();
        assert!(rep.dimension_check, "dims at n={n} k={k} d={d}: {rep:?}");
        rep
    }

    fn label(rep: &IsotypicReport, idx: usize) -> String {
        rep.components[idx].orth_label.to_string()
    }

    #[test]
    fn three_dim_harmonics_are_single_components() {
        let expected_dims = [1usize, 3, 5, 7, 9];
        for (d, &dim) in expected_dims.iter().enumerate() {
            let rep = decompose(3, 1, d as u32, SpaceKind::Harmonic);
            assert_eq!(rep.dimension, dim);
            assert_eq!(rep.components.len(), 1);
            let comp = &rep.components[0];
            let expected_parts: Vec<u32> = if d == 0 { vec![] } else { vec![d as u32] };
            assert_eq!(comp.orth_label.lambda.parts(), expected_parts.as_slice());
            assert_eq!(comp.multiplicity, 1);
            assert_eq!(comp.orth_dimension, dim);
            assert_eq!(comp.gl_dimension, 1);
            assert_eq!(comp.glk_weight, vec![crate::rational::rat_string(&(rat_int(d as i64) + half_int(3)))]);
        }
    }

    #[test]
    fn plane_harmonics_pair_chiralities() {
        for d in 1..=4u32 {
            let rep = decompose(2, 1, d, SpaceKind::Harmonic);
            assert_eq!(rep.dimension, 2);
            assert_eq!(rep.components.len(), 1);
            let comp = &rep.components[0];
            assert_eq!(comp.orth_label.lambda.parts(), &[d]);
            assert_eq!(comp.orth_dimension, 2);
            assert_eq!(comp.so_weight, vec![d as i64]);
        }
    }

    #[test]
    fn line_harmonics_alternate_with_the_sign_label() {
        let even = decompose(1, 1, 0, SpaceKind::Harmonic);
        assert_eq!(label(&even, 0), "O(1)~()");
        let odd = decompose(1, 1, 1, SpaceKind::Harmonic);
        assert_eq!(label(&odd, 0), "O(1)~(1)");
        let gone = decompose(1, 1, 2, SpaceKind::Harmonic);
        assert!(gone.zero);
    }

    #[test]
    fn full_line_degree_zero_reports_the_half_shift() {
        let rep = decompose(1, 1, 0, SpaceKind::Full);
        assert_eq!(rep.components.len(), 1);
        assert_eq!(rep.components[0].glk_weight, vec!["1/2".to_string()]);
    }

    #[test]
    fn first_matrix_degree_splits_rank_two() {
        let rep = decompose(2, 2, 1, SpaceKind::Harmonic);
        assert_eq!(rep.dimension, 4);
        assert_eq!(rep.components.len(), 1);
        let comp = &rep.components[0];
        assert_eq!(comp.orth_label.lambda.parts(), &[1]);
        assert_eq!(comp.glk_weight, vec!["2".to_string(), "1".to_string()]);
        assert_eq!(comp.orth_dimension, 2);
        assert_eq!(comp.gl_dimension, 2);
    }

    #[test]
    fn determinant_sits_on_the_minus_side_of_the_swap() {
        let rep = decompose(2, 2, 2, SpaceKind::Harmonic);
        assert_eq!(rep.dimension, 7);
        assert_eq!(rep.components.len(), 2);
        let plus = &rep.components[0];
        assert_eq!(plus.orth_label.lambda.parts(), &[2]);
        assert_eq!(plus.orth_dimension, 2);
        assert_eq!(plus.gl_dimension, 3);
        let det = &rep.components[1];
        assert_eq!(det.orth_label.lambda.parts(), &[1, 1]);
        assert_eq!(det.swap_sign, Some(-1));
        assert_eq!(det.orth_dimension, 1);
        assert_eq!(det.gl_dimension, 1);
        assert_eq!(det.glk_weight, vec!["2".to_string(), "2".to_string()]);
        // the -1 vector is the actual 2x2 determinant, up to scale
        let hwv = CxPoly::parse(&det.hwv_basis[0], Shape::new(2, 2).unwrap()).unwrap();
        let detp = CxPoly::parse(
            "x[1,1]*x[2,2] - x[1,2]*x[2,1]",
            Shape::new(2, 2).unwrap(),
        )
        .unwrap();
        let lead_h = hwv.terms().next().unwrap().1.clone();
        let lead_d = detp.terms().next().unwrap().1.clone();
        assert_eq!(hwv.scale(&lead_d), detp.scale(&lead_h));
    }

    #[test]
    fn constants_are_swap_fixed() {
        let rep = decompose(4, 2, 0, SpaceKind::Harmonic);
        assert_eq!(rep.components.len(), 1);
        assert_eq!(rep.components[0].swap_sign, Some(1));
        assert_eq!(label(&rep, 0), "O(4)~()");
    }

    #[test]
    fn full_space_stacks_radial_layers() {
        let rep = decompose(3, 1, 4, SpaceKind::Full);
        assert_eq!(rep.dimension, 15);
        let labels: Vec<String> = (0..rep.components.len()).map(|i| label(&rep, i)).collect();
        assert_eq!(labels, ["O(3)~(4)", "O(3)~(2)", "O(3)~()"]);
        for comp in &rep.components {
            assert_eq!(comp.multiplicity, 1);
            assert_eq!(comp.glk_weight, vec!["11/2".to_string()]);
        }
        let dims: Vec<usize> = rep.components.iter().map(|c| c.orth_dimension).collect();
        assert_eq!(dims, [9, 5, 1]);
    }

    #[test]
    fn full_and_harmonic_labels_agree_through_radial_powers() {
        for (n, k, dmax) in [(2usize, 2usize, 3u32), (3, 1, 4), (3, 2, 3)] {
            for d in 0..=dmax {
                let full = decompose(n, k, d, SpaceKind::Full);
                let mut full_labels: Vec<String> =
                    (0..full.components.len()).map(|i| label(&full, i)).collect();
                full_labels.sort();
                full_labels.dedup();
                let mut harm_labels: Vec<String> = Vec::new();
                let mut j = 0;
                while 2 * j <= d {
                    let rep = decompose(n, k, d - 2 * j, SpaceKind::Harmonic);
                    harm_labels.extend((0..rep.components.len()).map(|i| label(&rep, i)));
                    j += 1;
                }
                harm_labels.sort();
                harm_labels.dedup();
                assert_eq!(full_labels, harm_labels, "n={n} k={k} d={d}");
            }
        }
    }

    #[test]
    fn radial_shadow_of_a_harmonic_vector_is_not_harmonic() {
        // multiplying a degree-2 harmonic by the radial invariant keeps the
        // label but leaves the harmonic space
        let sp = build_sp2k(3, 1).unwrap();
        let rep2 = decompose(3, 1, 2, SpaceKind::Harmonic);
        let hwv = CxPoly::parse(&rep2.components[0].hwv_basis[0], Shape::new(3, 1).unwrap())
            .unwrap();
        let mut q = Polynomial::zero(Shape::new(3, 1).unwrap());
        for ((xm, _), c) in sp.p_plus(1, 1).terms() {
            q.add_term(xm.clone(), c.clone());
        }
        let shadow = q.to_complex().mul(&hwv);
        let lap = sp.p_minus(1, 1).to_complex();
        assert!(!lap.apply(&shadow).is_zero());
        let full4 = decompose(3, 1, 4, SpaceKind::Full);
        assert!(full4
            .components
            .iter()
            .any(|c| c.orth_label.lambda.parts() == [2]));
    }

    #[test]
    fn four_by_two_grid_passes_dimension_checks() {
        for n in 1..=4usize {
            for k in 0..=2usize {
                for d in 0..=4u32 {
                    decompose(n, k, d, SpaceKind::Harmonic);
                    decompose(n, k, d, SpaceKind::Full);
                }
            }
        }
    }

    #[test]
    fn zero_spaces_report_explicitly() {
        let rep = decompose(1, 1, 4, SpaceKind::Harmonic);
        assert!(rep.zero);
        assert!(rep.components.is_empty());
        assert!(rep.dimension_check);
        assert_eq!(rep.dimension, 0);
    }

    #[test]
    fn irreducibility_certificates_pass_on_small_ranks() {
        for n in 1..=4usize {
            let cert = irreducibility_certificate(n, 4).unwrap();
            assert!(cert.pass, "n={n}: {cert:?}");
            assert_eq!(cert.rows.len(), 5);
        }
    }

    #[test]
    fn duality_certificates_pass_and_pair_labels() {
        for (n, k, dmax) in [(2usize, 2usize, 3u32), (3, 1, 4), (3, 2, 3)] {
            let cert = duality_certificate(n, k, dmax).unwrap();
            assert!(cert.pass, "n={n} k={k}: {cert:?}");
        }
        let cert = duality_certificate(2, 2, 3).unwrap();
        assert!(cert.pairs.len() >= 5);
        assert!(cert.pairs.iter().all(|p| p.multiplicity == 1));
    }
}
