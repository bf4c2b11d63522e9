//! First occurrence indices and the checks built on them.
//!
//! Presence of an orthogonal label in a harmonic tower is decided by the
//! isotypic engine, scanning degrees of the label's parity up to the label
//! size. Once a label has been found, presence at every wider shape is
//! certified by transporting the witness: the same polynomial, read in the
//! wider variable grid, is re-verified from scratch as a joint highest
//! weight vector there. Shared decompositions are cached per (columns,
//! degree) because occurrence scans revisit them heavily.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::{binomial, graded_basis, MonoSpan};
use crate::diffop::Op;
use crate::error::{CoreError, Result};
use crate::frame::OrthFrame;
use crate::harmonic::joint_kernel_on_span;
use crate::isotypic::{
    isotypic_decomposition, verify_hwv_x, IsotypicComponent, IsotypicReport, SpaceKind,
};
use crate::monomial::Monomial;
use crate::operators::SignedPermAction;
use crate::partitions::{
    det_twist, enumerate_orth_params, gl_dimension, partitions_of, predicted_first_occurrence,
    GlIrrepParam, OrthIrrepParam, Partition,
};
use crate::poly::{CxPoly, Polynomial};
use crate::rational::{half_int, rat_int, rat_string, GaussRat};
use crate::shape::{Shape, VarIndex};

/// Memoized harmonic decompositions for one row count, keyed by
/// (columns, degree).
pub struct ReportCache {
    n: usize,
    reports: BTreeMap<(usize, u32), IsotypicReport>,
}

impl ReportCache {
    pub fn new(n: usize) -> ReportCache {
        ReportCache {
            n,
            reports: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn report(&mut self, k: usize, d: u32) -> Result<&IsotypicReport> {
        if !self.reports.contains_key(&(k, d)) {
            let rep = isotypic_decomposition(self.n, k, d, SpaceKind::Harmonic)?;
            self.reports.insert((k, d), rep);
        }
        Ok(&self.reports[&(k, d)])
    }
}

fn label_component<'a>(
    report: &'a IsotypicReport,
    label: &OrthIrrepParam,
) -> Option<&'a IsotypicComponent> {
    report.components.iter().find(|c| c.orth_label == *label)
}

/// Degrees with the parity of the label size, up to the bound.
fn parity_degrees(size: u32, bound: u32) -> impl Iterator<Item = u32> {
    ((size % 2)..=bound).step_by(2)
}

/// First degree within the bound where the label shows up at k columns,
/// together with the component hosting it.
fn scan_degrees(
    cache: &mut ReportCache,
    label: &OrthIrrepParam,
    k: usize,
    bound: u32,
) -> Result<Option<(u32, IsotypicComponent)>> {
    for d in parity_degrees(label.lambda.size(), bound) {
        let report = cache.report(k, d)?;
        if let Some(c) = label_component(report, label) {
            return Ok(Some((d, c.clone())));
        }
    }
    Ok(None)
}

/// Reads a polynomial on (n, from) variables as one on (n, to) variables,
/// to >= from, keeping every exponent in place.
fn widen(p: &CxPoly, from: Shape, to: Shape) -> CxPoly {
    let mut out = Polynomial::zero(to);
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; to.n * to.k];
        for row in 0..from.n {
            for col in 0..from.k {
                exps[row * to.k + col] = m.exps()[row * from.k + col];
            }
        }
        out.add_term(Monomial::from_exps(exps), c.clone());
    }
    out
}

fn weight_partition(mu: &[i64]) -> Partition {
    let parts = mu
        .iter()
        .take_while(|&&x| x > 0)
        .map(|&x| x as u32)
        .collect();
    Partition::new(parts).expect("dominant weight prefix is weakly decreasing")
}

/// Carries a found witness to a wider shape and re-certifies everything
/// the label claim rests on: joint highest weight data via the composed
/// x-coordinate operators, and the reflection sign where the rotation
/// weight alone cannot separate a label from its twist.
fn certify_transport(
    component: &IsotypicComponent,
    n: usize,
    degree: u32,
    from_k: usize,
    to_k: usize,
) -> Result<(String, Vec<String>)> {
    let from = Shape::new(n, from_k)?;
    let to = Shape::new(n, to_k)?;
    let hwv = CxPoly::parse(&component.hwv_basis[0], from)?;
    let wide = widen(&hwv, from, to);
    let mut col = component.col_degrees.clone();
    col.resize(to_k, 0);
    let frame = OrthFrame::new(n, to_k)?;
    verify_hwv_x(
        &frame,
        to,
        SpaceKind::Harmonic,
        &wide,
        &component.so_weight,
        &col,
    )?;
    let m = n / 2;
    if n % 2 == 0 && m >= 1 && component.so_weight[m - 1] == 0 {
        let base = weight_partition(&component.so_weight);
        let expected: i64 = if component.orth_label.lambda == base {
            1
        } else {
            -1
        };
        if let Some(stored) = component.swap_sign {
            if i64::from(stored) != expected {
                return Err(CoreError::Identification(format!(
                    "stored reflection sign {stored} disagrees with label {}",
                    component.orth_label
                )));
            }
        }
        let refl = SignedPermAction::reflection(to, n);
        if refl.act(&wide) != wide.scale(&GaussRat::real(rat_int(expected))) {
            return Err(CoreError::Identification(format!(
                "transported witness for {} lost its reflection sign at k={to_k}",
                component.orth_label
            )));
        }
    }
    let mut glk_weight = component.glk_weight.clone();
    let shift = rat_string(&half_int(n as i64));
    glk_weight.resize(to_k, shift);
    let _ = degree;
    Ok((wide.to_string(), glk_weight))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccurrenceWitness {
    pub k: usize,
    pub present: bool,
    pub degree: Option<u32>,
    pub glk_weight: Option<Vec<String>>,
    pub hwv: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccurrenceResult {
    pub label: OrthIrrepParam,
    /// Least number of columns where the label occurs (brute force).
    pub n_pi: usize,
    /// Closed-form guess: the number of rows of the label.
    pub predicted: usize,
    pub matches_prediction: bool,
    pub degree_searched: u32,
    pub witnesses: Vec<OccurrenceWitness>,
    /// Never present-then-absent as k grows.
    pub monotone: bool,
}

pub fn first_occurrence(label: &OrthIrrepParam) -> Result<OccurrenceResult> {
    first_occurrence_with(label, None)
}

/// The occurrence table for k = 0..=n. The degree bound defaults to the
/// label size; every tested instance occurs at exactly that degree, and
/// the override exists to push the search deeper when auditing the bound.
pub fn first_occurrence_with(
    label: &OrthIrrepParam,
    degree_override: Option<u32>,
) -> Result<OccurrenceResult> {
    let mut cache = ReportCache::new(label.n);
    occurrence_with_cache(&mut cache, label, degree_override)
}

fn occurrence_with_cache(
    cache: &mut ReportCache,
    label: &OrthIrrepParam,
    degree_override: Option<u32>,
) -> Result<OccurrenceResult> {
    let n = cache.n();
    if label.n != n {
        return Err(CoreError::InvalidArgument(format!(
            "label {label} does not live on {n} rows"
        )));
    }
    let size = label.lambda.size();
    let bound = degree_override.unwrap_or(size);
    if bound < size {
        return Err(CoreError::InvalidArgument(format!(
            "degree bound {bound} is below the label size {size}"
        )));
    }
    let mut witnesses = Vec::new();
    let mut found: Option<(usize, u32, IsotypicComponent)> = None;
    for k in 0..=n {
        match &found {
            None => match scan_degrees(cache, label, k, bound)? {
                Some((d, component)) => {
                    witnesses.push(OccurrenceWitness {
                        k,
                        present: true,
                        degree: Some(d),
                        glk_weight: Some(component.glk_weight.clone()),
                        hwv: Some(component.hwv_basis[0].clone()),
                    });
                    found = Some((k, d, component));
                }
                None => witnesses.push(OccurrenceWitness {
                    k,
                    present: false,
                    degree: None,
                    glk_weight: None,
                    hwv: None,
                }),
            },
            Some((k0, d, component)) => {
                let (hwv, glk_weight) = certify_transport(component, n, *d, *k0, k)?;
                witnesses.push(OccurrenceWitness {
                    k,
                    present: true,
                    degree: Some(*d),
                    glk_weight: Some(glk_weight),
                    hwv: Some(hwv),
                });
            }
        }
    }
    let Some((n_pi, _, _)) = found else {
        return Err(CoreError::Identification(format!(
            "label {label} not found through k = {n} with degree bound {bound}"
        )));
    };
    let predicted = predicted_first_occurrence(label);
    let monotone = witnesses.windows(2).all(|w| w[1].present >= w[0].present);
    Ok(OccurrenceResult {
        label: label.clone(),
        n_pi,
        predicted,
        matches_prediction: n_pi == predicted,
        degree_searched: bound,
        witnesses,
        monotone,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConservationRow {
    pub label: OrthIrrepParam,
    pub n_pi: Option<usize>,
    pub predicted: usize,
    pub twist: OrthIrrepParam,
    pub n_twist: Option<usize>,
    pub sum: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConservationCertificate {
    pub n: usize,
    pub size_max: u32,
    pub rows: Vec<ConservationRow>,
    /// Brute-force index equals the row count of the label, on every row.
    pub predictions_ok: bool,
    /// The empty label has index 0.
    pub trivial_anchor: bool,
    /// The length-n column has index n.
    pub det_anchor: bool,
    pub pass: bool,
}

fn index_or_recorded_failure(
    cache: &mut ReportCache,
    label: &OrthIrrepParam,
    degree_override: Option<u32>,
) -> Result<Option<usize>> {
    let bound = degree_override.map(|b| b.max(label.lambda.size()));
    match occurrence_with_cache(cache, label, bound) {
        Ok(r) => Ok(Some(r.n_pi)),
        Err(CoreError::Identification(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn conservation_check(n: usize, size_max: u32) -> Result<ConservationCertificate> {
    conservation_check_with(n, size_max, None)
}

/// The sum of the occurrence indices of a label and its twist is the row
/// count, for every admissible label up to the size cap. A degree override
/// raises the per-label search bound (it can never lower it below the
/// label size).
pub fn conservation_check_with(
    n: usize,
    size_max: u32,
    degree_override: Option<u32>,
) -> Result<ConservationCertificate> {
    let mut cache = ReportCache::new(n);
    let mut rows = Vec::new();
    let mut predictions_ok = true;
    for label in enumerate_orth_params(n, size_max) {
        let twist = det_twist(&label);
        let n_pi = index_or_recorded_failure(&mut cache, &label, degree_override)?;
        let n_twist = index_or_recorded_failure(&mut cache, &twist, degree_override)?;
        let sum = match (n_pi, n_twist) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let predicted = predicted_first_occurrence(&label);
        predictions_ok &= n_pi == Some(predicted);
        rows.push(ConservationRow {
            label,
            n_pi,
            predicted,
            twist,
            n_twist,
            sum,
            pass: sum == Some(n),
        });
    }
    let trivial = OrthIrrepParam::new(n, Partition::empty())?;
    let det = OrthIrrepParam::new(n, Partition::new(vec![1; n])?)?;
    let trivial_anchor =
        index_or_recorded_failure(&mut cache, &trivial, degree_override)? == Some(0);
    let det_anchor = index_or_recorded_failure(&mut cache, &det, degree_override)? == Some(n);
    let pass =
        rows.iter().all(|r| r.pass) && predictions_ok && trivial_anchor && det_anchor;
    Ok(ConservationCertificate {
        n,
        size_max,
        rows,
        predictions_ok,
        trivial_anchor,
        det_anchor,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PersistenceRow {
    pub k: usize,
    pub present: bool,
    pub degree: Option<u32>,
    pub witness: Option<String>,
    /// Some(true) once a witness has been re-certified at this width;
    /// None below the first occurrence.
    pub witness_verified: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PersistenceCertificate {
    pub label: OrthIrrepParam,
    pub k_max: usize,
    pub degree_bound: u32,
    pub first_k: Option<usize>,
    pub rows: Vec<PersistenceRow>,
    pub pass: bool,
}

pub fn persistence_check(label: &OrthIrrepParam, k_max: usize) -> Result<PersistenceCertificate> {
    persistence_check_with(label, k_max, None)
}

/// Presence at k implies presence at every width up to k_max, shown by
/// carrying the first witness along.
pub fn persistence_check_with(
    label: &OrthIrrepParam,
    k_max: usize,
    degree_override: Option<u32>,
) -> Result<PersistenceCertificate> {
    let n = label.n;
    let size = label.lambda.size();
    let bound = degree_override.unwrap_or(size);
    if bound < size {
        return Err(CoreError::InvalidArgument(format!(
            "degree bound {bound} is below the label size {size}"
        )));
    }
    let mut cache = ReportCache::new(n);
    let mut rows = Vec::new();
    let mut found: Option<(usize, u32, IsotypicComponent)> = None;
    let mut pass = true;
    for k in 0..=k_max {
        match &found {
            None => match scan_degrees(&mut cache, label, k, bound)? {
                Some((d, component)) => {
                    rows.push(PersistenceRow {
                        k,
                        present: true,
                        degree: Some(d),
                        witness: Some(component.hwv_basis[0].clone()),
                        witness_verified: Some(true),
                    });
                    found = Some((k, d, component));
                }
                None => rows.push(PersistenceRow {
                    k,
                    present: false,
                    degree: None,
                    witness: None,
                    witness_verified: None,
                }),
            },
            Some((k0, d, component)) => {
                match certify_transport(component, n, *d, *k0, k) {
                    Ok((hwv, _)) => rows.push(PersistenceRow {
                        k,
                        present: true,
                        degree: Some(*d),
                        witness: Some(hwv),
                        witness_verified: Some(true),
                    }),
                    Err(CoreError::Identification(_)) => {
                        pass = false;
                        rows.push(PersistenceRow {
                            k,
                            present: false,
                            degree: None,
                            witness: None,
                            witness_verified: Some(false),
                        });
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(PersistenceCertificate {
        label: label.clone(),
        k_max,
        degree_bound: bound,
        first_k: found.map(|(k, _, _)| k),
        rows,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StableRangeRow {
    pub label: OrthIrrepParam,
    pub present: bool,
    pub degree: Option<u32>,
    pub multiplicity: Option<usize>,
    /// Label parts padded to n columns, each shifted by n/2.
    pub weight_expected: Vec<String>,
    pub weight_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StableRangeCertificate {
    pub n: usize,
    pub size_max: u32,
    pub rows: Vec<StableRangeRow>,
    pub pass: bool,
}

/// At k = n columns every admissible label occurs, once, with column
/// weight equal to the label itself under the n/2 shift.
pub fn stable_range_check(n: usize, size_max: u32) -> Result<StableRangeCertificate> {
    let mut cache = ReportCache::new(n);
    let mut rows = Vec::new();
    for label in enumerate_orth_params(n, size_max) {
        let hit = scan_degrees(&mut cache, &label, n, label.lambda.size())?;
        let weight_expected: Vec<String> = (0..n)
            .map(|j| rat_string(&(rat_int(label.lambda.part(j) as i64) + half_int(n as i64))))
            .collect();
        let (present, degree, multiplicity, weight_ok) = match &hit {
            Some((d, c)) => (
                true,
                Some(*d),
                Some(c.multiplicity),
                c.glk_weight == weight_expected,
            ),
            None => (false, None, None, false),
        };
        rows.push(StableRangeRow {
            label,
            present,
            degree,
            multiplicity,
            weight_expected,
            weight_ok,
        });
    }
    let pass = rows
        .iter()
        .all(|r| r.present && r.multiplicity == Some(1) && r.weight_ok);
    Ok(StableRangeCertificate {
        n,
        size_max,
        rows,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlDualityComponent {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub row_dimension: u64,
    pub col_dimension: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlDualityCertificate {
    pub rows: usize,
    pub cols: usize,
    pub degree: u32,
    pub components: Vec<GlDualityComponent>,
    pub total: u128,
    pub expected_total: u128,
    pub multiplicity_free: bool,
    /// Row and column labels agree on every component.
    pub labels_matched: bool,
    /// The component set is exactly the partitions of d fitting both sides.
    pub labels_expected: bool,
    pub pass: bool,
}

/// Row action operator summed over columns (a acts on b), no shift.
pub(crate) fn row_raising(shape: Shape, a: usize, b: usize) -> Op {
    let mut op = Op::zero(shape);
    for j in 1..=shape.k {
        op.add_term(
            Monomial::var(shape, VarIndex::new(a, j)),
            Monomial::var(shape, VarIndex::new(b, j)),
            rat_int(1),
        );
    }
    op
}

/// Column action operator summed over rows, no shift.
pub(crate) fn col_raising(shape: Shape, i: usize, j: usize) -> Op {
    let mut op = Op::zero(shape);
    for l in 1..=shape.n {
        op.add_term(
            Monomial::var(shape, VarIndex::new(l, i)),
            Monomial::var(shape, VarIndex::new(l, j)),
            rat_int(1),
        );
    }
    op
}

fn dominant(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn strip_zeros(v: &[u32]) -> Partition {
    Partition::new(v.iter().copied().take_while(|&x| x > 0).collect())
        .expect("dominant degree prefix is weakly decreasing")
}

fn weight_dimension(k: usize, degs: &[u32]) -> Result<u64> {
    let ints: Vec<i64> = degs.iter().map(|&x| x as i64).collect();
    let dim = gl_dimension(&GlIrrepParam::from_integers(k, &ints)?)?;
    dim.try_into()
        .map_err(|_| CoreError::Identification("weight dimension overflows u64".into()))
}

/// Decomposes the full degree-d space on an m-by-n grid under the two
/// unshifted Euler families (rows acting from the left, columns from the
/// right) and certifies the product-dimension count against the
/// stars-and-bars total.
pub fn gl_duality_check(m: usize, n: usize, d: u32) -> Result<GlDualityCertificate> {
    let shape = Shape::new(m, n)?;
    let mut op_store: Vec<Op> = Vec::new();
    for a in 1..m {
        op_store.push(row_raising(shape, a, a + 1));
    }
    for j in 1..n {
        op_store.push(col_raising(shape, j, j + 1));
    }
    let ops: Vec<&Op> = op_store.iter().collect();

    let mut groups: BTreeMap<(Vec<u32>, Vec<u32>), Vec<Monomial>> = BTreeMap::new();
    for mono in graded_basis(shape, d).span.monomials() {
        let key = (mono.row_degrees(shape), mono.column_degrees(shape));
        groups.entry(key).or_default().push(mono.clone());
    }

    let mut components = Vec::new();
    let mut total: u128 = 0;
    let mut labels_matched = true;
    for ((r, c), monos) in &groups {
        if !dominant(r) || !dominant(c) {
            continue;
        }
        let span = MonoSpan::new(shape, monos.clone());
        let mult = joint_kernel_on_span(&ops, &[], &span).len();
        if mult == 0 {
            continue;
        }
        let row_label = strip_zeros(r);
        let col_label = strip_zeros(c);
        labels_matched &= row_label == col_label;
        let row_dimension = weight_dimension(m, r)?;
        let col_dimension = weight_dimension(n, c)?;
        total += mult as u128 * row_dimension as u128 * col_dimension as u128;
        components.push(GlDualityComponent {
            lambda: row_label,
            multiplicity: mult,
            row_dimension,
            col_dimension,
        });
    }
    let expected_total = binomial((m * n) as u128 + d as u128 - 1, d as u128);
    let multiplicity_free = components.iter().all(|c| c.multiplicity == 1);
    let mut seen: Vec<Partition> = components.iter().map(|c| c.lambda.clone()).collect();
    seen.sort();
    let mut expected_set: Vec<Partition> = partitions_of(d)
        .into_iter()
        .filter(|p| p.len() <= m.min(n))
        .collect();
    expected_set.sort();
    let labels_expected = seen == expected_set;
    let pass = multiplicity_free && labels_matched && labels_expected && total == expected_total;
    Ok(GlDualityCertificate {
        rows: m,
        cols: n,
        degree: d,
        components,
        total,
        expected_total,
        multiplicity_free,
        labels_matched,
        labels_expected,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(n: usize, parts: &[u32]) -> OrthIrrepParam {
        OrthIrrepParam::new(n, Partition::new(parts.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn trivial_label_occurs_at_no_columns() {
        for n in 1..=4 {
            let r = first_occurrence(&label(n, &[])).unwrap();
            assert_eq!(r.n_pi, 0);
            assert!(r.matches_prediction);
            assert!(r.monotone);
            assert_eq!(r.witnesses.len(), n + 1);
            assert!(r.witnesses.iter().all(|w| w.present));
        }
    }

    #[test]
    fn determinant_label_needs_every_column() {
        for n in 1..=3 {
            let r = first_occurrence(&label(n, &vec![1; n])).unwrap();
            assert_eq!(r.n_pi, n);
            assert!(r.matches_prediction);
            assert!(r.monotone);
            assert!(!r.witnesses[n - 1].present);
        }
    }

    #[test]
    fn vector_label_on_the_plane_occurs_at_one_column() {
        let r = first_occurrence(&label(2, &[1])).unwrap();
        assert_eq!(r.n_pi, 1);
        assert_eq!(r.witnesses[1].degree, Some(1));
        assert!(r.witnesses[2].present);
    }

    #[test]
    fn twist_pair_splits_three_across_one_and_two() {
        let r = first_occurrence(&label(3, &[2])).unwrap();
        assert_eq!(r.n_pi, 1);
        let t = det_twist(&label(3, &[2]));
        assert_eq!(t.lambda.parts(), &[2, 1]);
        let rt = first_occurrence(&t).unwrap();
        assert_eq!(rt.n_pi, 2);
        assert_eq!(r.n_pi + rt.n_pi, 3);
    }

    #[test]
    fn occurrence_rejects_a_bound_below_the_label_size() {
        assert!(first_occurrence_with(&label(2, &[2]), Some(1)).is_err());
        let r = first_occurrence_with(&label(2, &[2]), Some(4)).unwrap();
        assert_eq!(r.degree_searched, 4);
        assert_eq!(r.n_pi, 1);
    }

    #[test]
    fn conservation_passes_through_rank_three() {
        for (n, size_max) in [(1usize, 2u32), (2, 2), (3, 3)] {
            let c = conservation_check(n, size_max).unwrap();
            assert!(c.pass, "conservation failed at n={n}");
            assert!(c.trivial_anchor && c.det_anchor && c.predictions_ok);
            for row in &c.rows {
                assert_eq!(row.sum, Some(n), "row {} sums wrong", row.label);
            }
        }
    }

    #[test]
    fn persistence_carries_witnesses_upward() {
        let c = persistence_check(&label(2, &[1]), 3).unwrap();
        assert!(c.pass);
        assert_eq!(c.first_k, Some(1));
        assert!(!c.rows[0].present);
        for row in &c.rows[1..] {
            assert!(row.present && row.witness_verified == Some(true));
        }
    }

    #[test]
    fn persistence_reports_the_late_determinant() {
        let c = persistence_check(&label(3, &[1, 1, 1]), 3).unwrap();
        assert!(c.pass);
        assert_eq!(c.first_k, Some(3));
        assert!(!c.rows[1].present && !c.rows[2].present);
        assert!(c.rows[3].present);
    }

    #[test]
    fn persistence_of_the_trivial_label_is_everywhere() {
        let c = persistence_check(&label(3, &[]), 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.first_k, Some(0));
        assert!(c.rows.iter().all(|r| r.present));
    }

    #[test]
    fn stable_range_holds_on_small_ranks() {
        for (n, size_max) in [(1usize, 1u32), (2, 3), (3, 3)] {
            let c = stable_range_check(n, size_max).unwrap();
            assert!(c.pass, "stable range failed at n={n}");
            for row in &c.rows {
                assert_eq!(row.degree, Some(row.label.lambda.size()));
            }
        }
    }

    #[test]
    fn occurrence_tables_stay_monotone_across_small_labels() {
        for label in enumerate_orth_params(3, 3) {
            let r = first_occurrence(&label).unwrap();
            assert!(r.monotone, "table for {label} not monotone");
            assert!(r.witnesses[3].present, "{label} missing at k=n");
            assert!(r.matches_prediction, "{label} off prediction");
        }
    }

    #[test]
    fn euler_families_commute() {
        for (m, n) in [(2usize, 3usize), (3, 2)] {
            let shape = Shape::new(m, n).unwrap();
            for a in 1..=m {
                for b in 1..=m {
                    for i in 1..=n {
                        for j in 1..=n {
                            if a == b || i == j {
                                continue;
                            }
                            let r = row_raising(shape, a, b);
                            let c = col_raising(shape, i, j);
                            assert!(r.commutator(&c).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cauchy_counts_match_on_square_grids() {
        let c = gl_duality_check(2, 2, 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.total, 10);
        assert_eq!(c.components.len(), 2);
        let dims: Vec<(u64, u64)> = c
            .components
            .iter()
            .map(|x| (x.row_dimension, x.col_dimension))
            .collect();
        assert!(dims.contains(&(3, 3)) && dims.contains(&(1, 1)));
    }

    #[test]
    fn cauchy_counts_match_on_rectangles() {
        let c = gl_duality_check(1, 3, 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.total, 6);
        assert_eq!(c.components.len(), 1);
        let c = gl_duality_check(2, 3, 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.total, 21);
        let c = gl_duality_check(3, 3, 0).unwrap();
        assert!(c.pass);
        assert_eq!(c.total, 1);
    }
}
