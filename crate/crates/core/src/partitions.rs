//! Representation labels: partitions, the orthogonal-group labeling
//! constraint, the determinant twist, and dimension formulas for gl_k.

use crate::error::{CoreError, Result};
use crate::rational::{rat_int, Rat};
use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Weakly decreasing positive parts; the empty partition is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(CoreError::InvalidArgument(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(CoreError::InvalidArgument(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// Drops trailing zeros; still rejects interior violations.
    pub fn from_weight(weight: &[u32]) -> Result<Self> {
        let mut parts = weight.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols {
            out.push(self.0.iter().filter(|&&p| p >= j as u32).count() as u32);
        }
        Partition(out)
    }

    /// Pad with zeros to exactly m entries; error if more than m parts.
    pub fn padded(&self, m: usize) -> Result<Vec<u32>> {
        if self.len() > m {
            return Err(CoreError::InvalidArgument(format!(
                "{self} has more than {m} parts"
            )));
        }
        let mut out = self.0.clone();
        out.resize(m, 0);
        Ok(out)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of s, parts lexicographically descending.
pub fn partitions_of(s: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, s.max(1), &mut Vec::new(), &mut out);
    out
}

/// An irreducible O(n) label: a partition whose first two columns fit in n
/// boxes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct OrthIrrepParam {
    pub n: usize,
    pub lambda: Partition,
}

impl OrthIrrepParam {
    pub fn new(n: usize, lambda: Partition) -> Result<Self> {
        let conj = lambda.conjugate();
        let cols = conj.part(0) + conj.part(1);
        if cols as usize > n {
            return Err(CoreError::InadmissibleLabel(format!(
                "first two columns of {lambda} have {cols} boxes, over n={n}"
            )));
        }
        Ok(OrthIrrepParam { n, lambda })
    }

    /// Highest weight of the so(n) constituent containing the label's
    /// dominant weight line: the partition itself when it fits in m = floor(n/2)
    /// rows, otherwise its determinant twist. Length exactly m.
    pub fn so_highest_weight(&self) -> Vec<u32> {
        let m = self.n / 2;
        let fitting = if self.lambda.len() <= m {
            self.lambda.clone()
        } else {
            det_twist(self).lambda
        };
        fitting.padded(m).expect("twist fits below the fold")
    }
}

impl fmt::Display for OrthIrrepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})~{}", self.n, self.lambda)
    }
}

/// Replace the first column length l by n - l.
pub fn det_twist(p: &OrthIrrepParam) -> OrthIrrepParam {
    let mut cols = p.lambda.conjugate().0;
    let first = cols.first().copied().unwrap_or(0);
    let replaced = p.n as u32 - first;
    if cols.is_empty() {
        cols.push(replaced);
    } else {
        cols[0] = replaced;
    }
    while cols.last() == Some(&0) {
        cols.pop();
    }
    let twisted = Partition(cols).conjugate();
    OrthIrrepParam::new(p.n, twisted).expect("twist preserves admissibility")
}

/// All admissible labels with |lambda| <= size_max, ordered by size then by
/// lexicographically descending parts.
pub fn enumerate_orth_params(n: usize, size_max: u32) -> Vec<OrthIrrepParam> {
    let mut out = Vec::new();
    for s in 0..=size_max {
        for lambda in partitions_of(s) {
            if let Ok(p) = OrthIrrepParam::new(n, lambda) {
                out.push(p);
            }
        }
    }
    out
}

/// The closed-form first occurrence guess: the number of rows of lambda.
/// Validated against the brute-force search, never trusted bare.
pub fn predicted_first_occurrence(p: &OrthIrrepParam) -> usize {
    p.lambda.len()
}

/// A dominant rational gl_k weight. Serializes with the weight entries in
/// canonical rational text form ("7/2").
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GlIrrepParam {
    pub k: usize,
    #[serde(
        serialize_with = "serialize_weight",
        deserialize_with = "deserialize_weight"
    )]
    pub weight: Vec<Rat>,
}

fn serialize_weight<S: serde::Serializer>(w: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for r in w {
        seq.serialize_element(&crate::rational::rat_string(r))?;
    }
    seq.end()
}

fn deserialize_weight<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<Rat>, D::Error> {
    let strings: Vec<String> = Vec::deserialize(d)?;
    strings
        .iter()
        .map(|s| crate::rational::parse_rat(s).map_err(serde::de::Error::custom))
        .collect()
}

impl GlIrrepParam {
    pub fn new(k: usize, weight: Vec<Rat>) -> Result<Self> {
        if weight.len() != k {
            return Err(CoreError::InvalidArgument(format!(
                "weight length {} for gl_{k}",
                weight.len()
            )));
        }
        for w in weight.windows(2) {
            if w[0] < w[1] {
                return Err(CoreError::InvalidArgument(
                    "weight not dominant".into(),
                ));
            }
        }
        Ok(GlIrrepParam { k, weight })
    }

    pub fn from_integers(k: usize, weight: &[i64]) -> Result<Self> {
        Self::new(k, weight.iter().map(|&w| rat_int(w)).collect())
    }
}

/// Weyl dimension formula, product of (w_i - w_j + j - i)/(j - i) over i < j.
/// Depends only on weight differences, so a uniform non-integer shift is
/// allowed; non-integer differences are an error.
pub fn gl_dimension(p: &GlIrrepParam) -> Result<BigInt> {
    let k = p.k;
    let mut w = Vec::with_capacity(k);
    let base = p.weight.last().cloned().unwrap_or_else(|| rat_int(0));
    for wi in &p.weight {
        let diff = wi - &base;
        if !diff.is_integer() {
            return Err(CoreError::NonIntegerWeight(format!(
                "weight difference {diff} is not an integer"
            )));
        }
        w.push(diff.to_integer());
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        for j in (i + 1)..k {
            let gap = BigInt::from(j as i64 - i as i64);
            num *= &w[i] - &w[j] + &gap;
            den *= gap;
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Number of semistandard fillings of shape lambda with entries in 1..=k;
/// brute force, for cross-checking gl_dimension on partition weights.
pub fn ssyt_count(lambda: &Partition, k: usize) -> u64 {
    if lambda.is_empty() {
        return 1;
    }
    if lambda.len() > k {
        return 0;
    }
    let rows: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut filling: Vec<Vec<u32>> = rows.iter().map(|&r| vec![0; r]).collect();
    fn rec(rows: &[usize], k: u32, filling: &mut Vec<Vec<u32>>, r: usize, c: usize) -> u64 {
        if r == rows.len() {
            return 1;
        }
        let (nr, nc) = if c + 1 < rows[r] { (r, c + 1) } else { (r + 1, 0) };
        let min = {
            let left = if c > 0 { filling[r][c - 1] } else { 1 };
            let above = if r > 0 && c < rows[r - 1] {
                filling[r - 1][c] + 1
            } else {
                1
            };
            left.max(above)
        };
        let mut total = 0;
        for v in min..=k {
            filling[r][c] = v;
            total += rec(rows, k, filling, nr, nc);
        }
        total
    }
    rec(&rows, k as u32, &mut filling, 0, 0)
}
