//! Linear codes over `Z/p^sZ`: ranks, subtypes, support subtypes, duals and
//! weight extremes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmat::ModMatrix;
use crate::wcomp::WeakComposition;
use crate::zmod::{ChainRingParams, Metric};

/// A submodule of `(Z/p^sZ)^n` with its structural invariants computed
/// eagerly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Code {
    gen: ModMatrix,
    subtype: Vec<usize>,
    support_subtype: Vec<usize>,
}

/// The partition `(s^{k_0}, (s-1)^{k_1}, ..., 1^{k_{s-1}})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TypePartition(pub Vec<u32>);

/// Extreme weights of a code under one metric. `min` is `None` for the
/// zero code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightExtremes {
    pub min: Option<u64>,
    pub max: u64,
}

impl Code {
    pub fn new(gen: &ModMatrix) -> Self {
        let gen = gen.howell_form();
        let subtype = gen.subtype();
        let params = *gen.params();
        let s = params.s() as usize;
        let mut support_subtype = vec![0; s + 1];
        for c in 0..gen.ncols() {
            let v = gen
                .rows()
                .iter()
                .map(|r| params.valuation(r[c]))
                .min()
                .unwrap_or(params.s());
            support_subtype[v as usize] += 1;
        }
        Code { gen, subtype, support_subtype }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Code::new(&ModMatrix::parse(text)?))
    }

    pub fn zero(params: ChainRingParams, n: usize) -> Self {
        Code::new(&ModMatrix::zero(params, n))
    }

    pub fn full(params: ChainRingParams, n: usize) -> Self {
        Code::new(&ModMatrix::identity(params, n))
    }

    /// The Howell-form generator matrix.
    #[inline]
    pub fn generator(&self) -> &ModMatrix {
        &self.gen
    }

    #[inline]
    pub fn params(&self) -> &ChainRingParams {
        self.gen.params()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.gen.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(k_0, ..., k_{s-1})`.
    pub fn subtype(&self) -> &[usize] {
        &self.subtype
    }

    /// `(n_0, ..., n_s)`: number of coordinates whose projection generates
    /// `<p^i>`; all-zero coordinates count towards `n_s`.
    pub fn support_subtype(&self) -> &[usize] {
        &self.support_subtype
    }

    /// `(k_0, ..., k_{s-1}, n - K)` as an element of `Δ_{s+1}(n)`.
    pub fn extended_subtype(&self) -> WeakComposition {
        let mut parts = self.subtype.clone();
        parts.push(self.len() - self.rank());
        WeakComposition::new(parts)
    }

    pub fn rank(&self) -> usize {
        self.subtype.iter().sum()
    }

    pub fn free_rank(&self) -> usize {
        self.subtype[0]
    }

    pub fn is_free(&self) -> bool {
        self.rank() == self.free_rank()
    }

    /// `s * k` where `k = Σ (s-i)/s k_i` is the R-dimension.
    pub fn r_dimension_scaled(&self) -> usize {
        let s = self.params().s() as usize;
        self.subtype.iter().enumerate().map(|(i, &k)| (s - i) * k).sum()
    }

    /// `|C|`, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u128> {
        self.gen.cardinality()
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        self.gen.contains(v)
    }

    /// The dual under the standard inner product.
    pub fn dual(&self) -> Code {
        Code::new(&self.gen.kernel())
    }

    pub fn intersect(&self, other: &Code) -> Result<Code> {
        Ok(Code::new(&self.gen.intersect(&other.gen)?))
    }

    pub fn sum(&self, other: &Code) -> Result<Code> {
        Ok(Code::new(&self.gen.sum(&other.gen)?))
    }

    /// True when `other ⊆ self`.
    pub fn includes(&self, other: &Code) -> Result<bool> {
        for row in other.gen.rows() {
            if !self.gen.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates (0-based) on which some codeword is nonzero.
    pub fn hamming_support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| self.gen.rows().iter().any(|r| r[c] != 0))
            .collect()
    }

    pub fn type_partition(&self) -> TypePartition {
        let s = self.params().s();
        TypePartition(
            self.subtype
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(s - i as u32, k))
                .collect(),
        )
    }

    /// Minimum nonzero and maximum weight by enumerating the code.
    pub fn weight_extremes(&self, metric: Metric, cap: u128) -> Result<WeightExtremes> {
        let params = *self.params();
        let mut min = None::<u64>;
        let mut max = 0;
        for v in self.gen.elements(cap)? {
            let w = metric.weight(&params, &v);
            max = max.max(w);
            if v.iter().any(|&x| x != 0) {
                min = Some(min.map_or(w, |m| m.min(w)));
            }
        }
        Ok(WeightExtremes { min, max })
    }

    pub fn min_distance(&self, metric: Metric, cap: u128) -> Result<u64> {
        self.weight_extremes(metric, cap)?.min.ok_or(Error::EmptyMinimum)
    }

    pub fn max_weight(&self, metric: Metric, cap: u128) -> Result<u64> {
        Ok(self.weight_extremes(metric, cap)?.max)
    }

    /// A codeword of maximum weight, first in enumeration order.
    pub fn max_weight_witness(&self, metric: Metric, cap: u128) -> Result<Vec<u64>> {
        let params = *self.params();
        let mut best: Option<(u64, Vec<u64>)> = None;
        for v in self.gen.elements(cap)? {
            let w = metric.weight(&params, &v);
            if best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, v));
            }
        }
        Ok(best.map(|(_, v)| v).unwrap_or_else(|| vec![0; self.len()]))
    }

    /// Analysis record with weight extremes for all three metrics.
    pub fn report(&self, cap: u128) -> Result<CodeReport> {
        let params = *self.params();
        let mut distances = Vec::new();
        for metric in Metric::ALL {
            distances.push((metric, self.weight_extremes(metric, cap)?));
        }
        Ok(CodeReport {
            p: params.p(),
            s: params.s(),
            n: self.len(),
            subtype: self.subtype.clone(),
            extended_subtype: self.extended_subtype().parts().to_vec(),
            support_subtype: self.support_subtype.clone(),
            rank: self.rank(),
            free_rank: self.free_rank(),
            k_times_s: self.r_dimension_scaled(),
            hamming_support: self.hamming_support(),
            type_partition: self.type_partition(),
            distances: distances
                .into_iter()
                .map(|(m, e)| (m.name().to_string(), e))
                .collect(),
        })
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gen.fmt(f)
    }
}

/// Serializable summary of a [`Code`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub p: u64,
    pub s: u32,
    pub n: usize,
    pub subtype: Vec<usize>,
    pub extended_subtype: Vec<usize>,
    pub support_subtype: Vec<usize>,
    pub rank: usize,
    pub free_rank: usize,
    pub k_times_s: usize,
    pub hamming_support: Vec<usize>,
    pub type_partition: TypePartition,
    pub distances: std::collections::BTreeMap<String, WeightExtremes>,
}
