//! The lattice `Δ_L(n)` of weak compositions of `n` into `L` parts under
//! dominance order.
//!
//! Dominance is the componentwise order on prefix sums ("associated
//! sequences"), so join and meet are the componentwise max and min of the
//! prefix sums. Every cover moves one unit from part `j + 1` to part `j`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};

/// A sequence of `L` nonnegative parts. The total `n` is implied.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakComposition {
    parts: Vec<usize>,
}

impl WeakComposition {
    pub fn new(parts: Vec<usize>) -> Self {
        WeakComposition { parts }
    }

    /// Inverse of [`prefix_sums`](Self::prefix_sums). Fails if the input
    /// decreases anywhere.
    pub fn from_prefix_sums(prefix: &[usize]) -> Result<Self> {
        let mut parts = Vec::with_capacity(prefix.len());
        let mut prev = 0;
        for &x in prefix {
            if x < prev {
                return Err(Error::OutOfRange(format!("prefix sums must be non-decreasing: {prefix:?}")));
            }
            parts.push(x - prev);
            prev = x;
        }
        Ok(WeakComposition { parts })
    }

    /// `(n, 0, ..., 0)`, the top of `Δ_L(n)`.
    pub fn top(len: usize, n: usize) -> Self {
        assert!(len >= 1, "a weak composition needs at least one part");
        let mut parts = vec![0; len];
        parts[0] = n;
        WeakComposition { parts }
    }

    /// `(0, ..., 0, n)`, the bottom of `Δ_L(n)`.
    pub fn bottom(len: usize, n: usize) -> Self {
        assert!(len >= 1, "a weak composition needs at least one part");
        let mut parts = vec![0; len];
        parts[len - 1] = n;
        WeakComposition { parts }
    }

    #[inline]
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The associated sequence `â_j = a_0 + ... + a_j`.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// `â_j` with the convention `â_{-1} = 0`.
    pub fn prefix(&self, j: isize) -> usize {
        if j < 0 {
            0
        } else {
            self.parts[..=(j as usize)].iter().sum()
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() || self.total() != other.total() {
            return Err(Error::ShapeMismatch(format!(
                "{self} and {other} do not lie in the same lattice"
            )));
        }
        Ok(())
    }

    /// `self ⪯ other` in dominance order.
    pub fn dominated_by(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self
            .prefix_sums()
            .iter()
            .zip(other.prefix_sums())
            .all(|(&x, y)| x <= y))
    }

    fn combine(&self, other: &Self, pick: fn(usize, usize) -> usize) -> Result<Self> {
        self.check_same_shape(other)?;
        let prefix: Vec<usize> = self
            .prefix_sums()
            .into_iter()
            .zip(other.prefix_sums())
            .map(|(x, y)| pick(x, y))
            .collect();
        WeakComposition::from_prefix_sums(&prefix)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.combine(other, usize::max)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.combine(other, usize::min)
    }

    /// The elements covering `self`: `self + e_j - e_{j+1}` for each `j`
    /// with `a_{j+1} != 0`, in increasing `j`.
    pub fn covers(&self) -> Vec<Self> {
        (0..self.len().saturating_sub(1))
            .filter(|&j| self.parts[j + 1] != 0)
            .map(|j| {
                let mut parts = self.parts.clone();
                parts[j] += 1;
                parts[j + 1] -= 1;
                WeakComposition { parts }
            })
            .collect()
    }

    /// The elements covered by `self`.
    pub fn lower_covers(&self) -> Vec<Self> {
        (0..self.len().saturating_sub(1))
            .filter(|&j| self.parts[j] != 0)
            .map(|j| {
                let mut parts = self.parts.clone();
                parts[j] -= 1;
                parts[j + 1] += 1;
                WeakComposition { parts }
            })
            .collect()
    }

    /// Indices `j >= 1` with `a_j != 0`; these index the atoms of the
    /// Boolean sublattice above `self`.
    pub fn upper_support(&self) -> Vec<usize> {
        (1..self.len()).filter(|&j| self.parts[j] != 0).collect()
    }

    /// The Boolean sublattice `{a + Σ_{j∈S} (e_{j-1} - e_j)}` over all subsets
    /// `S` of [`upper_support`](Self::upper_support). Element `k` of the
    /// result corresponds to the subset whose bitmask is `k`.
    pub fn boolean_sublattice(&self) -> Vec<Self> {
        let support = self.upper_support();
        assert!(support.len() < usize::BITS as usize);
        (0..1usize << support.len())
            .map(|mask| {
                let mut parts = self.parts.clone();
                for (bit, &j) in support.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        parts[j - 1] += 1;
                        parts[j] -= 1;
                    }
                }
                WeakComposition { parts }
            })
            .collect()
    }

    /// If `other ∈ B(self)`, the subset size `|S|`.
    pub fn boolean_rank_of(&self, other: &Self) -> Result<Option<usize>> {
        self.check_same_shape(other)?;
        let lo = self.prefix_sums();
        let hi = other.prefix_sums();
        let mut rank = 0;
        for j in 0..self.len() {
            match hi[j].checked_sub(lo[j]) {
                Some(0) => {}
                // Raising â_{j} by one consumes a unit from part j + 1.
                Some(1) if j + 1 < self.len() && self.parts[j + 1] != 0 => rank += 1,
                _ => return Ok(None),
            }
        }
        Ok(Some(rank))
    }

    /// Height above the bottom: `Σ_{j < L-1} â_j`.
    pub fn height(&self) -> usize {
        let prefix = self.prefix_sums();
        prefix[..prefix.len().saturating_sub(1)].iter().sum()
    }

    pub fn is_join_irreducible(&self) -> bool {
        self.lower_covers().len() == 1
    }

    pub fn is_meet_irreducible(&self) -> bool {
        self.covers().len() == 1
    }

    /// `(a_{L-1}, ..., a_0)`, an order-reversing involution.
    pub fn reversed(&self) -> Self {
        WeakComposition {
            parts: self.parts.iter().rev().copied().collect(),
        }
    }

    /// Lexicographic order on prefix sums, a linear extension of dominance.
    pub fn linear_cmp(&self, other: &Self) -> Result<Ordering> {
        self.check_same_shape(other)?;
        Ok(self.prefix_sums().cmp(&other.prefix_sums()))
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for WeakComposition {
    type Err = Error;

    /// Accepts `1,2,0` or `(1,2,0)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part `{t}` in `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeakComposition::new)
    }
}

/// Closed-form Möbius function `μ(a, b)` of `Δ_L(n)`: `(-1)^{|S|}` when
/// `b` lies in the Boolean sublattice above `a` via subset `S`, zero
/// otherwise. `|S|` equals `Σ_j (b̂_j - â_j)`.
pub fn mobius(a: &WeakComposition, b: &WeakComposition) -> Result<i64> {
    Ok(match a.boolean_rank_of(b)? {
        Some(rank) if rank % 2 == 0 => 1,
        Some(_) => -1,
        None => 0,
    })
}

/// `|Δ_L(n)| = C(n + L - 1, L - 1)`, or `None` on overflow.
pub fn lattice_size(len: usize, n: usize) -> Option<u128> {
    if len == 0 {
        return Some(0);
    }
    let k = (len - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul(n as u128 + i)? / i;
    }
    Some(acc)
}

/// All of `Δ_L(n)` in [`WeakComposition::linear_cmp`] order.
pub fn enumerate(len: usize, n: usize) -> Vec<WeakComposition> {
    assert!(len >= 1, "a weak composition needs at least one part");
    // Lex order on prefix sums: walk prefix sequences 0 <= p_0 <= ... <= p_{L-2} <= n.
    let mut out = Vec::new();
    let mut prefix = vec![0usize; len];
    prefix[len - 1] = n;
    fn rec(pos: usize, lo: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<WeakComposition>) {
        if pos + 1 == prefix.len() {
            out.push(WeakComposition::from_prefix_sums(prefix).expect("monotone by construction"));
            return;
        }
        for v in lo..=n {
            prefix[pos] = v;
            rec(pos + 1, v, n, prefix, out);
        }
    }
    rec(0, 0, n, &mut prefix, &mut out);
    out
}

/// Same as [`enumerate`] but refuses lattices larger than `cap`.
pub fn enumerate_capped(len: usize, n: usize, cap: u128) -> Result<Vec<WeakComposition>> {
    let size = lattice_size(len, n).unwrap_or(u128::MAX);
    check_cap("weak composition lattice", size, cap)?;
    Ok(enumerate(len, n))
}

/// Number of covering steps in every maximal chain of `Δ_L(n)`.
pub fn maximal_chain_length(len: usize, n: usize) -> usize {
    len.saturating_sub(1) * n
}

/// Depth-first iterator over the maximal chains bottom → top, each given
/// as the list of its elements.
pub struct MaximalChains {
    path: Vec<WeakComposition>,
    pending: Vec<Vec<WeakComposition>>,
    trivial: bool,
}

impl Iterator for MaximalChains {
    type Item = Vec<WeakComposition>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.trivial {
            self.trivial = false;
            self.pending.clear();
            return Some(std::mem::take(&mut self.path));
        }
        loop {
            match self.pending.last_mut()?.pop() {
                Some(up) => {
                    let mut ups = up.covers();
                    self.path.push(up);
                    if ups.is_empty() {
                        let chain = self.path.clone();
                        self.path.pop();
                        return Some(chain);
                    }
                    ups.reverse();
                    self.pending.push(ups);
                }
                None => {
                    self.pending.pop();
                    self.path.pop();
                }
            }
        }
    }
}

/// Maximal chains of `Δ_L(n)`, guarded on the lattice size.
pub fn maximal_chains(len: usize, n: usize, cap: u128) -> Result<MaximalChains> {
    let size = lattice_size(len, n).unwrap_or(u128::MAX);
    check_cap("weak composition lattice", size, cap)?;
    let bottom = WeakComposition::bottom(len, n);
    let mut ups = bottom.covers();
    ups.reverse();
    Ok(MaximalChains {
        trivial: ups.is_empty(),
        path: vec![bottom],
        pending: vec![ups],
    })
}

/// Graphviz rendering of the Hasse diagram. Nodes are labelled by their
/// parts and grouped into ranks by height; edges point upward along covers.
pub fn hasse_dot(len: usize, n: usize, cap: u128) -> Result<String> {
    let elements = enumerate_capped(len, n, cap)?;
    let index: std::collections::HashMap<&WeakComposition, usize> =
        elements.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut out = String::new();
    out.push_str(&format!("digraph \"Delta_{len}({n})\" {{\n"));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=plaintext];\n");
    for (i, a) in elements.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{a}\"];\n"));
    }
    for (i, a) in elements.iter().enumerate() {
        for up in a.covers() {
            out.push_str(&format!("  n{i} -> n{};\n", index[&up]));
        }
    }
    let mut by_height: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, a) in elements.iter().enumerate() {
        by_height.entry(a.height()).or_default().push(i);
    }
    for ids in by_height.values() {
        let names: Vec<String> = ids.iter().map(|i| format!("n{i};")).collect();
        out.push_str(&format!("  {{ rank=same; {} }}\n", names.join(" ")));
    }
    out.push_str("}\n");
    Ok(out)
}
