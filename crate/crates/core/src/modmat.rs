//! Submodules of `(Z/p^sZ)^n` given by generator rows.
//!
//! The canonical representative is the Howell form: row echelon with
//! pivots equal to powers of `p`, entries above each pivot reduced modulo
//! that pivot, and the Howell property (every span element whose first `c`
//! coordinates vanish is spanned by the rows whose pivot lies at or after
//! column `c`). Two matrices span the same module iff their Howell forms
//! are identical.

use std::fmt;
use std::hash::{Hash, Hasher};

use sha2::{Digest, Sha256};

use crate::error::{check_cap, Error, Result};
use crate::zmod::ChainRingParams;

/// Default bound on the number of elements an enumeration may visit.
pub const DEFAULT_ELEMENT_CAP: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct ModMatrix {
    params: ChainRingParams,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    canonical: bool,
}

impl PartialEq for ModMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.ncols == other.ncols && self.rows == other.rows
    }
}

impl Eq for ModMatrix {}

impl Hash for ModMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.params.hash(state);
        self.ncols.hash(state);
        self.rows.hash(state);
    }
}

/// Generator matrix in block systematic form after a column permutation.
///
/// Row `t` has its pivot `p^{v_t}` in column `t`, valuations are
/// non-decreasing down the rows, every entry of row `t` lies in `<p^{v_t}>`,
/// and entries above a pivot `p^v` are reduced below `p^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicForm {
    /// Column `t` of `matrix` is column `permutation[t]` of the input.
    pub permutation: Vec<usize>,
    pub matrix: ModMatrix,
    pub subtype: Vec<usize>,
}

impl ModMatrix {
    /// Builds a matrix from rows of residues; entries are reduced mod `p^s`.
    pub fn new(params: ChainRingParams, ncols: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = params.modulus();
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != ncols {
                    Err(Error::ShapeMismatch(format!("row {i} has {} entries, expected {ncols}", row.len())))
                } else {
                    Ok(row.into_iter().map(|x| x % m).collect())
                }
            })
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(ModMatrix { params, ncols, rows, canonical: false })
    }

    /// Like [`new`](Self::new) but accepts signed entries.
    pub fn from_signed(params: ChainRingParams, ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| params.reduce(x as i128)).collect())
            .collect();
        Self::new(params, ncols, rows)
    }

    pub fn zero(params: ChainRingParams, ncols: usize) -> Self {
        ModMatrix { params, ncols, rows: Vec::new(), canonical: true }
    }

    pub fn identity(params: ChainRingParams, ncols: usize) -> Self {
        let rows = (0..ncols)
            .map(|i| (0..ncols).map(|j| u64::from(i == j)).collect())
            .collect();
        ModMatrix { params, ncols, rows, canonical: true }
    }

    #[inline]
    pub fn params(&self) -> &ChainRingParams {
        &self.params
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// True when the spanned module is zero.
    pub fn spans_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.params != other.params || self.ncols != other.ncols {
            return Err(Error::ShapeMismatch(format!(
                "modules over Z/{}^{} of length {} and Z/{}^{} of length {}",
                self.params.p(),
                self.params.s(),
                self.ncols,
                other.params.p(),
                other.params.s(),
                other.ncols
            )));
        }
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(ModMatrix { params: self.params, ncols: self.ncols, rows, canonical: false })
    }

    /// Appends one row without re-canonicalizing.
    pub fn with_row(&self, row: &[u64]) -> Result<Self> {
        if row.len() != self.ncols {
            return Err(Error::ShapeMismatch(format!("row of length {} for {} columns", row.len(), self.ncols)));
        }
        let mut rows = self.rows.clone();
        rows.push(row.iter().map(|&x| x % self.params.modulus()).collect());
        Ok(ModMatrix { params: self.params, ncols: self.ncols, rows, canonical: false })
    }

    /// Column `t` of the result is column `permutation[t]` of `self`.
    pub fn permute_columns(&self, permutation: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.ncols];
        if permutation.len() != self.ncols
            || permutation.iter().any(|&c| c >= self.ncols || std::mem::replace(&mut seen[c], true))
        {
            return Err(Error::ShapeMismatch(format!("{permutation:?} is not a permutation of {} columns", self.ncols)));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| permutation.iter().map(|&c| r[c]).collect())
            .collect();
        Ok(ModMatrix { params: self.params, ncols: self.ncols, rows, canonical: false })
    }

    /// The Howell form of the row span.
    pub fn howell_form(&self) -> ModMatrix {
        if self.canonical {
            return self.clone();
        }
        ModMatrix {
            params: self.params,
            ncols: self.ncols,
            rows: howell_rows(&self.params, self.ncols, self.rows.clone()),
            canonical: true,
        }
    }

    fn canonical_rows(&self) -> std::borrow::Cow<'_, [Vec<u64>]> {
        if self.canonical {
            std::borrow::Cow::Borrowed(&self.rows)
        } else {
            std::borrow::Cow::Owned(howell_rows(&self.params, self.ncols, self.rows.clone()))
        }
    }

    /// `(column, valuation)` of each Howell pivot.
    pub fn pivots(&self) -> Vec<(usize, u32)> {
        self.canonical_rows()
            .iter()
            .map(|r| {
                let c = r.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
                (c, self.params.valuation(r[c]))
            })
            .collect()
    }

    /// `log_p |span|`.
    pub fn log_size(&self) -> u32 {
        let s = self.params.s();
        self.pivots().iter().map(|&(_, v)| s - v).sum()
    }

    /// `|span|`, or `None` if it does not fit in `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        (self.params.p() as u128).checked_pow(self.log_size())
    }

    /// Reduces `v` against the Howell form. The result is a canonical
    /// representative of `v + span`; it is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.ncols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.ncols)));
        }
        let r = &self.params;
        let mut v: Vec<u64> = v.iter().map(|&x| x % r.modulus()).collect();
        for row in self.canonical_rows().iter() {
            let c = row.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
            let pivot = row[c];
            let q = v[c] / pivot;
            if q != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = r.sub(*x, r.mul(q, y));
                }
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Iterates the span; each element is produced once.
    pub fn elements(&self, cap: u128) -> Result<Elements> {
        let size = self.cardinality().unwrap_or(u128::MAX);
        check_cap("module enumeration", size, cap)?;
        let howell = self.howell_form();
        let s = self.params.s();
        let orders = howell
            .pivots()
            .iter()
            .map(|&(_, v)| self.params.pow_p(s - v))
            .collect::<Vec<_>>();
        Ok(Elements {
            params: self.params,
            rows: howell.rows,
            coeffs: vec![0; orders.len()],
            orders,
            current: vec![0; self.ncols],
            done: false,
        })
    }

    /// Block systematic form; see [`SystematicForm`].
    pub fn systematic_form(&self) -> SystematicForm {
        systematic(&self.params, self.ncols, self.rows.clone())
    }

    /// `(k_0, ..., k_{s-1})`: multiplicity of each cyclic factor `Z/p^{s-i}`.
    pub fn subtype(&self) -> Vec<usize> {
        self.systematic_form().subtype
    }

    /// Generators of `{x : G x^T = 0}`, in Howell form.
    pub fn kernel(&self) -> ModMatrix {
        let r = &self.params;
        let s = r.s();
        let (diag, v) = smith(r, self.ncols, self.rows.clone());
        let n = self.ncols;
        let gens: Vec<Vec<u64>> = (0..n)
            .filter_map(|t| {
                let scale = match diag.get(t) {
                    Some(&0) => return None,
                    Some(&val) => r.pow_p(s - val),
                    None => 1,
                };
                Some((0..n).map(|i| r.mul(v[i][t], scale)).collect())
            })
            .collect();
        ModMatrix { params: *r, ncols: n, rows: gens, canonical: false }.howell_form()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        Ok(self.stack(other)?.howell_form())
    }

    /// `span(self) ∩ span(other)`, computed as the kernel of the stacked kernels.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.kernel().stack(&other.kernel())?.kernel())
    }

    /// Span equality.
    pub fn same_span(&self, other: &Self) -> bool {
        self.params == other.params
            && self.ncols == other.ncols
            && self.canonical_rows().as_ref() == other.canonical_rows().as_ref()
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn digest(&self) -> String {
        let text = self.howell_form().to_string();
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    /// Parses the text format: a header `p s n`, then one row per line.
    /// Blank lines and `#` comments are skipped; entries are reduced mod `p^s`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header `p s n`".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("header must be `p s n`, got `{header}`")));
        }
        let num = |t: &str| t.parse::<u64>().map_err(|e| Error::Parse(format!("bad header field `{t}`: {e}")));
        let p = num(fields[0])?;
        let s = u32::try_from(num(fields[1])?).map_err(|_| Error::Parse("s too large".into()))?;
        let n = num(fields[2])? as usize;
        let params = ChainRingParams::new(p, s)?;
        let rows = lines
            .enumerate()
            .map(|(i, l)| {
                let row = l
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<i64>()
                            .map(|x| params.reduce(x as i128))
                            .map_err(|e| Error::Parse(format!("row {}: bad entry `{t}`: {e}", i + 1)))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                if row.len() != n {
                    return Err(Error::Parse(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, n, rows)
    }
}

impl fmt::Display for ModMatrix {
    /// The text format accepted by [`ModMatrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.params.p(), self.params.s(), self.ncols)?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Odometer over the coefficient vectors of a Howell basis.
pub struct Elements {
    params: ChainRingParams,
    rows: Vec<Vec<u64>>,
    orders: Vec<u64>,
    coeffs: Vec<u64>,
    current: Vec<u64>,
    done: bool,
}

impl Iterator for Elements {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let r = self.params;
        let mut t = 0;
        loop {
            if t == self.rows.len() {
                self.done = true;
                break;
            }
            self.coeffs[t] += 1;
            for (x, &y) in self.current.iter_mut().zip(&self.rows[t]) {
                *x = r.add(*x, y);
            }
            if self.coeffs[t] < self.orders[t] {
                break;
            }
            // Wrapped. `order * row` need not vanish (it lies in the span of
            // later rows), so take it back out explicitly.
            let order = self.orders[t];
            for (x, &y) in self.current.iter_mut().zip(&self.rows[t]) {
                *x = r.sub(*x, r.mul(order, y));
            }
            self.coeffs[t] = 0;
            t += 1;
        }
        Some(out)
    }
}

fn axpy(r: &ChainRingParams, target: &mut [u64], q: u64, src: &[u64]) {
    // target -= q * src
    if q == 0 {
        return;
    }
    for (x, &y) in target.iter_mut().zip(src) {
        *x = r.sub(*x, r.mul(q, y));
    }
}

fn scale(r: &ChainRingParams, row: &mut [u64], k: u64) {
    for x in row.iter_mut() {
        *x = r.mul(*x, k);
    }
}

/// Normalizes `row` so that `row[c]` becomes exactly `p^v`; returns `v`.
fn normalize_at(r: &ChainRingParams, row: &mut [u64], c: usize) -> u32 {
    let (v, u) = r.split(row[c]);
    let inv = r.inverse(u).expect("split yields a unit");
    scale(r, row, inv);
    debug_assert_eq!(row[c], r.pow_p(v));
    v
}

fn howell_rows(r: &ChainRingParams, ncols: usize, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let s = r.s();
    let mut work: Vec<Vec<u64>> = rows.into_iter().filter(|row| row.iter().any(|&x| x != 0)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut pivot_cols = Vec::new();
    for c in 0..ncols {
        let best = work
            .iter()
            .enumerate()
            .filter(|(_, row)| row[c] != 0)
            .min_by_key(|(i, row)| (r.valuation(row[c]), *i))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let mut pivot = work.remove(best);
        let v = normalize_at(r, &mut pivot, c);
        let pc = r.pow_p(v);
        for row in work.iter_mut() {
            if row[c] != 0 {
                let q = row[c] / pc;
                axpy(r, row, q, &pivot);
            }
        }
        if v > 0 {
            let mut killed = pivot.clone();
            scale(r, &mut killed, r.pow_p(s - v));
            work.push(killed);
        }
        work.retain(|row| row.iter().any(|&x| x != 0));
        out.push(pivot);
        pivot_cols.push((c, pc));
    }
    for (t, &(c, pc)) in pivot_cols.iter().enumerate() {
        let (above, rest) = out.split_at_mut(t);
        let pivot = &rest[0];
        for row in above.iter_mut() {
            let q = row[c] / pc;
            axpy(r, row, q, pivot);
        }
    }
    out
}

/// Smallest-valuation entry in the lower-right block starting at `t`;
/// ties go to the smallest key given by `col_key`, then the smallest row.
fn min_entry(
    r: &ChainRingParams,
    a: &[Vec<u64>],
    t: usize,
    ncols: usize,
    col_key: impl Fn(usize) -> usize,
) -> Option<(usize, usize)> {
    let s = r.s();
    let mut best: Option<(u32, usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().take(ncols).skip(t) {
            let v = r.valuation(x);
            if v == s {
                continue;
            }
            let key = (v, col_key(j), i, j);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, i, j)| (i, j))
}

fn systematic(r: &ChainRingParams, ncols: usize, mut a: Vec<Vec<u64>>) -> SystematicForm {
    let s = r.s() as usize;
    let mut perm: Vec<usize> = (0..ncols).collect();
    let mut vals = Vec::new();
    let mut t = 0;
    while let Some((i, j)) = min_entry(r, &a, t, ncols, |j| perm[j]) {
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        perm.swap(t, j);
        let v = normalize_at(r, &mut a[t], t);
        let pc = r.pow_p(v);
        let (head, tail) = a.split_at_mut(t + 1);
        let pivot = &head[t];
        for row in tail.iter_mut() {
            let q = row[t] / pc;
            axpy(r, row, q, pivot);
        }
        vals.push(v);
        t += 1;
    }
    a.truncate(t);
    for t in 0..a.len() {
        let pc = r.pow_p(vals[t]);
        let (above, rest) = a.split_at_mut(t);
        let pivot = &rest[0];
        for row in above.iter_mut() {
            let q = row[t] / pc;
            axpy(r, row, q, pivot);
        }
    }
    let mut subtype = vec![0usize; s];
    for &v in &vals {
        subtype[v as usize] += 1;
    }
    SystematicForm {
        permutation: perm,
        matrix: ModMatrix { params: *r, ncols, rows: a, canonical: false },
        subtype,
    }
}

/// Diagonalizes with row and column operations. Returns the pivot
/// valuations and the accumulated column transform `V` (`n x n`, row-major)
/// such that `(row ops) * A * V` is diagonal with entries `p^{v_t}`.
fn smith(r: &ChainRingParams, ncols: usize, mut a: Vec<Vec<u64>>) -> (Vec<u32>, Vec<Vec<u64>>) {
    let mut v: Vec<Vec<u64>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut vals = Vec::new();
    let mut t = 0;
    while let Some((i, j)) = min_entry(r, &a, t, ncols, |j| j) {
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        for row in v.iter_mut() {
            row.swap(t, j);
        }
        let val = normalize_at(r, &mut a[t], t);
        let pc = r.pow_p(val);
        let (head, tail) = a.split_at_mut(t + 1);
        let pivot = &head[t];
        for row in tail.iter_mut() {
            let q = row[t] / pc;
            axpy(r, row, q, pivot);
        }
        // Clear row t to the right with column operations.
        for j in (t + 1)..ncols {
            let q = a[t][j] / pc;
            if q == 0 {
                continue;
            }
            for row in a.iter_mut() {
                row[j] = r.sub(row[j], r.mul(q, row[t]));
            }
            for row in v.iter_mut() {
                row[j] = r.sub(row[j], r.mul(q, row[t]));
            }
        }
        vals.push(val);
        t += 1;
    }
    (vals, v)
}
