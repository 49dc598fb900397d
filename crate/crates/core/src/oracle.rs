//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive: element sets are built by closing
//! under addition, orders are tabulated pairwise, Möbius values follow the
//! recursive definition. Only ring arithmetic and Howell canonicalization
//! (for deduplicating submodules) are shared with the rest of the crate.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::anticode::Anticode;
use crate::code::Code;
use crate::error::{check_cap, Error, Result};
use crate::modmat::ModMatrix;
use crate::wcomp::WeakComposition;
use crate::zmod::{ChainRingParams, Metric};

/// Default bound on the size of a module whose submodules are enumerated.
pub const DEFAULT_CENSUS_CAP: u128 = 729;

/// Default bound on the number of poset elements tabulated.
pub const DEFAULT_POSET_CAP: u128 = 200;

pub type ElementSet = BTreeSet<Vec<u64>>;

/// Closure of `gens` under addition (hence under `Z`-multiples).
pub fn span_elements(params: &ChainRingParams, n: usize, gens: &[Vec<u64>]) -> ElementSet {
    let mut seen: ElementSet = BTreeSet::new();
    let mut queue = VecDeque::new();
    let zero = vec![0; n];
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(&x, &y)| params.add(x, y)).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn matrix_elements(m: &ModMatrix) -> ElementSet {
    span_elements(m.params(), m.ncols(), m.rows())
}

/// All vectors `x` with `G x^T = 0`, by scanning `R^n`.
pub fn kernel_elements(m: &ModMatrix, cap: u128) -> Result<ElementSet> {
    let params = m.params();
    let n = m.ncols();
    let size = (params.modulus() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_cap("ambient space scan", size, cap)?;
    Ok(all_vectors(params, n)
        .filter(|x| {
            m.rows().iter().all(|r| {
                r.iter().zip(x).fold(0, |acc, (&a, &b)| params.add(acc, params.mul(a, b))) == 0
            })
        })
        .collect())
}

/// `R^n` in lexicographic order.
pub fn all_vectors(params: &ChainRingParams, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let m = params.modulus();
    let total = (m as u128).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; n];
        for x in v.iter_mut().rev() {
            *x = (idx % m as u128) as u64;
            idx /= m as u128;
        }
        v
    })
}

/// Subtype read off the torsion: `log_p |{x : p^t x = 0}|` grows by
/// `Σ_{i ≤ s-t} k_i` from `t - 1` to `t`.
pub fn subtype_of_elements(params: &ChainRingParams, elements: &ElementSet) -> Vec<usize> {
    let s = params.s();
    let log = |count: usize| -> u32 {
        let mut c = count as u64;
        let mut l = 0;
        while c > 1 {
            assert_eq!(c % params.p(), 0, "module size is a power of p");
            c /= params.p();
            l += 1;
        }
        l
    };
    let torsion: Vec<u32> = (0..=s)
        .map(|t| {
            let pt = params.pow_p(t);
            log(elements.iter().filter(|x| x.iter().all(|&y| params.mul(y, pt) == 0)).count())
        })
        .collect();
    // growth[t] = Σ_{i ≤ s-t} k_i for t = 1..=s
    let growth: Vec<usize> = (1..=s as usize).map(|t| (torsion[t] - torsion[t - 1]) as usize).collect();
    (0..s as usize)
        .map(|i| {
            let t = s as usize - i;
            growth[t - 1] - growth.get(t).copied().unwrap_or(0)
        })
        .collect()
}

/// Least valuation per coordinate over a set of vectors (`s` if none is
/// nonzero there).
pub fn column_valuations(params: &ChainRingParams, n: usize, elements: &ElementSet) -> Vec<u32> {
    (0..n)
        .map(|c| elements.iter().map(|x| params.valuation(x[c])).min().unwrap_or(params.s()))
        .collect()
}

pub fn max_weight(params: &ChainRingParams, elements: &ElementSet, metric: Metric) -> u64 {
    elements.iter().map(|x| metric.weight(params, x)).max().unwrap_or(0)
}

pub fn hamming_support_size(elements: &ElementSet) -> usize {
    let n = elements.iter().next().map_or(0, Vec::len);
    (0..n).filter(|&c| elements.iter().any(|x| x[c] != 0)).count()
}

/// Elements of the anticode `⊕ <p^{e_j}>`.
pub fn anticode_elements(anticode: &Anticode) -> ElementSet {
    let params = anticode.params();
    let mut out: ElementSet = BTreeSet::new();
    out.insert(Vec::new());
    for &e in anticode.exponents() {
        let step = params.pow_p(e);
        let count = params.modulus() / step;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..count).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(params.mul(k, step));
                    v
                })
            })
            .collect();
    }
    out
}

/// One submodule of a census.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub matrix: ModMatrix,
    pub digest: String,
    pub subtype: Vec<usize>,
    pub rank: usize,
    pub size: usize,
}

/// Every submodule of a parent module.
#[derive(Clone, Debug)]
pub struct ModuleCensus {
    pub parent: ModMatrix,
    pub modules: Vec<CensusEntry>,
}

impl ModuleCensus {
    /// Submodules with extended subtype `b`.
    pub fn count_extended(&self, b: &WeakComposition) -> usize {
        let n = self.parent.ncols();
        self.modules
            .iter()
            .filter(|e| {
                let mut parts = e.subtype.clone();
                parts.push(n - e.rank);
                parts == b.parts()
            })
            .count()
    }

    pub fn count_rank(&self, j: usize) -> usize {
        self.modules.iter().filter(|e| e.rank == j).count()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }
}

/// Breadth-first search from the zero module, adjoining one parent element
/// at a time and deduplicating by Howell form.
pub fn enumerate_submodules(parent: &ModMatrix, cap: u128) -> Result<ModuleCensus> {
    let params = *parent.params();
    let n = parent.ncols();
    let size = parent.cardinality().unwrap_or(u128::MAX);
    check_cap("submodule census", size, cap)?;
    let elements: Vec<Vec<u64>> = matrix_elements(parent).into_iter().collect();
    if elements.len() as u128 != size {
        return Err(Error::Inconsistent(format!(
            "closure has {} elements but the Howell form predicts {size}",
            elements.len()
        )));
    }

    let zero = ModMatrix::zero(params, n);
    let mut seen: HashSet<ModMatrix> = HashSet::new();
    seen.insert(zero.clone());
    let mut order = vec![zero.clone()];
    let mut queue = VecDeque::from([zero]);
    while let Some(m) = queue.pop_front() {
        for v in &elements {
            if m.contains(v)? {
                continue;
            }
            let next = m.with_row(v)?.howell_form();
            if seen.insert(next.clone()) {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }

    let modules = order
        .into_iter()
        .map(|matrix| {
            let elems = matrix_elements(&matrix);
            let subtype = subtype_of_elements(&params, &elems);
            CensusEntry {
                digest: matrix.digest(),
                rank: subtype.iter().sum(),
                subtype,
                size: elems.len(),
                matrix,
            }
        })
        .collect();
    Ok(ModuleCensus { parent: parent.clone(), modules })
}

/// Every code of length `n`, as the census of the full space.
pub fn enumerate_codes(n: usize, params: ChainRingParams, cap: u128) -> Result<Vec<Code>> {
    let census = enumerate_submodules(&ModMatrix::identity(params, n), cap)?;
    Ok(census.modules.iter().map(|e| Code::new(&e.matrix)).collect())
}

/// All exponent vectors in `{0..s}^n`, lexicographically.
pub fn enumerate_anticodes(n: usize, params: ChainRingParams, cap: u128) -> Result<Vec<Anticode>> {
    let base = params.s() as u128 + 1;
    let size = base.checked_pow(n as u32).unwrap_or(u128::MAX);
    check_cap("anticode enumeration", size, cap)?;
    Ok((0..size)
        .map(|mut idx| {
            let mut e = vec![0u32; n];
            for x in e.iter_mut().rev() {
                *x = (idx % base) as u32;
                idx /= base;
            }
            Anticode::new(params, e).expect("exponents are at most s")
        })
        .collect())
}

/// All of `Δ_L(n)` by filtering `{0..n}^L`.
pub fn compositions(len: usize, n: usize) -> Vec<WeakComposition> {
    let mut out = Vec::new();
    let mut v = vec![0usize; len];
    loop {
        if v.iter().sum::<usize>() == n {
            out.push(WeakComposition::new(v.clone()));
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < n {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
    }
}

/// Tabulated dominance order on `Δ_L(n)`.
pub struct PosetOracle {
    pub elements: Vec<WeakComposition>,
    leq: Vec<Vec<bool>>,
}

impl PosetOracle {
    pub fn new(len: usize, n: usize, cap: u128) -> Result<Self> {
        let size = crate::wcomp::lattice_size(len, n).unwrap_or(u128::MAX);
        check_cap("poset oracle", size, cap)?;
        let elements = compositions(len, n);
        let leq = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let (mut sa, mut sb) = (0, 0);
                        a.parts().iter().zip(b.parts()).all(|(x, y)| {
                            sa += x;
                            sb += y;
                            sa <= sb
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(PosetOracle { elements, leq })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, a: &WeakComposition) -> Option<usize> {
        self.elements.iter().position(|x| x == a)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Least upper bound by scanning all upper bounds.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        ups.iter().copied().find(|&k| ups.iter().all(|&u| self.leq(k, u)))
    }

    /// Greatest lower bound by scanning all lower bounds.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let downs: Vec<usize> = (0..self.len()).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        downs.iter().copied().find(|&k| downs.iter().all(|&d| self.leq(d, k)))
    }

    /// Upper covers of `i`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| {
                j != i
                    && self.leq(i, j)
                    && !(0..self.len()).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j))
            })
            .collect()
    }

    /// `μ(x, y)` for all pairs via `μ(x,x) = 1`, `μ(x,y) = -Σ_{x ≤ z < y} μ(x,z)`.
    pub fn mobius_table(&self) -> Vec<Vec<i64>> {
        let size = self.len();
        // Process y in an order compatible with ≤: by number of elements below.
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&y| (0..size).filter(|&z| self.leq(z, y)).count());
        let mut mu = vec![vec![0i64; size]; size];
        #[allow(clippy::needless_range_loop)]
        for x in 0..size {
            for &y in &order {
                if !self.leq(x, y) {
                    continue;
                }
                mu[x][y] = if x == y {
                    1
                } else {
                    -(0..size).filter(|&z| z != y && self.leq(x, z) && self.leq(z, y)).map(|z| mu[x][z]).sum::<i64>()
                };
            }
        }
        mu
    }

    /// Every maximal chain from the bottom to the top, by DFS over covers.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let bottom = (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)));
        let Some(bottom) = bottom else { return Vec::new() };
        let covers: Vec<Vec<usize>> = (0..self.len()).map(|i| self.covers(i)).collect();
        let mut out = Vec::new();
        let mut stack = vec![vec![bottom]];
        while let Some(path) = stack.pop() {
            let last = *path.last().expect("paths are nonempty");
            if covers[last].is_empty() {
                out.push(path);
                continue;
            }
            for &c in covers[last].iter().rev() {
                let mut next = path.clone();
                next.push(c);
                stack.push(next);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z9() -> ChainRingParams {
        ChainRingParams::new(3, 2).unwrap()
    }

    #[test]
    fn small_censuses() {
        let zero = ModMatrix::zero(z9(), 2);
        assert_eq!(enumerate_submodules(&zero, DEFAULT_CENSUS_CAP).unwrap().len(), 1);
        assert_eq!(enumerate_codes(1, z9(), DEFAULT_CENSUS_CAP).unwrap().len(), 3);
        let f3 = ChainRingParams::new(3, 1).unwrap();
        let census = enumerate_submodules(&ModMatrix::identity(f3, 2), DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!(census.len(), 6);
        assert_eq!(census.count_rank(1), 4);
    }

    #[test]
    fn census_respects_cap() {
        let full = ModMatrix::identity(z9(), 3);
        assert!(matches!(enumerate_submodules(&full, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn torsion_subtypes() {
        let m = ModMatrix::new(z9(), 3, vec![vec![1, 2, 0], vec![0, 3, 0]]).unwrap();
        assert_eq!(subtype_of_elements(&z9(), &matrix_elements(&m)), vec![1, 1]);
        let m = ModMatrix::new(z9(), 2, vec![vec![3, 0], vec![0, 3]]).unwrap();
        assert_eq!(subtype_of_elements(&z9(), &matrix_elements(&m)), vec![0, 2]);
    }

    #[test]
    fn anticode_enumeration() {
        assert_eq!(enumerate_anticodes(1, z9(), 1000).unwrap().len(), 3);
        assert_eq!(enumerate_anticodes(2, z9(), 1000).unwrap().len(), 9);
        let all = enumerate_anticodes(3, z9(), 1000).unwrap();
        assert_eq!(all.len(), 27);
        let profiles: BTreeSet<Vec<usize>> = all.iter().map(|a| a.extended_subtype().parts().to_vec()).collect();
        assert_eq!(profiles.len(), 10);
    }

    #[test]
    fn anticode_element_sets() {
        let a = Anticode::new(z9(), vec![0, 1, 2]).unwrap();
        let elems = anticode_elements(&a);
        assert_eq!(elems.len(), 27);
        assert_eq!(elems, matrix_elements(&a.to_matrix()));
    }

    #[test]
    fn poset_basics() {
        let one = PosetOracle::new(1, 4, DEFAULT_POSET_CAP).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.mobius_table(), vec![vec![1]]);
        assert_eq!(one.maximal_chains(), vec![vec![0]]);
        let p = PosetOracle::new(3, 4, DEFAULT_POSET_CAP).unwrap();
        assert_eq!(p.len(), 15);
        let q = PosetOracle::new(4, 3, DEFAULT_POSET_CAP).unwrap();
        assert!(q.maximal_chains().iter().all(|c| c.len() == 10));
    }

    #[test]
    fn brute_kernel() {
        let m = ModMatrix::new(z9(), 3, vec![vec![1, 2, 0], vec![0, 3, 0]]).unwrap();
        let k = kernel_elements(&m, 1000).unwrap();
        let expected = ModMatrix::new(z9(), 3, vec![vec![3, 3, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(k, matrix_elements(&expected));
    }
}
