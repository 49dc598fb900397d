//! Coordinate-ideal anticodes `⊕_j <p^{e_j}>`, the anticode bounds and the
//! optimality tests.
//!
//! An anticode is stored as its exponent vector `e ∈ {0..s}^n`; the
//! generator matrix is derived on demand. Inclusion, hulls and duals are
//! pointwise operations on exponents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{check_cap, Error, Result};
use crate::modmat::ModMatrix;
use crate::wcomp::WeakComposition;
use crate::zmod::{ChainRingParams, Metric};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Anticode {
    #[serde(flatten)]
    params: ChainRingParams,
    exponents: Vec<u32>,
}

impl Anticode {
    pub fn new(params: ChainRingParams, exponents: Vec<u32>) -> Result<Self> {
        if let Some(&e) = exponents.iter().find(|&&e| e > params.s()) {
            return Err(Error::OutOfRange(format!("exponent {e} exceeds s = {}", params.s())));
        }
        Ok(Anticode { params, exponents })
    }

    /// The whole space `R^n`.
    pub fn full(params: ChainRingParams, n: usize) -> Self {
        Anticode { params, exponents: vec![0; n] }
    }

    /// The zero module of length `n`.
    pub fn zero(params: ChainRingParams, n: usize) -> Self {
        Anticode { params, exponents: vec![params.s(); n] }
    }

    /// The block representative of `𝓐_a`: exponents sorted ascending.
    pub fn canonical(params: ChainRingParams, a: &WeakComposition) -> Result<Self> {
        check_composition(&params, a)?;
        let exponents = a
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i as u32, k))
            .collect();
        Ok(Anticode { params, exponents })
    }

    #[inline]
    pub fn params(&self) -> &ChainRingParams {
        &self.params
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `a_i = #{j : e_j = i}`, an element of `Δ_{s+1}(n)`.
    pub fn extended_subtype(&self) -> WeakComposition {
        let mut parts = vec![0; self.params.s() as usize + 1];
        for &e in &self.exponents {
            parts[e as usize] += 1;
        }
        WeakComposition::new(parts)
    }

    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|&&e| e < self.params.s()).count()
    }

    /// `log_p |A|`.
    pub fn log_size(&self) -> u32 {
        self.exponents.iter().map(|&e| self.params.s() - e).sum()
    }

    /// One row `p^{e_j} · e^{(j)}` per coordinate with `e_j < s`.
    pub fn to_matrix(&self) -> ModMatrix {
        let n = self.len();
        let rows = self
            .exponents
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e < self.params.s())
            .map(|(j, &e)| {
                let mut row = vec![0; n];
                row[j] = self.params.pow_p(e);
                row
            })
            .collect();
        ModMatrix::new(self.params, n, rows)
            .expect("rows have length n")
            .howell_form()
    }

    pub fn to_code(&self) -> Code {
        Code::new(&self.to_matrix())
    }

    /// True when `other ⊆ self`, i.e. `e_other ≥ e_self` pointwise.
    pub fn contains(&self, other: &Anticode) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.exponents.iter().zip(&other.exponents).all(|(a, b)| b >= a))
    }

    /// `e'_j = s - e_j`; equals the dual code of `self`.
    pub fn dual(&self) -> Anticode {
        let s = self.params.s();
        Anticode { params: self.params, exponents: self.exponents.iter().map(|&e| s - e).collect() }
    }

    /// The smallest anticode containing `code`: `e_j` is the least valuation
    /// in column `j`.
    pub fn hull(code: &Code) -> Anticode {
        let params = *code.params();
        let gen = code.generator();
        let exponents = (0..gen.ncols())
            .map(|c| gen.rows().iter().map(|r| params.valuation(r[c])).min().unwrap_or(params.s()))
            .collect();
        Anticode { params, exponents }
    }

    /// Pointwise intersection of two anticodes.
    pub fn meet(&self, other: &Anticode) -> Result<Anticode> {
        self.check_compatible(other)?;
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| a.max(b)).collect();
        Ok(Anticode { params: self.params, exponents })
    }

    fn check_compatible(&self, other: &Anticode) -> Result<()> {
        if self.params != other.params || self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "anticodes of length {} over Z/{}^{} and length {} over Z/{}^{}",
                self.len(),
                self.params.p(),
                self.params.s(),
                other.len(),
                other.params.p(),
                other.params.s()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Anticode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (j, &e) in self.exponents.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.params.pow_p(e) % self.params.modulus())?;
        }
        write!(f, ">")
    }
}

fn check_composition(params: &ChainRingParams, a: &WeakComposition) -> Result<()> {
    if a.len() != params.s() as usize + 1 {
        return Err(Error::ShapeMismatch(format!(
            "composition {a} has {} parts, expected s + 1 = {}",
            a.len(),
            params.s() + 1
        )));
    }
    Ok(())
}

/// The generator `diag(I_{a_0}, p I_{a_1}, ..., p^{s-1} I_{a_{s-1}}, 0)`.
pub fn canonical_generator(a: &WeakComposition, params: ChainRingParams) -> Result<ModMatrix> {
    Ok(Anticode::canonical(params, a)?.to_matrix())
}

/// `n! / (a_0! ... a_s!)`, or `None` on overflow.
pub fn family_size(a: &WeakComposition) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut placed: u128 = 0;
    for &k in a.parts() {
        for i in 1..=k as u128 {
            placed += 1;
            acc = acc.checked_mul(placed)? / i;
        }
    }
    Some(acc)
}

/// Every exponent vector with profile `a`, in lexicographic order.
pub fn exponent_family(a: &WeakComposition) -> Vec<Vec<u32>> {
    let mut current: Vec<u32> = a
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i as u32, k))
        .collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The anticodes `𝓐_a(R^n)` in lexicographic exponent order.
pub fn family(a: &WeakComposition, params: ChainRingParams, cap: u128) -> Result<Vec<Anticode>> {
    check_composition(&params, a)?;
    check_cap("anticode family", family_size(a).unwrap_or(u128::MAX), cap)?;
    Ok(exponent_family(a)
        .into_iter()
        .map(|exponents| Anticode { params, exponents })
        .collect())
}

/// Lower bound on the maximum Hamming weight of a rank-`K` code.
pub fn hamming_bound(rank: usize) -> u64 {
    rank as u64
}

/// Lower bound on the maximum homogeneous weight, scaled by `p - 1`.
pub fn hom_bound_scaled(rank: usize, params: &ChainRingParams) -> u64 {
    rank as u64 * params.p()
}

/// `Σ k_i M_i` for a subtype `(k_0, ..., k_{s-1})`.
pub fn lee_bound(subtype: &[usize], params: &ChainRingParams) -> Result<u64> {
    let maxima = params.lee_maxima()?;
    if subtype.len() != maxima.len() {
        return Err(Error::ShapeMismatch(format!(
            "subtype of length {} for s = {}",
            subtype.len(),
            params.s()
        )));
    }
    Ok(subtype.iter().zip(&maxima).map(|(&k, &m)| k as u64 * m).sum())
}

/// The bound for `metric` evaluated at `code`'s rank or subtype.
pub fn bound(code: &Code, metric: Metric) -> Result<u64> {
    Ok(match metric {
        Metric::Hamming => hamming_bound(code.rank()),
        Metric::Homogeneous => hom_bound_scaled(code.rank(), code.params()),
        Metric::Lee => lee_bound(code.subtype(), code.params())?,
    })
}

/// True when `code` is a coordinate-ideal anticode up to a column
/// permutation, i.e. permutation equivalent to the canonical generator of
/// its extended subtype.
pub fn is_structurally_canonical(code: &Code) -> Result<bool> {
    let hull = Anticode::hull(code);
    let mut order: Vec<usize> = (0..code.len()).collect();
    order.sort_by_key(|&j| (hull.exponents[j], j));
    let permuted = code.generator().permute_columns(&order)?.howell_form();
    Ok(permuted == canonical_generator(&code.extended_subtype(), *code.params())?)
}

/// Optimality verdict with the quantities it was derived from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Optimality {
    pub metric: Metric,
    pub optimal: bool,
    pub bound: u64,
    pub max_weight: u64,
}

/// Hamming and homogeneous: the maximum weight meets the bound. Lee: the
/// structural verdict, after checking it agrees with the weight verdict.
pub fn optimality(code: &Code, metric: Metric, cap: u128) -> Result<Optimality> {
    let bound = bound(code, metric)?;
    let max_weight = code.max_weight(metric, cap)?;
    let by_weight = max_weight == bound;
    let optimal = match metric {
        Metric::Lee => {
            let by_structure = is_structurally_canonical(code)?;
            if by_structure != by_weight {
                return Err(Error::Inconsistent(format!(
                    "Lee optimality of\n{code}\nstructure says {by_structure}, max weight {max_weight} vs bound {bound}"
                )));
            }
            by_structure
        }
        _ => by_weight,
    };
    Ok(Optimality { metric, optimal, bound, max_weight })
}

pub fn is_optimal(code: &Code, metric: Metric, cap: u128) -> Result<bool> {
    Ok(optimality(code, metric, cap)?.optimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmat::DEFAULT_ELEMENT_CAP as CAP;

    fn z9() -> ChainRingParams {
        ChainRingParams::new(3, 2).unwrap()
    }

    fn wc(parts: &[usize]) -> WeakComposition {
        WeakComposition::new(parts.to_vec())
    }

    fn code(rows: &[&[u64]]) -> Code {
        let n = rows[0].len();
        Code::new(&ModMatrix::new(z9(), n, rows.iter().map(|r| r.to_vec()).collect()).unwrap())
    }

    fn ac(e: &[u32]) -> Anticode {
        Anticode::new(z9(), e.to_vec()).unwrap()
    }

    #[test]
    fn canonical_generators() {
        assert!(canonical_generator(&wc(&[0, 0, 3]), z9()).unwrap().spans_zero());
        let g = canonical_generator(&wc(&[1, 1, 1]), z9()).unwrap();
        assert_eq!(g.rows(), &[vec![1, 0, 0], vec![0, 3, 0]]);
        assert_eq!(canonical_generator(&wc(&[3, 0, 0]), z9()).unwrap(), ModMatrix::identity(z9(), 3));
        assert!(canonical_generator(&wc(&[1, 2]), z9()).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(family(&wc(&[3, 0, 0]), z9(), CAP).unwrap(), vec![Anticode::full(z9(), 3)]);
        let six = family(&wc(&[1, 1, 1]), z9(), CAP).unwrap();
        assert_eq!(six.len(), 6);
        assert_eq!(six[0].exponents(), &[0, 1, 2]);
        assert_eq!(six[5].exponents(), &[2, 1, 0]);
        assert_eq!(family(&wc(&[0, 1, 2]), z9(), CAP).unwrap().len(), 3);
        assert_eq!(family_size(&wc(&[2, 3, 4])), Some(1260));
        assert!(matches!(family(&wc(&[1, 1, 1]), z9(), 5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn containment() {
        let a = ac(&[0, 1, 2]);
        assert!(a.contains(&a).unwrap());
        assert!(Anticode::full(z9(), 3).contains(&a).unwrap());
        assert!(a.contains(&ac(&[1, 2, 2])).unwrap());
        assert!(!a.contains(&ac(&[2, 2, 1])).unwrap());
    }

    #[test]
    fn bounds() {
        assert_eq!(hamming_bound(0), 0);
        assert_eq!(hom_bound_scaled(0, &z9()), 0);
        assert_eq!(lee_bound(&[0, 0], &z9()).unwrap(), 0);
        assert_eq!(lee_bound(&[1, 1], &z9()).unwrap(), 7);
        assert_eq!(hom_bound_scaled(2, &z9()), 6);
        let z4 = ChainRingParams::new(2, 2).unwrap();
        assert_eq!(lee_bound(&[1, 0], &z4), Err(Error::RequiresOddPrime(2)));
    }

    #[test]
    fn lee_optimality_examples() {
        for metric in Metric::ALL {
            assert!(is_optimal(&Code::zero(z9(), 3), metric, CAP).unwrap());
        }
        assert!(!is_optimal(&code(&[&[1, 2, 0], &[0, 3, 0]]), Metric::Lee, CAP).unwrap());
        let o = optimality(&code(&[&[1, 0, 0], &[0, 3, 0]]), Metric::Lee, CAP).unwrap();
        assert!(o.optimal);
        assert_eq!((o.bound, o.max_weight), (7, 7));
    }

    #[test]
    fn hamming_and_homogeneous_examples() {
        assert!(is_optimal(&code(&[&[1, 2, 0], &[0, 3, 0]]), Metric::Hamming, CAP).unwrap());
        assert!(is_optimal(&code(&[&[1, 2, 0], &[0, 3, 0]]), Metric::Homogeneous, CAP).unwrap());
    }

    #[test]
    fn hulls() {
        assert_eq!(Anticode::hull(&Code::zero(z9(), 3)), Anticode::zero(z9(), 3));
        assert_eq!(Anticode::hull(&code(&[&[0, 3, 0]])).exponents(), &[2, 1, 2]);
        let a = ac(&[0, 1, 2]);
        assert_eq!(Anticode::hull(&a.to_code()), a);
    }

    #[test]
    fn duals() {
        assert_eq!(Anticode::full(z9(), 3).dual(), Anticode::zero(z9(), 3));
        let a = ac(&[0, 1, 2]);
        assert_eq!(a.dual().exponents(), &[2, 1, 0]);
        assert_eq!(a.dual().to_code(), a.to_code().dual());
        let b = Anticode::canonical(z9(), &wc(&[2, 0, 1])).unwrap();
        assert_eq!(b.dual().extended_subtype(), wc(&[1, 0, 2]));
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(ac(&[0, 1, 2])).unwrap();
        assert_eq!(json, serde_json::json!({"p": 3, "s": 2, "exponents": [0, 1, 2]}));
    }
}
