//! Subcode counting and code invariants: Gaussian binomials, the chain-ring
//! bracket, binomial moments `B`, weight distributions `W`, the inversion
//! identities between them, and R-weights.
//!
//! All counts are exact big integers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::anticode::{family, Anticode};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::oracle::enumerate_submodules;
use crate::wcomp::{enumerate, WeakComposition};

/// Name of the linear extension of dominance used to pick minima.
pub const LINEAR_EXTENSION: &str = "lex-prefix-sums";

/// Ordinary binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Π_{i<k} (q^n - q^i) / (q^k - q^i)`; zero for `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k as u32 {
        num *= q.pow(n as u32) - q.pow(i);
        den *= q.pow(k as u32) - q.pow(i);
    }
    num / den
}

fn check_same_lattice(a: &WeakComposition, b: &WeakComposition) -> Result<()> {
    if a.len() != b.len() || a.total() != b.total() {
        return Err(Error::ShapeMismatch(format!("{a} and {b} lie in different lattices")));
    }
    Ok(())
}

/// Number of submodules of subtype `b` inside a module of subtype `a`:
/// `q^{Σ_{i<s} (â_i - b̂_i) b̂_{i-1}} Π_{i<s} [â_i - b̂_{i-1} choose b_i]_q`,
/// and zero unless `b ⪯ a`.
pub fn chain_bracket(a: &WeakComposition, b: &WeakComposition, q: u64) -> Result<BigUint> {
    check_same_lattice(a, b)?;
    if !b.dominated_by(a)? {
        return Ok(BigUint::zero());
    }
    let s = a.len() - 1;
    let mut exponent = 0u32;
    let mut acc = BigUint::one();
    for i in 0..s {
        let (ah, bh, bh_prev) = (a.prefix(i as isize), b.prefix(i as isize), b.prefix(i as isize - 1));
        exponent += ((ah - bh) * bh_prev) as u32;
        acc *= gaussian_binomial(ah - bh_prev, b.parts()[i], q);
    }
    Ok(acc * BigUint::from(q).pow(exponent))
}

/// Rank-`j` submodules of a module with extended subtype `a`, as the sum of
/// brackets over `b ⪯ a` with `b_s = n - j`.
pub fn rank_count_by_brackets(a: &WeakComposition, j: usize, q: u64) -> Result<BigUint> {
    let n = a.total();
    if j > n {
        return Ok(BigUint::zero());
    }
    let mut total = BigUint::zero();
    for b in enumerate(a.len(), n) {
        if b.parts()[a.len() - 1] == n - j {
            total += chain_bracket(a, &b, q)?;
        }
    }
    Ok(total)
}

/// Ranks of all submodules of `module`, counted by census.
fn census_ranks(module: &Code, cap: u128) -> Result<Vec<(Code, usize)>> {
    let census = enumerate_submodules(module.generator(), cap)?;
    Ok(census
        .modules
        .into_iter()
        .map(|e| (Code::new(&e.matrix), e.rank))
        .collect())
}

/// `#{D ≤ C ∩ A : rank D = j}`, by census and by brackets; the two must
/// agree.
pub fn binomial_moment_single(code: &Code, anticode: &Anticode, j: usize, cap: u128) -> Result<BigUint> {
    let meet = code.intersect(&anticode.to_code())?;
    let by_census = census_ranks(&meet, cap)?.iter().filter(|(_, r)| *r == j).count();
    let by_brackets = rank_count_by_brackets(&meet.extended_subtype(), j, code.params().p())?;
    if BigUint::from(by_census) != by_brackets {
        return Err(Error::Inconsistent(format!(
            "rank-{j} subcodes of C ∩ {anticode}: census {by_census}, brackets {by_brackets}"
        )));
    }
    Ok(by_brackets)
}

/// `B_a^{(j)}(C)`: [`binomial_moment_single`] summed over `𝓐_a`.
pub fn binomial_moment(code: &Code, a: &WeakComposition, j: usize, cap: u128) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for anticode in family(a, *code.params(), cap)? {
        total += binomial_moment_single(code, &anticode, j, cap)?;
    }
    Ok(total)
}

/// `#{D ≤ C ∩ A : rank D = j, hull(D) = A}`.
pub fn weight_distribution_single(code: &Code, anticode: &Anticode, j: usize, cap: u128) -> Result<BigUint> {
    let meet = code.intersect(&anticode.to_code())?;
    let count = census_ranks(&meet, cap)?
        .iter()
        .filter(|(d, r)| *r == j && Anticode::hull(d) == *anticode)
        .count();
    Ok(BigUint::from(count))
}

/// `W_a^{(j)}(C)`: [`weight_distribution_single`] summed over `𝓐_a`.
pub fn weight_distribution(code: &Code, a: &WeakComposition, j: usize, cap: u128) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for anticode in family(a, *code.params(), cap)? {
        total += weight_distribution_single(code, &anticode, j, cap)?;
    }
    Ok(total)
}

/// Number of anticodes of profile `a` containing a fixed anticode of
/// profile `b`: `Π_{i=0}^{s} C(â_i - b̂_{i-1}, a_i)`.
pub fn containing_count(a: &WeakComposition, b: &WeakComposition) -> Result<BigUint> {
    check_same_lattice(a, b)?;
    let mut acc = BigUint::one();
    for i in 0..a.len() {
        let top = a.prefix(i as isize) as i64 - b.prefix(i as isize - 1) as i64;
        acc *= binomial(top, a.parts()[i] as i64);
    }
    Ok(acc)
}

/// Number of anticodes of profile `a` lying one exponent step or less
/// below a fixed anticode of profile `b`, signed by the Möbius function of
/// the product of chains: `(-1)^{Σ_{i<s}(â_i - b̂_i)} Π_{i=1}^{s} C(b_i, â_{i-1} - b̂_{i-1})`.
pub fn inversion_coefficient(a: &WeakComposition, b: &WeakComposition) -> Result<BigInt> {
    check_same_lattice(a, b)?;
    if !b.dominated_by(a)? {
        return Ok(BigInt::zero());
    }
    let s = a.len() - 1;
    let mut acc = BigUint::one();
    for i in 1..=s {
        let lowered = a.prefix(i as isize - 1) as i64 - b.prefix(i as isize - 1) as i64;
        acc *= binomial(b.parts()[i] as i64, lowered);
    }
    let sign_exp: usize = (0..s).map(|i| a.prefix(i as isize) - b.prefix(i as isize)).sum();
    let value = BigInt::from(acc);
    Ok(if sign_exp.is_multiple_of(2) { value } else { -value })
}

/// `#{(A, A') ∈ 𝓐_a × 𝓐_b : A' ⊆ A}` by the product
/// `Π_i C(n - â_{i-1}, a_i) C(â_i - b̂_{i-1}, b_i)`.
pub fn pair_count_formula(a: &WeakComposition, b: &WeakComposition) -> Result<BigUint> {
    check_same_lattice(a, b)?;
    let n = a.total() as i64;
    let mut acc = BigUint::one();
    for i in 0..a.len() {
        let ip = i as isize;
        acc *= binomial(n - a.prefix(ip - 1) as i64, a.parts()[i] as i64);
        acc *= binomial(a.prefix(ip) as i64 - b.prefix(ip - 1) as i64, b.parts()[i] as i64);
    }
    Ok(acc)
}

/// The same count by enumerating both families.
pub fn pair_count_enumerated(
    a: &WeakComposition,
    b: &WeakComposition,
    params: crate::zmod::ChainRingParams,
    cap: u128,
) -> Result<BigUint> {
    check_same_lattice(a, b)?;
    let big = family(a, params, cap)?;
    let small = family(b, params, cap)?;
    let mut count = 0u64;
    for outer in &big {
        for inner in &small {
            if outer.contains(inner)? {
                count += 1;
            }
        }
    }
    Ok(BigUint::from(count))
}

/// Pair count by formula, checked against enumeration.
pub fn pair_count(
    a: &WeakComposition,
    b: &WeakComposition,
    params: crate::zmod::ChainRingParams,
    cap: u128,
) -> Result<BigUint> {
    let formula = pair_count_formula(a, b)?;
    let direct = pair_count_enumerated(a, b, params, cap)?;
    if formula != direct {
        return Err(Error::Inconsistent(format!("pair count for ({a}, {b}): formula {formula}, enumeration {direct}")));
    }
    Ok(formula)
}

/// `(rank(C ∩ A), K - a_s + freerk(C^⊥ ∩ A^⊥))`.
///
/// The two sides can differ: free rank is not modular over a chain ring.
/// `C = <(1,3)>`, `A = R × 0` over `Z/9` gives `(1, 0)`. See
/// [`rank_intersection_by_sum`] for the form that always holds.
pub fn rank_intersection_identity(code: &Code, anticode: &Anticode) -> Result<(i64, i64)> {
    let lhs = code.intersect(&anticode.to_code())?.rank() as i64;
    let a_s = *anticode.extended_subtype().parts().last().expect("s + 1 ≥ 1 parts") as i64;
    let other = code.dual().intersect(&anticode.dual().to_code())?;
    let rhs = code.rank() as i64 - a_s + other.free_rank() as i64;
    Ok((lhs, rhs))
}

/// `(rank(C ∩ A), n - freerk(C^⊥ + A^⊥))`; equal for every pair.
pub fn rank_intersection_by_sum(code: &Code, anticode: &Anticode) -> Result<(i64, i64)> {
    let lhs = code.intersect(&anticode.to_code())?.rank() as i64;
    let sum = code.dual().sum(&anticode.dual().to_code())?;
    Ok((lhs, code.len() as i64 - sum.free_rank() as i64))
}

fn check_r(code: &Code, r: usize) -> Result<()> {
    if r == 0 || r > code.rank() {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={}", code.rank())));
    }
    Ok(())
}

/// `max_{A ∈ 𝓐_a} rank(C ∩ A)`.
pub fn max_intersection_rank(code: &Code, a: &WeakComposition, cap: u128) -> Result<usize> {
    let mut best = 0;
    for anticode in family(a, *code.params(), cap)? {
        best = best.max(code.intersect(&anticode.to_code())?.rank());
    }
    Ok(best)
}

/// The profiles `a` admitting an anticode that meets `code` in rank `≥ r`,
/// in linear-extension order.
pub fn valid_profiles(code: &Code, r: usize, cap: u128) -> Result<Vec<WeakComposition>> {
    check_r(code, r)?;
    let s = code.params().s() as usize;
    let mut out = Vec::new();
    for a in enumerate(s + 1, code.len()) {
        if max_intersection_rank(code, &a, cap)? >= r {
            out.push(a);
        }
    }
    Ok(out)
}

/// `d_r(C)`: the first valid profile in linear-extension order.
pub fn r_weight(code: &Code, r: usize, cap: u128) -> Result<WeakComposition> {
    check_r(code, r)?;
    let s = code.params().s() as usize;
    for a in enumerate(s + 1, code.len()) {
        if max_intersection_rank(code, &a, cap)? >= r {
            return Ok(a);
        }
    }
    Err(Error::Inconsistent(format!("no anticode meets the code in rank {r}")))
}

/// Dominance-minimal valid profiles.
pub fn minimal_valid_profiles(code: &Code, r: usize, cap: u128) -> Result<Vec<WeakComposition>> {
    let valid = valid_profiles(code, r, cap)?;
    let mut out = Vec::new();
    for a in &valid {
        let mut minimal = true;
        for b in &valid {
            if b != a && b.dominated_by(a)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(a.clone());
        }
    }
    Ok(out)
}

fn free_profile(s: usize, n: usize, m: usize) -> WeakComposition {
    let mut parts = vec![0; s + 1];
    parts[0] = m;
    parts[s] += n - m;
    WeakComposition::new(parts)
}

/// `d_r^free(C)`: the least `(m, 0, ..., 0, n - m)` that is valid.
pub fn r_weight_free(code: &Code, r: usize, cap: u128) -> Result<WeakComposition> {
    check_r(code, r)?;
    let s = code.params().s() as usize;
    let n = code.len();
    for m in 0..=n {
        let a = free_profile(s, n, m);
        if max_intersection_rank(code, &a, cap)? >= r {
            return Ok(a);
        }
    }
    Err(Error::Inconsistent(format!("no free anticode meets the code in rank {r}")))
}

/// The `r`-th generalized Hamming weight, read off [`r_weight_free`].
pub fn ghw(code: &Code, r: usize, cap: u128) -> Result<usize> {
    Ok(r_weight_free(code, r, cap)?.parts()[0])
}

/// `B` and `W` for every `(a, j)`, plus the R-weight sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub digest: String,
    pub p: u64,
    pub s: u32,
    pub n: usize,
    pub rank: usize,
    /// Keyed by `(a, j)`; iteration follows the order of `profiles`.
    moments: BTreeMap<(usize, usize), BigUint>,
    distribution: BTreeMap<(usize, usize), BigUint>,
    /// `Δ_{s+1}(n)` in linear-extension order.
    pub profiles: Vec<WeakComposition>,
    /// `max_{A ∈ 𝓐_a} rank(C ∩ A)` per profile.
    pub max_ranks: Vec<usize>,
    pub r_weights: Vec<WeakComposition>,
    pub r_weights_free: Vec<WeakComposition>,
    pub ghw: Vec<usize>,
}

impl InvariantTable {
    /// Builds the table from one submodule census per anticode; moments
    /// are cross-checked against the bracket sums along the way.
    pub fn compute(code: &Code, cap: u128) -> Result<Self> {
        let params = *code.params();
        let s = params.s() as usize;
        let n = code.len();
        let profiles = enumerate(s + 1, n);
        let mut moments = BTreeMap::new();
        let mut distribution = BTreeMap::new();
        let mut max_ranks = Vec::with_capacity(profiles.len());
        for (ai, a) in profiles.iter().enumerate() {
            let mut b_row = vec![0u64; n + 1];
            let mut w_row = vec![0u64; n + 1];
            let mut best = 0;
            for anticode in family(a, params, cap)? {
                let meet = code.intersect(&anticode.to_code())?;
                best = best.max(meet.rank());
                let subs = census_ranks(&meet, cap)?;
                let ext = meet.extended_subtype();
                for (j, slot) in b_row.iter_mut().enumerate() {
                    let here = subs.iter().filter(|(_, r)| *r == j).count() as u64;
                    let expected = rank_count_by_brackets(&ext, j, params.p())?;
                    if BigUint::from(here) != expected {
                        return Err(Error::Inconsistent(format!(
                            "rank-{j} subcodes of C ∩ {anticode}: census {here}, brackets {expected}"
                        )));
                    }
                    *slot += here;
                }
                for (d, r) in &subs {
                    if Anticode::hull(d) == anticode {
                        w_row[*r] += 1;
                    }
                }
            }
            for j in 0..=n {
                moments.insert((ai, j), BigUint::from(b_row[j]));
                distribution.insert((ai, j), BigUint::from(w_row[j]));
            }
            max_ranks.push(best);
        }

        let k = code.rank();
        let mut r_weights = Vec::with_capacity(k);
        let mut r_weights_free = Vec::with_capacity(k);
        for r in 1..=k {
            let first = profiles
                .iter()
                .zip(&max_ranks)
                .find(|(_, &m)| m >= r)
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Error::Inconsistent(format!("no anticode meets the code in rank {r}")))?;
            r_weights.push(first);
            let free = profiles
                .iter()
                .zip(&max_ranks)
                .filter(|(a, _)| a.parts()[1..s].iter().all(|&x| x == 0))
                .find(|(_, &m)| m >= r)
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Error::Inconsistent(format!("no free anticode meets the code in rank {r}")))?;
            r_weights_free.push(free);
        }
        let ghw = r_weights_free.iter().map(|a| a.parts()[0]).collect();

        Ok(InvariantTable {
            digest: code.generator().digest(),
            p: params.p(),
            s: params.s(),
            n,
            rank: k,
            moments,
            distribution,
            profiles,
            max_ranks,
            r_weights,
            r_weights_free,
            ghw,
        })
    }

    fn index(&self, a: &WeakComposition) -> Result<usize> {
        self.profiles
            .iter()
            .position(|x| x == a)
            .ok_or_else(|| Error::IncompleteTable(format!("no row for {a}")))
    }

    fn lookup<'a>(&self, map: &'a BTreeMap<(usize, usize), BigUint>, a: &WeakComposition, j: usize) -> Result<&'a BigUint> {
        let i = self.index(a)?;
        map.get(&(i, j))
            .ok_or_else(|| Error::IncompleteTable(format!("no entry for ({a}, {j})")))
    }

    /// `B_a^{(j)}`.
    pub fn moment(&self, a: &WeakComposition, j: usize) -> Result<&BigUint> {
        self.lookup(&self.moments, a, j)
    }

    /// `W_a^{(j)}`.
    pub fn distribution(&self, a: &WeakComposition, j: usize) -> Result<&BigUint> {
        self.lookup(&self.distribution, a, j)
    }

    /// Rows `(a, j, B, W)` in table order.
    pub fn rows(&self) -> impl Iterator<Item = (&WeakComposition, usize, &BigUint, &BigUint)> {
        self.moments.iter().map(move |(&(ai, j), b)| {
            (&self.profiles[ai], j, b, &self.distribution[&(ai, j)])
        })
    }

    /// Checks both inversion identities on every cell, and that the
    /// R-weights increase along the linear extension.
    pub fn check_identities(&self) -> Result<()> {
        for (a, j, b, w) in self.rows() {
            let b_from_w = moments_from_distribution(self, a, j)?;
            if &b_from_w != b {
                return Err(Error::Inconsistent(format!("B at ({a}, {j}): table {b}, from W {b_from_w}")));
            }
            let w_from_b = distribution_from_moments(self, a, j)?;
            if &w_from_b != w {
                return Err(Error::Inconsistent(format!("W at ({a}, {j}): table {w}, from B {w_from_b}")));
            }
        }
        for pair in self.r_weights.windows(2) {
            if pair[0].linear_cmp(&pair[1])? == std::cmp::Ordering::Greater {
                return Err(Error::Inconsistent(format!("d_r decreases: {} then {}", pair[0], pair[1])));
            }
        }
        Ok(())
    }

    /// `a;j;B;W` with `a` comma-joined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a;j;B;W\n");
        for (a, j, b, w) in self.rows() {
            let parts: Vec<String> = a.parts().iter().map(ToString::to_string).collect();
            out.push_str(&format!("{};{j};{b};{w}\n", parts.join(",")));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .rows()
            .map(|(a, j, b, w)| json!({"a": a, "j": j, "B": big_json(b), "W": big_json(w)}))
            .collect();
        json!({
            "digest": self.digest,
            "p": self.p,
            "s": self.s,
            "n": self.n,
            "rank": self.rank,
            "linear_extension": LINEAR_EXTENSION,
            "entries": entries,
            "r_weights": self.r_weights,
            "r_weights_free": self.r_weights_free,
            "ghw": self.ghw,
        })
    }
}

/// Numbers that fit in `u64` stay numbers; larger ones become strings.
pub fn big_json(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// `B_a^{(j)} = Σ_{b ⪯ a} W_b^{(j)} · containing_count(a, b)`.
pub fn moments_from_distribution(table: &InvariantTable, a: &WeakComposition, j: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for b in &table.profiles {
        if b.dominated_by(a)? {
            total += table.distribution(b, j)? * containing_count(a, b)?;
        }
    }
    Ok(total)
}

/// `W_a^{(j)} = Σ_{b ⪯ a} inversion_coefficient(a, b) · B_b^{(j)}`.
pub fn distribution_from_moments(table: &InvariantTable, a: &WeakComposition, j: usize) -> Result<BigUint> {
    let mut total = BigInt::zero();
    for b in &table.profiles {
        if b.dominated_by(a)? {
            total += inversion_coefficient(a, b)? * BigInt::from(table.moment(b, j)?.clone());
        }
    }
    if total.is_negative() {
        return Err(Error::Inconsistent(format!("negative W at ({a}, {j}): {total}")));
    }
    Ok(total.magnitude().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmat::ModMatrix;
    use crate::zmod::ChainRingParams;

    const CAP: u128 = 1_000_000;

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

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(5, 0, 3), big(1));
        assert_eq!(gaussian_binomial(2, 1, 3), big(4));
        assert_eq!(gaussian_binomial(4, 2, 2), big(35));
        assert_eq!(gaussian_binomial(2, 3, 2), big(0));
    }

    #[test]
    fn bracket_values() {
        let a = wc(&[1, 1, 1]);
        assert_eq!(chain_bracket(&a, &a, 3).unwrap(), big(1));
        assert_eq!(chain_bracket(&a, &wc(&[0, 1, 2]), 3).unwrap(), big(4));
        assert_eq!(chain_bracket(&wc(&[0, 2, 1]), &wc(&[0, 1, 2]), 3).unwrap(), big(4));
        assert_eq!(chain_bracket(&wc(&[0, 1, 2]), &a, 3).unwrap(), big(0));
        assert!(chain_bracket(&a, &wc(&[1, 2]), 3).is_err());
    }

    #[test]
    fn moments_worked_example() {
        let c = code(&[&[1, 2, 1], &[0, 3, 0]]);
        let a = wc(&[1, 1, 1]);
        // Every member of the family meets C in a cyclic module of order 3.
        assert_eq!(binomial_moment(&c, &a, 1, CAP).unwrap(), big(6));
        let per: Vec<BigUint> = family(&a, z9(), CAP)
            .unwrap()
            .iter()
            .map(|x| binomial_moment_single(&c, x, 1, CAP).unwrap())
            .collect();
        assert_eq!(per, [1, 1, 1, 1, 1, 1].map(big));
        for x in family(&a, z9(), CAP).unwrap() {
            assert_eq!(binomial_moment_single(&c, &x, 0, CAP).unwrap(), big(1));
        }
    }

    #[test]
    fn distribution_examples() {
        let c = code(&[&[1, 2, 1], &[0, 3, 0]]);
        let a1 = Anticode::new(z9(), vec![0, 1, 2]).unwrap();
        assert_eq!(weight_distribution_single(&c, &a1, 1, CAP).unwrap(), big(0));
        let zero = Anticode::zero(z9(), 3);
        assert_eq!(weight_distribution_single(&c, &zero, 1, CAP).unwrap(), big(0));
        let line = Code::full(z9(), 1);
        let full = Anticode::full(z9(), 1);
        assert_eq!(weight_distribution_single(&line, &full, 1, CAP).unwrap(), big(1));
    }

    #[test]
    fn table_identities() {
        for c in [code(&[&[1, 2, 1], &[0, 3, 0]]), code(&[&[1, 2, 0], &[0, 3, 0]])] {
            let t = InvariantTable::compute(&c, CAP).unwrap();
            t.check_identities().unwrap();
            assert_eq!(t.moment(&wc(&[0, 0, 3]), 0).unwrap(), &big(1));
        }
        let t = InvariantTable::compute(&code(&[&[1, 2, 1], &[0, 3, 0]]), CAP).unwrap();
        assert_eq!(t.moment(&wc(&[1, 1, 1]), 1).unwrap(), &big(6));
        assert!(t.to_csv().starts_with("a;j;B;W\n"));
        assert!(t.to_csv().contains("1,1,1;1;6;"));
    }

    #[test]
    fn pair_counts() {
        let top = wc(&[3, 0, 0]);
        assert_eq!(pair_count(&top, &top, z9(), CAP).unwrap(), big(1));
        assert_eq!(pair_count(&wc(&[1, 1, 1]), &wc(&[0, 1, 2]), z9(), CAP).unwrap(), big(12));
        assert_eq!(pair_count(&wc(&[1, 1, 1]), &wc(&[0, 0, 3]), z9(), CAP).unwrap(), big(6));
    }

    #[test]
    fn rank_identity_examples() {
        let c = code(&[&[1, 2, 1], &[0, 3, 0]]);
        let (l, r) = rank_intersection_identity(&c, &Anticode::full(z9(), 3)).unwrap();
        assert_eq!((l, r), (2, 2));
        let a1 = Anticode::new(z9(), vec![0, 1, 2]).unwrap();
        assert_eq!(rank_intersection_identity(&c, &a1).unwrap(), (1, 1));
        assert_eq!(rank_intersection_identity(&c, &Anticode::zero(z9(), 3)).unwrap(), (0, 0));
    }

    #[test]
    fn free_rank_form_can_fail() {
        let c = code(&[&[1, 3]]);
        let a = Anticode::new(z9(), vec![0, 2]).unwrap();
        assert_eq!(rank_intersection_identity(&c, &a).unwrap(), (1, 0));
        assert_eq!(rank_intersection_by_sum(&c, &a).unwrap(), (1, 1));
    }

    #[test]
    fn r_weight_examples() {
        assert_eq!(r_weight(&Code::full(z9(), 3), 1, CAP).unwrap(), wc(&[0, 1, 2]));
        let c = code(&[&[1, 0, 0], &[0, 3, 0]]);
        assert_eq!(r_weight(&c, 1, CAP).unwrap(), wc(&[0, 1, 2]));
        assert_eq!(r_weight(&c, 2, CAP).unwrap(), wc(&[0, 2, 1]));
        assert_eq!(ghw(&c, 1, CAP).unwrap(), 1);
        assert!(r_weight(&c, 3, CAP).is_err());
        assert!(r_weight(&c, 0, CAP).is_err());
        let t = InvariantTable::compute(&c, CAP).unwrap();
        assert_eq!(t.r_weights, vec![wc(&[0, 1, 2]), wc(&[0, 2, 1])]);
        assert_eq!(t.ghw, vec![1, 2]);
    }
}
