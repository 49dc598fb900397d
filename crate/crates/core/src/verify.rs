//! Suites comparing closed forms with the brute-force oracles. Each check
//! reports how many cases it covered and, on failure, the first
//! counterexample.

use serde::Serialize;

use crate::anticode::{self, Anticode};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::invariants::{self, InvariantTable};
use crate::oracle::{self, PosetOracle};
use crate::wcomp::{self, WeakComposition};
use crate::zmod::{ChainRingParams, Metric};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Runs `cases`, stopping at the first failure. Each case returns `Ok(None)`
/// on success and `Ok(Some(description))` on a counterexample.
fn check<I>(name: &str, cases: I) -> Result<CheckOutcome>
where
    I: IntoIterator<Item = Result<Option<String>>>,
{
    let mut count = 0;
    for case in cases {
        count += 1;
        if let Some(bad) = case? {
            return Ok(CheckOutcome { name: name.into(), passed: false, cases: count, counterexample: Some(bad) });
        }
    }
    Ok(CheckOutcome { name: name.into(), passed: true, cases: count, counterexample: None })
}

fn fail_if(bad: bool, describe: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok(bad.then(describe))
}

/// Lattice operations of `Δ_L(n)` against the tabulated order.
pub fn lattice(len: usize, n: usize, cap: u128) -> Result<Vec<CheckOutcome>> {
    if len == 0 {
        return Err(Error::InvalidParams("a lattice needs at least one part".into()));
    }
    let poset = PosetOracle::new(len, n, cap)?;
    let el = &poset.elements;
    let size = el.len();
    let pairs = || (0..size).flat_map(move |i| (0..size).map(move |j| (i, j)));
    let mut out = Vec::new();

    let listed = wcomp::enumerate(len, n);
    let mut sorted_listed = listed.clone();
    sorted_listed.sort_by(|a, b| a.parts().cmp(b.parts()));
    let mut sorted_oracle = el.clone();
    sorted_oracle.sort_by(|a, b| a.parts().cmp(b.parts()));
    out.push(check(
        "enumeration",
        [fail_if(sorted_listed != sorted_oracle, || format!("{} listed, {} expected", listed.len(), size))],
    )?);

    out.push(check(
        "dominance",
        pairs().map(|(i, j)| {
            let fast = el[i].dominated_by(&el[j])?;
            fail_if(fast != poset.leq(i, j), || format!("{} ⪯ {}", el[i], el[j]))
        }),
    )?);

    out.push(check(
        "join and meet",
        pairs().map(|(i, j)| {
            let join = el[i].join(&el[j])?;
            let meet = el[i].meet(&el[j])?;
            let bj = poset.join(i, j).map(|k| &el[k]);
            let bm = poset.meet(i, j).map(|k| &el[k]);
            fail_if(bj != Some(&join) || bm != Some(&meet), || format!("{} and {}", el[i], el[j]))
        }),
    )?);

    out.push(check(
        "covers",
        (0..size).map(|i| {
            let mut fast = el[i].covers();
            fast.sort_by(|a, b| a.parts().cmp(b.parts()));
            let mut brute: Vec<WeakComposition> = poset.covers(i).into_iter().map(|k| el[k].clone()).collect();
            brute.sort_by(|a, b| a.parts().cmp(b.parts()));
            let count = el[i].parts()[1..].iter().filter(|&&x| x != 0).count();
            fail_if(fast != brute || fast.len() != count, || format!("covers of {}", el[i]))
        }),
    )?);

    out.push(check(
        "distributivity",
        (0..size).flat_map(|i| pairs().map(move |(j, k)| (i, j, k))).map(|(i, j, k)| {
            let (a, b, c) = (&el[i], &el[j], &el[k]);
            let lhs = a.join(&b.meet(c)?)?;
            let rhs = a.join(b)?.meet(&a.join(c)?)?;
            fail_if(lhs != rhs, || format!("{a} ∨ ({b} ∧ {c})"))
        }),
    )?);

    let mu = poset.mobius_table();
    out.push(check(
        "mobius",
        pairs().map(|(i, j)| {
            let closed = if poset.leq(i, j) { wcomp::mobius(&el[i], &el[j])? } else { 0 };
            fail_if(closed != mu[i][j], || format!("μ({}, {}) = {} vs {}", el[i], el[j], closed, mu[i][j]))
        }),
    )?);

    out.push(check(
        "boolean sublattice",
        (0..size).map(|i| {
            let cube = el[i].boolean_sublattice();
            let support = el[i].parts()[1..].iter().filter(|&&x| x != 0).count();
            let mut closed = cube.len() == 1 << support;
            for x in &cube {
                for y in &cube {
                    closed &= cube.contains(&x.join(y)?) && cube.contains(&x.meet(y)?);
                }
            }
            fail_if(!closed, || format!("𝓑({})", el[i]))
        }),
    )?);

    let expected = wcomp::maximal_chain_length(len, n);
    let brute_chains = poset.maximal_chains();
    let fast_chains: Vec<Vec<WeakComposition>> = wcomp::maximal_chains(len, n, cap.max(1 << 20))?.collect();
    out.push(check(
        "maximal chains",
        brute_chains
            .iter()
            .map(|c| fail_if(c.len() != expected + 1, || format!("chain of length {}", c.len() - 1)))
            .chain(std::iter::once(fail_if(fast_chains.len() != brute_chains.len(), || {
                format!("{} chains listed, {} found by search", fast_chains.len(), brute_chains.len())
            }))),
    )?);

    out.push(check(
        "anti-isomorphism",
        pairs().map(|(i, j)| {
            let flipped = el[j].reversed().dominated_by(&el[i].reversed())?;
            fail_if(flipped != poset.leq(i, j), || format!("{} and {}", el[i], el[j]))
        }),
    )?);

    out.push(check(
        "linear extension",
        pairs().map(|(i, j)| {
            let bad = i != j && poset.leq(i, j) && el[i].linear_cmp(&el[j])? != std::cmp::Ordering::Less;
            fail_if(bad, || format!("{} before {}", el[j], el[i]))
        }),
    )?);

    Ok(out)
}

/// Bracket formula against submodule censuses of every anticode-shaped
/// parent of size at most `cap`.
pub fn counting(params: ChainRingParams, n: usize, cap: u128) -> Result<Vec<CheckOutcome>> {
    let s = params.s() as usize;
    let profiles = wcomp::enumerate(s + 1, n);
    let mut cases = Vec::new();
    for a in &profiles {
        let parent = anticode::canonical_generator(a, params)?;
        if parent.cardinality().is_none_or(|c| c > cap) {
            continue;
        }
        let census = oracle::enumerate_submodules(&parent, cap)?;
        for b in &profiles {
            let bracket = invariants::chain_bracket(a, b, params.p())?;
            let counted = census.count_extended(b);
            cases.push(fail_if(bracket != counted.into(), || {
                format!("[{a} over {b}]: bracket {bracket}, census {counted}")
            }));
        }
    }
    let mut out = vec![check("bracket = census", cases)?];

    let full_size = params.modulus() as u128;
    if full_size.checked_pow(n as u32).is_some_and(|c| c <= cap) {
        let codes = oracle::enumerate_codes(n, params, cap)?;
        let top = WeakComposition::top(s + 1, n);
        let mut total = num_bigint::BigUint::from(0u8);
        for b in &profiles {
            total += invariants::chain_bracket(&top, b, params.p())?;
        }
        out.push(check(
            "code census size",
            [fail_if(total != codes.len().into(), || format!("{} codes, brackets sum to {total}", codes.len()))],
        )?);
    }
    Ok(out)
}

/// Anticode bounds, the Lee characterization, hulls and duals over every
/// code of length `n`.
pub fn anticodes(params: ChainRingParams, n: usize, cap: u128) -> Result<Vec<CheckOutcome>> {
    anticodes_on(params, n, &oracle::enumerate_codes(n, params, cap)?, cap)
}

/// [`anticodes`] restricted to the given codes of length `n`.
pub fn anticodes_on(params: ChainRingParams, n: usize, codes: &[Code], cap: u128) -> Result<Vec<CheckOutcome>> {
    let all_anticodes = oracle::enumerate_anticodes(n, params, cap)?;
    let element_sets: Vec<_> = codes.iter().map(|c| oracle::matrix_elements(c.generator())).collect();
    let anticode_sets: Vec<_> = all_anticodes.iter().map(oracle::anticode_elements).collect();
    let mut out = Vec::new();

    out.push(check(
        "hamming and homogeneous bounds",
        codes.iter().zip(&element_sets).map(|(c, e)| {
            let h = oracle::max_weight(&params, e, Metric::Hamming);
            let g = oracle::max_weight(&params, e, Metric::Homogeneous);
            fail_if(
                h < anticode::hamming_bound(c.rank()) || g < anticode::hom_bound_scaled(c.rank(), &params),
                || format!("code\n{c}"),
            )
        }),
    )?);

    if params.p() != 2 {
        out.push(check(
            "lee bound",
            codes.iter().zip(&element_sets).map(|(c, e)| {
                let w = oracle::max_weight(&params, e, Metric::Lee);
                fail_if(w < anticode::lee_bound(c.subtype(), &params)?, || format!("code\n{c}"))
            }),
        )?);

        // Both sides of the characterization, each computed without the other.
        out.push(check(
            "lee characterization",
            codes.iter().zip(&element_sets).map(|(c, e)| {
                let meets = oracle::max_weight(&params, e, Metric::Lee) == anticode::lee_bound(c.subtype(), &params)?;
                let is_anticode = anticode_sets.iter().any(|a| a == e);
                fail_if(meets != is_anticode, || format!("meets bound {meets}, anticode {is_anticode}:\n{c}"))
            }),
        )?);

        out.push(check(
            "lee optimality test",
            codes.iter().map(|c| {
                let verdict = anticode::is_optimal(c, Metric::Lee, cap.max(1 << 20))?;
                fail_if(verdict != anticode::is_structurally_canonical(c)?, || format!("code\n{c}"))
            }),
        )?);
    }

    out.push(check(
        "hull",
        codes.iter().zip(&element_sets).map(|(c, e)| {
            let hull = Anticode::hull(c);
            let expected = oracle::column_valuations(&params, n, e);
            let minimal = all_anticodes.iter().zip(&anticode_sets).all(|(a, set)| {
                !e.is_subset(set) || a.contains(&hull).unwrap_or(false)
            });
            fail_if(hull.exponents() != expected.as_slice() || !minimal, || format!("hull of\n{c}"))
        }),
    )?);

    out.push(check(
        "containment",
        all_anticodes.iter().zip(&anticode_sets).flat_map(|(a, sa)| {
            all_anticodes.iter().zip(&anticode_sets).map(move |(b, sb)| {
                fail_if(a.contains(b)? != sb.is_subset(sa), || format!("{a} ⊇ {b}"))
            })
        }),
    )?);

    out.push(check(
        "anticode duality",
        all_anticodes.iter().map(|a| {
            let dual = a.dual();
            let ok = dual.to_code() == a.to_code().dual() && dual.extended_subtype() == a.extended_subtype().reversed();
            fail_if(!ok, || format!("dual of {a}"))
        }),
    )?);

    out.push(check(
        "code duality",
        codes.iter().map(|c| {
            let d = c.dual();
            let mut expected = vec![n - c.rank()];
            expected.extend(c.subtype()[1..].iter().rev());
            fail_if(d.dual() != *c || d.subtype() != expected.as_slice(), || format!("dual of\n{c}"))
        }),
    )?);
    Ok(out)
}

/// Identities of the invariant layer over every code of length `n`.
pub fn invariants_suite(params: ChainRingParams, n: usize, cap: u128) -> Result<Vec<CheckOutcome>> {
    invariants_on(params, n, &oracle::enumerate_codes(n, params, cap)?, cap)
}

/// [`invariants_suite`] restricted to the given codes of length `n`.
pub fn invariants_on(params: ChainRingParams, n: usize, codes: &[Code], cap: u128) -> Result<Vec<CheckOutcome>> {
    let all_anticodes = oracle::enumerate_anticodes(n, params, cap)?;
    let s = params.s() as usize;
    let profiles = wcomp::enumerate(s + 1, n);
    let mut out = Vec::new();

    out.push(check(
        "pair count",
        profiles.iter().flat_map(|a| {
            profiles.iter().map(move |b| {
                let formula = invariants::pair_count_formula(a, b)?;
                let direct = invariants::pair_count_enumerated(a, b, params, cap)?;
                fail_if(formula != direct, || format!("({a}, {b}): {formula} vs {direct}"))
            })
        }),
    )?);

    out.push(check(
        "rank duality",
        codes.iter().flat_map(|c| {
            all_anticodes.iter().map(move |a| {
                let (lhs, rhs) = invariants::rank_intersection_by_sum(c, a)?;
                fail_if(lhs != rhs, || format!("{lhs} vs {rhs} for {a} and\n{c}"))
            })
        }),
    )?);

    out.push(check(
        "inversion identities",
        codes.iter().map(|c| match InvariantTable::compute(c, cap)?.check_identities() {
            Ok(()) => Ok(None),
            Err(Error::Inconsistent(msg)) => Ok(Some(format!("{msg}\n{c}"))),
            Err(e) => Err(e),
        }),
    )?);

    if params.p() != 2 {
        out.push(check(
            "generalized hamming weights",
            codes.iter().map(|c| {
                let mut previous = 0;
                for r in 1..=c.rank() {
                    let fast = invariants::ghw(c, r, cap)?;
                    let brute = min_support_of_rank(c, r, cap)?;
                    if fast != brute || fast <= previous {
                        return Ok(Some(format!("r = {r}: {fast} vs {brute}\n{c}")));
                    }
                    previous = fast;
                }
                Ok(None)
            }),
        )?);
    }

    out.push(check(
        "r-weights increase",
        codes.iter().map(|c| {
            let seq = (1..=c.rank()).map(|r| invariants::r_weight(c, r, cap)).collect::<Result<Vec<_>>>()?;
            for w in seq.windows(2) {
                if w[0].linear_cmp(&w[1])? == std::cmp::Ordering::Greater {
                    return Ok(Some(format!("{} then {}\n{c}", w[0], w[1])));
                }
            }
            Ok(None)
        }),
    )?);
    Ok(out)
}

/// `min |supp D|` over rank-`r` subcodes `D ≤ C`, by census.
pub fn min_support_of_rank(code: &Code, r: usize, cap: u128) -> Result<usize> {
    let census = oracle::enumerate_submodules(code.generator(), cap)?;
    census
        .modules
        .iter()
        .filter(|e| e.rank == r)
        .map(|e| oracle::hamming_support_size(&oracle::matrix_elements(&e.matrix)))
        .min()
        .ok_or_else(|| Error::OutOfRange(format!("no subcode of rank {r}")))
}

/// True when every outcome passed.
pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}
