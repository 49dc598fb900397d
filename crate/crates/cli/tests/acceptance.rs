//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` state claims that exhaustive
//! computation refutes. They print FAIL with the counterexample and do not
//! fail the run; any other failure does.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use anticode_core::anticode::{self as ac, Anticode};
use anticode_core::invariants::{self, InvariantTable};
use anticode_core::oracle::{self, PosetOracle};
use anticode_core::wcomp::{self, WeakComposition};
use anticode_core::{verify, ChainRingParams, Code, Metric, ModMatrix};
use num_bigint::{BigInt, BigUint};

const KNOWN_FAILURES: [u32; 2] = [10, 13];
const CAP: u128 = 729;

type Verdict = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn z9() -> ChainRingParams {
    ChainRingParams::new(3, 2).unwrap()
}

fn wc(parts: &[usize]) -> WeakComposition {
    WeakComposition::new(parts.to_vec())
}

fn code(rows: &[&[u64]]) -> Code {
    let m = ModMatrix::new(z9(), rows[0].len(), rows.iter().map(|r| r.to_vec()).collect()).unwrap();
    Code::new(&m)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn z9_codes(n: usize) -> Vec<Code> {
    oracle::enumerate_codes(n, z9(), CAP).unwrap()
}

fn c1_listing() -> Verdict {
    let listed: HashSet<WeakComposition> = [
        [4, 0, 0], [0, 4, 0], [0, 0, 4], [1, 3, 0], [1, 0, 3],
        [0, 1, 3], [2, 2, 0], [2, 0, 2], [0, 2, 2], [3, 1, 0],
        [3, 0, 1], [0, 3, 1], [1, 1, 2], [1, 2, 1], [2, 1, 1],
    ]
    .iter()
    .map(|p| wc(p))
    .collect();
    let got = wcomp::enumerate(3, 4);
    ensure(got.len() == 15, || format!("|Δ_3(4)| = {}", got.len()))?;
    let set: HashSet<_> = got.into_iter().collect();
    ensure(set == listed, || "enumeration differs from the listing".into())?;
    Ok("|Δ_3(4)| = 15, set matches".into())
}

fn c2_lattice_oracle() -> Verdict {
    let mut pairs = 0usize;
    let mut triples = 0usize;
    for (len, n) in [(3, 3), (3, 4), (4, 3)] {
        let o = PosetOracle::new(len, n, 1_000).map_err(e)?;
        let els = &o.elements;
        for (i, a) in els.iter().enumerate() {
            let ups: HashSet<_> = a.covers().into_iter().collect();
            let brute: HashSet<_> = o.covers(i).into_iter().map(|k| els[k].clone()).collect();
            ensure(ups == brute, || format!("covers of {a} differ"))?;
            for (j, b) in els.iter().enumerate() {
                pairs += 1;
                let join = &els[o.join(i, j).ok_or("no LUB")?];
                let meet = &els[o.meet(i, j).ok_or("no GLB")?];
                ensure(&a.join(b).map_err(e)? == join, || format!("join {a} {b}"))?;
                ensure(&a.meet(b).map_err(e)? == meet, || format!("meet {a} {b}"))?;
                for c in els {
                    triples += 1;
                    let lhs = a.meet(&b.join(c).map_err(e)?).map_err(e)?;
                    let rhs = a.meet(b).map_err(e)?.join(&a.meet(c).map_err(e)?).map_err(e)?;
                    ensure(lhs == rhs, || format!("distributivity fails at {a} {b} {c}"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {triples} triples"))
}

/// The closed form with the exponent `Σ_j (b_j - a_j)`, which is 0
/// whenever both compositions have the same sum.
fn mobius_sum_exponent(a: &WeakComposition, b: &WeakComposition) -> i64 {
    if !a.boolean_sublattice().contains(b) {
        return 0;
    }
    let d: i64 = a.parts().iter().zip(b.parts()).map(|(x, y)| *y as i64 - *x as i64).sum();
    if d % 2 == 0 { 1 } else { -1 }
}

fn c3_mobius() -> Verdict {
    let mut intervals = 0usize;
    let mut rejected = 0usize;
    for (len, n) in [(3, 3), (4, 3)] {
        let o = PosetOracle::new(len, n, 1_000).map_err(e)?;
        let table = o.mobius_table();
        for (i, a) in o.elements.iter().enumerate() {
            for (j, b) in o.elements.iter().enumerate() {
                if !o.leq(i, j) {
                    continue;
                }
                intervals += 1;
                let closed = wcomp::mobius(a, b).map_err(e)?;
                ensure(closed == table[i][j], || format!("μ({a}, {b}) = {closed}, recursion {}", table[i][j]))?;
                if mobius_sum_exponent(a, b) != table[i][j] {
                    rejected += 1;
                }
            }
        }
    }
    ensure(rejected > 0, || "sum-of-differences exponent was never wrong".into())?;
    Ok(format!("{intervals} intervals; sum-of-differences exponent wrong on {rejected}"))
}

fn c4_chains() -> Verdict {
    let expected = wcomp::maximal_chain_length(4, 3);
    ensure(expected == 9, || format!("closed form length {expected}"))?;
    let o = PosetOracle::new(4, 3, 1_000).map_err(e)?;
    let dfs = o.maximal_chains();
    ensure(dfs.iter().all(|c| c.len() == 10), || "a DFS chain has length other than 9".into())?;
    let fast: Vec<_> = wcomp::maximal_chains(4, 3, 1_000_000).map_err(e)?.collect();
    ensure(fast.len() == dfs.len(), || format!("{} chains vs {} by DFS", fast.len(), dfs.len()))?;
    ensure(fast.iter().all(|c| c.len() == 10), || "a chain has length other than 9".into())?;
    Ok(format!("{} chains, all of length 9 (12 rejected)", dfs.len()))
}

fn c5_anti_isomorphism() -> Verdict {
    let els = wcomp::enumerate(3, 4);
    for a in &els {
        for b in &els {
            let fwd = a.dominated_by(b).map_err(e)?;
            let back = b.reversed().dominated_by(&a.reversed()).map_err(e)?;
            ensure(fwd == back, || format!("reversal fails on {a}, {b}"))?;
        }
    }
    Ok(format!("{} pairs", els.len() * els.len()))
}

fn c6_lee_example() -> Verdict {
    let bound = ac::lee_bound(&[1, 1], &z9()).map_err(e)?;
    ensure(bound == 7, || format!("bound {bound}"))?;
    let c = code(&[&[1, 2, 0], &[0, 3, 0]]);
    let w = c.max_weight(Metric::Lee, CAP).map_err(e)?;
    ensure(w == 8, || format!("max Lee weight {w}"))?;
    ensure(c.contains(&[4, 5, 0]).map_err(e)?, || "(4,5,0) not in C".into())?;
    ensure(Metric::Lee.weight(&z9(), &[4, 5, 0]) == 8, || "wt(4,5,0) ≠ 8".into())?;
    let a = code(&[&[1, 0, 0], &[0, 3, 0]]);
    let wa = a.max_weight(Metric::Lee, CAP).map_err(e)?;
    ensure(wa == 7, || format!("canonical anticode reaches {wa}"))?;
    Ok("bound 7; 8 via (4,5,0); canonical attains 7".into())
}

fn c7_lee_characterization() -> Verdict {
    let codes = z9_codes(2);
    let mut optimal = 0;
    for c in &codes {
        let elements = oracle::matrix_elements(c.generator());
        let w = oracle::max_weight(c.params(), &elements, Metric::Lee);
        let meets = w == ac::lee_bound(c.subtype(), c.params()).map_err(e)?;
        let canonical = ac::is_structurally_canonical(c).map_err(e)?;
        ensure(meets == canonical, || format!("bound met {meets}, canonical {canonical} for\n{c}"))?;
        optimal += meets as usize;
    }
    Ok(format!("{} codes, {optimal} optimal", codes.len()))
}

fn c8_hamming_homogeneous() -> Verdict {
    let p = z9();
    for c in z9_codes(2) {
        let k = c.rank();
        let h = c.max_weight(Metric::Hamming, CAP).map_err(e)?;
        let hom = c.max_weight(Metric::Homogeneous, CAP).map_err(e)?;
        ensure(h as usize >= k, || format!("Hamming {h} < {k}"))?;
        ensure(hom >= ac::hom_bound_scaled(k, &p), || format!("homogeneous {hom} below bound"))?;
    }
    let ex = code(&[&[1, 2, 0], &[0, 3, 0]]);
    let h = ex.max_weight(Metric::Hamming, CAP).map_err(e)?;
    ensure(h == 2, || format!("example Hamming max {h}"))?;
    let hom = ex.max_weight(Metric::Homogeneous, CAP).map_err(e)?;
    ensure(hom == 6, || format!("example scaled homogeneous max {hom}"))?;
    ensure(Metric::Homogeneous.weight(&p, &[3, 3, 0]) == 6, || "(3,3,0) is not maximal".into())?;
    Ok("census bounds hold; example w_H = 2, w_Hom = 3 (scaled 6)".into())
}

fn c9_counting() -> Verdict {
    let bracket = invariants::chain_bracket(&wc(&[1, 1, 1]), &wc(&[0, 1, 2]), 3).map_err(e)?;
    ensure(bracket == BigUint::from(4u32), || format!("bracket {bracket}"))?;
    let parent = code(&[&[1, 2, 0], &[0, 3, 0]]);
    let census = oracle::enumerate_submodules(parent.generator(), CAP).map_err(e)?;
    let found: BTreeSet<_> = census
        .modules
        .iter()
        .filter(|m| m.subtype == [0, 1])
        .map(|m| m.matrix.rows().to_vec())
        .collect();
    let listed: BTreeSet<_> =
        [[3, 0, 0], [0, 3, 0], [3, 3, 0], [3, 6, 0]].iter().map(|v| code(&[v]).generator().rows().to_vec()).collect();
    ensure(found == listed, || format!("census found {} rank-1 socle subcodes", found.len()))?;
    let mut cases = 0;
    for n in [2, 3] {
        let checks = verify::counting(z9(), n, CAP).map_err(e)?;
        if let Some(bad) = checks.iter().find(|c| !c.passed) {
            return Err(format!("{}: {:?}", bad.name, bad.counterexample));
        }
        cases += checks.iter().map(|c| c.cases).sum::<usize>();
    }
    Ok(format!("bracket 4, subcodes recovered; {cases} bracket/census cases"))
}

fn c10_invariant_example() -> Verdict {
    let c = code(&[&[1, 2, 1], &[0, 3, 0]]);
    let listed = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]];
    let mut values = Vec::new();
    for exps in listed {
        let a = Anticode::new(z9(), exps.to_vec()).map_err(e)?;
        values.push(invariants::binomial_moment_single(&c, &a, 1, CAP).map_err(e)?);
    }
    let total = invariants::binomial_moment(&c, &wc(&[1, 1, 1]), 1, CAP).map_err(e)?;
    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
    let expected: Vec<BigUint> = [1u32, 1, 0, 0, 1, 1].into_iter().map(BigUint::from).collect();
    if values == expected && total == BigUint::from(4u32) {
        return Ok("B = 4 with (1,1,0,0,1,1)".into());
    }
    let in_a3 = Anticode::new(z9(), listed[2].to_vec()).map_err(e)?.to_code().contains(&[0, 3, 0]).map_err(e)?;
    Err(format!(
        "computed B = {total} with ({}); (0,3,0) lies in C, A_3 ({in_a3}) and A_4, so C ∩ A_3 ≠ 0",
        shown.join(",")
    ))
}

/// `Σ_{b ⪯ a} μ(b, a) B_b Π C(n - â_{i-1}, a_i) C(â_i - b̂_{i-1}, b_i)`.
fn full_weight_distribution(t: &InvariantTable, a: &WeakComposition, j: usize) -> Result<BigInt, String> {
    let mut acc = BigInt::from(0);
    for b in wcomp::enumerate(a.len(), a.total()) {
        if !b.dominated_by(a).map_err(e)? {
            continue;
        }
        let mu = wcomp::mobius(&b, a).map_err(e)?;
        if mu == 0 {
            continue;
        }
        let pc = invariants::pair_count_formula(a, &b).map_err(e)?;
        acc += BigInt::from(mu) * BigInt::from(t.moment(&b, j).map_err(e)?.clone()) * BigInt::from(pc);
    }
    Ok(acc)
}

fn c11_inversion() -> Verdict {
    let mut rows = 0;
    let mut full_off = 0;
    for c in [code(&[&[1, 2, 1], &[0, 3, 0]]), code(&[&[1, 2, 0], &[0, 3, 0]])] {
        let t = InvariantTable::compute(&c, CAP).map_err(e)?;
        t.check_identities().map_err(e)?;
        for (a, j, b, w) in t.rows() {
            rows += 1;
            ensure(&invariants::moments_from_distribution(&t, a, j).map_err(e)? == b, || format!("B at {a},{j}"))?;
            ensure(&invariants::distribution_from_moments(&t, a, j).map_err(e)? == w, || format!("W at {a},{j}"))?;
            if full_weight_distribution(&t, a, j)? != BigInt::from(w.clone()) {
                full_off += 1;
            }
        }
    }
    Ok(format!("{rows} (a, j) rows reproduced; full pair-count weighting off on {full_off}"))
}

fn c12_pair_count() -> Verdict {
    let els = wcomp::enumerate(3, 3);
    let mut pairs = 0;
    for a in &els {
        for b in &els {
            let f = invariants::pair_count_formula(a, b).map_err(e)?;
            let d = invariants::pair_count_enumerated(a, b, z9(), CAP).map_err(e)?;
            ensure(f == d, || format!("({a}, {b}): formula {f}, enumeration {d}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn c13_rank_duality() -> Verdict {
    let anticodes = oracle::enumerate_anticodes(2, z9(), CAP).map_err(e)?;
    let mut pairs = 0;
    let mut bad = Vec::new();
    for c in z9_codes(2) {
        for a in &anticodes {
            pairs += 1;
            let (l, r) = invariants::rank_intersection_by_sum(&c, a).map_err(e)?;
            ensure(l == r, || format!("sum form fails for {a}"))?;
            let (l, r) = invariants::rank_intersection_identity(&c, a).map_err(e)?;
            if l != r {
                bad.push(format!("C = <{:?}>, A = {a}: {l} vs {r}", c.generator().rows()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{pairs} pairs"))
    } else {
        Err(format!("{} of {pairs} pairs violate it, e.g. {}; n - freerk(C⊥ + A⊥) holds for all", bad.len(), bad[0]))
    }
}

fn c14_r_weights() -> Verdict {
    let codes = z9_codes(2);
    let mut checked = 0;
    for c in &codes {
        let mut prev: Option<WeakComposition> = None;
        let mut prev_ghw = 0;
        for r in 1..=c.rank() {
            let d = invariants::r_weight(c, r, CAP).map_err(e)?;
            if let Some(p) = &prev {
                ensure(p.linear_cmp(&d).map_err(e)?.is_le(), || format!("d_r decreases at r = {r}\n{c}"))?;
            }
            prev = Some(d);
            let g = invariants::ghw(c, r, CAP).map_err(e)?;
            let brute = verify::min_support_of_rank(c, r, CAP).map_err(e)?;
            ensure(g == brute, || format!("ghw {g} vs brute {brute} at r = {r}\n{c}"))?;
            ensure(g > prev_ghw, || format!("ghw not increasing at r = {r}\n{c}"))?;
            prev_ghw = g;
            checked += 1;
        }
    }
    Ok(format!("{} codes, {checked} values of r", codes.len()))
}

fn c15_determinism() -> Verdict {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let c1 = dir.join("acceptance_c1.txt");
    let c2 = dir.join("acceptance_c2.txt");
    std::fs::write(&c1, "3 2 3\n1 2 1\n0 3 0\n").map_err(e)?;
    std::fs::write(&c2, "3 2 3\n1 0 0\n0 3 0\n").map_err(e)?;
    let (c1, c2) = (c1.to_str().unwrap(), c2.to_str().unwrap());
    let commands: Vec<Vec<&str>> = vec![
        vec!["lattice", "--parts", "4", "--sum", "3", "hasse"],
        vec!["lattice", "--parts", "3", "--sum", "4", "mobius", "--format", "csv"],
        vec!["code", c1, "analyze"],
        vec!["code", c2, "optimal"],
        vec!["invariants", c1, "table", "--format", "csv"],
        vec!["invariants", c2, "rweights"],
        vec!["verify", "all", "--p", "3", "--s", "2", "--n", "2", "--sample", "5", "--seed", "7"],
    ];
    for args in &commands {
        let run = || Command::new(env!("CARGO_BIN_EXE_anticode")).args(args).output();
        let (x, y) = (run().map_err(e)?, run().map_err(e)?);
        ensure(x.status.success(), || format!("{args:?} exited {:?}", x.status.code()))?;
        ensure(x.stdout == y.stdout, || format!("{args:?} output differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

fn main() {
    let criteria: [Criterion; 15] = [
        (1, "enumeration of Δ_3(4)", Duration::from_secs(1), c1_listing),
        (2, "lattice operations against brute force", Duration::from_secs(10), c2_lattice_oracle),
        (3, "Möbius closed form", Duration::from_secs(10), c3_mobius),
        (4, "maximal chain length", Duration::from_secs(10), c4_chains),
        (5, "anti-isomorphism by reversal", Duration::from_secs(1), c5_anti_isomorphism),
        (6, "Lee bound worked example", Duration::from_secs(1), c6_lee_example),
        (7, "optimal Lee anticode characterization", Duration::from_secs(60), c7_lee_characterization),
        (8, "Hamming and homogeneous bounds", Duration::from_secs(60), c8_hamming_homogeneous),
        (9, "counting by chain brackets", Duration::from_secs(60), c9_counting),
        (10, "binomial moment example", Duration::from_secs(10), c10_invariant_example),
        (11, "inversion identities", Duration::from_secs(120), c11_inversion),
        (12, "anticode pair count", Duration::from_secs(10), c12_pair_count),
        (13, "rank duality with free rank", Duration::from_secs(60), c13_rank_duality),
        (14, "R-weights and generalized Hamming weights", Duration::from_secs(120), c14_r_weights),
        (15, "CLI determinism", Duration::from_secs(120), c15_determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let verdict = f();
        let took = start.elapsed();
        let (passed, detail) = match verdict {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:?}, limit {limit:?}")),
            Err(d) => (false, d),
        };
        let tag = if passed { "PASS" } else { "FAIL" };
        let known = if !passed && KNOWN_FAILURES.contains(&id) { " [known discrepancy]" } else { "" };
        println!("{tag} {id:>2} {name} ({:.3}s): {detail}{known}", took.as_secs_f64());
        if !passed && known.is_empty() {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
