//! Executable property suites.
//!
//! Each check runs exhaustively up to the given size and reports a
//! counterexample on failure. Suites: `perm`, `code`, `strategies`,
//! `height`, `firings`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::code::{all_codes, Code, Symbol, TieBreak};
use crate::firings::{
    apply_word_with, bell_numbers, canonicalize, factorial_big, fire_traced, generate_wn,
    partition_to_word, rewrite_normal_forms, short_firing_image, valid_words, word_to_partition,
    CountTable, RestrictedWord, SetPartition,
};
use crate::height::{
    code_shape_counterexample, height, longest_displacement_paths, max_height_bound,
    stage1_longest, HeightTable,
};
use crate::perm::Permutation;
use crate::strategies::{
    min_placement_table, smallest_first_steps, strategy_steps, Homing, Strategy,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, counterexample on failure.
    pub detail: String,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}\t{}/{}\t{}", self.suite, self.name, self.detail)
    }
}

pub const SUITES: [&str; 5] = ["perm", "code", "strategies", "height", "firings"];

fn check(
    suite: &'static str,
    name: &'static str,
    outcome: Result<String, String>,
) -> PropertyResult {
    match outcome {
        Ok(detail) => PropertyResult {
            suite,
            name,
            passed: true,
            detail,
        },
        Err(detail) => PropertyResult {
            suite,
            name,
            passed: false,
            detail,
        },
    }
}

/// Runs a named suite (or `all`) up to permutation size `nmax`. Code
/// properties run over codes of length up to `nmax + 3`.
pub fn run_suite(name: &str, nmax: usize) -> Option<Vec<PropertyResult>> {
    let kmax = nmax + 3;
    Some(match name {
        "perm" => perm_suite(nmax),
        "code" => code_suite(kmax, nmax),
        "strategies" => strategies_suite(nmax),
        "height" => height_suite(nmax),
        "firings" => firings_suite(nmax),
        "all" => {
            let mut out = perm_suite(nmax);
            out.extend(code_suite(kmax, nmax));
            out.extend(strategies_suite(nmax));
            out.extend(height_suite(nmax));
            out.extend(firings_suite(nmax));
            out
        }
        _ => return None,
    })
}

fn for_all_perms(
    nmax: usize,
    mut f: impl FnMut(&Permutation) -> Result<u64, String>,
) -> Result<String, String> {
    let mut cases = 0;
    for n in 1..=nmax {
        for p in Permutation::all(n) {
            cases += f(&p)?;
        }
    }
    Ok(format!("{cases} cases, n <= {nmax}"))
}

pub fn perm_suite(nmax: usize) -> Vec<PropertyResult> {
    const S: &str = "perm";
    vec![
        check(
            S,
            "placement-keeps-relative-order",
            placement_keeps_order(nmax),
        ),
        check(S, "placement-displacement-inverse", moves_are_inverse(nmax)),
        check(S, "extremes-placed-once", extremes_stay_home(nmax)),
        check(S, "placement-digraph-acyclic", acyclic(nmax)),
    ]
}

pub fn placement_keeps_order(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        let mut cases = 0;
        for (m, q) in p.placement_successors() {
            let v = m.value;
            let strip = |x: &Permutation| -> Vec<usize> {
                x.values().iter().copied().filter(|&y| y != v).collect()
            };
            if !q.is_home(v) || strip(p) != strip(&q) {
                return Err(format!("placing {v} in {p} gave {q}"));
            }
            cases += 1;
        }
        Ok(cases)
    })
}

pub fn moves_are_inverse(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        let mut cases = 0;
        for (m, q) in p.placement_successors() {
            let back = q
                .displace(m.value, p.position_of(m.value))
                .map_err(|e| e.to_string())?;
            if &back != p {
                return Err(format!(
                    "place {} in {p} then displace back gave {back}",
                    m.value
                ));
            }
            cases += 1;
        }
        for (m, q) in p.displacement_successors() {
            let back = q.place(m.value).map_err(|e| e.to_string())?;
            if &back != p {
                return Err(format!(
                    "displace {} to {} in {p} then place gave {back}",
                    m.value, m.target
                ));
            }
            cases += 1;
        }
        Ok(cases)
    })
}

/// Once 1 (or `n`) is home no placement dislodges it, so each is placed at
/// most once along any placement sequence.
pub fn extremes_stay_home(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        let n = p.len();
        let mut cases = 0;
        for (m, q) in p.placement_successors() {
            for v in [1, n] {
                if p.is_home(v) && !q.is_home(v) {
                    return Err(format!("placing {} in {p} dislodged {v}", m.value));
                }
            }
            cases += 1;
        }
        Ok(cases)
    })
}

pub fn acyclic(nmax: usize) -> Result<String, String> {
    for n in 1..=nmax {
        HeightTable::build(n, nmax).map_err(|e| e.to_string())?;
    }
    Ok(format!("depth-first search found no cycle for n <= {nmax}"))
}

pub fn code_suite(kmax: usize, nmax: usize) -> Vec<PropertyResult> {
    const S: &str = "code";
    vec![
        check(S, "weight-range", weight_range(kmax)),
        check(S, "binary-readings", binary_readings(kmax)),
        check(S, "tie-break-independence", tie_break_independence(kmax)),
        check(S, "block-formula", block_formula(kmax)),
        check(S, "zero-append-bound", zero_append_bound(kmax)),
        check(
            S,
            "marking-increases-weight",
            marking_increases_weight(kmax),
        ),
        check(
            S,
            "displacement-increases-weight",
            displacement_increases_weight(nmax),
        ),
    ]
}

fn w64(c: &Code) -> u64 {
    c.weight_u64().expect("short code")
}

fn codes_up_to(kmax: usize) -> impl Iterator<Item = Code> {
    (0..=kmax).flat_map(all_codes)
}

/// `0 <= w <= 2^k - 1`, zero exactly for all-zero codes, maximal exactly for `+^p -^q`.
pub fn weight_range(kmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for c in codes_up_to(kmax) {
        let w = w64(&c);
        let top = (1u64 << c.len()) - 1;
        if w > top || (w == 0) != c.is_all_zero() || (w == top) != c.is_plus_minus() {
            return Err(format!("code {c} has weight {w}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} codes, length <= {kmax}"))
}

/// Over `{0,+}` the code read left to right is the weight in binary; over
/// `{0,-}` it is the weight read right to left.
pub fn binary_readings(kmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for c in codes_up_to(kmax) {
        let s = c.symbols();
        let k = s.len();
        let expected = if !s.contains(&Symbol::Minus) {
            (0..k)
                .filter(|&i| s[i] == Symbol::Plus)
                .map(|i| 1u64 << (k - 1 - i))
                .sum()
        } else if !s.contains(&Symbol::Plus) {
            (0..k)
                .filter(|&i| s[i] == Symbol::Minus)
                .map(|i| 1u64 << i)
                .sum()
        } else {
            continue;
        };
        if w64(&c) != expected {
            return Err(format!(
                "code {c}: weight {} but binary reading {expected}",
                w64(&c)
            ));
        }
        cases += 1;
    }
    Ok(format!("{cases} single-sign codes, length <= {kmax}"))
}

pub fn tie_break_independence(kmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for c in codes_up_to(kmax) {
        let a = c.weight_with(TieBreak::Minus);
        let b = c.weight_with(TieBreak::Plus);
        if a != b {
            return Err(format!("code {c}: minus-first {a}, plus-first {b}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} codes, length <= {kmax}"))
}

/// For `a = beta +^p gamma -^q delta` with `|beta| = |delta|`, `beta` free of
/// `+`, `delta` free of `-`, `gamma` not starting with `+` nor ending with
/// `-`: `w(a) = w(beta gamma delta) + 2^(p+|gamma|+q+|beta|) - 2^(|gamma|+|beta|)`.
pub fn block_formula(kmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for c in codes_up_to(kmax) {
        let s = c.symbols();
        let k = s.len();
        for b in 0..=k / 2 {
            let (beta, delta) = (&s[..b], &s[k - b..]);
            if beta.contains(&Symbol::Plus) || delta.contains(&Symbol::Minus) {
                continue;
            }
            let middle = &s[b..k - b];
            let m = middle.len();
            for p in 0..=m {
                if middle[..p].iter().any(|&x| x != Symbol::Plus) {
                    break;
                }
                for q in 0..=m - p {
                    if middle[m - q..].iter().any(|&x| x != Symbol::Minus) {
                        break;
                    }
                    let gamma = &middle[p..m - q];
                    if gamma.first() == Some(&Symbol::Plus) || gamma.last() == Some(&Symbol::Minus)
                    {
                        continue;
                    }
                    let reduced: Vec<Symbol> =
                        beta.iter().chain(gamma).chain(delta).copied().collect();
                    let g = gamma.len();
                    let lhs = w64(&c) as i128;
                    let rhs = w64(&Code::new(reduced)) as i128 + (1i128 << (p + g + q + b))
                        - (1i128 << (g + b));
                    if lhs != rhs {
                        return Err(format!(
                            "code {c} with |beta|={b}, p={p}, q={q}: {lhs} != {rhs}"
                        ));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} decompositions, length <= {kmax}"))
}

/// `w(gamma delta 0) <= w(gamma delta) + 2^|delta| - 1` whenever `gamma` has no `+`.
pub fn zero_append_bound(kmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for c in codes_up_to(kmax.saturating_sub(1)) {
        let s = c.symbols();
        let mut extended = s.to_vec();
        extended.push(Symbol::Zero);
        let with_zero = w64(&Code::new(extended));
        let base = w64(&c);
        for split in 0..=s.len() {
            if s[..split].contains(&Symbol::Plus) {
                break;
            }
            let delta_len = s.len() - split;
            if with_zero > base + (1u64 << delta_len) - 1 {
                return Err(format!(
                    "code {c}, |gamma| = {split}: {with_zero} > {base} + 2^{delta_len} - 1"
                ));
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (gamma, delta) pairs, |gamma delta 0| <= {kmax}"
    ))
}

/// Turning any `0` into `+` or `-` strictly increases the weight.
pub fn marking_increases_weight(kmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for c in codes_up_to(kmax) {
        let w = w64(&c);
        for (i, &s) in c.symbols().iter().enumerate() {
            if s != Symbol::Zero {
                continue;
            }
            for mark in [Symbol::Plus, Symbol::Minus] {
                let mut t = c.symbols().to_vec();
                t[i] = mark;
                let marked = Code::new(t);
                if w64(&marked) <= w {
                    return Err(format!("{c} -> {marked}: weight {w} -> {}", w64(&marked)));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} markings, length <= {kmax}"))
}

/// With 1 and `n` both away from their ends, every displacement strictly
/// increases the weight of the code, and stays in that regime.
pub fn displacement_increases_weight(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        let n = p.len();
        if n < 2 || p.value_at(1) == 1 || p.value_at(n) == n {
            return Ok(0);
        }
        let w = w64(&Code::of(p));
        let mut cases = 0;
        for (m, q) in p.displacement_successors() {
            let wq = w64(&Code::of(&q));
            if wq <= w || q.value_at(1) == 1 || q.value_at(n) == n {
                return Err(format!(
                    "displacing {} to {} in {p} gave {q}: weight {w} -> {wq}",
                    m.value, m.target
                ));
            }
            cases += 1;
        }
        Ok(cases)
    })
}

pub fn strategies_suite(nmax: usize) -> Vec<PropertyResult> {
    const S: &str = "strategies";
    let search_max = nmax.min(9);
    vec![
        check(S, "extremal-at-most-n-minus-1", extremal_bound(nmax)),
        check(S, "extremal-stage-monotone", extremal_stage_monotone(nmax)),
        check(S, "lis-lower-bound", lis_lower_bound(search_max)),
        check(S, "reverse-unique-worst-case", reverse_unique(search_max)),
        check(S, "stage-advance-premise", stage_advance_premise(nmax)),
        check(S, "smallest-first-count", smallest_first_count(nmax)),
    ]
}

const EXTREMAL: [Strategy; 3] = [
    Strategy::SmallestFirst,
    Strategy::LargestFirst,
    Strategy::AlternatingExtremal,
];

pub fn extremal_bound(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        for s in EXTREMAL {
            let steps = strategy_steps(p, s);
            if steps as usize > p.len() - 1 {
                return Err(format!("{s} took {steps} steps on {p}"));
            }
        }
        Ok(EXTREMAL.len() as u64)
    })
}

pub fn extremal_stage_monotone(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        for s in EXTREMAL {
            let mut h = Homing::new(p.clone(), s);
            let mut stage = p.stage();
            while h.advance().is_some() {
                let next = h.current().stage();
                if next < stage {
                    return Err(format!(
                        "{s} on {p}: stage fell from {stage} to {next} at {}",
                        h.current()
                    ));
                }
                stage = next;
            }
        }
        Ok(EXTREMAL.len() as u64)
    })
}

pub fn lis_lower_bound(nmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for n in 1..=nmax {
        let table = min_placement_table(n, nmax).map_err(|e| e.to_string())?;
        for p in Permutation::all(n) {
            let min = table[p.rank() as usize] as usize;
            if min < n - p.lis_length() || min > n.saturating_sub(1) {
                return Err(format!("{p}: min placements {min}, LIS {}", p.lis_length()));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} permutations, n <= {nmax}"))
}

pub fn reverse_unique(nmax: usize) -> Result<String, String> {
    for n in 1..=nmax {
        let table = min_placement_table(n, nmax).map_err(|e| e.to_string())?;
        let worst: Vec<Permutation> = table
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d as usize == n - 1)
            .map(|(r, _)| Permutation::unrank(n, r as u64).expect("rank in range"))
            .collect();
        if worst != [Permutation::reverse(n).expect("n >= 1")] {
            return Err(format!(
                "n = {n}: permutations needing n-1 placements: {worst:?}"
            ));
        }
    }
    Ok(format!("n <= {nmax}"))
}

/// In stage `k < n` at least two not-at-home values raise the stage when
/// placed, out of at most `n - k` not-at-home values.
pub fn stage_advance_premise(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        if p.is_identity() {
            return Ok(0);
        }
        let k = p.stage();
        let candidates = p.not_home();
        let raising = p
            .placement_successors()
            .iter()
            .filter(|(_, q)| q.stage() > k)
            .count();
        if raising < 2 || candidates.len() > p.len() - k {
            return Err(format!(
                "{p} in stage {k}: {raising} raising placements of {}",
                candidates.len()
            ));
        }
        Ok(1)
    })
}

pub fn smallest_first_count(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        let sim = strategy_steps(p, Strategy::SmallestFirst) as usize;
        if smallest_first_steps(p) != sim {
            return Err(format!(
                "{p}: predicted {}, simulated {sim}",
                smallest_first_steps(p)
            ));
        }
        Ok(1)
    })
}

pub fn height_suite(nmax: usize) -> Vec<PropertyResult> {
    const S: &str = "height";
    vec![
        check(S, "max-height", max_heights(nmax)),
        check(S, "tau-height", tau_heights(nmax)),
        check(
            S,
            "table-matches-point-queries",
            table_vs_point(nmax.min(6)),
        ),
        check(S, "placement-displacement-duality", duality(nmax.min(6))),
        check(S, "worst-case-code-shape", worst_case_code_shape(nmax)),
        check(S, "stage1-longest", stage1(nmax)),
    ]
}

pub fn max_heights(nmax: usize) -> Result<String, String> {
    for n in 1..=nmax {
        let t = HeightTable::build(n, nmax).map_err(|e| e.to_string())?;
        if t.max() as u64 != max_height_bound(n) {
            return Err(format!("n = {n}: max height {}", t.max()));
        }
    }
    Ok(format!("max height 2^(n-1)-1 for n <= {nmax}"))
}

pub fn tau_heights(nmax: usize) -> Result<String, String> {
    for n in 2..=nmax {
        let h = height(&Permutation::tau(n).expect("n >= 2")).map_err(|e| e.to_string())?;
        if h as u64 != 1 << (n - 2) {
            return Err(format!("n = {n}: h(tau) = {h}"));
        }
    }
    Ok(format!("h(tau_n) = 2^(n-2) for 2 <= n <= {nmax}"))
}

pub fn table_vs_point(nmax: usize) -> Result<String, String> {
    for_all_perms(nmax, |p| {
        let t = HeightTable::build(p.len(), nmax).map_err(|e| e.to_string())?;
        let h = height(p).map_err(|e| e.to_string())?;
        if t.get(p) != h {
            return Err(format!("{p}: table {} vs point {h}", t.get(p)));
        }
        Ok(1)
    })
}

pub fn duality(nmax: usize) -> Result<String, String> {
    for n in 1..=nmax {
        let t = HeightTable::build(n, nmax).map_err(|e| e.to_string())?;
        let fwd = longest_displacement_paths(n, nmax).map_err(|e| e.to_string())?;
        if let Some(r) = (0..fwd.len()).find(|&r| fwd[r] != t.heights()[r]) {
            let p = Permutation::unrank(n, r as u64).expect("rank in range");
            return Err(format!(
                "{p}: height {} vs longest eviction {}",
                t.heights()[r],
                fwd[r]
            ));
        }
    }
    Ok(format!("n <= {nmax}"))
}

pub fn worst_case_code_shape(nmax: usize) -> Result<String, String> {
    let mut converse = Vec::new();
    for n in 2..=nmax {
        let t = HeightTable::build(n, nmax).map_err(|e| e.to_string())?;
        if let Some(p) = t.worst_case().iter().find(|p| !Code::of(p).is_plus_minus()) {
            return Err(format!("{p} is worst-case with code {}", Code::of(p)));
        }
        if n >= 3 {
            if let Some(p) = code_shape_counterexample(&t) {
                converse.push(format!("{p}"));
            }
        }
    }
    let note = match converse.first() {
        Some(p) => format!("converse fails, e.g. {p}"),
        None => "converse held for every n checked".to_string(),
    };
    Ok(format!("n <= {nmax}; {note}"))
}

pub fn stage1(nmax: usize) -> Result<String, String> {
    for n in 2..=nmax {
        let got = stage1_longest(n, nmax + 1).map_err(|e| e.to_string())?;
        if got as u64 != (1 << (n - 2)) - 1 {
            return Err(format!("n = {n}: longest run with 1 untouched is {got}"));
        }
    }
    Ok(format!("2 <= n <= {nmax}"))
}

pub fn firings_suite(nmax: usize) -> Vec<PropertyResult> {
    const S: &str = "firings";
    vec![
        check(S, "firing-step-count-and-increment", firing_steps(nmax)),
        check(S, "words-biject-onto-worst-case", words_biject(nmax)),
        check(
            S,
            "rewrite-confluence",
            confluence(nmax.saturating_sub(1).min(6)),
        ),
        check(
            S,
            "recurrence-matches-language",
            recurrence_vs_language(nmax),
        ),
        check(
            S,
            "partition-bijection",
            partition_bijection(nmax.saturating_sub(2), nmax.saturating_sub(1)),
        ),
        check(S, "short-firings-injective", short_firings(nmax)),
        check(S, "count-bounds", count_bounds(nmax.max(30))),
    ]
}

/// Every firing from `tau_n` along every valid word spends `2^(k-1)`
/// displacements, each raising the weight by exactly one.
pub fn firing_steps(nmax: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for n in 3..=nmax {
        for word in valid_words(n - 2) {
            let mut cur = Permutation::tau(n).expect("n >= 2");
            let mut total = 0u64;
            for &l in &word.letters {
                let k = Code::of(&cur).shape().map(|s| s.1).unwrap_or(0);
                let states = fire_traced(&cur, l).map_err(|e| format!("{word}: {e}"))?;
                if states.len() as u64 != 1 << (k - 1) {
                    return Err(format!(
                        "{word}: firing {l} on {cur} used {} displacements",
                        states.len()
                    ));
                }
                let mut w = w64(&Code::of(&cur));
                for s in &states {
                    let next = w64(&Code::of(s));
                    if next != w + 1 {
                        return Err(format!("{word}: weight {w} -> {next} at {s}"));
                    }
                    w = next;
                }
                total += states.len() as u64;
                cur = states.last().expect("non-empty").clone();
            }
            if total != (1 << (n - 2)) - 1 {
                return Err(format!("{word}: {total} displacements in all"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} words, 3 <= n <= {nmax}"))
}

/// `apply_word` maps `W_n` one-to-one onto the permutations of maximal height.
pub fn words_biject(nmax: usize) -> Result<String, String> {
    for n in 2..=nmax {
        let table = HeightTable::build(n, nmax).map_err(|e| e.to_string())?;
        let words = generate_wn(n).map_err(|e| e.to_string())?;
        let mut image = BTreeSet::new();
        for w in &words {
            let p = apply_word_with(w, n, &mut |_| {}).map_err(|e| format!("{w}: {e}"))?;
            if !image.insert(p.clone()) {
                return Err(format!("n = {n}: {p} reached by two canonical words"));
            }
        }
        let worst: BTreeSet<Permutation> = table.worst_case().into_iter().collect();
        if image != worst {
            let missing = worst.difference(&image).next();
            let extra = image.difference(&worst).next();
            return Err(format!("n = {n}: missing {missing:?}, extra {extra:?}"));
        }
    }
    Ok(format!("2 <= n <= {nmax}"))
}

pub fn confluence(max_len: usize) -> Result<String, String> {
    let mut cases = 0u64;
    for len in 0..=max_len {
        for w in valid_words(len) {
            let forms = rewrite_normal_forms(&w);
            let canon = canonicalize(&w).map_err(|e| e.to_string())?;
            if forms.len() != 1 || !forms.contains(&canon) {
                return Err(format!("{w} has normal forms {forms:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} words, length <= {max_len}"))
}

pub fn recurrence_vs_language(nmax: usize) -> Result<String, String> {
    let counts = CountTable::new(nmax);
    for n in 2..=nmax {
        let words = generate_wn(n).map_err(|e| e.to_string())?;
        for i in 1..n {
            let j = n - i;
            let direct = words
                .iter()
                .filter(|w| w.rights() == i - 1 && w.lefts() == j - 1)
                .count();
            if counts.f(i, j) != BigUint::from(direct) {
                return Err(format!(
                    "f({i},{j}) = {} but {direct} words",
                    counts.f(i, j)
                ));
            }
        }
    }
    Ok(format!("i + j <= {nmax}"))
}

pub fn partition_bijection(max_len: usize, max_set: usize) -> Result<String, String> {
    let bells = bell_numbers(max_len + 1);
    for len in 0..=max_len {
        let words = RestrictedWord::all(len);
        if BigUint::from(words.len()) != bells[len + 1] {
            return Err(format!(
                "length {len}: {} words vs B = {}",
                words.len(),
                bells[len + 1]
            ));
        }
        for w in &words {
            let q = word_to_partition(w).map_err(|e| e.to_string())?;
            let back = partition_to_word(&q).map_err(|e| e.to_string())?;
            if &back != w {
                return Err(format!("{w} -> {q} -> {back}"));
            }
        }
    }
    for m in 1..=max_set {
        for q in SetPartition::all(m) {
            let w = partition_to_word(&q).map_err(|e| e.to_string())?;
            let back = word_to_partition(&w).map_err(|e| e.to_string())?;
            if back != q {
                return Err(format!("{q} -> {w} -> {back}"));
            }
        }
    }
    Ok(format!(
        "words of length <= {max_len}, partitions of sets up to {max_set}"
    ))
}

pub fn short_firings(nmax: usize) -> Result<String, String> {
    for n in 2..=nmax {
        let image = short_firing_image(n, nmax).map_err(|e| e.to_string())?;
        if image.len() != 1 << (n - 2) {
            return Err(format!("n = {n}: {} distinct images", image.len()));
        }
        let table = HeightTable::build(n, nmax).map_err(|e| e.to_string())?;
        let top = max_height_bound(n) as u32;
        if let Some(p) = image.iter().find(|p| table.get(p) != top) {
            return Err(format!("n = {n}: {p} is not worst-case"));
        }
    }
    Ok(format!("2 <= n <= {nmax}"))
}

/// `B_(n-1) <= |M_n| <= (n-1)!`; also reports where `|M_n| < (n-2)!` holds.
pub fn count_bounds(nmax: usize) -> Result<String, String> {
    let counts = CountTable::new(nmax);
    let bells = bell_numbers(nmax);
    let mut weaker_fails = Vec::new();
    for n in 2..=nmax {
        let mn = counts.mn(n);
        if bells[n - 1] > mn || mn > factorial_big(n - 1) {
            return Err(format!(
                "n = {n}: B = {}, |M| = {mn}, (n-1)! = {}",
                bells[n - 1],
                factorial_big(n - 1)
            ));
        }
        if mn >= factorial_big(n.saturating_sub(2)) {
            weaker_fails.push(n);
        }
    }
    Ok(format!(
        "2 <= n <= {nmax}; |M_n| >= (n-2)! for n in {weaker_fails:?}"
    ))
}
