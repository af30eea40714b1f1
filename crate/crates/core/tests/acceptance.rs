//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use homing_core::code::all_codes;
use homing_core::firings::{
    apply_word, apply_word_with, canonicalize, count_mn, fire_traced, generate_wn, growth_table,
    partition_to_word, rewrite_normal_forms, short_firing_image, valid_words, word_to_partition,
    RestrictedWord, SetPartition,
};
use homing_core::height::{height, stage1_longest, HeightTable};
use homing_core::strategies::{
    min_placement_table, min_placements, random_homing_mean, strategy_steps, Homing,
};
use homing_core::verify;
use homing_core::{Code, FiringWord, Permutation, Strategy, Symbol};

/// |M_n| for n = 1..=10 as published.
const MN: [u64; 10] = [1, 1, 2, 5, 16, 62, 280, 1440, 8296, 52864];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn tables(nmax: usize) -> Vec<HeightTable> {
    (1..=nmax)
        .map(|n| HeightTable::build(n, nmax).unwrap())
        .collect()
}

fn c1_max_height(tables: &[HeightTable], elapsed: Duration) -> Outcome {
    for t in tables {
        let n = t.n();
        ensure(t.max() as u64 == (1u64 << (n - 1)) - 1, || {
            format!("n = {n}: max {}", t.max())
        })?;
    }
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "n = 1..={}, tables built in {:.1?}",
        tables.len(),
        elapsed
    ))
}

fn c2_mn_sequence(tables: &[HeightTable]) -> Outcome {
    for t in tables.iter().skip(1) {
        let n = t.n();
        let members = t.worst_case().len() as u64;
        ensure(members == MN[n - 1], || {
            format!("n = {n}: {members} members")
        })?;
    }
    for n in 2..=10 {
        let c = count_mn(n).map_err(|e| e.to_string())?;
        ensure(c == MN[n - 1].into(), || format!("count_mn({n}) = {c}"))?;
    }
    Ok(format!(
        "enumerated n = 2..={}, recurrence n = 2..=10",
        tables.len()
    ))
}

fn c3_tau(tables: &[HeightTable]) -> Outcome {
    for n in 2..=9 {
        let tau = Permutation::tau(n).unwrap();
        let h = height(&tau).map_err(|e| e.to_string())?;
        ensure(h == 1 << (n - 2), || format!("h(tau_{n}) = {h}"))?;
        ensure(tables[n - 1].get(&tau) == h, || {
            format!("table disagrees at n = {n}")
        })?;
    }
    Ok("h(tau_n) = 2^(n-2), n = 2..=9".into())
}

/// Moves the entry at 1-based position `from` to position `to`.
fn list_move(v: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut out = v.to_vec();
    let x = out.remove(from - 1);
    out.insert(to - 1, x);
    out
}

fn c4_hanoi() -> Outcome {
    let start = Instant::now();
    for n in 2..=20 {
        let mut h = Homing::new(Permutation::rotation(n).unwrap(), Strategy::LeftmostNotHome);
        let mut prev = h.current().values().to_vec();
        let mut steps = 0u64;
        while let Some(m) = h.advance() {
            let v = m.value;
            let from = prev.iter().position(|&x| x == v).unwrap() + 1;
            ensure(from != v, || {
                format!("n = {n}, step {steps}: {v} already home")
            })?;
            let expected = list_move(&prev, from, v);
            ensure(h.current().values() == expected.as_slice(), || {
                format!("n = {n}, step {steps}: illegal move of {v}")
            })?;
            prev = expected;
            steps += 1;
        }
        ensure(steps == (1 << (n - 1)) - 1, || {
            format!("n = {n}: {steps} steps")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("n = 2..=20, 2^(n-1)-1 legal steps, {elapsed:.1?}"))
}

fn lis_quadratic(v: &[usize]) -> usize {
    let mut best = vec![1; v.len()];
    for i in 0..v.len() {
        for j in 0..i {
            if v[j] < v[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

fn c5_fast_homing() -> Outcome {
    let strategies = [
        Strategy::SmallestFirst,
        Strategy::LargestFirst,
        Strategy::AlternatingExtremal,
    ];
    let mut checked = 0u64;
    for n in 1..=8 {
        let table = min_placement_table(n, 8).map_err(|e| e.to_string())?;
        for q in Permutation::all(n) {
            for s in strategies {
                let steps = strategy_steps(&q, s) as usize;
                ensure(steps < n, || format!("{s} on {q}: {steps}"))?;
            }
            let min = table[q.rank() as usize] as usize;
            ensure(min + lis_quadratic(q.values()) >= n, || {
                format!("{q}: min {min} below n - LIS")
            })?;
            if n >= 2 {
                ensure((min == n - 1) == q.is_reverse(), || {
                    format!("{q}: min {min}")
                })?;
            }
            checked += 1;
        }
    }
    let m = min_placements(&p("4,1,3,5,2")).map_err(|e| e.to_string())?;
    ensure(m == 3, || format!("min_placements(4,1,3,5,2) = {m}"))?;
    Ok(format!(
        "{checked} permutations, n <= 8; min(4,1,3,5,2) = 3"
    ))
}

fn c6_random() -> Outcome {
    let mut report = Vec::new();
    for n in [8, 12] {
        let est = random_homing_mean(n, 10_000, 2024).map_err(|e| e.to_string())?;
        let margin = est.margin();
        ensure(margin >= 0.0, || {
            format!(
                "n = {n}: mean {} above bound {}",
                est.mean_f64(),
                est.bound()
            )
        })?;
        report.push(format!(
            "n = {n}: mean {:.4} <= {} (margin {margin:.4})",
            est.mean_f64(),
            est.bound()
        ));
    }
    Ok(report.join("; "))
}

/// Weight by the recursion on original indices: repeatedly take the larger
/// of the rightmost `-` (distance from the left end) and the leftmost `+`
/// (distance from the right end), counted among surviving symbols.
fn weight_oracle(s: &[Symbol]) -> u64 {
    let mut alive: Vec<usize> = (0..s.len()).collect();
    let mut total = 0u64;
    loop {
        let minus = alive.iter().rposition(|&i| s[i] == Symbol::Minus);
        let plus = alive.iter().position(|&i| s[i] == Symbol::Plus);
        let dm = minus.map(|r| r as i64).unwrap_or(-1);
        let dp = plus.map(|r| (alive.len() - 1 - r) as i64).unwrap_or(-1);
        if dm < 0 && dp < 0 {
            return total;
        }
        let (r, d) = if dm >= dp {
            (minus.unwrap(), dm)
        } else {
            (plus.unwrap(), dp)
        };
        total += 1 << d;
        alive.remove(r);
    }
}

fn c7_weight_calculus() -> Outcome {
    let mut codes = 0u64;
    for k in 0..=10 {
        for c in all_codes(k) {
            let w = c.weight_u64().unwrap();
            ensure(w == weight_oracle(c.symbols()), || format!("{c}: {w}"))?;
            codes += 1;
        }
    }
    let checks = [
        verify::weight_range(10),
        verify::binary_readings(10),
        verify::tie_break_independence(10),
        verify::block_formula(10),
        verify::zero_append_bound(10),
        verify::marking_increases_weight(10),
    ];
    for r in checks {
        r?;
    }
    Ok(format!(
        "{codes} codes k <= 10: recursion oracle plus six properties, zero failures"
    ))
}

fn c8_displacement_weight() -> Outcome {
    let mut cases = 0u64;
    for n in 2..=7 {
        for q in Permutation::all(n) {
            if q.value_at(1) == 1 || q.value_at(n) == n {
                continue;
            }
            let w = weight_oracle(Code::of(&q).symbols());
            for (m, r) in q.displacement_successors() {
                let wr = weight_oracle(Code::of(&r).symbols());
                ensure(wr > w, || {
                    format!("{q} -({},{})-> {r}: {w} -> {wr}", m.value, m.target)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} displacements, n <= 7, zero failures"))
}

fn c9_stage1() -> Outcome {
    for n in 3..=7 {
        let l = stage1_longest(n, 8).map_err(|e| e.to_string())?;
        ensure(l == (1 << (n - 2)) - 1, || format!("n = {n}: {l}"))?;
    }
    Ok("2^(n-2)-1 for n = 3..=7".into())
}

fn c10_firings(tables: &[HeightTable]) -> Outcome {
    let mut firings = 0u64;
    for n in 2..=9 {
        let words = generate_wn(n).map_err(|e| e.to_string())?;
        let mut image = BTreeSet::new();
        for w in &words {
            let mut cur = Permutation::tau(n).unwrap();
            for &l in &w.letters {
                let (_, k, _) = Code::of(&cur).shape().unwrap();
                let states = fire_traced(&cur, l).map_err(|e| format!("{w}: {e}"))?;
                ensure(states.len() == 1 << (k - 1), || {
                    format!("{w}: {} displacements", states.len())
                })?;
                let mut wt = weight_oracle(Code::of(&cur).symbols());
                for s in &states {
                    let next = weight_oracle(Code::of(s).symbols());
                    ensure(next == wt + 1, || format!("{w}: weight {wt} -> {next}"))?;
                    wt = next;
                }
                cur = states.last().unwrap().clone();
                firings += 1;
            }
            ensure(cur == apply_word(w, n).unwrap(), || {
                format!("{w}: apply_word disagrees")
            })?;
            image.insert(cur);
        }
        ensure(image.len() == words.len(), || {
            format!("n = {n}: not injective")
        })?;
        let worst: BTreeSet<Permutation> = tables[n - 1].worst_case().into_iter().collect();
        ensure(image == worst, || {
            format!("n = {n}: image differs from M_n")
        })?;
    }
    Ok(format!(
        "bijection W_n -> M_n for n = 2..=9; {firings} firings, each step +1"
    ))
}

fn c11_short_firings(tables: &[HeightTable]) -> Outcome {
    for n in 2..=9 {
        let image = short_firing_image(n, 9).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<_> = image.iter().cloned().collect();
        ensure(distinct.len() == 1 << (n - 2), || {
            format!("n = {n}: {} images", distinct.len())
        })?;
        let top = tables[n - 1].max();
        ensure(image.iter().all(|q| tables[n - 1].get(q) == top), || {
            format!("n = {n}: image leaves M_n")
        })?;
    }
    Ok("2^(n-2) distinct members of M_n, n = 2..=9".into())
}

/// Bell numbers B_0..=B_m from Stirling numbers of the second kind.
fn bell_oracle(m: usize) -> Vec<u128> {
    let mut s = vec![vec![0u128; m + 1]; m + 1];
    s[0][0] = 1;
    for i in 1..=m {
        for k in 1..=i {
            s[i][k] = k as u128 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    s.iter().map(|row| row.iter().sum()).collect()
}

fn c12_bell() -> Outcome {
    let bell = bell_oracle(30);
    for n in 2..=10 {
        let words = RestrictedWord::all(n - 2);
        ensure(words.len() as u128 == bell[n - 1], || {
            format!("n = {n}: {} words", words.len())
        })?;
        let mut seen = BTreeSet::new();
        for w in &words {
            let q = word_to_partition(w).map_err(|e| e.to_string())?;
            ensure(q.size() == n - 1, || format!("{w} -> {q}"))?;
            ensure(
                q.blocks().len() == w.to_string().matches('R').count() + 1,
                || format!("{w} -> {q}: block count"),
            )?;
            let back = partition_to_word(&q).map_err(|e| e.to_string())?;
            ensure(&back == w, || format!("{w} -> {q} -> {back}"))?;
            seen.insert(q.to_string());
        }
        let all = SetPartition::all(n - 1);
        ensure(seen.len() == all.len(), || format!("n = {n}: not onto"))?;
        for q in all {
            let back = word_to_partition(&partition_to_word(&q).unwrap()).unwrap();
            ensure(back == q, || format!("{q} does not round-trip"))?;
        }
    }
    let mut fact: u128 = 1;
    for n in 2..=30 {
        fact *= (n - 1) as u128;
        let mn = count_mn(n).map_err(|e| e.to_string())?;
        ensure(
            bell[n - 1] <= u128::try_from(&mn).unwrap_or(u128::MAX),
            || format!("n = {n}: B > |M|"),
        )?;
        ensure(mn <= fact.into(), || {
            format!("n = {n}: |M| = {mn} > (n-1)!")
        })?;
    }
    Ok("round trips and B_(n-1) counts for n = 2..=10; B <= |M| <= (n-1)! for n = 2..=30".into())
}

fn c13_canonical() -> Outcome {
    let w: FiringWord = "L0,R1,R0,L1,R2,R1".parse().unwrap();
    let c = canonicalize(&w).map_err(|e| e.to_string())?;
    ensure(c.to_string() == "R0,L1,R0,R1,R0,L3", || {
        format!("canonical form {c}")
    })?;
    let target = p("7,6,8,1,3,2,5,4");
    for word in [&w, &c] {
        let q = apply_word_with(word, 8, &mut |_| {}).map_err(|e| e.to_string())?;
        ensure(q == target, || format!("{word} gives {q}"))?;
    }
    let mut words = 0u64;
    for len in 0..=6 {
        for v in valid_words(len) {
            let forms = rewrite_normal_forms(&v);
            ensure(forms.len() == 1, || {
                format!("{v}: {} normal forms", forms.len())
            })?;
            let canon = canonicalize(&v).unwrap();
            ensure(forms.contains(&canon) && canon.is_canonical(), || {
                format!("{v}")
            })?;
            if len >= 1 {
                let n = len + 2;
                ensure(
                    apply_word(&v, n).unwrap() == apply_word(&canon, n).unwrap(),
                    || format!("{v} and {canon} reach different permutations"),
                )?;
            }
            words += 1;
        }
    }
    Ok(format!(
        "worked example; confluence over {words} words of length <= 6"
    ))
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn c14_growth() -> Outcome {
    let start = Instant::now();
    let rows = growth_table(80).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    ensure(rows.len() == 79, || format!("{} rows", rows.len()))?;
    for r in &rows {
        // rows agree when the roots tie, e.g. n <= 3
        let eps = 1e-12 * r.factorial_root;
        ensure(
            r.bell_root <= r.mn_root + eps && r.mn_root <= r.factorial_root + eps,
            || {
                format!(
                    "n = {}: {} / {} / {}",
                    r.n, r.bell_root, r.mn_root, r.factorial_root
                )
            },
        )?;
        let oracle = (ln_factorial(r.n - 1) / r.n as f64).exp();
        let rel = (r.factorial_root - oracle).abs() / oracle;
        ensure(rel < 1e-10, || {
            format!("n = {}: factorial root off by {rel:e}", r.n)
        })?;
    }
    let again = growth_table(80).unwrap();
    let same = rows.iter().zip(&again).all(|(a, b)| {
        format!(
            "{:.11e}{:.11e}{:.11e}",
            a.factorial_root, a.mn_root, a.bell_root
        ) == format!(
            "{:.11e}{:.11e}{:.11e}",
            b.factorial_root, b.mn_root, b.bell_root
        )
    });
    ensure(same, || "rows differ across runs".into())?;
    Ok(format!(
        "79 rows in {elapsed:.1?}, ordered, stable to 12 significant digits"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ts = tables(10);
    let built = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        (
            "worst-case height bound",
            Box::new(|| c1_max_height(&ts, built)),
        ),
        ("worst-case counts", Box::new(|| c2_mn_sequence(&ts))),
        ("height of tau", Box::new(|| c3_tau(&ts))),
        ("tower-of-Hanoi run", Box::new(c4_hanoi)),
        ("fast homing", Box::new(c5_fast_homing)),
        ("random homing", Box::new(c6_random)),
        ("weight calculus", Box::new(c7_weight_calculus)),
        (
            "displacement raises weight",
            Box::new(c8_displacement_weight),
        ),
        ("first-stage longest run", Box::new(c9_stage1)),
        ("firing machinery", Box::new(|| c10_firings(&ts))),
        ("short firings", Box::new(|| c11_short_firings(&ts))),
        ("partition bijection and bounds", Box::new(c12_bell)),
        ("canonicalization", Box::new(c13_canonical)),
        ("growth data", Box::new(c14_growth)),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let detail = outcome.unwrap_or_else(|e| {
            failures += 1;
            e
        });
        println!(
            "{status} [{:>2}] {name}: {detail} ({:.2?})",
            i + 1,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
