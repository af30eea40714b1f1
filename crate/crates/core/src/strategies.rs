//! Homing strategies, shortest sorting, and random homing.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{Code, Weight};
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, PlacementMove};

/// Largest `n` accepted by the breadth-first searches unless told otherwise.
pub const DEFAULT_SEARCH_CAP: usize = 9;

/// Which not-at-home value to place next.
///
/// `Random` draws uniformly among the not-at-home values (in increasing
/// order) from a ChaCha8 stream seeded with `seed`, so runs are reproducible
/// bit for bit on every platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    SmallestFirst,
    LargestFirst,
    /// Place the smallest or the largest unfinished value, preferring the
    /// one whose remainder is not a reversed run; ties go to the smallest.
    AlternatingExtremal,
    LeftmostNotHome,
    Random {
        seed: u64,
    },
}

impl Strategy {
    pub fn is_extremal(self) -> bool {
        matches!(
            self,
            Strategy::SmallestFirst | Strategy::LargestFirst | Strategy::AlternatingExtremal
        )
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::SmallestFirst => f.write_str("smallest-first"),
            Strategy::LargestFirst => f.write_str("largest-first"),
            Strategy::AlternatingExtremal => f.write_str("alternating-extremal"),
            Strategy::LeftmostNotHome => f.write_str("leftmost"),
            Strategy::Random { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Accepts `smallest-first`, `largest-first`, `alternating-extremal`,
    /// `leftmost` and `random:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smallest-first" | "smallest" => Ok(Strategy::SmallestFirst),
            "largest-first" | "largest" => Ok(Strategy::LargestFirst),
            "alternating-extremal" | "alternating" => Ok(Strategy::AlternatingExtremal),
            "leftmost" | "leftmost-not-home" => Ok(Strategy::LeftmostNotHome),
            other => match other.strip_prefix("random:") {
                Some(seed) => seed.parse().map(|seed| Strategy::Random { seed }).map_err(|_| {
                    Error::Token { token: seed.to_string(), expected: "a 64-bit seed" }
                }),
                None => Err(Error::Token {
                    token: other.to_string(),
                    expected: "smallest-first, largest-first, alternating-extremal, leftmost or random:<seed>",
                }),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub value: usize,
    pub from: usize,
    pub to: usize,
    pub result: Permutation,
    pub code: Code,
    pub weight: Weight,
}

impl TraceStep {
    /// Tab-separated: index, value, source, target, permutation, code, weight.
    pub fn to_line(&self, index: usize) -> String {
        format!(
            "{index}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.value, self.from, self.to, self.result, self.code, self.weight
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub initial: Permutation,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &Permutation {
        self.steps
            .last()
            .map(|s| &s.result)
            .unwrap_or(&self.initial)
    }

    /// One line per step, 1-based step index.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        self.steps.iter().enumerate().map(|(i, s)| s.to_line(i + 1))
    }
}

/// Step-by-step homing under a strategy. Yields one [`TraceStep`] per
/// placement and stops at the identity.
pub struct Homing {
    current: Permutation,
    strategy: Strategy,
    rng: Option<ChaCha8Rng>,
}

impl Homing {
    pub fn new(p: Permutation, strategy: Strategy) -> Self {
        let rng = match strategy {
            Strategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Homing {
            current: p,
            strategy,
            rng,
        }
    }

    pub fn current(&self) -> &Permutation {
        &self.current
    }

    /// Performs the next placement without computing code and weight.
    pub fn advance(&mut self) -> Option<PlacementMove> {
        let value = choose(&self.current, self.strategy, self.rng.as_mut())?;
        self.current = self
            .current
            .place(value)
            .expect("strategies only choose values away from home");
        Some(PlacementMove { value })
    }
}

impl Iterator for Homing {
    type Item = TraceStep;

    fn next(&mut self) -> Option<TraceStep> {
        let from_state = self.current.clone();
        let m = self.advance()?;
        let code = Code::of(&self.current);
        let weight = code.weight();
        Some(TraceStep {
            value: m.value,
            from: from_state.position_of(m.value),
            to: m.value,
            result: self.current.clone(),
            code,
            weight,
        })
    }
}

fn choose(p: &Permutation, strategy: Strategy, rng: Option<&mut ChaCha8Rng>) -> Option<usize> {
    if p.is_identity() {
        return None;
    }
    let v = p.values();
    let n = v.len();
    let lo = (1..=n).find(|&x| v[x - 1] != x)?;
    let hi = (1..=n).rev().find(|&x| v[x - 1] != x)?;
    Some(match strategy {
        Strategy::SmallestFirst => lo,
        Strategy::LargestFirst => hi,
        Strategy::AlternatingExtremal => {
            if leaves_reversed_run(p, lo, hi, lo) && !leaves_reversed_run(p, lo, hi, hi) {
                hi
            } else {
                lo
            }
        }
        Strategy::LeftmostNotHome => v
            .iter()
            .enumerate()
            .find(|&(i, &x)| x != i + 1)?
            .1
            .to_owned(),
        Strategy::Random { .. } => {
            let candidates = p.not_home();
            let rng = rng.expect("random strategy carries a generator");
            candidates[rng.gen_range(0..candidates.len())]
        }
    })
}

/// Whether placing `placed` (one of `lo`, `hi`) leaves the other unfinished
/// values `lo..=hi` in strictly decreasing order with at least two of them.
fn leaves_reversed_run(p: &Permutation, lo: usize, hi: usize, placed: usize) -> bool {
    let rest: Vec<usize> = p
        .values()
        .iter()
        .copied()
        .filter(|&x| x >= lo && x <= hi && x != placed)
        .collect();
    rest.len() >= 2 && rest.windows(2).all(|w| w[0] > w[1])
}

/// Homes `p` under `strategy`, recording every step.
pub fn run_strategy(p: &Permutation, strategy: Strategy) -> Trace {
    Trace {
        initial: p.clone(),
        steps: Homing::new(p.clone(), strategy).collect(),
    }
}

/// Number of placements `strategy` needs on `p`.
pub fn strategy_steps(p: &Permutation, strategy: Strategy) -> u64 {
    let mut h = Homing::new(p.clone(), strategy);
    let mut steps = 0;
    while h.advance().is_some() {
        steps += 1;
    }
    steps
}

/// Exact number of placements made by smallest-first homing: every value
/// with a larger value somewhere to its left gets placed, every
/// left-to-right maximum is already home when its turn comes.
pub fn smallest_first_steps(p: &Permutation) -> usize {
    let mut max_so_far = 0;
    let mut ltr_maxima = 0;
    for &v in p.values() {
        if v > max_so_far {
            max_so_far = v;
            ltr_maxima += 1;
        }
    }
    p.len() - ltr_maxima
}

/// Smallest `j` such that the values `j+1..=n` already appear in increasing
/// order. An upper bound on [`smallest_first_steps`]; values `<= j` that are
/// left-to-right maxima are skipped rather than placed.
pub fn smallest_first_bound(p: &Permutation) -> usize {
    let inv = p.inverse();
    (1..p.len())
        .rev()
        .find(|&t| inv.value_at(t) > inv.value_at(t + 1))
        .unwrap_or(0)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::Capacity { n, cap })
    } else {
        Ok(())
    }
}

/// Fewest placements that sort `p`, by breadth-first search from `p`.
pub fn min_placements(p: &Permutation) -> Result<usize> {
    min_placements_capped(p, DEFAULT_SEARCH_CAP)
}

pub fn min_placements_capped(p: &Permutation, cap: usize) -> Result<usize> {
    let n = p.len();
    check_cap(n, cap)?;
    if p.is_identity() {
        return Ok(0);
    }
    let mut seen = vec![false; factorial(n) as usize];
    let mut queue = VecDeque::new();
    seen[p.rank() as usize] = true;
    queue.push_back((p.clone(), 0usize));
    while let Some((cur, d)) = queue.pop_front() {
        for (_, next) in cur.placement_successors() {
            if next.is_identity() {
                return Ok(d + 1);
            }
            let r = next.rank() as usize;
            if !seen[r] {
                seen[r] = true;
                queue.push_back((next, d + 1));
            }
        }
    }
    Err(Error::Cycle(format!("identity unreachable from {p}")))
}

/// Distance to the identity for every permutation of `S_n`, indexed by
/// lexicographic rank. One breadth-first search outward from the identity
/// along displacements, which are placements run backwards.
pub fn min_placement_table(n: usize, cap: usize) -> Result<Vec<u8>> {
    check_cap(n, cap)?;
    let size = factorial(n) as usize;
    let mut dist = vec![u8::MAX; size];
    let id = Permutation::identity(n)?;
    dist[id.rank() as usize] = 0;
    let mut queue = VecDeque::from([id]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur.rank() as usize];
        for (_, next) in cur.displacement_successors() {
            let r = next.rank() as usize;
            if dist[r] == u8::MAX {
                dist[r] = d + 1;
                queue.push_back(next);
            }
        }
    }
    Ok(dist)
}

/// Whether the reverse permutation is the only one in `S_n` needing `n-1`
/// placements.
pub fn unique_worst_case_check(n: usize) -> Result<bool> {
    unique_worst_case_check_capped(n, DEFAULT_SEARCH_CAP)
}

pub fn unique_worst_case_check_capped(n: usize, cap: usize) -> Result<bool> {
    let table = min_placement_table(n, cap)?;
    let worst: Vec<u64> = table
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d as usize == n - 1)
        .map(|(r, _)| r as u64)
        .collect();
    Ok(worst == [Permutation::reverse(n)?.rank()])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomHomingEstimate {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub total_steps: u64,
}

impl RandomHomingEstimate {
    pub fn mean(&self) -> Ratio<u64> {
        Ratio::new(self.total_steps, self.trials)
    }

    pub fn mean_f64(&self) -> f64 {
        self.total_steps as f64 / self.trials as f64
    }

    /// `(n(n+1) - 2) / 4`, the bound on the expected number of random placements.
    pub fn bound(&self) -> Ratio<u64> {
        let n = self.n as u64;
        Ratio::new(n * (n + 1) - 2, 4)
    }

    pub fn margin(&self) -> f64 {
        let b = self.bound();
        *b.numer() as f64 / *b.denom() as f64 - self.mean_f64()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `t`; independent of how trials are scheduled.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    splitmix64(seed ^ splitmix64(t))
}

/// Monte Carlo mean of random homing over uniformly drawn `p` in `S_n`.
///
/// Trial `t` seeds a ChaCha8 generator with [`trial_seed`], shuffles the
/// identity with it, then homes with [`Strategy::Random`] keyed by the next
/// draw from the same generator.
pub fn random_homing_mean(n: usize, trials: u64, seed: u64) -> Result<RandomHomingEstimate> {
    if n == 0 {
        return Err(Error::OutOfRange("random homing requires n >= 1".into()));
    }
    if trials == 0 {
        return Err(Error::OutOfRange(
            "random homing requires at least one trial".into(),
        ));
    }
    let total_steps = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
            let mut values: Vec<usize> = (1..=n).collect();
            values.shuffle(&mut rng);
            let p = Permutation::from_vec_unchecked(values);
            strategy_steps(&p, Strategy::Random { seed: rng.gen() })
        })
        .sum();
    Ok(RandomHomingEstimate {
        n,
        trials,
        seed,
        total_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    const ALL: [Strategy; 5] = [
        Strategy::SmallestFirst,
        Strategy::LargestFirst,
        Strategy::AlternatingExtremal,
        Strategy::LeftmostNotHome,
        Strategy::Random { seed: 7 },
    ];

    #[test]
    fn identity_gives_empty_trace() {
        for s in ALL {
            assert!(run_strategy(&Permutation::identity(5).unwrap(), s).is_empty());
        }
    }

    #[test]
    fn hanoi_run_length() {
        for n in 2..=10 {
            let t = run_strategy(
                &Permutation::rotation(n).unwrap(),
                Strategy::LeftmostNotHome,
            );
            assert_eq!(t.len(), (1 << (n - 1)) - 1);
            assert!(t.last().is_identity());
        }
    }

    #[test]
    fn reverse_smallest_first() {
        for n in 1..=9 {
            let t = run_strategy(&Permutation::reverse(n).unwrap(), Strategy::SmallestFirst);
            assert_eq!(t.len(), n - 1);
        }
    }

    #[test]
    fn trace_lines_are_tab_separated() {
        let t = run_strategy(&p("2,1"), Strategy::SmallestFirst);
        assert_eq!(t.lines().collect::<Vec<_>>(), vec!["1\t1\t2\t1\t1,2\t\t0"]);
        let t = run_strategy(&p("3,1,2"), Strategy::LeftmostNotHome);
        assert_eq!(t.steps[0].to_line(1), "1\t3\t1\t3\t1,2,3\t0\t0");
    }

    #[test]
    fn min_placements_examples() {
        assert_eq!(
            min_placements(&Permutation::identity(5).unwrap()).unwrap(),
            0
        );
        for n in 2..=7 {
            assert_eq!(
                min_placements(&Permutation::reverse(n).unwrap()).unwrap(),
                n - 1
            );
        }
        assert_eq!(min_placements(&p("4,1,3,5,2")).unwrap(), 3);
        assert!(matches!(
            min_placements(&Permutation::identity(10).unwrap()),
            Err(Error::Capacity { n: 10, cap: 9 })
        ));
    }

    #[test]
    fn bfs_from_permutation_agrees_with_table() {
        for n in 1..=6 {
            let table = min_placement_table(n, 9).unwrap();
            for q in Permutation::all(n) {
                assert_eq!(
                    min_placements(&q).unwrap(),
                    table[q.rank() as usize] as usize
                );
            }
        }
    }

    #[test]
    fn smallest_first_count_matches_simulation() {
        assert_eq!(smallest_first_steps(&Permutation::identity(4).unwrap()), 0);
        assert_eq!(smallest_first_steps(&Permutation::reverse(6).unwrap()), 5);
        assert_eq!(smallest_first_steps(&p("1,3,2")), 1);
        assert_eq!(smallest_first_bound(&p("1,3,2")), 2);
        assert_eq!(smallest_first_bound(&Permutation::identity(4).unwrap()), 0);
        assert_eq!(smallest_first_bound(&Permutation::reverse(6).unwrap()), 5);
        for n in 1..=7 {
            for q in Permutation::all(n) {
                let sim = strategy_steps(&q, Strategy::SmallestFirst) as usize;
                assert_eq!(smallest_first_steps(&q), sim, "{q:?}");
                assert!(smallest_first_bound(&q) >= sim);
            }
        }
    }

    #[test]
    fn unique_worst_case() {
        for n in 1..=6 {
            assert!(unique_worst_case_check(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn alternating_extremal_beats_reverse() {
        for n in 2..=7 {
            for q in Permutation::all(n) {
                let steps = strategy_steps(&q, Strategy::AlternatingExtremal) as usize;
                if q.is_reverse() {
                    assert_eq!(steps, n - 1);
                } else {
                    assert!(steps <= n.saturating_sub(2), "{q:?} took {steps}");
                }
            }
        }
    }

    #[test]
    fn random_is_reproducible() {
        let q = p("5,3,1,4,2,6");
        let a = run_strategy(&q, Strategy::Random { seed: 42 });
        let b = run_strategy(&q, Strategy::Random { seed: 42 });
        assert_eq!(a, b);
        assert!(a.last().is_identity());
        let e1 = random_homing_mean(6, 500, 3).unwrap();
        let e2 = random_homing_mean(6, 500, 3).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn random_homing_small_cases() {
        let e = random_homing_mean(1, 10, 0).unwrap();
        assert_eq!(e.total_steps, 0);
        let e = random_homing_mean(2, 1000, 0).unwrap();
        assert_eq!(e.bound(), Ratio::new(1, 1));
        assert!(e.mean() <= e.bound());
        assert!(random_homing_mean(3, 0, 0).is_err());
    }

    #[test]
    fn strategy_parsing() {
        for s in ALL {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("sideways".parse::<Strategy>().is_err());
    }
}
