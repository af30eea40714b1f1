//! Permutations in one-line notation and the two elementary moves on them.
//!
//! A permutation of `1..=n` is the contents of a trough of numbered balls:
//! the entry at (1-based) position `p` is the value sitting there. A
//! *placement* takes a value that is away from home and reinserts it at the
//! position equal to its value, the balls in between shifting by one. A
//! *displacement* is the reverse move: a value that is home is lifted out and
//! reinserted somewhere else.
//!
//! Positions and values are 1-based throughout.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

/// Place `value` at position `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlacementMove {
    pub value: usize,
}

/// Lift the home value `value` out of position `value` and reinsert it at `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DisplacementMove {
    pub value: usize,
    pub target: usize,
}

impl Permutation {
    /// Builds a permutation from one-line values, rejecting anything that is
    /// not a bijection on `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty sequence".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("identity requires n >= 1".into()));
        }
        Ok(Permutation {
            values: (1..=n).collect(),
        })
    }

    /// `n, n-1, ..., 1`.
    pub fn reverse(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("reverse requires n >= 1".into()));
        }
        Ok(Permutation {
            values: (1..=n).rev().collect(),
        })
    }

    /// `2, 3, ..., n, 1`: the start of the tower-of-Hanoi run.
    pub fn rotation(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("rotation requires n >= 1".into()));
        }
        let mut values: Vec<usize> = (2..=n).collect();
        values.push(1);
        Ok(Permutation { values })
    }

    /// `n, 2, 3, ..., n-1, 1`: the identity with its two extremes swapped.
    pub fn tau(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange("tau requires n >= 2".into()));
        }
        let mut values: Vec<usize> = (1..=n).collect();
        values.swap(0, n - 1);
        Ok(Permutation { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Value at 1-based position `pos`.
    pub fn value_at(&self, pos: usize) -> usize {
        self.values[pos - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: usize) -> usize {
        self.values
            .iter()
            .position(|&v| v == value)
            .map(|i| i + 1)
            .expect("value outside permutation range")
    }

    pub fn is_home(&self, value: usize) -> bool {
        self.values[value - 1] == value
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_reverse(&self) -> bool {
        let n = self.len();
        self.values.iter().enumerate().all(|(i, &v)| v == n - i)
    }

    /// Values not at home, in increasing order.
    pub fn not_home(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v != i + 1)
            .map(|(_, &v)| v)
            .collect();
        out.sort_unstable();
        out
    }

    /// Inverse permutation: entry `v-1` holds the position of `v`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// Conjugation by the reversal `i -> n+1-i`, applied to both positions
    /// and values. Exchanges left and right in every statement about homing.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            values: self.values.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }

    fn check_value(&self, value: usize) -> Result<()> {
        if value == 0 || value > self.len() {
            return Err(Error::OutOfRange(format!(
                "value {value} outside 1..={}",
                self.len()
            )));
        }
        Ok(())
    }

    pub fn apply_placement(&self, m: PlacementMove) -> Result<Permutation> {
        self.check_value(m.value)?;
        let from = self.position_of(m.value);
        if from == m.value {
            return Err(Error::AlreadyHome { value: m.value });
        }
        Ok(self.moved(from, m.value))
    }

    /// Convenience for `apply_placement(PlacementMove { value })`.
    pub fn place(&self, value: usize) -> Result<Permutation> {
        self.apply_placement(PlacementMove { value })
    }

    pub fn apply_displacement(&self, m: DisplacementMove) -> Result<Permutation> {
        self.check_value(m.value)?;
        if m.target == 0 || m.target > self.len() {
            return Err(Error::OutOfRange(format!(
                "target {} outside 1..={}",
                m.target,
                self.len()
            )));
        }
        if !self.is_home(m.value) {
            return Err(Error::NotHome { value: m.value });
        }
        if m.target == m.value {
            return Err(Error::TargetIsHome { value: m.value });
        }
        Ok(self.moved(m.value, m.target))
    }

    pub fn displace(&self, value: usize, target: usize) -> Result<Permutation> {
        self.apply_displacement(DisplacementMove { value, target })
    }

    /// Remove the entry at position `from` and reinsert it at position `to`.
    fn moved(&self, from: usize, to: usize) -> Permutation {
        let mut values = self.values.clone();
        move_entry(&mut values, from - 1, to - 1);
        Permutation { values }
    }

    /// One successor per value that is away from home, in increasing order of
    /// the placed value. Distinct moves may produce the same permutation.
    pub fn placement_successors(&self) -> Vec<(PlacementMove, Permutation)> {
        let mut out: Vec<_> = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v != i + 1)
            .map(|(i, &v)| (PlacementMove { value: v }, self.moved(i + 1, v)))
            .collect();
        out.sort_by_key(|(m, _)| m.value);
        out
    }

    /// Every displacement of a home value to every other position.
    pub fn displacement_successors(&self) -> Vec<(DisplacementMove, Permutation)> {
        let n = self.len();
        let mut out = Vec::new();
        for v in 1..=n {
            if !self.is_home(v) {
                continue;
            }
            for t in (1..=n).filter(|&t| t != v) {
                out.push((
                    DisplacementMove {
                        value: v,
                        target: t,
                    },
                    self.moved(v, t),
                ));
            }
        }
        out
    }

    /// Length of the longest increasing subsequence (patience sorting).
    pub fn lis_length(&self) -> usize {
        let mut tails: Vec<usize> = Vec::with_capacity(self.len());
        for &v in &self.values {
            match tails.binary_search(&v) {
                Ok(_) => unreachable!("values are distinct"),
                Err(i) if i == tails.len() => tails.push(v),
                Err(i) => tails[i] = v,
            }
        }
        tails.len()
    }

    /// Number of extremal values home: the longest run `1..=a` at home plus
    /// the longest run `n-b+1..=n` at home. The identity is in stage `n`.
    pub fn stage(&self) -> usize {
        let n = self.len();
        if self.is_identity() {
            return n;
        }
        let prefix = (1..=n).take_while(|&v| self.is_home(v)).count();
        let suffix = (1..=n).rev().take_while(|&v| self.is_home(v)).count();
        prefix + suffix
    }

    /// Lexicographic rank in `S_n` (factorial number system), `0..n!`.
    pub fn rank(&self) -> u64 {
        rank_slice(&self.values)
    }

    pub fn unrank(n: usize, rank: u64) -> Result<Permutation> {
        if n == 0 || n > 20 {
            return Err(Error::OutOfRange(format!("cannot unrank for n = {n}")));
        }
        if rank >= factorial(n) {
            return Err(Error::OutOfRange(format!("rank {rank} >= {n}!")));
        }
        let mut values = vec![0; n];
        unrank_into(rank, &mut values);
        Ok(Permutation { values })
    }

    /// All of `S_n` in lexicographic (rank) order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((1..=n).collect::<Vec<usize>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            if next_permutation(&mut succ) {
                next = Some(succ);
            }
            Some(Permutation { values: cur })
        })
    }
}

/// Remove the entry at index `from` and reinsert it at index `to` (0-based).
#[inline]
pub(crate) fn move_entry<T: Copy>(values: &mut [T], from: usize, to: usize) {
    if from < to {
        values[from..=to].rotate_left(1);
    } else if to < from {
        values[to..=from].rotate_right(1);
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of a one-line sequence whose values are exactly
/// `1..=len` (or `0..len`; only relative order matters).
pub(crate) fn rank_slice<T: Ord + Copy>(values: &[T]) -> u64 {
    let n = values.len();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller = values[i + 1..].iter().filter(|&&w| w < values[i]).count() as u64;
        rank = rank * (n - i) as u64 + smaller;
    }
    rank
}

/// Inverse of [`rank_slice`], writing values `1..=out.len()`.
pub(crate) fn unrank_into<T: Copy + TryFrom<usize>>(mut rank: u64, out: &mut [T])
where
    <T as TryFrom<usize>>::Error: fmt::Debug,
{
    let n = out.len();
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = (rank % base) as usize;
        rank /= base;
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    for i in 0..n {
        out[i] = T::try_from(pool.remove(digits[i])).unwrap();
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses comma-separated decimal values such as `4,1,3,5,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty text".into()));
        }
        let values = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>().map_err(|_| Error::Token {
                    token: tok.to_string(),
                    expected: "a positive decimal integer",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}
