//! Firings, firing words, and the counting of worst-case permutations.
//!
//! A permutation whose code is `+^i 0^k -^j` (with `k >= 1`) has a block of
//! `k` home values at positions `i+2..=i+k+1`. A *left firing* spends
//! `2^(k-1)` displacements to move value `i+k+1` to some position
//! `s <= i+1`, turning the code into `+^i 0^(k-1) -^(j+1)`; a *right firing*
//! mirrors this, moving value `i+2` to some `s >= i+k+2`. Starting from
//! `tau_n = n,2,...,n-1,1` and firing `n-2` times reaches exactly the
//! permutations of maximal height.
//!
//! Firing schedules are written as words over `L_t` / `R_t`: `L_t` fires left
//! into position `(i+1)-t`, `R_t` fires right into position `(i+k+2)+t`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiringLetter {
    pub side: Side,
    pub index: usize,
}

impl FiringLetter {
    pub fn left(index: usize) -> Self {
        FiringLetter {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        FiringLetter {
            side: Side::Right,
            index,
        }
    }
}

impl fmt::Display for FiringLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for FiringLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tok = s.trim();
        let bad = || Error::Token {
            token: tok.to_string(),
            expected: "a firing letter such as L0 or R2",
        };
        let side = match tok.chars().next() {
            Some('L') => Side::Left,
            Some('R') => Side::Right,
            _ => return Err(bad()),
        };
        let index = tok[1..].parse().map_err(|_| bad())?;
        Ok(FiringLetter { side, index })
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiringWord {
    pub letters: Vec<FiringLetter>,
}

impl FiringWord {
    pub fn new(letters: Vec<FiringLetter>) -> Self {
        FiringWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rights(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| l.side == Side::Right)
            .count()
    }

    pub fn lefts(&self) -> usize {
        self.len() - self.rights()
    }

    /// Every `L_s` has at least `s` right letters before it and every `R_s`
    /// at least `s` left letters before it.
    pub fn validate(&self) -> Result<()> {
        let (mut rights, mut lefts) = (0, 0);
        for (idx, l) in self.letters.iter().enumerate() {
            let (before, other) = match l.side {
                Side::Left => (rights, "right"),
                Side::Right => (lefts, "left"),
            };
            if l.index > before {
                return Err(Error::InvalidWord {
                    index: idx + 1,
                    letter: l.to_string(),
                    reason: format!(
                        "needs {} {other} letters before it, found {before}",
                        l.index
                    ),
                });
            }
            match l.side {
                Side::Left => lefts += 1,
                Side::Right => rights += 1,
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Valid, and no `R_s` with `s >= 1` directly follows a left letter.
    pub fn is_canonical(&self) -> bool {
        self.is_valid() && first_redex(&self.letters).is_none()
    }
}

impl fmt::Display for FiringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiringWord({self})")
    }
}

impl FromStr for FiringWord {
    type Err = Error;

    /// Comma-separated letters, e.g. `L0,R1,R0`. Empty text is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(FiringWord::default());
        }
        let letters = s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(FiringWord { letters })
    }
}

impl Serialize for FiringWord {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn shape_of(p: &Permutation) -> Result<(usize, usize, usize)> {
    let code = Code::of(p);
    match code.shape() {
        Some(s @ (_, k, _)) if k >= 1 => Ok(s),
        _ => Err(Error::CodeShape {
            code: code.to_string(),
        }),
    }
}

/// Zero block at positions `i+2..=i+m+1`; transposes the entry at position
/// `i+1` with value `i+m+1`, the final displacement sending `i+m+1` to `dest`.
fn cascade_left(
    p: &mut Permutation,
    i: usize,
    m: usize,
    dest: usize,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<()> {
    for inner in (1..m).rev() {
        cascade_left(p, i, inner, i + 1, visit)?;
    }
    *p = p.displace(i + m + 1, dest)?;
    visit(p);
    Ok(())
}

/// Mirror of [`cascade_left`]: zero block ending at position `end`, entry at
/// `end+1` transposed with value `end+1-m`, which finally goes to `dest`.
fn cascade_right(
    p: &mut Permutation,
    end: usize,
    m: usize,
    dest: usize,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<()> {
    for inner in (1..m).rev() {
        cascade_right(p, end, inner, end + 1, visit)?;
    }
    *p = p.displace(end + 1 - m, dest)?;
    visit(p);
    Ok(())
}

/// Left firing into position `s`, reporting every intermediate permutation.
pub fn fire_left_with(
    p: &Permutation,
    s: usize,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<Permutation> {
    let (i, k, _) = shape_of(p)?;
    if s == 0 || s > i + 1 {
        return Err(Error::FiringTarget {
            target: s,
            lo: 1,
            hi: i + 1,
        });
    }
    let mut cur = p.clone();
    cascade_left(&mut cur, i, k, s, visit)?;
    Ok(cur)
}

/// Right firing into position `s`, reporting every intermediate permutation.
pub fn fire_right_with(
    p: &Permutation,
    s: usize,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<Permutation> {
    let (i, k, _) = shape_of(p)?;
    let n = p.len();
    if s < i + k + 2 || s > n {
        return Err(Error::FiringTarget {
            target: s,
            lo: i + k + 2,
            hi: n,
        });
    }
    let mut cur = p.clone();
    cascade_right(&mut cur, i + k + 1, k, s, visit)?;
    Ok(cur)
}

pub fn fire_left(p: &Permutation, s: usize) -> Result<Permutation> {
    fire_left_with(p, s, &mut |_| {})
}

pub fn fire_right(p: &Permutation, s: usize) -> Result<Permutation> {
    fire_right_with(p, s, &mut |_| {})
}

/// Every displacement state of a firing, the last being its result.
pub fn fire_traced(p: &Permutation, letter: FiringLetter) -> Result<Vec<Permutation>> {
    let mut states = Vec::new();
    fire_letter(p, letter, &mut |q| states.push(q.clone()))?;
    Ok(states)
}

/// Fires `p` as the letter prescribes: `L_t` into `(i+1)-t`, `R_t` into `(i+k+2)+t`.
pub fn fire_letter(
    p: &Permutation,
    letter: FiringLetter,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<Permutation> {
    let (i, k, j) = shape_of(p)?;
    match letter.side {
        Side::Left if letter.index <= i => fire_left_with(p, i + 1 - letter.index, visit),
        Side::Right if letter.index <= j => fire_right_with(p, i + k + 2 + letter.index, visit),
        _ => Err(Error::InvalidWord {
            index: 0,
            letter: letter.to_string(),
            reason: format!("index exceeds the firings available from code +^{i} 0^{k} -^{j}"),
        }),
    }
}

/// Applies the word to `tau_n`, one firing per letter.
pub fn apply_word(w: &FiringWord, n: usize) -> Result<Permutation> {
    apply_word_with(w, n, &mut |_| {})
}

pub fn apply_word_with(
    w: &FiringWord,
    n: usize,
    visit: &mut dyn FnMut(&Permutation),
) -> Result<Permutation> {
    if n < 2 || w.len() != n - 2 {
        return Err(Error::OutOfRange(format!(
            "a word for n = {n} must have {} letters, got {}",
            n.saturating_sub(2),
            w.len()
        )));
    }
    w.validate()?;
    let mut cur = Permutation::tau(n)?;
    for (idx, &letter) in w.letters.iter().enumerate() {
        cur = fire_letter(&cur, letter, visit).map_err(|e| match e {
            Error::InvalidWord { letter, reason, .. } => Error::InvalidWord {
                index: idx + 1,
                letter,
                reason,
            },
            other => other,
        })?;
    }
    Ok(cur)
}

/// Index of the first adjacent pair `L_(t-1) R_s` with `s, t >= 1`.
fn first_redex(letters: &[FiringLetter]) -> Option<usize> {
    letters
        .windows(2)
        .position(|w| w[0].side == Side::Left && w[1].side == Side::Right && w[1].index >= 1)
}

fn rewrite_at(letters: &mut [FiringLetter], at: usize) {
    let t = letters[at].index + 1;
    let s = letters[at + 1].index;
    letters[at] = FiringLetter::right(s - 1);
    letters[at + 1] = FiringLetter::left(t);
}

/// Rewrites `L_(t-1) R_s` to `R_(s-1) L_t` until no `R_s` with `s >= 1`
/// follows a left letter.
pub fn canonicalize(w: &FiringWord) -> Result<FiringWord> {
    w.validate()?;
    let mut letters = w.letters.clone();
    while let Some(at) = first_redex(&letters) {
        rewrite_at(&mut letters, at);
    }
    Ok(FiringWord { letters })
}

/// Every irreducible word reachable from `w` by applying the rewrite rule at
/// any redex in any order. A single element means the rewriting is confluent
/// from `w`.
pub fn rewrite_normal_forms(w: &FiringWord) -> BTreeSet<FiringWord> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    let mut normal = BTreeSet::new();
    while let Some(cur) = queue.pop_front() {
        let redexes: Vec<usize> = cur
            .letters
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0].side == Side::Left && p[1].side == Side::Right && p[1].index >= 1)
            .map(|(i, _)| i)
            .collect();
        if redexes.is_empty() {
            normal.insert(cur);
            continue;
        }
        for at in redexes {
            let mut next = cur.clone();
            rewrite_at(&mut next.letters, at);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    normal
}

fn extend_words(
    prefix: &mut Vec<FiringLetter>,
    len: usize,
    canonical_only: bool,
    out: &mut Vec<FiringWord>,
) {
    if prefix.len() == len {
        out.push(FiringWord {
            letters: prefix.clone(),
        });
        return;
    }
    let rights = prefix.iter().filter(|l| l.side == Side::Right).count();
    let lefts = prefix.len() - rights;
    for s in 0..=rights {
        prefix.push(FiringLetter::left(s));
        extend_words(prefix, len, canonical_only, out);
        prefix.pop();
    }
    let after_left = prefix.last().is_some_and(|l| l.side == Side::Left);
    let max_right = if canonical_only && after_left {
        0
    } else {
        lefts
    };
    for s in 0..=max_right {
        prefix.push(FiringLetter::right(s));
        extend_words(prefix, len, canonical_only, out);
        prefix.pop();
    }
}

/// All words of length `len` that satisfy the index conditions (canonical or not).
pub fn valid_words(len: usize) -> Vec<FiringWord> {
    let mut out = Vec::new();
    extend_words(&mut Vec::new(), len, false, &mut out);
    out
}

/// `W_n`: canonical firing words of length `n-2`.
pub fn generate_wn(n: usize) -> Result<Vec<FiringWord>> {
    if n < 2 {
        return Err(Error::OutOfRange("W_n requires n >= 2".into()));
    }
    let mut out = Vec::new();
    extend_words(&mut Vec::new(), n - 2, true, &mut out);
    Ok(out)
}

/// Images of all `2^(n-2)` schedules of short firings (`L_0` / `R_0`), sorted
/// and deduplicated. Short firings are injective, so no two schedules collide.
pub fn short_firing_image(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n < 2 {
        return Err(Error::OutOfRange("short firings require n >= 2".into()));
    }
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    let len = n - 2;
    let mut image = BTreeSet::new();
    for mask in 0u64..(1 << len) {
        let letters = (0..len)
            .map(|b| {
                if mask >> b & 1 == 1 {
                    FiringLetter::right(0)
                } else {
                    FiringLetter::left(0)
                }
            })
            .collect();
        image.insert(apply_word(&FiringWord { letters }, n)?);
    }
    Ok(image.into_iter().collect())
}

/// Exact counts: the `f(i, j)` recurrence, `|M_n|`, Bell numbers and
/// factorials, all as arbitrary-precision integers.
#[derive(Debug, Clone)]
pub struct CountTable {
    nmax: usize,
    /// `f[i][j]` for `i + j <= nmax`.
    f: Vec<Vec<BigUint>>,
}

impl CountTable {
    /// Fills `f(i, j)` for all `i + j <= nmax` from
    /// `f(i,j) = i f(i,j-1) + j f(i-1,j) - (i-1)(j-1) f(i-1,j-1)`,
    /// with `f(1,1) = 1` and `f = 0` when `i = 0` or `j = 0`.
    pub fn new(nmax: usize) -> Self {
        let size = nmax.max(2) + 1;
        let mut f = vec![vec![BigUint::zero(); size]; size];
        f[1][1] = BigUint::one();
        for total in 3..size {
            for i in 1..total {
                let j = total - i;
                let plus = BigUint::from(i) * &f[i][j - 1] + BigUint::from(j) * &f[i - 1][j];
                let minus = BigUint::from((i - 1) * (j - 1)) * &f[i - 1][j - 1];
                f[i][j] = plus - minus;
            }
        }
        CountTable { nmax: size - 1, f }
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn f(&self, i: usize, j: usize) -> BigUint {
        assert!(
            i + j <= self.nmax,
            "f({i},{j}) beyond table limit {}",
            self.nmax
        );
        self.f[i][j].clone()
    }

    /// `|M_n| = sum over i + j = n of f(i, j)`.
    pub fn mn(&self, n: usize) -> BigUint {
        assert!(
            n >= 2 && n <= self.nmax,
            "n = {n} outside 2..={}",
            self.nmax
        );
        (1..n).map(|i| &self.f[i][n - i]).sum()
    }
}

pub fn count_f(i: usize, j: usize) -> BigUint {
    CountTable::new(i + j).f(i, j)
}

pub fn count_mn(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::OutOfRange("|M_n| is defined for n >= 2".into()));
    }
    Ok(CountTable::new(n).mn(n))
}

/// Bell numbers `B_0..=B_mmax` from the Bell triangle.
pub fn bell_numbers(mmax: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..mmax {
        out.push(row.last().expect("non-empty").clone());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("non-empty").clone());
        for x in &row {
            let v = next.last().expect("non-empty") + x;
            next.push(v);
        }
        row = next;
    }
    out
}

pub fn bell(m: usize) -> BigUint {
    bell_numbers(m).pop().expect("non-empty")
}

pub fn factorial_big(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Word over `{R, L_s}`: unindexed short right firings and arbitrary left
/// firings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RestrictedLetter {
    R,
    L(usize),
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RestrictedWord {
    pub letters: Vec<RestrictedLetter>,
}

impl RestrictedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let mut rights = 0;
        for (idx, l) in self.letters.iter().enumerate() {
            match *l {
                RestrictedLetter::R => rights += 1,
                RestrictedLetter::L(s) if s > rights => {
                    return Err(Error::InvalidWord {
                        index: idx + 1,
                        letter: format!("L{s}"),
                        reason: format!("needs {s} R letters before it, found {rights}"),
                    })
                }
                RestrictedLetter::L(_) => {}
            }
        }
        Ok(())
    }

    /// The same schedule as a firing word: `R` is the short right firing `R_0`.
    pub fn to_firing_word(&self) -> FiringWord {
        FiringWord {
            letters: self
                .letters
                .iter()
                .map(|l| match *l {
                    RestrictedLetter::R => FiringLetter::right(0),
                    RestrictedLetter::L(s) => FiringLetter::left(s),
                })
                .collect(),
        }
    }

    /// All valid restricted words of length `len`.
    pub fn all(len: usize) -> Vec<RestrictedWord> {
        fn go(
            prefix: &mut Vec<RestrictedLetter>,
            rights: usize,
            len: usize,
            out: &mut Vec<RestrictedWord>,
        ) {
            if prefix.len() == len {
                out.push(RestrictedWord {
                    letters: prefix.clone(),
                });
                return;
            }
            prefix.push(RestrictedLetter::R);
            go(prefix, rights + 1, len, out);
            prefix.pop();
            for s in 0..=rights {
                prefix.push(RestrictedLetter::L(s));
                go(prefix, rights, len, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), 0, len, &mut out);
        out
    }
}

impl fmt::Display for RestrictedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match l {
                RestrictedLetter::R => f.write_str("R")?,
                RestrictedLetter::L(s) => write!(f, "L{s}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RestrictedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RestrictedWord({self})")
    }
}

impl FromStr for RestrictedWord {
    type Err = Error;

    /// Comma-separated `R` and `L<s>` letters, e.g. `R,L0,L1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(RestrictedWord::default());
        }
        let letters = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok == "R" {
                    return Ok(RestrictedLetter::R);
                }
                tok.strip_prefix('L')
                    .and_then(|d| d.parse().ok())
                    .map(RestrictedLetter::L)
                    .ok_or_else(|| Error::Token {
                        token: tok.to_string(),
                        expected: "R or L<s>",
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictedWord { letters })
    }
}

/// Partition of `{1..=m}`; blocks sorted internally and ordered by their
/// smallest element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let m: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; m + 1];
        for &x in blocks.iter().flatten() {
            if x == 0 || x > m || seen[x] {
                return Err(Error::InvalidPartition(format!(
                    "element {x} is repeated or outside 1..={m}"
                )));
            }
            seen[x] = true;
        }
        Ok(SetPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// All partitions of `{1..=m}` via restricted growth strings.
    pub fn all(m: usize) -> Vec<SetPartition> {
        fn go(rgs: &mut Vec<usize>, max: usize, m: usize, out: &mut Vec<SetPartition>) {
            if rgs.len() == m {
                let mut blocks = vec![Vec::new(); max + 1];
                for (e, &b) in rgs.iter().enumerate() {
                    blocks[b].push(e + 1);
                }
                out.push(SetPartition { blocks });
                return;
            }
            for b in 0..=max + 1 {
                rgs.push(b);
                go(rgs, max.max(b), m, out);
                rgs.pop();
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            out.push(SetPartition { blocks: Vec::new() });
        } else {
            go(&mut vec![0], 0, m, &mut out);
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            f.write_str("{")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `{1,3}{2,4}`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut blocks = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .and_then(|r| r.split_once('}'))
                .ok_or_else(|| Error::Token {
                    token: rest.to_string(),
                    expected: "a block such as {1,3}",
                })?;
            let block = body
                .0
                .split(',')
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Token {
                        token: tok.to_string(),
                        expected: "a positive decimal integer",
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = body.1;
        }
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        SetPartition::new(blocks)
    }
}

/// Reads the word left to right starting from `{{1}}`: letter number `m`
/// puts element `m+1` in a new block (`R`) or in block `s+1` (`L_s`).
pub fn word_to_partition(w: &RestrictedWord) -> Result<SetPartition> {
    w.validate()?;
    let mut blocks = vec![vec![1]];
    for (m, l) in w.letters.iter().enumerate() {
        let element = m + 2;
        match *l {
            RestrictedLetter::R => blocks.push(vec![element]),
            RestrictedLetter::L(s) => blocks[s].push(element),
        }
    }
    Ok(SetPartition { blocks })
}

pub fn partition_to_word(q: &SetPartition) -> Result<RestrictedWord> {
    let m = q.size();
    if m == 0 {
        return Err(Error::InvalidPartition(
            "partition of the empty set has no word".into(),
        ));
    }
    let mut block_of = vec![0usize; m + 1];
    for (b, block) in q.blocks.iter().enumerate() {
        for &x in block {
            block_of[x] = b;
        }
    }
    let letters = (2..=m)
        .map(|e| {
            let b = block_of[e];
            if q.blocks[b][0] == e {
                RestrictedLetter::R
            } else {
                RestrictedLetter::L(b)
            }
        })
        .collect();
    Ok(RestrictedWord { letters })
}

/// `g_1..=g_nmax` from `g_(n+1) = n g_n - (n^2/4) g_(n-1)`, exactly.
pub fn g_recurrence(nmax: usize, g1: BigRational, g2: BigRational) -> Result<Vec<BigRational>> {
    if nmax < 2 {
        return Err(Error::OutOfRange("the g sequence needs nmax >= 2".into()));
    }
    let mut g = vec![g1, g2];
    for n in 2..nmax {
        let nn = BigInt::from(n);
        let quarter_sq = BigRational::new(&nn * &nn, BigInt::from(4));
        let next = BigRational::from_integer(nn) * &g[n - 1] - quarter_sq * &g[n - 2];
        g.push(next);
    }
    Ok(g)
}

pub fn g_recurrence_default(nmax: usize) -> Result<Vec<BigRational>> {
    g_recurrence(nmax, BigRational::one(), BigRational::one())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    /// `g_(n+1) / g_n`, absent when `g_n = 0`.
    pub ratio: Option<f64>,
    pub half_n: f64,
}

/// `g_(n+1)/g_n` next to `n/2` for `n = 1..nmax-1`.
pub fn g_ratios(g: &[BigRational]) -> Vec<RatioRow> {
    g.windows(2)
        .enumerate()
        .map(|(idx, w)| RatioRow {
            n: idx + 1,
            ratio: if w[0].is_zero() {
                None
            } else {
                (&w[1] / &w[0]).to_f64()
            },
            half_n: (idx + 1) as f64 / 2.0,
        })
        .collect()
}

/// Natural logarithm of a positive big integer to double precision.
pub fn ln_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn nth_root(x: &BigUint, n: usize) -> f64 {
    (ln_big(x) / n as f64).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub factorial_root: f64,
    pub mn_root: f64,
    pub bell_root: f64,
}

/// `((n-1)!)^(1/n)`, `|M_n|^(1/n)` and `B_(n-1)^(1/n)` for `n = 2..=nmax`,
/// each from the exact integer.
pub fn growth_table(nmax: usize) -> Result<Vec<GrowthRow>> {
    if !(2..=200).contains(&nmax) {
        return Err(Error::OutOfRange(format!(
            "growth table needs 2 <= nmax <= 200, got {nmax}"
        )));
    }
    let counts = CountTable::new(nmax);
    let bells = bell_numbers(nmax - 1);
    let mut fact = BigUint::one();
    let mut rows = Vec::with_capacity(nmax - 1);
    for n in 2..=nmax {
        fact *= BigUint::from(n - 1);
        rows.push(GrowthRow {
            n,
            factorial_root: nth_root(&fact, n),
            mn_root: nth_root(&counts.mn(n), n),
            bell_root: nth_root(&bells[n - 1], n),
        });
    }
    Ok(rows)
}

pub const GROWTH_CSV_HEADER: &str = "n,factorial_root,mn_root,bell_root";

impl GrowthRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{:.12},{:.12},{:.12}",
            self.n, self.factorial_root, self.mn_root, self.bell_root
        )
    }
}
