//! Codes over `{+, -, 0}` and their weights.
//!
//! The code of a permutation records, for every interior value `i` in
//! `2..=n-1`, whether `i` sits right of home (`+`), left of home (`-`) or at
//! home (`0`). The weight is a double-ended binary number: a `+` counts the
//! symbols to its right, a `-` the symbols to its left, and symbols are
//! stripped one at a time in decreasing order of that count, each
//! contributing `2^count`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Plus,
    Minus,
    Zero,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Plus => '+',
            Symbol::Minus => '-',
            Symbol::Zero => '0',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Code {
    symbols: Vec<Symbol>,
}

/// One step of the weight recursion: the symbol at `position` (1-based, in
/// the already-shortened code) was removed and contributed `2^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripStep {
    pub position: usize,
    pub symbol: char,
    pub exponent: usize,
}

/// Which symbol wins when a `+` and a `-` have the same exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Minus,
    Plus,
}

/// Weight of a code. Arbitrary precision, so code length is never capped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub BigUint);

impl Weight {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// `Some` when the weight fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for Weight {
    fn from(v: u64) -> Self {
        Weight(BigUint::from(v))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Code {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Code { symbols }
    }

    pub fn zeros(len: usize) -> Self {
        Code {
            symbols: vec![Symbol::Zero; len],
        }
    }

    /// Code of `p`: one symbol per interior value `2..=n-1`.
    pub fn of(p: &Permutation) -> Self {
        let n = p.len();
        if n < 3 {
            return Code::default();
        }
        let inv = p.inverse();
        let symbols = (2..n)
            .map(|i| {
                let pos = inv.value_at(i);
                match pos.cmp(&i) {
                    std::cmp::Ordering::Greater => Symbol::Plus,
                    std::cmp::Ordering::Less => Symbol::Minus,
                    std::cmp::Ordering::Equal => Symbol::Zero,
                }
            })
            .collect();
        Code { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_all_zero(&self) -> bool {
        self.symbols.iter().all(|&s| s == Symbol::Zero)
    }

    /// `(i, k, j)` when the code is `+^i 0^k -^j`.
    pub fn shape(&self) -> Option<(usize, usize, usize)> {
        let s = &self.symbols;
        let i = s.iter().take_while(|&&c| c == Symbol::Plus).count();
        let k = s[i..].iter().take_while(|&&c| c == Symbol::Zero).count();
        let j = s[i + k..]
            .iter()
            .take_while(|&&c| c == Symbol::Minus)
            .count();
        (i + k + j == s.len()).then_some((i, k, j))
    }

    /// True for `+^p -^q`, the codes of maximal weight.
    pub fn is_plus_minus(&self) -> bool {
        matches!(self.shape(), Some((_, 0, _)))
    }

    pub fn weight(&self) -> Weight {
        match self.weight_u64() {
            Some(w) => Weight::from(w),
            None => self.weight_big(TieBreak::Minus),
        }
    }

    /// Fixed-width weight for codes of length at most 64.
    pub fn weight_u64(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        let mut total = 0u64;
        strip(&self.symbols, TieBreak::Minus, |step| {
            total += 1u64 << step.exponent
        });
        Some(total)
    }

    /// Weight computed with the given tie-break rule.
    pub fn weight_with(&self, tie: TieBreak) -> Weight {
        self.weight_big(tie)
    }

    fn weight_big(&self, tie: TieBreak) -> Weight {
        let mut total = BigUint::zero();
        strip(&self.symbols, tie, |step| {
            total += BigUint::one() << step.exponent
        });
        Weight(total)
    }

    pub fn strip_trace(&self) -> Vec<StripStep> {
        let mut out = Vec::new();
        strip(&self.symbols, TieBreak::Minus, |step| out.push(step));
        out
    }

    pub fn concat(&self, other: &Code) -> Code {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Code { symbols }
    }
}

/// Runs the weight recursion, reporting each stripped symbol in order.
fn strip(symbols: &[Symbol], tie: TieBreak, mut emit: impl FnMut(StripStep)) {
    let mut cur: Vec<Symbol> = symbols.to_vec();
    loop {
        let k = cur.len();
        // Rightmost `-` has the most symbols to its left; leftmost `+` the most to its right.
        let minus = cur
            .iter()
            .rposition(|&s| s == Symbol::Minus)
            .map(|i| (i, i));
        let plus = cur
            .iter()
            .position(|&s| s == Symbol::Plus)
            .map(|i| (i, k - 1 - i));
        let chosen = match (minus, plus) {
            (None, None) => return,
            (Some(m), None) => m,
            (None, Some(p)) => p,
            (Some(m), Some(p)) => match m.1.cmp(&p.1) {
                std::cmp::Ordering::Greater => m,
                std::cmp::Ordering::Less => p,
                std::cmp::Ordering::Equal => match tie {
                    TieBreak::Minus => m,
                    TieBreak::Plus => p,
                },
            },
        };
        emit(StripStep {
            position: chosen.0 + 1,
            symbol: cur[chosen.0].as_char(),
            exponent: chosen.1,
        });
        cur.remove(chosen.0);
    }
}

/// Every code of length `k`, `3^k` in total.
pub fn all_codes(k: usize) -> impl Iterator<Item = Code> {
    let total = 3usize.pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut symbols = Vec::with_capacity(k);
        for _ in 0..k {
            symbols.push([Symbol::Zero, Symbol::Plus, Symbol::Minus][idx % 3]);
            idx /= 3;
        }
        Code::new(symbols)
    })
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(\"{self}\")")
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl FromStr for Code {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Symbol::Plus),
                '-' => Ok(Symbol::Minus),
                '0' => Ok(Symbol::Zero),
                other => Err(Error::Token {
                    token: other.to_string(),
                    expected: "one of '+', '-', '0'",
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Code { symbols })
    }
}
