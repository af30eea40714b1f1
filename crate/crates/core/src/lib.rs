//! Homing: sorting a permutation by repeatedly taking a value that is away
//! from home and reinserting it at its own position, the values in between
//! shifting by one.
//!
//! The crate covers the move semantics ([`perm`]), the code/weight calculus
//! that bounds slow homing ([`code`]), fast and random strategies
//! ([`strategies`]), exhaustive height tables ([`height`]), firings and the
//! exact counting of worst-case permutations ([`firings`]), and executable
//! property suites ([`verify`]).

pub mod code;
pub mod error;
pub mod firings;
pub mod height;
pub mod perm;
pub mod strategies;
pub mod verify;

pub use code::{Code, StripStep, Symbol, TieBreak, Weight};
pub use error::{Error, Result};
pub use firings::{FiringLetter, FiringWord, RestrictedWord, SetPartition, Side};
pub use height::HeightTable;
pub use perm::{DisplacementMove, Permutation, PlacementMove};
pub use strategies::{Strategy, Trace, TraceStep};
