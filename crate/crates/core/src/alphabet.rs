//! Alphabets, sidedness, neighborhoods and the resource budget shared by
//! every exponential computation in the crate.

use std::fmt;

use crate::error::{Error, Result};

/// A cell state. States of an alphabet of size `n` are `0..n`.
pub type State = u32;

/// A finite alphabet `{0, .., size-1}`, optionally carrying the track sizes
/// of a cartesian product `A1 x A2 x ...`.
///
/// Product symbols are encoded in mixed radix with the first track most
/// significant, so `(a, b)` over `A x B` is `a * |B| + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
    factors: Vec<usize>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlphabet("size must be at least 1".into()));
        }
        if size > State::MAX as usize {
            return Err(Error::InvalidAlphabet(format!("size {size} too large")));
        }
        Ok(Alphabet {
            size,
            factors: Vec::new(),
        })
    }

    /// A product alphabet with the given track sizes.
    pub fn with_factors(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidAlphabet("empty factor list".into()));
        }
        let mut size: usize = 1;
        for &f in factors {
            if f == 0 {
                return Err(Error::InvalidAlphabet("factor of size 0".into()));
            }
            size = size
                .checked_mul(f)
                .filter(|&s| s <= State::MAX as usize)
                .ok_or_else(|| Error::InvalidAlphabet("product alphabet too large".into()))?;
        }
        if factors.len() == 1 {
            return Alphabet::new(size);
        }
        Ok(Alphabet {
            size,
            factors: factors.to_vec(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Recorded factor sizes; empty for a plain alphabet.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Track sizes: the factors, or `[size]` for a plain alphabet.
    pub fn tracks(&self) -> Vec<usize> {
        if self.factors.is_empty() {
            vec![self.size]
        } else {
            self.factors.clone()
        }
    }

    pub fn track_count(&self) -> usize {
        self.factors.len().max(1)
    }

    /// `self x other`, with the track lists concatenated.
    pub fn product(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut f = self.tracks();
        f.extend(other.tracks());
        Alphabet::with_factors(&f)
    }

    pub fn contains(&self, s: State) -> bool {
        (s as usize) < self.size
    }

    pub fn check_state(&self, s: State) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state: s,
                size: self.size,
            })
        }
    }

    pub fn check_word(&self, word: &[State]) -> Result<()> {
        word.iter().try_for_each(|&s| self.check_state(s))
    }

    /// Splits a symbol into its track components.
    pub fn split(&self, s: State) -> Vec<State> {
        let tracks = self.tracks();
        let mut out = vec![0; tracks.len()];
        let mut rest = s as usize;
        for (slot, &f) in out.iter_mut().zip(&tracks).rev() {
            *slot = (rest % f) as State;
            rest /= f;
        }
        out
    }

    /// Inverse of [`Alphabet::split`].
    pub fn join(&self, parts: &[State]) -> State {
        let tracks = self.tracks();
        debug_assert_eq!(parts.len(), tracks.len());
        parts
            .iter()
            .zip(&tracks)
            .fold(0usize, |acc, (&p, &f)| acc * f + p as usize) as State
    }

    /// Same symbol set, ignoring recorded factor structure.
    pub fn same_size(&self, other: &Alphabet) -> bool {
        self.size == other.size
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            write!(f, "{}", self.size)
        } else {
            let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
            write!(f, "{} ({})", self.size, parts.join("x"))
        }
    }
}

/// Whether configurations are indexed by the naturals or the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

/// A neighborhood interval `[lo, hi]` of cell offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    pub lo: i32,
    pub hi: i32,
}

impl Neighborhood {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidRule(format!("empty neighborhood [{lo},{hi}]")));
        }
        Ok(Neighborhood { lo, hi })
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo) as usize + 1
    }

    /// Smallest `r` with `[lo, hi] ⊆ [-r, r]`.
    pub fn radius(&self) -> usize {
        self.lo.unsigned_abs().max(self.hi.unsigned_abs()) as usize
    }

    pub fn hull(&self, other: &Neighborhood) -> Neighborhood {
        Neighborhood {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn contains(&self, other: &Neighborhood) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Interval sum, the neighborhood of a composition.
    pub fn sum(&self, other: &Neighborhood) -> Neighborhood {
        Neighborhood {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }
}

impl fmt::Display for Neighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Limits on the exponential parts of the crate. Every operation that can
/// blow up checks the relevant limit before allocating and fails with
/// [`Error::BudgetExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of entries in a rule table (`|A|^width`).
    pub max_table: u128,
    /// Maximum number of initial windows enumerated for a trace, and the
    /// maximum number of distinct column words kept.
    pub max_window: u128,
    /// Maximum number of search nodes for backtracking and subset searches.
    pub max_search: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_table: 100_000_000,
            max_window: 100_000_000,
            max_search: 50_000_000,
        }
    }
}

impl Budget {
    pub(crate) fn check_table(&self, required: u128) -> Result<()> {
        check(self.max_table, required, "rule table entries")
    }

    pub(crate) fn check_window(&self, required: u128) -> Result<()> {
        check(self.max_window, required, "trace enumeration windows")
    }
}

fn check(limit: u128, required: u128, what: &'static str) -> Result<()> {
    if required > limit {
        Err(Error::BudgetExceeded {
            what,
            required,
            limit,
        })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Lexicographic index of a word, first symbol most significant.
pub fn word_index(word: &[State], base: usize) -> usize {
    word.iter().fold(0usize, |acc, &s| acc * base + s as usize)
}

/// Inverse of [`word_index`] for words of a fixed length.
pub fn index_word(mut index: usize, base: usize, len: usize) -> Vec<State> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % base) as State;
        index /= base;
    }
    out
}

/// Advances `digits` to the next word in lexicographic order. Returns
/// `false` after the last word (and leaves `digits` all zero).
pub(crate) fn odometer(digits: &mut [State], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < base {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}
