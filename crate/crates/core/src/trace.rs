//! Trace subshifts, subword complexity and entropy upper bounds.
//!
//! The depth-`L` trace words of cells `[0,k)` are the sequences
//! `(F^t(c)_{[0,k)})_{t<L}`. Each time step is one symbol of `A^k`, so a
//! column word is a word of length `L` over an alphabet of `|A|^k` symbols,
//! packed into a `u128` (first time step most significant).
//!
//! Two exact routes compute the word set:
//!
//! - enumeration: the column is a function of the initial word on the
//!   dependence window of `k + (L-1)(w-1)` cells (after padding the
//!   neighborhood to contain 0), and on a full shift every window value is
//!   realizable, so enumerating all of them gives exactly the trace words;
//! - transfer, for one-sided rules whose neighborhood lies in `[0,1]`: the
//!   depth-`L` column at `[0,k)` is determined by the initial cell 0 and the
//!   depth-`L-1` column at `[1,k+1)`, which ranges over the depth-`L-1`
//!   trace words independently of cell 0.

use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{odometer, pow_sat, Budget, Neighborhood, Sidedness, State};
use crate::error::{Error, Result};
use crate::rule::LocalRule;

/// The exact set of depth-`L` column words of `τ_k(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTable {
    pub k: usize,
    pub depth: usize,
    /// Number of column symbols, `|A|^k`.
    pub symbols: usize,
    words: HashSet<u128>,
}

impl TraceTable {
    /// Subword complexity `p_L`.
    pub fn count(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, word: &[State]) -> bool {
        word.len() == self.depth && self.words.contains(&pack(word, self.symbols))
    }

    /// Column words in lexicographic order.
    pub fn words(&self) -> Vec<Vec<State>> {
        let mut packed: Vec<u128> = self.words.iter().copied().collect();
        packed.sort_unstable();
        packed
            .into_iter()
            .map(|p| unpack(p, self.symbols, self.depth))
            .collect()
    }

    pub fn word_set(&self) -> BTreeSet<Vec<State>> {
        self.words().into_iter().collect()
    }

    /// Applies a symbol map to every column word and returns the image set.
    pub fn map_symbols(&self, f: impl Fn(State) -> State, target_symbols: usize) -> BTreeSet<Vec<State>> {
        self.words()
            .into_iter()
            .map(|w| {
                let img: Vec<State> = w.into_iter().map(&f).collect();
                debug_assert!(img.iter().all(|&s| (s as usize) < target_symbols));
                img
            })
            .collect()
    }
}

fn pack(word: &[State], base: usize) -> u128 {
    word.iter().fold(0u128, |acc, &s| acc * base as u128 + s as u128)
}

fn unpack(mut p: u128, base: usize, len: usize) -> Vec<State> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (p % base as u128) as State;
        p /= base as u128;
    }
    out
}

fn check_args(rule: &LocalRule, k: usize, depth: usize) -> Result<usize> {
    if k == 0 || depth == 0 {
        return Err(Error::InvalidRule("trace needs k >= 1 and L >= 1".into()));
    }
    let symbols = pow_sat(rule.alphabet().size(), k);
    if symbols > usize::MAX as u128 || pow_sat(symbols as usize, depth) == u128::MAX {
        return Err(Error::BudgetExceeded {
            what: "packed column word bits",
            required: (k * depth) as u128,
            limit: 127,
        });
    }
    Ok(symbols as usize)
}

/// The route [`trace_words`] takes for a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceRoute {
    Enumeration,
    Transfer,
}

pub fn route_for(rule: &LocalRule) -> TraceRoute {
    let nb = rule.neighborhood();
    if rule.sidedness() == Sidedness::OneSided && nb.hi <= 1 {
        TraceRoute::Transfer
    } else {
        TraceRoute::Enumeration
    }
}

/// Exact depth-`depth` trace words of cells `[0,k)`.
pub fn trace_words(rule: &LocalRule, k: usize, depth: usize, budget: &Budget) -> Result<TraceTable> {
    match route_for(rule) {
        TraceRoute::Transfer => trace_words_transfer(rule, k, depth, budget),
        TraceRoute::Enumeration => trace_words_enumerated(rule, k, depth, budget),
    }
}

/// Dependence-window size used by the enumeration route.
pub fn dependence_window(rule: &LocalRule, k: usize, depth: usize) -> usize {
    let nb = rule.neighborhood();
    let span = (nb.hi.max(0) - nb.lo.min(0)) as usize;
    k + (depth - 1) * span
}

/// Enumeration route: every initial word on the dependence window.
pub fn trace_words_enumerated(rule: &LocalRule, k: usize, depth: usize, budget: &Budget) -> Result<TraceTable> {
    let symbols = check_args(rule, k, depth)?;
    let nb = rule.neighborhood();
    let padded = rule.pad(Neighborhood {
        lo: nb.lo.min(0),
        hi: nb.hi.max(0),
    })?;
    let left = (-padded.neighborhood().lo) as usize;
    let window = dependence_window(rule, k, depth);
    let n = rule.alphabet().size();
    budget.check_window(pow_sat(n, window))?;

    let map = padded.as_block_map();
    let mut words = HashSet::new();
    let mut digits = vec![0 as State; window];
    let mut row: Vec<State> = Vec::with_capacity(window);
    loop {
        row.clear();
        row.extend_from_slice(&digits);
        let mut packed = 0u128;
        for t in 0..depth {
            // Row t starts at cell -(depth-1-t)*left.
            let off = (depth - 1 - t) * left;
            let sym = row[off..off + k].iter().fold(0usize, |acc, &s| acc * n + s as usize);
            packed = packed * symbols as u128 + sym as u128;
            if t + 1 < depth {
                row = map.apply_unchecked(&row);
            }
        }
        words.insert(packed);
        if !odometer(&mut digits, n) {
            break;
        }
    }
    Ok(TraceTable {
        k,
        depth,
        symbols,
        words,
    })
}

/// Transfer route for one-sided rules with neighborhood inside `[0,1]`.
pub fn trace_words_transfer(rule: &LocalRule, k: usize, depth: usize, budget: &Budget) -> Result<TraceTable> {
    let symbols = check_args(rule, k, depth)?;
    let nb = rule.neighborhood();
    if rule.sidedness() != Sidedness::OneSided || nb.hi > 1 {
        return Err(Error::Unsupported(
            "transfer route needs a one-sided rule with neighborhood inside [0,1]".into(),
        ));
    }
    let padded = rule.pad(Neighborhood { lo: 0, hi: 1 })?;
    let n = rule.alphabet().size();
    let f = |x: State, y: State| padded.table()[x as usize * n + y as usize];

    // Depth 1: every k-word.
    let mut words: HashSet<u128> = (0..symbols as u128).collect();
    let mut cells = vec![0 as State; k];
    let mut col: Vec<Vec<State>> = Vec::new();
    for d in 2..=depth {
        let mut next = HashSet::with_capacity(words.len() * n);
        for &w in &words {
            // w is the depth d-1 column at cells [1, k+1).
            col.clear();
            for sym in unpack(w, symbols, d - 1) {
                let mut c = vec![0 as State; k];
                let mut s = sym as usize;
                for slot in c.iter_mut().rev() {
                    *slot = (s % n) as State;
                    s /= n;
                }
                col.push(c);
            }
            for x0 in 0..n as State {
                let mut packed = 0u128;
                let mut c0 = x0;
                for t in 0..d {
                    if t + 1 < d {
                        cells[0] = c0;
                        cells[1..].copy_from_slice(&col[t][..k - 1]);
                        c0 = f(c0, col[t][0]);
                    } else {
                        let prev = &col[t - 1];
                        cells[0] = c0;
                        for i in 1..k {
                            cells[i] = f(prev[i - 1], prev[i]);
                        }
                    }
                    let sym = cells.iter().fold(0usize, |acc, &s| acc * n + s as usize);
                    packed = packed * symbols as u128 + sym as u128;
                }
                next.insert(packed);
            }
        }
        if next.len() as u128 > budget.max_window {
            return Err(Error::BudgetExceeded {
                what: "trace column words",
                required: next.len() as u128,
                limit: budget.max_window,
            });
        }
        words = next;
    }
    Ok(TraceTable {
        k,
        depth,
        symbols,
        words,
    })
}

pub fn subword_complexity(rule: &LocalRule, k: usize, depth: usize, budget: &Budget) -> Result<usize> {
    trace_words(rule, k, depth, budget).map(|t| t.count())
}

/// `p_L` of a track-wise product computed as the product of the factors'
/// counts (trace words of a product are pairs of trace words). Falls back
/// to [`subword_complexity`] when the rule does not split into tracks.
pub fn factored_complexity(rule: &LocalRule, k: usize, depth: usize, budget: &Budget) -> Result<u128> {
    match rule.factor_tracks() {
        Some(factors) => factors.iter().try_fold(1u128, |acc, f| {
            Ok(acc * factored_complexity(f, k, depth, budget)?)
        }),
        None => subword_complexity(rule, k, depth, budget).map(|p| p as u128),
    }
}

/// One row of an entropy report.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyRow {
    pub depth: usize,
    pub count: u128,
    /// `log2(p_L) / L`, an upper bound on the entropy of `τ_k`.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub k: usize,
    pub rows: Vec<EntropyRow>,
}

impl EntropyReport {
    /// Tab-separated `L  p_L  log2pL_over_L`, ratio to 12 significant digits.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("L\tp_L\tlog2pL_over_L\n");
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\n", r.depth, r.count, significant(r.bound, 12)));
        }
        out
    }

    /// Smallest bound over the rows.
    pub fn best_bound(&self) -> Option<f64> {
        self.rows.iter().map(|r| r.bound).reduce(f64::min)
    }
}

/// Formats `v` with `digits` significant digits in positional notation.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Upper bounds `log2(p_L)/L` for `L = 1..=max_depth`.
pub fn entropy_upper(rule: &LocalRule, k: usize, max_depth: usize, budget: &Budget) -> Result<EntropyReport> {
    let rows = (1..=max_depth)
        .map(|depth| {
            let count = subword_complexity(rule, k, depth, budget)? as u128;
            Ok(EntropyRow {
                depth,
                count,
                bound: (count as f64).log2() / depth as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyReport { k, rows })
}

/// Length-`len` factors of bi-infinite concatenations of equal-length
/// blocks.
pub fn block_shift_words(blocks: &[Vec<State>], len: usize) -> Result<BTreeSet<Vec<State>>> {
    let b = blocks
        .first()
        .map(|x| x.len())
        .ok_or_else(|| Error::InvalidRule("no blocks".into()))?;
    if b == 0 || blocks.iter().any(|x| x.len() != b) {
        return Err(Error::InvalidRule("blocks must share a positive length".into()));
    }
    let mut out = BTreeSet::new();
    for phase in 0..b {
        let count = (phase + len).div_ceil(b);
        let mut choice = vec![0 as State; count];
        loop {
            let concat: Vec<State> = choice.iter().flat_map(|&c| blocks[c as usize].iter().copied()).collect();
            out.insert(concat[phase..phase + len].to_vec());
            if !odometer(&mut choice, blocks.len()) {
                break;
            }
        }
    }
    Ok(out)
}
