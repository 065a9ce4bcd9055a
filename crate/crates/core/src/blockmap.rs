//! Sliding block codes between full shifts.
//!
//! A [`BlockMap`] is a total table from source windows of a fixed
//! neighborhood to target states. Cellular automata are the block maps whose
//! source and target alphabets coincide (see [`crate::LocalRule`]); candidate
//! conjugacies and track projections are general block maps.
//!
//! The global map is `Φ(c)_x = table(c[x+lo ..= x+hi])`. On a finite word
//! `w`, [`BlockMap::apply_word`] returns the values of every window that fits
//! inside `w`: output position `t` reads `w[t .. t+width]` and holds cell
//! `t - lo` of the image.

use std::ops::Range;

use crate::alphabet::{index_word, odometer, pow_sat, word_index, Alphabet, Budget, Neighborhood, Sidedness, State};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockMap {
    source: Alphabet,
    target: Alphabet,
    sidedness: Sidedness,
    nbhd: Neighborhood,
    table: Vec<State>,
}

/// A window on which two block maps disagree, reported on their common
/// (padded) neighborhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub neighborhood: Neighborhood,
    pub window: Vec<State>,
    pub left: State,
    pub right: State,
}

impl BlockMap {
    pub fn new(
        source: Alphabet,
        target: Alphabet,
        sidedness: Sidedness,
        nbhd: Neighborhood,
        table: Vec<State>,
    ) -> Result<Self> {
        if sidedness == Sidedness::OneSided && nbhd.lo < 0 {
            return Err(Error::InvalidRule(format!(
                "one-sided rule with neighborhood {nbhd} reads cells to the left"
            )));
        }
        let expected = pow_sat(source.size(), nbhd.width());
        if table.len() as u128 != expected {
            return Err(Error::InvalidRule(format!(
                "table has {} entries, expected {}",
                table.len(),
                expected
            )));
        }
        table.iter().try_for_each(|&s| target.check_state(s))?;
        Ok(BlockMap {
            source,
            target,
            sidedness,
            nbhd,
            table,
        })
    }

    /// Builds the table by evaluating `f` on every window in lexicographic
    /// order.
    pub fn from_fn(
        source: Alphabet,
        target: Alphabet,
        sidedness: Sidedness,
        nbhd: Neighborhood,
        budget: &Budget,
        mut f: impl FnMut(&[State]) -> State,
    ) -> Result<Self> {
        let n = source.size();
        let w = nbhd.width();
        budget.check_table(pow_sat(n, w))?;
        let mut table = Vec::with_capacity(n.pow(w as u32));
        let mut digits = vec![0; w];
        loop {
            table.push(f(&digits));
            if !odometer(&mut digits, n) {
                break;
            }
        }
        BlockMap::new(source, target, sidedness, nbhd, table)
    }

    pub fn identity(alphabet: Alphabet, sidedness: Sidedness) -> Self {
        let table = (0..alphabet.size() as State).collect();
        BlockMap {
            target: alphabet.clone(),
            source: alphabet,
            sidedness,
            nbhd: Neighborhood { lo: 0, hi: 0 },
            table,
        }
    }

    /// Width-1 map keeping the tracks in `tracks` of a product alphabet.
    pub fn projection(alphabet: &Alphabet, tracks: Range<usize>, sidedness: Sidedness) -> Result<Self> {
        let all = alphabet.tracks();
        if tracks.is_empty() || tracks.end > all.len() {
            return Err(Error::InvalidAlphabet(format!(
                "track range {tracks:?} out of {} tracks",
                all.len()
            )));
        }
        let target = Alphabet::with_factors(&all[tracks.clone()])?;
        let table = (0..alphabet.size() as State)
            .map(|s| target.join(&alphabet.split(s)[tracks.clone()]))
            .collect();
        BlockMap::new(
            alphabet.clone(),
            target,
            sidedness,
            Neighborhood { lo: 0, hi: 0 },
            table,
        )
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn neighborhood(&self) -> Neighborhood {
        self.nbhd
    }

    pub fn width(&self) -> usize {
        self.nbhd.width()
    }

    pub fn radius(&self) -> usize {
        self.nbhd.radius()
    }

    pub fn table(&self) -> &[State] {
        &self.table
    }

    pub fn lookup(&self, window: &[State]) -> State {
        debug_assert_eq!(window.len(), self.width());
        self.table[word_index(window, self.source.size())]
    }

    pub fn lookup_index(&self, index: usize) -> State {
        self.table[index]
    }

    pub(crate) fn with_alphabets(mut self, source: Alphabet, target: Alphabet) -> Self {
        debug_assert!(source.same_size(&self.source) && target.same_size(&self.target));
        self.source = source;
        self.target = target;
        self
    }

    pub fn apply_word(&self, input: &[State]) -> Result<Vec<State>> {
        let w = self.width();
        if input.len() < w {
            return Err(Error::InputTooShort {
                len: input.len(),
                width: w,
            });
        }
        self.source.check_word(input)?;
        Ok(self.apply_unchecked(input))
    }

    pub(crate) fn apply_unchecked(&self, input: &[State]) -> Vec<State> {
        let w = self.width();
        let n = self.source.size();
        let modulus = n.pow(w as u32 - 1);
        let mut idx = word_index(&input[..w - 1], n);
        let mut out = Vec::with_capacity(input.len() + 1 - w);
        for &s in &input[w - 1..] {
            idx = idx * n + s as usize;
            out.push(self.table[idx]);
            idx %= modulus.max(1);
        }
        out
    }

    /// Image of the spatially periodic configuration repeating `word`.
    /// Cell `x` of the result is the image cell `x`.
    pub fn apply_cyclic(&self, word: &[State]) -> Vec<State> {
        let p = word.len();
        let w = self.width();
        let n = self.source.size();
        (0..p)
            .map(|x| {
                let start = (x as i64 + self.nbhd.lo as i64).rem_euclid(p as i64) as usize;
                let idx = (0..w).fold(0usize, |acc, t| acc * n + word[(start + t) % p] as usize);
                self.table[idx]
            })
            .collect()
    }

    /// The same global map on a larger neighborhood.
    pub fn pad(&self, to: Neighborhood) -> Result<BlockMap> {
        if !to.contains(&self.nbhd) {
            return Err(Error::InvalidRule(format!(
                "cannot pad {} to {}",
                self.nbhd, to
            )));
        }
        if to == self.nbhd {
            return Ok(self.clone());
        }
        let n = self.source.size();
        let right = (to.hi - self.nbhd.hi) as u32;
        let inner = n.pow(self.width() as u32);
        let div = n.pow(right);
        let total = pow_sat(n, to.width());
        if total > usize::MAX as u128 / 2 {
            return Err(Error::BudgetExceeded {
                what: "rule table entries",
                required: total,
                limit: usize::MAX as u128 / 2,
            });
        }
        let table = (0..total as usize)
            .map(|i| self.table[(i / div) % inner])
            .collect();
        Ok(BlockMap {
            source: self.source.clone(),
            target: self.target.clone(),
            sidedness: self.sidedness,
            nbhd: to,
            table,
        })
    }

    /// The same global map on the smallest neighborhood obtainable by
    /// dropping end positions the table ignores.
    pub fn trim(&self) -> BlockMap {
        let n = self.source.size();
        let mut nbhd = self.nbhd;
        let mut table = self.table.clone();
        // Drop ignored leading positions.
        while nbhd.width() > 1 {
            let block = n.pow(nbhd.width() as u32 - 1);
            if (0..table.len()).all(|i| table[i] == table[i % block]) {
                table.truncate(block);
                nbhd.lo += 1;
            } else {
                break;
            }
        }
        // Drop ignored trailing positions.
        while nbhd.width() > 1 {
            let ignores_last = table.chunks(n).all(|c| c.iter().all(|&v| v == c[0]));
            if ignores_last {
                table = table.chunks(n).map(|c| c[0]).collect();
                nbhd.hi -= 1;
            } else {
                break;
            }
        }
        BlockMap {
            source: self.source.clone(),
            target: self.target.clone(),
            sidedness: self.sidedness,
            nbhd,
            table,
        }
    }

    /// Table of `outer ∘ inner`, on the interval-sum neighborhood.
    pub fn compose(outer: &BlockMap, inner: &BlockMap, budget: &Budget) -> Result<BlockMap> {
        if !outer.source.same_size(&inner.target) {
            return Err(Error::AlphabetMismatch {
                left: outer.source.size(),
                right: inner.target.size(),
            });
        }
        if outer.sidedness != inner.sidedness {
            return Err(Error::SidednessMismatch);
        }
        let n = inner.source.size();
        let m = outer.source.size();
        let w_in = inner.width();
        let w_out = outer.width();
        let big_w = w_in + w_out - 1;
        budget.check_table(pow_sat(n, big_w))?;
        let total = n.pow(big_w as u32);
        let in_mod = n.pow(w_in as u32);
        let out_mod = m.pow(w_out as u32);
        let mut table = Vec::with_capacity(total);
        let mut digits = vec![0 as State; big_w];
        loop {
            let mut idx_in = word_index(&digits[..w_in - 1], n);
            let mut idx_out = 0usize;
            for &d in &digits[w_in - 1..] {
                idx_in = (idx_in * n + d as usize) % in_mod;
                idx_out = (idx_out * m + inner.table[idx_in] as usize) % out_mod;
            }
            table.push(outer.table[idx_out]);
            if !odometer(&mut digits, n) {
                break;
            }
        }
        Ok(BlockMap {
            source: inner.source.clone(),
            target: outer.target.clone(),
            sidedness: inner.sidedness,
            nbhd: outer.nbhd.sum(&inner.nbhd),
            table,
        })
    }

    /// `a x b` acting on the product alphabets track-wise.
    pub fn product(a: &BlockMap, b: &BlockMap, budget: &Budget) -> Result<BlockMap> {
        if a.sidedness != b.sidedness {
            return Err(Error::SidednessMismatch);
        }
        let hull = a.nbhd.hull(&b.nbhd);
        let source = a.source.product(&b.source)?;
        let target = a.target.product(&b.target)?;
        let (na, nb) = (a.source.size(), b.source.size());
        let w = hull.width();
        budget.check_table(pow_sat(source.size(), w))?;
        let pa = a.pad(hull)?;
        let pb = b.pad(hull)?;
        let tb = b.target.size();
        BlockMap::from_fn(source, target, a.sidedness, hull, budget, |win| {
            let (mut ia, mut ib) = (0usize, 0usize);
            for &s in win {
                ia = ia * na + s as usize / nb;
                ib = ib * nb + s as usize % nb;
            }
            (pa.table[ia] as usize * tb + pb.table[ib] as usize) as State
        })
    }

    /// First window (in lexicographic order on the common neighborhood) where
    /// the two global maps differ, or `None` if they are equal.
    pub fn first_difference(&self, other: &BlockMap) -> Option<Difference> {
        let hull = self.nbhd.hull(&other.nbhd);
        let a = self.pad(hull).ok()?;
        let b = other.pad(hull).ok()?;
        let n = self.source.size();
        a.table
            .iter()
            .zip(&b.table)
            .position(|(x, y)| x != y)
            .map(|i| Difference {
                neighborhood: hull,
                window: index_word(i, n, hull.width()),
                left: a.table[i],
                right: b.table[i],
            })
    }

    /// Equality of the global maps. Maps over different alphabets or
    /// sidedness are never equal.
    pub fn same_map(&self, other: &BlockMap) -> bool {
        self.source.same_size(&other.source)
            && self.target.same_size(&other.target)
            && self.sidedness == other.sidedness
            && self.first_difference(other).is_none()
    }

    /// The map on the sub-alphabet formed by `tracks` of both source and
    /// target, if the output on those tracks depends only on the input on
    /// those tracks.
    pub fn project(&self, tracks: Range<usize>) -> Result<BlockMap> {
        let src_tracks = self.source.tracks();
        let tgt_tracks = self.target.tracks();
        if tracks.is_empty() || tracks.end > src_tracks.len() || tracks.end > tgt_tracks.len() {
            return Err(Error::InvalidAlphabet(format!("track range {tracks:?} out of range")));
        }
        let sub_src = Alphabet::with_factors(&src_tracks[tracks.clone()])?;
        let sub_tgt = Alphabet::with_factors(&tgt_tracks[tracks.clone()])?;
        let n = self.source.size();
        let sn = sub_src.size();
        let w = self.width();
        let mut table: Vec<Option<State>> = vec![None; sn.pow(w as u32)];
        let mut digits = vec![0 as State; w];
        let mut i = 0usize;
        loop {
            let out = self.target.split(self.table[i]);
            let out = sub_tgt.join(&out[tracks.clone()]);
            let sub_idx = digits.iter().fold(0usize, |acc, &s| {
                acc * sn + sub_src.join(&self.source.split(s)[tracks.clone()]) as usize
            });
            match table[sub_idx] {
                None => table[sub_idx] = Some(out),
                Some(prev) if prev == out => {}
                Some(_) => return Err(Error::NotAProduct(format!("{tracks:?}"))),
            }
            i += 1;
            if !odometer(&mut digits, n) {
                break;
            }
        }
        let table = table.into_iter().map(|x| x.unwrap_or(0)).collect();
        BlockMap::new(sub_src, sub_tgt, self.sidedness, self.nbhd, table)
    }
}
