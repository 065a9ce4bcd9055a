//! Cellular automata given by local rules, and the rule algebra.

use std::fmt;
use std::ops::Range;

use crate::alphabet::{pow_sat, Alphabet, Budget, Neighborhood, Sidedness, State};
use crate::blockmap::{BlockMap, Difference};
use crate::error::{Error, Result};

/// A cellular automaton on a full shift: a block map whose source and target
/// alphabets are the same.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalRule(BlockMap);

/// Result of [`LocalRule::classify_state`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateClass {
    pub quiescent: bool,
    pub spreading: bool,
}

impl LocalRule {
    pub fn new(
        alphabet: Alphabet,
        sidedness: Sidedness,
        nbhd: Neighborhood,
        table: Vec<State>,
    ) -> Result<Self> {
        BlockMap::new(alphabet.clone(), alphabet, sidedness, nbhd, table).map(LocalRule)
    }

    pub fn from_fn(
        alphabet: Alphabet,
        sidedness: Sidedness,
        nbhd: Neighborhood,
        budget: &Budget,
        f: impl FnMut(&[State]) -> State,
    ) -> Result<Self> {
        BlockMap::from_fn(alphabet.clone(), alphabet, sidedness, nbhd, budget, f).map(LocalRule)
    }

    pub fn identity(alphabet: Alphabet, sidedness: Sidedness) -> Self {
        LocalRule(BlockMap::identity(alphabet, sidedness))
    }

    /// The left shift `σ(c)_x = c_{x+1}`, stored on the neighborhood `[0,1]`.
    pub fn shift(alphabet: Alphabet, sidedness: Sidedness) -> Self {
        let n = alphabet.size();
        let table = (0..n * n).map(|i| (i % n) as State).collect();
        LocalRule::new(alphabet, sidedness, Neighborhood { lo: 0, hi: 1 }, table)
            .expect("shift table is total")
    }

    pub fn constant(alphabet: Alphabet, sidedness: Sidedness, q: State) -> Result<Self> {
        alphabet.check_state(q)?;
        let n = alphabet.size();
        LocalRule::new(alphabet, sidedness, Neighborhood { lo: 0, hi: 0 }, vec![q; n])
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.0.source()
    }

    pub fn sidedness(&self) -> Sidedness {
        self.0.sidedness()
    }

    pub fn neighborhood(&self) -> Neighborhood {
        self.0.neighborhood()
    }

    pub fn width(&self) -> usize {
        self.0.width()
    }

    pub fn radius(&self) -> usize {
        self.0.radius()
    }

    pub fn table(&self) -> &[State] {
        self.0.table()
    }

    pub fn lookup(&self, window: &[State]) -> State {
        self.0.lookup(window)
    }

    pub fn as_block_map(&self) -> &BlockMap {
        &self.0
    }

    pub fn into_block_map(self) -> BlockMap {
        self.0
    }

    pub fn apply_word(&self, input: &[State]) -> Result<Vec<State>> {
        self.0.apply_word(input)
    }

    pub fn apply_cyclic(&self, c: &CyclicConfig) -> CyclicConfig {
        CyclicConfig {
            word: self.0.apply_cyclic(&c.word),
        }
    }

    pub fn pad(&self, to: Neighborhood) -> Result<LocalRule> {
        self.0.pad(to).map(LocalRule)
    }

    pub fn trim(&self) -> LocalRule {
        LocalRule(self.0.trim())
    }

    fn check_compatible(&self, other: &LocalRule) -> Result<()> {
        if !self.alphabet().same_size(other.alphabet()) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet().size(),
                right: other.alphabet().size(),
            });
        }
        if self.sidedness() != other.sidedness() {
            return Err(Error::SidednessMismatch);
        }
        Ok(())
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &LocalRule, inner: &LocalRule, budget: &Budget) -> Result<LocalRule> {
        outer.check_compatible(inner)?;
        BlockMap::compose(outer.as_block_map(), inner.as_block_map(), budget).map(LocalRule)
    }

    /// `rule^n`, on the neighborhood `n·[lo,hi]` (width `n·(width−1)+1`).
    /// `rule^0` is the identity.
    pub fn power(&self, n: usize, budget: &Budget) -> Result<LocalRule> {
        if n == 0 {
            return Ok(LocalRule::identity(self.alphabet().clone(), self.sidedness()));
        }
        let width = n.saturating_mul(self.width() - 1).saturating_add(1);
        budget.check_table(pow_sat(self.alphabet().size(), width))?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = LocalRule::compose(self, &acc, budget)?;
        }
        Ok(acc)
    }

    /// Track-wise product on `A x B`.
    pub fn product(a: &LocalRule, b: &LocalRule, budget: &Budget) -> Result<LocalRule> {
        BlockMap::product(a.as_block_map(), b.as_block_map(), budget).map(LocalRule)
    }

    /// Product of several rules, tracks in order.
    pub fn product_all(rules: &[LocalRule], budget: &Budget) -> Result<LocalRule> {
        let (first, rest) = rules
            .split_first()
            .ok_or_else(|| Error::InvalidRule("empty product".into()))?;
        rest.iter()
            .try_fold(first.clone(), |acc, r| LocalRule::product(&acc, r, budget))
    }

    /// The rule acting on a single track of a product alphabet.
    pub fn project(&self, track: usize) -> Result<LocalRule> {
        self.project_tracks(track..track + 1)
    }

    pub fn project_tracks(&self, tracks: Range<usize>) -> Result<LocalRule> {
        self.0.project(tracks).map(LocalRule)
    }

    /// The per-track factors if this rule is a product of rules on each track
    /// of its alphabet.
    pub fn factor_tracks(&self) -> Option<Vec<LocalRule>> {
        let count = self.alphabet().track_count();
        if count < 2 {
            return None;
        }
        (0..count).map(|t| self.project(t).ok()).collect()
    }

    /// Equality of global maps (padded-table equality).
    pub fn equals(&self, other: &LocalRule) -> bool {
        self.0.same_map(&other.0)
    }

    pub fn first_difference(&self, other: &LocalRule) -> Option<Difference> {
        self.0.first_difference(&other.0)
    }

    pub fn classify_state(&self, s: State) -> Result<StateClass> {
        self.alphabet().check_state(s)?;
        let n = self.alphabet().size();
        let w = self.width();
        let all_s = (0..w).fold(0usize, |acc, _| acc * n + s as usize);
        let quiescent = self.table()[all_s] == s;
        let mut spreading = quiescent;
        if spreading {
            let mut digits = vec![0 as State; w];
            for (i, &out) in self.table().iter().enumerate() {
                if i > 0 {
                    crate::alphabet::odometer(&mut digits, n);
                }
                if out != s && digits.contains(&s) {
                    spreading = false;
                    break;
                }
            }
        }
        Ok(StateClass {
            quiescent,
            spreading,
        })
    }

    /// Conjugate by a symbol permutation: the result maps `perm(w)` to
    /// `perm(self(w))`.
    pub fn relabel(&self, perm: &[State]) -> Result<LocalRule> {
        let n = self.alphabet().size();
        if perm.len() != n {
            return Err(Error::InvalidRule("permutation length differs from alphabet".into()));
        }
        let mut inv = vec![State::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            self.alphabet().check_state(p)?;
            inv[p as usize] = i as State;
        }
        if inv.contains(&State::MAX) {
            return Err(Error::InvalidRule("not a permutation".into()));
        }
        let mut pre = Vec::with_capacity(self.width());
        LocalRule::from_fn(
            self.alphabet().clone(),
            self.sidedness(),
            self.neighborhood(),
            &Budget::default(),
            |w| {
                pre.clear();
                pre.extend(w.iter().map(|&s| inv[s as usize]));
                perm[self.lookup(&pre) as usize]
            },
        )
    }
}

impl TryFrom<BlockMap> for LocalRule {
    type Error = Error;

    fn try_from(map: BlockMap) -> Result<Self> {
        if !map.source().same_size(map.target()) {
            return Err(Error::AlphabetMismatch {
                left: map.source().size(),
                right: map.target().size(),
            });
        }
        let a = map.source().clone();
        Ok(LocalRule(map.with_alphabets(a.clone(), a)))
    }
}

impl fmt::Display for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_rule(self.as_block_map()))
    }
}

/// A spatially periodic configuration, the repetition of a nonempty word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicConfig {
    word: Vec<State>,
}

impl CyclicConfig {
    pub fn new(word: Vec<State>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidRule("cyclic configuration needs period >= 1".into()));
        }
        Ok(CyclicConfig { word })
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[State] {
        &self.word
    }

    /// `σ^k` of the configuration.
    pub fn rotate(&self, k: usize) -> CyclicConfig {
        let mut word = self.word.clone();
        word.rotate_left(k % self.word.len());
        CyclicConfig { word }
    }

    pub fn is_constant(&self, q: State) -> bool {
        self.word.iter().all(|&s| s == q)
    }
}
