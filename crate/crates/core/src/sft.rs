//! Subshifts of finite type as edge shifts, total amalgamation and one-sided
//! conjugacy, graph subshifts of rules, and trace-SFT approximations.
//!
//! A presentation is a square matrix of edge multiplicities. When it comes
//! from a set of allowed blocks it also carries state labels (words of
//! length `m-1` for `m`-block presentations) and the count of words is the
//! count of labels read along paths; otherwise words are edge paths.
//!
//! One-sided shifts are indexed by ℕ with the left shift, so a conjugacy may
//! look ahead but not back. Splitting a state's outgoing edges is then a
//! conjugacy and produces states with identical columns; amalgamation
//! undoes it by merging two states with identical columns (rows are summed,
//! one column is kept).

use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{odometer, Alphabet, Budget, Neighborhood, Sidedness, State};
use crate::blockmap::BlockMap;
use crate::error::{Error, Result};
use crate::reduction::verify_certificate;
use crate::rule::LocalRule;
use crate::trace::trace_words;

pub type Matrix = Vec<Vec<u64>>;

/// An edge-shift presentation, optionally labeled by words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftPresentation {
    pub sidedness: Sidedness,
    matrix: Matrix,
    labels: Option<Vec<Vec<State>>>,
}

impl SftPresentation {
    /// Unlabeled edge shift. Stranded states are trimmed.
    pub fn from_matrix(sidedness: Sidedness, matrix: Matrix) -> Result<Self> {
        check_square(&matrix)?;
        let mut p = SftPresentation {
            sidedness,
            matrix,
            labels: None,
        };
        p.trim();
        Ok(p)
    }

    /// Untrimmed edge shift, as given.
    pub fn raw(sidedness: Sidedness, matrix: Matrix) -> Result<Self> {
        check_square(&matrix)?;
        Ok(SftPresentation {
            sidedness,
            matrix,
            labels: None,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn labels(&self) -> Option<&[Vec<State>]> {
        self.labels.as_deref()
    }

    pub fn states(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    /// Removes states that lie on no admissible path: states without
    /// successors, and for two-sided shifts also states without
    /// predecessors.
    fn trim(&mut self) {
        loop {
            let n = self.matrix.len();
            let keep: Vec<usize> = (0..n)
                .filter(|&i| {
                    let out = self.matrix[i].iter().any(|&x| x > 0);
                    let inc = (0..n).any(|j| self.matrix[j][i] > 0);
                    out && (self.sidedness == Sidedness::OneSided || inc)
                })
                .collect();
            if keep.len() == n {
                return;
            }
            self.matrix = keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.matrix[i][j]).collect())
                .collect();
            if let Some(labels) = &mut self.labels {
                *labels = keep.iter().map(|&i| labels[i].clone()).collect();
            }
        }
    }

    /// Presentation whose words of length `m` are exactly `blocks` (all of
    /// length `m >= 2`) plus the constraint of extendability.
    pub fn from_blocks(sidedness: Sidedness, blocks: &BTreeSet<Vec<State>>) -> Result<Self> {
        let m = match blocks.first() {
            None => {
                return Ok(SftPresentation {
                    sidedness,
                    matrix: Vec::new(),
                    labels: Some(Vec::new()),
                })
            }
            Some(b) => b.len(),
        };
        if m < 2 || blocks.iter().any(|b| b.len() != m) {
            return Err(Error::InvalidRule("blocks must share a length of at least 2".into()));
        }
        let states: BTreeSet<&[State]> = blocks
            .iter()
            .flat_map(|b| [&b[..m - 1], &b[1..]])
            .collect();
        let states: Vec<&[State]> = states.into_iter().collect();
        let index = |w: &[State]| states.binary_search(&w).expect("state present");
        let mut matrix = vec![vec![0u64; states.len()]; states.len()];
        for b in blocks {
            matrix[index(&b[..m - 1])][index(&b[1..])] += 1;
        }
        let mut p = SftPresentation {
            sidedness,
            matrix,
            labels: Some(states.into_iter().map(|s| s.to_vec()).collect()),
        };
        p.trim();
        Ok(p)
    }

    /// Length of state labels (`m-1`), if labeled.
    pub fn label_length(&self) -> Option<usize> {
        self.labels.as_ref().and_then(|l| l.first().map(|w| w.len()))
    }

    /// Number of words of length `len`: labels read along paths, or edge
    /// paths of length `len` when unlabeled.
    pub fn word_count(&self, len: usize) -> Result<u128> {
        if self.is_empty() {
            return Ok(0);
        }
        match (&self.labels, self.label_length()) {
            (Some(labels), Some(l)) => {
                if len >= l {
                    sum_entries(&mat_pow(&self.matrix, len - l)?)
                } else {
                    let prefixes: HashSet<&[State]> = labels.iter().map(|w| &w[..len]).collect();
                    Ok(prefixes.len() as u128)
                }
            }
            _ => sum_entries(&mat_pow(&self.matrix, len)?),
        }
    }

    /// Number of points of period `n`: `trace(A^n)`.
    pub fn periodic_count(&self, n: usize) -> Result<u128> {
        let p = mat_pow(&self.matrix, n)?;
        p.iter()
            .enumerate()
            .try_fold(0u128, |acc, (i, row)| acc.checked_add(row[i]).ok_or_else(overflow))
    }

    /// Number of distinct words of length `len` after mapping each label
    /// symbol through `f`. Labeled presentations only; enumerates paths.
    pub fn projected_word_count(&self, len: usize, f: impl Fn(State) -> State, budget: &Budget) -> Result<usize> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| Error::Unsupported("projection needs a labeled presentation".into()))?;
        let mut out: HashSet<Vec<State>> = HashSet::new();
        let mut visited: u128 = 0;
        let mut stack: Vec<(usize, Vec<State>)> = (0..self.states())
            .map(|s| (s, labels[s].iter().map(|&x| f(x)).collect()))
            .collect();
        while let Some((s, word)) = stack.pop() {
            visited += 1;
            if visited > budget.max_search {
                return Err(Error::BudgetExceeded {
                    what: "projected path enumeration",
                    required: visited,
                    limit: budget.max_search,
                });
            }
            if word.len() >= len {
                out.insert(word[..len].to_vec());
                continue;
            }
            for (t, &c) in self.matrix[s].iter().enumerate() {
                if c > 0 {
                    let mut w = word.clone();
                    w.push(f(*labels[t].last().expect("nonempty label")));
                    stack.push((t, w));
                }
            }
        }
        Ok(out.len())
    }
}

fn overflow() -> Error {
    Error::BudgetExceeded {
        what: "u128 path count",
        required: u128::MAX,
        limit: u128::MAX,
    }
}

fn check_square(m: &Matrix) -> Result<()> {
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::InvalidRule("adjacency matrix must be square".into()));
    }
    Ok(())
}

fn mat_pow(m: &Matrix, e: usize) -> Result<Vec<Vec<u128>>> {
    let n = m.len();
    let mut acc: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u128).collect()).collect();
    let base: Vec<Vec<u128>> = m.iter().map(|r| r.iter().map(|&x| x as u128).collect()).collect();
    for _ in 0..e {
        let mut next = vec![vec![0u128; n]; n];
        for i in 0..n {
            for k in 0..n {
                if acc[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = acc[i][k].checked_mul(base[k][j]).ok_or_else(overflow)?;
                    next[i][j] = next[i][j].checked_add(t).ok_or_else(overflow)?;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn sum_entries(m: &[Vec<u128>]) -> Result<u128> {
    m.iter()
        .flatten()
        .try_fold(0u128, |acc, &x| acc.checked_add(x).ok_or_else(overflow))
}

/// Higher-block presentation of the shift avoiding `forbidden`.
pub fn sft_from_forbidden(alphabet: &Alphabet, forbidden: &[Vec<State>], sidedness: Sidedness, budget: &Budget) -> Result<SftPresentation> {
    for w in forbidden {
        if w.is_empty() {
            return Err(Error::InvalidRule("empty forbidden word".into()));
        }
        alphabet.check_word(w)?;
    }
    let m = forbidden.iter().map(Vec::len).max().unwrap_or(0).max(2);
    let n = alphabet.size();
    budget.check_window(crate::alphabet::pow_sat(n, m))?;
    let mut blocks = BTreeSet::new();
    let mut digits = vec![0 as State; m];
    loop {
        if !contains_any(&digits, forbidden) {
            blocks.insert(digits.clone());
        }
        if !odometer(&mut digits, n) {
            break;
        }
    }
    SftPresentation::from_blocks(sidedness, &blocks)
}

fn contains_any(word: &[State], forbidden: &[Vec<State>]) -> bool {
    forbidden
        .iter()
        .any(|f| f.len() <= word.len() && word.windows(f.len()).any(|w| w == f.as_slice()))
}

/// Which pairs of states amalgamation merges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AmalgamationConvention {
    /// Identical columns; rows are summed. A conjugacy for ℕ-indexed
    /// shifts.
    #[default]
    Columns,
    /// Identical rows; columns are summed. The mirror image, a conjugacy
    /// for shifts read in the other direction.
    Rows,
}

/// Merge steps `(kept, removed)` in the indices current at each step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AmalgamationTrace {
    pub convention: AmalgamationConvention,
    pub steps: Vec<(usize, usize)>,
    /// Final relabeling: `order[i]` is the pre-relabeling index of state `i`.
    pub order: Vec<usize>,
}

impl AmalgamationTrace {
    /// Applies the recorded merges and relabeling to `m`.
    pub fn replay(&self, m: &Matrix) -> Matrix {
        let mut cur = m.clone();
        for &(u, v) in &self.steps {
            cur = merge(&cur, u, v, self.convention);
        }
        permute(&cur, &self.order)
    }
}

fn mergeable(m: &Matrix, u: usize, v: usize, conv: AmalgamationConvention) -> bool {
    match conv {
        AmalgamationConvention::Columns => m.iter().all(|r| r[u] == r[v]),
        AmalgamationConvention::Rows => m[u] == m[v],
    }
}

fn merge(m: &Matrix, u: usize, v: usize, conv: AmalgamationConvention) -> Matrix {
    let n = m.len();
    let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    match conv {
        AmalgamationConvention::Columns => keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| if i == u { m[u][j] + m[v][j] } else { m[i][j] })
                    .collect()
            })
            .collect(),
        AmalgamationConvention::Rows => keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| if j == u { m[i][u] + m[i][v] } else { m[i][j] })
                    .collect()
            })
            .collect(),
    }
}

fn permute(m: &Matrix, order: &[usize]) -> Matrix {
    order
        .iter()
        .map(|&i| order.iter().map(|&j| m[i][j]).collect())
        .collect()
}

/// Breadth-first order from state 0, successors by index; unreached states
/// follow in index order.
fn bfs_order(m: &Matrix) -> Vec<usize> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for t in 0..n {
                if m[s][t] > 0 && !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    order
}

/// Merges the lexicographically least mergeable pair until none remains,
/// then relabels breadth-first.
pub fn total_amalgamation(sft: &SftPresentation) -> Result<(SftPresentation, AmalgamationTrace)> {
    total_amalgamation_with(sft, AmalgamationConvention::default())
}

pub fn total_amalgamation_with(
    sft: &SftPresentation,
    convention: AmalgamationConvention,
) -> Result<(SftPresentation, AmalgamationTrace)> {
    amalgamate_by(sft, convention, |pairs| pairs[0])
}

/// Amalgamation choosing among the mergeable pairs with `pick` (used to test
/// order independence).
pub fn amalgamate_by(
    sft: &SftPresentation,
    convention: AmalgamationConvention,
    mut pick: impl FnMut(&[(usize, usize)]) -> (usize, usize),
) -> Result<(SftPresentation, AmalgamationTrace)> {
    if sft.sidedness != Sidedness::OneSided {
        return Err(Error::Unsupported("amalgamation is for one-sided shifts only".into()));
    }
    let mut cur = sft.matrix.clone();
    let mut steps = Vec::new();
    loop {
        let n = cur.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| mergeable(&cur, u, v, convention))
            .collect();
        if pairs.is_empty() {
            break;
        }
        let (u, v) = pick(&pairs);
        cur = merge(&cur, u, v, convention);
        steps.push((u, v));
    }
    let order = bfs_order(&cur);
    let matrix = permute(&cur, &order);
    Ok((
        SftPresentation {
            sidedness: sft.sidedness,
            matrix,
            labels: None,
        },
        AmalgamationTrace {
            convention,
            steps,
            order,
        },
    ))
}

/// Largest state count accepted by the isomorphism search.
pub const ISOMORPHISM_STATE_LIMIT: usize = 12;

/// Isomorphism of directed multigraphs: a permutation `p` with
/// `a[i][j] = b[p(i)][p(j)]`, found by backtracking with degree pruning.
pub fn isomorphism(a: &Matrix, b: &Matrix) -> Result<Option<Vec<usize>>> {
    let n = a.len();
    if n != b.len() {
        return Ok(None);
    }
    if n > ISOMORPHISM_STATE_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "isomorphism states",
            required: n as u128,
            limit: ISOMORPHISM_STATE_LIMIT as u128,
        });
    }
    let sig = |m: &Matrix, i: usize| {
        let out: u64 = m[i].iter().sum();
        let inc: u64 = m.iter().map(|r| r[i]).sum();
        (out, inc, m[i][i])
    };
    let sa: Vec<_> = (0..n).map(|i| sig(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| sig(b, i)).collect();
    let mut x = sa.clone();
    let mut y = sb.clone();
    x.sort_unstable();
    y.sort_unstable();
    if x != y {
        return Ok(None);
    }
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(i: usize, a: &Matrix, b: &Matrix, sa: &[(u64, u64, u64)], sb: &[(u64, u64, u64)], p: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || sa[i] != sb[c] {
                continue;
            }
            let ok = (0..i).all(|j| a[i][j] == b[c][p[j]] && a[j][i] == b[p[j]][c]);
            if !ok {
                continue;
            }
            p[i] = c;
            used[c] = true;
            if go(i + 1, a, b, sa, sb, p, used) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    Ok(go(0, a, b, &sa, &sb, &mut p, &mut used).then_some(p))
}

/// Conjugacy of one-sided edge shifts: isomorphic total amalgamations.
pub fn one_sided_conjugate(x: &SftPresentation, y: &SftPresentation) -> Result<bool> {
    if x.sidedness != Sidedness::OneSided || y.sidedness != Sidedness::OneSided {
        return Err(Error::Unsupported("one-sided presentations only".into()));
    }
    let (ax, _) = total_amalgamation(x)?;
    let (ay, _) = total_amalgamation(y)?;
    Ok(isomorphism(&ax.matrix, &ay.matrix)?.is_some())
}

/// The shift `{(c, F(c))}` on `A x A`, as a 2-block presentation whose
/// states are the pairs `(a, b)` (encoded `a*|A| + b`).
pub fn graph_subshift(f: &LocalRule) -> Result<SftPresentation> {
    let nb = f.neighborhood();
    let target = if nb.lo >= 0 && nb.hi <= 1 {
        Neighborhood { lo: 0, hi: 1 }
    } else if nb.lo >= -1 && nb.hi <= 0 {
        Neighborhood { lo: -1, hi: 0 }
    } else {
        return Err(Error::Unsupported(format!(
            "graph subshift needs a neighborhood inside [0,1] or [-1,0], got {nb}; recode first"
        )));
    };
    let padded = f.pad(target)?;
    let n = f.alphabet().size();
    let mut blocks = BTreeSet::new();
    for a0 in 0..n as State {
        for a1 in 0..n as State {
            let out = padded.lookup(&[a0, a1]);
            for b in 0..n as State {
                let (b0, b1) = if target.lo == 0 { (out, b) } else { (b, out) };
                blocks.insert(vec![a0 * n as State + b0, a1 * n as State + b1]);
            }
        }
    }
    SftPresentation::from_blocks(f.sidedness(), &blocks)
}

/// `φ x φ` maps the graph subshift of `F` onto that of `G` bijectively
/// exactly when `φ` is a strong conjugacy from `F` to `G`.
pub fn check_phi_times_phi(f: &LocalRule, g: &LocalRule, phi: &BlockMap, budget: &Budget) -> Result<bool> {
    Ok(verify_certificate(phi, f, g, budget)?.is_valid())
}

/// The SFT whose allowed windows of length `max(depth, 2)` are the trace
/// words of that depth, with a flag saying whether its words of length one
/// more are all trace words too.
pub fn trace_sft_approx(rule: &LocalRule, k: usize, depth: usize, budget: &Budget) -> Result<(SftPresentation, bool)> {
    let m = depth.max(2);
    let words = trace_words(rule, k, m, budget)?.word_set();
    let sft = SftPresentation::from_blocks(Sidedness::OneSided, &words)?;
    let sft = if depth == 1 {
        // Only single symbols are constrained: all pairs of them are allowed.
        let symbols: BTreeSet<State> = words.iter().map(|w| w[0]).collect();
        let pairs = symbols
            .iter()
            .flat_map(|&a| symbols.iter().map(move |&b| vec![a, b]))
            .collect();
        SftPresentation::from_blocks(Sidedness::OneSided, &pairs)?
    } else {
        sft
    };
    let next = trace_words(rule, k, depth + 1, budget)?.count() as u128;
    let exact = sft.word_count(depth + 1)? == next;
    Ok((sft, exact))
}

/// Outcome of the bounded trace-SFT conjugacy pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceConjugacy {
    /// Both approximations certified at `depth` and their total
    /// amalgamations are isomorphic.
    Conjugate { depth: usize },
    /// Both certified and the amalgamations differ.
    NotConjugate { depth: usize },
    /// No depth up to the bound certified both approximations.
    Unknown,
}

/// Approximates `τ_k(F)` and `τ_k(G)` at increasing depth and, once both are
/// certified, compares them as one-sided SFTs. Meaningful for positively
/// expansive rules with `k` at least their expansivity window, where the
/// rule is conjugate to its trace; the certificate is a finite check only.
pub fn trace_conjugacy(f: &LocalRule, g: &LocalRule, k: usize, max_depth: usize, budget: &Budget) -> Result<TraceConjugacy> {
    for depth in 1..=max_depth {
        let (x, ex) = trace_sft_approx(f, k, depth, budget)?;
        let (y, ey) = trace_sft_approx(g, k, depth, budget)?;
        if ex && ey {
            return Ok(if one_sided_conjugate(&x, &y)? {
                TraceConjugacy::Conjugate { depth }
            } else {
                TraceConjugacy::NotConjugate { depth }
            });
        }
    }
    Ok(TraceConjugacy::Unknown)
}
