//! Decision procedures through de Bruijn and pair graphs.
//!
//! The de Bruijn graph of a block map of width `w` has the words of length
//! `w-1` as nodes and an edge `u -a/b-> u'` for every input symbol `a`, where
//! `b` is the table value of the window `u·a` and `u'` drops the first
//! symbol of `u·a`. The pair graph is its self-product restricted to edge
//! pairs with equal outputs. Paths in the pair graph are pairs of inputs
//! with equal images.
//!
//! Conditions used:
//!
//! - Two-sided injectivity fails iff some edge `(a, b)` with `a != b` lies on
//!   a cycle of the pair graph. (A bi-infinite path through such an edge
//!   starts and ends in cycles; if every cycle were diagonal both would lie
//!   in the strongly connected diagonal component, which closes a cycle
//!   through the edge.) The cycle gives two distinct periodic
//!   configurations with the same image.
//! - One-sided injectivity (configurations indexed by the naturals) fails
//!   iff, after padding the neighborhood to start at 0, some non-diagonal
//!   node or some edge with `a != b` has an infinite forward path. The path
//!   gives two distinct eventually periodic configurations with the same
//!   image.
//! - Surjectivity on full shifts of equal size is pre-injectivity (no two
//!   configurations that differ in finitely many cells share an image):
//!   it fails iff an edge with `a != b` is reachable from the diagonal and
//!   can reach the diagonal. Orphans are then found by a subset search over
//!   the output language, which is also the procedure used when the
//!   alphabets differ in size.
//!
//! Every negative verdict carries a witness that is re-checked by direct
//! simulation before it is returned.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;

use crate::alphabet::{index_word, odometer, pow_sat, Budget, Neighborhood, Sidedness, State};
use crate::blockmap::BlockMap;
use crate::error::{Error, Result};
use crate::format::format_word;
use crate::rule::{CyclicConfig, LocalRule};

impl AsRef<BlockMap> for BlockMap {
    fn as_ref(&self) -> &BlockMap {
        self
    }
}

impl AsRef<BlockMap> for LocalRule {
    fn as_ref(&self) -> &BlockMap {
        self.as_block_map()
    }
}

/// The de Bruijn graph of a block map, kept implicit: node `u` is the index
/// of a word of length `width-1`.
#[derive(Clone, Debug)]
pub struct DeBruijnGraph<'a> {
    map: &'a BlockMap,
    nodes: usize,
}

impl<'a> DeBruijnGraph<'a> {
    pub fn new(map: &'a BlockMap) -> Self {
        let nodes = map.source().size().pow(map.width() as u32 - 1);
        DeBruijnGraph { map, nodes }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.nodes * self.map.source().size()
    }

    /// Outgoing edges of `node` as `(input, output, successor)`.
    pub fn edges(&self, node: usize) -> impl Iterator<Item = (State, State, usize)> + '_ {
        let n = self.map.source().size();
        (0..n).map(move |a| {
            let window = node * n + a;
            (a as State, self.map.lookup_index(window), window % self.nodes)
        })
    }
}

/// Pair graph: nodes are pairs of de Bruijn nodes `(u, v)` encoded as
/// `u * N + v`; edges carry the two input symbols.
pub struct PairGraph {
    graph: DiGraph<(), (State, State), u32>,
    side: usize,
}

impl PairGraph {
    pub fn new(map: &BlockMap) -> Self {
        let db = DeBruijnGraph::new(map);
        let side = db.node_count();
        let outputs = map.target().size();
        // by_out[u][c] = inputs a (with successor) leaving u with output c.
        let by_out: Vec<Vec<Vec<(State, usize)>>> = (0..side)
            .map(|u| {
                let mut groups = vec![Vec::new(); outputs];
                for (a, c, t) in db.edges(u) {
                    groups[c as usize].push((a, t));
                }
                groups
            })
            .collect();
        let mut graph = DiGraph::with_capacity(side * side, 0);
        for _ in 0..side * side {
            graph.add_node(());
        }
        for u in 0..side {
            for v in 0..side {
                let src = NodeIndex::new(u * side + v);
                for (gu, gv) in by_out[u].iter().zip(&by_out[v]) {
                    for &(a, tu) in gu {
                        for &(b, tv) in gv {
                            graph.add_edge(src, NodeIndex::new(tu * side + tv), (a, b));
                        }
                    }
                }
            }
        }
        PairGraph { graph, side }
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_diagonal(&self, node: usize) -> bool {
        node / self.side == node % self.side
    }

    fn pair(&self, node: usize) -> (usize, usize) {
        (node / self.side, node % self.side)
    }

    /// Out-edges in a fixed order (ascending input pair).
    fn out_edges(&self, node: usize) -> Vec<(State, State, usize)> {
        let mut e: Vec<_> = self
            .graph
            .edges(NodeIndex::new(node))
            .map(|e| (e.weight().0, e.weight().1, e.target().index()))
            .collect();
        e.sort_unstable();
        e
    }

    fn components(&self) -> Vec<usize> {
        let mut comp = vec![0; self.node_count()];
        for (i, scc) in tarjan_scc(&self.graph).into_iter().enumerate() {
            for n in scc {
                comp[n.index()] = i;
            }
        }
        comp
    }

    /// Nodes lying on some cycle.
    fn cyclic_nodes(&self, comp: &[usize]) -> Vec<bool> {
        let mut size = HashMap::new();
        for &c in comp {
            *size.entry(c).or_insert(0usize) += 1;
        }
        (0..self.node_count())
            .map(|n| {
                size[&comp[n]] > 1
                    || self
                        .graph
                        .edges(NodeIndex::new(n))
                        .any(|e| e.target().index() == n)
            })
            .collect()
    }

    fn reach(&self, seeds: impl Iterator<Item = usize>, dir: Direction) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(n) = queue.pop_front() {
            for m in self.graph.neighbors_directed(NodeIndex::new(n), dir) {
                if !seen[m.index()] {
                    seen[m.index()] = true;
                    queue.push_back(m.index());
                }
            }
        }
        seen
    }

    /// Shortest path of edges from `from` to `to` using only nodes accepted
    /// by `allowed`. Empty when `from == to`.
    fn path(&self, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<(State, State, usize)>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut parent: HashMap<usize, (usize, State, State)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        parent.insert(from, (from, 0, 0));
        while let Some(n) = queue.pop_front() {
            for (a, b, m) in self.out_edges(n) {
                if !allowed(m) || parent.contains_key(&m) {
                    continue;
                }
                parent.insert(m, (n, a, b));
                if m == to {
                    let mut out = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let (p, a, b) = parent[&cur];
                        out.push((a, b, cur));
                        cur = p;
                    }
                    out.reverse();
                    return Some(out);
                }
                queue.push_back(m);
            }
        }
        None
    }
}

/// A configuration `prefix · cycle^ω` (periodic when the prefix is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub prefix: Vec<State>,
    pub cycle: Vec<State>,
}

impl EventuallyPeriodic {
    pub fn periodic(cycle: Vec<State>) -> Self {
        EventuallyPeriodic {
            prefix: Vec::new(),
            cycle,
        }
    }

    /// The first `len` symbols.
    pub fn expand(&self, len: usize) -> Vec<State> {
        self.prefix
            .iter()
            .copied()
            .chain(self.cycle.iter().copied().cycle())
            .take(len)
            .collect()
    }

    pub fn describe(&self, alphabet_size: usize) -> String {
        if self.prefix.is_empty() {
            format!("periodic {}", format_word(&self.cycle, alphabet_size))
        } else {
            format!(
                "eventually-periodic {}({})",
                format_word(&self.prefix, alphabet_size),
                format_word(&self.cycle, alphabet_size)
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two distinct configurations with the same image.
    Collision {
        left: EventuallyPeriodic,
        right: EventuallyPeriodic,
    },
    /// A word with no preimage.
    Orphan(Vec<State>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionWitness {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl DecisionWitness {
    fn yes() -> Self {
        DecisionWitness {
            verdict: true,
            witness: None,
        }
    }

    fn no(w: Witness) -> Self {
        DecisionWitness {
            verdict: false,
            witness: Some(w),
        }
    }

    /// Witness lines in the CLI format.
    pub fn witness_lines(&self, source_size: usize, target_size: usize) -> Vec<String> {
        match &self.witness {
            None => Vec::new(),
            Some(Witness::Collision { left, right }) => vec![
                format!("witness: {}", left.describe(source_size)),
                format!("witness: {}", right.describe(source_size)),
            ],
            Some(Witness::Orphan(w)) => vec![format!("orphan: {}", format_word(w, target_size))],
        }
    }
}

impl fmt::Display for DecisionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.verdict { "yes" } else { "no" })
    }
}

/// Pads one-sided maps so the neighborhood starts at cell 0; the first
/// `w-1` symbols of a one-sided configuration are then a de Bruijn node.
fn anchored(map: &BlockMap) -> Result<BlockMap> {
    let nb = map.neighborhood();
    match map.sidedness() {
        Sidedness::OneSided if nb.lo > 0 => map.pad(Neighborhood { lo: 0, hi: nb.hi }),
        _ => Ok(map.clone()),
    }
}

fn check_pair_budget(map: &BlockMap, budget: &Budget) -> Result<()> {
    let side = pow_sat(map.source().size(), map.width() - 1);
    let nodes = side.saturating_mul(side);
    if nodes > budget.max_search {
        return Err(Error::BudgetExceeded {
            what: "pair graph nodes",
            required: nodes,
            limit: budget.max_search,
        });
    }
    Ok(())
}

/// Decides injectivity of the global map on `A^ℕ` or `A^ℤ` (by sidedness).
pub fn is_injective(map: impl AsRef<BlockMap>, budget: &Budget) -> Result<DecisionWitness> {
    let map = anchored(map.as_ref())?;
    check_pair_budget(&map, budget)?;
    let pg = PairGraph::new(&map);
    let comp = pg.components();
    let result = match map.sidedness() {
        Sidedness::TwoSided => two_sided_collision(&pg, &comp),
        Sidedness::OneSided => one_sided_collision(&pg, &comp, &map),
    };
    match result {
        None => Ok(DecisionWitness::yes()),
        Some(w) => {
            verify_collision(&map, &w)?;
            Ok(DecisionWitness::no(w))
        }
    }
}

fn two_sided_collision(pg: &PairGraph, comp: &[usize]) -> Option<Witness> {
    for src in 0..pg.node_count() {
        for (a, b, tgt) in pg.out_edges(src) {
            if a == b || comp[src] != comp[tgt] {
                continue;
            }
            let back = pg.path(tgt, src, |n| comp[n] == comp[src])?;
            let mut left = vec![a];
            let mut right = vec![b];
            for (x, y, _) in back {
                left.push(x);
                right.push(y);
            }
            return Some(Witness::Collision {
                left: EventuallyPeriodic::periodic(left),
                right: EventuallyPeriodic::periodic(right),
            });
        }
    }
    None
}

/// `(left symbol, right symbol, target node)`.
type PairEdge = (State, State, usize);

fn one_sided_collision(pg: &PairGraph, comp: &[usize], map: &BlockMap) -> Option<Witness> {
    let cyclic = pg.cyclic_nodes(comp);
    let infinite = pg.reach((0..pg.node_count()).filter(|&n| cyclic[n]), Direction::Incoming);
    let n = map.source().size();
    let k = map.width() - 1;

    // Start: either a non-diagonal node, or a node followed by a differing edge.
    let mut start: Option<(usize, Vec<PairEdge>)> = (0..pg.node_count())
        .find(|&node| !pg.is_diagonal(node) && infinite[node])
        .map(|node| (node, Vec::new()));
    if start.is_none() {
        'outer: for node in 0..pg.node_count() {
            for (a, b, t) in pg.out_edges(node) {
                if a != b && infinite[t] {
                    start = Some((node, vec![(a, b, t)]));
                    break 'outer;
                }
            }
        }
    }
    let (node, mut prefix) = start?;
    let here = prefix.last().map_or(node, |e| e.2);
    // Walk to the nearest node on a cycle, then around that cycle.
    let entry = nearest(pg, here, &cyclic)?;
    prefix.extend(pg.path(here, entry, |_| true)?);
    let c = entry;
    let (a, b, t) = pg
        .out_edges(c)
        .into_iter()
        .find(|e| comp[e.2] == comp[c])?;
    let mut cycle = vec![(a, b, t)];
    cycle.extend(pg.path(t, c, |m| comp[m] == comp[c])?);

    let (u, v) = pg.pair(node);
    let mut left = EventuallyPeriodic {
        prefix: index_word(u, n, k),
        cycle: Vec::new(),
    };
    let mut right = EventuallyPeriodic {
        prefix: index_word(v, n, k),
        cycle: Vec::new(),
    };
    for (x, y, _) in prefix {
        left.prefix.push(x);
        right.prefix.push(y);
    }
    for (x, y, _) in cycle {
        left.cycle.push(x);
        right.cycle.push(y);
    }
    Some(Witness::Collision { left, right })
}

fn nearest(pg: &PairGraph, from: usize, target: &[bool]) -> Option<usize> {
    let mut seen = HashSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        if target[n] {
            return Some(n);
        }
        for (_, _, m) in pg.out_edges(n) {
            if seen.insert(m) {
                queue.push_back(m);
            }
        }
    }
    None
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Re-simulates a collision witness: the configurations must differ and
/// have equal images.
pub fn verify_collision(map: &BlockMap, w: &Witness) -> Result<()> {
    let Witness::Collision { left, right } = w else {
        return Err(Error::Unsupported("not a collision witness".into()));
    };
    let fail = |why: &str| Err(Error::Unsupported(format!("collision witness rejected: {why}")));
    if left.cycle.is_empty() || right.cycle.is_empty() {
        return fail("empty cycle");
    }
    if map.sidedness() == Sidedness::TwoSided || (left.prefix.is_empty() && right.prefix.is_empty()) {
        if map.sidedness() == Sidedness::TwoSided && !(left.prefix.is_empty() && right.prefix.is_empty()) {
            return fail("two-sided witnesses must be periodic");
        }
        let p = left.cycle.len() / gcd(left.cycle.len(), right.cycle.len()) * right.cycle.len();
        let x = left.expand(p);
        let y = right.expand(p);
        if x == y {
            return fail("configurations are equal");
        }
        if map.apply_cyclic(&x) != map.apply_cyclic(&y) {
            return fail("images differ");
        }
        return Ok(());
    }
    let pre = left.prefix.len().max(right.prefix.len());
    let c = left.cycle.len() / gcd(left.cycle.len(), right.cycle.len()) * right.cycle.len();
    let len = pre + 2 * c + map.width();
    let x = left.expand(len);
    let y = right.expand(len);
    if x[..pre + c] == y[..pre + c] {
        return fail("configurations are equal");
    }
    let fx = map.apply_word(&x)?;
    let fy = map.apply_word(&y)?;
    if fx[..pre + c] != fy[..pre + c] {
        return fail("images differ");
    }
    Ok(())
}

/// Decides surjectivity; a negative verdict carries a shortest orphan (the
/// lexicographically least among the shortest).
pub fn is_surjective(map: impl AsRef<BlockMap>, budget: &Budget) -> Result<DecisionWitness> {
    let map = map.as_ref();
    if map.source().same_size(map.target()) {
        check_pair_budget(map, budget)?;
        let pg = PairGraph::new(map);
        let diag: Vec<usize> = (0..pg.node_count()).filter(|&n| pg.is_diagonal(n)).collect();
        let from_diag = pg.reach(diag.iter().copied(), Direction::Outgoing);
        let to_diag = pg.reach(diag.iter().copied(), Direction::Incoming);
        let diamond = (0..pg.node_count()).filter(|&n| from_diag[n]).any(|n| {
            pg.graph
                .edges(NodeIndex::new(n))
                .any(|e| e.weight().0 != e.weight().1 && to_diag[e.target().index()])
        });
        if !diamond {
            return Ok(DecisionWitness::yes());
        }
    }
    match shortest_orphan(map, budget)? {
        None => Ok(DecisionWitness::yes()),
        Some(orphan) => {
            verify_orphan(map, &orphan, budget)?;
            Ok(DecisionWitness::no(Witness::Orphan(orphan)))
        }
    }
}

/// Breadth-first subset construction over the output language.
fn shortest_orphan(map: &BlockMap, budget: &Budget) -> Result<Option<Vec<State>>> {
    let db = DeBruijnGraph::new(map);
    let nodes = db.node_count();
    let words = nodes.div_ceil(64);
    let m = map.target().size();
    let mut start = vec![0u64; words];
    for i in 0..nodes {
        start[i / 64] |= 1 << (i % 64);
    }
    // succ[u] = (output, successor) per input symbol.
    let succ: Vec<Vec<(State, usize)>> = (0..nodes).map(|u| db.edges(u).map(|(_, c, t)| (c, t)).collect()).collect();
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut parent: Vec<(usize, State)> = vec![(usize::MAX, 0)];
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut head = 0;
    while head < sets.len() {
        let cur = sets[head].clone();
        for c in 0..m as State {
            let mut next = vec![0u64; words];
            let mut empty = true;
            for (wi, &bits) in cur.iter().enumerate() {
                let mut b = bits;
                while b != 0 {
                    let u = wi * 64 + b.trailing_zeros() as usize;
                    b &= b - 1;
                    for &(out, t) in &succ[u] {
                        if out == c {
                            next[t / 64] |= 1 << (t % 64);
                            empty = false;
                        }
                    }
                }
            }
            if empty {
                let mut word = vec![c];
                let mut at = head;
                while parent[at].0 != usize::MAX {
                    word.push(parent[at].1);
                    at = parent[at].0;
                }
                word.reverse();
                return Ok(Some(word));
            }
            if !index.contains_key(&next) {
                if sets.len() as u128 >= budget.max_search {
                    return Err(Error::BudgetExceeded {
                        what: "subset-construction states",
                        required: sets.len() as u128 + 1,
                        limit: budget.max_search,
                    });
                }
                index.insert(next.clone(), sets.len());
                parent.push((head, c));
                sets.push(next);
            }
        }
        head += 1;
    }
    Ok(None)
}

/// Checks that no source word of length `|orphan| + width - 1` maps onto
/// `orphan`, by brute force when small enough and otherwise by tracking the
/// set of feasible window suffixes.
pub fn verify_orphan(map: &BlockMap, orphan: &[State], budget: &Budget) -> Result<()> {
    let n = map.source().size();
    let len = orphan.len() + map.width() - 1;
    let rejected = || Err(Error::Unsupported("orphan witness has a preimage".into()));
    if pow_sat(n, len) <= budget.max_window.min(4_000_000) {
        let mut digits = vec![0 as State; len];
        loop {
            if map.apply_unchecked(&digits) == orphan {
                return rejected();
            }
            if !odometer(&mut digits, n) {
                return Ok(());
            }
        }
    }
    let k = map.width() - 1;
    let nodes = n.pow(k as u32);
    let mut alive: Vec<bool> = vec![true; nodes];
    for &c in orphan {
        let mut next = vec![false; nodes];
        for u in (0..nodes).filter(|&u| alive[u]) {
            for a in 0..n {
                let w = u * n + a;
                if map.lookup_index(w) == c {
                    next[w % nodes] = true;
                }
            }
        }
        alive = next;
    }
    if alive.iter().any(|&x| x) {
        rejected()
    } else {
        Ok(())
    }
}

/// Least-width inverse with width at most `max_width`.
///
/// For a candidate width and offset the inverse table is forced: the
/// inverse must return the centre cell of every window from the image of
/// that window, so a conflict rules the candidate out and an unconstrained
/// entry can only occur for words outside the image. The candidate is
/// accepted after checking both compositions against the identity.
pub fn inverse_rule(rule: &LocalRule, max_width: usize, budget: &Budget) -> Result<Option<LocalRule>> {
    let n = rule.alphabet().size();
    let rn = rule.neighborhood();
    let wr = rule.width();
    let id = LocalRule::identity(rule.alphabet().clone(), rule.sidedness());
    for w in 1..=max_width {
        let big = w + wr - 1;
        budget.check_table(pow_sat(n, big))?;
        // Cell 0 sits at offset -(lo_inv + lo_rule) of the composed window.
        let los: Vec<i32> = match rule.sidedness() {
            Sidedness::OneSided => vec![0],
            Sidedness::TwoSided => (-(rn.lo) - (big as i32 - 1)..=-(rn.lo)).collect(),
        };
        for lo in los {
            let offset = -(lo + rn.lo);
            if offset < 0 || offset as usize >= big {
                continue;
            }
            let Some(table) = forced_inverse_table(rule, w, offset as usize) else {
                continue;
            };
            let nb = Neighborhood::new(lo, lo + w as i32 - 1)?;
            let cand = LocalRule::new(rule.alphabet().clone(), rule.sidedness(), nb, table)?;
            let left = LocalRule::compose(&cand, rule, budget)?;
            let right = LocalRule::compose(rule, &cand, budget)?;
            if left.equals(&id) && right.equals(&id) {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

fn forced_inverse_table(rule: &LocalRule, w: usize, offset: usize) -> Option<Vec<State>> {
    let n = rule.alphabet().size();
    let big = w + rule.width() - 1;
    let mut table: Vec<Option<State>> = vec![None; n.pow(w as u32)];
    let mut digits = vec![0 as State; big];
    loop {
        let image = rule.as_block_map().apply_unchecked(&digits);
        let idx = crate::alphabet::word_index(&image, n);
        let want = digits[offset];
        match table[idx] {
            None => table[idx] = Some(want),
            Some(v) if v == want => {}
            Some(_) => return None,
        }
        if !odometer(&mut digits, n) {
            break;
        }
    }
    Some(table.into_iter().map(|x| x.unwrap_or(0)).collect())
}

fn is_constant(rule: &LocalRule, q: State) -> bool {
    rule.table().iter().all(|&s| s == q)
}

/// Least `n` in `1..=n_max` with `rule^n` the constant-`q` map.
pub fn nilpotency_within(rule: &LocalRule, q: State, n_max: usize, budget: &Budget) -> Result<Option<usize>> {
    if !rule.classify_state(q)?.quiescent {
        return Err(Error::NotQuiescent(q));
    }
    let mut acc = rule.trim();
    for n in 1..=n_max {
        if n > 1 {
            acc = LocalRule::compose(rule, &acc, budget)?.trim();
        }
        if is_constant(&acc, q) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Least `(preperiod, period)` with `rule^(n+p) = rule^n` and `n+p <= n_max`.
pub fn periodicity_within(rule: &LocalRule, n_max: usize, budget: &Budget) -> Result<Option<(usize, usize)>> {
    let mut powers = vec![LocalRule::identity(rule.alphabet().clone(), rule.sidedness())];
    for m in 1..=n_max {
        let next = LocalRule::compose(rule, &powers[m - 1], budget)?.trim();
        if let Some(n) = powers.iter().position(|p| p.equals(&next)) {
            return Ok(Some((n, m - n)));
        }
        powers.push(next);
    }
    Ok(None)
}

/// A spatially periodic configuration of period at most `max_period` whose
/// whole orbit avoids the spreading state `s`.
pub fn avoiding_configuration(rule: &LocalRule, s: State, max_period: usize) -> Result<Option<Vec<State>>> {
    if !rule.classify_state(s)?.spreading {
        return Err(Error::NotSpreading(s));
    }
    let n = rule.alphabet().size();
    let others: Vec<State> = (0..n as State).filter(|&x| x != s).collect();
    if others.is_empty() {
        return Ok(None);
    }
    for p in 1..=max_period {
        let mut digits = vec![0 as State; p];
        loop {
            let word: Vec<State> = digits.iter().map(|&d| others[d as usize]).collect();
            if orbit_avoids(rule, &word, s) {
                return Ok(Some(word));
            }
            if !odometer(&mut digits, others.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn orbit_avoids(rule: &LocalRule, word: &[State], s: State) -> bool {
    let mut seen = HashSet::new();
    let mut cur = CyclicConfig::new(word.to_vec()).expect("nonempty");
    loop {
        if cur.word().contains(&s) {
            return false;
        }
        if !seen.insert(cur.clone()) {
            return true;
        }
        cur = rule.apply_cyclic(&cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn b() -> Budget {
        Budget::default()
    }

    fn rule2(f: impl Fn(State, State) -> State, n: usize, sides: Sidedness) -> LocalRule {
        LocalRule::from_fn(
            Alphabet::new(n).unwrap(),
            sides,
            Neighborhood { lo: 0, hi: 1 },
            &b(),
            |w| f(w[0], w[1]),
        )
        .unwrap()
    }

    #[test]
    fn de_bruijn_shape() {
        let r = rule2(|x, y| x ^ y, 2, Sidedness::OneSided);
        let g = DeBruijnGraph::new(r.as_block_map());
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 4);
        assert!((0..2).all(|u| g.edges(u).count() == 2));
    }

    #[test]
    fn xor_not_injective_constants() {
        for sides in [Sidedness::OneSided, Sidedness::TwoSided] {
            let r = rule2(|x, y| x ^ y, 2, sides);
            let d = is_injective(&r, &b()).unwrap();
            assert!(!d.verdict);
            assert!(d.witness.is_some());
        }
        let r = rule2(|x, y| x ^ y, 2, Sidedness::TwoSided);
        let d = is_injective(&r, &b()).unwrap();
        let Some(Witness::Collision { left, right }) = d.witness else { panic!() };
        assert_eq!((left.cycle, right.cycle), (vec![0], vec![1]));
    }

    #[test]
    fn shift_injectivity_depends_on_sides() {
        let two = LocalRule::shift(Alphabet::new(2).unwrap(), Sidedness::TwoSided);
        assert!(is_injective(&two, &b()).unwrap().verdict);
        let one = LocalRule::shift(Alphabet::new(2).unwrap(), Sidedness::OneSided);
        let d = is_injective(&one, &b()).unwrap();
        assert!(!d.verdict);
        let lines = d.witness_lines(2, 2);
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("witness: eventually-periodic"), "{lines:?}");
    }

    #[test]
    fn identity_is_injective_and_surjective() {
        let id = LocalRule::identity(Alphabet::new(3).unwrap(), Sidedness::OneSided);
        assert!(is_injective(&id, &b()).unwrap().verdict);
        assert!(is_surjective(&id, &b()).unwrap().verdict);
        let inv = inverse_rule(&id, 1, &b()).unwrap().unwrap();
        assert!(inv.equals(&id));
    }

    #[test]
    fn constant_orphan() {
        let c = LocalRule::constant(Alphabet::new(2).unwrap(), Sidedness::OneSided, 0).unwrap();
        let d = is_surjective(&c, &b()).unwrap();
        assert_eq!(d.witness, Some(Witness::Orphan(vec![1])));
        assert_eq!(d.witness_lines(2, 2), vec!["orphan: 1".to_string()]);
    }

    #[test]
    fn and_orphan_is_shortest() {
        let r = rule2(|x, y| x & y, 2, Sidedness::OneSided);
        let d = is_surjective(&r, &b()).unwrap();
        // 101 needs 11?11 with ? both 0 and 1.
        assert_eq!(d.witness, Some(Witness::Orphan(vec![1, 0, 1])));
    }

    #[test]
    fn xor_inverse_none() {
        let r = rule2(|x, y| x ^ y, 2, Sidedness::TwoSided);
        assert!(inverse_rule(&r, 3, &b()).unwrap().is_none());
    }

    #[test]
    fn two_sided_shift_inverse_is_right_shift() {
        let s = LocalRule::shift(Alphabet::new(2).unwrap(), Sidedness::TwoSided);
        let inv = inverse_rule(&s, 1, &b()).unwrap().unwrap();
        assert_eq!(inv.neighborhood(), Neighborhood { lo: -1, hi: -1 });
    }

    #[test]
    fn nilpotency_examples() {
        let a3 = Alphabet::new(3).unwrap();
        let c = LocalRule::constant(a3.clone(), Sidedness::OneSided, 0).unwrap();
        assert_eq!(nilpotency_within(&c, 0, 5, &b()).unwrap(), Some(1));
        // q=0, a=1, b=2: q->q, a->q, b->a on the left cell.
        let chain = rule2(|x, _| [0, 0, 1][x as usize], 3, Sidedness::OneSided);
        assert_eq!(nilpotency_within(&chain, 0, 5, &b()).unwrap(), Some(2));
        let x = rule2(|x, y| x ^ y, 2, Sidedness::OneSided);
        assert!(matches!(nilpotency_within(&x, 1, 3, &b()), Err(Error::NotQuiescent(1))));
    }

    #[test]
    fn periodicity_examples() {
        let a2 = Alphabet::new(2).unwrap();
        let id = LocalRule::identity(a2.clone(), Sidedness::OneSided);
        assert_eq!(periodicity_within(&id, 4, &b()).unwrap(), Some((0, 1)));
        let c = LocalRule::constant(a2.clone(), Sidedness::OneSided, 1).unwrap();
        assert_eq!(periodicity_within(&c, 4, &b()).unwrap(), Some((1, 1)));
        let s = LocalRule::shift(a2, Sidedness::OneSided);
        assert_eq!(periodicity_within(&s, 6, &b()).unwrap(), None);
        // Complement is periodic with period 2.
        let not = LocalRule::new(
            Alphabet::new(2).unwrap(),
            Sidedness::OneSided,
            Neighborhood { lo: 0, hi: 0 },
            vec![1, 0],
        )
        .unwrap();
        assert_eq!(periodicity_within(&not, 4, &b()).unwrap(), Some((0, 2)));
    }

    #[test]
    fn avoiding_examples() {
        let and = rule2(|x, y| x & y, 2, Sidedness::OneSided);
        assert_eq!(avoiding_configuration(&and, 0, 1).unwrap(), Some(vec![1]));
        let c = LocalRule::constant(Alphabet::new(2).unwrap(), Sidedness::OneSided, 0).unwrap();
        assert_eq!(avoiding_configuration(&c, 0, 4).unwrap(), None);
        let s = LocalRule::shift(Alphabet::new(2).unwrap(), Sidedness::OneSided);
        assert!(matches!(avoiding_configuration(&s, 0, 2), Err(Error::NotSpreading(0))));
    }
}
