//! The nilpotency-to-conjugacy gadget and machine-checked strong
//! conjugacies.
//!
//! Given a one-sided radius-1 rule `H` on `B` with quiescent state `q`, two
//! rules on `A x B` (with `A = {0,1,2}^{2k}`) are built:
//!
//! - `G = id_A x H`;
//! - `F` applies `H` on the `B` track and, on the `A` track, the product
//!   `F_{2k}` of the permutation automaton when the new `B` symbol is not
//!   `q`, and the identity otherwise.
//!
//! When `H^n` is the constant-`q` map, the block map `φ` on `[0,n]` that keeps
//! the `B` symbol at offset 0 and takes the `A` part of `F^n` is a strong
//! conjugacy from `F` to `G`. [`verify_certificate`] checks this exactly.

use crate::alphabet::{pow_sat, Alphabet, Budget, Neighborhood, Sidedness, State};
use crate::blockmap::{BlockMap, Difference};
use crate::debruijn::{is_injective, is_surjective, nilpotency_within, DecisionWitness};
use crate::error::{Error, Result};
use crate::rule::LocalRule;
use crate::trace::subword_complexity;

const PERM_RHO: [[State; 3]; 3] = [[0, 2, 1], [1, 2, 0], [0, 2, 1]];

/// The one-sided permutation automaton `F(x a) = ρ_a(x)` on `{0,1,2}` with
/// `ρ_0 = ρ_2 = (0)(12)` and `ρ_1 = (012)`.
pub fn example_021_rule() -> LocalRule {
    let table = (0..9).map(|i| PERM_RHO[i % 3][i / 3]).collect();
    LocalRule::new(
        Alphabet::new(3).expect("nonempty"),
        Sidedness::OneSided,
        Neighborhood { lo: 0, hi: 1 },
        table,
    )
    .expect("valid table")
}

/// Its inverse: `π_a` applied to the left symbol, `π_0 = π_1 = (0)(12)`,
/// `π_2 = (021)`.
pub fn example_021_inverse() -> LocalRule {
    const PI: [[State; 3]; 3] = [[0, 2, 1], [0, 2, 1], [2, 0, 1]];
    let table = (0..9).map(|i| PI[i % 3][i / 3]).collect();
    LocalRule::new(
        Alphabet::new(3).expect("nonempty"),
        Sidedness::OneSided,
        Neighborhood { lo: 0, hi: 1 },
        table,
    )
    .expect("valid table")
}

/// `F_{2k}`: the `2k`-fold track product of [`example_021_rule`].
pub fn product_power(k: usize, budget: &Budget) -> Result<LocalRule> {
    if k == 0 {
        return Err(Error::InvalidRule("k must be positive".into()));
    }
    budget.check_table(pow_sat(3, 4 * k))?;
    let copies = vec![example_021_rule(); 2 * k];
    LocalRule::product_all(&copies, budget)
}

/// `b0 b1 -> b0 AND b1` on `{0,1}`; 0 is spreading and the rule is not
/// nilpotent.
pub fn and_rule() -> LocalRule {
    LocalRule::new(
        Alphabet::new(2).expect("nonempty"),
        Sidedness::OneSided,
        Neighborhood { lo: 0, hi: 1 },
        vec![0, 0, 0, 1],
    )
    .expect("valid table")
}

/// Nilpotent chain on `{0,1,2}` (0 = q, 1 = a, 2 = b) reading only `b0`:
/// `q -> q`, `a -> q`, `b -> a`. Its square is constant.
pub fn chain_rule() -> LocalRule {
    let table = (0..9).map(|i| [0, 0, 1][i / 3]).collect();
    LocalRule::new(
        Alphabet::new(3).expect("nonempty"),
        Sidedness::OneSided,
        Neighborhood { lo: 0, hi: 1 },
        table,
    )
    .expect("valid table")
}

/// The two rules built from `(H, q, k)`.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub h: LocalRule,
    pub q: State,
    pub k: usize,
    pub f2k: LocalRule,
    pub cal_f: LocalRule,
    pub cal_g: LocalRule,
    /// Whether `q` is spreading for `H` (reported, not required).
    pub q_spreading: bool,
    pub warnings: Vec<String>,
}

impl ReductionInstance {
    pub fn a_alphabet(&self) -> &Alphabet {
        self.f2k.alphabet()
    }

    pub fn b_alphabet(&self) -> &Alphabet {
        self.h.alphabet()
    }

    /// Number of tracks making up the `A` component.
    pub fn a_tracks(&self) -> usize {
        2 * self.k
    }
}

pub fn build_instance(h: &LocalRule, q: State, k: usize, budget: &Budget) -> Result<ReductionInstance> {
    let nb = h.neighborhood();
    if h.sidedness() != Sidedness::OneSided || nb.lo < 0 || nb.hi > 1 {
        return Err(Error::InvalidRule(
            "H must be one-sided with neighborhood inside [0,1]".into(),
        ));
    }
    let class = h.classify_state(q)?;
    if !class.quiescent {
        return Err(Error::NotQuiescent(q));
    }
    let b_size = h.alphabet().size();
    let mut warnings = Vec::new();
    if (k as u32) < usize::BITS && (1usize << k) <= b_size {
        warnings.push(format!(
            "k = {k} does not exceed log2 |B| = {:.3}; the entropy gap is not guaranteed",
            (b_size as f64).log2()
        ));
    }
    if !class.spreading {
        warnings.push(format!("state {q} is quiescent but not spreading for H"));
    }
    let f2k = product_power(k, budget)?;
    let a = f2k.alphabet().clone();
    let b = Alphabet::with_factors(&[b_size])?;
    let ab = a.product(&b)?;
    let h01 = h.pad(Neighborhood { lo: 0, hi: 1 })?;
    let cal_g = LocalRule::product(
        &LocalRule::identity(a.clone(), Sidedness::OneSided),
        &h01,
        budget,
    )?;
    let cal_f = LocalRule::from_fn(
        ab,
        Sidedness::OneSided,
        Neighborhood { lo: 0, hi: 1 },
        budget,
        |w| {
            let (a0, b0) = (w[0] as usize / b_size, w[0] as usize % b_size);
            let (a1, b1) = (w[1] as usize / b_size, w[1] as usize % b_size);
            let hb = h01.lookup(&[b0 as State, b1 as State]);
            let out_a = if hb == q {
                a0 as State
            } else {
                f2k.lookup(&[a0 as State, a1 as State])
            };
            (out_a as usize * b_size + hb as usize) as State
        },
    )?;
    Ok(ReductionInstance {
        h: h.clone(),
        q,
        k,
        f2k,
        cal_f,
        cal_g,
        q_spreading: class.spreading,
        warnings,
    })
}

/// `φ` on `[0,n]`: the `B` symbol at offset 0 together with the `A` part of
/// `F^n`. Refuses to build unless `H^n` is certified constant.
pub fn build_phi(inst: &ReductionInstance, n: usize, budget: &Budget) -> Result<BlockMap> {
    if n == 0 {
        return Err(Error::Uncertified {
            n,
            reason: "the horizon must be at least 1".into(),
        });
    }
    if nilpotency_within(&inst.h, inst.q, n, budget)?.is_none() {
        return Err(Error::Uncertified {
            n,
            reason: format!("H^{n} is not the constant-{} map", inst.q),
        });
    }
    let power = inst.cal_f.power(n, budget)?.pad(Neighborhood::new(0, n as i32)?)?;
    let b_size = inst.b_alphabet().size();
    let ab = inst.cal_f.alphabet().clone();
    BlockMap::from_fn(
        ab.clone(),
        ab,
        Sidedness::OneSided,
        Neighborhood::new(0, n as i32)?,
        budget,
        |w| {
            let a = power.lookup(w) as usize / b_size;
            (a * b_size + w[0] as usize % b_size) as State
        },
    )
}

/// Least horizon `n <= n_max` with `H^n` constant.
pub fn nilpotency_horizon(inst: &ReductionInstance, n_max: usize, budget: &Budget) -> Result<Option<usize>> {
    nilpotency_within(&inst.h, inst.q, n_max, budget)
}

/// Outcome of checking a candidate conjugacy `φ` from `F` to `G`.
#[derive(Clone, Debug)]
pub struct ConjugacyCertificate {
    pub phi: BlockMap,
    pub homomorphism: bool,
    pub injective: bool,
    pub surjective: bool,
    /// First window where `φ∘F` and `G∘φ` differ.
    pub residue: Option<Difference>,
    pub injectivity: DecisionWitness,
    pub surjectivity: DecisionWitness,
}

impl ConjugacyCertificate {
    pub fn is_valid(&self) -> bool {
        self.homomorphism && self.injective && self.surjective
    }
}

/// Checks `φ∘F = G∘φ` by exact table equality and decides bijectivity of `φ`.
pub fn verify_certificate(phi: &BlockMap, f: &LocalRule, g: &LocalRule, budget: &Budget) -> Result<ConjugacyCertificate> {
    if !phi.source().same_size(f.alphabet()) || !phi.target().same_size(g.alphabet()) {
        return Err(Error::AlphabetMismatch {
            left: phi.source().size(),
            right: f.alphabet().size(),
        });
    }
    if phi.sidedness() != f.sidedness() || f.sidedness() != g.sidedness() {
        return Err(Error::SidednessMismatch);
    }
    let lhs = BlockMap::compose(phi, f.as_block_map(), budget)?;
    let rhs = BlockMap::compose(g.as_block_map(), phi, budget)?;
    let residue = lhs.first_difference(&rhs);
    let injectivity = is_injective(phi, budget)?;
    let surjectivity = is_surjective(phi, budget)?;
    Ok(ConjugacyCertificate {
        phi: phi.clone(),
        homomorphism: residue.is_none(),
        injective: injectivity.verdict,
        surjective: surjectivity.verdict,
        residue,
        injectivity,
        surjectivity,
    })
}

/// One homomorphism constraint: `T[lhs] = G(T[rhs[0]], .., T[rhs[m-1]])`.
struct Constraint {
    lhs: usize,
    rhs: Vec<usize>,
}

/// First strong conjugacy `φ` on `[0, w-1]` with `w <= max_width`, in
/// `(width, table)` lexicographic order.
///
/// Composing with a shift power does not change whether a block map is a
/// conjugacy (two-sided) and any other window fails injectivity (one-sided),
/// so anchoring the window at 0 loses nothing. The search assigns table
/// entries in order and checks each homomorphism constraint as soon as its
/// largest entry is assigned; surjective block maps are balanced, so no
/// symbol may occur more than `|A|^{w-1}` times.
pub fn search_strong_conjugacy(
    f: &LocalRule,
    g: &LocalRule,
    max_width: usize,
    budget: &Budget,
) -> Result<Option<ConjugacyCertificate>> {
    if f.sidedness() != g.sidedness() {
        return Err(Error::SidednessMismatch);
    }
    if !f.alphabet().same_size(g.alphabet()) {
        return Err(Error::AlphabetMismatch {
            left: f.alphabet().size(),
            right: g.alphabet().size(),
        });
    }
    let mut spent: u128 = 0;
    for w in 1..=max_width {
        if let Some(cert) = search_width(f, g, w, budget, &mut spent)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn search_width(f: &LocalRule, g: &LocalRule, w: usize, budget: &Budget, spent: &mut u128) -> Result<Option<ConjugacyCertificate>> {
    let n = f.alphabet().size();
    let (fl, fh) = (f.neighborhood().lo, f.neighborhood().hi);
    let (gl, gh) = (g.neighborhood().lo, g.neighborhood().hi);
    let lo = fl.min(gl);
    let hi = fh.max(gh) + w as i32 - 1;
    let big = (hi - lo + 1) as usize;
    budget.check_table(pow_sat(n, w))?;
    budget.check_window(pow_sat(n, big))?;
    let entries = n.pow(w as u32);

    let mut by_max: Vec<Vec<Constraint>> = (0..entries).map(|_| Vec::new()).collect();
    let mut digits = vec![0 as State; big];
    let fw = f.width();
    loop {
        let mut image = Vec::with_capacity(w);
        for j in 0..w {
            let s = (j as i32 + fl - lo) as usize;
            image.push(f.lookup(&digits[s..s + fw]));
        }
        let lhs = crate::alphabet::word_index(&image, n);
        let rhs: Vec<usize> = (gl..=gh)
            .map(|i| {
                let s = (i - lo) as usize;
                crate::alphabet::word_index(&digits[s..s + w], n)
            })
            .collect();
        let top = rhs.iter().copied().max().unwrap_or(0).max(lhs);
        by_max[top].push(Constraint { lhs, rhs });
        if !crate::alphabet::odometer(&mut digits, n) {
            break;
        }
    }

    let cap = n.pow(w as u32 - 1);
    let mut table = vec![0 as State; entries];
    let mut used = vec![0usize; n];
    let mut pos = 0usize;
    let mut next_value = vec![0 as State; entries];
    let mut args = Vec::with_capacity(g.width());
    // Iterative backtracking: next_value[pos] is the next symbol to try.
    loop {
        if next_value[pos] as usize >= n {
            next_value[pos] = 0;
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            used[table[pos] as usize] -= 1;
            continue;
        }
        let v = next_value[pos];
        next_value[pos] += 1;
        *spent += 1;
        if *spent > budget.max_search {
            return Err(Error::SearchBudget {
                width: w,
                nodes: *spent,
                limit: budget.max_search,
            });
        }
        if used[v as usize] >= cap {
            continue;
        }
        table[pos] = v;
        let ok = by_max[pos].iter().all(|c| {
            args.clear();
            args.extend(c.rhs.iter().map(|&i| table[i]));
            table[c.lhs] == g.lookup(&args)
        });
        if !ok {
            continue;
        }
        used[v as usize] += 1;
        if pos + 1 < entries {
            pos += 1;
            continue;
        }
        let phi = BlockMap::new(
            f.alphabet().clone(),
            g.alphabet().clone(),
            f.sidedness(),
            Neighborhood::new(0, w as i32 - 1)?,
            table.clone(),
        )?;
        let cert = verify_certificate(&phi, f, g, budget)?;
        if cert.is_valid() {
            return Ok(Some(cert));
        }
        used[v as usize] -= 1;
    }
}

/// Which map of a putative conjugacy a trace-count bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSide {
    /// `φ: F -> G` of width `w` forces `p_L(τ_1(G)) <= p_L(τ_w(F))`.
    Forward,
    /// An inverse of width `w` forces `p_L(τ_1(F)) <= p_L(τ_w(G))`.
    Inverse,
}

/// A necessary trace-count inequality for conjugacies of bounded width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBound {
    pub side: BoundSide,
    pub width: usize,
    pub depth: usize,
    pub narrow: u128,
    pub wide: u128,
}

impl CountBound {
    pub fn violated(&self) -> bool {
        self.narrow > self.wide
    }

    pub fn describe(&self) -> String {
        let (map, lhs, rhs) = match self.side {
            BoundSide::Forward => ("conjugacy", "G", "F"),
            BoundSide::Inverse => ("inverse", "F", "G"),
        };
        let rel = if self.violated() { ">" } else { "<=" };
        let verdict = if self.violated() {
            format!("rules out every {map} of width <= {}", self.width)
        } else {
            "no obstruction".to_string()
        };
        format!(
            "p_{L}(tau_1({lhs})) = {} {rel} p_{L}(tau_{w}({rhs})) = {}: {verdict}",
            self.narrow,
            self.wide,
            L = self.depth,
            w = self.width,
        )
    }
}

/// The forward and inverse count bounds at width `w` and depth `depth`.
pub fn count_obstruction(f: &LocalRule, g: &LocalRule, width: usize, depth: usize, budget: &Budget) -> Result<[CountBound; 2]> {
    let p = |r: &LocalRule, k: usize| subword_complexity(r, k, depth, budget).map(|x| x as u128);
    Ok([
        CountBound {
            side: BoundSide::Forward,
            width,
            depth,
            narrow: p(g, 1)?,
            wide: p(f, width)?,
        },
        CountBound {
            side: BoundSide::Inverse,
            width,
            depth,
            narrow: p(f, 1)?,
            wide: p(g, width)?,
        },
    ])
}
