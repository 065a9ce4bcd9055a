//! Space-time diagrams: one row per time step, as text or binary PGM.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{pow_sat, Budget, Neighborhood, State};
use crate::error::{Error, Result};
use crate::format::format_word;
use crate::rule::LocalRule;

/// Rows of a diagram. Row `t` starts `indents[t]` cells to the right of row
/// 0, since a finite word loses cells at both ends each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceTime {
    pub alphabet_size: usize,
    pub rows: Vec<Vec<State>>,
    pub indents: Vec<usize>,
}

/// A uniformly random word from a seeded generator.
pub fn random_word(alphabet_size: usize, len: usize, seed: u64) -> Vec<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(0..alphabet_size as State)).collect()
}

/// Simulates `steps` steps from a finite word. Stops early when the word
/// becomes shorter than the neighborhood.
pub fn render_spacetime(rule: &LocalRule, initial: &[State], steps: usize, budget: &Budget) -> Result<SpaceTime> {
    rule.alphabet().check_word(initial)?;
    let cells = (steps as u128 + 1).saturating_mul(initial.len() as u128);
    if cells > budget.max_window {
        return Err(Error::BudgetExceeded {
            what: "space-time cells",
            required: cells,
            limit: budget.max_window,
        });
    }
    let nb = rule.neighborhood();
    let padded = rule.pad(Neighborhood {
        lo: nb.lo.min(0),
        hi: nb.hi.max(0),
    })?;
    let shift = (-padded.neighborhood().lo) as usize;
    budget.check_table(pow_sat(rule.alphabet().size(), padded.width()))?;
    let mut rows = vec![initial.to_vec()];
    let mut indents = vec![0];
    for t in 1..=steps {
        let prev = rows.last().expect("row 0 exists");
        if prev.len() < padded.width() {
            break;
        }
        let next = padded.apply_word(prev)?;
        rows.push(next);
        indents.push(t * shift);
    }
    Ok(SpaceTime {
        alphabet_size: rule.alphabet().size(),
        rows,
        indents,
    })
}

impl SpaceTime {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (row, &ind) in self.rows.iter().zip(&self.indents) {
            out.push_str(&" ".repeat(ind));
            out.push_str(&format_word(row, self.alphabet_size));
            out.push('\n');
        }
        out
    }

    /// Binary P5 image. State `s` has gray level `255 s / (|A|-1)`; cells
    /// outside the shrinking domain are white.
    pub fn to_pgm(&self) -> Vec<u8> {
        let width = self
            .rows
            .iter()
            .zip(&self.indents)
            .map(|(r, &i)| r.len() + i)
            .max()
            .unwrap_or(0);
        let height = self.rows.len();
        let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
        let top = (self.alphabet_size.max(2) - 1) as u32;
        for (row, &ind) in self.rows.iter().zip(&self.indents) {
            let mut line = vec![255u8; width];
            for (x, &s) in row.iter().enumerate() {
                line[ind + x] = (s * 255 / top) as u8;
            }
            out.extend_from_slice(&line);
        }
        out
    }
}
