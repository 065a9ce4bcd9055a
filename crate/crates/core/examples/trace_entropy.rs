//! Trace words, subword complexity and entropy upper bounds.
//!
//! ```text
//! cargo run --example trace_entropy
//! ```

use ca_conjugacy::format::format_word;
use ca_conjugacy::reduction::example_021_rule;
use ca_conjugacy::trace::{block_shift_words, entropy_upper, trace_words};
use ca_conjugacy::Budget;

fn main() -> ca_conjugacy::Result<()> {
    let budget = Budget::default();
    let f = example_021_rule();
    let t = trace_words(&f, 1, 4, &budget)?;
    let words: Vec<String> = t.words().iter().map(|w| format_word(w, 3)).collect();
    println!("depth-4 columns at cell 0: {}", words.join(" "));

    let blocks = vec![vec![0, 0], vec![1, 2]];
    for depth in [6, 10] {
        let same = trace_words(&f, 1, depth, &budget)?.word_set() == block_shift_words(&blocks, depth)?;
        println!("L = {depth}: columns are the factors of {{00,12}}: {same}");
    }

    let report = entropy_upper(&f, 1, 12, &budget)?;
    print!("{}", report.to_tsv());
    println!("best bound {:.6}", report.best_bound().unwrap_or(f64::NAN));
    Ok(())
}
