//! Injectivity, surjectivity and inverse search through the de Bruijn and
//! pair graphs.
//!
//! ```text
//! cargo run --example reversibility
//! ```

use ca_conjugacy::debruijn::{inverse_rule, is_injective, is_surjective, nilpotency_within};
use ca_conjugacy::reduction::{and_rule, chain_rule, example_021_rule};
use ca_conjugacy::Budget;

fn main() -> ca_conjugacy::Result<()> {
    let budget = Budget::default();
    for (name, rule) in [("example", example_021_rule()), ("and", and_rule()), ("chain", chain_rule())] {
        let n = rule.alphabet().size();
        let inj = is_injective(&rule, &budget)?;
        let surj = is_surjective(&rule, &budget)?;
        println!("{name}: injective {inj}, surjective {surj}");
        for line in inj.witness_lines(n, n).into_iter().chain(surj.witness_lines(n, n)) {
            println!("  {line}");
        }
        match inverse_rule(&rule, 3, &budget)? {
            Some(inv) => println!("  inverse:\n{inv}"),
            None => println!("  no inverse of width <= 3"),
        }
        if let Some(m) = nilpotency_within(&rule, 0, 4, &budget)? {
            println!("  nilpotent to 0 after {m} steps");
        }
    }
    Ok(())
}
