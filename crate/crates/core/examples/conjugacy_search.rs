//! Bounded search for strong conjugacies, with trace-count obstructions
//! when the search fails.
//!
//! ```text
//! cargo run --example conjugacy_search
//! ```

use ca_conjugacy::reduction::{count_obstruction, example_021_rule, search_strong_conjugacy};
use ca_conjugacy::sft::{check_phi_times_phi, graph_subshift};
use ca_conjugacy::{Budget, LocalRule, Sidedness, State};

fn main() -> ca_conjugacy::Result<()> {
    let budget = Budget::default();
    let f = example_021_rule();
    let swap: [State; 3] = [0, 2, 1];
    let g = LocalRule::from_fn(f.alphabet().clone(), Sidedness::OneSided, f.neighborhood(), &budget, |w| {
        swap[f.lookup(&[swap[w[0] as usize], swap[w[1] as usize]]) as usize]
    })?;

    if let Some(cert) = search_strong_conjugacy(&f, &g, 1, &budget)? {
        println!("relabeling found: phi = {:?}", cert.phi.table());
        println!("phi x phi maps graph subshifts: {}", check_phi_times_phi(&f, &g, &cert.phi, &budget)?);
    }
    println!("graph subshift of F has {} states", graph_subshift(&f)?.states());

    let id = LocalRule::identity(f.alphabet().clone(), Sidedness::OneSided);
    for width in 1..=2 {
        let found = search_strong_conjugacy(&f, &id, width, &budget)?;
        println!("F vs identity, width <= {width}: {}", if found.is_some() { "found" } else { "none" });
        for bound in count_obstruction(&f, &id, width, 8, &budget)? {
            println!("  {}", bound.describe());
        }
    }
    Ok(())
}
