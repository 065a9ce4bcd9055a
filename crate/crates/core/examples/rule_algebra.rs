//! Composition, powers, products and equality of local rules.
//!
//! ```text
//! cargo run --example rule_algebra
//! ```

use ca_conjugacy::reduction::{chain_rule, example_021_inverse, example_021_rule};
use ca_conjugacy::{Budget, LocalRule, Sidedness};

fn main() -> ca_conjugacy::Result<()> {
    let budget = Budget::default();
    let f = example_021_rule();
    println!("F:\n{f}");

    let f2 = f.power(2, &budget)?;
    println!("F^2 has neighborhood {} and {} table entries", f2.neighborhood(), f2.table().len());
    println!("F^2 on 0120 -> {:?}", f2.apply_word(&[0, 1, 2, 0])?);

    let id = LocalRule::identity(f.alphabet().clone(), Sidedness::OneSided);
    let back = LocalRule::compose(&example_021_inverse(), &f, &budget)?;
    println!("inverse after F is the identity: {}", back.equals(&id));

    let h = chain_rule();
    let h2 = h.power(2, &budget)?.trim();
    println!("H_chain^2 trims to width {} with table {:?}", h2.width(), h2.table());

    let fh = LocalRule::product(&f, &h, &budget)?;
    println!(
        "F x H over {} symbols; projections recover F: {}, H: {}",
        fh.alphabet().size(),
        fh.project(0)?.equals(&f),
        fh.project(1)?.equals(&h)
    );
    for s in 0..3 {
        let c = f.classify_state(s)?;
        println!("state {s}: quiescent {}, spreading {}", c.quiescent, c.spreading);
    }
    Ok(())
}
