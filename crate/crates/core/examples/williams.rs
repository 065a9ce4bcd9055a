//! Total amalgamation and one-sided SFT conjugacy.
//!
//! ```text
//! cargo run --example williams
//! ```

use ca_conjugacy::alphabet::Alphabet;
use ca_conjugacy::format::write_matrix;
use ca_conjugacy::sft::{one_sided_conjugate, sft_from_forbidden, total_amalgamation, SftPresentation};
use ca_conjugacy::{Budget, Sidedness};

fn main() -> ca_conjugacy::Result<()> {
    let one = |m| SftPresentation::from_matrix(Sidedness::OneSided, m);
    let full = one(vec![vec![1, 1], vec![1, 1]])?;
    let two = one(vec![vec![2]])?;
    let gm = sft_from_forbidden(&Alphabet::new(2)?, &[vec![1, 1]], Sidedness::OneSided, &Budget::default())?;

    let (a, trace) = total_amalgamation(&full)?;
    print!("[[1,1],[1,1]] amalgamates in {} step(s) to\n{}", trace.steps.len(), write_matrix(a.matrix()));
    println!("full ~ [[2]]: {}", one_sided_conjugate(&full, &two)?);
    println!("full ~ golden mean: {}", one_sided_conjugate(&full, &gm)?);

    let split = one(vec![vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 0]])?;
    let (a, _) = total_amalgamation(&split)?;
    print!("3-state presentation amalgamates to\n{}", write_matrix(a.matrix()));
    for n in 1..=5 {
        println!("period {n}: {} points", split.periodic_count(n)?);
    }
    Ok(())
}
