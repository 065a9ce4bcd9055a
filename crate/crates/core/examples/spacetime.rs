//! Space-time diagrams as text and PGM.
//!
//! ```text
//! cargo run --example spacetime -- out.pgm
//! ```

use ca_conjugacy::reduction::{and_rule, example_021_rule};
use ca_conjugacy::render::{random_word, render_spacetime};
use ca_conjugacy::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let st = render_spacetime(&and_rule(), &[1, 1, 1, 1, 0, 1], 3, &budget)?;
    print!("{}", st.to_text());

    let init = random_word(3, 40, 1);
    let st = render_spacetime(&example_021_rule(), &init, 20, &budget)?;
    print!("{}", st.to_text());
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, st.to_pgm())?;
        println!("wrote {path}");
    }
    Ok(())
}
