//! The gadget pair built from a rule H: counts for a spreading state and a
//! conjugacy certificate for a nilpotent H.
//!
//! ```text
//! cargo run --release --example reduction
//! ```

use ca_conjugacy::reduction::{and_rule, build_instance, build_phi, chain_rule, nilpotency_horizon, verify_certificate};
use ca_conjugacy::trace::{factored_complexity, subword_complexity};
use ca_conjugacy::Budget;

fn main() -> ca_conjugacy::Result<()> {
    let budget = Budget::default();

    let inst = build_instance(&and_rule(), 0, 1, &budget)?;
    for w in &inst.warnings {
        println!("warning: {w}");
    }
    for depth in [2, 4, 8] {
        println!(
            "AND, L = {depth}: p_L(G) = {}, p_L(F) = {}",
            factored_complexity(&inst.cal_g, 1, depth, &budget)?,
            subword_complexity(&inst.cal_f, 1, depth, &budget)?
        );
    }

    let inst = build_instance(&chain_rule(), 0, 1, &budget)?;
    let n = nilpotency_horizon(&inst, 8, &budget)?.expect("H_chain is nilpotent");
    let phi = build_phi(&inst, n, &budget)?;
    let cert = verify_certificate(&phi, &inst.cal_f, &inst.cal_g, &budget)?;
    println!(
        "chain: horizon {n}, phi width {}, homomorphism {}, injective {}, surjective {}",
        phi.width(),
        cert.homomorphism,
        cert.injective,
        cert.surjective
    );
    println!("{}", if cert.is_valid() { "VALID" } else { "REFUTED" });
    Ok(())
}
