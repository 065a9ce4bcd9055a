//! One-dimensional cellular automata over full shifts.
//!
//! - [`rule`] and [`blockmap`]: local rules, sliding block codes and their
//!   algebra (composition, powers, products, exact equality).
//! - [`debruijn`]: injectivity, surjectivity, inverses and bounded
//!   nilpotency/periodicity through de Bruijn and pair graphs.
//! - [`trace`]: exact trace-subshift word sets, subword complexity and
//!   entropy upper bounds.
//! - [`reduction`]: the nilpotency-to-conjugacy gadget with machine-checked
//!   strong conjugacy certificates, and a bounded conjugacy search.
//! - [`sft`]: edge-shift presentations, total amalgamation and one-sided
//!   conjugacy, graph subshifts and trace-SFT approximations.
//! - [`render`] and [`cli`]: space-time diagrams and the `caconj` tool.

pub mod alphabet;
pub mod blockmap;
pub mod cli;
pub mod debruijn;
pub mod error;
pub mod format;
pub mod rule;
pub mod reduction;
pub mod render;
pub mod sft;
pub mod trace;

pub use alphabet::{Alphabet, Budget, Neighborhood, Sidedness, State};
pub use blockmap::{BlockMap, Difference};
pub use error::{Error, Result};
pub use rule::{CyclicConfig, LocalRule, StateClass};
