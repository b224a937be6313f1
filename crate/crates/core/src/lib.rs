//! Finite-automaton presentations of the sets
//! `C(1, M_1, …, M_n) = Σ_3 ∩ M_1⁻¹Σ_3 ∩ … ∩ M_n⁻¹Σ_3`, where `Σ_3` is the set of
//! 3-adic integers whose expansion avoids the digit 2, and their Hausdorff
//! dimensions `log_3 β` with `β` the Perron eigenvalue of the presentation.

pub mod automaton;
pub mod error;
pub mod export;
pub mod families;
pub mod langops;
pub mod oracle;
pub mod spectral;
pub mod suite;
pub mod ternary;

pub use automaton::{build_multi, build_single, PointedLabeledGraph};
pub use error::{Error, Result};
pub use spectral::{hausdorff_dim, DimensionResult};
pub use ternary::{parse_multipliers, Multiplier};
