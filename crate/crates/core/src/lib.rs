//! Magic borders and bordered magic squares.
//!
//! A magic border of inner order `n` is the frame of an `(n+2) × (n+2)`
//! square drawn from the `4n+4` values `1..=2n+2` and their complements
//! `(n+2)²+1 - x`, with opposite cells complementary and every line summing
//! to the magic constant of order `n+2`. Wrapping such a border around any
//! magic square of order `n` (shifted by `2n+2`) gives a magic square of
//! order `n+2`.
//!
//! The crate builds borders for every order, builds borders with
//! prescribed upper corners at even orders, enumerates borders exhaustively
//! at small orders, and verifies everything it produces.

pub mod assemble;
pub mod cli;
pub mod construct;
pub mod corners;
pub mod enumerate;
pub mod error;
pub mod numbers;
pub mod plan;
pub mod tables;
pub mod transform;
pub mod verify;

pub use assemble::{base_square, build_square, render_frame, LayerStack};
pub use construct::{border_scheme, build_border, PairingScheme, RecipeCase};
pub use corners::{
    construct_with_corners, corners_feasible, extend_border, missing_pairs, seed_order4,
    seed_order_m, Construction, SeedResult, SeedStatus, Source,
};
pub use enumerate::{
    count_omega, enumerate_omega, search_first, CornerScope, Enumeration, OmegaKey, Outcome,
    SearchBudget,
};
pub use error::{Error, Result};
pub use numbers::{border_pool, complement, d_corner, d_value, magic_constant, InnerOrder, Side};
pub use plan::{BorderFrame, BorderPlan, CanonicalBorder, MagicSquare};
pub use transform::{apply_symmetry, orbit, permute_lines, reduce_corners, BorderSymmetry};
pub use verify::{
    verify_balance, verify_border, verify_bordered, verify_frame, verify_square, CheckReport,
    Condition, Violation,
};
