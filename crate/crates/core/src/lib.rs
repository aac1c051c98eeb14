//! Equilibria of two-person additively-separable sum (TPASS) games.
//!
//! A TPASS game `(A, pi, rho)` pays the row player `a_ij + pi_i` and the
//! column player `-a_ij + rho_j`. This crate computes equilibria through
//! linear programming, certifies candidate pairs through LP feasibility and
//! duality, recognizes TPASS structure inside arbitrary bimatrix games, and
//! ships a support-enumeration oracle for small games.

#![allow(clippy::needless_range_loop)]

pub mod decompose;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod gamefile;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod oracle;
pub mod rng;

pub use decompose::{compose, decompose, is_separable_sum, BimatrixGame, DecompositionResult};
pub use equilibrium::{
    build_dual_lp1, build_lp1, build_prop3_lp, check_prop3, solve_equilibrium, solve_prop3,
    verify_prop2, EquilibriumSolution, Prop2Report,
};
pub use error::{Error, Result};
pub use game::{random_tpass, EquilibriumReport, MixedStrategy, TpassGame};
pub use lp::{LpModel, LpSolution, LpStatus, LpTolerances};
pub use matrix::Matrix;
pub use oracle::{cross_check, enumerate_equilibria, OracleEquilibrium, SupportPair};
