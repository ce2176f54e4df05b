//! Solvers for the 0-1 penalized knapsack problem.

pub mod approx;
pub mod dp;
pub mod error;
pub mod exact;
pub mod generator;
pub mod kp;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod par;

pub use error::{PkpError, Result};
pub use model::{canonicalize, evaluate, Instance, Item, Solution};
