//! Rényi divergence of every order for finite and Gaussian distributions,
//! with the optimization problems built on it: α-information projection,
//! Chernoff information, channel capacity and minimax redundancy.
//!
//! Every quantity is in nats. Infinite values are carried by
//! [`ExtendedReal`], and all probability arithmetic happens in the log domain.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod discretize;
pub mod dist;
pub mod divergence;
pub mod error;
pub mod hypothesis;
pub mod numeric;
pub mod order;
pub mod par;
pub mod parametric;
pub mod projection;
pub mod simplex;

pub use dist::{pushforward, DiscreteDist, StochasticMatrix};
pub use divergence::{
    chi_squared, divergence_curve, hellinger_sq, kl_divergence, renyi_divergence, renyi_entropy,
    total_variation,
};
pub use error::{Error, ErrorCategory, Result};
pub use numeric::ExtendedReal;
pub use order::{Order, OrderClass};
