//! Exact plane multiflow maximisation.
//!
//! The crate works on instances whose supply graph `G` and demand graph `H`
//! are jointly embedded in the plane (the embedding is part of the input, as
//! a rotation system). It provides:
//!
//! * an exact maximum fractional multiflow over enumerated paths ([`flow`]),
//! * dual uncrossing into a laminar flow of the same value ([`laminar`]),
//! * rounding to half-integer flows losing at most half the value, to integer
//!   flows at capacities `c + 1` without loss, and from half-integer to
//!   integer flows losing at most half ([`rounding`]),
//! * a primal-dual multicut `Q` together with a flow `f` such that
//!   `c(Q) <= 2|f|` ([`multicut`]),
//! * brute-force oracles for small instances ([`oracle`]).
//!
//! All arithmetic is exact; see [`rational`].

pub mod cli;
pub mod error;
pub mod flow;
pub mod instance;
pub mod laminar;
pub mod lp;
pub mod multicut;
pub mod oracle;
pub mod plane;
pub mod rational;
pub mod report;
pub mod rounding;

pub use error::{Error, Result};
pub use flow::{Flow, Path, PathSet};
pub use instance::{EdgeRole, Instance};
pub use plane::{DualMap, PlaneGraph, Shore};
pub use rational::Rational;
