#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod charring;
pub mod error;
pub mod induction;
pub mod lattice;
pub mod multiplets;
mod numeric;
pub mod random;
pub mod rational;
pub mod rootdata;
pub mod spinc;
pub mod verify;
pub mod weyl;

pub use charring::{GroupElement, TorusElement, TwistClass};
pub use error::{Error, Result};
pub use induction::{ClassicalKind, InductionProblem, Scope};
pub use lattice::Lattice;
pub use rational::{RationalWeight, Weight};
pub use rootdata::{RootDatum, SubgroupDatum};
pub use weyl::{WeylElement, WeylGroup};
