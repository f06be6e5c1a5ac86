//! Character arithmetic: R(T) and its shifted modules Z[δ + X(T)], the
//! highest-weight basis of R(G, σ), Weyl denominators, Euler classes and
//! character expansion.

mod expand;
mod group;
mod torus;

pub use expand::{
    anti_invariant_decompose, divide_by_weyl_denominator, euler_class, euler_class_relative,
    irreducible_restriction, weyl_denominator, weyl_dimension,
};
pub use group::GroupElement;
pub use torus::{TorusElement, TwistClass};
