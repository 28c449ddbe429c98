//! Exact-arithmetic engine for Lie conformal superalgebras over
//! differential rings, with the N=4 algebra, its automorphism family
//! theta_{A,B}, and the kernel/factorization calculus built on top.

pub mod builders;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod morphism;
pub mod n4;
pub mod parse;
pub mod ring;
pub mod sampling;
pub mod scalar;

pub use conformal::{
    check_axioms, lambda_bracket, nth_product, AxiomReport, ConfElement, GeneratorBasis, KElem,
    LambdaPoly, Parity, StructureTable, TableBuilder,
};
pub use error::ConfError;
pub use ring::{RingElement, RingSpec};
pub use scalar::Scalar;
