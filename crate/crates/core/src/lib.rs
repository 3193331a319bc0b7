//! Exact symbolic combinatorics of q-characters of quantum affine algebras.
//!
//! The crate works entirely with Laurent monomials in the variables
//! `Y_{i,q^r}` (spectral parameters are integer powers of a generic `q`),
//! over exact integer and rational arithmetic. It provides:
//!
//! - [`cartan`]: finite-type Cartan/Weyl data, reduced words, the invariant
//!   form;
//! - [`yring`]: sparse Laurent monomials and polynomials, the root monomials
//!   `A_{i,a}`, dominance tests and factorization in the `A`-basis;
//! - [`braid`]: the braid group action on monomials, twisted root monomials
//!   `A^w_{i,a}` and the twisted orderings;
//! - [`fm`]: q-characters of fundamental representations via the sl2-lift
//!   closure algorithm;
//! - [`lweight`]: the extended monomial group of l-weights (`Psi`-monomials
//!   with weight prefactors) and the extended braid action;
//! - [`xseries`]: X-series factorizations, structural eigenvalues as
//!   root/pole data, and an independent truncated-power-series oracle;
//! - [`verify`]: the theorem/conjecture sweep harness.

// index loops over small matrices read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub use num_rational;

pub mod braid;
pub mod cartan;
mod error;
pub mod fm;
pub mod lweight;
pub mod series;
pub mod verify;
pub mod xseries;
pub mod yring;

pub use braid::{Braid, MonomialOrder, TwistedRoot};
pub use cartan::{CartanData, Node, TypeLabel, Weight, WeylElement};
pub use error::Error;
pub use fm::QCharacter;
pub use lweight::PsiMonomial;
pub use series::TruncatedSeries;
pub use xseries::{RootSeries, XFactorization};
pub use yring::{YMonomial, YPolynomial};
