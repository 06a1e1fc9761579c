//! Realizability of couples (sign pattern, order of moduli) by hyperbolic
//! polynomials with two positive roots.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`], [`sturm`], [`config`]: exact rational polynomials, Sturm
//!   root counting/isolation, and root configurations;
//! * [`signs`]: sign patterns, orders of moduli, couples and the
//!   `Z2 x Z2` involution action;
//! * [`constructor`]: explicit realizers (base witnesses, concatenation,
//!   degree lift);
//! * [`search`]: seeded derivative-free search for witnesses;
//! * [`certificates`]: sampled inequality checks and exact identity checks;
//! * [`classifier`]: the rule engine and family tables.

pub mod certificates;
pub mod classifier;
pub mod config;
pub mod constructor;
pub mod error;
pub mod poly;
pub mod rational;
pub mod search;
pub mod signs;
pub mod sturm;

pub use config::{expand, Role, Root, RootConfiguration};
pub use error::{Error, Result};
pub use poly::{elementary_symmetric, Polynomial, SymmetricTable};
pub use rational::Rational;
pub use signs::{sign_pattern, Couple, Letter, ModuliOrder, PairCode, Sign, SignPattern, TripleCode};
pub use sturm::{count_real_roots, is_hyperbolic, moduli_order, Bound};
