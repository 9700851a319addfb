//! Compile Boolean functions into non-adaptive measurement patterns on GHZ
//! states.
//!
//! A function `f: {0,1}^n -> {0,1}` is turned into a multilinear polynomial
//! over parity characters whose value at every input is an integer congruent
//! to `f(x)` mod 2. Each non-constant term becomes one GHZ qubit measured on
//! the equator of the Bloch sphere, with an angle chosen by the parity of the
//! term's input bits. The crate covers:
//!
//! - [`boolfn`]: truth tables, ANF, symmetric value vectors and the named
//!   families (complete symmetric functions, counting functions).
//! - [`transforms`]: exact Walsh-Hadamard and Krawtchouk transforms.
//! - [`polynomial`]: the polynomial representation and the mod-2 oracle.
//! - [`constructions`]: FR, EF, CSF, KR and SC compilers.
//! - [`assignment`]: measurement assignments, exact evaluation and sampling.
//! - [`circuits`]: cost models and gate-level netlists.
//! - [`feasibility`]: Smith normal form and the symmetric support decision.
//! - [`cli`]: command-line orchestration used by the `nmqc` binary.
//!
//! ```
//! use nmqc::boolfn::BooleanFunction;
//! use nmqc::constructions::construct_fr;
//! use nmqc::assignment::assignment_from_poly;
//!
//! let and2 = BooleanFunction::from_fn(2, |x| x == 0b11).unwrap();
//! let report = construct_fr(&and2).unwrap();
//! assert_eq!(report.sparsity, 3);
//! let a = assignment_from_poly(&report.poly).unwrap();
//! assert!(a.evaluate_deterministic(&[true, true]).unwrap());
//! ```

pub mod assignment;
pub mod boolfn;
pub mod circuits;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod feasibility;
pub mod polynomial;
pub mod rational;
pub mod subset;
pub mod transforms;

pub use error::{Error, Result};
pub use rational::Rational;
pub use subset::Subset;
