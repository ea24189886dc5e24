//! Counting, ranking, uniform sampling and simple typing of lambda terms
//! under the binary lambda calculus size model, plus the numerics of the
//! growth constants of the term counts.
//!
//! ```
//! use blc_census::{CountTable, FreeBound, unrank, typing};
//! use num_bigint::BigUint;
//!
//! let table = CountTable::new(20);
//! assert_eq!(table.get(FreeBound::AtMost(0), 19), Some(&BigUint::from(431u32)));
//!
//! let t = unrank::unrank(&table, FreeBound::AtMost(0), 4, &BigUint::from(1u8)).unwrap();
//! assert_eq!(t.encode().to_string(), "0010");
//! let ty = typing::infer(&t, 0).unwrap().unwrap();
//! assert_eq!(ty.ty.to_string(), "a -> a");
//! ```

pub mod asymptotics;
pub mod count;
pub mod par;
pub mod poly;
pub mod real;
pub mod term;
pub mod typing;
pub mod unrank;

pub use count::{verify_functional_equation, CountTable, Counter, FreeBound};
pub use par::Strategy;
pub use term::{decode, BitString, DecodeError, ParseError, Term};
pub use unrank::{Sampler, UnrankError};
