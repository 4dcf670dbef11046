//! Arithmetic built from first principles.
//!
//! The crate grows the classical number tower bottom-up and keeps every layer
//! executable and checkable:
//!
//! - [`peano`] — finite successor structures with axiom checking, the
//!   iteration engine behind definition-by-recursion, and the canonical
//!   isomorphism between numeral encodings.
//! - [`recfn`] — primitive recursive and μ-recursive function terms with a
//!   fuel-bounded, arity-checked evaluator.
//! - [`dsl`] — a textual front end for [`recfn`] programs (parser, arity
//!   checker, pretty-printer).
//! - [`numbers`] — integers and rationals as canonicalized equivalence
//!   classes of pairs.
//! - [`cuts`] — computable reals as lower-set predicates on rationals with
//!   refinable brackets.
//!
//! ```
//! use num_bigint::BigUint;
//! use numforge_core::cuts::Cut;
//! use numforge_core::dsl;
//! use numforge_core::numbers::{IntClass, RatClass};
//! use numforge_core::recfn::{eval, EvalBudget, EvalOutcome, RecTerm};
//!
//! // Define addition by recursion, evaluate it with a step budget.
//! let program = dsl::parse("def add = R(P[1,1], C(S; P[2,3]));").unwrap();
//! let mut budget = EvalBudget::new(10_000);
//! let args = [BigUint::from(2u32), BigUint::from(3u32)];
//! let outcome = eval(&RecTerm::name("add"), &args, &mut budget, &program.env()).unwrap();
//! assert_eq!(outcome, EvalOutcome::Value(BigUint::from(5u32)));
//!
//! // Extract √2 from its cut to a millionth.
//! let eps = RatClass::make(&IntClass::from(1i64), &IntClass::from(1_000_000i64)).unwrap();
//! let root = Cut::sqrt_nat(&BigUint::from(2u32)).approx(&eps).unwrap();
//! let error = root.mul(&root).sub(&RatClass::from(2i64)).abs();
//! assert!(error <= RatClass::make(&IntClass::from(3i64), &IntClass::from(1_000_000i64)).unwrap());
//! ```

pub mod cuts;
pub mod dsl;
pub mod numbers;
pub mod peano;
pub mod recfn;
