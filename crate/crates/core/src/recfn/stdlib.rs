//! Standard definitions: addition, multiplication, predecessor, truncated
//! subtraction, and integer square root.
//!
//! `pred(0) = 0` and `monus` truncates at zero, the usual conventions for a
//! subtraction-free base language.

use super::{Env, RecTerm};

fn add_term() -> RecTerm {
    // add(0, y) = y; add(n+1, y) = S(add(n, y))
    RecTerm::prim_rec(
        RecTerm::proj(1, 1),
        RecTerm::compose(RecTerm::Succ, vec![RecTerm::proj(2, 3)]),
    )
}

fn mul_term() -> RecTerm {
    // mul(0, y) = 0; mul(n+1, y) = add(y, mul(n, y))
    RecTerm::prim_rec(
        RecTerm::Zero(1),
        RecTerm::compose(
            RecTerm::name("add"),
            vec![RecTerm::proj(3, 3), RecTerm::proj(2, 3)],
        ),
    )
}

fn pred_term() -> RecTerm {
    // pred(0) = 0; pred(n+1) = n
    RecTerm::prim_rec(RecTerm::Zero(0), RecTerm::proj(1, 2))
}

fn monus_term() -> RecTerm {
    // monus(x, y) = x ∸ y, via y-fold predecessor application. The inner
    // recursion runs on the subtrahend, so the arguments are swapped first.
    let fold_pred = RecTerm::prim_rec(
        RecTerm::proj(1, 1),
        RecTerm::compose(RecTerm::name("pred"), vec![RecTerm::proj(2, 3)]),
    );
    RecTerm::compose(fold_pred, vec![RecTerm::proj(2, 2), RecTerm::proj(1, 2)])
}

/// The searching integer square root: least `y` with `(y+1)^2 > x`, written
/// as `μ y. 1 ∸ ((y+1)·(y+1) ∸ x)` so the body is zero exactly when the
/// square exceeds the input.
pub fn isqrt_term() -> RecTerm {
    let y_plus_one = RecTerm::compose(RecTerm::Succ, vec![RecTerm::proj(2, 2)]);
    let square = RecTerm::compose(RecTerm::name("mul"), vec![y_plus_one.clone(), y_plus_one]);
    let gap = RecTerm::compose(RecTerm::name("monus"), vec![square, RecTerm::proj(1, 2)]);
    let one = RecTerm::compose(RecTerm::Succ, vec![RecTerm::Zero(2)]);
    RecTerm::mu(RecTerm::compose(RecTerm::name("monus"), vec![one, gap]))
}

/// An environment with `add`, `mul`, `pred`, `monus`, and `isqrt` defined,
/// in that order.
pub fn standard_env() -> Env {
    let mut env = Env::new();
    env.define("add", add_term()).expect("add is well-formed");
    env.define("mul", mul_term()).expect("mul is well-formed");
    env.define("pred", pred_term())
        .expect("pred is well-formed");
    env.define("monus", monus_term())
        .expect("monus is well-formed");
    env.define("isqrt", isqrt_term())
        .expect("isqrt is well-formed");
    env
}
