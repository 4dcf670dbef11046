//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its elapsed time (visible with `--nocapture`). Tolerances and time budgets
//! are pinned in the assertions.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{gen_program, gen_term};
use num_bigint::BigUint;
use numforge_core::cuts::Cut;
use numforge_core::dsl::{parse, pretty};
use numforge_core::numbers::{IntClass, RatClass};
use numforge_core::peano::{build_iso, BuiltinModel, IterationSpec, PointedStructure};
use numforge_core::recfn::{eval, Env, EvalBudget, EvalOutcome, RecTerm};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn fixture(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

fn stdlib_env() -> Env {
    parse(&fixture("programs/stdlib.rf"))
        .expect("stdlib fixture parses")
        .env()
}

fn eval_value(env: &Env, name: &str, args: &[u64]) -> BigUint {
    let args: Vec<BigUint> = args.iter().copied().map(BigUint::from).collect();
    let mut budget = EvalBudget::new(u64::MAX);
    match eval(&RecTerm::name(name), &args, &mut budget, env).expect("arity-correct") {
        EvalOutcome::Value(v) => v,
        EvalOutcome::FuelExhausted { consumed } => {
            panic!("{name} exhausted an unbounded budget after {consumed} steps")
        }
    }
}

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("PASS {criterion} in {elapsed:?} (budget {budget:?})");
}

fn rat(p: i64, q: i64) -> RatClass {
    RatClass::make(&IntClass::from(p), &IntClass::from(q)).unwrap()
}

/// Criterion 1: DSL-defined add, mul, pred, monus agree exactly with native
/// arbitrary-precision arithmetic on [0,100]².
#[test]
fn criterion_1_pr_arithmetic_oracle() {
    let started = Instant::now();
    let env = stdlib_env();
    for x in 0u64..=100 {
        let pred_expected = x.saturating_sub(1);
        assert_eq!(eval_value(&env, "pred", &[x]), BigUint::from(pred_expected));
        for y in 0u64..=100 {
            assert_eq!(eval_value(&env, "add", &[x, y]), BigUint::from(x + y));
            assert_eq!(eval_value(&env, "mul", &[x, y]), BigUint::from(x * y));
            assert_eq!(
                eval_value(&env, "monus", &[x, y]),
                BigUint::from(x.saturating_sub(y))
            );
        }
    }
    finish(
        "criterion 1 (PR arithmetic oracle)",
        started,
        Duration::from_secs(10),
    );
}

/// Criterion 2: for random tabulated steps, the iteration trajectory up to
/// n = 1000 equals an independent right-folded recomputation.
#[test]
fn criterion_2_recursion_uniqueness() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_0002);

    // Independent route: descend to zero by recursion and rebuild the values
    // through the returns, checking every trajectory position on the way up.
    fn fold_from_the_right(table: &[u8; 64], omega: u8, trajectory: &[u8], n: usize) -> u8 {
        let value = if n == 0 {
            omega
        } else {
            table[fold_from_the_right(table, omega, trajectory, n - 1) as usize]
        };
        assert_eq!(trajectory[n], value, "disagreement at position {n}");
        value
    }

    for _ in 0..100 {
        let mut table = [0u8; 64];
        for slot in table.iter_mut() {
            *slot = rng.gen_range(0..64);
        }
        let omega: u8 = rng.gen_range(0..64);
        let spec = IterationSpec::new(omega, move |v: &u8| Some(table[*v as usize]));
        let trajectory = spec.trajectory(1000).expect("total step");
        assert_eq!(trajectory.len(), 1001);
        fold_from_the_right(&table, omega, &trajectory, 1000);
        assert_eq!(spec.iterate(1000).unwrap(), trajectory[1000]);
    }
    finish(
        "criterion 2 (recursion uniqueness)",
        started,
        Duration::from_secs(1),
    );
}

/// Criterion 3: the unary↔binary isomorphism prefix of length 1000 is
/// injective both ways, successor-commuting, and inverts entrywise.
#[test]
fn criterion_3_categoricity() {
    let started = Instant::now();
    let depth = 1000;
    let unary = BuiltinModel::Unary.fragment(depth);
    let binary = BuiltinModel::Binary.fragment(depth);

    let forward = build_iso(&unary, &binary, depth).expect("both models satisfy the axioms");
    let backward = build_iso(&binary, &unary, depth).expect("both models satisfy the axioms");
    assert_eq!(forward.len(), depth);

    let mut lefts = std::collections::HashSet::new();
    let mut rights = std::collections::HashSet::new();
    for (a, b) in forward.pairs() {
        assert!(lefts.insert(a.clone()), "left side repeats {a:?}");
        assert!(rights.insert(b.clone()), "right side repeats {b:?}");
    }

    for window in forward.pairs().windows(2) {
        let (a0, b0) = &window[0];
        let (a1, b1) = &window[1];
        assert_eq!(&BuiltinModel::Unary.successor(a0), a1);
        assert_eq!(&BuiltinModel::Binary.successor(b0), b1);
    }

    for ((a, b), (b2, a2)) in forward.pairs().iter().zip(backward.pairs()) {
        assert_eq!(a, a2);
        assert_eq!(b, b2);
    }

    assert_eq!(
        forward.pairs()[3],
        ("|||".to_string(), "11".to_string()),
        "prefix spot check"
    );
    finish(
        "criterion 3 (categoricity)",
        started,
        Duration::from_secs(1),
    );
}

/// Criterion 4: the fixture models give verdicts (ok,ok,ok), (d1 fails),
/// (d3 fails), each failure carrying a reproducible counterexample.
#[test]
fn criterion_4_nonstandard_detection() {
    let started = Instant::now();

    let linear = PointedStructure::from_text(&fixture("models/linear.model")).unwrap();
    let report = linear.check_axioms();
    assert!(report.d1 && report.d2 && report.d3, "{report}");

    let cycle = PointedStructure::from_text(&fixture("models/cycle3.model")).unwrap();
    let report = cycle.check_axioms();
    assert!(!report.d1 && report.d2 && report.d3, "{report}");
    let witness = report.counterexamples.d1.as_deref().expect("d1 witness");
    assert_eq!(cycle.succ_of(witness).unwrap(), Some(cycle.zero()));

    let mixed = PointedStructure::from_text(&fixture("models/mixed.model")).unwrap();
    let report = mixed.check_axioms();
    assert!(report.d1 && report.d2 && !report.d3, "{report}");
    let witness = report.counterexamples.d3.as_deref().expect("d3 witness");
    assert!(!mixed.is_frontier(witness).unwrap());
    let chain = mixed.chain_of(mixed.zero(), mixed.len()).unwrap();
    assert!(!chain.contains(witness));

    finish(
        "criterion 4 (non-standard detection)",
        started,
        Duration::from_secs(1),
    );
}

/// Criterion 5: the searching isqrt equals the brute-force floor square
/// root on [0, 10⁴].
#[test]
fn criterion_5_mu_minimality() {
    let started = Instant::now();
    let env = stdlib_env();

    fn floor_sqrt_brute(x: u64) -> u64 {
        let mut r = 0u64;
        while (r + 1) * (r + 1) <= x {
            r += 1;
        }
        r
    }

    for x in 0u64..=10_000 {
        assert_eq!(
            eval_value(&env, "isqrt", &[x]),
            BigUint::from(floor_sqrt_brute(x)),
            "isqrt({x})"
        );
    }
    finish(
        "criterion 5 (μ minimality)",
        started,
        Duration::from_secs(30),
    );
}

/// Criterion 6: √2 to 10⁻⁶, directly and squared.
#[test]
fn criterion_6_cuts() {
    let eps = rat(1, 1_000_000);
    let two = rat(2, 1);

    let started = Instant::now();
    let sqrt2 = Cut::sqrt_nat(&BigUint::from(2u32));
    let a = sqrt2.approx(&eps).unwrap();
    assert!(a.mul(&a).sub(&two).abs() <= rat(3, 1_000_000));
    finish(
        "criterion 6a (cut_sqrt(2) at 1e-6)",
        started,
        Duration::from_secs(1),
    );

    let started = Instant::now();
    let squared = sqrt2.mul(&sqrt2);
    let b = squared.approx(&eps).unwrap();
    assert!(b.sub(&two).abs() <= rat(5, 1_000_000));
    finish(
        "criterion 6b (cut product at 1e-6)",
        started,
        Duration::from_secs(1),
    );
}

/// Criterion 7: arithmetic on classes is independent of representatives,
/// 10⁴ randomized swap trials.
#[test]
fn criterion_7_quotient_well_definedness() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_0007);

    for _ in 0..10_000 {
        let (a, b) = (rng.gen_range(0..10_000u64), rng.gen_range(0..10_000u64));
        let (c, d) = (rng.gen_range(0..10_000u64), rng.gen_range(0..10_000u64));
        let (s, t) = (rng.gen_range(0..1_000u64), rng.gen_range(0..1_000u64));
        let x = IntClass::from_pair(BigUint::from(a), BigUint::from(b));
        let x2 = IntClass::from_pair(BigUint::from(a + s), BigUint::from(b + s));
        let y = IntClass::from_pair(BigUint::from(c), BigUint::from(d));
        let y2 = IntClass::from_pair(BigUint::from(c + t), BigUint::from(d + t));
        assert_eq!(x, x2);
        assert_eq!(x.add(&y), x2.add(&y2));
        assert_eq!(x.mul(&y), x2.mul(&y2));
        assert_eq!(x.neg(), x2.neg());
    }

    for _ in 0..10_000 {
        let p = rng.gen_range(-500i64..500);
        let q = rng.gen_range(1i64..50);
        let r = rng.gen_range(-500i64..500);
        let s = rng.gen_range(1i64..50);
        let k = rng.gen_range(1i64..20);
        let m = rng.gen_range(1i64..20);
        let x = rat(p, q);
        let x2 = rat(p * k, q * k);
        let y = rat(r, s);
        let y2 = rat(-r * m, -s * m);
        assert_eq!(x, x2);
        assert_eq!(y, y2);
        assert_eq!(x.add(&y), x2.add(&y2));
        assert_eq!(x.mul(&y), x2.mul(&y2));
        assert_eq!(x.neg(), x2.neg());
        if !x.is_zero() {
            assert_eq!(x.inv().unwrap(), x2.inv().unwrap());
        }
    }
    finish(
        "criterion 7 (quotient well-definedness)",
        started,
        Duration::from_secs(5),
    );
}

/// Criterion 8: parse ∘ pretty is the identity on 10³ random programs.
#[test]
fn criterion_8_dsl_round_trip() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_0008);
    for _ in 0..1_000 {
        let defs = rng.gen_range(1..=4);
        let program = gen_program(&mut rng, defs, 5);
        let rendered = pretty(&program);
        let reparsed = parse(&rendered).expect("canonical rendering parses");
        assert_eq!(reparsed, program);
        // The rendering is a fixed point.
        assert_eq!(pretty(&reparsed), rendered);
    }
    finish(
        "criterion 8 (DSL round-trip)",
        started,
        Duration::from_secs(5),
    );
}

/// Criterion 9: 200 random term/argument pairs that succeed at fuel F
/// return the same value at 2F and 10F.
#[test]
fn criterion_9_fuel_monotonicity() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xacce_0009);
    let env = numforge_core::recfn::standard_env();
    let names: Vec<(String, usize)> = vec![
        ("add".to_string(), 2),
        ("mul".to_string(), 2),
        ("pred".to_string(), 1),
        ("monus".to_string(), 2),
    ];

    let mut successes = 0;
    while successes < 200 {
        let arity = rng.gen_range(1..3);
        let term = gen_term(&mut rng, arity, 3, true, &names);
        let args: Vec<BigUint> = (0..arity)
            .map(|_| BigUint::from(rng.gen_range(0..8u64)))
            .collect();
        let fuel = 30_000u64;
        let mut budget = EvalBudget::new(fuel);
        let outcome = eval(&term, &args, &mut budget, &env).unwrap();
        let EvalOutcome::Value(v) = outcome else {
            continue;
        };
        successes += 1;
        for factor in [2u64, 10] {
            let mut larger = EvalBudget::new(fuel * factor);
            let again = eval(&term, &args, &mut larger, &env).unwrap();
            assert_eq!(again, EvalOutcome::Value(v.clone()));
        }
    }
    finish(
        "criterion 9 (fuel monotonicity)",
        started,
        Duration::from_secs(10),
    );
}
