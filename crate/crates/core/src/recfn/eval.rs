//! Fuel-bounded evaluation of recursive function terms.
//!
//! Every constructor application during evaluation costs one unit of fuel:
//! entering any node charges 1, a primitive recursion then charges whatever
//! its base and its unrolled steps charge, and a μ search charges each probe
//! of its body. Running out of fuel is an ordinary outcome, not an error, so
//! divergent searches terminate with [`EvalOutcome::FuelExhausted`].
//!
//! [`eval`] recognizes three step shapes — the bare first projection, the
//! increment step `C(S; P[2,n])`, and the decrement step `C(pred; P[2,n])` —
//! and applies the whole recursion in one stride. The stride charges exactly
//! the fuel the plain loop would have charged, so outcomes, consumed fuel,
//! and exhaustion points are indistinguishable from the unrolled evaluation
//! ([`eval_trace`] always takes the plain path and is the reference).

use num_bigint::BigUint;
use num_traits::Zero;

use super::{arity_of, ArityError, ArityErrorKind, Env, RecTerm, TermPath};

// ---------------------------------------------------------------------------
// Budget and outcomes
// ---------------------------------------------------------------------------

/// A step budget threaded through one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalBudget {
    fuel: u64,
    consumed: u64,
}

impl EvalBudget {
    pub fn new(fuel: u64) -> Self {
        Self { fuel, consumed: 0 }
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn remaining(&self) -> u64 {
        self.fuel - self.consumed
    }

    fn charge(&mut self, amount: u64) -> Result<(), Stop> {
        if self.remaining() >= amount {
            self.consumed += amount;
            Ok(())
        } else {
            self.consumed = self.fuel;
            Err(Stop::Fuel)
        }
    }

    fn charge_big(&mut self, amount: &BigUint) -> Result<(), Stop> {
        match u64::try_from(amount) {
            Ok(small) => self.charge(small),
            Err(_) => {
                self.consumed = self.fuel;
                Err(Stop::Fuel)
            }
        }
    }
}

/// Result of an evaluation that ran to completion or out of fuel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(BigUint),
    FuelExhausted { consumed: u64 },
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Self::Value(v) => Some(v),
            Self::FuelExhausted { .. } => None,
        }
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Self::Value(_))
    }
}

impl std::fmt::Display for EvalOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Value(v) => write!(f, "{v}"),
            Self::FuelExhausted { consumed } => {
                write!(f, "fuel exhausted after {consumed} steps")
            }
        }
    }
}

/// One entry in an evaluation log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// A primitive recursion unrolled one step.
    PrimRecUnroll {
        index: BigUint,
        accumulator: BigUint,
        params: Vec<BigUint>,
    },
    /// A μ search probed a candidate.
    MuProbe {
        candidate: BigUint,
        params: Vec<BigUint>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvalTrace {
    pub events: Vec<TraceEvent>,
}

impl EvalTrace {
    pub fn unroll_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::PrimRecUnroll { .. }))
            .count()
    }

    pub fn probes(&self) -> Vec<&BigUint> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::MuProbe { candidate, .. } => Some(candidate),
                _ => None,
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Evaluates `term` on `args`, spending at most the budget's fuel.
///
/// The argument count must match the term's derived arity; structural arity
/// violations and unknown names are reported before any fuel is spent.
pub fn eval(
    term: &RecTerm,
    args: &[BigUint],
    budget: &mut EvalBudget,
    env: &Env,
) -> Result<EvalOutcome, ArityError> {
    run(term, args, budget, env, true).map(|(outcome, _)| outcome)
}

/// Like [`eval`], but unrolls every recursion explicitly and logs each
/// unrolling and each μ probe with its arguments.
pub fn eval_trace(
    term: &RecTerm,
    args: &[BigUint],
    budget: &mut EvalBudget,
    env: &Env,
) -> Result<(EvalOutcome, EvalTrace), ArityError> {
    run(term, args, budget, env, false).map(|(outcome, trace)| (outcome, trace.unwrap_or_default()))
}

fn run(
    term: &RecTerm,
    args: &[BigUint],
    budget: &mut EvalBudget,
    env: &Env,
    fast: bool,
) -> Result<(EvalOutcome, Option<EvalTrace>), ArityError> {
    let arity = arity_of(term, env)?;
    if args.len() != arity {
        return Err(ArityError {
            path: TermPath::root(),
            kind: ArityErrorKind::ArgCount {
                expected: arity,
                found: args.len(),
            },
        });
    }
    let mut tracer = if fast {
        Tracer::Off
    } else {
        Tracer::On(Vec::new())
    };
    let result = eval_node(term, args, budget, env, &mut tracer, fast);
    let trace = match tracer {
        Tracer::Off => None,
        Tracer::On(events) => Some(EvalTrace { events }),
    };
    match result {
        Ok(v) => Ok((EvalOutcome::Value(v), trace)),
        Err(Stop::Fuel) => Ok((
            EvalOutcome::FuelExhausted {
                consumed: budget.consumed(),
            },
            trace,
        )),
    }
}

// ---------------------------------------------------------------------------
// Core recursion
// ---------------------------------------------------------------------------

enum Stop {
    Fuel,
}

enum Tracer {
    Off,
    On(Vec<TraceEvent>),
}

impl Tracer {
    fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Tracer::On(events) = self {
            events.push(event());
        }
    }
}

fn eval_node(
    term: &RecTerm,
    args: &[BigUint],
    budget: &mut EvalBudget,
    env: &Env,
    tracer: &mut Tracer,
    fast: bool,
) -> Result<BigUint, Stop> {
    budget.charge(1)?;
    match term {
        RecTerm::Zero(_) => Ok(BigUint::zero()),
        RecTerm::Succ => Ok(&args[0] + 1u32),
        RecTerm::Proj { index, .. } => Ok(args[index - 1].clone()),
        RecTerm::Name(name) => {
            let target = env
                .lookup(name)
                .expect("names are resolved before evaluation starts");
            eval_node(target, args, budget, env, tracer, fast)
        }
        RecTerm::Compose { outer, inners } => {
            let mut vals = Vec::with_capacity(inners.len());
            for inner in inners {
                vals.push(eval_node(inner, args, budget, env, tracer, fast)?);
            }
            eval_node(outer, &vals, budget, env, tracer, fast)
        }
        RecTerm::PrimRec { base, step } => {
            let count = &args[0];
            let params = &args[1..];
            let seed = eval_node(base, params, budget, env, tracer, fast)?;

            if fast {
                if let Some(shape) = classify_step(step, env) {
                    return stride(shape, count, seed, budget);
                }
            }

            // step_args layout: [index, accumulator, params...]
            let mut step_args = Vec::with_capacity(params.len() + 2);
            step_args.push(BigUint::zero());
            step_args.push(seed);
            step_args.extend_from_slice(params);
            let mut index = BigUint::zero();
            while &index < count {
                tracer.record(|| TraceEvent::PrimRecUnroll {
                    index: step_args[0].clone(),
                    accumulator: step_args[1].clone(),
                    params: params.to_vec(),
                });
                let next = eval_node(step, &step_args, budget, env, tracer, fast)?;
                index += 1u32;
                step_args[0].clone_from(&index);
                step_args[1] = next;
            }
            Ok(step_args.swap_remove(1))
        }
        RecTerm::Mu(body) => {
            let mut probe_args = args.to_vec();
            probe_args.push(BigUint::zero());
            loop {
                tracer.record(|| TraceEvent::MuProbe {
                    candidate: probe_args[args.len()].clone(),
                    params: args.to_vec(),
                });
                let v = eval_node(body, &probe_args, budget, env, tracer, fast)?;
                if v.is_zero() {
                    return Ok(probe_args.swap_remove(args.len()));
                }
                probe_args[args.len()] += 1u32;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Recognized step shapes
// ---------------------------------------------------------------------------

/// Step shapes whose full recursion has a closed form with exact fuel parity.
enum StepShape {
    /// `P[1,2]`: every step returns the previous index, so the recursion
    /// yields `n - 1` for `n >= 1`. One fuel unit per step.
    IndexEcho,
    /// `C(S; P[2,n])`: each step increments the accumulator. Three fuel
    /// units per step.
    Increment,
    /// `C(pred; P[2,n])` with `pred = R(Z[0], P[1,2])`: each step decrements
    /// the accumulator, sticking at zero. The per-step fuel depends on the
    /// current accumulator, which the closed form sums exactly.
    Decrement { name_wrapped: bool },
}

fn classify_step(step: &RecTerm, env: &Env) -> Option<StepShape> {
    match step {
        RecTerm::Proj { index: 1, arity: 2 } => Some(StepShape::IndexEcho),
        RecTerm::Compose { outer, inners } => {
            if inners.len() != 1 {
                return None;
            }
            if !matches!(inners[0], RecTerm::Proj { index: 2, .. }) {
                return None;
            }
            match &**outer {
                RecTerm::Succ => Some(StepShape::Increment),
                RecTerm::Name(n) if is_decrement_term(env.lookup(n)?) => {
                    Some(StepShape::Decrement { name_wrapped: true })
                }
                t if is_decrement_term(t) => Some(StepShape::Decrement {
                    name_wrapped: false,
                }),
                _ => None,
            }
        }
        _ => None,
    }
}

fn is_decrement_term(term: &RecTerm) -> bool {
    match term {
        RecTerm::PrimRec { base, step } => {
            matches!(**base, RecTerm::Zero(0))
                && matches!(**step, RecTerm::Proj { index: 1, arity: 2 })
        }
        _ => false,
    }
}

/// Applies a recognized recursion in one stride: `count` steps from `seed`,
/// charging exactly what the unrolled loop would charge.
fn stride(
    shape: StepShape,
    count: &BigUint,
    seed: BigUint,
    budget: &mut EvalBudget,
) -> Result<BigUint, Stop> {
    match shape {
        StepShape::IndexEcho => {
            budget.charge_big(count)?;
            if count.is_zero() {
                Ok(seed)
            } else {
                Ok(count - 1u32)
            }
        }
        StepShape::Increment => {
            budget.charge_big(&(count * 3u32))?;
            Ok(seed + count)
        }
        StepShape::Decrement { name_wrapped } => {
            // Per step at accumulator v: compose(1) + projection(1)
            // [+ name(1)] + pred applied to v, which itself costs 2 + v.
            // The accumulator after k steps is seed - k, sticking at zero.
            let per_step: u32 = if name_wrapped { 5 } else { 4 };
            // Σ_{k<min(count,seed)} (seed − k), the accumulator sizes the
            // inner pred walks through before it sticks at zero.
            let live = count.min(&seed).clone();
            let decrements = if live.is_zero() {
                BigUint::zero()
            } else {
                &live * &seed - (&live * (&live - 1u32)) / 2u32
            };
            let total = count * per_step + decrements;
            budget.charge_big(&total)?;
            if count >= &seed {
                Ok(BigUint::zero())
            } else {
                Ok(seed - count)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
