//! Computable reals as cuts: decidable lower-set predicates on the rationals
//! paired with a refinable bracket.
//!
//! A [`Cut`] denotes the real number at the boundary of an open, downward
//! closed set of rationals. The predicate decides membership in that lower
//! set; the bracket `(lo, hi)` pins the boundary between a rational known
//! inside and one known outside. Cuts are open: a cut built from a rational
//! excludes its generator, so membership is a strict comparison.
//!
//! [`Cut::approx`] bisects the bracket with the predicate until its width
//! drops below a requested epsilon, which makes every cut extractable to any
//! precision. Arithmetic on cuts refines the operand brackets instead of
//! manipulating quantified predicates: a sum or product decides membership
//! by narrowing both operands until the interval arithmetic answers. Each
//! membership query performs at most [`REFINE_ROUNDS`] narrowing rounds and
//! reports "outside" when the query sits too close to the boundary to
//! resolve — exactly the right answer for boundary points of an open set,
//! and far below any practical epsilon otherwise.
//!
//! Division is deliberately not provided.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::numbers::RatClass;

/// Bound on bracket-narrowing rounds inside one membership query. Each round
/// halves the operand brackets, so the unresolved band around the boundary
/// shrinks by a factor of 2^256 of the initial widths.
pub const REFINE_ROUNDS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutError {
    /// `approx` needs a strictly positive epsilon.
    NonpositiveEpsilon,
    /// The bracket disagrees with the predicate: the low end tested outside
    /// or the high end tested inside.
    InconsistentBracket,
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonpositiveEpsilon => write!(f, "epsilon must be positive"),
            Self::InconsistentBracket => {
                write!(f, "cut predicate contradicts its bracket")
            }
        }
    }
}

impl std::error::Error for CutError {}

/// A lower-set predicate with a bracket `(lo, hi)`: `lo` is inside, `hi` is
/// outside, and the denoted real lies strictly between them.
#[derive(Clone)]
pub struct Cut {
    member: Arc<dyn Fn(&RatClass) -> bool + Send + Sync>,
    lo: RatClass,
    hi: RatClass,
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cut")
            .field("lo", &self.lo.to_string())
            .field("hi", &self.hi.to_string())
            .finish_non_exhaustive()
    }
}

impl Cut {
    /// Wraps a predicate with its bracket, verifying the bracket against the
    /// predicate once.
    pub fn new(
        lo: RatClass,
        hi: RatClass,
        member: impl Fn(&RatClass) -> bool + Send + Sync + 'static,
    ) -> Result<Self, CutError> {
        let cut = Self {
            member: Arc::new(member),
            lo,
            hi,
        };
        if cut.lo >= cut.hi || !cut.member(&cut.lo) || cut.member(&cut.hi) {
            return Err(CutError::InconsistentBracket);
        }
        Ok(cut)
    }

    /// The cut of a rational: everything strictly below `q`, bracketed by
    /// `(q - 1, q + 1)`.
    pub fn from_rational(q: &RatClass) -> Self {
        let one = RatClass::one();
        let boundary = q.clone();
        Self {
            member: Arc::new(move |x| *x < boundary),
            lo: q.sub(&one),
            hi: q.add(&one),
        }
    }

    /// The cut of `√n`: negatives and everything whose square is below `n`.
    /// Bracketed by `(0, n + 1)` for positive `n` and `(-1, 1)` for zero.
    pub fn sqrt_nat(n: &BigUint) -> Self {
        let n_rat = RatClass::from(crate::numbers::IntClass::from(n.clone()));
        let inside = n_rat.clone();
        let member = move |x: &RatClass| x.is_negative() || x.mul(x) < inside;
        if n_rat.is_zero() {
            Self {
                member: Arc::new(member),
                lo: RatClass::from(-1i64),
                hi: RatClass::one(),
            }
        } else {
            let hi = n_rat.add(&RatClass::one());
            Self {
                member: Arc::new(member),
                lo: RatClass::zero(),
                hi,
            }
        }
    }

    /// Does `q` belong to the lower set?
    pub fn member(&self, q: &RatClass) -> bool {
        (self.member)(q)
    }

    /// The stored bracket `(inside, outside)`.
    pub fn bracket(&self) -> (&RatClass, &RatClass) {
        (&self.lo, &self.hi)
    }

    /// Bisects a local copy of the bracket until its width is at most `eps`.
    /// Returns `(lo, hi)` with `member(lo)`, `!member(hi)`, and
    /// `hi - lo <= eps`; the denoted real is within `eps` above `lo`.
    pub fn approx_bracket(&self, eps: &RatClass) -> Result<(RatClass, RatClass), CutError> {
        if !eps.is_positive() {
            return Err(CutError::NonpositiveEpsilon);
        }
        if !self.member(&self.lo) || self.member(&self.hi) {
            return Err(CutError::InconsistentBracket);
        }
        let half = RatClass::make(
            &crate::numbers::IntClass::from(1i64),
            &crate::numbers::IntClass::from(2i64),
        )
        .expect("two is nonzero");
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        while hi.sub(&lo) > *eps {
            let mid = lo.add(&hi).mul(&half);
            if self.member(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    }

    /// A rational inside the cut with `r + eps` outside: within `eps` of the
    /// real the cut denotes.
    pub fn approx(&self, eps: &RatClass) -> Result<RatClass, CutError> {
        self.approx_bracket(eps).map(|(lo, _)| lo)
    }

    /// The cut of the sum: membership is decided by narrowing both operand
    /// brackets until interval addition separates the query from the
    /// boundary.
    pub fn add(&self, rhs: &Self) -> Self {
        let lo = self.lo.add(&rhs.lo);
        let hi = self.hi.add(&rhs.hi);
        let a = self.clone();
        let b = rhs.clone();
        Self {
            member: Arc::new(move |x| {
                let mut ba = LocalBracket::of(&a);
                let mut bb = LocalBracket::of(&b);
                for _ in 0..REFINE_ROUNDS {
                    if *x <= ba.lo.add(&bb.lo) {
                        return true;
                    }
                    if *x >= ba.hi.add(&bb.hi) {
                        return false;
                    }
                    ba.narrow(&a);
                    bb.narrow(&b);
                }
                false
            }),
            lo,
            hi,
        }
    }

    /// The cut of the negation: everything strictly below the negated real.
    pub fn neg(&self) -> Self {
        let lo = self.hi.neg();
        let hi = self.lo.neg();
        let a = self.clone();
        Self {
            // A narrowed high end may sit exactly on the operand's real, so
            // the inside test must be strict; the low end stays strictly
            // inside, so the outside test may be inclusive.
            member: Arc::new(move |x| {
                let mut ba = LocalBracket::of(&a);
                for _ in 0..REFINE_ROUNDS {
                    if *x < ba.hi.neg() {
                        return true;
                    }
                    if *x >= ba.lo.neg() {
                        return false;
                    }
                    ba.narrow(&a);
                }
                false
            }),
            lo,
            hi,
        }
    }

    /// The cut of the product. Operand brackets are first narrowed toward a
    /// definite sign, then the min/max-of-endpoint-products interval rule
    /// decides membership; the rule stays sound when a bracket keeps
    /// straddling zero.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (lo, hi) = product_interval(&self.lo, &self.hi, &rhs.lo, &rhs.hi);
        let a = self.clone();
        let b = rhs.clone();
        Self {
            member: Arc::new(move |x| {
                let mut ba = LocalBracket::of(&a);
                let mut bb = LocalBracket::of(&b);
                for _ in 0..REFINE_ROUNDS {
                    if ba.has_definite_sign() && bb.has_definite_sign() {
                        break;
                    }
                    ba.narrow(&a);
                    bb.narrow(&b);
                }
                for _ in 0..REFINE_ROUNDS {
                    // Narrowed endpoints can touch the operand reals, so the
                    // product interval may touch the true product; only a
                    // strict bound proves membership in the open lower set.
                    let (plo, phi) = product_interval(&ba.lo, &ba.hi, &bb.lo, &bb.hi);
                    if *x < plo {
                        return true;
                    }
                    if *x >= phi {
                        return false;
                    }
                    ba.narrow(&a);
                    bb.narrow(&b);
                }
                false
            }),
            lo,
            hi,
        }
    }
}

/// Mutable copy of a cut's bracket used inside one membership query; the cut
/// itself is never mutated.
struct LocalBracket {
    lo: RatClass,
    hi: RatClass,
}

impl LocalBracket {
    fn of(cut: &Cut) -> Self {
        Self {
            lo: cut.lo.clone(),
            hi: cut.hi.clone(),
        }
    }

    fn narrow(&mut self, cut: &Cut) {
        let half = RatClass::make(
            &crate::numbers::IntClass::from(1i64),
            &crate::numbers::IntClass::from(2i64),
        )
        .expect("two is nonzero");
        let mid = self.lo.add(&self.hi).mul(&half);
        if cut.member(&mid) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn has_definite_sign(&self) -> bool {
        (self.lo.is_positive() || self.lo.is_zero()) || (self.hi.is_negative() || self.hi.is_zero())
    }
}

/// Smallest and largest of the four endpoint products.
fn product_interval(
    alo: &RatClass,
    ahi: &RatClass,
    blo: &RatClass,
    bhi: &RatClass,
) -> (RatClass, RatClass) {
    let candidates = [alo.mul(blo), alo.mul(bhi), ahi.mul(blo), ahi.mul(bhi)];
    let mut min = candidates[0].clone();
    let mut max = candidates[0].clone();
    for c in &candidates[1..] {
        if *c < min {
            min = c.clone();
        }
        if *c > max {
            max = c.clone();
        }
    }
    (min, max)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
