//! States and the orthogonality calculus on bounded L-algebras.
//!
//! On a bounded algebra write x′ = x→0. Two elements are orthogonal,
//! x ⊥ y, when x ≤ y′, and then x ⊕ y := y′→x. A state is an exact-rational
//! valuation m with m(1)=1, additive over orthogonal pairs, and monotone.
//!
//! Subtraction inverts ⊕ by exhaustive search: x − w is the z with z ⊥ w and
//! z ⊕ w = x. The source definition presumes such z is unique; finite tables
//! can have zero or several, so both outcomes are surfaced rather than
//! resolved arbitrarily. The refinement product is
//! x ⊙ y = x − y′ when y′ ≤ x, else 0.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::algebra::FiniteLAlgebra;
use crate::error::Error;
use crate::Rat;

/// True iff x ≤ y′ (requires a bounded algebra).
pub fn orthogonal(alg: &FiniteLAlgebra, x: usize, y: usize) -> Result<bool, Error> {
    Ok(alg.leq(x, alg.complement(y)?))
}

/// The orthogonal sum x ⊕ y = y′→x; errors unless x ⊥ y.
pub fn oplus(alg: &FiniteLAlgebra, x: usize, y: usize) -> Result<usize, Error> {
    let yc = alg.complement(y)?;
    if !alg.leq(x, yc) {
        return Err(Error::NotOrthogonal { x, y });
    }
    Ok(alg.arrow(yc, x))
}

/// Outcome of inverting ⊕.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Difference {
    Unique(usize),
    /// No z satisfies x = z ⊕ w.
    None,
    /// Several candidates satisfy x = z ⊕ w.
    Ambiguous(Vec<usize>),
}

/// All z with z ⊥ w and z ⊕ w = x, classified by multiplicity.
pub fn minus(alg: &FiniteLAlgebra, x: usize, w: usize) -> Result<Difference, Error> {
    let wc = alg.complement(w)?;
    let mut candidates = Vec::new();
    for z in alg.elements() {
        if alg.leq(z, wc) && alg.arrow(wc, z) == x {
            candidates.push(z);
        }
    }
    Ok(match candidates.len() {
        0 => Difference::None,
        1 => Difference::Unique(candidates[0]),
        _ => Difference::Ambiguous(candidates),
    })
}

/// Outcome of the refinement product x ⊙ y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OdotResult {
    /// y′ ≤ x and the difference x − y′ is unique.
    Value(usize),
    /// y′ ≰ x: the product is the least element by definition.
    Zero,
    /// y′ ≤ x but no z satisfies x = z ⊕ y′.
    NoDifference,
    /// y′ ≤ x with several candidate differences.
    Ambiguous(Vec<usize>),
}

impl OdotResult {
    /// The resulting element, when the product is defined.
    pub fn element(&self, alg: &FiniteLAlgebra) -> Option<usize> {
        match self {
            OdotResult::Value(v) => Some(*v),
            OdotResult::Zero => alg.zero(),
            _ => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, OdotResult::Value(_) | OdotResult::Zero)
    }
}

/// x ⊙ y = x − y′ if y′ ≤ x, else 0.
pub fn odot(alg: &FiniteLAlgebra, x: usize, y: usize) -> Result<OdotResult, Error> {
    let yc = alg.complement(y)?;
    if !alg.leq(yc, x) {
        return Ok(OdotResult::Zero);
    }
    Ok(match minus(alg, x, yc)? {
        Difference::Unique(z) => OdotResult::Value(z),
        Difference::None => OdotResult::NoDifference,
        Difference::Ambiguous(c) => OdotResult::Ambiguous(c),
    })
}

/// A validated state: exact rational values in [0,1] satisfying the three
/// state conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    values: Vec<Rat>,
}

/// One failed state condition with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    /// m(1) != 1.
    UnitNotOne,
    /// Some value lies outside [0,1].
    OutOfRange { x: usize },
    /// x ⊥ y but m(x ⊕ y) != m(x) + m(y).
    NotAdditive { x: usize, y: usize },
    /// x ≤ y but m(x) > m(y).
    NotMonotone { x: usize, y: usize },
}

/// Why a raw valuation was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateError {
    NotBounded,
    WrongLength { expected: usize, got: usize },
    Violations(Vec<StateViolation>),
}

/// Check conditions (i)-(iii) exhaustively and promote the valuation.
pub fn validate_state(alg: &FiniteLAlgebra, values: &[Rat]) -> Result<State, StateError> {
    if alg.zero().is_none() {
        return Err(StateError::NotBounded);
    }
    if values.len() != alg.n() {
        return Err(StateError::WrongLength { expected: alg.n(), got: values.len() });
    }
    let mut violations = Vec::new();
    for x in alg.elements() {
        if values[x] < Rat::zero() || values[x] > Rat::one() {
            violations.push(StateViolation::OutOfRange { x });
        }
    }
    if values[alg.unit()] != Rat::one() {
        violations.push(StateViolation::UnitNotOne);
    }
    for x in alg.elements() {
        for y in alg.elements() {
            if orthogonal(alg, x, y).unwrap_or(false) {
                let s = oplus(alg, x, y).expect("orthogonal pair");
                if values[s] != values[x] + values[y] {
                    violations.push(StateViolation::NotAdditive { x, y });
                }
            }
            if alg.leq(x, y) && values[x] > values[y] {
                violations.push(StateViolation::NotMonotone { x, y });
            }
        }
    }
    if violations.is_empty() {
        Ok(State { values: values.to_vec() })
    } else {
        Err(StateError::Violations(violations))
    }
}

impl State {
    #[inline]
    pub fn get(&self, x: usize) -> Rat {
        self.values[x]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// True iff m(x) = 0 only at the least element.
pub fn is_faithful(alg: &FiniteLAlgebra, m: &State) -> bool {
    alg.elements().all(|x| !m.get(x).is_zero() || Some(x) == alg.zero())
}
