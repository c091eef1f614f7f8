//! Dynamical systems on bounded L-algebras and their entropy.
//!
//! A system is a triple (L, T, m): T preserves the arrow and the unit, and
//! m is T-invariant. Entropy of T relative to a partition is estimated at a
//! finite truncation N through two routes: the Cesàro quotient
//! H(⋁₀^{N−1}Tⁱξ)/N and the conditional form H(ξ | ⋁₁^N Tⁱξ). No limit is
//! ever claimed: the estimate ships with a subadditivity certificate (which
//! is what guarantees the limit exists) and convergence flags.
//!
//! Iterated joins deduplicate equal partitions before folding (the join of a
//! partition with itself is itself, as in any join-semilattice; the literal
//! product grid degenerates on repeated fuzzy blocks) and prune measure-zero
//! blocks after each step. Pruned terms are all φ(0), so no entropy value
//! changes; when a pruned sequence no longer folds, the unpruned join is
//! kept instead.

use alloc::vec::Vec;

use crate::algebra::FiniteLAlgebra;
use crate::entropy::{conditional_entropy, entropy, LogBase};
use crate::error::Error;
use crate::partition::{
    common_refinement, enumerate_partitions, interior_subset, refines,
    validate_partition, JoinError, Partition, PartitionError,
};
use crate::report::{CheckItem, CheckKind, CheckReport, Hypothesis};
use crate::state::{oplus, orthogonal, State};

/// A validated dynamical system.
#[derive(Debug, Clone, PartialEq)]
pub struct LSystem {
    algebra: FiniteLAlgebra,
    map: Vec<usize>,
    state: State,
}

/// One failed system condition with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemViolation {
    /// T(a→b) != T(a)→T(b).
    ArrowNotPreserved { a: usize, b: usize },
    /// T(1) != 1.
    UnitNotFixed,
    /// m(T(a)) != m(a).
    MeasureNotPreserved { a: usize },
}

impl LSystem {
    /// Check all three conditions exhaustively and assemble the system.
    pub fn validate(
        algebra: FiniteLAlgebra,
        map: Vec<usize>,
        state: State,
    ) -> Result<LSystem, Vec<SystemViolation>> {
        let mut violations = Vec::new();
        assert_eq!(map.len(), algebra.n(), "map must be total on the carrier");
        assert_eq!(state.n(), algebra.n(), "state must cover the carrier");
        if map[algebra.unit()] != algebra.unit() {
            violations.push(SystemViolation::UnitNotFixed);
        }
        for a in algebra.elements() {
            for b in algebra.elements() {
                if map[algebra.arrow(a, b)] != algebra.arrow(map[a], map[b]) {
                    violations.push(SystemViolation::ArrowNotPreserved { a, b });
                }
            }
        }
        for a in algebra.elements() {
            if state.get(map[a]) != state.get(a) {
                violations.push(SystemViolation::MeasureNotPreserved { a });
            }
        }
        if violations.is_empty() {
            Ok(LSystem { algebra, map, state })
        } else {
            Err(violations)
        }
    }

    pub fn algebra(&self) -> &FiniteLAlgebra {
        &self.algebra
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    /// T applied n times to one element.
    pub fn iterate(&self, x: usize, n: usize) -> usize {
        (0..n).fold(x, |acc, _| self.map[acc])
    }

    pub fn is_invertible(&self) -> bool {
        let mut seen = alloc::vec![false; self.algebra.n()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// The system driven by T^k. Valid by construction: all three
    /// conditions are preserved under composition.
    pub fn power(&self, k: usize) -> LSystem {
        let map = self.algebra.elements().map(|x| self.iterate(x, k)).collect();
        LSystem { algebra: self.algebra.clone(), map, state: self.state.clone() }
    }

    /// The inverse system, for invertible T only.
    pub fn inverse(&self) -> Result<LSystem, Error> {
        if !self.is_invertible() {
            return Err(Error::NotAnOperator);
        }
        let mut map = alloc::vec![0usize; self.algebra.n()];
        for (x, &v) in self.map.iter().enumerate() {
            map[v] = x;
        }
        Ok(LSystem { algebra: self.algebra.clone(), map, state: self.state.clone() })
    }
}

/// Why an image partition could not be re-validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePartitionError {
    pub iterate: usize,
    pub error: PartitionError,
}

/// Tⁿ(ξ): block-wise application of T, re-validated as a partition. The
/// underlying closure claim is verified here, not assumed.
pub fn image_partition(
    sys: &LSystem,
    xi: &Partition,
    n: usize,
) -> Result<Partition, ImagePartitionError> {
    let blocks: Vec<usize> = xi.blocks().iter().map(|&b| sys.iterate(b, n)).collect();
    validate_partition(sys.algebra(), sys.state(), &blocks)
        .map_err(|error| ImagePartitionError { iterate: n, error })
}

/// Join T^i ξ over `iterates`, deduplicating equal partitions. With `prune`,
/// measure-zero blocks are dropped after each step (entropy values are
/// unaffected: every dropped term is φ(0)); without it the literal block
/// grid is kept, which element-level refinement tests need.
fn join_iterates(
    sys: &LSystem,
    xi: &Partition,
    iterates: impl Iterator<Item = usize>,
    prune: bool,
) -> Result<Partition, JoinError> {
    let alg = sys.algebra();
    let m = sys.state();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut images: Vec<Partition> = Vec::new();
    for i in iterates {
        let img = image_partition(sys, xi, i)
            .map_err(|e| JoinError::Invalid(e.error))?;
        if !seen.contains(&img.blocks().to_vec()) {
            seen.push(img.blocks().to_vec());
            images.push(img);
        }
    }
    let mut acc = images.first().cloned().expect("nonempty iterate range");
    for next in images.iter().skip(1) {
        if acc.blocks() == next.blocks() {
            continue;
        }
        let joined = common_refinement(alg, m, &acc, next)?;
        acc = if prune { joined.pruned(alg, m).unwrap_or(joined) } else { joined };
    }
    Ok(if prune { acc.pruned(alg, m).unwrap_or(acc) } else { acc })
}

/// ⋁_{i=0}^{n−1} Tⁱξ.
pub fn iterated_join(sys: &LSystem, xi: &Partition, n: usize) -> Result<Partition, JoinError> {
    assert!(n >= 1, "join needs at least one iterate");
    join_iterates(sys, xi, 0..n, true)
}

/// Finite-truncation entropy-rate estimate with certificates. Limits are
/// replaced by the value at the horizon plus the subadditivity and
/// monotonicity evidence that justifies taking one.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyRateEstimate {
    /// a_n = H(⋁₀^{n−1}Tⁱξ) for n = 1..=N.
    pub joins: Vec<f64>,
    /// c_n = H(ξ | ⋁₁ⁿTⁱξ) for n = 1..=N.
    pub conditional: Vec<f64>,
    /// a_N / N.
    pub cesaro_rate: f64,
    /// c_N; the headline h(T,ξ) estimate.
    pub conditional_rate: f64,
    pub cesaro_converged: bool,
    pub conditional_converged: bool,
    /// max over n+p <= N of a_{n+p} − a_n − a_p (≤ 0 up to float noise when
    /// the subadditivity certificate holds).
    pub subadditive_excess: f64,
    /// max over n of c_{n+1} − c_n (≤ 0 up to float noise when the
    /// conditional sequence is non-increasing).
    pub conditional_increase: f64,
}

impl EntropyRateEstimate {
    /// The headline estimate of h(T, ξ).
    pub fn rate(&self) -> f64 {
        self.conditional_rate
    }

    pub fn subadditivity_certified(&self, tol: f64) -> bool {
        self.subadditive_excess <= tol
    }

    /// Both estimators converged and agree.
    pub fn estimators_agree(&self, tol: f64) -> bool {
        !(self.cesaro_converged && self.conditional_converged)
            || (self.cesaro_rate - self.conditional_rate).abs() <= tol
    }
}

/// Estimate h(T, ξ) at truncation `n_max` via both routes.
pub fn entropy_rate(
    sys: &LSystem,
    xi: &Partition,
    n_max: usize,
    tol: f64,
    base: LogBase,
) -> Result<EntropyRateEstimate, JoinError> {
    assert!(n_max >= 1);
    let alg = sys.algebra();
    let m = sys.state();
    let mut joins = Vec::with_capacity(n_max);
    let mut conditional = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let join = join_iterates(sys, xi, 0..n, true)?;
        joins.push(entropy(m, &join, base).value);
        let tail = join_iterates(sys, xi, 1..=n, true)?;
        conditional.push(conditional_entropy(alg, m, xi, &tail, base)?.value);
    }
    let cesaro_rate = joins[n_max - 1] / n_max as f64;
    let conditional_rate = conditional[n_max - 1];
    let cesaro_converged = n_max >= 2 && {
        let prev = joins[n_max - 2] / (n_max - 1) as f64;
        (cesaro_rate - prev).abs() <= tol
    };
    let conditional_converged =
        n_max >= 2 && (conditional[n_max - 1] - conditional[n_max - 2]).abs() <= tol;
    let mut subadditive_excess = f64::NEG_INFINITY;
    for n in 1..n_max {
        for p in 1..=(n_max - n) {
            let excess = joins[n + p - 1] - joins[n - 1] - joins[p - 1];
            if excess > subadditive_excess {
                subadditive_excess = excess;
            }
        }
    }
    if !subadditive_excess.is_finite() {
        subadditive_excess = 0.0;
    }
    let conditional_increase = conditional
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0_f64, f64::max);
    Ok(EntropyRateEstimate {
        joins,
        conditional,
        cesaro_rate,
        conditional_rate,
        cesaro_converged,
        conditional_converged,
        subadditive_excess,
        conditional_increase,
    })
}

/// Result of maximizing the rate estimate over enumerated partitions.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemEntropySweep {
    pub value: f64,
    pub argmax: Option<Partition>,
    /// Distinct measure-multisets actually estimated.
    pub searched: usize,
    /// Partitions whose join sequence failed to validate.
    pub skipped: usize,
    pub max_blocks: usize,
    pub horizon: usize,
}

/// Hard bound on the block-sequence space for the sweep.
const SWEEP_LIMIT: usize = 200_000;

/// h(T) at finite truncation: the maximum rate estimate over all valid
/// partitions with at most `max_blocks` blocks, deduplicated by measure
/// multiset. The cap and horizon are part of the result.
pub fn system_entropy(
    sys: &LSystem,
    max_blocks: usize,
    n_max: usize,
    tol: f64,
    base: LogBase,
) -> Result<SystemEntropySweep, Error> {
    let n = sys.algebra().n();
    let space: usize = (1..=max_blocks).map(|k| n.saturating_pow(k as u32)).sum();
    if space > SWEEP_LIMIT {
        return Err(Error::Capacity { cap: SWEEP_LIMIT, requested: space });
    }
    let mut seen_measures: Vec<Vec<crate::Rat>> = Vec::new();
    let mut best: Option<(f64, Partition)> = None;
    let mut searched = 0usize;
    let mut skipped = 0usize;
    for xi in enumerate_partitions(sys.algebra(), sys.state(), max_blocks) {
        let mut measures: Vec<crate::Rat> =
            xi.blocks().iter().map(|&b| sys.state().get(b)).collect();
        measures.sort();
        if seen_measures.contains(&measures) {
            continue;
        }
        seen_measures.push(measures);
        match entropy_rate(sys, &xi, n_max, tol, base) {
            Ok(est) => {
                searched += 1;
                let rate = est.rate();
                if best.as_ref().is_none_or(|(b, _)| rate > *b) {
                    best = Some((rate, xi));
                }
            }
            Err(_) => skipped += 1,
        }
    }
    let (value, argmax) = match best {
        Some((v, p)) => (v, Some(p)),
        None => (0.0, None),
    };
    Ok(SystemEntropySweep { value, argmax, searched, skipped, max_blocks, horizon: n_max })
}

/// The rate-property sheet for one system and partition pair.
pub fn check_rate_properties(
    sys: &LSystem,
    xi: &Partition,
    eta: &Partition,
    n_max: usize,
    tol: f64,
    base: LogBase,
) -> CheckReport {
    let alg = sys.algebra();
    let m = sys.state();
    let mut report = CheckReport::default();
    let rate_xi = entropy_rate(sys, xi, n_max, tol, base).ok();
    let rate_eta = entropy_rate(sys, eta, n_max, tol, base).ok();

    // (i) h(T, xi) <= H(xi)
    report.push(CheckItem::evaluate(
        "rate-at-most-entropy",
        alloc::vec![Hypothesis::new("estimate-defined", rate_xi.is_some())],
        CheckKind::AtMost,
        rate_xi.as_ref().map_or(f64::NAN, |r| r.rate()),
        entropy(m, xi, base).value,
        tol,
    ));

    // (ii) h(T, xi v eta) <= h(T, xi) + h(T, eta)
    let join = common_refinement(alg, m, xi, eta);
    let rate_join = join
        .as_ref()
        .ok()
        .and_then(|j| entropy_rate(sys, j, n_max, tol, base).ok());
    report.push(CheckItem::evaluate(
        "rate-subadditive-over-join",
        alloc::vec![Hypothesis::new(
            "join-and-estimates-defined",
            rate_join.is_some() && rate_xi.is_some() && rate_eta.is_some()
        )],
        CheckKind::AtMost,
        rate_join.as_ref().map_or(f64::NAN, |r| r.rate()),
        rate_xi.as_ref().map_or(f64::NAN, |r| r.rate())
            + rate_eta.as_ref().map_or(f64::NAN, |r| r.rate()),
        tol,
    ));

    // (iii) interior subset is monotone for the rate
    let interior = interior_subset(alg, m, xi, eta).unwrap_or(false);
    report.push(CheckItem::evaluate(
        "rate-monotone-under-interior",
        alloc::vec![
            Hypothesis::new("xi-interior-subset-eta", interior),
            Hypothesis::new("estimates-defined", rate_xi.is_some() && rate_eta.is_some()),
        ],
        CheckKind::AtMost,
        rate_xi.as_ref().map_or(f64::NAN, |r| r.rate()),
        rate_eta.as_ref().map_or(f64::NAN, |r| r.rate()),
        tol,
    ));

    // (iv) h(T, xi) <= h(T, eta) + H(xi|eta), under self-distributivity
    let self_distributive =
        crate::partition::odot_laws(alg).is_ok_and(|l| l.self_distributive());
    let cond = conditional_entropy(alg, m, xi, eta, base).ok();
    report.push(CheckItem::evaluate(
        "rate-conditional-bound",
        alloc::vec![
            Hypothesis::new("odot-self-distributive", self_distributive),
            Hypothesis::new(
                "estimates-defined",
                rate_xi.is_some() && rate_eta.is_some() && cond.is_some()
            ),
        ],
        CheckKind::AtMost,
        rate_xi.as_ref().map_or(f64::NAN, |r| r.rate()),
        rate_eta.as_ref().map_or(f64::NAN, |r| r.rate())
            + cond.as_ref().map_or(f64::NAN, |c| c.value),
        tol,
    ));

    // (v) h(T, T(xi)) = h(T, xi); the argument runs through T⁻¹
    let image = image_partition(sys, xi, 1).ok();
    let rate_image = image
        .as_ref()
        .and_then(|p| entropy_rate(sys, p, n_max, tol, base).ok());
    report.push(CheckItem::evaluate(
        "rate-image-invariant",
        alloc::vec![
            Hypothesis::new("map-invertible", sys.is_invertible()),
            Hypothesis::new("estimates-defined", rate_image.is_some() && rate_xi.is_some()),
        ],
        CheckKind::Equal,
        rate_image.as_ref().map_or(f64::NAN, |r| r.rate()),
        rate_xi.as_ref().map_or(f64::NAN, |r| r.rate()),
        tol,
    ));

    // (vi) h(T, join of the first iterates) = h(T, xi)
    let front = iterated_join(sys, xi, 2.min(n_max)).ok();
    let rate_front = front
        .as_ref()
        .and_then(|p| entropy_rate(sys, p, n_max, tol, base).ok());
    report.push(CheckItem::evaluate(
        "rate-join-invariant",
        alloc::vec![Hypothesis::new(
            "join-and-estimates-defined",
            rate_front.is_some() && rate_xi.is_some()
        )],
        CheckKind::Equal,
        rate_front.as_ref().map_or(f64::NAN, |r| r.rate()),
        rate_xi.as_ref().map_or(f64::NAN, |r| r.rate()),
        tol,
    ));

    report
}

/// |h_N(T^k) − |k|·h_N(T)| at matched truncation and caps.
pub fn check_power_rule(
    sys: &LSystem,
    k: i64,
    max_blocks: usize,
    n_max: usize,
    tol: f64,
    base: LogBase,
) -> Result<CheckItem, Error> {
    let magnitude = k.unsigned_abs() as usize;
    let powered = if k >= 0 {
        sys.power(magnitude)
    } else {
        sys.inverse()?.power(magnitude)
    };
    let base_sweep = system_entropy(sys, max_blocks, n_max, tol, base)?;
    let pow_sweep = system_entropy(&powered, max_blocks, n_max, tol, base)?;
    Ok(CheckItem::evaluate(
        "power-rule",
        alloc::vec![Hypothesis::new("sweeps-complete", true)],
        CheckKind::Equal,
        pow_sweep.value,
        magnitude as f64 * base_sweep.value,
        tol,
    ))
}

/// Outcome of the generator test at a fixed iterate count.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorReport {
    pub join: Partition,
    /// Partitions (block sequences) that fail to be refined by the join.
    pub failures: Vec<Vec<usize>>,
    pub tested: usize,
}

impl GeneratorReport {
    pub fn is_generator(&self) -> bool {
        self.failures.is_empty()
    }
}

/// ξ generates at horizon n when ⋁₁ⁿTⁱξ refines every valid partition
/// within the block cap.
pub fn is_generator(
    sys: &LSystem,
    xi: &Partition,
    n: usize,
    max_blocks: usize,
) -> Result<GeneratorReport, JoinError> {
    assert!(n >= 1);
    // the literal (unpruned) join: refinement is an element-level relation,
    // and pruned zero blocks may be exactly what a target partition needs
    let join = join_iterates(sys, xi, 1..=n, false)?;
    let mut failures = Vec::new();
    let mut tested = 0;
    for eta in enumerate_partitions(sys.algebra(), sys.state(), max_blocks) {
        tested += 1;
        if !refines(sys.algebra(), &join, &eta) {
            failures.push(eta.blocks().to_vec());
        }
    }
    Ok(GeneratorReport { join, failures, tested })
}

/// h(T) = h(T, ξ) when ξ generates, at matched truncation.
pub fn check_generator_theorem(
    sys: &LSystem,
    xi: &Partition,
    n: usize,
    max_blocks: usize,
    n_max: usize,
    tol: f64,
    base: LogBase,
) -> Result<CheckItem, Error> {
    let generator = is_generator(sys, xi, n, max_blocks)
        .map(|r| r.is_generator())
        .unwrap_or(false);
    let sweep = system_entropy(sys, max_blocks, n_max, tol, base)?;
    let rate = entropy_rate(sys, xi, n_max, tol, base).ok();
    Ok(CheckItem::evaluate(
        "generator-theorem",
        alloc::vec![
            Hypothesis::new("xi-is-generator", generator),
            Hypothesis::new("estimate-defined", rate.is_some()),
        ],
        CheckKind::Equal,
        sweep.value,
        rate.map_or(f64::NAN, |r| r.rate()),
        tol,
    ))
}

/// The three isomorphism conditions plus the derived facts, each verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub arrow_preserved: Option<(usize, usize)>,
    pub equivariant: Option<usize>,
    pub measure_preserved: Option<usize>,
    /// Derived facts checked when the three conditions hold: unit and zero
    /// images, order preservation, and compatibility with ⊕ and ⊙.
    pub derived_failures: Vec<&'static str>,
    pub bijective: bool,
}

impl IsoReport {
    pub fn holds(&self) -> bool {
        self.arrow_preserved.is_none()
            && self.equivariant.is_none()
            && self.measure_preserved.is_none()
    }
}

/// Verify that `phi` carries one system to another.
pub fn are_isomorphic(
    sys1: &LSystem,
    sys2: &LSystem,
    phi: &[usize],
) -> Result<IsoReport, Error> {
    let (a1, a2) = (sys1.algebra(), sys2.algebra());
    if phi.len() != a1.n() || phi.iter().any(|&v| v >= a2.n()) {
        return Err(Error::MismatchedAlgebra { expected: a1.n(), got: phi.len() });
    }
    let mut arrow_preserved = None;
    'arrows: for a in a1.elements() {
        for b in a1.elements() {
            if phi[a1.arrow(a, b)] != a2.arrow(phi[a], phi[b]) {
                arrow_preserved = Some((a, b));
                break 'arrows;
            }
        }
    }
    let equivariant =
        a1.elements().find(|&a| phi[sys1.map()[a]] != sys2.map()[phi[a]]);
    let measure_preserved =
        a1.elements().find(|&a| sys2.state().get(phi[a]) != sys1.state().get(a));

    let mut derived_failures = Vec::new();
    if arrow_preserved.is_none() && equivariant.is_none() && measure_preserved.is_none() {
        if phi[a1.unit()] != a2.unit() {
            derived_failures.push("unit-image");
        }
        if let (Some(z1), Some(z2)) = (a1.zero(), a2.zero()) {
            if phi[z1] != z2 {
                derived_failures.push("zero-image");
            }
        }
        let order_ok = a1.elements().all(|a| {
            a1.elements().all(|b| !a1.leq(a, b) || a2.leq(phi[a], phi[b]))
        });
        if !order_ok {
            derived_failures.push("order-preservation");
        }
        // phi(a ⊕ b) = phi(a) ⊕ phi(b) on orthogonal pairs
        let mut oplus_ok = true;
        let mut odot_ok = true;
        for a in a1.elements() {
            for b in a1.elements() {
                if orthogonal(a1, a, b).unwrap_or(false) {
                    let lhs = phi[oplus(a1, a, b).expect("orthogonal")];
                    match orthogonal(a2, phi[a], phi[b]) {
                        Ok(true) => {
                            if lhs != oplus(a2, phi[a], phi[b]).expect("orthogonal") {
                                oplus_ok = false;
                            }
                        }
                        _ => oplus_ok = false,
                    }
                }
                let p1 = crate::state::odot(a1, a, b).ok().and_then(|r| r.element(a1));
                let p2 = crate::state::odot(a2, phi[a], phi[b])
                    .ok()
                    .and_then(|r| r.element(a2));
                if let (Some(v1), Some(v2)) = (p1, p2) {
                    if phi[v1] != v2 {
                        odot_ok = false;
                    }
                }
            }
        }
        if !oplus_ok {
            derived_failures.push("oplus-compatibility");
        }
        if !odot_ok {
            derived_failures.push("odot-compatibility");
        }
    }
    let mut seen = alloc::vec![false; a2.n()];
    for &v in phi {
        seen[v] = true;
    }
    let bijective = a1.n() == a2.n() && seen.into_iter().all(|s| s);
    Ok(IsoReport { arrow_preserved, equivariant, measure_preserved, derived_failures, bijective })
}

/// Matched-truncation entropy agreement across an isomorphism.
pub fn check_isomorphism_invariance(
    sys1: &LSystem,
    sys2: &LSystem,
    phi: &[usize],
    max_blocks: usize,
    n_max: usize,
    tol: f64,
    base: LogBase,
) -> Result<CheckReport, Error> {
    let iso = are_isomorphic(sys1, sys2, phi)?;
    let mut report = CheckReport::default();
    let sweep1 = system_entropy(sys1, max_blocks, n_max, tol, base)?;
    let sweep2 = system_entropy(sys2, max_blocks, n_max, tol, base)?;
    report.push(CheckItem::evaluate(
        "system-entropy-invariant",
        alloc::vec![Hypothesis::new("isomorphic", iso.holds())],
        CheckKind::Equal,
        sweep1.value,
        sweep2.value,
        tol,
    ));

    // per-partition: h(T2, phi(xi)) = h(T1, xi)
    let mut worst: f64 = 0.0;
    let mut compared = 0usize;
    if iso.holds() {
        for xi in enumerate_partitions(sys1.algebra(), sys1.state(), max_blocks) {
            let image: Vec<usize> = xi.blocks().iter().map(|&b| phi[b]).collect();
            let Ok(image) = validate_partition(sys2.algebra(), sys2.state(), &image) else {
                continue;
            };
            let (Ok(r1), Ok(r2)) = (
                entropy_rate(sys1, &xi, n_max, tol, base),
                entropy_rate(sys2, &image, n_max, tol, base),
            ) else {
                continue;
            };
            worst = worst.max((r1.rate() - r2.rate()).abs());
            compared += 1;
        }
    }
    report.push(CheckItem::evaluate(
        "per-partition-rate-invariant",
        alloc::vec![
            Hypothesis::new("isomorphic", iso.holds()),
            Hypothesis::new("some-partition-compared", compared > 0),
        ],
        CheckKind::Equal,
        worst,
        0.0,
        tol,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::Rat;

    const TOL: f64 = 1e-9;
    const DTOL: f64 = 1e-6;

    fn chain_identity() -> LSystem {
        let alg = lukasiewicz_chain(2);
        let m = lukasiewicz_state(2);
        let id: Vec<usize> = alg.elements().collect();
        LSystem::validate(alg, id, m).unwrap()
    }

    fn table_two_swap_system() -> LSystem {
        let alg = table_two().algebra;
        let m = table_two_state();
        LSystem::validate(alg, table_two_swap_map(), m).unwrap()
    }

    #[test]
    fn identity_system_validates_and_constant_map_does_not() {
        let sys = chain_identity();
        assert!(sys.is_invertible());
        // constant-unit map breaks measure preservation at 0
        let alg = lukasiewicz_chain(2);
        let m = lukasiewicz_state(2);
        let errs = LSystem::validate(alg, alloc::vec![2, 2, 2], m).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, SystemViolation::MeasureNotPreserved { a: 0 })));
    }

    #[test]
    fn swap_map_system_validates() {
        let sys = table_two_swap_system();
        assert!(sys.is_invertible());
        assert_eq!(sys.power(2).map(), chain_like_identity(sys.algebra().n()).as_slice());
    }

    fn chain_like_identity(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn image_partitions_preserve_entropy_exactly() {
        let sys = table_two_swap_system();
        for xi in enumerate_partitions(sys.algebra(), sys.state(), 3) {
            for n in 0..3 {
                let img = image_partition(&sys, &xi, n).unwrap();
                let h0 = entropy(sys.state(), &xi, LogBase::Two).value;
                let h1 = entropy(sys.state(), &img, LogBase::Two).value;
                assert_eq!(h0, h1);
            }
        }
    }

    #[test]
    fn identity_join_is_stable() {
        let sys = chain_identity();
        let m = sys.state().clone();
        let hh = validate_partition(sys.algebra(), &m, &[1, 1]).unwrap();
        for n in 1..=4 {
            let j = iterated_join(&sys, &hh, n).unwrap();
            assert_eq!(j.blocks(), hh.blocks());
        }
    }

    #[test]
    fn identity_rate_is_zero_with_constant_joins() {
        let sys = chain_identity();
        let hh = validate_partition(sys.algebra(), sys.state(), &[1, 1]).unwrap();
        let est = entropy_rate(&sys, &hh, 8, DTOL, LogBase::Two).unwrap();
        // a_n = H(xi) = 1 bit for every n
        for a in &est.joins {
            assert!((a - 1.0).abs() < 1e-12);
        }
        assert!(est.rate().abs() <= TOL);
        assert!(est.conditional_converged);
        assert!(!est.cesaro_converged); // 1/8 vs 1/7 differ well above tol
        assert!((est.cesaro_rate - 0.125).abs() < 1e-12);
        assert!(est.subadditivity_certified(TOL));
        assert!(est.conditional_increase <= TOL);
        assert!(est.estimators_agree(DTOL)); // vacuous: cesaro not converged
    }

    #[test]
    fn unit_partition_rate_is_zero() {
        let sys = chain_identity();
        let unit = Partition::unit(sys.algebra());
        let est = entropy_rate(&sys, &unit, 8, DTOL, LogBase::Two).unwrap();
        assert_eq!(est.rate(), 0.0);
        assert!(est.cesaro_converged && est.conditional_converged);
        assert!(est.estimators_agree(DTOL));
    }

    #[test]
    fn system_entropy_of_identity_is_zero() {
        let sys = chain_identity();
        let sweep = system_entropy(&sys, 3, 6, DTOL, LogBase::Two).unwrap();
        assert!(sweep.value.abs() <= TOL);
        assert_eq!(sweep.skipped, 0);
        assert!(sweep.searched > 0);
    }

    #[test]
    fn power_rule_trivial_cases() {
        let sys = table_two_swap_system();
        for k in [1i64, 2] {
            let item = check_power_rule(&sys, k, 3, 4, DTOL, LogBase::Two).unwrap();
            assert_eq!(item.verdict, crate::Verdict::Holds, "{item:?}");
        }
        // negative powers need invertibility; the swap is invertible
        let item = check_power_rule(&sys, -1, 3, 4, DTOL, LogBase::Two).unwrap();
        assert_eq!(item.verdict, crate::Verdict::Holds);
    }

    #[test]
    fn non_invertible_negative_power_is_a_contract_error() {
        let alg = table_four_lenient().algebra;
        let m = table_four_state();
        // a,b -> 1 collapses; still a valid system
        let sys = LSystem::validate(alg, alloc::vec![0, 3, 3, 3], m).unwrap();
        assert!(!sys.is_invertible());
        assert!(check_power_rule(&sys, -1, 3, 4, DTOL, LogBase::Two).is_err());
    }

    #[test]
    fn rate_properties_identity_reduce_to_trivialities() {
        let sys = chain_identity();
        let m = sys.state().clone();
        let hh = validate_partition(sys.algebra(), &m, &[1, 1]).unwrap();
        let zo = validate_partition(sys.algebra(), &m, &[0, 2]).unwrap();
        let report = check_rate_properties(&sys, &hh, &zo, 6, DTOL, LogBase::Two);
        assert!(report.no_failures(), "{report:?}");
    }

    #[test]
    fn generator_on_singleton_system() {
        let alg = lukasiewicz_chain(1);
        let m = lukasiewicz_state(1);
        let id: Vec<usize> = alg.elements().collect();
        let sys = LSystem::validate(alg, id, m).unwrap();
        let unit = Partition::unit(sys.algebra());
        let report = is_generator(&sys, &unit, 1, 2).unwrap();
        // (0,1) cannot be reconstructed from the unit join, so not a generator
        assert!(!report.is_generator());
        let zo = validate_partition(sys.algebra(), sys.state(), &[0, 1]).unwrap();
        let report = is_generator(&sys, &zo, 1, 2).unwrap();
        assert!(report.is_generator(), "{report:?}");
        let item =
            check_generator_theorem(&sys, &zo, 1, 2, 4, DTOL, LogBase::Two).unwrap();
        assert_ne!(item.verdict, crate::Verdict::Fails);
    }

    #[test]
    fn singleton_algebra_admits_no_state() {
        // on the one-element algebra the unit is also the least element, so
        // 1 ⊥ 1 with 1 ⊕ 1 = 1 and additivity forces m(1) = 0, contradicting
        // m(1) = 1: there is no dynamical system on the singleton, and the
        // smallest carrier with systems is the two-element chain
        let table = crate::algebra::Table::from_rows(&[&[0]]).unwrap();
        let alg = crate::algebra::FiniteLAlgebra::new(table, 0).unwrap();
        let err = crate::state::validate_state(&alg, &[crate::Rat::new(1, 1)]).unwrap_err();
        assert!(matches!(
            err,
            crate::state::StateError::Violations(ref v)
                if v == &alloc::vec![crate::state::StateViolation::NotAdditive { x: 0, y: 0 }]
        ));
    }

    #[test]
    fn isomorphism_on_the_swap_pair() {
        let sys1 = table_two_swap_system();
        let sys2 = table_two_swap_system();
        let phi = table_two_swap_map();
        let iso = are_isomorphic(&sys1, &sys2, &phi).unwrap();
        assert!(iso.holds(), "{iso:?}");
        assert!(iso.derived_failures.is_empty(), "{iso:?}");
        assert!(iso.bijective);
        let report =
            check_isomorphism_invariance(&sys1, &sys2, &phi, 3, 4, DTOL, LogBase::Two)
                .unwrap();
        assert!(report.no_failures(), "{report:?}");
    }

    #[test]
    fn non_isomorphism_is_detected_by_measure_condition() {
        // same pair but a state with m(a) != m(b) would break condition iii;
        // on table_two the state is forced, so force the failure with a
        // non-equivariant map instead
        let sys1 = table_two_swap_system();
        let sys2 = table_two_swap_system();
        let id: Vec<usize> = sys1.algebra().elements().collect();
        let iso = are_isomorphic(&sys1, &sys2, &id).unwrap();
        // identity is not equivariant with the swap on both sides? it is:
        // id∘T = T∘id, so this one holds; break it with a constant-ish map
        assert!(iso.holds());
        let phi = alloc::vec![0, 1, 2, 2, 4];
        let iso = are_isomorphic(&sys1, &sys2, &phi).unwrap();
        assert!(!iso.holds());
    }

    #[test]
    fn rate_invariance_under_measure_exactness() {
        // H(T^n xi) = H(xi) exactly on every fixture system
        let sys = table_two_swap_system();
        let m = sys.state().clone();
        for xi in enumerate_partitions(sys.algebra(), &m, 3) {
            for n in 0..4 {
                let img = image_partition(&sys, &xi, n).unwrap();
                assert_eq!(
                    entropy(&m, &xi, LogBase::Two).value,
                    entropy(&m, &img, LogBase::Two).value
                );
            }
        }
    }

    #[test]
    fn table_four_systems_all_have_zero_rate() {
        let alg = table_four_lenient().algebra;
        let m = table_four_state();
        // all five valid endomaps, frozen from the oracle sweep
        let maps = [
            alloc::vec![0usize, 1, 1, 3],
            alloc::vec![0, 1, 2, 3],
            alloc::vec![0, 2, 1, 3],
            alloc::vec![0, 2, 2, 3],
            alloc::vec![0, 3, 3, 3],
        ];
        for map in maps {
            let sys = LSystem::validate(alg.clone(), map, m.clone()).unwrap();
            for xi in enumerate_partitions(sys.algebra(), sys.state(), 3) {
                let est = entropy_rate(&sys, &xi, 6, DTOL, LogBase::Two).unwrap();
                assert!(est.rate().abs() <= TOL);
                assert!(est.subadditivity_certified(TOL));
            }
        }
    }

    #[test]
    fn state_is_forced_on_table_two() {
        // the unique state maps 0 to 0 and everything else to 1, so the
        // swap system is measure-preserving by construction
        let m = table_two_state();
        assert_eq!(m.get(0), Rat::new(0, 1));
        for x in 1..5 {
            assert_eq!(m.get(x), Rat::new(1, 1));
        }
    }
}
