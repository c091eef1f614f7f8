//! Entropy of partitions, conditional entropy, and the information-gain
//! calculus.
//!
//! H(ξ) = −Σᵢ φ(m(xᵢ)) with φ(p) = p·log p, φ(0) = 0. The conditional form
//! H(ξ|η) = −Σᵢⱼ m(xᵢ⊙yⱼ)·log(m(xᵢ⊙yⱼ)/m(yⱼ)) omits columns with
//! m(yⱼ) = 0 and terms with zero numerator. Probabilities stay exact
//! rationals until the final logarithm; equality-type claims (H(ξ|η) = 0,
//! interior subsets) are decided on the exact terms, while float identities
//! carry an explicit tolerance.
//!
//! Every identity checker gates on the hypotheses its derivation actually
//! consumes. The central gate is the summation identity
//! Σᵢ m(xᵢ⊙yⱼ) = m(yⱼ) (see [`crate::partition::decomposition_holds`]):
//! the literal Bayes condition is too weak to support the chain rule, and
//! claims are never asserted past what the gates license.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::algebra::FiniteLAlgebra;
use crate::error::GridError;
use crate::partition::{
    common_refinement, decomposition_holds, interior_subset, odot_grid, odot_laws, refines,
    independent, JoinError, Partition,
};
use crate::report::{CheckItem, CheckKind, CheckReport, Hypothesis};
use crate::state::State;
use crate::Rat;

/// Logarithm base for entropy values. Identities are base-invariant; the
/// default throughout is bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Two,
    Natural,
}

impl LogBase {
    #[inline]
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => libm::log2(x),
            LogBase::Natural => libm::log(x),
        }
    }
}

#[inline]
fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// φ(p) = p·log p with φ(0) = 0, on exact input.
pub fn xlogx(p: Rat, base: LogBase) -> f64 {
    if p.is_zero() {
        0.0
    } else {
        let v = to_f64(p);
        v * base.log(v)
    }
}

/// One term of an entropy sum: contributes −p·log(p/q) where q defaults
/// to 1 for plain entropy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyTerm {
    pub p: Rat,
    pub given: Option<Rat>,
}

impl EntropyTerm {
    fn contribution(&self, base: LogBase) -> f64 {
        if self.p.is_zero() {
            return 0.0;
        }
        match self.given {
            None => -xlogx(self.p, base),
            Some(q) => {
                let ratio = to_f64(self.p) / to_f64(q);
                -to_f64(self.p) * base.log(ratio)
            }
        }
    }

    /// Exactly-zero contribution, decided on the rationals.
    fn is_zero_exact(&self) -> bool {
        match self.given {
            None => self.p.is_zero() || self.p == Rat::new(1, 1),
            Some(q) => self.p.is_zero() || self.p == q,
        }
    }
}

/// An entropy value together with the exact terms it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub base: LogBase,
    pub terms: Vec<EntropyTerm>,
}

impl EntropyValue {
    /// Re-sum the stored terms; must agree with `value` within 1e-12.
    pub fn recompute(&self) -> f64 {
        self.terms.iter().map(|t| t.contribution(self.base)).sum()
    }

    /// H = 0 decided exactly: every term vanishes on the rationals.
    pub fn is_zero_exact(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero_exact())
    }
}

/// H(ξ) = −Σ φ(m(xᵢ)), always ≥ 0 in exact arithmetic.
pub fn entropy(m: &State, xi: &Partition, base: LogBase) -> EntropyValue {
    let terms: Vec<EntropyTerm> =
        xi.blocks().iter().map(|&b| EntropyTerm { p: m.get(b), given: None }).collect();
    let value = terms.iter().map(|t| t.contribution(base)).sum();
    EntropyValue { value, base, terms }
}

/// H(ξ|η) per the double sum, with zero-measure columns omitted.
pub fn conditional_entropy(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    base: LogBase,
) -> Result<EntropyValue, GridError> {
    let grid = odot_grid(alg, xi, eta)?;
    let cols = eta.len();
    let mut terms = Vec::new();
    for (j, &y) in eta.blocks().iter().enumerate() {
        let q = m.get(y);
        if q.is_zero() {
            continue;
        }
        for i in 0..xi.len() {
            terms.push(EntropyTerm { p: m.get(grid[i * cols + j]), given: Some(q) });
        }
    }
    let value = terms.iter().map(|t| t.contribution(base)).sum();
    Ok(EntropyValue { value, base, terms })
}

/// Information gain I(ξ,η) = H(ξ) − H(ξ|η), with the join-based alternative
/// form alongside when the join validates.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoGainValue {
    pub value: f64,
    /// The two components (H(ξ), H(ξ|η)); value is their difference.
    pub h_first: f64,
    pub h_conditional: f64,
    /// H(ξ)+H(η)−H(ξ∨η), when ξ∨η validates.
    pub alternative: Option<f64>,
    pub base: LogBase,
}

pub fn info_gain(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    base: LogBase,
) -> Result<InfoGainValue, GridError> {
    let h_first = entropy(m, xi, base).value;
    let h_conditional = conditional_entropy(alg, m, xi, eta, base)?.value;
    let alternative = common_refinement(alg, m, xi, eta).ok().map(|join| {
        h_first + entropy(m, eta, base).value - entropy(m, &join, base).value
    });
    Ok(InfoGainValue { value: h_first - h_conditional, h_first, h_conditional, alternative, base })
}

/// I(ξ,η|ζ) = H(ξ|ζ) − H(ξ|η∨ζ).
pub fn conditional_info_gain(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    zeta: &Partition,
    base: LogBase,
) -> Result<InfoGainValue, JoinError> {
    let h_first = conditional_entropy(alg, m, xi, zeta, base)?.value;
    let join = common_refinement(alg, m, eta, zeta)?;
    let h_conditional = conditional_entropy(alg, m, xi, &join, base)?.value;
    Ok(InfoGainValue {
        value: h_first - h_conditional,
        h_first,
        h_conditional,
        alternative: None,
        base,
    })
}

/// ξ is conditionally independent of ζ given η when I(ξ,ζ|η) vanishes.
pub fn conditionally_independent(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    zeta: &Partition,
    tol: f64,
    base: LogBase,
) -> Result<bool, JoinError> {
    let gain = conditional_info_gain(alg, m, xi, zeta, eta, base)?;
    Ok(gain.value.abs() <= tol)
}

fn hyp_grid(alg: &FiniteLAlgebra, xi: &Partition, eta: &Partition) -> bool {
    odot_grid(alg, xi, eta).is_ok()
}

fn hyp_decomp(alg: &FiniteLAlgebra, m: &State, xi: &Partition, eta: &Partition) -> bool {
    decomposition_holds(alg, m, xi, eta).unwrap_or(false)
}

/// H(ξ∨η) = H(ξ|η) + H(η), gated on the summation identity for (ξ given η)
/// and on the join validating.
pub fn check_chain_rule(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    tol: f64,
    base: LogBase,
) -> CheckItem {
    let grid_ok = hyp_grid(alg, xi, eta);
    let decomp = grid_ok && hyp_decomp(alg, m, xi, eta);
    let join = common_refinement(alg, m, xi, eta);
    let hypotheses = vec![
        Hypothesis::new("odot-grid-defined", grid_ok),
        Hypothesis::new("bayes-decomposition", decomp),
        Hypothesis::new("join-valid", join.is_ok()),
    ];
    let (lhs, rhs) = match &join {
        Ok(j) if grid_ok => (
            entropy(m, j, base).value,
            conditional_entropy(alg, m, xi, eta, base).unwrap().value
                + entropy(m, eta, base).value,
        ),
        _ => (f64::NAN, f64::NAN),
    };
    CheckItem::evaluate("chain-rule", hypotheses, CheckKind::Equal, lhs, rhs, tol)
}

/// H(ξ∨η|ζ) = H(ξ|ζ) + H(η|ξ∨ζ), gated on the four stated independence
/// hypotheses plus definedness and the summation identities its proof uses.
pub fn check_three_partition_chain(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    zeta: &Partition,
    tol: f64,
    base: LogBase,
) -> CheckItem {
    let join_xe = common_refinement(alg, m, xi, eta);
    let join_xz = common_refinement(alg, m, xi, zeta);
    let defined = join_xe.is_ok() && join_xz.is_ok();
    let mut hypotheses = vec![Hypothesis::new("joins-valid", defined)];
    let (mut lhs, mut rhs) = (f64::NAN, f64::NAN);
    if let (Ok(xe), Ok(xz)) = (&join_xe, &join_xz) {
        let indep = [
            ("independent(xi,zeta)", independent(alg, m, xi, zeta).unwrap_or(false)),
            ("independent(xi,eta)", independent(alg, m, xi, eta).unwrap_or(false)),
            ("independent(xi-join-eta,zeta)", independent(alg, m, xe, zeta).unwrap_or(false)),
            ("independent(eta,xi-join-zeta)", independent(alg, m, eta, xz).unwrap_or(false)),
        ];
        for (name, met) in indep {
            hypotheses.push(Hypothesis::new(name, met));
        }
        hypotheses.push(Hypothesis::new(
            "bayes-decomposition",
            hyp_decomp(alg, m, xe, zeta) && hyp_decomp(alg, m, eta, xz),
        ));
        let grids =
            hyp_grid(alg, xe, zeta) && hyp_grid(alg, xi, zeta) && hyp_grid(alg, eta, xz);
        hypotheses.push(Hypothesis::new("odot-grids-defined", grids));
        if grids {
            lhs = conditional_entropy(alg, m, xe, zeta, base).unwrap().value;
            rhs = conditional_entropy(alg, m, xi, zeta, base).unwrap().value
                + conditional_entropy(alg, m, eta, xz, base).unwrap().value;
        }
    }
    CheckItem::evaluate("three-partition-chain", hypotheses, CheckKind::Equal, lhs, rhs, tol)
}

/// The inequality sheet: refinement monotonicity, conditioning reduction,
/// conditional refinement monotonicity, subadditivity, the independence
/// equivalence, and the exact interior iff. `zeta` extends the sheet to the
/// three-partition inequalities when provided.
pub fn check_entropy_inequalities(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    zeta: Option<&Partition>,
    tol: f64,
    base: LogBase,
) -> CheckReport {
    let mut report = CheckReport::default();
    let laws = odot_laws(alg).ok();
    let commutative = laws.as_ref().is_some_and(|l| l.commutative && l.total());
    let self_distributive = laws.as_ref().is_some_and(|l| l.self_distributive());

    let h_xi = entropy(m, xi, base).value;
    let h_eta = entropy(m, eta, base).value;
    let grid_xe = hyp_grid(alg, xi, eta);
    let decomp_xe = grid_xe && hyp_decomp(alg, m, xi, eta);
    let decomp_ex = hyp_grid(alg, eta, xi) && hyp_decomp(alg, m, eta, xi);

    // refinement lemma, under its proof's reading (eta refines xi)
    report.push(CheckItem::evaluate(
        "entropy-monotone-under-refinement",
        vec![Hypothesis::new("eta-refines-xi", refines(alg, eta, xi))],
        CheckKind::AtMost,
        h_xi,
        h_eta,
        tol,
    ));

    // conditioning reduces entropy; the stated gate is commutativity plus
    // self-distributivity, and the two-sided summation identity is an
    // independently sufficient route
    let stated = commutative && self_distributive;
    let sound = decomp_xe && decomp_ex;
    let h_cond = if grid_xe {
        conditional_entropy(alg, m, xi, eta, base).unwrap().value
    } else {
        f64::NAN
    };
    report.push(CheckItem::evaluate(
        "conditioning-reduces-entropy",
        vec![
            Hypothesis::new("odot-grid-defined", grid_xe),
            Hypothesis::new("commutative-self-distributive-or-decomposition-both-ways", stated || sound),
        ],
        CheckKind::AtMost,
        h_cond,
        h_xi,
        tol,
    ));

    // subadditivity via the chain rule plus conditioning reduction
    let join_xe = common_refinement(alg, m, xi, eta);
    report.push(CheckItem::evaluate(
        "subadditivity",
        vec![
            Hypothesis::new("join-valid", join_xe.is_ok()),
            Hypothesis::new("bayes-decomposition-both-ways", decomp_xe && decomp_ex),
        ],
        CheckKind::AtMost,
        join_xe.as_ref().map_or(f64::NAN, |j| entropy(m, j, base).value),
        h_xi + h_eta,
        tol,
    ));

    // equivalence: H(xi|eta)=H(xi) iff additive join entropy iff independent
    if let Ok(join) = &join_xe {
        if grid_xe {
            let b1 = (h_cond - h_xi).abs() <= tol;
            let b2 = (entropy(m, join, base).value - (h_xi + h_eta)).abs() <= tol;
            let b3 = independent(alg, m, xi, eta).unwrap_or(false);
            let disagreement = (b1 != b2) as u8 + (b2 != b3) as u8;
            report.push(CheckItem::evaluate(
                "independence-additivity-equivalence",
                vec![Hypothesis::new("bayes-decomposition-both-ways", decomp_xe && decomp_ex)],
                CheckKind::Equal,
                disagreement as f64,
                0.0,
                0.5,
            ));
        }
    }

    // exact iff: every conditional term vanishes <=> interior subset
    if grid_xe {
        let cond = conditional_entropy(alg, m, xi, eta, base).unwrap();
        let zero = cond.is_zero_exact();
        let interior = interior_subset(alg, m, xi, eta).unwrap();
        report.push(CheckItem::evaluate(
            "conditional-zero-iff-interior",
            vec![Hypothesis::new("bayes-decomposition", decomp_xe)],
            CheckKind::Equal,
            (zero != interior) as u8 as f64,
            0.0,
            0.5,
        ));
    }

    if let Some(zeta) = zeta {
        // H(xi|zeta) <= H(eta|zeta) when eta refines xi, via both chain rules
        let join_xz = common_refinement(alg, m, xi, zeta);
        let join_ez = common_refinement(alg, m, eta, zeta);
        let refine = refines(alg, eta, xi);
        let joins_ok = join_xz.is_ok() && join_ez.is_ok();
        let joined_refine = match (&join_xz, &join_ez) {
            (Ok(xz), Ok(ez)) => refines(alg, ez, xz),
            _ => false,
        };
        let decomp_z = hyp_grid(alg, xi, zeta)
            && hyp_decomp(alg, m, xi, zeta)
            && hyp_grid(alg, eta, zeta)
            && hyp_decomp(alg, m, eta, zeta);
        let not_unit = zeta.blocks() != [alg.unit()];
        let (lhs, rhs) = if hyp_grid(alg, xi, zeta) && hyp_grid(alg, eta, zeta) {
            (
                conditional_entropy(alg, m, xi, zeta, base).unwrap().value,
                conditional_entropy(alg, m, eta, zeta, base).unwrap().value,
            )
        } else {
            (f64::NAN, f64::NAN)
        };
        report.push(CheckItem::evaluate(
            "conditional-monotone-under-refinement",
            vec![
                Hypothesis::new("eta-refines-xi", refine),
                Hypothesis::new("self-distributive", self_distributive),
                Hypothesis::new("zeta-not-unit", not_unit),
                Hypothesis::new("joins-valid", joins_ok),
                Hypothesis::new("joined-refinement", joined_refine),
                Hypothesis::new("bayes-decomposition-both-pairs", decomp_z),
            ],
            CheckKind::AtMost,
            lhs,
            rhs,
            tol,
        ));
    }

    report
}

/// The information-gain sheet on a pair, or a triple when `zeta` is given.
pub fn check_info_gain_calculus(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
    zeta: Option<&Partition>,
    tol: f64,
    base: LogBase,
) -> CheckReport {
    let mut report = CheckReport::default();
    let grid_xe = hyp_grid(alg, xi, eta);
    let grid_ex = hyp_grid(alg, eta, xi);
    let decomp_both = grid_xe
        && grid_ex
        && hyp_decomp(alg, m, xi, eta)
        && hyp_decomp(alg, m, eta, xi);

    let gain_xe = if grid_xe { info_gain(alg, m, xi, eta, base).ok() } else { None };
    let gain_ex = if grid_ex { info_gain(alg, m, eta, xi, base).ok() } else { None };

    // symmetry
    report.push(CheckItem::evaluate(
        "gain-symmetric",
        vec![
            Hypothesis::new("odot-grids-defined-both-ways", grid_xe && grid_ex),
            Hypothesis::new("bayes-decomposition-both-ways", decomp_both),
        ],
        CheckKind::Equal,
        gain_xe.as_ref().map_or(f64::NAN, |g| g.value),
        gain_ex.as_ref().map_or(f64::NAN, |g| g.value),
        tol,
    ));

    // bounds
    let h_xi = entropy(m, xi, base).value;
    let h_eta = entropy(m, eta, base).value;
    let value = gain_xe.as_ref().map_or(f64::NAN, |g| g.value);
    report.push(CheckItem::evaluate(
        "gain-nonnegative",
        vec![Hypothesis::new("bayes-decomposition-both-ways", decomp_both)],
        CheckKind::AtMost,
        0.0,
        value,
        tol,
    ));
    report.push(CheckItem::evaluate(
        "gain-upper-bound",
        vec![Hypothesis::new("bayes-decomposition-both-ways", decomp_both)],
        CheckKind::AtMost,
        value,
        h_xi.min(h_eta),
        tol,
    ));

    // alternative form
    let join = common_refinement(alg, m, xi, eta);
    report.push(CheckItem::evaluate(
        "gain-alternative-form",
        vec![
            Hypothesis::new("join-valid", join.is_ok()),
            Hypothesis::new(
                "bayes-decomposition",
                grid_xe && hyp_decomp(alg, m, xi, eta),
            ),
        ],
        CheckKind::Equal,
        value,
        join.as_ref()
            .map_or(f64::NAN, |j| h_xi + h_eta - entropy(m, j, base).value),
        tol,
    ));

    // the product corollary is evaluated but never asserted: its premise
    // ("independent state") has no definition and the identity contradicts
    // the additivity corollary, so the record is descriptive only
    let product = h_xi * h_eta;
    report.push(
        CheckItem::evaluate(
            "gain-product-form",
            vec![Hypothesis::new("not-assertable", false)],
            CheckKind::Equal,
            value,
            product,
            tol,
        )
        .with_witness(alloc::format!(
            "descriptive only: I={value:.6} vs H(xi)H(eta)={product:.6}"
        )),
    );

    if let Some(zeta) = zeta {
        // additivity over a join: I(xi, eta v zeta) = I(xi,eta) + I(xi,zeta|eta).
        // The left side conditions on eta v zeta while the conditional gain
        // conditions on zeta v eta, so the identity additionally needs the
        // join orientation to be immaterial for H(xi | .)
        let gain_join = common_refinement(alg, m, eta, zeta)
            .ok()
            .and_then(|ez| info_gain(alg, m, xi, &ez, base).ok());
        let cond_gain = conditional_info_gain(alg, m, xi, zeta, eta, base).ok();
        let defined = gain_join.is_some() && cond_gain.is_some() && gain_xe.is_some();
        let orientation_ok = match (&gain_join, &cond_gain) {
            // h_conditional of the left side is H(xi | eta v zeta); the
            // conditional gain subtracts H(xi | zeta v eta)
            (Some(j), Some(c)) => (j.h_conditional - c.h_conditional).abs() <= tol,
            _ => false,
        };
        let (lhs, rhs) = match (&gain_join, &cond_gain, &gain_xe) {
            (Some(j), Some(c), Some(g)) => (j.value, g.value + c.value),
            _ => (f64::NAN, f64::NAN),
        };
        report.push(CheckItem::evaluate(
            "gain-join-additivity",
            vec![
                Hypothesis::new("joins-and-grids-defined", defined),
                Hypothesis::new("join-orientation-immaterial", orientation_ok),
            ],
            CheckKind::Equal,
            lhs,
            rhs,
            tol,
        ));

        // symmetry of conditional independence
        let g1 = conditional_info_gain(alg, m, xi, zeta, eta, base);
        let g2 = conditional_info_gain(alg, m, zeta, xi, eta, base);
        let defined = g1.is_ok() && g2.is_ok();
        let decomp_pairs = hyp_grid(alg, xi, eta)
            && hyp_decomp(alg, m, xi, eta)
            && hyp_grid(alg, zeta, eta)
            && hyp_decomp(alg, m, zeta, eta);
        report.push(CheckItem::evaluate(
            "conditional-independence-symmetric",
            vec![
                Hypothesis::new("conditional-gains-defined", defined),
                Hypothesis::new("bayes-decomposition-pairs", decomp_pairs),
            ],
            CheckKind::Equal,
            g1.map_or(f64::NAN, |g| g.value),
            g2.map_or(f64::NAN, |g| g.value),
            tol,
        ));

        // conditioning cannot raise the gain, under the corollary's premise
        let premise = conditionally_independent(alg, m, xi, eta, zeta, tol, base).unwrap_or(false);
        let cond_gain = conditional_info_gain(alg, m, xi, eta, zeta, base);
        report.push(CheckItem::evaluate(
            "conditional-gain-at-most-gain",
            vec![
                Hypothesis::new("conditionally-independent", premise),
                Hypothesis::new("gains-defined", cond_gain.is_ok() && gain_xe.is_some()),
                Hypothesis::new("bayes-decomposition-both-ways", decomp_both),
            ],
            CheckKind::AtMost,
            cond_gain.map_or(f64::NAN, |g| g.value),
            value,
            tol,
        ));
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::partition::validate_partition;
    use crate::report::Verdict;

    const TOL: f64 = 1e-9;

    fn chain3() -> (FiniteLAlgebra, State) {
        (lukasiewicz_chain(2), lukasiewicz_state(2))
    }

    #[test]
    fn xlogx_reference_values() {
        assert_eq!(xlogx(Rat::new(0, 1), LogBase::Two), 0.0);
        assert_eq!(xlogx(Rat::new(1, 1), LogBase::Two), 0.0);
        assert!((xlogx(Rat::new(1, 2), LogBase::Two) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn entropy_special_values() {
        let (alg, m) = chain3();
        let unit = Partition::unit(&alg);
        let h = entropy(&m, &unit, LogBase::Two);
        assert_eq!(h.value, 0.0);
        assert!(h.is_zero_exact());

        let hh = validate_partition(&alg, &m, &[1, 1]).unwrap();
        let h = entropy(&m, &hh, LogBase::Two);
        assert!((h.value - 1.0).abs() < 1e-12);
        assert!((h.recompute() - h.value).abs() < 1e-12);

        // uniform n-block partitions hit log2(n) exactly within float error
        for (k, blocks) in [(4usize, 4usize), (8, 8)] {
            let alg = lukasiewicz_chain(k);
            let m = lukasiewicz_state(k);
            let xi = validate_partition(&alg, &m, &vec![1; blocks]).unwrap();
            let h = entropy(&m, &xi, LogBase::Two);
            assert!((h.value - (blocks as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_zero_on_zero_one_measures() {
        let fx = table_four_lenient();
        let m = table_four_state();
        let xi = validate_partition(&fx.algebra, &m, &[0, 1]).unwrap();
        let h = entropy(&m, &xi, LogBase::Two);
        assert_eq!(h.value, 0.0);
        assert!(h.is_zero_exact());
    }

    #[test]
    fn conditioning_on_the_unit_partition_is_the_identity() {
        let (alg, m) = chain3();
        let unit = Partition::unit(&alg);
        for xi in crate::partition::enumerate_partitions(&alg, &m, 3) {
            let h = entropy(&m, &xi, LogBase::Two);
            let hc = conditional_entropy(&alg, &m, &xi, &unit, LogBase::Two).unwrap();
            assert_eq!(h.value, hc.value, "term-level identity");
        }
    }

    #[test]
    fn reference_conditional_entropy_is_zero() {
        let fx = table_four_lenient();
        let m = table_four_state();
        let xi = validate_partition(&fx.algebra, &m, &[0, 1]).unwrap();
        let eta = validate_partition(&fx.algebra, &m, &[0, 2]).unwrap();
        let h = conditional_entropy(&fx.algebra, &m, &xi, &eta, LogBase::Two).unwrap();
        assert!(h.is_zero_exact());
    }

    #[test]
    fn chain_rule_gated_sweep_has_no_failures() {
        let (alg, m) = chain3();
        let parts = crate::partition::enumerate_partitions(&alg, &m, 3);
        let mut asserted = 0;
        for xi in &parts {
            for eta in &parts {
                let item = check_chain_rule(&alg, &m, xi, eta, TOL, LogBase::Two);
                assert_ne!(item.verdict, Verdict::Fails, "{xi:?} {eta:?}");
                if item.verdict == Verdict::Holds {
                    asserted += 1;
                }
            }
        }
        assert!(asserted > 0);
    }

    #[test]
    fn info_gain_reference_values() {
        let fx = table_four_lenient();
        let m = table_four_state();
        let xi = validate_partition(&fx.algebra, &m, &[0, 1]).unwrap();
        let eta = validate_partition(&fx.algebra, &m, &[0, 2]).unwrap();
        let g = info_gain(&fx.algebra, &m, &xi, &eta, LogBase::Two).unwrap();
        assert_eq!(g.value, 0.0);
        // I(xi, (1)) = 0 since H(xi|1) = H(xi)
        let unit = Partition::unit(&fx.algebra);
        let g = info_gain(&fx.algebra, &m, &xi, &unit, LogBase::Two).unwrap();
        assert_eq!(g.value, 0.0);
    }

    #[test]
    fn conditional_gain_reduces_to_plain_gain_on_unit() {
        let (alg, m) = chain3();
        let hh = validate_partition(&alg, &m, &[1, 1]).unwrap();
        let zo = validate_partition(&alg, &m, &[0, 2]).unwrap();
        let unit = Partition::unit(&alg);
        let plain = info_gain(&alg, &m, &hh, &zo, LogBase::Two).unwrap();
        let cond = conditional_info_gain(&alg, &m, &hh, &zo, &unit, LogBase::Two).unwrap();
        assert!((plain.value - cond.value).abs() < TOL);
        // eta = (1) gives zero conditional gain
        let cond = conditional_info_gain(&alg, &m, &hh, &unit, &zo, LogBase::Two).unwrap();
        assert!(cond.value.abs() < TOL);
    }

    #[test]
    fn conditional_independence_trivial_cases() {
        let (alg, m) = chain3();
        let hh = validate_partition(&alg, &m, &[1, 1]).unwrap();
        let unit = Partition::unit(&alg);
        // zeta = (1): I(xi, (1) | eta) = H(xi|eta) - H(xi|(1) v eta) = 0
        assert!(conditionally_independent(&alg, &m, &hh, &hh, &unit, TOL, LogBase::Two).unwrap());
        // xi = (1): both conditional entropies vanish (join picked definable)
        let zo = validate_partition(&alg, &m, &[0, 2]).unwrap();
        assert!(conditionally_independent(&alg, &m, &unit, &zo, &hh, TOL, LogBase::Two).unwrap());
    }

    #[test]
    fn inequality_sweep_has_no_failures() {
        let (alg, m) = chain3();
        let parts = crate::partition::enumerate_partitions(&alg, &m, 3);
        for xi in &parts {
            for eta in &parts {
                let report =
                    check_entropy_inequalities(&alg, &m, xi, eta, None, TOL, LogBase::Two);
                assert!(report.no_failures(), "{xi:?} {eta:?}: {report:?}");
            }
        }
    }

    #[test]
    fn gain_sweep_has_no_failures() {
        let (alg, m) = chain3();
        let parts = crate::partition::enumerate_partitions(&alg, &m, 3);
        for xi in &parts {
            for eta in &parts {
                let report =
                    check_info_gain_calculus(&alg, &m, xi, eta, None, TOL, LogBase::Two);
                assert!(report.no_failures(), "{xi:?} {eta:?}: {report:?}");
            }
        }
    }

    #[test]
    fn three_partition_chain_trivial_reductions() {
        let (alg, m) = chain3();
        let unit = Partition::unit(&alg);
        let hh = validate_partition(&alg, &m, &[1, 1]).unwrap();
        // zeta = (1): reduces to the two-partition chain rule
        let item = check_three_partition_chain(&alg, &m, &hh, &unit, &unit, TOL, LogBase::Two);
        assert_ne!(item.verdict, Verdict::Fails, "{item:?}");
        // all three unit partitions: 0 = 0 + 0, asserted outright
        let item = check_three_partition_chain(&alg, &m, &unit, &unit, &unit, TOL, LogBase::Two);
        assert_eq!(item.verdict, Verdict::Holds, "{item:?}");
        assert_eq!(item.lhs, 0.0);
        assert_eq!(item.rhs, 0.0);
    }

    #[test]
    fn natural_log_base_rescales() {
        let (alg, m) = chain3();
        let hh = validate_partition(&alg, &m, &[1, 1]).unwrap();
        let bits = entropy(&m, &hh, LogBase::Two).value;
        let nats = entropy(&m, &hh, LogBase::Natural).value;
        assert!((nats - bits * core::f64::consts::LN_2).abs() < 1e-12);
    }
}
