//! L-operators, closure operators, and the poset they form.
//!
//! An L-operator is extensive, monotone, and idempotent; a closure operator
//! additionally satisfies l(x→y) ≤ l(x)→l(y). The set of closure operators
//! is ordered pointwise; the constant-unit map is its top.
//!
//! Two published claims about this poset do not survive computation and are
//! therefore *verified*, never assumed, by the functions here:
//! the two-valued operator pinned at a non-unit element need not satisfy the
//! closure inequality (it always is an L-operator), and a maximal closure
//! operator need not be of that two-valued shape. [`maximal_operators`]
//! reports the discrepancies alongside the readings under which the claims
//! do hold.

use alloc::vec::Vec;

use crate::algebra::FiniteLAlgebra;
use crate::error::Error;

/// Totality/compatibility guard shared by the operator predicates.
fn guard(alg: &FiniteLAlgebra, l: &[usize]) -> Result<(), Error> {
    if l.len() != alg.n() || l.iter().any(|&v| v >= alg.n()) {
        return Err(Error::MismatchedAlgebra { expected: alg.n(), got: l.len() });
    }
    Ok(())
}

/// Extensive, monotone, idempotent.
pub fn is_l_operator(alg: &FiniteLAlgebra, l: &[usize]) -> Result<bool, Error> {
    guard(alg, l)?;
    let n = alg.n();
    let extensive = (0..n).all(|x| alg.leq(x, l[x]));
    let monotone =
        (0..n).all(|x| (0..n).all(|y| !alg.leq(x, y) || alg.leq(l[x], l[y])));
    let idempotent = (0..n).all(|x| l[l[x]] == l[x]);
    Ok(extensive && monotone && idempotent)
}

/// L-operator plus l(x→y) ≤ l(x)→l(y).
pub fn is_closure_operator(alg: &FiniteLAlgebra, l: &[usize]) -> Result<bool, Error> {
    if !is_l_operator(alg, l)? {
        return Ok(false);
    }
    let n = alg.n();
    Ok((0..n).all(|x| {
        (0..n).all(|y| alg.leq(l[alg.arrow(x, y)], alg.arrow(l[x], l[y])))
    }))
}

/// Fixed points of an L-operator.
pub fn simple_elements(alg: &FiniteLAlgebra, l: &[usize]) -> Result<Vec<usize>, Error> {
    if !is_l_operator(alg, l)? {
        return Err(Error::NotAnOperator);
    }
    Ok(alg.elements().filter(|&x| l[x] == x).collect())
}

/// Fixed points of an arbitrary total map (no operator contract).
pub fn fixed_points(l: &[usize]) -> Vec<usize> {
    l.iter().enumerate().filter(|&(x, &v)| v == x).map(|(x, _)| x).collect()
}

/// Greatest lower bound of a subset in the induced order, if one exists.
pub fn glb(alg: &FiniteLAlgebra, of: &[usize]) -> Option<usize> {
    let lower: Vec<usize> =
        alg.elements().filter(|&z| of.iter().all(|&x| alg.leq(z, x))).collect();
    lower.iter().copied().find(|&g| lower.iter().all(|&w| alg.leq(w, g)))
}

/// Outcome of checking l(a) = inf{simple x : a ≤ x} for every a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfSimpleReport {
    /// Elements where the infimum exists but differs from l(a).
    pub mismatches: Vec<(usize, usize, usize)>, // (a, glb, l(a))
    /// Elements where the set of simple upper bounds has no glb in L.
    pub glb_missing: Vec<usize>,
}

impl InfSimpleReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Verify the simple-element characterization of a closure operator.
pub fn check_inf_simple(alg: &FiniteLAlgebra, l: &[usize]) -> Result<InfSimpleReport, Error> {
    if !is_closure_operator(alg, l)? {
        return Err(Error::NotAnOperator);
    }
    let simple = simple_elements(alg, l)?;
    let mut mismatches = Vec::new();
    let mut glb_missing = Vec::new();
    for a in alg.elements() {
        let above: Vec<usize> = simple.iter().copied().filter(|&x| alg.leq(a, x)).collect();
        match glb(alg, &above) {
            Some(g) => {
                if g != l[a] {
                    mismatches.push((a, g, l[a]));
                }
            }
            None => glb_missing.push(a),
        }
    }
    Ok(InfSimpleReport { mismatches, glb_missing })
}

/// The set of all closure operators on one algebra, pointwise-ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorPoset {
    ops: Vec<Vec<usize>>,
}

/// Materialize the closure-operator poset. Candidates are generated over
/// the upper sets forced by extensivity, then filtered; the map-space cap
/// guards against oversized carriers.
pub fn enumerate_closure_operators(
    alg: &FiniteLAlgebra,
    cap: usize,
) -> Result<OperatorPoset, Error> {
    if alg.n() > cap {
        return Err(Error::Capacity { cap, requested: alg.n() });
    }
    let n = alg.n();
    let uppers: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| alg.leq(x, y)).collect())
        .collect();
    let mut ops = Vec::new();
    let mut current = alloc::vec![0usize; n];
    fn rec(
        alg: &FiniteLAlgebra,
        uppers: &[Vec<usize>],
        current: &mut Vec<usize>,
        x: usize,
        ops: &mut Vec<Vec<usize>>,
    ) {
        if x == current.len() {
            if is_closure_operator(alg, current).expect("same carrier") {
                ops.push(current.clone());
            }
            return;
        }
        for &v in &uppers[x] {
            current[x] = v;
            rec(alg, uppers, current, x + 1, ops);
        }
    }
    rec(alg, &uppers, &mut current, 0, &mut ops);
    ops.sort();
    Ok(OperatorPoset { ops })
}

impl OperatorPoset {
    pub fn ops(&self) -> &[Vec<usize>] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn contains(&self, l: &[usize]) -> bool {
        self.ops.binary_search_by(|o| o.as_slice().cmp(l)).is_ok()
    }

    /// The constant-unit map, always the greatest element.
    pub fn top(alg: &FiniteLAlgebra) -> Vec<usize> {
        alloc::vec![alg.unit(); alg.n()]
    }

    /// Maximal elements of the poset minus its top, under strict betweenness:
    /// l is maximal when no member sits strictly between l and the top.
    pub fn maximal_elements(&self, alg: &FiniteLAlgebra) -> Vec<Vec<usize>> {
        let top = Self::top(alg);
        self.ops
            .iter()
            .filter(|l| l.as_slice() != top.as_slice())
            .filter(|l| {
                // no member strictly above l other than the top itself
                !self.ops.iter().any(|m| {
                    m.as_slice() != l.as_slice()
                        && m.as_slice() != top.as_slice()
                        && leq_operator(alg, l, m).unwrap()
                })
            })
            .cloned()
            .collect()
    }
}

/// Pointwise order on operators over one carrier.
pub fn leq_operator(alg: &FiniteLAlgebra, l: &[usize], lp: &[usize]) -> Result<bool, Error> {
    guard(alg, l)?;
    guard(alg, lp)?;
    Ok(alg.elements().all(|x| alg.leq(l[x], lp[x])))
}

/// Why a pointwise infimum could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfError {
    Empty,
    /// {lᵢ(x)} has no greatest lower bound in the induced order.
    Undefined { at: usize },
    /// The pointwise infimum exists but is not a closure operator; the
    /// result is returned for inspection.
    NotClosure(Vec<usize>),
}

/// Pointwise infimum of a nonempty family of closure operators,
/// re-verified to be a closure operator.
pub fn inf_operators(alg: &FiniteLAlgebra, family: &[&[usize]]) -> Result<Vec<usize>, InfError> {
    if family.is_empty() {
        return Err(InfError::Empty);
    }
    let mut out = Vec::with_capacity(alg.n());
    for x in alg.elements() {
        let values: Vec<usize> = family.iter().map(|l| l[x]).collect();
        match glb(alg, &values) {
            Some(g) => out.push(g),
            None => return Err(InfError::Undefined { at: x }),
        }
    }
    if !is_closure_operator(alg, &out).map_err(|_| InfError::Empty)? {
        return Err(InfError::NotClosure(out));
    }
    Ok(out)
}

/// Why a least upper bound in the materialized poset could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupError {
    Empty,
    /// The common upper bounds have no least member; the minimal ones are
    /// returned so the failure is inspectable.
    NoLeast(Vec<Vec<usize>>),
}

/// Least upper bound of a family inside the materialized poset. The top is
/// always an upper bound, so the bound set is nonempty; least-ness is
/// verified, not assumed.
pub fn sup_operators(
    alg: &FiniteLAlgebra,
    poset: &OperatorPoset,
    family: &[&[usize]],
) -> Result<Vec<usize>, SupError> {
    if family.is_empty() {
        return Err(SupError::Empty);
    }
    let ubs: Vec<&Vec<usize>> = poset
        .ops()
        .iter()
        .filter(|u| family.iter().all(|l| leq_operator(alg, l, u).unwrap()))
        .collect();
    if let Some(least) =
        ubs.iter().find(|u| ubs.iter().all(|v| leq_operator(alg, u, v).unwrap()))
    {
        return Ok((*least).clone());
    }
    let minimal: Vec<Vec<usize>> = ubs
        .iter()
        .filter(|u| !ubs.iter().any(|v| v != *u && leq_operator(alg, v, u).unwrap()))
        .map(|u| (*u).clone())
        .collect();
    Err(SupError::NoLeast(minimal))
}

/// Outcome of checking Fix(sup F) = ⋂ Fix(lᵢ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupFixReport {
    pub sup: Result<Vec<usize>, SupError>,
    pub fix_sup: Vec<usize>,
    pub fix_intersection: Vec<usize>,
}

impl SupFixReport {
    /// Holds when the sup exists and the fixed-point sets coincide.
    pub fn holds(&self) -> bool {
        self.sup.is_ok() && self.fix_sup == self.fix_intersection
    }
}

/// Verify the fixed-point description of suprema for one family.
pub fn check_sup_fixed_points(
    alg: &FiniteLAlgebra,
    poset: &OperatorPoset,
    family: &[&[usize]],
) -> SupFixReport {
    let sup = sup_operators(alg, poset, family);
    let fix_sup = match &sup {
        Ok(s) => fixed_points(s),
        Err(_) => Vec::new(),
    };
    let mut fix_intersection: Vec<usize> = alg.elements().collect();
    for l in family {
        fix_intersection.retain(|&x| l[x] == x);
    }
    SupFixReport { sup, fix_sup, fix_intersection }
}

/// The two-valued map pinned at a non-unit element: x ↦ a when x ≤ a,
/// else x ↦ 1. Always an L-operator; the closure inequality is checked and
/// reported because it can genuinely fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdOperator {
    pub pin: usize,
    pub map: Vec<usize>,
    pub is_closure: bool,
}

/// Build and classify the two-valued operator pinned at `a`.
pub fn threshold_operator(alg: &FiniteLAlgebra, a: usize) -> Result<ThresholdOperator, Error> {
    if a == alg.unit() {
        return Err(Error::UnitArgument);
    }
    let map: Vec<usize> =
        alg.elements().map(|x| if alg.leq(x, a) { a } else { alg.unit() }).collect();
    let is_closure = is_closure_operator(alg, &map)?;
    debug_assert!(is_l_operator(alg, &map)?);
    Ok(ThresholdOperator { pin: a, map, is_closure })
}

/// Full comparison of the maximal elements of the closure poset against the
/// two-valued operators, under every reading that has been proposed for the
/// published claims. Discrepancies are reported, never suppressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalReport {
    /// Maximal elements of the closure poset minus its top.
    pub maximal: Vec<Vec<usize>>,
    /// Every two-valued operator, with its pin and closure flag.
    pub thresholds: Vec<ThresholdOperator>,
    /// Maximal closure operators that are not two-valued operators.
    pub maximal_not_threshold: Vec<Vec<usize>>,
    /// Pins whose operator is in the poset but fails to be maximal.
    pub threshold_in_poset_not_maximal: Vec<usize>,
    /// Pins whose operator fails the closure inequality (so it is not in
    /// the poset at all).
    pub threshold_not_closure: Vec<usize>,
    /// Pins with some closure operator strictly between the two-valued
    /// operator and the top (the betweenness reading of maximality).
    pub betweenness_violations: Vec<usize>,
}

impl MaximalReport {
    /// The literal claim: maximal set == two-valued set, both directions.
    pub fn literal_claim_holds(&self) -> bool {
        self.maximal_not_threshold.is_empty()
            && self.threshold_in_poset_not_maximal.is_empty()
            && self.threshold_not_closure.is_empty()
    }

    /// The qualified direct half: every two-valued operator that is in the
    /// poset is maximal there.
    pub fn thresholds_in_poset_maximal(&self) -> bool {
        self.threshold_in_poset_not_maximal.is_empty()
    }

    /// Every maximal element is two-valued (the converse half).
    pub fn maximal_are_thresholds(&self) -> bool {
        self.maximal_not_threshold.is_empty()
    }

    /// Betweenness reading: no closure operator strictly between any
    /// two-valued operator and the top.
    pub fn betweenness_holds(&self) -> bool {
        self.betweenness_violations.is_empty()
    }
}

/// Compare maximal elements with the two-valued operators on one algebra.
pub fn maximal_operators(alg: &FiniteLAlgebra, poset: &OperatorPoset) -> MaximalReport {
    let top = OperatorPoset::top(alg);
    let maximal = poset.maximal_elements(alg);
    let thresholds: Vec<ThresholdOperator> = alg
        .elements()
        .filter(|&a| a != alg.unit())
        .map(|a| threshold_operator(alg, a).expect("non-unit pin"))
        .collect();

    let maximal_not_threshold: Vec<Vec<usize>> = maximal
        .iter()
        .filter(|m| !thresholds.iter().any(|t| &t.map == *m))
        .cloned()
        .collect();
    let mut threshold_in_poset_not_maximal = Vec::new();
    let mut threshold_not_closure = Vec::new();
    let mut betweenness_violations = Vec::new();
    for t in &thresholds {
        if !t.is_closure {
            threshold_not_closure.push(t.pin);
        } else if t.map != top && !maximal.contains(&t.map) {
            threshold_in_poset_not_maximal.push(t.pin);
        }
        let strictly_between = poset.ops().iter().any(|l| {
            l != &t.map
                && l.as_slice() != top.as_slice()
                && leq_operator(alg, &t.map, l).unwrap()
        });
        if strictly_between {
            betweenness_violations.push(t.pin);
        }
    }
    MaximalReport {
        maximal,
        thresholds,
        maximal_not_threshold,
        threshold_in_poset_not_maximal,
        threshold_not_closure,
        betweenness_violations,
    }
}

/// The poset of all L-operators (closure inequality not required). The
/// maximality claims hold in this poset, so it is materialized for the
/// comparison reports.
pub fn enumerate_l_operators(alg: &FiniteLAlgebra, cap: usize) -> Result<Vec<Vec<usize>>, Error> {
    if alg.n() > cap {
        return Err(Error::Capacity { cap, requested: alg.n() });
    }
    let n = alg.n();
    let uppers: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| alg.leq(x, y)).collect())
        .collect();
    let mut ops = Vec::new();
    let mut current = alloc::vec![0usize; n];
    fn rec(
        alg: &FiniteLAlgebra,
        uppers: &[Vec<usize>],
        current: &mut Vec<usize>,
        x: usize,
        ops: &mut Vec<Vec<usize>>,
    ) {
        if x == current.len() {
            if is_l_operator(alg, current).expect("same carrier") {
                ops.push(current.clone());
            }
            return;
        }
        for &v in &uppers[x] {
            current[x] = v;
            rec(alg, uppers, current, x + 1, ops);
        }
    }
    rec(alg, &uppers, &mut current, 0, &mut ops);
    ops.sort();
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn identity_and_top_are_closure_operators() {
        let fx = table_one();
        let alg = &fx.algebra;
        let id: Vec<usize> = alg.elements().collect();
        assert!(is_closure_operator(alg, &id).unwrap());
        assert!(is_closure_operator(alg, &OperatorPoset::top(alg)).unwrap());
    }

    #[test]
    fn reference_operator_is_closure_with_expected_fixed_points() {
        let fx = table_three();
        let l = table_three_closure();
        assert!(is_closure_operator(&fx.algebra, &l).unwrap());
        let simple = simple_elements(&fx.algebra, &l).unwrap();
        let names: Vec<&str> = simple.iter().map(|&x| fx.names[x]).collect();
        assert_eq!(names, ["1", "b", "c"]);
    }

    #[test]
    fn non_extensive_map_is_rejected() {
        let fx = table_three();
        // a ↦ d is non-extensive (a ≰ d)
        let l = alloc::vec![0, 4, 2, 3, 2];
        assert!(!is_l_operator(&fx.algebra, &l).unwrap());
        assert_eq!(simple_elements(&fx.algebra, &l).unwrap_err(), Error::NotAnOperator);
    }

    #[test]
    fn wrong_carrier_is_a_structural_error() {
        let fx = table_one();
        assert!(matches!(
            is_l_operator(&fx.algebra, &[0, 1]),
            Err(Error::MismatchedAlgebra { .. })
        ));
    }

    #[test]
    fn inf_simple_characterization_on_reference_operator() {
        let fx = table_three();
        let l = table_three_closure();
        let report = check_inf_simple(&fx.algebra, &l).unwrap();
        assert!(report.holds());
        // simple elements above d are {b,1} with glb b = l(d)
        let d = fx.index_of("d");
        assert_eq!(l[d], fx.index_of("b"));
    }

    #[test]
    fn poset_sizes_match_frozen_counts() {
        for (fixture, closure_count, lop_count) in [
            (table_one(), 6usize, 8usize),
            (table_two(), 8, 14),
            (table_three(), 6, 14),
            (table_four_lenient(), 9, 9),
        ] {
            let poset = enumerate_closure_operators(&fixture.algebra, 5).unwrap();
            assert_eq!(poset.len(), closure_count);
            assert_eq!(enumerate_l_operators(&fixture.algebra, 5).unwrap().len(), lop_count);
            // top present and greatest
            let top = OperatorPoset::top(&fixture.algebra);
            assert!(poset.contains(&top));
            for l in poset.ops() {
                assert!(leq_operator(&fixture.algebra, l, &top).unwrap());
            }
        }
    }

    #[test]
    fn poset_contains_reference_operator() {
        let fx = table_three();
        let poset = enumerate_closure_operators(&fx.algebra, 5).unwrap();
        assert!(poset.contains(&table_three_closure()));
    }

    #[test]
    fn capacity_is_enforced() {
        let fx = table_three();
        assert!(matches!(
            enumerate_closure_operators(&fx.algebra, 4),
            Err(Error::Capacity { cap: 4, requested: 5 })
        ));
    }

    #[test]
    fn inf_and_sup_small_families() {
        let fx = table_three();
        let alg = &fx.algebra;
        let poset = enumerate_closure_operators(alg, 5).unwrap();
        let l = table_three_closure();
        let top = OperatorPoset::top(alg);
        // inf{l} = l, inf{l, top} = l
        assert_eq!(inf_operators(alg, &[&l]).unwrap(), l);
        assert_eq!(inf_operators(alg, &[&l, &top]).unwrap(), l);
        // sup{l} = l, sup{id, top} = top
        assert_eq!(sup_operators(alg, &poset, &[&l]).unwrap(), l);
        let id: Vec<usize> = alg.elements().collect();
        assert_eq!(sup_operators(alg, &poset, &[&id, &top]).unwrap(), top);
        // inf of the whole poset is its least element when defined
        let family: Vec<&[usize]> = poset.ops().iter().map(|o| o.as_slice()).collect();
        if let Ok(bottom) = inf_operators(alg, &family) {
            for l in poset.ops() {
                assert!(leq_operator(alg, &bottom, l).unwrap());
            }
        }
    }

    #[test]
    fn sup_fixed_points_on_fixture_families() {
        let fx = table_three();
        let alg = &fx.algebra;
        let poset = enumerate_closure_operators(alg, 5).unwrap();
        let ops = poset.ops();
        for i in 0..ops.len() {
            for j in 0..ops.len() {
                let report =
                    check_sup_fixed_points(alg, &poset, &[&ops[i], &ops[j]]);
                assert!(report.holds(), "family ({i},{j}): {report:?}");
            }
        }
    }

    #[test]
    fn threshold_operator_values_and_the_known_closure_gap() {
        let fx = table_one();
        let alg = &fx.algebra;
        let (a, b, c, u) = (0, 1, 2, 3);
        let tb = threshold_operator(alg, b).unwrap();
        assert_eq!(tb.map, alloc::vec![b, b, b, u]);
        assert!(tb.is_closure);
        // the operator pinned at c is an L-operator but not closure
        let tc = threshold_operator(alg, c).unwrap();
        assert!(is_l_operator(alg, &tc.map).unwrap());
        assert!(!tc.is_closure);
        assert_eq!(alg.arrow(a, c), a); // the witness pair: l(a→c)=l(a)=1 ≰ c
        assert!(threshold_operator(alg, u).is_err());
    }

    #[test]
    fn threshold_on_bounded_zero_pins_everything() {
        let fx = table_two();
        let alg = &fx.algebra;
        let z = fx.index_of("0");
        let t = threshold_operator(alg, z).unwrap();
        let expected: Vec<usize> =
            alg.elements().map(|x| if x == z { z } else { alg.unit() }).collect();
        assert_eq!(t.map, expected);
    }

    #[test]
    fn top_fixes_only_the_unit() {
        let fx = table_one();
        let top = OperatorPoset::top(&fx.algebra);
        assert_eq!(simple_elements(&fx.algebra, &top).unwrap(), alloc::vec![fx.algebra.unit()]);
        // identity fixes everything
        let id: Vec<usize> = fx.algebra.elements().collect();
        assert_eq!(simple_elements(&fx.algebra, &id).unwrap(), id);
    }

    #[test]
    fn sup_of_incomparable_pair_is_minimal_among_upper_bounds() {
        let fx = table_three();
        let alg = &fx.algebra;
        let poset = enumerate_closure_operators(alg, 5).unwrap();
        let ops = poset.ops();
        let mut found = false;
        for i in 0..ops.len() {
            for j in 0..ops.len() {
                if leq_operator(alg, &ops[i], &ops[j]).unwrap()
                    || leq_operator(alg, &ops[j], &ops[i]).unwrap()
                {
                    continue;
                }
                found = true;
                let sup = sup_operators(alg, &poset, &[&ops[i], &ops[j]]).unwrap();
                for u in ops {
                    let upper = leq_operator(alg, &ops[i], u).unwrap()
                        && leq_operator(alg, &ops[j], u).unwrap();
                    assert!(!upper || leq_operator(alg, &sup, u).unwrap());
                }
            }
        }
        assert!(found, "expected at least one incomparable pair");
    }

    #[test]
    fn maximal_report_on_table_three() {
        let fx = table_three();
        let alg = &fx.algebra;
        let poset = enumerate_closure_operators(alg, 5).unwrap();
        let report = maximal_operators(alg, &poset);
        assert!(report.maximal_are_thresholds(), "{report:?}");
        assert!(report.thresholds_in_poset_maximal());
        assert!(report.betweenness_holds());
    }

    #[test]
    fn maximal_report_on_table_one() {
        let fx = table_one();
        let alg = &fx.algebra;
        let poset = enumerate_closure_operators(alg, 5).unwrap();
        let report = maximal_operators(alg, &poset);
        // maximal = {pin a, pin b}; pin c fails the closure inequality
        assert_eq!(report.maximal.len(), 2);
        assert!(report.maximal_are_thresholds());
        assert!(report.thresholds_in_poset_maximal());
        assert_eq!(report.threshold_not_closure, alloc::vec![fx.index_of("c")]);
        assert!(report.betweenness_holds());
        assert!(!report.literal_claim_holds());
    }
}
