//! Partitions of unity, refinement, and the common-refinement calculus.
//!
//! A partition is an ordered block sequence (repeats allowed) that is
//! cumulatively orthogonal under the left-to-right ⊕ fold and whose fold has
//! measure 1. Order matters: ⊕ is used cumulatively without an
//! associativity assumption, so the fold order is part of the partition's
//! identity, and chain partitions like (h,h) require repeated blocks.

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::algebra::FiniteLAlgebra;
use crate::error::GridError;
use crate::state::{odot, oplus, orthogonal, OdotResult, State};
use crate::Rat;

/// A validated partition of unity: ordered blocks over one algebra/state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<usize>,
}

/// Why a block sequence is not a partition of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    Empty,
    NotBounded,
    /// The cumulative fold is not orthogonal to the block at this index.
    OrthogonalityViolation { index: usize },
    /// The fold has measure != 1.
    MeasureNotOne { total: Rat },
}

/// Left-fold the blocks under ⊕, reporting the first non-orthogonal step.
pub fn fold_oplus(alg: &FiniteLAlgebra, blocks: &[usize]) -> Result<usize, PartitionError> {
    if blocks.is_empty() {
        return Err(PartitionError::Empty);
    }
    if alg.zero().is_none() {
        return Err(PartitionError::NotBounded);
    }
    let mut acc = blocks[0];
    for (index, &b) in blocks.iter().enumerate().skip(1) {
        if !orthogonal(alg, acc, b).expect("bounded") {
            return Err(PartitionError::OrthogonalityViolation { index });
        }
        acc = oplus(alg, acc, b).expect("orthogonal");
    }
    Ok(acc)
}

/// Check cumulative orthogonality and total measure 1.
pub fn validate_partition(
    alg: &FiniteLAlgebra,
    m: &State,
    blocks: &[usize],
) -> Result<Partition, PartitionError> {
    let total = fold_oplus(alg, blocks)?;
    if !m.get(total).is_one() {
        return Err(PartitionError::MeasureNotOne { total: m.get(total) });
    }
    Ok(Partition { blocks: blocks.to_vec() })
}

impl Partition {
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The whole-space partition (1).
    pub fn unit(alg: &FiniteLAlgebra) -> Partition {
        Partition { blocks: alloc::vec![alg.unit()] }
    }

    /// Blocks with measure zero removed. Returns `None` when the pruned
    /// sequence no longer validates (deleting blocks can break the fold).
    pub fn pruned(&self, alg: &FiniteLAlgebra, m: &State) -> Option<Partition> {
        let kept: Vec<usize> =
            self.blocks.iter().copied().filter(|&b| !m.get(b).is_zero()).collect();
        if kept.len() == self.blocks.len() {
            return Some(self.clone());
        }
        validate_partition(alg, m, &kept).ok()
    }
}

/// The row-major grid of pairwise products x_i ⊙ y_j.
pub fn odot_grid(
    alg: &FiniteLAlgebra,
    xi: &Partition,
    eta: &Partition,
) -> Result<Vec<usize>, GridError> {
    let mut out = Vec::with_capacity(xi.len() * eta.len());
    for (i, &x) in xi.blocks().iter().enumerate() {
        for (j, &y) in eta.blocks().iter().enumerate() {
            let r = odot(alg, x, y).map_err(|_| GridError::NotBounded)?;
            match r.element(alg) {
                Some(e) => out.push(e),
                None => {
                    return Err(match r {
                        OdotResult::Ambiguous(c) => GridError::Ambiguous { i, j, candidates: c },
                        _ => GridError::NoDifference { i, j },
                    })
                }
            }
        }
    }
    Ok(out)
}

/// Why a common refinement could not be produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinError {
    Grid(GridError),
    /// The product grid exists but does not validate as a partition. The
    /// claimed closure of partitions under ∨ presumes structure not every
    /// table provides, so this is a reportable outcome, not a bug.
    Invalid(PartitionError),
}

impl From<GridError> for JoinError {
    fn from(e: GridError) -> Self {
        JoinError::Grid(e)
    }
}

/// The common refinement ξ ∨ η with blocks (x_i ⊙ y_j) in row-major order,
/// re-validated as a partition.
pub fn common_refinement(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
) -> Result<Partition, JoinError> {
    let blocks = odot_grid(alg, xi, eta)?;
    validate_partition(alg, m, &blocks).map_err(JoinError::Invalid)
}

/// True iff `fine` refines `coarse`: the indices of `fine` split into
/// disjoint, jointly covering classes, one per coarse block, such that each
/// class folds (in index order) to its block.
pub fn refines(alg: &FiniteLAlgebra, fine: &Partition, coarse: &Partition) -> bool {
    // Backtracking over assignments of fine indices to coarse blocks, with
    // the partial fold per class as the search state. Non-orthogonal folds
    // prune the branch.
    let targets = coarse.blocks();
    let mut acc: Vec<Option<usize>> = alloc::vec![None; targets.len()];
    fn bt(
        alg: &FiniteLAlgebra,
        fine: &[usize],
        targets: &[usize],
        acc: &mut Vec<Option<usize>>,
        i: usize,
    ) -> bool {
        if i == fine.len() {
            return acc.iter().zip(targets).all(|(a, &t)| *a == Some(t));
        }
        for c in 0..targets.len() {
            let saved = acc[c];
            let next = match saved {
                None => Some(fine[i]),
                Some(s) => {
                    if orthogonal(alg, s, fine[i]).unwrap_or(false) {
                        Some(oplus(alg, s, fine[i]).expect("orthogonal"))
                    } else {
                        None
                    }
                }
            };
            if let Some(v) = next {
                acc[c] = Some(v);
                if bt(alg, fine, targets, acc, i + 1) {
                    acc[c] = saved;
                    return true;
                }
                acc[c] = saved;
            }
        }
        false
    }
    bt(alg, fine.blocks(), targets, &mut acc, 0)
}

/// The literal Bayes condition and the summation identity derived from it.
///
/// The two do not coincide: the literal condition can hold while the
/// decomposition fails (Łukasiewicz 3-chain, ξ=(h,h), y=h), and every proof
/// that invokes the Bayes property actually consumes the decomposition. The
/// hypothesis gates therefore use [`decomposition_holds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BayesCheck {
    /// m((⊕ᵢ xᵢ) ⊙ y) = m(y).
    pub literal: bool,
    /// Σᵢ m(xᵢ ⊙ y) = m(y).
    pub decomposition: bool,
}

/// Evaluate both Bayes-style conditions for one partition and element.
pub fn bayes_check(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    y: usize,
) -> Result<BayesCheck, GridError> {
    let total = fold_oplus(alg, xi.blocks()).expect("validated partition");
    let whole = odot(alg, total, y).map_err(|_| GridError::NotBounded)?;
    let literal = match whole.element(alg) {
        Some(e) => m.get(e) == m.get(y),
        None => false,
    };
    let mut sum = Rat::zero();
    for (i, &x) in xi.blocks().iter().enumerate() {
        let r = odot(alg, x, y).map_err(|_| GridError::NotBounded)?;
        match r.element(alg) {
            Some(e) => sum += m.get(e),
            None => {
                return Err(match r {
                    OdotResult::Ambiguous(c) => GridError::Ambiguous { i, j: 0, candidates: c },
                    _ => GridError::NoDifference { i, j: 0 },
                })
            }
        }
    }
    Ok(BayesCheck { literal, decomposition: sum == m.get(y) })
}

/// Σᵢ m(xᵢ ⊙ yⱼ) = m(yⱼ) for every block of η, zero-measure blocks included.
pub fn decomposition_holds(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
) -> Result<bool, GridError> {
    let grid = odot_grid(alg, xi, eta)?;
    let cols = eta.len();
    for (j, &y) in eta.blocks().iter().enumerate() {
        let mut sum = Rat::zero();
        for i in 0..xi.len() {
            sum += m.get(grid[i * cols + j]);
        }
        if sum != m.get(y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// ξ ⊆° η: every η-block has some ξ-block carrying its full measure under ⊙.
pub fn interior_subset(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
) -> Result<bool, GridError> {
    let grid = odot_grid(alg, xi, eta)?;
    let cols = eta.len();
    for (j, &y) in eta.blocks().iter().enumerate() {
        let hit = (0..xi.len()).any(|i| m.get(grid[i * cols + j]) == m.get(y));
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// ξ =° η: interior subset in both directions.
pub fn interior_equal(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
) -> Result<bool, GridError> {
    Ok(interior_subset(alg, m, xi, eta)? && interior_subset(alg, m, eta, xi)?)
}

/// m(xᵢ ⊙ yⱼ) = m(xᵢ)·m(yⱼ) for every pair.
pub fn independent(
    alg: &FiniteLAlgebra,
    m: &State,
    xi: &Partition,
    eta: &Partition,
) -> Result<bool, GridError> {
    let grid = odot_grid(alg, xi, eta)?;
    let cols = eta.len();
    for (i, &x) in xi.blocks().iter().enumerate() {
        for (j, &y) in eta.blocks().iter().enumerate() {
            if m.get(grid[i * cols + j]) != m.get(x) * m.get(y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Element-level properties of ⊙ on the whole carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdotLaws {
    /// Pairs where ⊙ is undefined (no or ambiguous difference).
    pub undefined_pairs: Vec<(usize, usize)>,
    /// x ⊙ y = y ⊙ x wherever both sides are defined.
    pub commutative: bool,
    /// x⊙(y⊙z) = (x⊙y)⊙(x⊙z) on all triples where every product is defined.
    pub left_self_distributive: bool,
    /// (x⊙y)⊙z = (x⊙z)⊙(y⊙z) likewise.
    pub right_self_distributive: bool,
}

impl OdotLaws {
    pub fn self_distributive(&self) -> bool {
        self.left_self_distributive || self.right_self_distributive
    }

    pub fn total(&self) -> bool {
        self.undefined_pairs.is_empty()
    }
}

/// Scan commutativity and both self-distributivity variants of ⊙.
pub fn odot_laws(alg: &FiniteLAlgebra) -> Result<OdotLaws, crate::error::Error> {
    let n = alg.n();
    let mut table: Vec<Option<usize>> = Vec::with_capacity(n * n);
    let mut undefined_pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let r = odot(alg, x, y)?;
            let e = r.element(alg);
            if e.is_none() {
                undefined_pairs.push((x, y));
            }
            table.push(e);
        }
    }
    let prod = |x: usize, y: usize| table[x * n + y];
    let mut commutative = true;
    for x in 0..n {
        for y in 0..n {
            if let (Some(a), Some(b)) = (prod(x, y), prod(y, x)) {
                if a != b {
                    commutative = false;
                }
            }
        }
    }
    let mut left = true;
    let mut right = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if let (Some(yz), Some(xy), Some(xz)) = (prod(y, z), prod(x, y), prod(x, z)) {
                    if let (Some(l), Some(r)) = (prod(x, yz), prod(xy, xz)) {
                        if l != r {
                            left = false;
                        }
                    }
                }
                if let (Some(xy), Some(xz), Some(yz)) = (prod(x, y), prod(x, z), prod(y, z)) {
                    if let (Some(l), Some(r)) = (prod(xy, z), prod(xz, yz)) {
                        if l != r {
                            right = false;
                        }
                    }
                }
            }
        }
    }
    Ok(OdotLaws {
        undefined_pairs,
        commutative,
        left_self_distributive: left,
        right_self_distributive: right,
    })
}

/// Every valid partition with at most `max_blocks` blocks, in lexicographic
/// block order. Exhaustive over block sequences; desk-scale carriers only.
pub fn enumerate_partitions(
    alg: &FiniteLAlgebra,
    m: &State,
    max_blocks: usize,
) -> Vec<Partition> {
    let mut out = Vec::new();
    let n = alg.n();
    let mut blocks: Vec<usize> = Vec::new();
    fn rec(
        alg: &FiniteLAlgebra,
        m: &State,
        n: usize,
        max: usize,
        blocks: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if !blocks.is_empty() {
            if let Ok(p) = validate_partition(alg, m, blocks) {
                out.push(p);
            }
        }
        if blocks.len() == max {
            return;
        }
        for b in 0..n {
            blocks.push(b);
            // only extend sequences whose fold is still defined
            if fold_oplus(alg, blocks).is_ok() {
                rec(alg, m, n, max, blocks, out);
            }
            blocks.pop();
        }
    }
    rec(alg, m, n, max_blocks, &mut blocks, &mut out);
    out
}
