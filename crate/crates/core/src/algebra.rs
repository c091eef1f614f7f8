//! Finite L-algebras as Cayley tables.
//!
//! An L-algebra is a set with a binary operation `→` and a logical unit `1`
//! satisfying
//!
//! ```text
//! (1) x→x = 1            (2) x→1 = 1           (3) 1→x = x
//! (4) (x→y)→(x→z) = (y→x)→(y→z)
//! (5) x→y = y→x = 1  implies  x = y
//! ```
//!
//! Elements are dense indices `0..n`; `arrow[x][y]` holds `x→y` with the row
//! as left argument. Construction is validating: a [`FiniteLAlgebra`] value
//! cannot exist with failing axioms. The lenient constructor skips axiom (5)
//! only, so known antisymmetry-violating tables can still be studied; the
//! flag is carried on the value and stamped into downstream reports.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::Error;

/// An unvalidated n-by-n operation table over elements `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

/// Structural defects of a raw table, distinct from axiom failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    /// Cell count is not a perfect square of the carrier size.
    NotSquare { n: usize, cells: usize },
    /// A cell names an element outside `0..n`.
    OutOfRange { x: usize, y: usize, value: usize },
    /// The designated unit is outside `0..n`.
    UnitOutOfRange { unit: usize, n: usize },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::NotSquare { n, cells } => {
                write!(f, "table over {n} elements needs {} cells, got {cells}", n * n)
            }
            TableError::OutOfRange { x, y, value } => {
                write!(f, "cell ({x},{y}) holds {value}, outside the carrier")
            }
            TableError::UnitOutOfRange { unit, n } => {
                write!(f, "unit {unit} outside carrier 0..{n}")
            }
        }
    }
}

impl Table {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, TableError> {
        if cells.len() != n * n {
            return Err(TableError::NotSquare { n, cells: cells.len() });
        }
        for x in 0..n {
            for y in 0..n {
                let v = cells[x * n + y];
                if v >= n {
                    return Err(TableError::OutOfRange { x, y, value: v });
                }
            }
        }
        Ok(Table { n, cells })
    }

    pub fn from_rows(rows: &[&[usize]]) -> Result<Self, TableError> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(TableError::NotSquare { n, cells: row.len() * n });
            }
            cells.extend_from_slice(row);
        }
        Table::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// All elements that act as a logical unit for this table.
    ///
    /// On a valid L-algebra the result is a singleton; the checker exists so
    /// that the uniqueness claim can be verified rather than assumed.
    pub fn logical_units(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| {
                (0..self.n).all(|x| {
                    self.get(x, x) == u && self.get(x, u) == u && self.get(u, x) == x
                })
            })
            .collect()
    }
}

/// A single axiom failure: the axiom index (1-5) and its lexicographically
/// first witness tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: u8,
    pub witness: Vec<usize>,
}

/// Outcome of checking axioms (1)-(5) on a raw table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated_axioms(&self) -> Vec<u8> {
        self.violations.iter().map(|v| v.axiom).collect()
    }
}

fn check(table: &Table, unit: usize, include_antisymmetry: bool) -> AxiomReport {
    let n = table.n;
    let mut violations = Vec::new();
    if let Some(x) = (0..n).find(|&x| table.get(x, x) != unit) {
        violations.push(Violation { axiom: 1, witness: alloc::vec![x] });
    }
    if let Some(x) = (0..n).find(|&x| table.get(x, unit) != unit) {
        violations.push(Violation { axiom: 2, witness: alloc::vec![x] });
    }
    if let Some(x) = (0..n).find(|&x| table.get(unit, x) != x) {
        violations.push(Violation { axiom: 3, witness: alloc::vec![x] });
    }
    'cycloid: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = table.get(table.get(x, y), table.get(x, z));
                let rhs = table.get(table.get(y, x), table.get(y, z));
                if lhs != rhs {
                    violations.push(Violation { axiom: 4, witness: alloc::vec![x, y, z] });
                    break 'cycloid;
                }
            }
        }
    }
    if include_antisymmetry {
        'antisym: for x in 0..n {
            for y in 0..n {
                if x != y && table.get(x, y) == unit && table.get(y, x) == unit {
                    violations.push(Violation { axiom: 5, witness: alloc::vec![x, y] });
                    break 'antisym;
                }
            }
        }
    }
    AxiomReport { violations }
}

/// Check axioms (1)-(5) on a raw table against the designated unit.
pub fn check_axioms(table: &Table, unit: usize) -> Result<AxiomReport, TableError> {
    if unit >= table.n {
        return Err(TableError::UnitOutOfRange { unit, n: table.n });
    }
    Ok(check(table, unit, true))
}

/// Like [`check_axioms`] but with axiom (5) skipped (lenient mode).
pub fn check_axioms_lenient(table: &Table, unit: usize) -> Result<AxiomReport, TableError> {
    if unit >= table.n {
        return Err(TableError::UnitOutOfRange { unit, n: table.n });
    }
    Ok(check(table, unit, false))
}

/// A validated finite L-algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLAlgebra {
    n: usize,
    unit: usize,
    arrow: Vec<usize>,
    zero: Option<usize>,
    lenient: bool,
}

/// Why a table could not be promoted to a [`FiniteLAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    Structural(TableError),
    Axioms(AxiomReport),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Structural(e) => write!(f, "{e}"),
            AlgebraError::Axioms(report) => {
                write!(f, "axiom violations:")?;
                for v in &report.violations {
                    write!(f, " ({}) at {:?}", v.axiom, v.witness)?;
                }
                Ok(())
            }
        }
    }
}

impl From<TableError> for AlgebraError {
    fn from(e: TableError) -> Self {
        AlgebraError::Structural(e)
    }
}

impl FiniteLAlgebra {
    /// Validating constructor: all five axioms must hold.
    pub fn new(table: Table, unit: usize) -> Result<Self, AlgebraError> {
        let report = check_axioms(&table, unit)?;
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(Self::build(table, unit, false))
    }

    /// Lenient constructor: axiom (5) is skipped. The resulting value is
    /// flagged and every report derived from it carries the flag.
    pub fn new_lenient(table: Table, unit: usize) -> Result<Self, AlgebraError> {
        let report = check_axioms_lenient(&table, unit)?;
        if !report.passed() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(Self::build(table, unit, true))
    }

    fn build(table: Table, unit: usize, lenient: bool) -> Self {
        let mut alg = FiniteLAlgebra { n: table.n, unit, arrow: table.cells, zero: None, lenient };
        let mut least = (0..alg.n).filter(|&z| (0..alg.n).all(|x| alg.leq(z, x)));
        alg.zero = match (least.next(), least.next()) {
            (Some(z), None) => Some(z),
            _ => None,
        };
        alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// The least element, when one exists (then the algebra is bounded).
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_lenient(&self) -> bool {
        self.lenient
    }

    pub fn elements(&self) -> Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn arrow(&self, x: usize, y: usize) -> usize {
        self.arrow[x * self.n + y]
    }

    /// The induced order: x <= y iff x→y = 1.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.arrow(x, y) == self.unit
    }

    /// x→0, defined on bounded algebras only.
    pub fn complement(&self, x: usize) -> Result<usize, Error> {
        let zero = self.zero.ok_or(Error::NotBounded)?;
        Ok(self.arrow(x, zero))
    }

    pub fn table(&self) -> Table {
        Table { n: self.n, cells: self.arrow.clone() }
    }

    /// Materialize the full induced order relation.
    pub fn induced_order(&self) -> OrderRelation {
        let mut pairs = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.leq(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        OrderRelation { n: self.n, pairs }
    }

    /// The unique least element, if any. Populated as [`zero`](Self::zero)
    /// at construction; in lenient mode ties are possible and yield `None`.
    pub fn least_element(&self) -> Option<usize> {
        self.zero
    }

    /// True iff the subset contains the unit and is closed under the arrow.
    pub fn is_subalgebra(&self, subset: &[usize]) -> bool {
        let member = |e: usize| subset.contains(&e);
        member(self.unit)
            && subset
                .iter()
                .all(|&x| subset.iter().all(|&y| member(self.arrow(x, y))))
    }
}

/// The induced order as an explicit pair set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRelation {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl OrderRelation {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs.iter().all(|&(x, y)| x == y || !self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs
            .iter()
            .all(|&(x, y)| self.pairs.iter().all(|&(p, z)| p != y || self.contains(x, z)))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }
}

/// True iff `map` is an L-algebra homomorphism `src -> dst`: it fixes the
/// unit and commutes with the arrow.
pub fn is_homomorphism(
    map: &[usize],
    src: &FiniteLAlgebra,
    dst: &FiniteLAlgebra,
) -> Result<bool, Error> {
    if map.len() != src.n() {
        return Err(Error::MismatchedAlgebra { expected: src.n(), got: map.len() });
    }
    if map.iter().any(|&v| v >= dst.n()) {
        return Err(Error::MismatchedAlgebra { expected: dst.n(), got: map.len() });
    }
    if map[src.unit()] != dst.unit() {
        return Ok(false);
    }
    for x in src.elements() {
        for y in src.elements() {
            if map[src.arrow(x, y)] != dst.arrow(map[x], map[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-law outcome of the derived-law scan. Each field carries the
/// lexicographically first counterexample, or `None` when the law holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedLawsReport {
    /// x→(y→x) = y→(x→y). Not a consequence of the axioms: it fails on
    /// perfectly valid tables, so callers must treat a witness here as a
    /// property of the algebra, not a defect of it.
    pub arrow_exchange: Option<(usize, usize)>,
    /// (x→y)→1 = (x→1)→(y→1) and 1→(x→y) = (1→x)→(1→y).
    pub unit_image_laws: Option<(usize, usize)>,
    /// x <= y implies z→x <= z→y.
    pub arrow_monotone: Option<(usize, usize, usize)>,
    /// The three conditions of the equivalence corollary, each evaluated as
    /// a universally quantified property of the algebra.
    pub k_laws: [bool; 3],
}

impl DerivedLawsReport {
    /// The three K-law conditions must agree (they are claimed equivalent).
    pub fn k_laws_equivalent(&self) -> bool {
        self.k_laws[0] == self.k_laws[1] && self.k_laws[1] == self.k_laws[2]
    }

    /// True when every law that is a theorem of the axioms holds.
    /// `arrow_exchange` is deliberately excluded: it is not a theorem.
    pub fn theorems_hold(&self) -> bool {
        self.unit_image_laws.is_none() && self.arrow_monotone.is_none() && self.k_laws_equivalent()
    }
}

/// Exhaustively scan the derived laws on all tuples.
pub fn check_derived_laws(alg: &FiniteLAlgebra) -> DerivedLawsReport {
    let n = alg.n();
    let u = alg.unit();

    let mut arrow_exchange = None;
    'exchange: for x in 0..n {
        for y in 0..n {
            if alg.arrow(x, alg.arrow(y, x)) != alg.arrow(y, alg.arrow(x, y)) {
                arrow_exchange = Some((x, y));
                break 'exchange;
            }
        }
    }

    let mut unit_image_laws = None;
    'unitlaws: for x in 0..n {
        for y in 0..n {
            let first = alg.arrow(alg.arrow(x, y), u) == alg.arrow(alg.arrow(x, u), alg.arrow(y, u));
            let second = alg.arrow(u, alg.arrow(x, y)) == alg.arrow(alg.arrow(u, x), alg.arrow(u, y));
            if !(first && second) {
                unit_image_laws = Some((x, y));
                break 'unitlaws;
            }
        }
    }

    let mut arrow_monotone = None;
    'monotone: for x in 0..n {
        for y in 0..n {
            if !alg.leq(x, y) {
                continue;
            }
            for z in 0..n {
                if !alg.leq(alg.arrow(z, x), alg.arrow(z, y)) {
                    arrow_monotone = Some((x, y, z));
                    break 'monotone;
                }
            }
        }
    }

    let k1 = (0..n).all(|x| (0..n).all(|y| alg.leq(x, alg.arrow(y, x))));
    let k2 = (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| !alg.leq(x, z) || alg.leq(alg.arrow(z, y), alg.arrow(x, y)))
        })
    });
    let k3 = (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let xy_z = alg.arrow(alg.arrow(x, y), z);
                alg.leq(alg.arrow(xy_z, z), alg.arrow(xy_z, alg.arrow(alg.arrow(y, x), z)))
            })
        })
    });

    DerivedLawsReport { arrow_exchange, unit_image_laws, arrow_monotone, k_laws: [k1, k2, k3] }
}
