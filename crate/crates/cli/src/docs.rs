//! JSON interchange documents and their promotion to validated core values.
//!
//! Element names are arbitrary nonempty strings; rationals travel as `"p/q"`
//! or integer strings so no float drift can enter a document. Nested
//! references (`"algebra": ...`, `"state": ...`) accept either an inline
//! object or a path, resolved relative to the referencing file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use lalg_core::algebra::{AlgebraError, FiniteLAlgebra, Table};
use lalg_core::partition::{validate_partition, Partition, PartitionError};
use lalg_core::state::{validate_state, State, StateError};
use lalg_core::Rat;

/// Structural input errors; these exit with status 2, distinct from claim
/// failures.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("failed to read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid json in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("duplicate element name {name:?}")]
    DuplicateElement { name: String },
    #[error("element names must be nonempty")]
    EmptyElementName,
    #[error("unknown element {name:?}")]
    UnknownElement { name: String },
    #[error("no value given for element {name:?}")]
    MissingElement { name: String },
    #[error("arrow table is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("declared zero {name:?} is not the least element")]
    ZeroMismatch { name: String },
    #[error("bad rational {text:?} (use p/q or an integer)")]
    BadRational { text: String },
    #[error("not an L-algebra: {detail}")]
    AlgebraInvalid { detail: String },
    #[error("not a state: {detail}")]
    StateInvalid { detail: String },
    #[error("not a partition: {detail}")]
    PartitionInvalid { detail: String },
    #[error("not a dynamical system: {detail}")]
    SystemInvalid { detail: String },
    #[error("documents reference different algebras")]
    AlgebraMismatch,
    #[error("partition state differs from the system state")]
    StateMismatch,
}

/// Parse `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat, DocError> {
    let bad = || DocError::BadRational { text: text.to_string() };
    match text.split_once('/') {
        Some((num, den)) => {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            let d: i64 = den.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: i64 = text.trim().parse().map_err(|_| bad())?;
            Ok(Rat::new(n, 1))
        }
    }
}

/// Render a rational back to its document form.
pub fn format_rational(r: Rat) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inline object or a path to one.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PathOrInline<T> {
    Path(String),
    Inline(T),
}

impl<T: DeserializeOwned> PathOrInline<T> {
    /// Resolve to the inline value, reading the path relative to `base`.
    pub fn resolve(self, base: &Path) -> Result<(T, PathBuf), DocError> {
        match self {
            PathOrInline::Inline(v) => Ok((v, base.to_path_buf())),
            PathOrInline::Path(p) => {
                let path = base.join(&p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|source| DocError::Io { path: path.clone(), source })?;
                let v = serde_json::from_str(&text)
                    .map_err(|source| DocError::Json { path: path.clone(), source })?;
                let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                Ok((v, dir))
            }
        }
    }
}

/// Read and deserialize one document file.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<(T, PathBuf), DocError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| DocError::Io { path: path.to_path_buf(), source })?;
    let v = serde_json::from_str(&text)
        .map_err(|source| DocError::Json { path: path.to_path_buf(), source })?;
    Ok((v, path.parent().map(Path::to_path_buf).unwrap_or_default()))
}

/// `{"elements": [...], "unit": "1", "zero": "0", "arrow": [[...]]}` with
/// `arrow[i][j]` naming elements[i] → elements[j].
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct AlgebraDoc {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    pub arrow: Vec<Vec<String>>,
}

/// A validated algebra together with its element names.
#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub algebra: FiniteLAlgebra,
    pub names: Vec<String>,
}

impl NamedAlgebra {
    pub fn index(&self, name: &str) -> Result<usize, DocError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| DocError::UnknownElement { name: name.to_string() })
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names_of(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.names[i].clone()).collect()
    }
}

impl AlgebraDoc {
    fn index_map(&self) -> Result<BTreeMap<&str, usize>, DocError> {
        let mut map = BTreeMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if name.is_empty() {
                return Err(DocError::EmptyElementName);
            }
            if map.insert(name.as_str(), i).is_some() {
                return Err(DocError::DuplicateElement { name: name.clone() });
            }
        }
        Ok(map)
    }

    /// The raw table and unit index, before any axiom checking.
    pub fn to_table(&self) -> Result<(Table, usize), DocError> {
        let index = self.index_map()?;
        let n = self.elements.len();
        let unit = *index
            .get(self.unit.as_str())
            .ok_or_else(|| DocError::UnknownElement { name: self.unit.clone() })?;
        let mut cells = Vec::with_capacity(n * n);
        if self.arrow.len() != n {
            return Err(DocError::NotSquare { row: 0, got: self.arrow.len(), expected: n });
        }
        for (r, row) in self.arrow.iter().enumerate() {
            if row.len() != n {
                return Err(DocError::NotSquare { row: r, got: row.len(), expected: n });
            }
            for cell in row {
                cells.push(
                    *index
                        .get(cell.as_str())
                        .ok_or_else(|| DocError::UnknownElement { name: cell.clone() })?,
                );
            }
        }
        let table = Table::new(n, cells).expect("cells validated by index map");
        Ok((table, unit))
    }

    /// Validate the axioms and build the algebra; `lenient` skips
    /// antisymmetry. A declared zero must match the computed least element.
    pub fn build(&self, lenient: bool) -> Result<NamedAlgebra, DocError> {
        let (table, unit) = self.to_table()?;
        let result = if lenient {
            FiniteLAlgebra::new_lenient(table, unit)
        } else {
            FiniteLAlgebra::new(table, unit)
        };
        let algebra = result.map_err(|e| DocError::AlgebraInvalid {
            detail: describe_algebra_error(&e, &self.elements),
        })?;
        if let Some(zero) = &self.zero {
            let index = self.index_map()?;
            let z = *index
                .get(zero.as_str())
                .ok_or_else(|| DocError::UnknownElement { name: zero.clone() })?;
            if algebra.zero() != Some(z) {
                return Err(DocError::ZeroMismatch { name: zero.clone() });
            }
        }
        Ok(NamedAlgebra { algebra, names: self.elements.clone() })
    }

    pub fn from_named(named: &NamedAlgebra) -> AlgebraDoc {
        let alg = &named.algebra;
        AlgebraDoc {
            elements: named.names.clone(),
            unit: named.names[alg.unit()].clone(),
            zero: alg.zero().map(|z| named.names[z].clone()),
            arrow: (0..alg.n())
                .map(|x| (0..alg.n()).map(|y| named.names[alg.arrow(x, y)].clone()).collect())
                .collect(),
        }
    }
}

pub fn describe_algebra_error(e: &AlgebraError, names: &[String]) -> String {
    match e {
        AlgebraError::Structural(t) => format!("{t}"),
        AlgebraError::Axioms(report) => {
            let parts: Vec<String> = report
                .violations
                .iter()
                .map(|v| {
                    let witness: Vec<&str> =
                        v.witness.iter().map(|&i| names[i].as_str()).collect();
                    format!("axiom ({}) fails at ({})", v.axiom, witness.join(","))
                })
                .collect();
            parts.join("; ")
        }
    }
}

/// `{"algebra": ..., "map": {"a": "1", ...}}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct OperatorDoc {
    pub algebra: PathOrInline<AlgebraDoc>,
    pub map: BTreeMap<String, String>,
}

impl OperatorDoc {
    pub fn build(self, base: &Path, lenient: bool) -> Result<(NamedAlgebra, Vec<usize>), DocError> {
        let (doc, _) = self.algebra.resolve(base)?;
        let named = doc.build(lenient)?;
        let map = resolve_total_map(&self.map, &named)?;
        Ok((named, map))
    }
}

/// Resolve a name→name map into a total index vector over the carrier.
pub fn resolve_total_map(
    map: &BTreeMap<String, String>,
    named: &NamedAlgebra,
) -> Result<Vec<usize>, DocError> {
    let mut out = Vec::with_capacity(named.names.len());
    for name in &named.names {
        let target = map
            .get(name)
            .ok_or_else(|| DocError::MissingElement { name: name.clone() })?;
        out.push(named.index(target)?);
    }
    Ok(out)
}

/// `{"algebra": ..., "values": {"0": "0", "a": "1/2", ...}}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct StateDoc {
    pub algebra: PathOrInline<AlgebraDoc>,
    pub values: BTreeMap<String, String>,
}

impl StateDoc {
    pub fn build(self, base: &Path, lenient: bool) -> Result<(NamedAlgebra, State), DocError> {
        let (doc, _) = self.algebra.resolve(base)?;
        let named = doc.build(lenient)?;
        let state = build_state(&self.values, &named)?;
        Ok((named, state))
    }
}

pub fn build_state(
    values: &BTreeMap<String, String>,
    named: &NamedAlgebra,
) -> Result<State, DocError> {
    let mut rats = Vec::with_capacity(named.names.len());
    for name in &named.names {
        let text = values
            .get(name)
            .ok_or_else(|| DocError::MissingElement { name: name.clone() })?;
        rats.push(parse_rational(text)?);
    }
    validate_state(&named.algebra, &rats)
        .map_err(|e| DocError::StateInvalid { detail: describe_state_error(&e, &named.names) })
}

pub fn describe_state_error(e: &StateError, names: &[String]) -> String {
    use lalg_core::state::StateViolation as V;
    match e {
        StateError::NotBounded => "algebra has no least element".to_string(),
        StateError::WrongLength { expected, got } => {
            format!("expected {expected} values, got {got}")
        }
        StateError::Violations(vs) => vs
            .iter()
            .map(|v| match v {
                V::UnitNotOne => "m(1) != 1".to_string(),
                V::OutOfRange { x } => format!("m({}) outside [0,1]", names[*x]),
                V::NotAdditive { x, y } => {
                    format!("additivity fails at ({},{})", names[*x], names[*y])
                }
                V::NotMonotone { x, y } => {
                    format!("monotonicity fails at ({},{})", names[*x], names[*y])
                }
            })
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// `{"state": ..., "blocks": ["0", "a"]}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct PartitionDoc {
    pub state: PathOrInline<StateDoc>,
    pub blocks: Vec<String>,
}

impl PartitionDoc {
    pub fn build(
        self,
        base: &Path,
        lenient: bool,
    ) -> Result<(NamedAlgebra, State, Partition), DocError> {
        let (state_doc, dir) = self.state.resolve(base)?;
        let (named, state) = state_doc.build(&dir, lenient)?;
        let blocks: Vec<usize> = self
            .blocks
            .iter()
            .map(|b| named.index(b))
            .collect::<Result<_, _>>()?;
        let partition = validate_partition(&named.algebra, &state, &blocks).map_err(|e| {
            DocError::PartitionInvalid { detail: describe_partition_error(&e) }
        })?;
        Ok((named, state, partition))
    }
}

pub fn describe_partition_error(e: &PartitionError) -> String {
    match e {
        PartitionError::Empty => "no blocks".to_string(),
        PartitionError::NotBounded => "algebra has no least element".to_string(),
        PartitionError::OrthogonalityViolation { index } => {
            format!("cumulative fold not orthogonal to block {index}")
        }
        PartitionError::MeasureNotOne { total } => {
            format!("total measure {} != 1", format_rational(*total))
        }
    }
}

/// `{"algebra": ..., "T": {...}, "state": {...}}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct SystemDoc {
    pub algebra: PathOrInline<AlgebraDoc>,
    #[serde(rename = "T")]
    pub map: BTreeMap<String, String>,
    pub state: BTreeMap<String, String>,
}

impl SystemDoc {
    pub fn build(
        self,
        base: &Path,
        lenient: bool,
    ) -> Result<(NamedAlgebra, lalg_core::dynamics::LSystem), DocError> {
        let (doc, _) = self.algebra.resolve(base)?;
        let named = doc.build(lenient)?;
        let map = resolve_total_map(&self.map, &named)?;
        let state = build_state(&self.state, &named)?;
        let system = lalg_core::dynamics::LSystem::validate(named.algebra.clone(), map, state)
            .map_err(|vs| DocError::SystemInvalid {
                detail: describe_system_violations(&vs, &named.names),
            })?;
        Ok((named, system))
    }
}

pub fn describe_system_violations(
    vs: &[lalg_core::dynamics::SystemViolation],
    names: &[String],
) -> String {
    use lalg_core::dynamics::SystemViolation as V;
    vs.iter()
        .map(|v| match v {
            V::ArrowNotPreserved { a, b } => {
                format!("T(a→b) != T(a)→T(b) at ({},{})", names[*a], names[*b])
            }
            V::UnitNotFixed => "T(1) != 1".to_string(),
            V::MeasureNotPreserved { a } => format!("m(T({})) != m({})", names[*a], names[*a]),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_round_trips() {
        assert_eq!(parse_rational("1/2").unwrap(), Rat::new(1, 2));
        assert_eq!(parse_rational("3").unwrap(), Rat::new(3, 1));
        assert_eq!(parse_rational(" 2 / 4 ").unwrap(), Rat::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(Rat::new(1, 2)), "1/2");
        assert_eq!(format_rational(Rat::new(2, 1)), "2");
    }

    #[test]
    fn algebra_doc_builds_and_reports_unknown_names() {
        let doc: AlgebraDoc = serde_json::from_str(
            r#"{"elements":["0","1"],"unit":"1","zero":"0","arrow":[["1","1"],["0","1"]]}"#,
        )
        .unwrap();
        let named = doc.build(false).unwrap();
        assert_eq!(named.algebra.n(), 2);
        assert_eq!(named.algebra.zero(), Some(0));
        assert!(named.index("missing").is_err());

        let bad: AlgebraDoc = serde_json::from_str(
            r#"{"elements":["0","1"],"unit":"1","arrow":[["1","x"],["0","1"]]}"#,
        )
        .unwrap();
        assert!(matches!(bad.build(false), Err(DocError::UnknownElement { .. })));
    }

    #[test]
    fn axiom_failure_is_reported_with_names() {
        // the antisymmetry-violating reference table
        let doc: AlgebraDoc = serde_json::from_str(
            r#"{"elements":["0","a","b","1"],"unit":"1",
                "arrow":[["1","1","1","1"],["0","1","1","1"],["0","1","1","1"],["0","a","b","1"]]}"#,
        )
        .unwrap();
        let err = doc.build(false).unwrap_err();
        let text = format!("{err}");
        assert!(text.contains("axiom (5) fails at (a,b)"), "{text}");
        // lenient mode accepts it
        assert!(doc.build(true).is_ok());
    }

    #[test]
    fn invalid_system_maps_are_rejected_with_the_failing_condition() {
        let doc: SystemDoc = serde_json::from_str(
            r#"{"algebra": {"elements":["0","h","1"],"unit":"1","zero":"0",
                 "arrow":[["1","1","1"],["h","1","1"],["0","h","1"]]},
                "T": {"0":"0","h":"1","1":"1"},
                "state": {"0":"0","h":"1/2","1":"1"}}"#,
        )
        .unwrap();
        // T(h)=1 is arrow-preserving on some pairs but breaks measure
        let err = doc.build(Path::new("."), false).unwrap_err();
        let text = format!("{err}");
        assert!(text.contains("not a dynamical system"), "{text}");
        assert!(text.contains("m(T(h)) != m(h)"), "{text}");
    }

    #[test]
    fn partition_doc_with_inline_state_builds() {
        let doc: PartitionDoc = serde_json::from_str(
            r#"{"state": {"algebra": {"elements":["0","a","b","1"],"unit":"1",
                          "arrow":[["1","1","1","1"],["0","1","1","1"],["0","1","1","1"],["0","a","b","1"]]},
                          "values": {"0":"0","a":"1","b":"1","1":"1"}},
                "blocks": ["0","a"]}"#,
        )
        .unwrap();
        let (named, _state, partition) = doc.build(Path::new("."), true).unwrap();
        assert_eq!(named.names_of(partition.blocks()), vec!["0", "a"]);
    }
}
