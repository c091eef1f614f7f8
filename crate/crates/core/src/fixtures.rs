//! Bundled worked examples: the four reference tables, their distinguished
//! maps and states, and the Łukasiewicz chains used throughout the tests and
//! the verification harness.
//!
//! Element order matches the published tables, so witness indices printed by
//! the checkers line up with the names returned next to each algebra.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FiniteLAlgebra, Table};
use crate::state::{validate_state, State};
use crate::Rat;

/// A named fixture algebra.
pub struct Fixture {
    pub algebra: FiniteLAlgebra,
    pub names: &'static [&'static str],
}

impl Fixture {
    pub fn index_of(&self, name: &str) -> usize {
        self.names.iter().position(|&n| n == name).expect("fixture name")
    }
}

/// Four-element algebra {a,b,c,1}.
pub fn table_one() -> Fixture {
    let names: &'static [&'static str] = &["a", "b", "c", "1"];
    let (a, b, c, u) = (0, 1, 2, 3);
    let table = Table::from_rows(&[
        &[u, u, a, u],
        &[a, u, c, u],
        &[a, u, u, u],
        &[a, b, c, u],
    ])
    .unwrap();
    Fixture { algebra: FiniteLAlgebra::new(table, u).unwrap(), names }
}

/// Five-element bounded algebra {0,c,a,b,1}.
pub fn table_two() -> Fixture {
    let names: &'static [&'static str] = &["0", "c", "a", "b", "1"];
    let (z, c, a, b, u) = (0, 1, 2, 3, 4);
    let table = Table::from_rows(&[
        &[u, u, u, u, u],
        &[z, u, u, u, u],
        &[z, b, u, b, u],
        &[z, a, a, u, u],
        &[z, c, a, b, u],
    ])
    .unwrap();
    Fixture { algebra: FiniteLAlgebra::new(table, u).unwrap(), names }
}

/// The unit-swapping self-map on [`table_two`] that is a homomorphism.
pub fn table_two_swap_map() -> Vec<usize> {
    // 0->0, c->c, a->b, b->a, 1->1 in the table_two element order
    vec![0, 1, 3, 2, 4]
}

/// Five-element algebra {1,a,b,c,d} carrying the reference closure operator.
pub fn table_three() -> Fixture {
    let names: &'static [&'static str] = &["1", "a", "b", "c", "d"];
    let (u, a, b, c, d) = (0, 1, 2, 3, 4);
    let table = Table::from_rows(&[
        &[u, a, b, c, d],
        &[u, u, b, c, b],
        &[u, a, u, b, a],
        &[u, a, u, u, a],
        &[u, u, u, b, u],
    ])
    .unwrap();
    Fixture { algebra: FiniteLAlgebra::new(table, u).unwrap(), names }
}

/// The reference closure operator on [`table_three`]:
/// a,1 -> 1; b,d -> b; c -> c.
pub fn table_three_closure() -> Vec<usize> {
    vec![0, 0, 2, 3, 2]
}

/// Four-element table {0,a,b,1} that violates axiom (5) at (a,b); only the
/// lenient constructor accepts it.
pub fn table_four_lenient() -> Fixture {
    let names: &'static [&'static str] = &["0", "a", "b", "1"];
    let table = table_four_raw();
    Fixture { algebra: FiniteLAlgebra::new_lenient(table, 3).unwrap(), names }
}

/// The raw table behind [`table_four_lenient`], for axiom-failure tests.
pub fn table_four_raw() -> Table {
    let (z, u) = (0, 3);
    Table::from_rows(&[
        &[u, u, u, u],
        &[z, u, u, u],
        &[z, u, u, u],
        &[z, 1, 2, u],
    ])
    .unwrap()
}

/// The reference state on [`table_four_lenient`]: m(0)=0, m(a)=m(b)=m(1)=1.
pub fn table_four_state() -> State {
    let alg = table_four_lenient().algebra;
    let one = Rat::new(1, 1);
    let zero = Rat::new(0, 1);
    validate_state(&alg, &[zero, one, one, one]).unwrap()
}

/// The unique state on [`table_two`]: m(0)=0, everything else 1.
pub fn table_two_state() -> State {
    let alg = table_two().algebra;
    let one = Rat::new(1, 1);
    let zero = Rat::new(0, 1);
    validate_state(&alg, &[zero, one, one, one, one]).unwrap()
}

/// The Łukasiewicz chain with k+1 elements 0, 1/k, ..., 1 and
/// x→y = min(1, 1−x+y). Element i carries the value i/k.
pub fn lukasiewicz_chain(k: usize) -> FiniteLAlgebra {
    assert!(k >= 1);
    let n = k + 1;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(core::cmp::min(k, k - i + j));
        }
    }
    FiniteLAlgebra::new(Table::new(n, cells).unwrap(), k).unwrap()
}

/// The canonical faithful state m(i/k) = i/k on [`lukasiewicz_chain`].
pub fn lukasiewicz_state(k: usize) -> State {
    let alg = lukasiewicz_chain(k);
    let values: Vec<Rat> = (0..=k).map(|i| Rat::new(i as i64, k as i64)).collect();
    validate_state(&alg, &values).unwrap()
}

/// The two-element Boolean chain {0,1}.
pub fn boolean_chain() -> FiniteLAlgebra {
    lukasiewicz_chain(1)
}
