//! Independent brute-force references for the library's search routines.
//!
//! These deliberately share no code with the optimized paths they check:
//! [`naive_l_algebras`] scans the full table space cell by cell, and
//! [`naive_closure_operators`] scans the full map space, so the pruned
//! enumerators can be tested for set equality against them.

use alloc::vec::Vec;

use crate::algebra::{check_axioms, FiniteLAlgebra, Table};
use crate::closure::is_closure_operator;

/// All L-algebra tables on 0..n with unit n-1, found by generating every
/// n^(n*n) table and filtering on the axioms. Practical for n <= 3.
pub fn naive_l_algebras(n: usize) -> Vec<Table> {
    assert!(n >= 1);
    let unit = n - 1;
    let cells_total = n * n;
    let mut out = Vec::new();
    let mut cells = alloc::vec![0usize; cells_total];
    loop {
        if let Ok(table) = Table::new(n, cells.clone()) {
            if check_axioms(&table, unit).unwrap().passed() {
                out.push(table);
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == cells_total {
                return out;
            }
            cells[i] += 1;
            if cells[i] < n {
                break;
            }
            cells[i] = 0;
            i += 1;
        }
    }
}

/// All closure operators found by filtering every self-map of the carrier.
pub fn naive_closure_operators(alg: &FiniteLAlgebra) -> Vec<Vec<usize>> {
    let n = alg.n();
    let mut out = Vec::new();
    let mut map = alloc::vec![0usize; n];
    loop {
        if is_closure_operator(alg, &map).expect("same carrier") {
            out.push(map.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}
