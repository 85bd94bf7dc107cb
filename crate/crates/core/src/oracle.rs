//! Brute-force ground truth on finite tables: axiom checking by definition and
//! exhaustive enumeration of small odd and even involutive chains.
//!
//! Nothing here uses the bunch representation.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::table::CayleyTable;

pub const DEFAULT_BOUND: usize = 7;
pub const MAX_BOUND: usize = 9;

/// `max{v : x·v ≤ z}`, by scanning the carrier.
pub fn brute_residuum(tbl: &CayleyTable, x: usize, z: usize) -> Result<usize> {
    (0..tbl.len()).rev().find(|&v| tbl.mul(x, v) <= z).ok_or(Error::NotResiduated { x, z })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Commutativity,
    Associativity,
    Unit,
    Monotonicity,
    Residuation,
    Involution,
    OddOrEven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Carrier indices exhibiting the failure.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// `None` when the table is neither odd nor even.
    pub kind: Option<TableKind>,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self, axiom: Axiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Some(k) => write!(f, "{k:?}")?,
            None => write!(f, "neither odd nor even")?,
        }
        if self.is_ok() {
            return write!(f, ", all axioms hold");
        }
        for v in &self.violations {
            write!(f, "\n  {:?} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// Check every FL_e-chain axiom exhaustively; the carrier order is index
/// order, so the lattice is a chain by construction. At most one witness is
/// kept per axiom.
pub fn check_flea_axioms(tbl: &CayleyTable) -> AxiomReport {
    let n = tbl.len();
    let mut violations = Vec::new();
    let mut fail = |axiom: Axiom, witness: Vec<usize>| {
        if !violations.iter().any(|v: &AxiomViolation| v.axiom == axiom) {
            violations.push(AxiomViolation { axiom, witness });
        }
    };
    let (e, f) = (tbl.unit(), tbl.falsum());
    for x in 0..n {
        if tbl.mul(e, x) != x {
            fail(Axiom::Unit, vec![x]);
        }
        for y in 0..n {
            if tbl.mul(x, y) != tbl.mul(y, x) {
                fail(Axiom::Commutativity, vec![x, y]);
            }
            if y + 1 < n && tbl.mul(x, y) > tbl.mul(x, y + 1) {
                fail(Axiom::Monotonicity, vec![x, y, y + 1]);
            }
            for z in 0..n {
                if tbl.mul(tbl.mul(x, y), z) != tbl.mul(x, tbl.mul(y, z)) {
                    fail(Axiom::Associativity, vec![x, y, z]);
                }
            }
        }
        // {v : xv ≤ z} must be a nonempty down-set; then its top is x → z.
        for z in 0..n {
            match brute_residuum(tbl, x, z) {
                Ok(r) => {
                    if let Some(v) = (0..r).find(|&v| tbl.mul(x, v) > z) {
                        fail(Axiom::Residuation, vec![x, z, v]);
                    }
                }
                Err(_) => fail(Axiom::Residuation, vec![x, z]),
            }
        }
    }
    let neg = |x: usize| brute_residuum(tbl, x, f).ok();
    for x in 0..n {
        if neg(x).and_then(neg) != Some(x) {
            fail(Axiom::Involution, vec![x]);
        }
    }
    let kind = if f == e {
        Some(TableKind::Odd)
    } else if f + 1 == e {
        Some(TableKind::Even)
    } else {
        fail(Axiom::OddOrEven, vec![e, f]);
        None
    };
    AxiomReport { kind, violations }
}

/// Every odd or even involutive FL_e-chain on `n` elements, up to
/// isomorphism, for `n ≤ DEFAULT_BOUND`.
pub fn enumerate_finite_chains(n: usize) -> Result<Vec<CayleyTable>> {
    enumerate_finite_chains_with_bound(n, DEFAULT_BOUND)
}

/// As [`enumerate_finite_chains`] with a raised bound (at most [`MAX_BOUND`]).
pub fn enumerate_finite_chains_with_bound(n: usize, bound: usize) -> Result<Vec<CayleyTable>> {
    let bound = bound.min(MAX_BOUND);
    if n > bound {
        return Err(Error::BoundExceeded { size: n, bound });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Order-isomorphisms of finite chains are identities, so distinct tables
    // are distinct up to isomorphism.
    let mut branches: Vec<(usize, usize)> = (0..n).map(|e| (e, e)).collect();
    branches.extend((1..n).map(|e| (e, e - 1)));
    let mut out: Vec<CayleyTable> = branches
        .into_par_iter()
        .flat_map_iter(|(e, f)| Search::new(n, e, f).run())
        .filter(|t| check_flea_axioms(t).is_ok())
        .collect();
    out.sort_by_key(|t| (t.unit(), t.falsum(), t.rows().to_vec()));
    Ok(out)
}

const FREE: usize = usize::MAX;

/// Backtracking over the upper triangle of a commutative table with fixed
/// unit `e` and falsum `f`.
///
/// Pruning: the bottom is absorbing (residuation), rows and columns are
/// monotone and partial products must associate. Residuation, involution and
/// the falsum are checked on complete tables only.
struct Search {
    n: usize,
    e: usize,
    f: usize,
    cells: Vec<Vec<usize>>,
    free: Vec<(usize, usize)>,
    found: Vec<CayleyTable>,
}

impl Search {
    fn new(n: usize, e: usize, f: usize) -> Self {
        let mut cells = vec![vec![FREE; n]; n];
        for (x, row) in cells.iter_mut().enumerate() {
            row[0] = 0;
            row[e] = x;
        }
        cells[0].fill(0);
        cells[e] = (0..n).collect();
        let free = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&(i, j)| i != e && j != e).collect();
        Search { n, e, f, cells, free, found: Vec::new() }
    }

    fn run(mut self) -> Vec<CayleyTable> {
        // The bottom absorbs, so it is the unit only in the one-element chain.
        if (self.e == 0) == (self.n == 1) {
            self.descend(0);
        }
        self.found
    }

    fn bounds(&self, i: usize, j: usize) -> (usize, usize) {
        let mut lo = 0;
        if i > 0 {
            lo = lo.max(self.cells[i - 1][j]);
        }
        if j > 0 {
            lo = lo.max(self.cells[i][j - 1]);
        }
        let mut hi = self.n - 1;
        // Fixed cells to the right of or below (i, j) cap it.
        if i <= self.e {
            hi = hi.min(self.cells[self.e][j]);
        }
        if j <= self.e {
            hi = hi.min(self.cells[i][self.e]);
        }
        (lo, hi)
    }

    fn associative_so_far(&self) -> bool {
        let n = self.n;
        let c = &self.cells;
        for a in 0..n {
            for b in 0..n {
                let ab = c[a][b];
                if ab == FREE {
                    continue;
                }
                for d in 0..n {
                    let bd = c[b][d];
                    if bd == FREE {
                        continue;
                    }
                    let (l, r) = (c[ab][d], c[a][bd]);
                    if l != FREE && r != FREE && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn descend(&mut self, k: usize) {
        if k == self.free.len() {
            let table = CayleyTable::new(self.cells.clone(), self.e, self.f).expect("search fills a square table");
            self.found.push(table);
            return;
        }
        let (i, j) = self.free[k];
        let (lo, hi) = self.bounds(i, j);
        for v in lo..=hi {
            self.cells[i][j] = v;
            self.cells[j][i] = v;
            if self.associative_so_far() {
                self.descend(k + 1);
            }
        }
        self.cells[i][j] = FREE;
        self.cells[j][i] = FREE;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> CayleyTable {
        CayleyTable::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], 1, 1).unwrap()
    }

    #[test]
    fn s3_passes() {
        let r = check_flea_axioms(&s3());
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.kind, Some(TableKind::Odd));
        assert_eq!(brute_residuum(&s3(), 2, 0).unwrap(), 0);
        for z in 0..3 {
            assert_eq!(brute_residuum(&s3(), 1, z).unwrap(), z);
        }
    }

    #[test]
    fn broken_top_times_bottom() {
        let t = CayleyTable::new(vec![vec![0, 0, 2], vec![0, 1, 2], vec![2, 2, 2]], 1, 1).unwrap();
        let r = check_flea_axioms(&t);
        assert!(r.first(Axiom::Monotonicity).is_some() || r.first(Axiom::Residuation).is_some());
    }

    #[test]
    fn one_element_is_odd() {
        let r = check_flea_axioms(&CayleyTable::new(vec![vec![0]], 0, 0).unwrap());
        assert!(r.is_ok());
        assert_eq!(r.kind, Some(TableKind::Odd));
    }

    #[test]
    fn neither_odd_nor_even() {
        let t = CayleyTable::new(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], 1, 2).unwrap();
        assert_eq!(check_flea_axioms(&t).kind, None);
    }

    #[test]
    fn window_residuum_on_integers() {
        // ℤ on [−3, 3] with saturating addition; index i stands for i − 3.
        let sat = |a: i64, b: i64| (a + b).clamp(-3, 3);
        let rows = (0..7).map(|i| (0..7).map(|j| (sat(i - 3, j - 3) + 3) as usize).collect()).collect();
        let t = CayleyTable::new(rows, 3, 2).unwrap();
        assert_eq!(brute_residuum(&t, 5, 4).unwrap() as i64 - 3, -1);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_finite_chains(0).unwrap().len(), 0);
        let one = enumerate_finite_chains(1).unwrap();
        assert_eq!(one, vec![CayleyTable::new(vec![vec![0]], 0, 0).unwrap()]);
        let two = enumerate_finite_chains(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(check_flea_axioms(&two[0]).kind, Some(TableKind::Even));
        assert_eq!(two[0].rows(), &[vec![0, 0], vec![0, 1]]);
        assert_eq!(enumerate_finite_chains(3).unwrap(), vec![s3()]);
    }

    #[test]
    fn bound() {
        assert!(matches!(enumerate_finite_chains(8), Err(Error::BoundExceeded { size: 8, bound: 7 })));
        assert!(matches!(enumerate_finite_chains_with_bound(10, 12), Err(Error::BoundExceeded { bound: 9, .. })));
    }
}
