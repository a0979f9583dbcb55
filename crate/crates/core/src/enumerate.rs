//! Exhaustive enumeration of ν-cells by backtracking.
//!
//! Cells of `(νK)ₙ` are built degree by degree: degree-0 entries solve
//! `εx = 1`, and each higher entry solves `∂x = x⁺ − x⁻` of the level below,
//! with the top entry shared between both sides. Each per-degree problem is a
//! bounded nonnegative integer solve over the basis of that degree. For a
//! loop-free unital basis every ν-cell uses only coefficients 0 and 1, so the
//! default bound is complete there.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cell::Cell;
use crate::chain::{BasisId, ChainVector};
use crate::complex::AugmentedComplex;

/// Finds every `v = Σ cᵢ eᵢ` with `0 ≤ cᵢ ≤ bound` and `Σ cᵢ T(eᵢ) = target`.
///
/// `columns[i]` lists the nonzero coordinates of `T(eᵢ)`.
struct BoundedSolver<'a> {
    ids: &'a [BasisId],
    columns: Vec<Vec<(usize, BigInt)>>,
    /// Coordinates whose last touching column is `i`, checked once `i` is fixed.
    closes: Vec<Vec<usize>>,
    /// Coordinates no column touches; their target must already be zero.
    untouched: Vec<usize>,
    bound: u32,
}

impl<'a> BoundedSolver<'a> {
    fn new(ids: &'a [BasisId], columns: Vec<Vec<(usize, BigInt)>>, n_coords: usize, bound: u32) -> Self {
        let mut last = vec![None; n_coords];
        for (i, col) in columns.iter().enumerate() {
            for &(c, _) in col {
                last[c] = Some(i);
            }
        }
        let mut closes = vec![Vec::new(); columns.len()];
        let mut untouched = Vec::new();
        for (c, l) in last.iter().enumerate() {
            match l {
                Some(i) => closes[*i].push(c),
                None => untouched.push(c),
            }
        }
        BoundedSolver {
            ids,
            columns,
            closes,
            untouched,
            bound,
        }
    }

    fn solve(&self, degree: usize, mut residual: Vec<BigInt>) -> Vec<ChainVector> {
        let mut out = Vec::new();
        if self.untouched.iter().any(|&c| !residual[c].is_zero()) {
            return out;
        }
        let mut chosen = vec![0u32; self.columns.len()];
        self.search(0, &mut residual, &mut chosen, degree, &mut out);
        out
    }

    fn search(&self, i: usize, residual: &mut [BigInt], chosen: &mut [u32], degree: usize, out: &mut Vec<ChainVector>) {
        if i == self.columns.len() {
            out.push(ChainVector::from_terms(
                degree,
                chosen
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(j, &c)| (self.ids[j].clone(), BigInt::from(c))),
            ));
            return;
        }
        for c in 0..=self.bound {
            if c > 0 {
                for (coord, v) in &self.columns[i] {
                    residual[*coord] -= v;
                }
            }
            chosen[i] = c;
            if self.closes[i].iter().all(|&coord| residual[coord].is_zero()) {
                self.search(i + 1, residual, chosen, degree, out);
            }
        }
        let total = BigInt::from(self.bound);
        for (coord, v) in &self.columns[i] {
            residual[*coord] += v * &total;
        }
        chosen[i] = 0;
    }
}

/// Per-degree solvers for one complex.
struct CellSearch<'a> {
    k: &'a AugmentedComplex,
    /// Coordinate index of each basis element within its degree.
    coords: Vec<BTreeMap<BasisId, usize>>,
    solvers: Vec<BoundedSolver<'a>>,
}

impl<'a> CellSearch<'a> {
    fn new(k: &'a AugmentedComplex, top: usize, bound: u32) -> Self {
        let mut coords = Vec::new();
        let mut solvers = Vec::new();
        for d in 0..=top {
            let ids = k.basis_in(d);
            coords.push(
                ids.iter()
                    .enumerate()
                    .map(|(i, b)| (b.clone(), i))
                    .collect::<BTreeMap<_, _>>(),
            );
            let columns: Vec<Vec<(usize, BigInt)>> = if d == 0 {
                ids.iter()
                    .map(|b| {
                        let e = k.augmentation(b).cloned().unwrap_or_default();
                        if e.is_zero() {
                            vec![]
                        } else {
                            vec![(0, e)]
                        }
                    })
                    .collect()
            } else {
                let below: &BTreeMap<BasisId, usize> = &coords[d - 1];
                ids.iter()
                    .map(|b| {
                        k.boundary(b)
                            .map(|v| v.iter().map(|(id, c)| (below[id], c.clone())).collect())
                            .unwrap_or_default()
                    })
                    .collect()
            };
            let n_coords = if d == 0 { 1 } else { k.basis_in(d - 1).len() };
            solvers.push(BoundedSolver::new(ids, columns, n_coords, bound));
        }
        CellSearch { k, coords, solvers }
    }

    /// All admissible entries of degree `d` whose image is `target`
    /// (`None` means augmentation 1 in degree 0).
    fn entries(&self, d: usize, target: Option<&ChainVector>) -> Vec<ChainVector> {
        let Some(solver) = self.solvers.get(d) else {
            return match target {
                Some(t) if !t.is_zero() => vec![],
                _ => vec![ChainVector::zero(d)],
            };
        };
        let residual = match target {
            None => vec![BigInt::from(1)],
            Some(t) => {
                let below = &self.coords[d - 1];
                let mut r = vec![BigInt::zero(); below.len()];
                for (id, c) in t.iter() {
                    match below.get(id) {
                        Some(&i) => r[i] = c.clone(),
                        None => return vec![],
                    }
                }
                r
            }
        };
        solver
            .solve(d, residual)
            .into_iter()
            .filter(|v| self.k.in_group(v) && self.k.in_submonoid(v))
            .collect()
    }

    fn extend(&self, n: usize, minus: &mut Vec<ChainVector>, plus: &mut Vec<ChainVector>, out: &mut Vec<Cell>) {
        let d = minus.len();
        let target = if d == 0 {
            None
        } else {
            Some(&plus[d - 1] - &minus[d - 1])
        };
        let candidates = self.entries(d, target.as_ref());
        if d == n {
            for v in candidates {
                minus.push(v.clone());
                plus.push(v);
                out.push(Cell::from_parts(minus.clone(), plus.clone(), true));
                minus.pop();
                plus.pop();
            }
            return;
        }
        for a in &candidates {
            for b in &candidates {
                minus.push(a.clone());
                plus.push(b.clone());
                self.extend(n, minus, plus, out);
                minus.pop();
                plus.pop();
            }
        }
    }
}

/// All cells of `(νK)ₙ` whose coefficients are at most `bound`, sorted.
pub fn enumerate_cells_bounded(k: &AugmentedComplex, n: usize, bound: u32) -> Vec<Cell> {
    let search = CellSearch::new(k, n.min(k.max_degree().unwrap_or(0)), bound);
    let mut out = Vec::new();
    search.extend(n, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// All cells of `(νK)ₙ` for a loop-free unital basis (0/1 coefficients).
pub fn enumerate_cells(k: &AugmentedComplex, n: usize) -> Vec<Cell> {
    enumerate_cells_bounded(k, n, 1)
}

/// Counts of enumerated cells by dimension.
pub fn count_by_dimension(cells: &[Cell]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for c in cells {
        *counts.entry(c.dimension()).or_insert(0) += 1;
    }
    counts
}
