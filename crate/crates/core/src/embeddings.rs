//! Integer factorizations `G = AᵀA` and norm-2 systems in `(Col A)⊥`.
//!
//! Solutions are reported up to row permutations, row sign changes and
//! column permutations that are automorphisms of `G`.
//!
//! Canonical form: every row is sign-normalized so that its first nonzero
//! entry is positive, rows are sorted in decreasing lexicographic order
//! (zero rows therefore come last), and among the images under the column
//! automorphisms of `G` the lexicographically smallest row-major matrix is
//! kept.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{inertia, snf, IntMatrix, IntSymMatrix};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EmbeddingSolution {
    /// Canonical `l × m` matrix with `AᵀA = G`.
    pub a: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Norm2System {
    pub vectors: Vec<Vec<i64>>,
}

/// Sorts rows into canonical order for the row permutation/sign group.
fn row_canonical(rows: &mut [Vec<i64>]) {
    for r in rows.iter_mut() {
        if let Some(&first) = r.iter().find(|&&x| x != 0) {
            if first < 0 {
                for x in r.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    rows.sort_by(|a, b| b.cmp(a));
}

/// Column permutations `P` with `PᵀGP = G`.
pub fn automorphisms(g: &IntSymMatrix) -> Vec<Vec<usize>> {
    let m = g.dim();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(g: &IntSymMatrix, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let m = g.dim();
        let j = perm.len();
        if j == m {
            out.push(perm.clone());
            return;
        }
        for c in 0..m {
            if used[c] || g.get(c, c) != g.get(j, j) {
                continue;
            }
            if (0..j).any(|i| g.get(perm[i], c) != g.get(i, j)) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            rec(g, perm, used, out);
            perm.pop();
            used[c] = false;
        }
    }
    rec(g, &mut perm, &mut used, &mut out);
    out
}

/// Canonical representative of `a` under the symmetry group.
pub fn canonicalize(a: &IntMatrix, autos: &[Vec<usize>]) -> IntMatrix {
    let rows = a.to_rows();
    let mut best: Option<Vec<Vec<i64>>> = None;
    for p in autos {
        let mut r: Vec<Vec<i64>> = rows.iter().map(|row| p.iter().map(|&c| row[c]).collect()).collect();
        row_canonical(&mut r);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    let best = best.unwrap_or_else(|| {
        let mut r = rows.clone();
        row_canonical(&mut r);
        r
    });
    if best.is_empty() {
        return IntMatrix::zeros(0, a.cols());
    }
    IntMatrix::from_rows(&best).expect("rectangular rows")
}

struct Search<'a> {
    g: &'a IntSymMatrix,
    l: usize,
    m: usize,
    cols: Vec<Vec<i64>>,
    found: BTreeSet<Vec<Vec<i64>>>,
}

impl Search<'_> {
    /// Rows `r` and `r-1` have identical entries in all chosen columns.
    fn same_prefix(&self, r: usize) -> bool {
        r > 0 && self.cols.iter().all(|c| c[r] == c[r - 1])
    }

    fn zero_prefix(&self, r: usize) -> bool {
        self.cols.iter().all(|c| c[r] == 0)
    }

    fn run(&mut self) {
        let j = self.cols.len();
        if j == self.m {
            let rows: Vec<Vec<i64>> = (0..self.l).map(|r| self.cols.iter().map(|c| c[r]).collect()).collect();
            self.found.insert(rows);
            return;
        }
        let target = self.g.get(j, j);
        let dots: Vec<i64> = (0..j).map(|i| self.g.get(i, j)).collect();
        // tail norms of earlier columns, for Cauchy-Schwarz pruning
        let tails: Vec<Vec<i64>> = self
            .cols
            .iter()
            .map(|c| {
                let mut t = vec![0i64; self.l + 1];
                for r in (0..self.l).rev() {
                    t[r] = t[r + 1] + c[r] * c[r];
                }
                t
            })
            .collect();
        let mut x = vec![0i64; self.l];
        let mut partial = vec![0i64; j];
        self.column(0, target, &mut x, &mut partial, &dots, &tails);
    }

    #[allow(clippy::too_many_arguments)]
    fn column(
        &mut self,
        r: usize,
        budget: i64,
        x: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        dots: &[i64],
        tails: &[Vec<i64>],
    ) {
        for i in 0..partial.len() {
            let need = (dots[i] - partial[i]).abs();
            // |remaining dot| ≤ sqrt(tail_i · budget)
            if need * need > tails[i][r] * budget {
                return;
            }
        }
        if r == self.l {
            if budget == 0 {
                self.cols.push(x.clone());
                self.run();
                self.cols.pop();
            }
            return;
        }
        let bound = isqrt(budget);
        let mut hi = bound;
        let mut lo = -bound;
        if self.zero_prefix(r) {
            lo = 0;
        }
        if self.same_prefix(r) {
            hi = hi.min(x[r - 1]);
        }
        let mut v = hi;
        while v >= lo {
            x[r] = v;
            for (i, p) in partial.iter_mut().enumerate() {
                *p += self.cols[i][r] * v;
            }
            self.column(r + 1, budget - v * v, x, partial, dots, tails);
            for (i, p) in partial.iter_mut().enumerate() {
                *p -= self.cols[i][r] * v;
            }
            v -= 1;
        }
        x[r] = 0;
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All factorizations `G = AᵀA` with `A` an integer `l × m` matrix, one per
/// symmetry class, in increasing canonical order.
pub fn orthogonal_embeddings(g: &IntSymMatrix, l: usize) -> Result<Vec<EmbeddingSolution>> {
    if !inertia(g).is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let m = g.dim();
    if l < m {
        return Ok(Vec::new());
    }
    let mut s = Search { g, l, m, cols: Vec::new(), found: BTreeSet::new() };
    s.run();
    let autos = automorphisms(g);
    let mut out: BTreeSet<IntMatrix> = BTreeSet::new();
    for rows in s.found {
        let a = if rows.is_empty() { IntMatrix::zeros(0, m) } else { IntMatrix::from_rows(&rows)? };
        debug_assert_eq!(a.gram(), *g.matrix());
        out.insert(canonicalize(&a, &autos));
    }
    Ok(out.into_iter().map(|a| EmbeddingSolution { a }).collect())
}

/// Every integer vector of norm 2 in dimension `l`: `±e_i ± e_j`, `i < j`.
pub fn norm2_vectors(l: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(2 * l * l.saturating_sub(1));
    for i in 0..l {
        for j in i + 1..l {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; l];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    out
}

/// True iff the vectors span a primitive sublattice of `ℤ^l`.
pub fn primitive_check(vectors: &[Vec<i64>]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let m = IntMatrix::from_rows(vectors)?;
    let s = snf(&m);
    if s.rank() < vectors.len() {
        return Err(Error::DependentVectors);
    }
    Ok(s.invariant_factors.iter().all(|f| *f == 1.into()))
}

/// Systems of `q` pairwise orthogonal norm-2 vectors in `(Col A)⊥` spanning
/// a primitive sublattice. Vectors are sign-normalized (first nonzero entry
/// positive). With `first_only`, stops after the first system.
pub fn norm2_complement_systems(a: &IntMatrix, q: usize, first_only: bool) -> Vec<Norm2System> {
    let l = a.rows();
    let cols: Vec<Vec<i64>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let cand: Vec<Vec<i64>> = norm2_vectors(l)
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0).copied() == Some(1))
        .filter(|v| cols.iter().all(|c| dot(c, v) == 0))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    clique(&cand, q, 0, &mut chosen, &mut out, first_only);
    out
}

fn clique(
    cand: &[Vec<i64>],
    q: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Norm2System>,
    first_only: bool,
) -> bool {
    if chosen.len() == q {
        let vectors: Vec<Vec<i64>> = chosen.iter().map(|&i| cand[i].clone()).collect();
        if primitive_check(&vectors).unwrap_or(false) {
            out.push(Norm2System { vectors });
            return first_only;
        }
        return false;
    }
    for i in start..cand.len() {
        if chosen.iter().all(|&c| dot(&cand[c], &cand[i]) == 0) {
            chosen.push(i);
            let stop = clique(cand, q, i + 1, chosen, out, first_only);
            chosen.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Some embedding into `ℤ^l` whose complement carries a `q`-system, if any.
pub fn find_embedding_with_system(
    g: &IntSymMatrix,
    l: usize,
    q: usize,
) -> Result<Option<(EmbeddingSolution, Norm2System)>> {
    for sol in orthogonal_embeddings(g, l)? {
        if let Some(sys) = norm2_complement_systems(&sol.a, q, true).into_iter().next() {
            return Ok(Some((sol, sys)));
        }
    }
    Ok(None)
}
