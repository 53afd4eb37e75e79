//! First homology via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::tri::{edge_index, Triangulation};
use crate::uf::UnionFind;

pub type Matrix = Vec<Vec<BigInt>>;

/// Diagonal form `S = U M V` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries of `S`, each dividing the next
    /// nonzero one; nonzero entries come first and are positive.
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `row[i] -= q * row[j]`
fn row_sub(m: &mut Matrix, i: usize, j: usize, q: &BigInt) {
    let (src, dst) = if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&lo[j], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// `col[i] -= q * col[j]`
fn col_sub(m: &mut Matrix, i: usize, j: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[j].is_zero() {
            let t = q * &row[j];
            row[i] -= t;
        }
    }
}

fn col_swap(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith normal form of an integer matrix with `rows` rows.
///
/// Pivots are the entries of smallest absolute value in the remaining
/// block; after clearing a pivot's row and column, any entry it does not
/// divide is folded back into the pivot row.
pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut a: Matrix = m.to_vec();
    let mut u = identity(rows);
    // V is tracked transposed so column operations become row operations.
    let mut vt = identity(cols);
    let lim = rows.min(cols);
    for k in 0..lim {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(k, pi);
            u.swap(k, pi);
            col_swap(&mut a, k, pj);
            vt.swap(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&a[k][k]);
                row_sub(&mut a, i, k, &q);
                row_sub(&mut u, i, k, &q);
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = a[k][j].div_floor(&a[k][k]);
                col_sub(&mut a, j, k, &q);
                row_sub(&mut vt, j, k, &q);
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[k][k])));
            match bad {
                Some(i) => {
                    // row[k] += row[i]
                    row_sub(&mut a, k, i, &BigInt::from(-1));
                    row_sub(&mut u, k, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if a[k][k].is_negative() {
            for x in a[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..lim).map(|k| a[k][k].clone()).collect();
    let v = (0..cols)
        .map(|i| (0..cols).map(|j| vt[j][i].clone()).collect())
        .collect();
    SmithForm { diagonal, u, v }
}

/// Rank and torsion of a finitely generated abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologySummary {
    pub r: usize,
    pub t2: usize,
    pub t3: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl HomologySummary {
    pub fn from_parts(r: usize, invariant_factors: Vec<BigInt>) -> HomologySummary {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        HomologySummary {
            r,
            t2: invariant_factors.iter().filter(|d| d.is_multiple_of(&two)).count(),
            t3: invariant_factors.iter().filter(|d| d.is_multiple_of(&three)).count(),
            invariant_factors,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.r == 0 && self.invariant_factors.is_empty()
    }

    /// Direct sum of two groups, with factors brought back to a divisibility
    /// chain.
    pub fn sum(&self, other: &HomologySummary) -> HomologySummary {
        let factors: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        let n = factors.len();
        let diag: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { factors[i].clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let chain = smith_normal_form(&diag, n)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        HomologySummary::from_parts(self.r + other.r, chain)
    }

    /// `r,d1,d2,...` with the factor list omitted when empty.
    pub fn compact(&self) -> String {
        let mut parts = vec![self.r.to_string()];
        parts.extend(self.invariant_factors.iter().map(|d| d.to_string()));
        parts.join(",")
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self.invariant_factors.iter().map(|d| d.to_string()).collect();
        write!(f, "h1 r={} factors={}", self.r, factors.join(","))
    }
}

/// Boundary map from triangles to edges, one row per triangle class, with
/// columns indexed by edge class.
pub fn boundary2(tri: &Triangulation) -> (Matrix, usize) {
    let skel = tri.skeleton();
    let ne = skel.edges().len();
    let rows = skel
        .triangles()
        .iter()
        .map(|class| {
            let (t, f) = class.embeddings[0];
            let [a, b, c] = {
                let v: Vec<usize> = (0..4).filter(|&x| x != f).collect();
                [v[0], v[1], v[2]]
            };
            let mut row = vec![BigInt::zero(); ne];
            for (x, y, sign) in [(a, b, 1), (b, c, 1), (a, c, -1)] {
                let e = edge_index(x, y);
                let s = if skel.edge_reversed(t, e) { -sign } else { sign };
                row[skel.edge_of(t, e)] += s;
            }
            row
        })
        .collect();
    (rows, ne)
}

pub fn h1(tri: &Triangulation) -> Result<HomologySummary> {
    let skel = tri.skeleton();
    if skel.has_invalid_edge() {
        return Err(Error::Precondition("triangulation has an invalid edge".into()));
    }
    let (d2, ne) = boundary2(tri);
    let mut graph = UnionFind::new(skel.vertices().len());
    let mut rank1 = 0;
    for class in skel.edges() {
        let (t, e) = class.embeddings[0];
        let (a, b) = crate::tri::EDGE_VERTICES[e];
        if graph.union(skel.vertex_of(t, a), skel.vertex_of(t, b)) {
            rank1 += 1;
        }
    }
    let snf = smith_normal_form(&d2, ne);
    let factors = snf
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    Ok(HomologySummary::from_parts(ne - rank1 - snf.rank(), factors))
}
