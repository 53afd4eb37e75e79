use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::normal::coords::{quad_type_of_pair, QuadCoords, StandardCoords};
use crate::tri::{edge_index, Triangulation, EDGE_VERTICES};

/// Standard matching equations: one row of length `7n` per glued face pair
/// and per corner of that face.
pub fn matching_equations(tri: &Triangulation) -> Result<Vec<Vec<i64>>> {
    require_valid(tri)?;
    Ok(standard_rows(tri))
}

pub(crate) fn standard_rows(tri: &Triangulation) -> Vec<Vec<i64>> {
    let n = tri.size();
    let mut rows = Vec::new();
    for (t, f, g) in tri.glued_pairs() {
        let f2 = g.perm.apply(f);
        for x in (0..4).filter(|&x| x != f) {
            let x2 = g.perm.apply(x);
            let mut row = vec![0i64; 7 * n];
            row[7 * t + x] += 1;
            row[7 * t + 4 + quad_type_of_pair(x, f)] += 1;
            row[7 * g.tet + x2] -= 1;
            row[7 * g.tet + 4 + quad_type_of_pair(x2, f2)] -= 1;
            rows.push(row);
        }
    }
    rows
}

/// Quadrilateral matching equations: one row of length `3n` per edge class
/// not meeting the boundary. Rows that vanish identically are dropped.
pub fn quad_matching_equations(tri: &Triangulation) -> Result<Vec<Vec<i64>>> {
    require_valid(tri)?;
    Ok(quad_rows(tri))
}

pub(crate) fn quad_rows(tri: &Triangulation) -> Vec<Vec<i64>> {
    let n = tri.size();
    let mut seen = vec![[false; 6]; n];
    let mut rows = Vec::new();
    for t in 0..n {
        for e in 0..6 {
            if seen[t][e] {
                continue;
            }
            let (a, b) = EDGE_VERTICES[e];
            let [c, d] = complement(a, b);
            let start = (t, [a, b, c, d]);
            let mut row = vec![0i64; 3 * n];
            let mut cur = start;
            let mut closed = true;
            let mut visited = Vec::new();
            loop {
                let (tt, [a, b, c, d]) = cur;
                visited.push((tt, edge_index(a, b)));
                row[3 * tt + quad_type_of_pair(a, c)] += 1;
                row[3 * tt + quad_type_of_pair(a, d)] -= 1;
                let Some(g) = tri.gluing(tt, c) else {
                    closed = false;
                    break;
                };
                let p = g.perm;
                cur = (g.tet, [p.apply(a), p.apply(b), p.apply(d), p.apply(c)]);
                if cur == start {
                    break;
                }
            }
            if !closed {
                // Walk the other way so every embedding of this edge is marked.
                let mut cur = (t, [a, b, d, c]);
                loop {
                    let (tt, [a, b, c, d]) = cur;
                    visited.push((tt, edge_index(a, b)));
                    let Some(g) = tri.gluing(tt, c) else { break };
                    let p = g.perm;
                    cur = (g.tet, [p.apply(a), p.apply(b), p.apply(d), p.apply(c)]);
                }
            }
            for (tt, ee) in visited {
                seen[tt][ee] = true;
            }
            if closed && row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    rows
}

fn complement(a: usize, b: usize) -> [usize; 2] {
    let mut out = [0; 2];
    let mut i = 0;
    for x in 0..4 {
        if x != a && x != b {
            out[i] = x;
            i += 1;
        }
    }
    out
}

fn require_valid(tri: &Triangulation) -> Result<()> {
    if tri.skeleton().has_invalid_edge() {
        return Err(Error::Precondition("triangulation has an invalid edge".into()));
    }
    Ok(())
}

/// Completes quadrilateral coordinates with the smallest non-negative
/// triangle counts: within each vertex class some corner gets zero triangles.
pub fn quad_to_standard(tri: &Triangulation, q: &QuadCoords) -> Result<StandardCoords> {
    let n = tri.size();
    if q.0.len() != 3 * n {
        return Err(Error::InadmissibleSurface(format!(
            "expected {} quad coordinates, found {}",
            3 * n,
            q.0.len()
        )));
    }
    if q.0.iter().any(|x| x.is_negative()) || !q.satisfies_quad_constraint() {
        return Err(Error::InadmissibleSurface(
            "quad coordinates are negative or break the quadrilateral constraint".into(),
        ));
    }
    let quad = |t: usize, x: usize, y: usize| q.quad(t, quad_type_of_pair(x, y)).clone();

    // Corner (t, x) is node 4t + x; each glued face relates three corner pairs.
    let mut adj: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); 4 * n];
    for (t, f, g) in tri.glued_pairs() {
        let f2 = g.perm.apply(f);
        for x in (0..4).filter(|&x| x != f) {
            let x2 = g.perm.apply(x);
            // tri(t2, x2) - tri(t, x) = quad(t, {x,f}) - quad(t2, {x2,f2})
            let diff = quad(t, x, f) - quad(g.tet, x2, f2);
            adj[4 * t + x].push((4 * g.tet + x2, diff.clone()));
            adj[4 * g.tet + x2].push((4 * t + x, -diff));
        }
    }

    let mut value: Vec<Option<BigInt>> = vec![None; 4 * n];
    let mut out = StandardCoords::zero(n);
    for root in 0..4 * n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(BigInt::zero());
        let mut class = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let vu = value[u].clone().unwrap();
            for (w, d) in &adj[u] {
                let want = &vu + d;
                match &value[*w] {
                    Some(vw) if *vw != want => {
                        return Err(Error::InadmissibleSurface(
                            "quad coordinates admit no triangle completion".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        value[*w] = Some(want);
                        class.push(*w);
                        queue.push_back(*w);
                    }
                }
            }
        }
        let min = class
            .iter()
            .map(|&c| value[c].clone().unwrap())
            .min()
            .unwrap();
        for &c in &class {
            *out.tri_mut(c / 4, c % 4) = value[c].clone().unwrap() - &min;
        }
    }
    for t in 0..n {
        for k in 0..3 {
            *out.quad_mut(t, k) = q.quad(t, k).clone();
        }
    }
    Ok(out)
}

/// Applies a row of integer coefficients to a coordinate vector.
pub(crate) fn apply_row(row: &[i64], x: &[BigInt]) -> BigInt {
    row.iter()
        .zip(x)
        .filter(|(c, _)| **c != 0)
        .map(|(c, v)| v * BigInt::from(*c))
        .sum()
}

/// True when `s` satisfies every standard matching equation of `tri`.
pub fn satisfies_matching(tri: &Triangulation, s: &StandardCoords) -> bool {
    s.0.len() == 7 * tri.size()
        && standard_rows(tri)
            .iter()
            .all(|row| apply_row(row, &s.0).is_zero())
}
