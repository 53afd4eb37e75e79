//! Slow reference implementations used to check the fast ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Basis of the null space of `rows` restricted to `cols`, by Gauss-Jordan
/// elimination over the rationals. Vectors are indexed like `cols`.
fn null_space(rows: &[Vec<i64>], cols: &[usize]) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| BigRational::from_integer(r[c].into())).collect())
        .collect();
    let k = cols.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..k {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); k];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Extreme rays of `{x >= 0, rows . x = 0}` in dimension `dim`: the
/// vectors with minimal support, found by trying every support set.
/// Returned as sorted primitive integer vectors.
pub fn brute_force_extreme_rays(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<BigInt>> {
    assert!(dim <= 20, "too many supports to try");
    let mut out = Vec::new();
    for mask in 1u32..(1 << dim) {
        let cols: Vec<usize> = (0..dim).filter(|&i| mask >> i & 1 == 1).collect();
        let basis = null_space(rows, &cols);
        if basis.len() != 1 {
            continue;
        }
        let v = &basis[0];
        if v.iter().any(|x| x.is_zero()) {
            continue;
        }
        let positive = v[0].is_positive();
        if v.iter().any(|x| x.is_positive() != positive) {
            continue;
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer().abs()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for x in ints.iter_mut() {
            *x /= &g;
        }
        let mut full = vec![BigInt::zero(); dim];
        for (x, &c) in ints.into_iter().zip(&cols) {
            full[c] = x;
        }
        out.push(full);
    }
    out.sort();
    out
}

fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    // Laplace expansion along the first row; matrices here are at most 5x5.
    (0..n)
        .filter(|&j| !m[0][j].is_zero())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * determinant(&minor);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_(k-1)`.
pub fn invariant_factors_by_minors(m: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                    .collect();
                d = d.gcd(&determinant(&sub));
            }
        }
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

pub fn matrix_product(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect())
        .collect()
}

pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    determinant(m)
}

/// First homology of a closed triangulation from the dual cell structure:
/// one generator per glued face pair, killed along a spanning tree of the
/// dual graph, and one relation per edge class read off by walking around
/// the edge. Returns the free rank and the invariant factors other than 1.
pub fn dual_h1(tri: &crushkit::Triangulation) -> (usize, Vec<i64>) {
    let n = tri.size();
    let mut pair_index = std::collections::HashMap::new();
    for (t, f, g) in tri.glued_pairs() {
        let id = pair_index.len() / 2;
        pair_index.insert((t, f), (id, 1i64));
        pair_index.insert((g.tet, g.perm.apply(f)), (id, -1i64));
    }
    let gens = pair_index.len() / 2;
    let mut rows: Vec<Vec<i64>> = Vec::new();

    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (t, f, g) in tri.glued_pairs() {
        let (a, b) = (root(&mut parent, t), root(&mut parent, g.tet));
        if a != b {
            parent[a] = b;
            let mut row = vec![0; gens];
            row[pair_index[&(t, f)].0] = 1;
            rows.push(row);
        }
    }

    let mut seen = std::collections::HashSet::new();
    for t in 0..n {
        for a in 0..4 {
            for b in a + 1..4 {
                if seen.contains(&(t, a.min(b), a.max(b))) {
                    continue;
                }
                let rest: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
                let start = (t, rest[0], rest[1]);
                let mut row = vec![0; gens];
                let (mut tt, mut a2, mut b2, mut c, mut d) = (t, a, b, rest[0], rest[1]);
                loop {
                    seen.insert((tt, a2.min(b2), a2.max(b2)));
                    let g = tri.gluing(tt, d).expect("closed triangulation");
                    let (id, sign) = pair_index[&(tt, d)];
                    row[id] += sign;
                    let p = g.perm;
                    (tt, a2, b2, c, d) = (g.tet, p.apply(a2), p.apply(b2), p.apply(d), p.apply(c));
                    if (tt, c, d) == start {
                        break;
                    }
                }
                rows.push(row);
            }
        }
    }
    let diag = naive_smith_diagonal(rows, gens);
    let nonzero: Vec<i64> = diag.iter().copied().filter(|&d| d != 0).collect();
    let rank = gens - nonzero.len();
    (rank, nonzero.into_iter().filter(|&d| d != 1).collect())
}

/// Diagonal of the Smith form by repeated elementary reduction around the
/// smallest nonzero entry. Entries stay small for the matrices used here.
pub fn naive_smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut top = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in top..m.len() {
            for j in top..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        let p = m[top][top];
        let mut dirty = false;
        for i in top + 1..m.len() {
            let q = m[i][top] / p;
            for j in top..cols {
                m[i][j] -= q * m[top][j];
            }
            dirty |= m[i][top] != 0;
        }
        for j in top + 1..cols {
            let q = m[top][j] / p;
            for row in m.iter_mut().skip(top) {
                row[j] -= q * row[top];
            }
            dirty |= m[top][j] != 0;
        }
        if dirty {
            continue;
        }
        if let Some((i, _)) = (top + 1..m.len())
            .flat_map(|i| (top + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] % p != 0)
        {
            for j in top..cols {
                let x = m[i][j];
                m[top][j] += x;
            }
            continue;
        }
        out.push(p.abs());
        top += 1;
    }
    out
}

fn union_find_classes<K: std::hash::Hash + Eq + Copy>(items: &[K], pairs: &[(K, K)]) -> std::collections::HashMap<K, usize> {
    let index: std::collections::HashMap<K, usize> = items.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in pairs {
        let (ra, rb) = (root(&mut parent, index[a]), root(&mut parent, index[b]));
        parent[ra] = rb;
    }
    items.iter().map(|&k| (k, root(&mut parent, index[&k]))).collect()
}

/// Vertex link euler characteristics, one per vertex class, sorted, and
/// whether some edge is identified with itself in reverse. Links are
/// counted directly: link vertices are edge ends, link edges are
/// (corner, face) incidences, link triangles are corners.
pub fn link_oracle(tri: &crushkit::Triangulation) -> (Vec<i64>, bool) {
    let n = tri.size();
    let corners: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |v| (t, v))).collect();
    let ends: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|t| (0..4).flat_map(move |v| (0..4).filter(move |&w| w != v).map(move |w| (t, v, w))))
        .collect();
    let (mut corner_pairs, mut end_pairs, mut side_pairs) = (Vec::new(), Vec::new(), Vec::new());
    for (t, f, g) in tri.glued_pairs() {
        let p = g.perm;
        for v in (0..4).filter(|&v| v != f) {
            corner_pairs.push(((t, v), (g.tet, p.apply(v))));
            side_pairs.push(((t, v, f), (g.tet, p.apply(v), p.apply(f))));
            for w in (0..4).filter(|&w| w != f && w != v) {
                end_pairs.push(((t, v, w), (g.tet, p.apply(v), p.apply(w))));
            }
        }
    }
    let vertex = union_find_classes(&corners, &corner_pairs);
    let end = union_find_classes(&ends, &end_pairs);
    let side = union_find_classes(&ends, &side_pairs);
    let invalid = ends.iter().any(|&(t, v, w)| end[&(t, v, w)] == end[&(t, w, v)]);
    let mut euler: std::collections::HashMap<usize, i64> = std::collections::HashMap::new();
    let mut counted = std::collections::HashSet::new();
    for &(t, v) in &corners {
        let class = vertex[&(t, v)];
        *euler.entry(class).or_default() += 1;
        for w in (0..4).filter(|&w| w != v) {
            if counted.insert((0, end[&(t, v, w)])) {
                *euler.entry(class).or_default() += 1;
            }
            if counted.insert((1, side[&(t, v, w)])) {
                *euler.entry(class).or_default() -= 1;
            }
        }
    }
    let mut out: Vec<i64> = euler.into_values().collect();
    out.sort();
    (out, invalid)
}
