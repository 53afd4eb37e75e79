use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Vertex pairs separated by each quadrilateral type: type `k` separates
/// `{0, k+1}` from the remaining two vertices.
pub const QUAD_PAIRS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

/// The quadrilateral type having `{x, y}` as one of its separated pairs.
pub fn quad_type_of_pair(x: usize, y: usize) -> usize {
    debug_assert!(x != y && x < 4 && y < 4);
    if x == 0 {
        y - 1
    } else if y == 0 {
        x - 1
    } else {
        5 - x - y
    }
}

/// The vertex grouped with `x` by quadrilateral type `k`.
pub fn quad_partner(k: usize, x: usize) -> usize {
    let [p, q] = QUAD_PAIRS[k];
    if p[0] == x {
        p[1]
    } else if p[1] == x {
        p[0]
    } else if q[0] == x {
        q[1]
    } else {
        q[0]
    }
}

/// True when `x` lies on the side of quad type `k` containing vertex 0.
pub fn on_low_side(k: usize, x: usize) -> bool {
    x == 0 || x == k + 1
}

/// Quadrilateral coordinates: three counts per tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadCoords(pub Vec<BigInt>);

/// Standard coordinates: per tetrahedron `tri0..tri3, quad0..quad2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardCoords(pub Vec<BigInt>);

impl QuadCoords {
    pub fn zero(n: usize) -> Self {
        QuadCoords(vec![BigInt::zero(); 3 * n])
    }

    pub fn tet_count(&self) -> usize {
        self.0.len() / 3
    }

    pub fn quad(&self, tet: usize, k: usize) -> &BigInt {
        &self.0[3 * tet + k]
    }

    pub fn satisfies_quad_constraint(&self) -> bool {
        self.0
            .chunks(3)
            .all(|c| c.iter().filter(|x| !x.is_zero()).count() <= 1)
    }
}

impl StandardCoords {
    pub fn zero(n: usize) -> Self {
        StandardCoords(vec![BigInt::zero(); 7 * n])
    }

    pub fn tet_count(&self) -> usize {
        self.0.len() / 7
    }

    pub fn tri(&self, tet: usize, v: usize) -> &BigInt {
        &self.0[7 * tet + v]
    }

    pub fn tri_mut(&mut self, tet: usize, v: usize) -> &mut BigInt {
        &mut self.0[7 * tet + v]
    }

    pub fn quad(&self, tet: usize, k: usize) -> &BigInt {
        &self.0[7 * tet + 4 + k]
    }

    pub fn quad_mut(&mut self, tet: usize, k: usize) -> &mut BigInt {
        &mut self.0[7 * tet + 4 + k]
    }

    pub fn quads(&self) -> QuadCoords {
        QuadCoords(
            self.0
                .chunks(7)
                .flat_map(|c| c[4..7].iter().cloned())
                .collect(),
        )
    }

    pub fn has_quads(&self) -> bool {
        self.0.chunks(7).any(|c| c[4..7].iter().any(|x| !x.is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn satisfies_quad_constraint(&self) -> bool {
        self.quads().satisfies_quad_constraint()
    }

    pub fn scaled(&self, k: u32) -> StandardCoords {
        StandardCoords(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &StandardCoords) -> StandardCoords {
        StandardCoords(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Per-tetrahedron disc counts as machine integers, if they fit.
    pub(crate) fn small_counts(&self) -> Option<Vec<[usize; 7]>> {
        self.0
            .chunks(7)
            .map(|c| {
                let mut out = [0usize; 7];
                for (o, x) in out.iter_mut().zip(c) {
                    *o = x.to_usize()?;
                }
                Some(out)
            })
            .collect()
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, values: &[BigInt], width: usize) -> fmt::Result {
    for row in values.chunks(width) {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for StandardCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "surf {} std", self.tet_count())?;
        write_rows(f, &self.0, 7)
    }
}

impl fmt::Display for QuadCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "surf {} quad", self.tet_count())?;
        write_rows(f, &self.0, 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_pair_helpers_agree() {
        for k in 0..3 {
            for pair in QUAD_PAIRS[k] {
                assert_eq!(quad_type_of_pair(pair[0], pair[1]), k);
                assert_eq!(quad_partner(k, pair[0]), pair[1]);
                assert_eq!(quad_partner(k, pair[1]), pair[0]);
            }
            assert!(on_low_side(k, 0));
            assert!(on_low_side(k, k + 1));
        }
    }
}
