use std::collections::HashMap;

use crate::cell::{Cell, CellComplex, CellFace, CellKind, Dihedral, FaceLink};
use crate::error::{Error, Result};
use crate::normal::discs::{tet_counts, TetCounts};
use crate::normal::{on_low_side, quad_partner, StandardCoords, QUAD_PAIRS};
use crate::tri::{edge_index, Triangulation, EDGE_VERTICES};

/// A piece of an original face after cutting: the bigon at `corner` and
/// `depth` (depth 0 touches the corner), or the central triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Piece {
    Corner { corner: usize, depth: usize },
    Central,
}

type PieceKey = (usize, usize, Piece);

struct Builder {
    complex: CellComplex,
    slots: HashMap<PieceKey, (usize, usize)>,
}

fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut i = 0;
    for v in 0..4 {
        if v != f {
            out[i] = v;
            i += 1;
        }
    }
    out
}

/// The two vertices of face `f` other than `x`, in increasing order.
fn others_in_face(f: usize, x: usize) -> (usize, usize) {
    let v: Vec<usize> = (0..4).filter(|&v| v != f && v != x).collect();
    (v[0], v[1])
}

impl Builder {
    fn add_cell(&mut self, label: Option<usize>, vertex_count: usize, edges: Vec<(usize, usize)>) -> usize {
        self.complex.cells.push(Some(Cell {
            kind: CellKind::Tetrahedron,
            label,
            vertex_count,
            edges: edges.into_iter().map(Some).collect(),
            faces: Vec::new(),
        }));
        self.complex.cells.len() - 1
    }

    fn add_face(&mut self, cell: usize, key: PieceKey, corners: Vec<usize>, sides: Vec<usize>) {
        let c = self.complex.cells[cell].as_mut().unwrap();
        c.faces.push(Some(CellFace {
            corners,
            sides,
            partner: None,
        }));
        let slot = (cell, c.faces.len() - 1);
        let old = self.slots.insert(key, slot);
        debug_assert!(old.is_none(), "piece {key:?} assigned twice");
    }

    /// A bigon piece at corner `x` of face `f`: corners `[inner, outer]`,
    /// side 0 along the edge from `x` to the smaller remaining vertex.
    fn add_bigon(
        &mut self,
        cell: usize,
        t: usize,
        f: usize,
        x: usize,
        depth: usize,
        inner: usize,
        outer: usize,
        edge_of: impl Fn(usize, usize) -> usize,
    ) {
        let (y, z) = others_in_face(f, x);
        let key = (t, f, Piece::Corner { corner: x, depth });
        self.add_face(cell, key, vec![inner, outer], vec![edge_of(x, y), edge_of(x, z)]);
    }

    /// The central piece of face `f`, corners listed by increasing vertex.
    fn add_central(
        &mut self,
        cell: usize,
        t: usize,
        f: usize,
        vertex_of: impl Fn(usize) -> usize,
        edge_of: impl Fn(usize, usize) -> usize,
    ) {
        let [a, b, c] = face_vertices(f);
        self.add_face(
            cell,
            (t, f, Piece::Central),
            vec![vertex_of(a), vertex_of(b), vertex_of(c)],
            vec![edge_of(a, b), edge_of(b, c), edge_of(a, c)],
        );
    }

    fn three_footballs(&mut self, t: usize, c: &TetCounts) {
        for v in 0..4 {
            for j in 0..c.tri[v] {
                let ws: Vec<usize> = (0..4).filter(|&w| w != v).collect();
                let cell = self.add_cell(None, 2, vec![(0, 1); 3]);
                let edge_of = |_: usize, w: usize| ws.iter().position(|&u| u == w).unwrap();
                for f in (0..4).filter(|&f| f != v) {
                    self.add_bigon(cell, t, f, v, j, 0, 1, edge_of);
                }
            }
        }
    }

    fn tetrahedron(&mut self, t: usize) {
        let cell = self.add_cell(Some(t), 4, EDGE_VERTICES.to_vec());
        for f in 0..4 {
            self.add_central(cell, t, f, |v| v, edge_index);
        }
    }

    fn purse(&mut self, t: usize, c: &TetCounts, k: usize, side: [usize; 2], other: [usize; 2]) {
        let [x, w] = side;
        let local = |v: usize| {
            if v == x {
                0
            } else if v == w {
                1
            } else {
                2
            }
        };
        let [y, z] = other;
        let pairs = [(x, w), (x, y), (x, z), (w, y), (w, z)];
        let edges = pairs.iter().map(|&(a, b)| (local(a), local(b))).collect();
        let cell = self.add_cell(None, 3, edges);
        let edge_of = |a: usize, b: usize| {
            pairs
                .iter()
                .position(|&(p, q)| (p == a && q == b) || (p == b && q == a))
                .unwrap()
        };
        for f in [y, z] {
            self.add_central(cell, t, f, local, edge_of);
        }
        debug_assert_eq!(quad_partner(k, x), w);
        self.add_bigon(cell, t, w, x, c.tri[x], 0, 2, edge_of);
        self.add_bigon(cell, t, x, w, c.tri[w], 1, 2, edge_of);
    }

    fn four_footballs(&mut self, t: usize, c: &TetCounts, k: usize, q: usize) {
        let [[a, b], [cc, d]] = QUAD_PAIRS[k];
        let crossing = [(a, cc), (a, d), (b, cc), (b, d)];
        for i in 1..q {
            let cell = self.add_cell(None, 2, vec![(0, 1); 4]);
            let edge_of = |u: usize, v: usize| {
                crossing
                    .iter()
                    .position(|&(p, r)| (p == u && r == v) || (p == v && r == u))
                    .unwrap()
            };
            for f in 0..4 {
                let x = quad_partner(k, f);
                let (ii, inner, outer) = if on_low_side(k, x) { (i, 0, 1) } else { (q - i, 1, 0) };
                self.add_bigon(cell, t, f, x, c.tri[x] + ii, inner, outer, edge_of);
            }
        }
    }

    fn glue(&mut self, a: PieceKey, b: PieceKey, map: Dihedral) -> Result<()> {
        let missing = |k: PieceKey| Error::Invariant(format!("no cell face for piece {k:?}"));
        let (ca, fa) = *self.slots.get(&a).ok_or_else(|| missing(a))?;
        let (cb, fb) = *self.slots.get(&b).ok_or_else(|| missing(b))?;
        let n = self.complex.face(ca, fa).unwrap().len();
        self.complex.face_mut(ca, fa).partner = Some(FaceLink {
            cell: cb,
            face: fb,
            map,
        });
        self.complex.face_mut(cb, fb).partner = Some(FaceLink {
            cell: ca,
            face: fa,
            map: map.inverse(n),
        });
        Ok(())
    }
}

/// Cuts `tri` along `s` and shrinks each copy of the surface to a point.
///
/// Each tetrahedron yields one 3-sided football per normal triangle, plus
/// either the leftover tetrahedron (no quadrilaterals) or two purses and
/// one 4-sided football between each pair of adjacent quadrilaterals.
pub fn build_crushed_complex(tri: &Triangulation, s: &StandardCoords) -> Result<CellComplex> {
    let counts = tet_counts(tri, s)?;
    let mut b = Builder {
        complex: CellComplex::default(),
        slots: HashMap::new(),
    };
    for (t, c) in counts.iter().enumerate() {
        b.three_footballs(t, c);
        match c.quad {
            None => b.tetrahedron(t),
            Some((k, q)) => {
                let [low, high] = QUAD_PAIRS[k];
                b.purse(t, c, k, low, high);
                b.purse(t, c, k, high, low);
                b.four_footballs(t, c, k, q);
            }
        }
    }
    for (t, f, g) in tri.glued_pairs() {
        let p = g.perm;
        let (t2, f2) = (g.tet, p.apply(f));
        for x in (0..4).filter(|&x| x != f) {
            let (y, z) = others_in_face(f, x);
            let map = Dihedral {
                offset: 0,
                reflect: p.apply(y) > p.apply(z),
            };
            for depth in 0..counts[t].arcs_at(f, x) {
                b.glue(
                    (t, f, Piece::Corner { corner: x, depth }),
                    (t2, f2, Piece::Corner { corner: p.apply(x), depth }),
                    map,
                )?;
            }
        }
        let here = face_vertices(f);
        let there = face_vertices(f2);
        let image: Vec<usize> = here
            .iter()
            .map(|&v| there.iter().position(|&u| u == p.apply(v)).unwrap())
            .collect();
        let map = Dihedral {
            offset: image[0],
            reflect: image[1] != (image[0] + 1) % 3,
        };
        b.glue((t, f, Piece::Central), (t2, f2, Piece::Central), map)?;
    }
    for cell in b.complex.cells.iter_mut().flatten() {
        cell.recompute_kind()?;
    }
    b.complex.check()?;
    Ok(b.complex)
}
