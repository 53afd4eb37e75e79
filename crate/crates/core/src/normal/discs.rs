//! Assembly of a normal surface from its discs.
//!
//! Arcs of a normal surface on a tetrahedron face are indexed by the corner
//! they cut off and their depth from that corner (0 = closest). At a corner
//! `x`, the triangles at `x` come first, followed by any quadrilaterals that
//! group `x` with the vertex opposite the face. Quadrilaterals of one type
//! are numbered from the side holding vertex 0. The cell engine relies on
//! exactly this convention when it builds the cut-open complex.

use crate::error::{Error, Result};
use crate::normal::coords::{on_low_side, quad_partner, StandardCoords, QUAD_PAIRS};
use crate::surface::{ComponentSummary, PolygonSurface};
use crate::tri::Triangulation;
use crate::uf::ParityUnionFind;

/// Disc counts in one tetrahedron, after checking the quad constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct TetCounts {
    pub tri: [usize; 4],
    /// `(type, count)` of the single quadrilateral type present.
    pub quad: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DiscKind {
    /// Triangle at a vertex, with its depth from that vertex.
    Tri { vertex: usize, index: usize },
    /// Quadrilateral, indexed from the side containing vertex 0.
    Quad { index: usize },
}

impl TetCounts {
    pub fn quad_count(&self) -> usize {
        self.quad.map_or(0, |(_, q)| q)
    }

    /// Number of arcs cutting off corner `x` of face `f`.
    pub fn arcs_at(&self, f: usize, x: usize) -> usize {
        let quads = match self.quad {
            Some((k, q)) if quad_partner(k, x) == f => q,
            _ => 0,
        };
        self.tri[x] + quads
    }

    /// The disc owning the arc at corner `x` of face `f` with depth `d`.
    pub fn arc_disc(&self, f: usize, x: usize, d: usize) -> DiscKind {
        if d < self.tri[x] {
            return DiscKind::Tri { vertex: x, index: d };
        }
        let (k, q) = self.quad.expect("arc depth beyond triangles without quads");
        debug_assert_eq!(quad_partner(k, x), f);
        let j = d - self.tri[x];
        debug_assert!(j < q);
        let index = if on_low_side(k, x) { j } else { q - 1 - j };
        DiscKind::Quad { index }
    }

    /// Depth, at corner `x`, of the arc belonging to quad `index`.
    pub fn quad_depth(&self, x: usize, index: usize) -> usize {
        let (k, q) = self.quad.expect("no quads");
        self.tri[x] + if on_low_side(k, x) { index } else { q - 1 - index }
    }
}

/// Converts coordinates into per-tetrahedron counts and checks that arcs
/// match across every glued face.
pub(crate) fn tet_counts(tri: &Triangulation, s: &StandardCoords) -> Result<Vec<TetCounts>> {
    if s.tet_count() != tri.size() || s.0.len() != 7 * tri.size() {
        return Err(Error::InadmissibleSurface(format!(
            "surface has {} coordinates, expected {}",
            s.0.len(),
            7 * tri.size()
        )));
    }
    let raw = s
        .small_counts()
        .ok_or_else(|| Error::InadmissibleSurface("negative or oversized coordinate".into()))?;
    let mut out = Vec::with_capacity(raw.len());
    for (t, c) in raw.iter().enumerate() {
        let present: Vec<usize> = (0..3).filter(|&k| c[4 + k] > 0).collect();
        let quad = match present.as_slice() {
            [] => None,
            [k] => Some((*k, c[4 + k])),
            _ => {
                return Err(Error::InadmissibleSurface(format!(
                    "tetrahedron {t} has more than one quadrilateral type"
                )))
            }
        };
        out.push(TetCounts {
            tri: [c[0], c[1], c[2], c[3]],
            quad,
        });
    }
    for (t, f, g) in tri.glued_pairs() {
        for x in (0..4).filter(|&x| x != f) {
            let here = out[t].arcs_at(f, x);
            let there = out[g.tet].arcs_at(g.perm.apply(f), g.perm.apply(x));
            if here != there {
                return Err(Error::InadmissibleSurface(format!(
                    "matching equation fails on face ({t},{f}) at corner {x}: {here} != {there}"
                )));
            }
        }
    }
    Ok(out)
}

/// A side of a disc: the face it lies in, the corner its arc cuts off, and
/// the tetrahedron edges holding its start and end points.
#[derive(Clone, Copy, Debug)]
struct DiscSide {
    face: usize,
    corner: usize,
    from: (usize, usize),
    to: (usize, usize),
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn others(v: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut i = 0;
    for x in 0..4 {
        if x != v {
            out[i] = x;
            i += 1;
        }
    }
    out
}

fn triangle_sides(v: usize) -> [DiscSide; 3] {
    let [a, b, c] = others(v);
    let side = |face, p, q| DiscSide {
        face,
        corner: v,
        from: edge(v, p),
        to: edge(v, q),
    };
    [side(c, a, b), side(a, b, c), side(b, c, a)]
}

fn quad_sides(k: usize) -> [DiscSide; 4] {
    let [[a, b], [c, d]] = QUAD_PAIRS[k];
    let corners = [edge(a, c), edge(a, d), edge(b, d), edge(b, c)];
    let faces = [b, c, a, d];
    let mut out = [DiscSide {
        face: 0,
        corner: 0,
        from: (0, 0),
        to: (0, 0),
    }; 4];
    for i in 0..4 {
        out[i] = DiscSide {
            face: faces[i],
            corner: quad_partner(k, faces[i]),
            from: corners[i],
            to: corners[(i + 1) % 4],
        };
    }
    out
}

fn sides_of(kind: DiscKind, counts: &TetCounts) -> Vec<DiscSide> {
    match kind {
        DiscKind::Tri { vertex, .. } => triangle_sides(vertex).to_vec(),
        DiscKind::Quad { .. } => quad_sides(counts.quad.unwrap().0).to_vec(),
    }
}

/// The assembled surface together with its transverse-orientation data.
pub(crate) struct DiscSurface {
    pub surface: PolygonSurface,
    transverse: ParityUnionFind,
}

pub(crate) struct DiscSurfaceSummary {
    pub components: Vec<ComponentSummary>,
    pub two_sided: Vec<bool>,
    pub comp_of: Vec<usize>,
}

impl DiscSurface {
    pub fn build(tri: &Triangulation, counts: &[TetCounts]) -> DiscSurface {
        let mut surface = PolygonSurface::new();
        let mut discs = Vec::new();
        // First polygon id of each tetrahedron's triangles per vertex, then quads.
        let mut tri_base = vec![[0usize; 4]; counts.len()];
        let mut quad_base = vec![0usize; counts.len()];
        for (t, c) in counts.iter().enumerate() {
            for v in 0..4 {
                tri_base[t][v] = discs.len();
                for index in 0..c.tri[v] {
                    surface.add_polygon(3);
                    discs.push((t, DiscKind::Tri { vertex: v, index }));
                }
            }
            quad_base[t] = discs.len();
            for index in 0..c.quad_count() {
                surface.add_polygon(4);
                discs.push((t, DiscKind::Quad { index }));
            }
        }
        let poly_of = |t: usize, kind: DiscKind| match kind {
            DiscKind::Tri { vertex, index } => tri_base[t][vertex] + index,
            DiscKind::Quad { index } => quad_base[t] + index,
        };

        let mut transverse = ParityUnionFind::new(discs.len());
        for (id, &(t, kind)) in discs.iter().enumerate() {
            let c = &counts[t];
            for (si, side) in sides_of(kind, c).iter().enumerate() {
                let Some(g) = tri.gluing(t, side.face) else { continue };
                let depth = match kind {
                    DiscKind::Tri { index, .. } => index,
                    DiscKind::Quad { index } => c.quad_depth(side.corner, index),
                };
                let (t2, f2, x2) = (g.tet, g.perm.apply(side.face), g.perm.apply(side.corner));
                let c2 = &counts[t2];
                let kind2 = c2.arc_disc(f2, x2, depth);
                let id2 = poly_of(t2, kind2);
                let sides2 = sides_of(kind2, c2);
                let si2 = sides2.iter().position(|s| s.face == f2).unwrap();
                let image_from = edge(g.perm.apply(side.from.0), g.perm.apply(side.from.1));
                let reversed = image_from == sides2[si2].to;
                if !surface.is_glued(id, si) {
                    surface.glue(id, si, id2, si2, reversed);
                }
                let h = positive_side_holds(kind, c, side.corner);
                let h2 = positive_side_holds(kind2, c2, x2);
                transverse.union(id, id2, h ^ h2);
            }
        }
        DiscSurface {
            surface,
            transverse,
        }
    }

    pub fn summary(&mut self) -> DiscSurfaceSummary {
        let (components, comp_of) = self.surface.components();
        let mut two_sided = vec![true; components.len()];
        for (p, &c) in comp_of.iter().enumerate() {
            if self.transverse.is_conflicted(p) {
                two_sided[c] = false;
            }
        }
        DiscSurfaceSummary {
            components,
            two_sided,
            comp_of,
        }
    }
}

/// Whether the designated positive side of a disc contains vertex `x`.
/// Triangles face their vertex; quadrilaterals face the side holding vertex 0.
fn positive_side_holds(kind: DiscKind, counts: &TetCounts, x: usize) -> bool {
    match kind {
        DiscKind::Tri { vertex, .. } => vertex == x,
        DiscKind::Quad { .. } => on_low_side(counts.quad.unwrap().0, x),
    }
}
