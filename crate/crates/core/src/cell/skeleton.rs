use std::collections::BTreeMap;

use crate::cell::{CellComplex, CellKind};
use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::surface::{ComponentSummary, PolygonSurface};
use crate::tri::Triangulation;
use crate::uf::{ParityUnionFind, UnionFind};

/// Numbers of invalid edges and of vertices meeting an odd number of them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParityReport {
    pub invalid_edge_count: usize,
    pub odd_vertex_count: usize,
}

/// Global vertices and edges of a cell complex.
#[derive(Clone, Debug)]
pub struct CellSkeleton {
    vertex_base: Vec<usize>,
    edge_base: Vec<usize>,
    vertex_label: Vec<usize>,
    vertex_count: usize,
    edge_label: Vec<usize>,
    edge_count: usize,
    invalid: Vec<bool>,
    /// Vertex of each edge class that is identified with itself in reverse.
    invalid_vertex: Vec<Option<usize>>,
}

impl CellSkeleton {
    pub fn new(c: &CellComplex) -> CellSkeleton {
        let mut vertex_base = vec![0; c.cells.len()];
        let mut edge_base = vec![0; c.cells.len()];
        let (mut nv, mut ne) = (0, 0);
        for (i, cell) in c.cells() {
            vertex_base[i] = nv;
            edge_base[i] = ne;
            nv += cell.vertex_count;
            ne += cell.edges.len();
        }
        let mut vertices = UnionFind::new(nv);
        let mut edges = ParityUnionFind::new(ne);
        for (i, cell) in c.cells() {
            for (_, f) in cell.live_faces() {
                let Some(g) = f.partner else { continue };
                let other = c.face(g.cell, g.face).unwrap();
                let n = f.len();
                for k in 0..n {
                    vertices.union(
                        vertex_base[i] + f.corners[k],
                        vertex_base[g.cell] + other.corners[g.map.corner(k, n)],
                    );
                    let j = g.map.side(k, n);
                    let dir_a = cell.edges[f.sides[k]].unwrap().0 == f.corners[k];
                    let tail_b = c.cell(g.cell).unwrap().edges[other.sides[j]].unwrap().0;
                    let dir_b = tail_b == other.corners[j];
                    edges.union(
                        edge_base[i] + f.sides[k],
                        edge_base[g.cell] + other.sides[j],
                        dir_a ^ dir_b ^ g.map.reflect,
                    );
                }
            }
        }
        let (vertex_label, vertex_count) = vertices.labels();
        let mut edge_label = vec![usize::MAX; ne];
        let mut root_label = BTreeMap::new();
        for (i, cell) in c.cells() {
            for (e, _) in cell.edges.iter().enumerate().filter(|(_, e)| e.is_some()) {
                let x = edge_base[i] + e;
                let next = root_label.len();
                edge_label[x] = *root_label.entry(edges.find(x).0).or_insert(next);
            }
        }
        let edge_count = root_label.len();
        let mut invalid = vec![false; edge_count];
        let mut invalid_vertex = vec![None; edge_count];
        for (i, cell) in c.cells() {
            for (e, ends) in cell.edges.iter().enumerate() {
                let Some((tail, _)) = ends else { continue };
                let x = edge_base[i] + e;
                if edges.is_conflicted(x) {
                    let l = edge_label[x];
                    invalid[l] = true;
                    invalid_vertex[l] = Some(vertex_label[vertex_base[i] + tail]);
                }
            }
        }
        CellSkeleton {
            vertex_base,
            edge_base,
            vertex_label,
            vertex_count,
            edge_label,
            edge_count,
            invalid,
            invalid_vertex,
        }
    }

    /// Number of vertex classes, counting local vertices of live cells only.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex_of(&self, cell: usize, v: usize) -> usize {
        self.vertex_label[self.vertex_base[cell] + v]
    }

    pub fn edge_of(&self, cell: usize, e: usize) -> usize {
        self.edge_label[self.edge_base[cell] + e]
    }

    pub fn is_invalid(&self, edge: usize) -> bool {
        self.invalid[edge]
    }

    pub fn parity_report(&self) -> ParityReport {
        let mut incident = vec![0usize; self.vertex_count];
        for v in self.invalid_vertex.iter().flatten() {
            incident[*v] += 1;
        }
        ParityReport {
            invalid_edge_count: self.invalid.iter().filter(|&&b| b).count(),
            odd_vertex_count: incident.iter().filter(|&&k| k % 2 == 1).count(),
        }
    }
}

impl CellComplex {
    pub fn parity_report(&self) -> ParityReport {
        CellSkeleton::new(self).parity_report()
    }

    /// Link of every vertex class, as `(vertex, summary)` pairs.
    pub fn vertex_links(&self) -> Result<Vec<(usize, ComponentSummary)>> {
        let skel = CellSkeleton::new(self);
        let mut surface = PolygonSurface::new();
        // (cell, face, corner) -> (polygon, side, arc runs with the polygon)
        let mut arcs: BTreeMap<(usize, usize, usize), (usize, usize, bool)> = BTreeMap::new();
        let mut owner = Vec::new();
        for (i, cell) in self.cells() {
            for v in 0..cell.vertex_count {
                // Each face corner at v is an arc between two edges at v.
                let mut pending: Vec<(usize, usize, usize)> = cell
                    .live_faces()
                    .filter_map(|(j, f)| {
                        let k = f.corners.iter().position(|&c| c == v)?;
                        let n = f.len();
                        Some((j, k, n))
                    })
                    .collect();
                let ends = |j: usize, k: usize, n: usize| {
                    let f = cell.faces[j].as_ref().unwrap();
                    (f.sides[(k + n - 1) % n], f.sides[k])
                };
                while let Some((j, k, n)) = pending.pop() {
                    let (start, mut cur) = ends(j, k, n);
                    let mut cycle = vec![(j, k, true)];
                    while cur != start {
                        let pos = pending
                            .iter()
                            .position(|&(j, k, n)| {
                                let (p, q) = ends(j, k, n);
                                p == cur || q == cur
                            })
                            .ok_or_else(|| {
                                Error::Invariant(format!("link of vertex {v} in cell {i} is not closed"))
                            })?;
                        let (j, k, n) = pending.swap_remove(pos);
                        let (p, q) = ends(j, k, n);
                        let forward = p == cur;
                        cycle.push((j, k, forward));
                        cur = if forward { q } else { p };
                    }
                    let poly = surface.add_polygon(cycle.len());
                    owner.push(skel.vertex_of(i, v));
                    for (side, (j, k, forward)) in cycle.into_iter().enumerate() {
                        arcs.insert((i, j, k), (poly, side, forward));
                    }
                }
            }
        }
        for (&(i, j, k), &(poly, side, forward)) in &arcs {
            let f = self.face(i, j).unwrap();
            let Some(g) = f.partner else { continue };
            let kk = g.map.corner(k, f.len());
            let &(poly2, side2, forward2) = arcs.get(&(g.cell, g.face, kk)).unwrap();
            if (poly2, side2) < (poly, side) || surface.is_glued(poly, side) {
                continue;
            }
            surface.glue(poly, side, poly2, side2, (forward != forward2) ^ g.map.reflect);
        }
        let (components, _) = surface.components();
        let mut out: Vec<(usize, ComponentSummary)> = components
            .into_iter()
            .map(|c| (owner[c.polygons[0]], c))
            .collect();
        out.sort_by_key(|(v, _)| *v);
        Ok(out)
    }

    /// The triangulation formed by an all-tetrahedron complex, numbering
    /// tetrahedra by their labels.
    pub fn to_triangulation(&self) -> Result<Triangulation> {
        let mut ids: Vec<(usize, usize)> = Vec::new();
        for (i, c) in self.cells() {
            if c.kind != CellKind::Tetrahedron {
                return Err(Error::Invariant(format!("cell {i} is a {}", c.kind.name())));
            }
            ids.push((c.label.unwrap_or(usize::MAX), i));
        }
        ids.sort();
        let mut index = vec![usize::MAX; self.cells.len()];
        for (k, &(_, i)) in ids.iter().enumerate() {
            index[i] = k;
        }
        let mut tri = Triangulation::new(ids.len());
        for &(_, i) in &ids {
            let c = self.cell(i).unwrap();
            for (f, face) in c.live_faces() {
                let Some(g) = face.partner else { continue };
                let other = self.face(g.cell, g.face).unwrap();
                let mut images = [0u8; 4];
                images[f] = g.face as u8;
                for k in 0..3 {
                    images[face.corners[k]] = other.corners[g.map.corner(k, 3)] as u8;
                }
                let perm = Perm4::new(images)
                    .ok_or_else(|| Error::Invariant(format!("face ({i},{f}) has a bad gluing")))?;
                let (a, b) = (index[i], index[g.cell]);
                if (a, f) < (b, g.face) {
                    tri.glue(a, f, b, perm)?;
                }
            }
        }
        tri.check_gluings()?;
        Ok(tri)
    }
}
