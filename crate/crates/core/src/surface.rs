//! Abstract surfaces assembled from polygons glued along their sides.
//!
//! Used for vertex links (of triangulations and cell complexes) and for
//! normal surfaces. Side `i` of an `n`-gon runs from corner `i` to corner
//! `(i + 1) % n`.

use crate::uf::{ParityUnionFind, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SideGluing {
    poly: usize,
    side: usize,
    /// True when the two sides are traversed in opposite directions, i.e.
    /// the gluing is compatible with equal orientations of both polygons.
    reversed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct PolygonSurface {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    gluings: Vec<Vec<Option<SideGluing>>>,
}

/// Topological summary of one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    pub euler: i64,
    pub orientable: bool,
    pub boundary_curves: usize,
    pub polygons: Vec<usize>,
}

impl ComponentSummary {
    pub fn is_sphere(&self) -> bool {
        self.euler == 2 && self.boundary_curves == 0
    }

    pub fn is_disc(&self) -> bool {
        self.euler == 1 && self.boundary_curves == 1
    }
}

impl PolygonSurface {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_polygon(&mut self, sides: usize) -> usize {
        let next = self.offsets.last().map_or(0, |o| o + self.sizes.last().unwrap());
        self.offsets.push(next);
        self.sizes.push(sides);
        self.gluings.push(vec![None; sides]);
        self.sizes.len() - 1
    }

    pub fn polygon_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_glued(&self, poly: usize, side: usize) -> bool {
        self.gluings[poly][side].is_some()
    }

    /// Glues side `side_a` of `a` to side `side_b` of `b`. Gluing a side
    /// that is already glued is a logic error and panics in debug builds.
    pub fn glue(&mut self, a: usize, side_a: usize, b: usize, side_b: usize, reversed: bool) {
        debug_assert!((a, side_a) != (b, side_b), "side glued to itself");
        debug_assert!(self.gluings[a][side_a].is_none() && self.gluings[b][side_b].is_none());
        self.gluings[a][side_a] = Some(SideGluing {
            poly: b,
            side: side_b,
            reversed,
        });
        self.gluings[b][side_b] = Some(SideGluing {
            poly: a,
            side: side_a,
            reversed,
        });
    }

    fn corner(&self, poly: usize, k: usize) -> usize {
        self.offsets[poly] + k % self.sizes[poly]
    }

    /// Splits the surface into components and computes the euler
    /// characteristic, orientability and boundary curve count of each.
    /// Components are numbered by their smallest polygon.
    pub fn components(&self) -> (Vec<ComponentSummary>, Vec<usize>) {
        let npoly = self.sizes.len();
        let ncorner = self.offsets.last().map_or(0, |o| o + self.sizes.last().unwrap());
        let mut polys = UnionFind::new(npoly);
        let mut corners = UnionFind::new(ncorner);
        let mut orient = ParityUnionFind::new(npoly);
        for a in 0..npoly {
            for i in 0..self.sizes[a] {
                let Some(g) = self.gluings[a][i] else { continue };
                if (g.poly, g.side) < (a, i) {
                    continue;
                }
                let j = g.side;
                polys.union(a, g.poly);
                orient.union(a, g.poly, !g.reversed);
                if g.reversed {
                    corners.union(self.corner(a, i), self.corner(g.poly, j + 1));
                    corners.union(self.corner(a, i + 1), self.corner(g.poly, j));
                } else {
                    corners.union(self.corner(a, i), self.corner(g.poly, j));
                    corners.union(self.corner(a, i + 1), self.corner(g.poly, j + 1));
                }
            }
        }
        let (comp_of, ncomp) = polys.labels();
        let mut out: Vec<ComponentSummary> = (0..ncomp)
            .map(|_| ComponentSummary {
                euler: 0,
                orientable: true,
                boundary_curves: 0,
                polygons: Vec::new(),
            })
            .collect();

        let mut vertex_seen = vec![false; ncorner];
        let mut boundary = UnionFind::new(ncorner);
        let mut boundary_roots: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for a in 0..npoly {
            let c = comp_of[a];
            let comp = &mut out[c];
            comp.polygons.push(a);
            comp.euler += 1;
            if orient.is_conflicted(a) {
                comp.orientable = false;
            }
            for i in 0..self.sizes[a] {
                let root = corners.find(self.corner(a, i));
                if !vertex_seen[root] {
                    vertex_seen[root] = true;
                    comp.euler += 1;
                }
                match self.gluings[a][i] {
                    Some(g) => {
                        // Each glued pair is one edge; count it from one side.
                        if (g.poly, g.side) > (a, i) {
                            comp.euler -= 1;
                        }
                    }
                    None => {
                        comp.euler -= 1;
                        let u = corners.find(self.corner(a, i));
                        let v = corners.find(self.corner(a, i + 1));
                        boundary.union(u, v);
                        boundary_roots[c].push(u);
                    }
                }
            }
        }
        for (c, roots) in boundary_roots.into_iter().enumerate() {
            let mut distinct: Vec<usize> = roots.into_iter().map(|r| boundary.find(r)).collect();
            distinct.sort_unstable();
            distinct.dedup();
            out[c].boundary_curves = distinct.len();
        }
        (out, comp_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_boundary_is_sphere() {
        // Four triangles forming the boundary of a tetrahedron with vertices
        // a,b,c,d: faces (a,b,c), (a,d,b), (b,d,c), (c,d,a) oriented outward.
        let faces = [[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]];
        let mut s = PolygonSurface::new();
        for _ in 0..4 {
            s.add_polygon(3);
        }
        for a in 0..4 {
            for i in 0..3 {
                let (u, v) = (faces[a][i], faces[a][(i + 1) % 3]);
                for b in a + 1..4 {
                    for j in 0..3 {
                        let (x, y) = (faces[b][j], faces[b][(j + 1) % 3]);
                        if (x, y) == (v, u) {
                            s.glue(a, i, b, j, true);
                        }
                    }
                }
            }
        }
        let (comps, _) = s.components();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_sphere());
        assert!(comps[0].orientable);
    }

    #[test]
    fn square_identifications() {
        // Torus and Klein bottle from a single square.
        let mut torus = PolygonSurface::new();
        torus.add_polygon(4);
        torus.glue(0, 0, 0, 2, true);
        torus.glue(0, 1, 0, 3, true);
        let (c, _) = torus.components();
        assert_eq!((c[0].euler, c[0].orientable), (0, true));

        let mut klein = PolygonSurface::new();
        klein.add_polygon(4);
        klein.glue(0, 0, 0, 2, true);
        klein.glue(0, 1, 0, 3, false);
        let (c, _) = klein.components();
        assert_eq!((c[0].euler, c[0].orientable), (0, false));

        let mut rp2 = PolygonSurface::new();
        rp2.add_polygon(2);
        rp2.glue(0, 0, 0, 1, false);
        let (c, _) = rp2.components();
        assert_eq!((c[0].euler, c[0].orientable, c[0].boundary_curves), (1, false, 0));
    }

    #[test]
    fn lone_triangle_is_disc() {
        let mut s = PolygonSurface::new();
        s.add_polygon(3);
        s.add_polygon(3);
        let (c, comp_of) = s.components();
        assert_eq!(c.len(), 2);
        assert!(c[0].is_disc() && c[1].is_disc());
        assert_eq!(comp_of, vec![0, 1]);
    }
}
