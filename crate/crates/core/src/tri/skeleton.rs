use crate::normal::discs::{DiscSurface, TetCounts};
use crate::tri::Triangulation;
use crate::uf::{ParityUnionFind, UnionFind};

/// Tetrahedron edge `i` joins these two vertices, lower label first.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`EDGE_VERTICES`] of the edge joining `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge joins {a} and {b}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkSummary {
    pub euler: i64,
    pub orientable: bool,
    pub closed: bool,
}

impl LinkSummary {
    pub fn is_sphere(&self) -> bool {
        self.euler == 2 && self.closed
    }

    pub fn is_disc(&self) -> bool {
        self.euler == 1 && !self.closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    /// `(tetrahedron, vertex)` pairs.
    pub embeddings: Vec<(usize, usize)>,
    pub link: LinkSummary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// `(tetrahedron, edge index)` pairs.
    pub embeddings: Vec<(usize, usize)>,
    pub valid: bool,
    pub boundary: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleClass {
    /// `(tetrahedron, face)` pairs: one for a boundary face, two otherwise.
    pub embeddings: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangulationClass {
    Closed,
    Bounded,
    Ideal,
    Invalid,
}

/// Vertex, edge and triangle classes of a triangulation.
#[derive(Clone, Debug)]
pub struct Skeleton {
    vertices: Vec<VertexClass>,
    edges: Vec<EdgeClass>,
    triangles: Vec<TriangleClass>,
    vertex_of: Vec<[usize; 4]>,
    edge_of: Vec<[usize; 6]>,
    /// Whether the tetrahedron edge, read from lower to higher label, runs
    /// against the direction of its class.
    edge_reversed: Vec<[bool; 6]>,
    triangle_of: Vec<[usize; 4]>,
    boundary_faces: usize,
}

impl Skeleton {
    pub fn new(tri: &Triangulation) -> Skeleton {
        let n = tri.size();

        let mut corners = UnionFind::new(4 * n);
        let mut edges = ParityUnionFind::new(6 * n);
        for (t, f, g) in tri.glued_pairs() {
            let p = g.perm;
            for x in (0..4).filter(|&x| x != f) {
                corners.union(4 * t + x, 4 * g.tet + p.apply(x));
            }
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                if a == f || b == f {
                    continue;
                }
                let (pa, pb) = (p.apply(a), p.apply(b));
                edges.union(6 * t + e, 6 * g.tet + edge_index(pa, pb), pa > pb);
            }
        }

        let (vlabel, nv) = corners.labels();
        let mut vertex_of = vec![[0; 4]; n];
        let mut vembs = vec![Vec::new(); nv];
        for (c, &l) in vlabel.iter().enumerate() {
            vertex_of[c / 4][c % 4] = l;
            vembs[l].push((c / 4, c % 4));
        }

        let links = {
            let counts = vec![
                TetCounts {
                    tri: [1; 4],
                    quad: None
                };
                n
            ];
            let mut surface = DiscSurface::build(tri, &counts);
            surface.summary()
        };
        // Link triangles are numbered 4t + v, matching the corner numbering.
        let vertices = vembs
            .into_iter()
            .map(|embeddings| {
                let (t, v) = embeddings[0];
                let comp = &links.components[links.comp_of[4 * t + v]];
                VertexClass {
                    embeddings,
                    link: LinkSummary {
                        euler: comp.euler,
                        orientable: comp.orientable,
                        closed: comp.boundary_curves == 0,
                    },
                }
            })
            .collect();

        let (elabel, ne) = edges.labels();
        let mut edge_of = vec![[0; 6]; n];
        let mut edge_reversed = vec![[false; 6]; n];
        let mut eclasses: Vec<EdgeClass> = (0..ne)
            .map(|_| EdgeClass {
                embeddings: Vec::new(),
                valid: true,
                boundary: false,
            })
            .collect();
        for (i, &l) in elabel.iter().enumerate() {
            let (t, e) = (i / 6, i % 6);
            edge_of[t][e] = l;
            edge_reversed[t][e] = edges.find(i).1;
            let class = &mut eclasses[l];
            class.embeddings.push((t, e));
            if edges.is_conflicted(i) {
                class.valid = false;
            }
            let (a, b) = EDGE_VERTICES[e];
            if (0..4).any(|f| f != a && f != b && tri.gluing(t, f).is_none()) {
                class.boundary = true;
            }
        }

        let mut triangle_of = vec![[usize::MAX; 4]; n];
        let mut triangles = Vec::new();
        let mut boundary_faces = 0;
        for t in 0..n {
            for f in 0..4 {
                if triangle_of[t][f] != usize::MAX {
                    continue;
                }
                let id = triangles.len();
                triangle_of[t][f] = id;
                let mut embeddings = vec![(t, f)];
                match tri.gluing(t, f) {
                    Some(g) => {
                        let f2 = g.perm.apply(f);
                        triangle_of[g.tet][f2] = id;
                        embeddings.push((g.tet, f2));
                    }
                    None => boundary_faces += 1,
                }
                triangles.push(TriangleClass { embeddings });
            }
        }

        Skeleton {
            vertices,
            edges: eclasses,
            triangles,
            vertex_of,
            edge_of,
            edge_reversed,
            triangle_of,
            boundary_faces,
        }
    }

    pub fn vertices(&self) -> &[VertexClass] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn triangles(&self) -> &[TriangleClass] {
        &self.triangles
    }

    pub fn vertex_of(&self, tet: usize, v: usize) -> usize {
        self.vertex_of[tet][v]
    }

    pub fn edge_of(&self, tet: usize, e: usize) -> usize {
        self.edge_of[tet][e]
    }

    /// True when edge `e` of `tet`, read from its lower to its higher vertex
    /// label, points against the chosen direction of its class.
    pub fn edge_reversed(&self, tet: usize, e: usize) -> bool {
        self.edge_reversed[tet][e]
    }

    pub fn triangle_of(&self, tet: usize, f: usize) -> usize {
        self.triangle_of[tet][f]
    }

    pub fn has_invalid_edge(&self) -> bool {
        self.edges.iter().any(|e| !e.valid)
    }

    pub fn invalid_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.edges[e].valid).collect()
    }

    pub fn boundary_face_count(&self) -> usize {
        self.boundary_faces
    }
}

pub fn classify(tri: &Triangulation) -> TriangulationClass {
    let skel = tri.skeleton();
    if skel.has_invalid_edge() {
        return TriangulationClass::Invalid;
    }
    let spheres = skel.vertices().iter().all(|v| v.link.is_sphere());
    if skel.boundary_face_count() == 0 && spheres {
        return TriangulationClass::Closed;
    }
    let ok = skel
        .vertices()
        .iter()
        .all(|v| v.link.is_sphere() || v.link.is_disc());
    if ok && skel.boundary_face_count() > 0 {
        TriangulationClass::Bounded
    } else {
        TriangulationClass::Ideal
    }
}
