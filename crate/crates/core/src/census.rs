//! Exhaustive generation of small closed triangulations.
//!
//! Tetrahedra are introduced in breadth-first order: the lowest unglued face
//! is either glued to a fresh tetrahedron by the identity or to a later
//! unglued face by one of the six face maps. Every connected triangulation
//! has a labelling of this shape, and a labelling is kept only when it is the
//! smallest breadth-first relabelling of itself, so each isomorphism class
//! appears once. Branches creating an edge identified with itself in
//! reverse are cut as soon as the offending gluing is made.

use rayon::prelude::*;

use crate::perm::Perm4;
use crate::tri::{edge_index, Gluing, Triangulation, TriangulationClass, EDGE_VERTICES};
use crate::uf::ParityUnionFind;

/// All closed connected triangulations with `n` tetrahedra (valid edges,
/// sphere vertex links), one per isomorphism class, in canonical order.
pub fn closed_census(n: usize) -> Vec<Triangulation> {
    if n == 0 {
        return Vec::new();
    }
    let root = Triangulation::new(n);
    let edges = ParityUnionFind::new(6 * n);
    let state = State {
        tri: root,
        used: 1,
        edges,
    };
    // Split the first level of the search across threads.
    let firsts = state.children();
    let mut out: Vec<(Vec<u8>, Triangulation)> = firsts
        .into_par_iter()
        .flat_map_iter(|s| {
            let mut found = Vec::new();
            s.search(&mut found);
            found
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, t)| t).collect()
}

#[derive(Clone)]
struct State {
    tri: Triangulation,
    used: usize,
    edges: ParityUnionFind,
}

impl State {
    fn first_unglued(&self) -> Option<(usize, usize)> {
        (0..self.used)
            .flat_map(|t| (0..4).map(move |f| (t, f)))
            .find(|&(t, f)| self.tri.gluing(t, f).is_none())
    }

    fn with_gluing(&self, t: usize, f: usize, other: usize, perm: Perm4) -> Option<State> {
        let mut next = self.clone();
        next.tri.glue(t, f, other, perm).ok()?;
        if other == next.used {
            next.used += 1;
        }
        for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
            if a == f || b == f {
                continue;
            }
            let (pa, pb) = (perm.apply(a), perm.apply(b));
            let i = 6 * t + e;
            next.edges.union(i, 6 * other + edge_index(pa, pb), pa > pb);
            if next.edges.is_conflicted(i) {
                return None;
            }
        }
        Some(next)
    }

    fn children(&self) -> Vec<State> {
        let Some((t, f)) = self.first_unglued() else {
            return Vec::new();
        };
        let n = self.tri.size();
        let mut out = Vec::new();
        if self.used < n {
            out.extend(self.with_gluing(t, f, self.used, Perm4::IDENTITY));
        }
        for t2 in t..self.used {
            for f2 in 0..4 {
                if (t2, f2) <= (t, f) || self.tri.gluing(t2, f2).is_some() {
                    continue;
                }
                for perm in Perm4::all().filter(|p| p.apply(f) == f2) {
                    out.extend(self.with_gluing(t, f, t2, perm));
                }
            }
        }
        out
    }

    fn search(&self, found: &mut Vec<(Vec<u8>, Triangulation)>) {
        if self.first_unglued().is_none() {
            if self.used == self.tri.size() {
                let code = encode(&self.tri);
                if self.links_are_spheres()
                    && code == canonical_code(&self.tri)
                    && self.tri.classify() == TriangulationClass::Closed
                {
                    found.push((code, self.tri.clone()));
                }
            }
            return;
        }
        if !self.may_be_canonical() {
            return;
        }
        for child in self.children() {
            child.search(found);
        }
    }

    /// With valid edges and every face glued, the vertex links are all
    /// spheres exactly when `V - E + F - T = 0`, i.e. `V = E - n`.
    fn links_are_spheres(&self) -> bool {
        let n = self.tri.size();
        let mut corners = crate::uf::UnionFind::new(4 * n);
        for (t, f, g) in self.tri.glued_pairs() {
            for x in (0..4).filter(|&x| x != f) {
                corners.union(4 * t + x, 4 * g.tet + g.perm.apply(x));
            }
        }
        let mut edges = self.edges.clone();
        let v = corners.labels().1;
        let e = edges.labels().1;
        v + n == e
    }

    /// False when some breadth-first relabelling of the glued part already
    /// beats the current labelling, so no completion can be canonical.
    fn may_be_canonical(&self) -> bool {
        let mine = partial_code(&self.tri, 0, Perm4::IDENTITY);
        for start in 0..self.used {
            for sigma in Perm4::all() {
                if start == 0 && sigma == Perm4::IDENTITY {
                    continue;
                }
                let other = partial_code(&self.tri, start, sigma);
                let k = mine.len().min(other.len());
                if other[..k] < mine[..k] {
                    return false;
                }
            }
        }
        true
    }
}

fn perm_code(p: Perm4) -> u8 {
    let [a, b, c, d] = p.images();
    a << 6 | b << 4 | c << 2 | d
}

fn encode(tri: &Triangulation) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 * tri.size());
    for t in 0..tri.size() {
        for f in 0..4 {
            match tri.gluing(t, f) {
                Some(g) => {
                    out.push(g.tet as u8);
                    out.push(perm_code(g.perm));
                }
                None => out.extend([u8::MAX, u8::MAX]),
            }
        }
    }
    out
}

/// Breadth-first encoding rooted at `start`, stopping at the first unglued
/// face.
fn partial_code(tri: &Triangulation, start: usize, sigma: Perm4) -> Vec<u8> {
    let n = tri.size();
    let mut label = vec![usize::MAX; n];
    let mut order = vec![start];
    let mut frame = vec![Perm4::IDENTITY; n];
    label[start] = 0;
    frame[start] = sigma;
    let mut code = Vec::with_capacity(8 * n);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        let s = frame[u];
        let sinv = s.inverse();
        for nf in 0..4 {
            let Some(g) = tri.gluing(u, sinv.apply(nf)) else {
                return code;
            };
            if label[g.tet] == usize::MAX {
                label[g.tet] = order.len();
                order.push(g.tet);
                frame[g.tet] = s.compose(g.perm.inverse());
            }
            code.push(label[g.tet] as u8);
            code.push(perm_code(frame[g.tet].compose(g.perm).compose(sinv)));
        }
        i += 1;
    }
    code
}

/// Smallest encoding over all breadth-first relabellings of a connected
/// triangulation.
pub fn canonical_code(tri: &Triangulation) -> Vec<u8> {
    let n = tri.size();
    let mut best: Option<Vec<u8>> = None;
    for start in 0..n {
        for sigma in Perm4::all() {
            let code = bfs_code(tri, start, sigma, best.as_deref());
            if let Some(code) = code {
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Encoding of the relabelling rooted at `start` with framing `sigma`, or
/// `None` once it is known to exceed `bound`.
fn bfs_code(tri: &Triangulation, start: usize, sigma: Perm4, bound: Option<&[u8]>) -> Option<Vec<u8>> {
    let n = tri.size();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut frame = vec![Perm4::IDENTITY; n];
    label[start] = 0;
    order.push(start);
    frame[start] = sigma;
    let mut code = Vec::with_capacity(8 * n);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        let s = frame[u];
        let sinv = s.inverse();
        for nf in 0..4 {
            let f = sinv.apply(nf);
            match tri.gluing(u, f) {
                None => code.extend([u8::MAX, u8::MAX]),
                Some(g) => {
                    if label[g.tet] == usize::MAX {
                        label[g.tet] = order.len();
                        order.push(g.tet);
                        // Choose the new frame so this gluing reads as the identity.
                        frame[g.tet] = s.compose(g.perm.inverse());
                    }
                    let np = frame[g.tet].compose(g.perm).compose(sinv);
                    code.push(label[g.tet] as u8);
                    code.push(perm_code(np));
                }
            }
            if let Some(b) = bound {
                let k = code.len();
                if code[..] > b[..k] {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(code)
}

/// Relabels a connected triangulation into its canonical form.
pub fn canonical_form(tri: &Triangulation) -> Triangulation {
    let code = canonical_code(tri);
    decode(&code, tri.size())
}

fn decode(code: &[u8], n: usize) -> Triangulation {
    let mut gluings = vec![[None; 4]; n];
    for t in 0..n {
        for f in 0..4 {
            let k = 8 * t + 2 * f;
            if code[k] == u8::MAX {
                continue;
            }
            let c = code[k + 1];
            let perm = Perm4::new([c >> 6, c >> 4 & 3, c >> 2 & 3, c & 3]).unwrap();
            gluings[t][f] = Some(Gluing {
                tet: code[k] as usize,
                perm,
            });
        }
    }
    let mut out = Triangulation::new(n);
    for (t, row) in gluings.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            if let Some(g) = g {
                if (t, f) < (g.tet, g.perm.apply(f)) {
                    out.glue(t, f, g.tet, g.perm).expect("canonical code is consistent");
                }
            }
        }
    }
    out
}
