#![allow(dead_code)]

pub mod oracles;

use std::collections::HashMap;
use std::sync::OnceLock;

use crushkit::census::closed_census;
use crushkit::homology::{h1, HomologySummary};
use crushkit::normal::{enumerate_quad_vertex_surfaces, quad_to_standard, recognize_surface, StandardCoords};
use crushkit::tri::connected_sum;
use crushkit::{Perm4, Triangulation};

/// Closed census members with 1 to 4 tetrahedra, generated once per test
/// binary.
pub fn census() -> &'static [Vec<Triangulation>] {
    static CENSUS: OnceLock<Vec<Vec<Triangulation>>> = OnceLock::new();
    CENSUS.get_or_init(|| (1..=4).map(closed_census).collect())
}

pub fn census_upto(n: usize) -> impl Iterator<Item = &'static Triangulation> {
    census()[..n].iter().flatten()
}

fn first_with_h1(r: usize, factors: &[u32]) -> Triangulation {
    census_upto(4)
        .find(|t| {
            let h = h1(t).unwrap();
            h.r == r && h.invariant_factors == factors.iter().map(|&d| d.into()).collect::<Vec<_>>()
        })
        .unwrap()
        .clone()
}

/// The smallest census member with trivial homology and one vertex.
pub fn s3_one_vertex() -> Triangulation {
    census_upto(1)
        .find(|t| h1(t).unwrap().is_trivial() && t.skeleton().vertices().len() == 1)
        .unwrap()
        .clone()
}

/// The smallest census member with trivial homology and two vertices.
pub fn s3_two_vertex() -> Triangulation {
    census_upto(1)
        .find(|t| h1(t).unwrap().is_trivial() && t.skeleton().vertices().len() == 2)
        .unwrap()
        .clone()
}

pub fn rp3() -> Triangulation {
    first_with_h1(0, &[2])
}

pub fn l31() -> Triangulation {
    first_with_h1(0, &[3])
}

pub fn rp3_sum_rp3() -> Triangulation {
    let a = rp3();
    connected_sum(&a, &a).unwrap()
}

/// Quad vertex surfaces in standard coordinates, with their topology.
pub fn vertex_surfaces(t: &Triangulation) -> Vec<(StandardCoords, crushkit::normal::SurfaceClass)> {
    enumerate_quad_vertex_surfaces(t)
        .unwrap()
        .iter()
        .map(|q| {
            let s = quad_to_standard(t, q).unwrap();
            let c = recognize_surface(t, &s).unwrap();
            (s, c)
        })
        .collect()
}

/// The first census member that is non-orientable, has homology Z + Z_2 and
/// has a quad vertex surface that is a two-sided projective plane.
pub fn rp2_times_s1_from_census() -> Triangulation {
    let want = HomologySummary::from_parts(1, vec![2.into()]);
    census_upto(4)
        .find(|t| {
            !t.is_orientable()
                && h1(t).unwrap() == want
                && vertex_surfaces(t)
                    .iter()
                    .any(|(_, c)| c.is_projective_plane() && c.two_sided)
        })
        .unwrap()
        .clone()
}

/// Census members and derived triangulations used across the suites.
pub fn corpus() -> Vec<(String, Triangulation)> {
    let mut out: Vec<(String, Triangulation)> = Vec::new();
    for (k, members) in census().iter().enumerate() {
        for (i, t) in members.iter().enumerate() {
            out.push((format!("closed-{}-{i}", k + 1), t.clone()));
        }
    }
    out.push(("rp3#rp3".into(), rp3_sum_rp3()));
    out.push(("rp2xs1-product".into(), rp2_times_s1()));
    out
}

/// Projective plane times a circle, from two ordered triangles of the
/// projective plane, each crossed with an interval and cut into three
/// tetrahedra, with top and bottom identified.
pub fn rp2_times_s1() -> Triangulation {
    // Triangle edges (0,1), (0,2), (1,2) -> projective plane edge class,
    // identified preserving vertex order.
    let edge_class = |tri: usize, i: usize, j: usize| -> usize {
        match (tri, i, j) {
            (0, 0, 1) | (1, 0, 2) => 0,
            (0, 0, 2) | (1, 0, 1) => 1,
            _ => 2,
        }
    };
    type Label = (usize, usize, usize);
    let mut tets: Vec<[Label; 4]> = Vec::new();
    for tri in 0..2 {
        let v = |i: usize, lev: usize| (tri, i, lev);
        tets.push([v(0, 0), v(1, 0), v(2, 0), v(2, 1)]);
        tets.push([v(0, 0), v(1, 0), v(1, 1), v(2, 1)]);
        tets.push([v(0, 0), v(0, 1), v(1, 1), v(2, 1)]);
    }
    // Face key plus, per face vertex, the label used to match vertices.
    let face_key = |tet: usize, f: usize| -> (Vec<usize>, Vec<(usize, usize)>) {
        let verts: Vec<(usize, Label)> = (0..4).filter(|&x| x != f).map(|x| (x, tets[tet][x])).collect();
        let tri = verts[0].1 .0;
        let mut is: Vec<usize> = verts.iter().map(|(_, l)| l.1).collect();
        is.sort();
        is.dedup();
        let levels: Vec<usize> = verts.iter().map(|(_, l)| l.2).collect();
        let same_level = levels.iter().all(|&l| l == levels[0]);
        let mut matched = Vec::new();
        let key = if is.len() == 3 && same_level {
            for &(x, l) in &verts {
                matched.push((x, l.1));
            }
            vec![0, tri]
        } else if is.len() == 3 {
            for &(x, l) in &verts {
                matched.push((x, 10 * l.1 + l.2));
            }
            vec![1, tri]
        } else {
            let (i, j) = (is[0], is[1]);
            for &(x, l) in &verts {
                matched.push((x, 10 * usize::from(l.1 == j) + l.2));
            }
            let mut lab: Vec<usize> = matched.iter().map(|m| m.1).collect();
            lab.sort();
            let mut key = vec![2, edge_class(tri, i, j)];
            key.extend(lab);
            key
        };
        let mut full = key;
        if full[0] == 1 {
            let mut lab: Vec<usize> = matched.iter().map(|m| m.1).collect();
            lab.sort();
            full.extend(lab);
        }
        (full, matched)
    };
    let mut seen: HashMap<Vec<usize>, (usize, usize, Vec<(usize, usize)>)> = HashMap::new();
    let mut out = Triangulation::new(tets.len());
    for t in 0..tets.len() {
        for f in 0..4 {
            let (key, matched) = face_key(t, f);
            match seen.remove(&key) {
                None => {
                    seen.insert(key, (t, f, matched));
                }
                Some((t2, f2, m2)) => {
                    let mut images = [0u8; 4];
                    images[f2] = f as u8;
                    for &(x, lab) in &m2 {
                        let y = matched.iter().find(|m| m.1 == lab).unwrap().0;
                        images[x] = y as u8;
                    }
                    out.glue(t2, f2, t, Perm4::new(images).unwrap()).unwrap();
                }
            }
        }
    }
    assert!(seen.is_empty(), "unmatched faces: {seen:?}");
    out
}
