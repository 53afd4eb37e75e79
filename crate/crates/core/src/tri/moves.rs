use crate::error::{Error, Result};
use crate::perm::Perm4;
use crate::tri::{Gluing, Triangulation};

/// `a` followed by `b`, with the tetrahedra of `b` shifted by `a.size()`.
pub fn disjoint_union(a: &Triangulation, b: &Triangulation) -> Triangulation {
    let shift = a.size();
    let mut gluings = a.gluings.clone();
    for row in &b.gluings {
        gluings.push(row.map(|g| {
            g.map(|g| Gluing {
                tet: g.tet + shift,
                perm: g.perm,
            })
        }));
    }
    Triangulation { gluings }
}

/// Subdivides tetrahedron `tet` into four tetrahedra around a new interior
/// vertex. The piece carrying original face `f` keeps index `tet` for
/// `f = 0` and is appended for `f = 1, 2, 3`; in each piece the new vertex
/// takes label `f`.
pub fn one_four_move(tri: &Triangulation, tet: usize) -> Triangulation {
    let n = tri.size();
    let piece = |f: usize| if f == 0 { tet } else { n + f - 1 };
    let mut gluings = tri.gluings.clone();
    gluings.extend([[None; 4]; 3]);
    // Gluings from other tetrahedra into `tet` now land on the right piece.
    for t in 0..n {
        if t == tet {
            continue;
        }
        for f in 0..4 {
            if let Some(g) = tri.gluings[t][f] {
                if g.tet == tet {
                    gluings[t][f] = Some(Gluing {
                        tet: piece(g.perm.apply(f)),
                        perm: g.perm,
                    });
                }
            }
        }
    }
    for f in 0..4 {
        let mut row = [None; 4];
        row[f] = tri.gluings[tet][f].map(|g| Gluing {
            tet: if g.tet == tet {
                piece(g.perm.apply(f))
            } else {
                g.tet
            },
            perm: g.perm,
        });
        for h in (0..4).filter(|&h| h != f) {
            row[h] = Some(Gluing {
                tet: piece(h),
                perm: Perm4::transposition(f, h),
            });
        }
        gluings[piece(f)] = row;
    }
    Triangulation { gluings }
}

/// An internal face whose three vertices and three edges are pairwise
/// distinct in the skeleton, as `(tet, face)`.
pub fn embedded_face(tri: &Triangulation) -> Option<(usize, usize)> {
    let skel = tri.skeleton();
    for t in 0..tri.size() {
        for f in 0..4 {
            if tri.gluing(t, f).is_none() {
                continue;
            }
            let vs: Vec<usize> = (0..4)
                .filter(|&v| v != f)
                .map(|v| skel.vertex_of(t, v))
                .collect();
            let es: Vec<usize> = super::EDGE_VERTICES
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a != f && b != f)
                .map(|(e, _)| skel.edge_of(t, e))
                .collect();
            let distinct = |x: &[usize]| x[0] != x[1] && x[0] != x[2] && x[1] != x[2];
            if distinct(&vs) && distinct(&es) {
                return Some((t, f));
            }
        }
    }
    None
}

fn with_embedded_face(tri: &Triangulation) -> Result<(Triangulation, (usize, usize))> {
    let mut cur = tri.clone();
    for _ in 0..3 {
        if let Some(face) = embedded_face(&cur) {
            return Ok((cur, face));
        }
        if cur.is_empty() {
            break;
        }
        cur = one_four_move(&cur, cur.size() - 1);
    }
    Err(Error::Precondition(
        "no embedded internal face found for the connected sum".into(),
    ))
}

/// Connected sum of two closed connected triangulations.
///
/// An embedded face of each summand is cut open, turning a neighbourhood of
/// it into a pair of triangles bounding a ball; the two resulting boundary
/// spheres are then glued crosswise. Either summand is subdivided first if
/// it has no embedded face.
pub fn connected_sum(a: &Triangulation, b: &Triangulation) -> Result<Triangulation> {
    let (a, (ta, fa)) = with_embedded_face(a)?;
    let (b, (tb, fb)) = with_embedded_face(b)?;
    let shift = a.size();
    let mut out = disjoint_union(&a, &b);
    let ga = out.unglue(ta, fa).unwrap();
    let gb = out.unglue(tb + shift, fb).unwrap();
    let phi = Perm4::all().find(|p| p.apply(fa) == fb).unwrap();
    out.glue(ta, fa, tb + shift, phi)?;
    let other = gb.perm.compose(phi).compose(ga.perm.inverse());
    out.glue(ga.tet, ga.perm.apply(fa), gb.tet, other)?;
    Ok(out)
}
