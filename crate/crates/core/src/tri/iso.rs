use std::collections::VecDeque;

use crate::perm::Perm4;
use crate::tri::Triangulation;

/// A combinatorial isomorphism: tetrahedron `t` maps to `tet_map[t]` with
/// its vertices relabelled by `vertex_maps[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<Perm4>,
}

impl Isomorphism {
    pub fn apply(&self, tri: &Triangulation) -> Triangulation {
        tri.relabelled(&self.tet_map, &self.vertex_maps)
    }
}

/// Searches for an isomorphism from `a` onto `b`, respecting gluings and
/// boundary faces. Components are matched greedily; within a component the
/// image of its first tetrahedron and that tetrahedron's framing determine
/// everything else, so all `n * 24` choices are tried.
pub fn is_isomorphic(a: &Triangulation, b: &Triangulation) -> Option<Isomorphism> {
    if a.size() != b.size() {
        return None;
    }
    let ca = a.component_tets();
    let cb = b.component_tets();
    if ca.len() != cb.len() {
        return None;
    }
    let mut used = vec![false; cb.len()];
    let mut tet_map = vec![usize::MAX; a.size()];
    let mut vertex_maps = vec![Perm4::IDENTITY; a.size()];
    for comp in &ca {
        let found = cb.iter().enumerate().find_map(|(j, target)| {
            if used[j] || target.len() != comp.len() {
                return None;
            }
            let start = comp[0];
            target.iter().find_map(|&img| {
                Perm4::all()
                    .find_map(|sigma| extend(a, b, start, img, sigma))
                    .map(|m| (j, m))
            })
        });
        let (j, (tm, vm)) = found?;
        used[j] = true;
        for &t in comp {
            tet_map[t] = tm[t];
            vertex_maps[t] = vm[t];
        }
    }
    Some(Isomorphism {
        tet_map,
        vertex_maps,
    })
}

/// Propagates the choice `start -> (img, sigma)` across the component of
/// `start`. Returns the partial maps (unset entries are `usize::MAX`).
fn extend(
    a: &Triangulation,
    b: &Triangulation,
    start: usize,
    img: usize,
    sigma: Perm4,
) -> Option<(Vec<usize>, Vec<Perm4>)> {
    let mut tet_map = vec![usize::MAX; a.size()];
    let mut inverse = vec![usize::MAX; b.size()];
    let mut vmap = vec![Perm4::IDENTITY; a.size()];
    tet_map[start] = img;
    inverse[img] = start;
    vmap[start] = sigma;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let (u2, s) = (tet_map[u], vmap[u]);
        for f in 0..4 {
            let f2 = s.apply(f);
            match (a.gluing(u, f), b.gluing(u2, f2)) {
                (None, None) => {}
                (Some(ga), Some(gb)) => {
                    let want = gb.perm.compose(s).compose(ga.perm.inverse());
                    let w = ga.tet;
                    if tet_map[w] == usize::MAX {
                        if inverse[gb.tet] != usize::MAX {
                            return None;
                        }
                        tet_map[w] = gb.tet;
                        inverse[gb.tet] = w;
                        vmap[w] = want;
                        queue.push_back(w);
                    } else if tet_map[w] != gb.tet || vmap[w] != want {
                        return None;
                    }
                }
                _ => return None,
            }
        }
    }
    Some((tet_map, vmap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::disjoint_union;

    fn sample() -> Triangulation {
        "tets 2\n0: 1:0123 1:0123 1:0123 1:0123\n1: 0:0123 0:0123 0:0123 0:0123\n"
            .parse()
            .unwrap()
    }

    #[test]
    fn identity_and_relabelling() {
        let t = sample();
        let iso = is_isomorphic(&t, &t).unwrap();
        assert_eq!(iso.apply(&t), t);

        let relabelled = t.relabelled(&[1, 0], &["1203".parse().unwrap(), "3210".parse().unwrap()]);
        let iso = is_isomorphic(&t, &relabelled).unwrap();
        assert_eq!(iso.apply(&t), relabelled);
        assert!(is_isomorphic(&relabelled, &t).is_some());
    }

    #[test]
    fn size_and_boundary_mismatch() {
        assert!(is_isomorphic(&sample(), &Triangulation::new(1)).is_none());
        let mut t = Triangulation::new(2);
        t.glue(0, 0, 1, Perm4::IDENTITY).unwrap();
        assert!(is_isomorphic(&t, &Triangulation::new(2)).is_none());
    }

    #[test]
    fn components_matched_in_any_order() {
        let one: Triangulation = "tets 1\n0: 0:1023 0:1023 0:0132 0:0132\n".parse().unwrap();
        let u = disjoint_union(&one, &sample());
        let v = disjoint_union(&sample(), &one);
        let iso = is_isomorphic(&u, &v).unwrap();
        assert_eq!(iso.apply(&u), v);
    }
}
