//! Crushing a triangulation along a normal surface, tetrahedron by
//! tetrahedron.
//!
//! Every tetrahedron containing a quadrilateral disappears. Its four faces
//! collapse in pairs: for a quadrilateral separating `{a,b}` from `{c,d}`,
//! faces `c` and `d` (which share edge `ab`) become one triangle, as do
//! faces `a` and `b`. Surviving faces are reglued by walking through chains
//! of destroyed tetrahedra.

use crate::error::{Error, Result};
use crate::normal::discs::tet_counts;
use crate::normal::{StandardCoords, QUAD_PAIRS};
use crate::perm::Perm4;
use crate::tri::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrushOutcome {
    pub result: Triangulation,
    pub destroyed_tets: usize,
    /// Index in `result` of each input tetrahedron, if it survives.
    pub survivor_map: Vec<Option<usize>>,
}

/// The face a walk leaves by after entering a destroyed tetrahedron of the
/// given quadrilateral type through `entry_face`, and the vertex map
/// identifying the two faces.
pub fn through_face_pairing(quad_type: usize, entry_face: usize) -> (usize, Perm4) {
    let [[a, b], [c, d]] = QUAD_PAIRS[quad_type];
    let exit = match entry_face {
        x if x == a => b,
        x if x == b => a,
        x if x == c => d,
        _ => c,
    };
    (exit, Perm4::transposition(entry_face, exit))
}

pub fn crush_bulk(tri: &Triangulation, s: &StandardCoords) -> Result<CrushOutcome> {
    if tri.skeleton().has_invalid_edge() {
        return Err(Error::Precondition("triangulation has an invalid edge".into()));
    }
    let counts = tet_counts(tri, s)?;
    let n = tri.size();
    let mut survivor_map = vec![None; n];
    let mut next = 0;
    for t in 0..n {
        if counts[t].quad.is_none() {
            survivor_map[t] = Some(next);
            next += 1;
        }
    }
    let destroyed = n - next;
    let mut result = Triangulation::new(next);
    for t in 0..n {
        let Some(nt) = survivor_map[t] else { continue };
        for f in 0..4 {
            let Some((t2, perm)) = walk(tri, &counts, t, f, destroyed)? else {
                continue;
            };
            let nt2 = survivor_map[t2].unwrap();
            match result.gluing(nt, f) {
                Some(g) if g.tet == nt2 && g.perm == perm => {}
                Some(_) => {
                    return Err(Error::Invariant(format!(
                        "walks from ({t},{f}) disagree on its partner"
                    )))
                }
                None => result.glue(nt, f, nt2, perm)?,
            }
        }
    }
    result.check_gluings()?;
    Ok(CrushOutcome {
        result,
        destroyed_tets: destroyed,
        survivor_map,
    })
}

/// Follows gluings from a surviving face through destroyed tetrahedra.
/// Returns the surviving tetrahedron reached and the composed vertex map, or
/// `None` if the walk ends on the boundary.
fn walk(
    tri: &Triangulation,
    counts: &[crate::normal::discs::TetCounts],
    t: usize,
    f: usize,
    destroyed: usize,
) -> Result<Option<(usize, Perm4)>> {
    let Some(g) = tri.gluing(t, f) else { return Ok(None) };
    let mut acc = g.perm;
    let mut cur = (g.tet, g.perm.apply(f));
    for _ in 0..=2 * destroyed {
        let (ct, cf) = cur;
        let Some((k, _)) = counts[ct].quad else {
            return Ok(Some((ct, acc)));
        };
        let (exit, swap) = through_face_pairing(k, cf);
        acc = swap.compose(acc);
        let Some(g) = tri.gluing(ct, exit) else { return Ok(None) };
        acc = g.perm.compose(acc);
        cur = (g.tet, g.perm.apply(exit));
    }
    Err(Error::Invariant(format!(
        "walk from ({t},{f}) did not terminate"
    )))
}
