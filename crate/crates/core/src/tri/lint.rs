use crate::error::{Error, Result};
use crate::tri::{edge_index, Triangulation, TriangulationClass};

/// Combinatorial properties every minimal 0-efficient triangulation has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LintReport {
    pub vertex_count: usize,
    pub degree_one_edge_ids: Vec<usize>,
    pub cone_face_ids: Vec<usize>,
}

impl LintReport {
    pub fn is_clean(&self) -> bool {
        self.vertex_count == 1 && self.degree_one_edge_ids.is_empty() && self.cone_face_ids.is_empty()
    }
}

pub fn lint_minimal(tri: &Triangulation) -> Result<LintReport> {
    if tri.classify() != TriangulationClass::Closed {
        return Err(Error::Precondition(
            "lint requires a closed valid triangulation".into(),
        ));
    }
    let skel = tri.skeleton();
    let degree_one_edge_ids = (0..skel.edges().len())
        .filter(|&e| skel.edges()[e].degree() == 1)
        .collect();

    // Direction of x -> y relative to its edge class.
    let forward = |t: usize, x: usize, y: usize| skel.edge_reversed(t, edge_index(x, y)) == (x > y);
    let mut cone_face_ids = Vec::new();
    for (id, class) in skel.triangles().iter().enumerate() {
        let (t, f) = class.embeddings[0];
        let corners: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        let cone = (0..3).any(|i| {
            let x = corners[i];
            let y = corners[(i + 1) % 3];
            let z = corners[(i + 2) % 3];
            skel.edge_of(t, edge_index(x, y)) == skel.edge_of(t, edge_index(x, z))
                && forward(t, x, y) == forward(t, x, z)
        });
        if cone {
            cone_face_ids.push(id);
        }
    }
    Ok(LintReport {
        vertex_count: skel.vertices().len(),
        degree_one_edge_ids,
        cone_face_ids,
    })
}
