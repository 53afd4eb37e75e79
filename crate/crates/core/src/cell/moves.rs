use crate::cell::{CellComplex, CellFace, CellKind, Dihedral, FaceLink};
use crate::error::{Error, Result};

/// A component removed by flattening a pillow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deletion {
    /// Both faces were on the boundary.
    Ball,
    Sphere,
    Rp3,
    L31,
    /// Bigonal pillow whose faces are identified by a reflection that takes
    /// each edge to itself reversed.
    FoldedBigonalPillow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveEvent {
    TriangularPillow { cell: usize, deletion: Option<Deletion> },
    BigonalPillow { cell: usize, deletion: Option<Deletion> },
    Bigon { cell: usize, face: usize },
}

impl MoveEvent {
    pub fn deletion(&self) -> Option<Deletion> {
        match *self {
            MoveEvent::TriangularPillow { deletion, .. } | MoveEvent::BigonalPillow { deletion, .. } => {
                deletion
            }
            MoveEvent::Bigon { .. } => None,
        }
    }
}

/// The symmetry carrying `a` onto `b` that matches corners and sides, for
/// two faces of one cell with the same corners.
fn internal_map(a: &CellFace, b: &CellFace) -> Result<Dihedral> {
    let n = a.len();
    let offset = b
        .corners
        .iter()
        .position(|&c| c == a.corners[0])
        .ok_or_else(|| Error::Invariant("pillow faces do not share corners".into()))?;
    [false, true]
        .into_iter()
        .map(|reflect| Dihedral { offset, reflect })
        .find(|m| {
            (0..n).all(|i| b.corners[m.corner(i, n)] == a.corners[i] && b.sides[m.side(i, n)] == a.sides[i])
        })
        .ok_or_else(|| Error::Invariant("pillow faces do not match".into()))
}

impl CellComplex {
    fn pillow_faces(&self, cell: usize, kind: CellKind) -> Result<(usize, usize)> {
        let c = self
            .cell(cell)
            .filter(|c| c.kind == kind)
            .ok_or_else(|| Error::Precondition(format!("cell {cell} is not a {}", kind.name())))?;
        let ids: Vec<usize> = c.live_faces().map(|(i, _)| i).collect();
        Ok((ids[0], ids[1]))
    }

    fn flatten_pillow(&mut self, cell: usize, kind: CellKind) -> Result<Option<Deletion>> {
        let (f1, f2) = self.pillow_faces(cell, kind)?;
        let a = self.face(cell, f1).unwrap().clone();
        let b = self.face(cell, f2).unwrap().clone();
        let n = a.len();
        let m = internal_map(&a, &b)?;
        let deletion = match (a.partner, b.partner) {
            (Some(g), _) if (g.cell, g.face) == (cell, f2) => {
                let h = g.map.then(m.inverse(n), n);
                Some(match (h.reflect, h.offset % n, n) {
                    (false, 0, _) => Deletion::Sphere,
                    (false, _, 3) => Deletion::L31,
                    (false, _, _) => Deletion::Rp3,
                    (true, 1, 2) => Deletion::FoldedBigonalPillow,
                    _ => {
                        return Err(Error::Invariant(format!(
                            "pillow {cell} has its faces identified by a reflection"
                        )))
                    }
                })
            }
            (Some(g1), Some(g2)) => {
                // G1 -> F1 -> F2 -> G2
                let map = g1.map.inverse(n).then(m, n).then(g2.map, n);
                self.face_mut(g1.cell, g1.face).partner = Some(FaceLink {
                    cell: g2.cell,
                    face: g2.face,
                    map,
                });
                self.face_mut(g2.cell, g2.face).partner = Some(FaceLink {
                    cell: g1.cell,
                    face: g1.face,
                    map: map.inverse(n),
                });
                None
            }
            (Some(g), None) | (None, Some(g)) => {
                self.face_mut(g.cell, g.face).partner = None;
                None
            }
            (None, None) => Some(Deletion::Ball),
        };
        self.cells[cell] = None;
        Ok(deletion)
    }

    /// Flattens a triangular pillow onto a single triangle.
    pub fn flatten_triangular_pillow(&mut self, cell: usize) -> Result<MoveEvent> {
        let deletion = self.flatten_pillow(cell, CellKind::TriangularPillow)?;
        Ok(MoveEvent::TriangularPillow { cell, deletion })
    }

    /// Flattens a bigonal pillow onto a single bigon.
    pub fn flatten_bigonal_pillow(&mut self, cell: usize) -> Result<MoveEvent> {
        let deletion = self.flatten_pillow(cell, CellKind::BigonalPillow)?;
        Ok(MoveEvent::BigonalPillow { cell, deletion })
    }

    /// Replaces local edge `from` by `into` throughout a cell.
    fn merge_edges(&mut self, cell: usize, from: usize, into: usize) {
        if from == into {
            return;
        }
        let c = self.cells[cell].as_mut().unwrap();
        c.edges[from] = None;
        for face in c.faces.iter_mut().flatten() {
            for s in face.sides.iter_mut() {
                if *s == from {
                    *s = into;
                }
            }
        }
    }

    /// Flattens a bigon face (and its partner) to an edge.
    pub fn flatten_bigon(&mut self, cell: usize, face: usize) -> Result<MoveEvent> {
        let f = self
            .face(cell, face)
            .filter(|f| f.is_bigon())
            .ok_or_else(|| Error::Precondition(format!("face ({cell},{face}) is not a bigon")))?
            .clone();
        self.merge_edges(cell, f.sides[1], f.sides[0]);
        if let Some(g) = f.partner {
            let p = self.face(g.cell, g.face).unwrap().clone();
            self.merge_edges(g.cell, p.sides[g.map.side(1, 2)], p.sides[g.map.side(0, 2)]);
            self.cells[g.cell].as_mut().unwrap().faces[g.face] = None;
        }
        self.cells[cell].as_mut().unwrap().faces[face] = None;
        let mut touched = vec![cell];
        if let Some(g) = f.partner {
            touched.push(g.cell);
        }
        for c in touched {
            let cell = self.cells[c].as_mut().unwrap();
            cell.recompute_kind()?;
            if cell.live_faces().any(|(_, f)| f.is_bigon() && f.sides[0] == f.sides[1]) {
                return Err(Error::Invariant(format!("cell {c} has a bigon with one edge")));
            }
        }
        Ok(MoveEvent::Bigon { cell, face })
    }

    /// Whether flattening the bigon `face` keeps both affected cells within
    /// the known kinds.
    pub(crate) fn bigon_flatten_is_closed(&self, cell: usize, face: usize) -> bool {
        let Some(f) = self.face(cell, face) else { return false };
        let c = self.cell(cell).unwrap();
        let (t, b) = (c.triangle_count(), c.bigon_count());
        match f.partner {
            Some(g) if g.cell == cell => b >= 2 && CellKind::from_faces(t, b - 2).is_some(),
            Some(g) => {
                let o = self.cell(g.cell).unwrap();
                CellKind::from_faces(t, b - 1).is_some()
                    && CellKind::from_faces(o.triangle_count(), o.bigon_count() - 1).is_some()
            }
            None => CellKind::from_faces(t, b - 1).is_some(),
        }
    }
}
