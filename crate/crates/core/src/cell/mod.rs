//! Cell decompositions made of tetrahedra, footballs, purses, pillows and
//! pyramids, with triangle and bigon faces.
//!
//! Cutting a triangulation along a normal surface and shrinking each copy of
//! the surface to a point gives such a decomposition; flattening pillows and
//! bigons one at a time then recovers the crushed triangulation.

mod build;
mod moves;
mod run;
mod skeleton;

pub use build::build_crushed_complex;
pub use moves::{Deletion, MoveEvent};
pub use run::{run_sequential_flatten, FlattenOptions, FlattenOutcome, MoveOrder, TraceStep};
pub use skeleton::{CellSkeleton, ParityReport};

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Tetrahedron,
    ThreeSidedFootball,
    FourSidedFootball,
    TriangularPurse,
    TriangularPillow,
    BigonalPillow,
    BigonalPyramid,
}

impl CellKind {
    /// The kind with the given numbers of triangle and bigon faces.
    pub fn from_faces(triangles: usize, bigons: usize) -> Option<CellKind> {
        Some(match (triangles, bigons) {
            (4, 0) => CellKind::Tetrahedron,
            (0, 3) => CellKind::ThreeSidedFootball,
            (0, 4) => CellKind::FourSidedFootball,
            (2, 2) => CellKind::TriangularPurse,
            (2, 0) => CellKind::TriangularPillow,
            (0, 2) => CellKind::BigonalPillow,
            (2, 1) => CellKind::BigonalPyramid,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            CellKind::Tetrahedron => "tetrahedron",
            CellKind::ThreeSidedFootball => "football3",
            CellKind::FourSidedFootball => "football4",
            CellKind::TriangularPurse => "purse",
            CellKind::TriangularPillow => "pillow3",
            CellKind::BigonalPillow => "pillow2",
            CellKind::BigonalPyramid => "pyramid",
        }
    }
}

/// A symmetry of an `n`-gon. Corner `i` goes to `offset + i` (rotation) or
/// `offset - i` (reflection); side `i` runs from corner `i` to `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dihedral {
    pub offset: usize,
    pub reflect: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral {
        offset: 0,
        reflect: false,
    };

    pub fn corner(self, i: usize, n: usize) -> usize {
        if self.reflect {
            (self.offset + n - i % n) % n
        } else {
            (self.offset + i) % n
        }
    }

    pub fn side(self, i: usize, n: usize) -> usize {
        if self.reflect {
            (self.offset + 2 * n - i % n - 1) % n
        } else {
            (self.offset + i) % n
        }
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Dihedral, n: usize) -> Dihedral {
        Dihedral {
            offset: next.corner(self.corner(0, n), n),
            reflect: self.reflect ^ next.reflect,
        }
    }

    pub fn inverse(self, n: usize) -> Dihedral {
        if self.reflect {
            self
        } else {
            Dihedral {
                offset: (n - self.offset % n) % n,
                reflect: false,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceLink {
    pub cell: usize,
    pub face: usize,
    /// Carries this face's corners and sides onto the partner's.
    pub map: Dihedral,
}

/// A triangle (three corners) or bigon (two corners) on the boundary of a
/// cell. Corners are local vertex ids; side `i` is a local edge id running
/// between corners `i` and `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFace {
    pub corners: Vec<usize>,
    pub sides: Vec<usize>,
    pub partner: Option<FaceLink>,
}

impl CellFace {
    pub fn is_bigon(&self) -> bool {
        self.corners.len() == 2
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    /// Original tetrahedron, for cells that are tetrahedra.
    pub label: Option<usize>,
    pub vertex_count: usize,
    /// Local edges as `(tail, head)`; `None` once merged into another edge.
    pub edges: Vec<Option<(usize, usize)>>,
    /// Face slots; flattened bigons leave `None` behind so ids stay stable.
    pub faces: Vec<Option<CellFace>>,
}

impl Cell {
    pub fn live_faces(&self) -> impl Iterator<Item = (usize, &CellFace)> {
        self.faces
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.as_ref().map(|f| (i, f)))
    }

    pub fn bigon_count(&self) -> usize {
        self.live_faces().filter(|(_, f)| f.is_bigon()).count()
    }

    pub fn triangle_count(&self) -> usize {
        self.live_faces().filter(|(_, f)| !f.is_bigon()).count()
    }

    fn recompute_kind(&mut self) -> Result<()> {
        let (t, b) = (self.triangle_count(), self.bigon_count());
        self.kind = CellKind::from_faces(t, b).ok_or_else(|| {
            Error::Invariant(format!("cell with {t} triangles and {b} bigons has no kind"))
        })?;
        Ok(())
    }
}

/// A three-dimensional cell complex. Deleted cells are kept as `None` until
/// [`CellComplex::cleanup`] compacts the list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellComplex {
    pub(crate) cells: Vec<Option<Cell>>,
}

impl CellComplex {
    pub fn cell(&self, id: usize) -> Option<&Cell> {
        self.cells.get(id).and_then(|c| c.as_ref())
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
    }

    pub fn cell_count(&self) -> usize {
        self.cells().count()
    }

    pub fn count_kind(&self, kind: CellKind) -> usize {
        self.cells().filter(|(_, c)| c.kind == kind).count()
    }

    /// Non-tetrahedron cells plus bigon faces.
    pub fn measure(&self) -> usize {
        self.cells()
            .map(|(_, c)| usize::from(c.kind != CellKind::Tetrahedron) + c.bigon_count())
            .sum()
    }

    pub(crate) fn face(&self, cell: usize, face: usize) -> Option<&CellFace> {
        self.cell(cell)?.faces.get(face)?.as_ref()
    }

    pub(crate) fn face_mut(&mut self, cell: usize, face: usize) -> &mut CellFace {
        self.cells[cell].as_mut().unwrap().faces[face].as_mut().unwrap()
    }

    /// Drops deleted cells and renumbers the rest, keeping their order.
    pub fn cleanup(&mut self) {
        let mut index = vec![usize::MAX; self.cells.len()];
        let mut next = 0;
        for (i, c) in self.cells.iter().enumerate() {
            if c.is_some() {
                index[i] = next;
                next += 1;
            }
        }
        let cells: Vec<Option<Cell>> = self.cells.drain(..).flatten().map(Some).collect();
        self.cells = cells;
        for cell in self.cells.iter_mut().flatten() {
            for face in cell.faces.iter_mut().flatten() {
                if let Some(link) = &mut face.partner {
                    link.cell = index[link.cell];
                }
            }
        }
    }

    /// Groups of cell ids connected through face gluings.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = crate::uf::UnionFind::new(self.cells.len());
        for (i, c) in self.cells() {
            for (_, f) in c.live_faces() {
                if let Some(link) = f.partner {
                    uf.union(i, link.cell);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.cells.len()];
        for (i, _) in self.cells() {
            let r = uf.find(i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        groups
    }

    /// Checks that gluings are mutual, inverse to each other, and never
    /// glue a face to itself or a triangle to a bigon.
    pub fn check(&self) -> Result<()> {
        for (i, c) in self.cells() {
            if CellKind::from_faces(c.triangle_count(), c.bigon_count()) != Some(c.kind) {
                return Err(Error::Invariant(format!("cell {i} has the wrong kind")));
            }
            for (j, f) in c.live_faces() {
                let Some(link) = f.partner else { continue };
                if (link.cell, link.face) == (i, j) {
                    return Err(Error::Invariant(format!("face ({i},{j}) glued to itself")));
                }
                let other = self.face(link.cell, link.face).ok_or_else(|| {
                    Error::Invariant(format!("face ({i},{j}) glued to a missing face"))
                })?;
                let n = f.len();
                let back = FaceLink {
                    cell: i,
                    face: j,
                    map: link.map.inverse(n),
                };
                if other.len() != n || other.partner != Some(back) {
                    return Err(Error::Invariant(format!(
                        "gluing of face ({i},{j}) is not matched by its partner"
                    )));
                }
            }
        }
        Ok(())
    }

    /// One line per cell: id, kind, label, then each face slot as
    /// `t`/`b` followed by its partner `cell.face/offset[r]` or `-`.
    pub fn debug_dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CellComplex {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cells() {
            write!(out, "{i} {}", c.kind.name())?;
            if let Some(l) = c.label {
                write!(out, " [{l}]")?;
            }
            for (j, f) in c.live_faces() {
                let shape = if f.is_bigon() { 'b' } else { 't' };
                match f.partner {
                    Some(p) => write!(
                        out,
                        " {j}{shape}:{}.{}/{}{}",
                        p.cell,
                        p.face,
                        p.map.offset,
                        if p.map.reflect { "r" } else { "" }
                    )?,
                    None => write!(out, " {j}{shape}:-")?,
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_group_laws() {
        for n in [2, 3] {
            let all: Vec<Dihedral> = (0..n)
                .flat_map(|o| [false, true].map(|r| Dihedral { offset: o, reflect: r }))
                .collect();
            for &a in &all {
                let inv = a.inverse(n);
                assert_eq!(a.then(inv, n), Dihedral::IDENTITY);
                for &b in &all {
                    let c = a.then(b, n);
                    for i in 0..n {
                        assert_eq!(c.corner(i, n), b.corner(a.corner(i, n), n));
                        assert_eq!(c.side(i, n), b.side(a.side(i, n), n));
                    }
                }
                // Sides follow corners: side i joins corners i and i+1.
                for i in 0..n {
                    let s = a.side(i, n);
                    let mut ends = [a.corner(i, n), a.corner(i + 1, n)];
                    ends.sort();
                    let mut want = [s, (s + 1) % n];
                    want.sort();
                    assert_eq!(ends, want);
                }
            }
        }
    }

    #[test]
    fn kinds_from_face_counts() {
        assert_eq!(CellKind::from_faces(4, 0), Some(CellKind::Tetrahedron));
        assert_eq!(CellKind::from_faces(2, 1), Some(CellKind::BigonalPyramid));
        assert_eq!(CellKind::from_faces(0, 1), None);
        assert_eq!(CellKind::from_faces(3, 0), None);
    }
}
