//! Generalised triangulations: tetrahedra with some or all faces glued in pairs.
//!
//! Vertices of each tetrahedron are labelled 0..=3 and face `i` is the face
//! opposite vertex `i`. A gluing of face `f` of tetrahedron `t` carries a
//! permutation mapping the vertex labels of `t` to those of its partner, so
//! the partner face is `perm(f)`.

mod iso;
mod lint;
mod moves;
mod skeleton;

pub use iso::{is_isomorphic, Isomorphism};
pub use lint::{lint_minimal, LintReport};
pub use moves::{connected_sum, disjoint_union, embedded_face, one_four_move};
pub use skeleton::{
    classify, edge_index, EdgeClass, LinkSummary, Skeleton, TriangleClass, TriangulationClass,
    VertexClass, EDGE_VERTICES,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::perm::Perm4;
use crate::uf::{ParityUnionFind, UnionFind};

/// The partner of a glued face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    /// `n` tetrahedra with every face on the boundary.
    pub fn new(n: usize) -> Self {
        Triangulation {
            gluings: vec![[None; 4]; n],
        }
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gluings.is_empty()
    }

    pub fn add_tetrahedron(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `other`, setting
    /// both directions.
    pub fn glue(&mut self, tet: usize, face: usize, other: usize, perm: Perm4) -> Result<()> {
        let n = self.size();
        if tet >= n || other >= n || face > 3 {
            return Err(Error::Gluing(format!(
                "tetrahedron index out of range ({tet} or {other} >= {n})"
            )));
        }
        let other_face = perm.apply(face);
        if tet == other && other_face == face {
            return Err(Error::Gluing(format!(
                "face {face} of tetrahedron {tet} cannot be glued to itself"
            )));
        }
        if self.gluings[tet][face].is_some() || self.gluings[other][other_face].is_some() {
            return Err(Error::Gluing(format!(
                "face ({tet},{face}) or ({other},{other_face}) is already glued"
            )));
        }
        self.gluings[tet][face] = Some(Gluing { tet: other, perm });
        self.gluings[other][other_face] = Some(Gluing {
            tet,
            perm: perm.inverse(),
        });
        Ok(())
    }

    /// Removes the gluing on `(tet, face)` and its partner.
    pub fn unglue(&mut self, tet: usize, face: usize) -> Option<Gluing> {
        let g = self.gluings[tet][face].take()?;
        self.gluings[g.tet][g.perm.apply(face)] = None;
        Some(g)
    }

    pub fn boundary_face_count(&self) -> usize {
        self.gluings.iter().flatten().filter(|g| g.is_none()).count()
    }

    /// Every `(tet, face)` pair glued to a partner, each gluing listed once
    /// from its lexicographically smaller side.
    pub fn glued_pairs(&self) -> impl Iterator<Item = (usize, usize, Gluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(|(t, faces)| {
            faces.iter().enumerate().filter_map(move |(f, g)| {
                let g = (*g)?;
                ((t, f) < (g.tet, g.perm.apply(f))).then_some((t, f, g))
            })
        })
    }

    /// Checks the gluing table is a fixed-point-free involution.
    pub fn check_gluings(&self) -> Result<()> {
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                let f2 = g.perm.apply(f);
                if g.tet >= self.size() {
                    return Err(Error::Invariant(format!("({t},{f}) points outside")));
                }
                if g.tet == t && f2 == f {
                    return Err(Error::Invariant(format!("({t},{f}) glued to itself")));
                }
                match self.gluings[g.tet][f2] {
                    Some(back) if back.tet == t && back.perm == g.perm.inverse() => {}
                    _ => {
                        return Err(Error::Invariant(format!(
                            "gluing ({t},{f}) -> ({},{f2}) has no matching reverse",
                            g.tet
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton::new(self)
    }

    pub fn classify(&self) -> TriangulationClass {
        classify(self)
    }

    /// Components under face gluings only, each re-indexed from 0 in the
    /// order of its smallest original tetrahedron.
    pub fn connected_components(&self) -> Vec<Triangulation> {
        self.component_tets()
            .into_iter()
            .map(|tets| self.induced(&tets))
            .collect()
    }

    /// Original tetrahedron indices of each component, ascending.
    pub fn component_tets(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.size());
        for (t, _, g) in self.glued_pairs() {
            uf.union(t, g.tet);
        }
        let (labels, k) = uf.labels();
        let mut out = vec![Vec::new(); k];
        for (t, &l) in labels.iter().enumerate() {
            out[l].push(t);
        }
        out
    }

    /// The sub-triangulation on `tets` (which must be closed under gluing).
    fn induced(&self, tets: &[usize]) -> Triangulation {
        let mut index = vec![usize::MAX; self.size()];
        for (i, &t) in tets.iter().enumerate() {
            index[t] = i;
        }
        let gluings = tets
            .iter()
            .map(|&t| {
                let mut row = [None; 4];
                for f in 0..4 {
                    row[f] = self.gluings[t][f].map(|g| Gluing {
                        tet: index[g.tet],
                        perm: g.perm,
                    });
                }
                row
            })
            .collect();
        Triangulation { gluings }
    }

    /// Relabels tetrahedra: tetrahedron `t` becomes `tet_map[t]` and its
    /// vertex `v` becomes `vertex_maps[t](v)`.
    pub fn relabelled(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Triangulation {
        let mut out = Triangulation::new(self.size());
        for t in 0..self.size() {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    let nf = vertex_maps[t].apply(f);
                    let nperm = vertex_maps[g.tet]
                        .compose(g.perm)
                        .compose(vertex_maps[t].inverse());
                    out.gluings[tet_map[t]][nf] = Some(Gluing {
                        tet: tet_map[g.tet],
                        perm: nperm,
                    });
                }
            }
        }
        out
    }

    /// Orientability by sign propagation: two tetrahedra of equal sign must
    /// be joined by odd gluing permutations, opposite signs by even ones.
    pub fn is_orientable(&self) -> bool {
        let mut uf = ParityUnionFind::new(self.size());
        for (t, _, g) in self.glued_pairs() {
            uf.union(t, g.tet, !g.perm.is_odd());
        }
        (0..self.size()).all(|t| !uf.is_conflicted(t))
    }

    /// Parses the TRI1 text format.
    pub fn parse(text: &str) -> std::result::Result<Triangulation, ParseError> {
        parse_tri1(text)
    }

    pub fn to_tri1(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "tets {}", self.size())?;
        for (t, faces) in self.gluings.iter().enumerate() {
            write!(out, "{t}:")?;
            for g in faces {
                match g {
                    None => write!(out, " b")?,
                    Some(g) => write!(out, " {}:{}", g.tet, g.perm)?,
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

impl FromStr for Triangulation {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_tri1(s)
    }
}

fn parse_tri1(text: &str) -> std::result::Result<Triangulation, ParseError> {
    let syntax = |line: usize, msg: &str| ParseError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing `tets <n>` header"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("tets") {
        return Err(syntax(hline, "expected `tets <n>`"));
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| syntax(hline, "expected tetrahedron count"))?;
    if words.next().is_some() {
        return Err(syntax(hline, "trailing text after tetrahedron count"));
    }

    let mut gluings = vec![[None; 4]; n];
    let mut line_of = vec![0usize; n];
    for expected in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| syntax(hline, &format!("missing line for tetrahedron {expected}")))?;
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(lno, "expected `<i>: <g0> <g1> <g2> <g3>`"))?;
        let idx: usize = label
            .trim()
            .parse()
            .map_err(|_| syntax(lno, "bad tetrahedron label"))?;
        if idx != expected {
            return Err(syntax(
                lno,
                &format!("expected tetrahedron {expected}, found {idx}"),
            ));
        }
        line_of[idx] = lno;
        let entries: Vec<&str> = rest.split_whitespace().collect();
        if entries.len() != 4 {
            return Err(syntax(lno, "expected exactly four face entries"));
        }
        for (f, entry) in entries.iter().enumerate() {
            if *entry == "b" {
                continue;
            }
            let (t, p) = entry
                .split_once(':')
                .ok_or_else(|| syntax(lno, &format!("bad face entry `{entry}`")))?;
            let t: usize = t
                .parse()
                .map_err(|_| syntax(lno, &format!("bad partner index in `{entry}`")))?;
            let perm: Perm4 = p
                .parse()
                .map_err(|_| syntax(lno, &format!("bad permutation in `{entry}`")))?;
            if t >= n {
                return Err(ParseError::IndexOutOfRange {
                    line: lno,
                    msg: format!("partner tetrahedron {t} but only {n} tetrahedra"),
                });
            }
            if t == idx && perm.apply(f) == f {
                return Err(ParseError::FaceGluedToItself {
                    line: lno,
                    tet: idx,
                    face: f,
                });
            }
            gluings[idx][f] = Some(Gluing { tet: t, perm });
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(syntax(lno, "unexpected text after the last tetrahedron"));
    }

    for t in 0..n {
        for f in 0..4 {
            let Some(g) = gluings[t][f] else { continue };
            let f2 = g.perm.apply(f);
            let ok = matches!(gluings[g.tet][f2], Some(back) if back.tet == t && back.perm == g.perm.inverse());
            if !ok {
                return Err(ParseError::NotInvolution {
                    line: line_of[t],
                    msg: format!(
                        "({t},{f}) -> ({},{f2}) via {} but the reverse entry does not match",
                        g.tet, g.perm
                    ),
                });
            }
        }
    }
    Ok(Triangulation { gluings })
}
