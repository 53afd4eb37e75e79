//! Prime decomposition by repeatedly crushing normal spheres.

use std::collections::VecDeque;
use std::fmt;

use crate::crush::crush_bulk;
use crate::error::{Error, Result};
use crate::homology::{h1, HomologySummary};
use crate::normal::{find_nontrivial_sphere, StandardCoords};
use crate::tri::{Triangulation, TriangulationClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandFlag {
    /// Trivial homology and more than one vertex: a 3-sphere.
    CertifiedS3Discarded,
    /// Trivial homology and one vertex; may or may not be a 3-sphere.
    PossibleS3Unresolved,
    NontrivialHomology,
}

impl fmt::Display for SummandFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandFlag::CertifiedS3Discarded => "CertifiedS3Discarded",
            SummandFlag::PossibleS3Unresolved => "PossibleS3Unresolved",
            SummandFlag::NontrivialHomology => "NontrivialHomology",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub triangulation: Triangulation,
    pub h1: HomologySummary,
    pub flag: SummandFlag,
}

/// Summands lost while crushing, recovered from the change in homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RestoredCounts {
    pub rp3: usize,
    pub l31: usize,
    pub s2xs1: usize,
    pub s2twisted: usize,
}

impl fmt::Display for RestoredCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "restored rp3={} l31={} s2xs1={} s2~s1={}",
            self.rp3, self.l31, self.s2xs1, self.s2twisted
        )
    }
}

/// A crush that produced an edge identified with itself in reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidEdgeCertificate {
    pub triangulation: Triangulation,
    pub edge: usize,
    /// Index of the offending crush in the crush log.
    pub step: usize,
}

impl InvalidEdgeCertificate {
    pub fn verify(&self) -> bool {
        let skel = self.triangulation.skeleton();
        skel.edges().get(self.edge).is_some_and(|e| !e.valid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrushRecord {
    /// Worklist id of the crushed triangulation; the input is 0 and each
    /// crushed component gets the next unused id.
    pub component: usize,
    pub sphere: StandardCoords,
    pub tets_before: usize,
    pub tets_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Decomposed {
        summands: Vec<Summand>,
        restored: RestoredCounts,
    },
    Certificate(InvalidEdgeCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub input_h1: HomologySummary,
    pub crush_log: Vec<CrushRecord>,
    pub outcome: Outcome,
}

fn flag_for(tri: &Triangulation, h: &HomologySummary) -> SummandFlag {
    if !h.is_trivial() {
        SummandFlag::NontrivialHomology
    } else if tri.skeleton().vertices().len() > 1 {
        SummandFlag::CertifiedS3Discarded
    } else {
        SummandFlag::PossibleS3Unresolved
    }
}

/// Decomposes a closed connected triangulation into 0-efficient pieces.
///
/// Each piece is taken from a FIFO worklist and its lexicographically first
/// non-trivial normal sphere is crushed; pieces without one are summands.
/// Copies of RP3, L(3,1) and S2xS1 (or its twisted form) destroyed along
/// the way are counted from the homology lost between input and output.
pub fn prime_decompose(tri: &Triangulation) -> Result<DecompositionResult> {
    if tri.is_empty() {
        return Err(Error::Precondition("triangulation is empty".into()));
    }
    match tri.classify() {
        TriangulationClass::Closed => {}
        other => {
            return Err(Error::Precondition(format!(
                "expected a closed triangulation, found {other:?}"
            )))
        }
    }
    if tri.component_tets().len() != 1 {
        return Err(Error::Precondition("triangulation is not connected".into()));
    }
    let input_h1 = h1(tri)?;
    let mut worklist = VecDeque::from([(0, tri.clone())]);
    let mut next_id = 1;
    let mut crush_log = Vec::new();
    let mut found = Vec::new();
    while let Some((id, n)) = worklist.pop_front() {
        let Some(sphere) = find_nontrivial_sphere(&n)? else {
            found.push(n);
            continue;
        };
        let crushed = crush_bulk(&n, &sphere)?.result;
        crush_log.push(CrushRecord {
            component: id,
            sphere,
            tets_before: n.size(),
            tets_after: crushed.size(),
        });
        if let Some(&edge) = crushed.skeleton().invalid_edges().first() {
            return Ok(DecompositionResult {
                input_h1,
                outcome: Outcome::Certificate(InvalidEdgeCertificate {
                    triangulation: crushed,
                    edge,
                    step: crush_log.len() - 1,
                }),
                crush_log,
            });
        }
        for part in crushed.connected_components() {
            worklist.push_back((next_id, part));
            next_id += 1;
        }
    }
    let mut summands = Vec::new();
    let mut total = HomologySummary::default();
    for t in found {
        let h = h1(&t)?;
        total = total.sum(&h);
        summands.push(Summand {
            flag: flag_for(&t, &h),
            triangulation: t,
            h1: h,
        });
    }
    let lost = |a: usize, b: usize, what: &str| {
        a.checked_sub(b).ok_or_else(|| {
            Error::Invariant(format!("summands have more {what} than the input"))
        })
    };
    let free = lost(input_h1.r, total.r, "free rank")?;
    let orientable = tri.is_orientable();
    let restored = RestoredCounts {
        rp3: lost(input_h1.t2, total.t2, "2-torsion")?,
        l31: lost(input_h1.t3, total.t3, "3-torsion")?,
        s2xs1: if orientable { free } else { 0 },
        s2twisted: if orientable { 0 } else { free },
    };
    Ok(DecompositionResult {
        input_h1,
        crush_log,
        outcome: Outcome::Decomposed { summands, restored },
    })
}

impl DecompositionResult {
    /// Machine-readable report lines; `source` names the input in a
    /// certificate line.
    pub fn report_lines(&self, source: &str) -> Vec<String> {
        match &self.outcome {
            Outcome::Decomposed { summands, restored } => {
                let mut out: Vec<String> = summands
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        format!(
                            "summand {i} tets={} h1={} flag={}",
                            s.triangulation.size(),
                            s.h1.compact(),
                            s.flag
                        )
                    })
                    .collect();
                out.push(restored.to_string());
                out
            }
            Outcome::Certificate(c) => vec![format!(
                "certificate invalid-edge tri={source} edge={} step={}",
                c.edge, c.step
            )],
        }
    }
}
