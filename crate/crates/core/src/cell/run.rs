use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cell::{CellComplex, CellKind, Deletion, MoveEvent, ParityReport};
use crate::error::{Error, Result};
use crate::tri::Triangulation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MoveOrder {
    /// Five-step loop, lowest cell and face first, restarting after every
    /// move.
    #[default]
    Deterministic,
    /// Pillows first in random order, then any bigon whose flattening keeps
    /// every cell within the known kinds.
    Random(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlattenOptions {
    pub order: MoveOrder,
    /// Fail unless every vertex link is a sphere after every move.
    pub check_links: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub event: MoveEvent,
    pub measure: usize,
    pub parity: ParityReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlattenOutcome {
    pub triangulation: Triangulation,
    pub initial: ParityReport,
    pub trace: Vec<TraceStep>,
    pub deletions: Vec<Deletion>,
    pub invalid_edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    TriangularPillow(usize),
    BigonalPillow(usize),
    Bigon(usize, usize),
}

fn first_of_kind(c: &CellComplex, kind: CellKind) -> Option<usize> {
    c.cells().find(|(_, cell)| cell.kind == kind).map(|(i, _)| i)
}

fn first_bigon(c: &CellComplex, cell: usize, avoid_same_cell: bool) -> Option<Move> {
    c.cell(cell)?
        .live_faces()
        .find(|(_, f)| f.is_bigon() && !(avoid_same_cell && f.partner.is_some_and(|g| g.cell == cell)))
        .map(|(j, _)| Move::Bigon(cell, j))
}

fn deterministic_move(c: &CellComplex) -> Option<Move> {
    if let Some(i) = first_of_kind(c, CellKind::TriangularPillow) {
        return Some(Move::TriangularPillow(i));
    }
    if let Some(i) = first_of_kind(c, CellKind::BigonalPillow) {
        return Some(Move::BigonalPillow(i));
    }
    if let Some(i) = first_of_kind(c, CellKind::ThreeSidedFootball) {
        return first_bigon(c, i, true);
    }
    if let Some(i) = first_of_kind(c, CellKind::FourSidedFootball) {
        return first_bigon(c, i, false);
    }
    c.cells()
        .find(|(_, cell)| matches!(cell.kind, CellKind::BigonalPyramid | CellKind::TriangularPurse))
        .and_then(|(i, _)| first_bigon(c, i, false))
}

fn random_move(c: &CellComplex, rng: &mut ChaCha8Rng) -> Option<Move> {
    let pillows: Vec<Move> = c
        .cells()
        .filter_map(|(i, cell)| match cell.kind {
            CellKind::TriangularPillow => Some(Move::TriangularPillow(i)),
            CellKind::BigonalPillow => Some(Move::BigonalPillow(i)),
            _ => None,
        })
        .collect();
    if let Some(&m) = pillows.choose(rng) {
        return Some(m);
    }
    let bigons: Vec<Move> = c
        .cells()
        .flat_map(|(i, cell)| {
            cell.live_faces()
                .filter(|(_, f)| f.is_bigon())
                .map(move |(j, _)| (i, j))
        })
        .filter(|&(i, j)| c.bigon_flatten_is_closed(i, j))
        .map(|(i, j)| Move::Bigon(i, j))
        .collect();
    bigons.choose(rng).copied()
}

fn apply(c: &mut CellComplex, m: Move) -> Result<MoveEvent> {
    match m {
        Move::TriangularPillow(i) => c.flatten_triangular_pillow(i),
        Move::BigonalPillow(i) => c.flatten_bigonal_pillow(i),
        Move::Bigon(i, j) => c.flatten_bigon(i, j),
    }
}

fn check_links(c: &CellComplex) -> Result<()> {
    for (v, link) in c.vertex_links()? {
        if !link.is_sphere() {
            return Err(Error::Invariant(format!(
                "vertex {v} has link of euler characteristic {}",
                link.euler
            )));
        }
    }
    Ok(())
}

/// Flattens pillows and bigons one at a time until only tetrahedra remain.
pub fn run_sequential_flatten(mut c: CellComplex, opts: FlattenOptions) -> Result<FlattenOutcome> {
    let mut rng = match opts.order {
        MoveOrder::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        MoveOrder::Deterministic => None,
    };
    let initial = c.parity_report();
    if opts.check_links {
        check_links(&c)?;
    }
    let mut trace = Vec::new();
    let mut deletions = Vec::new();
    let mut measure = c.measure();
    while measure > 0 {
        let m = match &mut rng {
            Some(rng) => random_move(&c, rng),
            None => deterministic_move(&c),
        }
        .ok_or_else(|| Error::Invariant(format!("no move available with measure {measure}")))?;
        let event = apply(&mut c, m)?;
        let next = c.measure();
        if next >= measure {
            return Err(Error::Invariant(format!("move {event:?} did not reduce the measure")));
        }
        measure = next;
        deletions.extend(event.deletion());
        if opts.check_links {
            check_links(&c)?;
        }
        trace.push(TraceStep {
            event,
            measure,
            parity: c.parity_report(),
        });
    }
    c.cleanup();
    let triangulation = c.to_triangulation()?;
    let invalid_edges = triangulation.skeleton().invalid_edges().len();
    Ok(FlattenOutcome {
        triangulation,
        initial,
        trace,
        deletions,
        invalid_edges,
    })
}
