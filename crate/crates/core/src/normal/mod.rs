//! Normal surfaces: coordinates, matching equations, vertex enumeration and
//! recognition of the resulting surfaces.

mod coords;
mod dd;
pub(crate) mod discs;
mod matching;

pub use coords::{on_low_side, quad_partner, quad_type_of_pair, QuadCoords, StandardCoords, QUAD_PAIRS};
pub use dd::extreme_rays;
pub use matching::{
    matching_equations, quad_matching_equations, quad_to_standard, satisfies_matching,
};

use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result};
use crate::tri::{Triangulation, TriangulationClass};
use discs::{tet_counts, DiscSurface};

/// Topological type of a normal surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub euler_char: i64,
    pub connected: bool,
    pub orientable: bool,
    pub two_sided: bool,
    pub vertex_linking: bool,
    pub boundary_curves: usize,
}

impl SurfaceClass {
    pub fn is_sphere(&self) -> bool {
        self.connected && self.euler_char == 2 && self.boundary_curves == 0
    }

    pub fn is_projective_plane(&self) -> bool {
        self.connected && self.euler_char == 1 && self.boundary_curves == 0
    }
}

/// Extreme rays of the quadrilateral solution cone satisfying the
/// quadrilateral constraint, in lexicographic order.
pub fn enumerate_quad_vertex_surfaces(tri: &Triangulation) -> Result<Vec<QuadCoords>> {
    let rows = quad_matching_equations(tri)?;
    let rays = extreme_rays(&rows, 3 * tri.size(), |support| {
        support
            .chunks(3)
            .all(|c| c.iter().filter(|&&b| b).count() <= 1)
    });
    Ok(rays.into_iter().map(QuadCoords).collect())
}

/// Builds the surface from its discs and reports its topology.
pub fn recognize_surface(tri: &Triangulation, s: &StandardCoords) -> Result<SurfaceClass> {
    let counts = tet_counts(tri, s)?;
    if s.is_zero() {
        return Ok(SurfaceClass {
            euler_char: 0,
            connected: false,
            orientable: true,
            two_sided: true,
            vertex_linking: false,
            boundary_curves: 0,
        });
    }
    let mut surface = DiscSurface::build(tri, &counts);
    let summary = surface.summary();
    let comps = &summary.components;
    Ok(SurfaceClass {
        euler_char: comps.iter().map(|c| c.euler).sum(),
        connected: comps.len() == 1,
        orientable: comps.iter().all(|c| c.orientable),
        two_sided: summary.two_sided.iter().all(|&b| b),
        vertex_linking: !s.has_quads(),
        boundary_curves: comps.iter().map(|c| c.boundary_curves).sum(),
    })
}

fn require_closed(tri: &Triangulation) -> Result<()> {
    match tri.classify() {
        TriangulationClass::Closed => Ok(()),
        other => Err(Error::Precondition(format!(
            "expected a closed triangulation, found {other:?}"
        ))),
    }
}

/// The first quad vertex surface (in lexicographic order) that is a
/// connected normal sphere, or twice a one-sided projective plane.
pub fn find_nontrivial_sphere(tri: &Triangulation) -> Result<Option<StandardCoords>> {
    require_closed(tri)?;
    for q in enumerate_quad_vertex_surfaces(tri)? {
        let s = quad_to_standard(tri, &q)?;
        let class = recognize_surface(tri, &s)?;
        if class.is_sphere() {
            return Ok(Some(s));
        }
        if class.is_projective_plane() && !class.two_sided {
            return Ok(Some(s.scaled(2)));
        }
    }
    Ok(None)
}

pub fn is_zero_efficient(tri: &Triangulation) -> Result<bool> {
    Ok(find_nontrivial_sphere(tri)?.is_none())
}

/// Standard coordinates of the link of each vertex class, in the order of
/// the skeleton's vertex classes.
pub fn vertex_links(tri: &Triangulation) -> Vec<StandardCoords> {
    let skel = tri.skeleton();
    skel.vertices()
        .iter()
        .map(|v| {
            let mut s = StandardCoords::zero(tri.size());
            for &(t, corner) in &v.embeddings {
                *s.tri_mut(t, corner) += 1;
            }
            s
        })
        .collect()
}

/// A surface read from SURF1 text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceCoords {
    Standard(StandardCoords),
    Quad(QuadCoords),
}

pub fn parse_surface(text: &str) -> std::result::Result<SurfaceCoords, ParseError> {
    let syntax = |line: usize, msg: String| ParseError::Syntax { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `surf <n> <std|quad>` header".into()))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (n, width) = match words.as_slice() {
        ["surf", n, kind] => {
            let n: usize = n
                .parse()
                .map_err(|_| syntax(hline, format!("bad tetrahedron count `{n}`")))?;
            let width = match *kind {
                "std" => 7,
                "quad" => 3,
                _ => return Err(syntax(hline, format!("unknown coordinate system `{kind}`"))),
            };
            (n, width)
        }
        _ => return Err(syntax(hline, "expected `surf <n> <std|quad>`".into())),
    };
    let mut values = Vec::with_capacity(n * width);
    for i in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| syntax(hline, format!("missing row for tetrahedron {i}")))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|w| w.parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| syntax(lno, "expected decimal integers".into()))?;
        if row.len() != width {
            return Err(syntax(lno, format!("expected {width} integers, found {}", row.len())));
        }
        if row.iter().any(|x| x.sign() == num_bigint::Sign::Minus) {
            return Err(syntax(lno, "coordinates must be non-negative".into()));
        }
        values.extend(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(syntax(lno, "unexpected text after the last row".into()));
    }
    Ok(if width == 7 {
        SurfaceCoords::Standard(StandardCoords(values))
    } else {
        SurfaceCoords::Quad(QuadCoords(values))
    })
}
