//! Acceptance criteria, one line each. Exits nonzero if any fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::oracles::{brute_force_extreme_rays, dual_h1, invariant_factors_by_minors};
use common::{census, census_upto, corpus, rp2_times_s1, vertex_surfaces};
use crushkit::cell::{build_crushed_complex, run_sequential_flatten, FlattenOptions, FlattenOutcome, MoveOrder};
use crushkit::crush::crush_bulk;
use crushkit::decomp::{prime_decompose, DecompositionResult, Outcome};
use crushkit::homology::{h1, smith_normal_form, HomologySummary};
use crushkit::normal::{
    enumerate_quad_vertex_surfaces, extreme_rays, is_zero_efficient, quad_matching_equations, vertex_links,
    StandardCoords, SurfaceClass,
};
use crushkit::tri::{is_isomorphic, lint_minimal};
use crushkit::Triangulation;

type Check = Result<String, String>;

struct Item {
    name: String,
    tri: Triangulation,
    surfaces: Vec<(StandardCoords, SurfaceClass)>,
}

fn flatten(t: &Triangulation, s: &StandardCoords, order: MoveOrder, check_links: bool) -> Result<FlattenOutcome, String> {
    let c = build_crushed_complex(t, s).map_err(|e| e.to_string())?;
    run_sequential_flatten(c, FlattenOptions { order, check_links }).map_err(|e| e.to_string())
}

fn spheres(item: &Item) -> impl Iterator<Item = (usize, &StandardCoords)> {
    item.surfaces.iter().enumerate().filter(|(_, (_, c))| c.is_sphere()).map(|(i, (s, _))| (i, s))
}

fn all_ok(results: Vec<Result<usize, String>>, what: &str) -> Check {
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} {what}"))
}

fn criterion_1(items: &[Item]) -> Check {
    let results = items
        .par_iter()
        .map(|item| {
            let mut count = 0;
            for (i, s) in spheres(item) {
                let bulk = crush_bulk(&item.tri, s).map_err(|e| format!("{} surface {i}: {e}", item.name))?;
                let cell = flatten(&item.tri, s, MoveOrder::Deterministic, true)
                    .map_err(|e| format!("{} surface {i}: {e}", item.name))?;
                if is_isomorphic(&bulk.result, &cell.triangulation).is_none() {
                    return Err(format!("{} surface {i}: engines disagree", item.name));
                }
                count += 1;
            }
            Ok(count)
        })
        .collect();
    all_ok(results, "sphere crushes agree")
}

fn criterion_2(items: &[Item]) -> Check {
    let results = items
        .par_iter()
        .map(|item| {
            let mut count = 0;
            for (i, (s, _)) in item.surfaces.iter().enumerate() {
                let out = crush_bulk(&item.tri, s).map_err(|e| format!("{} surface {i}: {e}", item.name))?;
                if out.result.size() >= item.tri.size() {
                    return Err(format!("{} surface {i}: {} tets kept of {}", item.name, out.result.size(), item.tri.size()));
                }
                count += 1;
            }
            for (v, s) in vertex_links(&item.tri).iter().enumerate() {
                let bulk = crush_bulk(&item.tri, s).map_err(|e| e.to_string())?;
                let cell = flatten(&item.tri, s, MoveOrder::Deterministic, true)
                    .map_err(|e| format!("{} link {v}: {e}", item.name))?;
                if bulk.destroyed_tets != 0
                    || is_isomorphic(&bulk.result, &item.tri).is_none()
                    || is_isomorphic(&cell.triangulation, &item.tri).is_none()
                {
                    return Err(format!("{} link {v}: crush is not the identity", item.name));
                }
                count += 1;
            }
            Ok(count)
        })
        .collect();
    all_ok(results, "crushes checked")
}

fn criterion_3(items: &[Item]) -> Check {
    let results = items
        .par_iter()
        .map(|item| {
            let mut count = 0;
            for (i, s) in spheres(item) {
                let base = flatten(&item.tri, s, MoveOrder::Deterministic, false)
                    .map_err(|e| format!("{} surface {i}: {e}", item.name))?;
                for seed in 0..20 {
                    let other = flatten(&item.tri, s, MoveOrder::Random(seed), false)
                        .map_err(|e| format!("{} surface {i} seed {seed}: {e}", item.name))?;
                    if is_isomorphic(&base.triangulation, &other.triangulation).is_none() {
                        return Err(format!("{} surface {i} seed {seed}: not isomorphic", item.name));
                    }
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect();
    all_ok(results, "random orders isomorphic")
}

fn oracle_h1(t: &Triangulation) -> HomologySummary {
    let (r, factors) = dual_h1(t);
    HomologySummary::from_parts(r, factors.into_iter().map(BigInt::from).collect())
}

fn decompose_all(items: &[Item]) -> Vec<Result<DecompositionResult, String>> {
    items
        .par_iter()
        .map(|item| prime_decompose(&item.tri).map_err(|e| format!("{}: {e}", item.name)))
        .collect()
}

fn criterion_4(items: &[Item], results: &[Result<DecompositionResult, String>]) -> Check {
    let mut count = 0;
    for (item, r) in items.iter().zip(results) {
        let r = r.as_ref().map_err(|e| e.clone())?;
        let input = oracle_h1(&item.tri);
        if input != r.input_h1 {
            return Err(format!("{}: input h1 {} vs oracle {}", item.name, r.input_h1.compact(), input.compact()));
        }
        let Outcome::Decomposed { summands, restored } = &r.outcome else { continue };
        let mut total = HomologySummary::default();
        for s in summands {
            let h = oracle_h1(&s.triangulation);
            if h != s.h1 {
                return Err(format!("{}: summand h1 {} vs oracle {}", item.name, s.h1.compact(), h.compact()));
            }
            total = total.sum(&h);
        }
        let lost = HomologySummary::from_parts(
            restored.s2xs1 + restored.s2twisted,
            std::iter::repeat_n(BigInt::from(2), restored.rp3)
                .chain(std::iter::repeat_n(BigInt::from(3), restored.l31))
                .collect(),
        );
        let total = total.sum(&lost);
        if total != input {
            return Err(format!("{}: summands and restored give {} not {}", item.name, total.compact(), input.compact()));
        }
        count += 1;
    }
    Ok(format!("{count} decompositions conserve homology"))
}

fn criterion_5(items: &[Item], results: &[Result<DecompositionResult, String>]) -> Check {
    let mut count = 0;
    for (item, r) in items.iter().zip(results) {
        let r = r.as_ref().map_err(|e| e.clone())?;
        let Outcome::Decomposed { summands, .. } = &r.outcome else { continue };
        for (k, s) in summands.iter().enumerate() {
            let bad = vertex_surfaces(&s.triangulation)
                .into_iter()
                .any(|(_, c)| c.is_sphere() || (c.is_projective_plane() && !c.two_sided));
            if bad || !is_zero_efficient(&s.triangulation).map_err(|e| e.to_string())? {
                return Err(format!("{}: summand {k} is not 0-efficient", item.name));
            }
            count += 1;
        }
    }
    Ok(format!("{count} summands 0-efficient"))
}

fn criterion_6(items: &[Item], results: &[Result<DecompositionResult, String>]) -> Check {
    let mut worst = 0;
    for (item, r) in items.iter().zip(results) {
        let r = r.as_ref().map_err(|e| e.clone())?;
        if r.crush_log.len() > item.tri.size() {
            return Err(format!("{}: {} crushes for {} tets", item.name, r.crush_log.len(), item.tri.size()));
        }
        worst = worst.max(r.crush_log.len());
    }
    Ok(format!("at most {worst} crushes per input"))
}

/// Once odd vertices appear they persist, and the result has an invalid
/// edge exactly when they appeared.
fn parity_consistent(out: &FlattenOutcome) -> Result<bool, String> {
    if out.initial.odd_vertex_count != 0 {
        return Err("initial complex has odd vertices".into());
    }
    let created = out.trace.iter().position(|s| s.parity.odd_vertex_count > 0);
    if let Some(k) = created {
        if out.trace[k..].iter().any(|s| s.parity.odd_vertex_count == 0) {
            return Err(format!("odd vertex count returned to zero after step {k}"));
        }
    }
    if created.is_some() != (out.invalid_edges > 0) {
        return Err(format!("created={} but {} invalid edges", created.is_some(), out.invalid_edges));
    }
    Ok(created.is_some())
}

/// Surfaces whose crushes the decomposition can perform, plus two-sided
/// projective planes.
fn parity_surfaces(item: &Item) -> Vec<(usize, StandardCoords)> {
    item.surfaces
        .iter()
        .enumerate()
        .filter_map(|(i, (s, c))| {
            if c.is_sphere() || (c.is_projective_plane() && c.two_sided) {
                Some((i, s.clone()))
            } else if c.is_projective_plane() {
                Some((i, s.scaled(2)))
            } else {
                None
            }
        })
        .collect()
}

fn criterion_7(items: &[Item]) -> Check {
    let results: Vec<Result<(usize, usize), String>> = items
        .par_iter()
        .map(|item| {
            let (mut runs, mut creating) = (0, 0);
            for (i, s) in parity_surfaces(item) {
                let orders = std::iter::once(MoveOrder::Deterministic).chain((0..100).map(MoveOrder::Random));
                for order in orders {
                    let out = flatten(&item.tri, &s, order, false).map_err(|e| format!("{} surface {i} {order:?}: {e}", item.name))?;
                    if parity_consistent(&out).map_err(|e| format!("{} surface {i} {order:?}: {e}", item.name))? {
                        creating += 1;
                    }
                    runs += 1;
                }
            }
            Ok((runs, creating))
        })
        .collect();
    let (mut runs, mut creating) = (0, 0);
    for r in results {
        let (a, b) = r?;
        runs += a;
        creating += b;
    }
    if creating == 0 {
        return Err(format!("{runs} runs but no odd vertices were ever created"));
    }
    Ok(format!("{runs} runs, {creating} with odd vertices"))
}

fn criterion_8() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for (name, tri) in [("product", rp2_times_s1()), ("census", common::rp2_times_s1_from_census())] {
        let file = dir.path().join(format!("{name}.tri"));
        std::fs::write(&file, tri.to_tri1()).map_err(|e| e.to_string())?;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = crushkit::cli::run(
            ["crushkit", "--machine", "decompose", file.to_str().unwrap()],
            &mut out,
            &mut err,
        );
        let text = String::from_utf8_lossy(&out).to_string();
        match code {
            0 => lines.push(format!("{name} exit 0")),
            1 => {
                let line = text
                    .lines()
                    .find(|l| l.starts_with("certificate invalid-edge"))
                    .ok_or_else(|| format!("{name}: exit 1 without certificate line"))?;
                let field = |key: &str| {
                    line.split_whitespace()
                        .find_map(|w| w.strip_prefix(key))
                        .map(str::to_string)
                        .ok_or_else(|| format!("{name}: no {key} in `{line}`"))
                };
                let path = field("tri=")?;
                let edge: usize = field("edge=")?.parse().map_err(|_| "bad edge".to_string())?;
                let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
                let cert = Triangulation::parse(&text).map_err(|e| e.to_string())?;
                if cert.skeleton().edges().get(edge).is_none_or(|e| e.valid) {
                    return Err(format!("{name}: edge {edge} of the certificate is valid"));
                }
                lines.push(format!("{name} exit 1 with verified certificate"));
            }
            c => return Err(format!("{name}: exit {c}: {}", String::from_utf8_lossy(&err))),
        }
    }
    Ok(lines.join(", "))
}

fn criterion_9() -> Check {
    let mut count = 0;
    for t in census_upto(3) {
        let rows = quad_matching_equations(t).map_err(|e| e.to_string())?;
        let dim = 3 * t.size();
        let oracle = brute_force_extreme_rays(&rows, dim);
        let mut fast = extreme_rays(&rows, dim, |_| true);
        fast.sort();
        if fast != oracle {
            return Err(format!("ray sets differ on\n{}", t.to_tri1()));
        }
        let admissible: Vec<Vec<BigInt>> = oracle
            .into_iter()
            .filter(|r| r.chunks(3).all(|c| c.iter().filter(|x| **x != BigInt::from(0)).count() <= 1))
            .collect();
        let mut surfaces: Vec<Vec<BigInt>> = enumerate_quad_vertex_surfaces(t).map_err(|e| e.to_string())?.into_iter().map(|q| q.0).collect();
        surfaces.sort();
        if surfaces != admissible {
            return Err(format!("vertex surfaces differ on\n{}", t.to_tri1()));
        }
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..1000 {
        let m: Vec<Vec<BigInt>> = (0..4).map(|_| (0..5).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        let fast = smith_normal_form(&m, 5).invariant_factors();
        let slow = invariant_factors_by_minors(&m, 5);
        if fast != slow {
            return Err(format!("matrix {k}: {fast:?} vs {slow:?}"));
        }
    }
    Ok(format!("{count} triangulations and 1000 matrices agree"))
}

fn criterion_10() -> Check {
    let members: Vec<&Triangulation> = census_upto(4).collect();
    let facts: Vec<(HomologySummary, bool, bool, bool)> = members
        .par_iter()
        .map(|t| {
            let surfaces = vertex_surfaces(t);
            let efficient = !surfaces.iter().any(|(_, c)| c.is_sphere() || (c.is_projective_plane() && !c.two_sided));
            let two_sided_rp2 = surfaces.iter().any(|(_, c)| c.is_projective_plane() && c.two_sided);
            (h1(t).unwrap(), t.is_orientable(), efficient, two_sided_rp2)
        })
        .collect();
    let mut smallest: HashMap<(HomologySummary, bool), usize> = HashMap::new();
    for (t, (h, o, _, _)) in members.iter().zip(&facts) {
        let e = smallest.entry((h.clone(), *o)).or_insert(t.size());
        *e = (*e).min(t.size());
    }
    let excluded: Vec<HomologySummary> = [vec![], vec![2], vec![3]]
        .into_iter()
        .map(|f| HomologySummary::from_parts(0, f.into_iter().map(BigInt::from).collect()))
        .collect();
    let mut count = 0;
    for (t, (h, o, efficient, rp2)) in members.iter().zip(&facts) {
        let candidate = *efficient
            && !excluded.contains(h)
            && (*o || !*rp2)
            && smallest[&(h.clone(), *o)] == t.size();
        if !candidate {
            continue;
        }
        let report = lint_minimal(t).map_err(|e| e.to_string())?;
        if !report.is_clean() {
            return Err(format!("candidate with h1 {} fails lint: {report:?}\n{}", h.compact(), t.to_tri1()));
        }
        count += 1;
    }
    if count == 0 {
        return Err("no candidates".into());
    }
    Ok(format!("{count} minimal 0-efficient candidates clean"))
}

fn main() -> ExitCode {
    let items: Vec<Item> = corpus()
        .into_par_iter()
        .map(|(name, tri)| Item {
            surfaces: vertex_surfaces(&tri),
            name,
            tri,
        })
        .collect();
    assert_eq!(census().iter().map(Vec::len).collect::<Vec<_>>(), [4, 17, 81, 577]);
    let decomps = decompose_all(&items);
    let checks: Vec<(usize, Check)> = vec![
        (1, criterion_1(&items)),
        (2, criterion_2(&items)),
        (3, criterion_3(&items)),
        (4, criterion_4(&items, &decomps)),
        (5, criterion_5(&items, &decomps)),
        (6, criterion_6(&items, &decomps)),
        (7, criterion_7(&items)),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
    ];
    let mut failed = false;
    for (n, r) in checks {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(detail) => {
                failed = true;
                println!("criterion {n}: FAIL ({detail})");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
