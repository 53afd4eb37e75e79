//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code.
//!
//! Exit codes: 0 success, 1 invalid-edge certificate, 2 input error, 3
//! precondition violation or internal failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cell::{build_crushed_complex, run_sequential_flatten, FlattenOptions, MoveOrder};
use crate::census::closed_census;
use crate::crush::crush_bulk;
use crate::decomp::{prime_decompose, Outcome};
use crate::error::Error;
use crate::homology::{h1, HomologySummary};
use crate::normal::{
    enumerate_quad_vertex_surfaces, find_nontrivial_sphere, is_zero_efficient, parse_surface, quad_to_standard,
    recognize_surface, satisfies_matching, StandardCoords, SurfaceCoords,
};
use crate::tri::{is_isomorphic, lint_minimal, Triangulation};

#[derive(Parser, Debug)]
#[command(name = "crushkit", version, about = "Normal surfaces, crushing and prime decomposition")]
struct Cli {
    /// Line-oriented output for scripts.
    #[arg(long, global = true, env = "CRUSHKIT_MACHINE")]
    machine: bool,
    /// Worker threads for surface enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime decomposition of a closed triangulation.
    Decompose {
        file: PathBuf,
        /// Where to write the crushed triangulation if an invalid edge appears.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Crush along a normal surface and write the result.
    Crush {
        file: PathBuf,
        /// Quad vertex surface index, or `lex-first-sphere`.
        #[arg(long, default_value = "lex-first-sphere")]
        surface: String,
        /// Read the surface from a SURF1 file instead.
        #[arg(long, conflicts_with = "surface")]
        surface_file: Option<PathBuf>,
        /// Also flatten the cell decomposition move by move and compare.
        #[arg(long)]
        oracle: bool,
        /// Random move order for the oracle run.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List quad vertex normal surfaces.
    Enumerate { file: PathBuf },
    /// First homology.
    Homology { file: PathBuf },
    /// Whether the triangulation contains no non-trivial normal sphere.
    Efficiency { file: PathBuf },
    /// Structural checks expected of minimal triangulations.
    Lint { file: PathBuf },
    /// Combinatorial isomorphism test.
    Iso { first: PathBuf, second: PathBuf },
    /// Closed connected triangulations with a given number of tetrahedra.
    Census {
        tets: usize,
        /// Write one file per triangulation into this directory.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Orientability::Any)]
        orientability: Orientability,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Orientability {
    Any,
    Orientable,
    NonOrientable,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_) | Error::Gluing(_) => 2,
            Error::Precondition(_) | Error::InadmissibleSurface(_) | Error::Invariant(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn read_tri(path: &Path) -> Result<Triangulation, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Triangulation::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn human_h1(h: &HomologySummary) -> String {
    let mut parts: Vec<String> = Vec::new();
    match h.r {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("{r} Z")),
    }
    parts.extend(h.invariant_factors.iter().map(|d| format!("Z_{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

struct Ctx<'a> {
    machine: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Writes the machine record, or its human rendering.
    fn emit(&mut self, machine: &str, human: &str) -> std::io::Result<()> {
        writeln!(self.out, "{}", if self.machine { machine } else { human })
    }
}

fn decompose(ctx: &mut Ctx, file: &Path, certificate: Option<&Path>) -> CmdResult {
    let tri = read_tri(file)?;
    let parts = tri.connected_components();
    if parts.is_empty() {
        return Err(Error::Precondition("triangulation is empty".into()).into());
    }
    let mut code = 0;
    for (c, part) in parts.iter().enumerate() {
        if parts.len() > 1 {
            ctx.emit(
                &format!("component {c} tets={}", part.size()),
                &format!("Component {c} ({} tetrahedra)", part.size()),
            )?;
        }
        let result = prime_decompose(part)?;
        match &result.outcome {
            Outcome::Decomposed { summands, restored } => {
                let lines = result.report_lines("");
                for (s, line) in summands.iter().zip(&lines) {
                    let human = format!(
                        "Summand {}: {} tetrahedra, H1 = {}, {}",
                        line.split_whitespace().nth(1).unwrap(),
                        s.triangulation.size(),
                        human_h1(&s.h1),
                        s.flag
                    );
                    ctx.emit(line, &human)?;
                }
                let human = format!(
                    "Restored: {} RP3, {} L(3,1), {} S2xS1, {} twisted S2xS1",
                    restored.rp3, restored.l31, restored.s2xs1, restored.s2twisted
                );
                ctx.emit(lines.last().unwrap(), &human)?;
            }
            Outcome::Certificate(cert) => {
                let path = match certificate {
                    Some(p) if parts.len() == 1 => p.to_path_buf(),
                    Some(p) => PathBuf::from(format!("{}.{c}", p.display())),
                    None => {
                        let mut name = file.as_os_str().to_owned();
                        name.push(if parts.len() > 1 {
                            format!(".{c}.certificate.tri")
                        } else {
                            ".certificate.tri".into()
                        });
                        PathBuf::from(name)
                    }
                };
                fs::write(&path, cert.triangulation.to_tri1())?;
                let shown = path.display().to_string();
                let human = format!(
                    "Embedded two-sided projective plane: crush {} produced edge {} identified with itself in reverse (written to {shown})",
                    cert.step, cert.edge
                );
                ctx.emit(&result.report_lines(&shown)[0], &human)?;
                code = 1;
            }
        }
    }
    Ok(code)
}

fn choose_surface(tri: &Triangulation, which: &str) -> Result<(String, StandardCoords), Failure> {
    if which == "lex-first-sphere" {
        let s = find_nontrivial_sphere(tri)?
            .ok_or_else(|| Error::Precondition("no non-trivial normal sphere".into()))?;
        return Ok((which.into(), s));
    }
    let index: usize = which
        .parse()
        .map_err(|_| Failure::input(format!("bad surface `{which}`")))?;
    let surfaces = enumerate_quad_vertex_surfaces(tri)?;
    let q = surfaces.get(index).ok_or_else(|| {
        Failure::input(format!(
            "surface index {index} out of range ({} quad vertex surfaces)",
            surfaces.len()
        ))
    })?;
    Ok((index.to_string(), quad_to_standard(tri, q)?))
}

fn read_surface(tri: &Triangulation, path: &Path) -> Result<StandardCoords, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let coords = parse_surface(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let s = match coords {
        SurfaceCoords::Standard(s) => s,
        SurfaceCoords::Quad(q) => {
            if q.tet_count() != tri.size() {
                return Err(Failure::input(format!(
                    "{}: surface has {} tetrahedra, triangulation has {}",
                    path.display(),
                    q.tet_count(),
                    tri.size()
                )));
            }
            quad_to_standard(tri, &q)?
        }
    };
    if s.tet_count() != tri.size() {
        return Err(Failure::input(format!(
            "{}: surface has {} tetrahedra, triangulation has {}",
            path.display(),
            s.tet_count(),
            tri.size()
        )));
    }
    if !satisfies_matching(tri, &s) {
        return Err(Error::InadmissibleSurface("matching equations fail".into()).into());
    }
    Ok(s)
}

fn crush(
    ctx: &mut Ctx,
    file: &Path,
    surface: &str,
    surface_file: Option<&Path>,
    oracle: bool,
    seed: Option<u64>,
    output: Option<&Path>,
) -> CmdResult {
    let tri = read_tri(file)?;
    let (label, s) = match surface_file {
        Some(path) => (path.display().to_string(), read_surface(&tri, path)?),
        None => choose_surface(&tri, surface)?,
    };
    let outcome = crush_bulk(&tri, &s)?;
    if oracle {
        let order = seed.map_or(MoveOrder::Deterministic, MoveOrder::Random);
        let complex = build_crushed_complex(&tri, &s)?;
        let flat = run_sequential_flatten(
            complex,
            FlattenOptions {
                order,
                check_links: false,
            },
        )?;
        if is_isomorphic(&outcome.result, &flat.triangulation).is_none() {
            return Err(Failure {
                code: 3,
                message: format!(
                    "oracle mismatch\n--- crush\n{}--- cell decomposition\n{}",
                    outcome.result.to_tri1(),
                    flat.triangulation.to_tri1()
                ),
            });
        }
    }
    let text = outcome.result.to_tri1();
    match output {
        Some(path) => {
            fs::write(path, &text)?;
            ctx.emit(
                &format!(
                    "crush surface={label} tets-before={} tets-after={} oracle={}",
                    tri.size(),
                    outcome.result.size(),
                    if oracle { "pass" } else { "skipped" }
                ),
                &format!(
                    "Crushed surface {label}: {} -> {} tetrahedra{}, written to {}",
                    tri.size(),
                    outcome.result.size(),
                    if oracle { " (oracle agrees)" } else { "" },
                    path.display()
                ),
            )?;
        }
        None => write!(ctx.out, "{text}")?,
    }
    Ok(0)
}

fn enumerate(ctx: &mut Ctx, file: &Path) -> CmdResult {
    let tri = read_tri(file)?;
    let surfaces = enumerate_quad_vertex_surfaces(&tri)?;
    for (i, q) in surfaces.iter().enumerate() {
        let s = quad_to_standard(&tri, q)?;
        let c = recognize_surface(&tri, &s)?;
        let quads: Vec<String> = q.0.iter().map(|x| x.to_string()).collect();
        ctx.emit(
            &format!(
                "surface {i} chi={} connected={} orientable={} two-sided={} quads={}",
                c.euler_char,
                c.connected,
                c.orientable,
                c.two_sided,
                quads.join(",")
            ),
            &format!(
                "Surface {i}: euler characteristic {}, {}, {}, {}; quads {}",
                c.euler_char,
                if c.connected { "connected" } else { "disconnected" },
                if c.orientable { "orientable" } else { "non-orientable" },
                if c.two_sided { "two-sided" } else { "one-sided" },
                quads.join(" ")
            ),
        )?;
    }
    ctx.emit(
        &format!("surfaces count={}", surfaces.len()),
        &format!("{} quad vertex surfaces", surfaces.len()),
    )?;
    Ok(0)
}

fn census(ctx: &mut Ctx, n: usize, output: Option<&Path>, orientability: Orientability) -> CmdResult {
    let members: Vec<Triangulation> = closed_census(n)
        .into_iter()
        .filter(|t| match orientability {
            Orientability::Any => true,
            Orientability::Orientable => t.is_orientable(),
            Orientability::NonOrientable => !t.is_orientable(),
        })
        .collect();
    if let Some(dir) = output {
        fs::create_dir_all(dir)?;
    }
    for (i, t) in members.iter().enumerate() {
        match output {
            Some(dir) => {
                let path = dir.join(format!("closed-{n}-{i}.tri"));
                fs::write(&path, t.to_tri1())?;
            }
            None => write!(ctx.out, "% census {n} {i}\n{}", t.to_tri1())?,
        }
    }
    ctx.emit(
        &format!("census tets={n} count={}", members.len()),
        &format!("{} closed triangulations with {n} tetrahedra", members.len()),
    )?;
    Ok(0)
}

fn execute(cli: Cli, out: &mut dyn Write) -> CmdResult {
    let mut ctx = Ctx {
        machine: cli.machine,
        out,
    };
    let ctx = &mut ctx;
    match cli.command {
        Command::Decompose { file, certificate } => decompose(ctx, &file, certificate.as_deref()),
        Command::Crush {
            file,
            surface,
            surface_file,
            oracle,
            seed,
            output,
        } => crush(
            ctx,
            &file,
            &surface,
            surface_file.as_deref(),
            oracle,
            seed,
            output.as_deref(),
        ),
        Command::Enumerate { file } => enumerate(ctx, &file),
        Command::Homology { file } => {
            let h = h1(&read_tri(&file)?)?;
            ctx.emit(&h.to_string(), &format!("H1 = {}", human_h1(&h)))?;
            Ok(0)
        }
        Command::Efficiency { file } => {
            let yes = is_zero_efficient(&read_tri(&file)?)?;
            ctx.emit(
                &format!("zero-efficient {yes}"),
                if yes { "0-efficient" } else { "not 0-efficient" },
            )?;
            Ok(0)
        }
        Command::Lint { file } => {
            let r = lint_minimal(&read_tri(&file)?)?;
            let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            ctx.emit(
                &format!(
                    "lint vertices={} degree-one-edges={} cone-faces={} clean={}",
                    r.vertex_count,
                    list(&r.degree_one_edge_ids),
                    list(&r.cone_face_ids),
                    r.is_clean()
                ),
                &format!(
                    "{} vertices, {} degree-one edges, {} cone faces: {}",
                    r.vertex_count,
                    r.degree_one_edge_ids.len(),
                    r.cone_face_ids.len(),
                    if r.is_clean() { "clean" } else { "not minimal" }
                ),
            )?;
            Ok(0)
        }
        Command::Iso { first, second } => {
            let (a, b) = (read_tri(&first)?, read_tri(&second)?);
            let word = if is_isomorphic(&a, &b).is_some() {
                "isomorphic"
            } else {
                "not-isomorphic"
            };
            ctx.emit(word, word)?;
            Ok(0)
        }
        Command::Census {
            tets,
            output,
            orientability,
        } => census(ctx, tets, output.as_deref(), orientability),
    }
}

/// Runs one command. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    // Output is buffered so the command can run inside a worker pool.
    let mut buf = Vec::new();
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli, &mut buf)),
            Err(e) => Err(Failure::input(e.to_string())),
        },
        None => execute(cli, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
