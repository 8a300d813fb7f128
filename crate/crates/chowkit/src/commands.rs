//! Command dispatch: each command turns a problem file into canonical
//! standard output plus a metadata record.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use chowkit_core::chow::{chow_bounds_for, chow_form, chow_form_ci};
use chowkit_core::dimension::{projection_dim_table, projective_dimension, ProjectiveVariety};
use chowkit_core::hurwitz::{hurwitz_degree_bound, hurwitz_form};
use chowkit_core::multiproj::{
    chow_hypersurface_formats, hurwitz_hypersurface_formats, multi_bounds, multi_chow_form, multidegree, support,
    MultiprojVariety,
};
use chowkit_core::polydet::{det_kronecker, PolyMatrix};
use chowkit_core::polymatroid::Polymatroid;
use chowkit_core::resultant::{resultant_exact, resultant_multihomogeneous, MacaulaySystem, MultiResSystem};
use chowkit_core::{Error, MPoly, RandomGrid};
use serde::Deserialize;

use crate::problem::ProblemFile;
use crate::CliError;

/// Sampling grid bound used for every Monte Carlo choice.
pub const DEFAULT_GRID_BOUND: u64 = 1 << 12;
pub const DEFAULT_RETRIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolymatroidOp {
    Check,
    Dual,
    Truncate,
    Elongate,
    Bases,
    Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Chow,
    ChowCi,
    Hurwitz,
    Multichow,
    Support,
    Formats,
    Resultant,
    Det,
    Bounds,
    Polymatroid(PolymatroidOp),
}

/// Command-line options that override the problem file.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub retries: Option<usize>,
    pub bounds_only: bool,
    pub dim_table: Option<Vec<usize>>,
}

/// Metadata reported alongside a result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub degrees_per_block: Vec<u32>,
    pub bitsize: u64,
    pub seed: u64,
    pub wall_ms: u128,
    pub algorithm: String,
}

impl Metadata {
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "degrees_per_block": self.degrees_per_block,
            "bitsize": self.bitsize,
            "seed": self.seed,
            "wall_ms": self.wall_ms as u64,
            "algorithm": self.algorithm,
        })
        .to_string()
    }

    pub fn to_text(&self) -> String {
        let degs: Vec<String> = self.degrees_per_block.iter().map(u32::to_string).collect();
        format!(
            "degrees_per_block: {}\nbitsize: {}\nseed: {}\nwall_ms: {}\nalgorithm: {}\n",
            degs.join(" "),
            self.bitsize,
            self.seed,
            self.wall_ms,
            self.algorithm
        )
    }
}

/// Result of a command: canonical standard output and metadata.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub meta: Metadata,
}

struct Ctx {
    grid: RandomGrid,
    opts: Options,
}

struct Produced {
    stdout: String,
    degrees: Vec<u32>,
    bitsize: u64,
    algorithm: &'static str,
}

impl Produced {
    fn text(stdout: String, algorithm: &'static str) -> Self {
        Produced { stdout, degrees: Vec::new(), bitsize: 0, algorithm }
    }
    fn poly(p: &MPoly, degrees: Vec<u32>, algorithm: &'static str) -> Self {
        Produced { stdout: format!("{p}\n"), degrees, bitsize: p.bitsize(), algorithm }
    }
}

/// Runs `cmd` on the text of its input file (a problem file, or a JSON table
/// `{"n": [...], "delta": [...]}` for the polymatroid commands).
pub fn run(cmd: Command, input: &str, opts: &Options) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (produced, seed) = match cmd {
        Command::Polymatroid(op) => {
            let seed = opts.seed.unwrap_or(0);
            (polymatroid(op, input)?, seed)
        }
        _ => {
            let p = ProblemFile::parse(input)?;
            let seed = opts.seed.or(p.seed).unwrap_or(0);
            let retries = opts.retries.or(p.retries).unwrap_or(DEFAULT_RETRIES).max(1);
            let mut ctx = Ctx { grid: RandomGrid::new(seed, DEFAULT_GRID_BOUND, retries), opts: opts.clone() };
            (dispatch(cmd, &p, &mut ctx)?, seed)
        }
    };
    let meta = Metadata {
        degrees_per_block: produced.degrees,
        bitsize: produced.bitsize,
        seed,
        wall_ms: start.elapsed().as_millis(),
        algorithm: produced.algorithm.to_string(),
    };
    Ok(Outcome { stdout: produced.stdout, meta })
}

fn dispatch(cmd: Command, p: &ProblemFile, ctx: &mut Ctx) -> Result<Produced, CliError> {
    match cmd {
        Command::Chow | Command::ChowCi => chow(cmd == Command::ChowCi, p, ctx),
        Command::Hurwitz => hurwitz(p, ctx),
        Command::Multichow => multichow(p, ctx),
        Command::Support => formats(p, ctx, false),
        Command::Formats => formats(p, ctx, true),
        Command::Resultant => resultant(p, ctx),
        Command::Det => det(p),
        Command::Bounds => bounds(p, ctx),
        Command::Polymatroid(_) => unreachable!("handled by run"),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::Usage(msg.into()))
}

fn no_params(p: &ProblemFile) -> Result<(), CliError> {
    if p.var_blocks != p.table.nblocks() {
        return Err(usage("`params` blocks are only meaningful for `resultant`"));
    }
    if p.polys.is_empty() {
        return Err(usage("the problem file declares no `poly`"));
    }
    Ok(())
}

fn projective(p: &ProblemFile) -> Result<ProjectiveVariety, CliError> {
    no_params(p)?;
    if p.var_blocks != 1 {
        return Err(usage("this command needs a single block of variables"));
    }
    Ok(ProjectiveVariety::new(p.polys.clone())?)
}

fn multiprojective(p: &ProblemFile) -> Result<MultiprojVariety, CliError> {
    no_params(p)?;
    let v = MultiprojVariety::new(p.polys.clone())?;
    Ok(match p.dim {
        Some(r) => v.with_dim(r),
        None => v,
    })
}

fn dimension_of(v: &ProjectiveVariety, p: &ProblemFile, ctx: &mut Ctx) -> Result<usize, CliError> {
    match p.dim {
        Some(r) => Ok(r),
        None => projective_dimension(v, &mut ctx.grid)?
            .ok_or_else(|| CliError::Core(Error::Precondition("the variety is empty".into()))),
    }
}

fn chow(ci: bool, p: &ProblemFile, ctx: &mut Ctx) -> Result<Produced, CliError> {
    let v = projective(p)?;
    let r = dimension_of(&v, p, ctx)?;
    if ctx.opts.bounds_only {
        return Ok(chow_bounds_text(v.ambient(), v.max_degree(), r));
    }
    let cf = if ci { chow_form_ci(&v, r, &mut ctx.grid)? } else { chow_form(&v, r, &mut ctx.grid)? };
    let algorithm = match cf.provenance {
        chowkit_core::chow::Provenance::CompleteIntersection => "macaulay-gcp",
        chowkit_core::chow::Provenance::GcdOf(_) => "generic-combinations-gcd",
    };
    Ok(Produced::poly(&cf.poly, cf.degrees, algorithm))
}

fn chow_bounds_text(n: usize, d: u32, r: usize) -> Produced {
    let b = chow_bounds_for(n, d, r);
    let bez: Vec<String> = b.bezout.iter().map(u128::to_string).collect();
    Produced::text(
        format!("degree_bound {}\nmacaulay_dim {}\nbezout {}\n", b.degree_bound, b.macaulay_dim, bez.join(" ")),
        "bounds",
    )
}

fn hurwitz(p: &ProblemFile, ctx: &mut Ctx) -> Result<Produced, CliError> {
    let v = projective(p)?;
    let r = dimension_of(&v, p, ctx)?;
    if ctx.opts.bounds_only {
        let degree: u128 = v.polys().iter().map(|f| f.total_degree() as u128).product();
        return Ok(Produced::text(format!("degree_bound {}\n", hurwitz_degree_bound(v.ambient(), degree)), "bounds"));
    }
    let h = hurwitz_form(&v, r, &mut ctx.grid)?;
    Ok(Produced::poly(&h.poly, h.degrees, "u-resultant-discriminant"))
}

fn format_of(p: &ProblemFile) -> Result<Vec<usize>, CliError> {
    p.format.clone().ok_or_else(|| usage("this command needs a `format` line"))
}

fn multi_dim(v: &MultiprojVariety, alpha: &[usize], p: &ProblemFile) -> Result<usize, CliError> {
    let total: usize = v.n().iter().sum();
    match p.dim {
        Some(r) => Ok(r),
        None => total
            .checked_sub(alpha.iter().sum::<usize>() + 1)
            .ok_or_else(|| usage("format is too large for the ambient space")),
    }
}

fn multichow(p: &ProblemFile, ctx: &mut Ctx) -> Result<Produced, CliError> {
    let v = multiprojective(p)?;
    let alpha = format_of(p)?;
    let r = multi_dim(&v, &alpha, p)?;
    if ctx.opts.bounds_only {
        return multi_bounds_text(&v, r, &alpha);
    }
    let cf = multi_chow_form(&v, r, &alpha, &mut ctx.grid)?;
    Ok(Produced::poly(&cf.poly, cf.degrees, "multihomogeneous-resultant"))
}

fn multi_bounds_text(v: &MultiprojVariety, r: usize, alpha: &[usize]) -> Result<Produced, CliError> {
    let degrees: Vec<Vec<u32>> = v.polys().iter().map(|f| f.mdeg().blocks).collect();
    let b = multi_bounds(&v.n(), &degrees, r, alpha)?;
    let blocks: Vec<String> = b.block_degrees.iter().map(u128::to_string).collect();
    Ok(Produced::text(
        format!("total_degree_bound {}\nu_vars {}\nblock_degrees {}\n", b.total_degree, b.u_vars, blocks.join(" ")),
        "bounds",
    ))
}

fn show_formats(set: &BTreeSet<Vec<usize>>) -> String {
    set.iter()
        .map(|a| format!("({})", a.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn formats(p: &ProblemFile, ctx: &mut Ctx, all: bool) -> Result<Produced, CliError> {
    let v = multiprojective(p)?;
    let n = v.n();
    let (table, algorithm) = match &ctx.opts.dim_table {
        Some(t) => (t.clone(), "supplied-dim-table"),
        None => (projection_dim_table(&v, &mut ctx.grid)?, "monte-carlo-dim-table"),
    };
    let supp = support(&n, &table)?;
    let mut out = format!("support {}\n", show_formats(&supp).trim_end());
    if all {
        let mut mdegs = BTreeMap::new();
        for b in &supp {
            mdegs.insert(b.clone(), multidegree(&v, b, &mut ctx.grid)?);
        }
        let chow = chow_hypersurface_formats(&n, &table)?;
        let hurwitz = hurwitz_hypersurface_formats(&n, &table, |a| {
            mdegs.get(a).copied().ok_or_else(|| Error::Internal("missing multidegree".into()))
        })?;
        let shown: Vec<String> =
            mdegs.iter().map(|(b, m)| format!("{}={m}", show_formats(&BTreeSet::from([b.clone()])))).collect();
        let _ = writeln!(out, "mdeg {}", shown.join(" "));
        let _ = writeln!(out, "chow {}", show_formats(&chow));
        let _ = writeln!(out, "hurwitz {}", show_formats(&hurwitz));
    }
    let out = out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n";
    Ok(Produced::text(out, algorithm))
}

fn resultant(p: &ProblemFile, ctx: &mut Ctx) -> Result<Produced, CliError> {
    if p.polys.is_empty() {
        return Err(usage("the problem file declares no `poly`"));
    }
    let elim = p.var_block_indices();
    let params = p.param_block_indices();
    let (res, algorithm) = if elim.len() == 1 {
        let sys = MacaulaySystem::with_params(p.polys.clone(), 0, params)?;
        (resultant_exact(&sys, &mut ctx.grid)?, "macaulay")
    } else {
        let sys = MultiResSystem::with_params(p.polys.clone(), elim, params)?;
        (resultant_multihomogeneous(&sys, &mut ctx.grid)?, "multihomogeneous")
    };
    let degrees = (0..res.vars().nblocks()).map(|b| res.block_degree(b)).collect();
    Ok(Produced::poly(&res, degrees, algorithm))
}

fn det(p: &ProblemFile) -> Result<Produced, CliError> {
    if p.rows.is_empty() {
        return Err(usage("the problem file declares no `row`"));
    }
    let m = PolyMatrix::new(&p.table, p.rows.clone())?;
    // a determinant's degree in each variable is at most the sum over rows
    // of the row's largest degree in that variable
    let caps: Vec<u32> = (0..p.table.nvars())
        .map(|v| p.rows.iter().map(|row| row.iter().map(|e| e.degree_in(v)).max().unwrap_or(0)).sum())
        .collect();
    let d = det_kronecker(&m, &caps)?;
    let degrees = (0..d.vars().nblocks()).map(|b| d.block_degree(b)).collect();
    Ok(Produced::poly(&d, degrees, "kronecker"))
}

fn bounds(p: &ProblemFile, ctx: &mut Ctx) -> Result<Produced, CliError> {
    if let Some(alpha) = &p.format {
        let v = multiprojective(p)?;
        let r = multi_dim(&v, alpha, p)?;
        return multi_bounds_text(&v, r, alpha);
    }
    let v = projective(p)?;
    let r = match p.dim {
        Some(r) => r,
        None => dimension_of(&v, p, ctx)?,
    };
    Ok(chow_bounds_text(v.ambient(), v.max_degree(), r))
}

#[derive(Deserialize)]
struct TableFile {
    n: Vec<usize>,
    delta: Vec<i64>,
}

fn polymatroid(op: PolymatroidOp, input: &str) -> Result<Produced, CliError> {
    let t: TableFile = serde_json::from_str(input).map_err(|e| CliError::Input(format!("invalid table: {e}")))?;
    let p = Polymatroid::new(t.n, t.delta)?;
    let describe = |q: &Polymatroid| {
        format!(
            "{}\nbases {}\n",
            serde_json::json!({ "n": q.n(), "delta": q.delta() }),
            show_formats(&q.bases())
        )
    };
    let out = match op {
        PolymatroidOp::Check => describe(&p),
        PolymatroidOp::Dual => describe(&p.dual()),
        PolymatroidOp::Truncate => describe(&p.truncate()?),
        PolymatroidOp::Elongate => describe(&p.elongate()?),
        PolymatroidOp::Bases => format!("{}\n", show_formats(&p.bases())),
        PolymatroidOp::Points => format!("{}\n", show_formats(&p.points())),
    };
    Ok(Produced::text(out, "polymatroid"))
}
