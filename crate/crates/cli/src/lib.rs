//! Command implementations for the `hecke` binary. Every command renders to
//! a string so that the golden suite can replay invocations in-process.

pub mod dsl;
pub mod suite;

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::algebra::{Engine, RelationTweak};
use hecke_core::exactlin::{spectral_name, Matrix, Scalar};
use hecke_core::modrep::{composition_structure, restrict, ConvModule, GradedModule};
use hecke_core::quiver::OrbitConfig;
use hecke_core::rmatrix::{
    block_swap, convolve, convolve_klr, is_real, naive_convolve, renormalized_rmatrix, rmatrix, rmatrix_klr, ybe_check,
};

use dsl::{parse_expr, Workspace};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact convolution products and R-matrices for KLR and VV algebra modules")]
pub struct Cli {
    /// Workspace file with an orbit and named modules.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the orbit: 0 for the infinite orbit, r ≥ 3 for a cycle of length r.
    #[arg(long, global = true)]
    pub cyclic_order: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load and verify a workspace file, then list its modules.
    Define { file: PathBuf },
    /// Convolution product of two modules.
    Conv {
        a: String,
        b: String,
        /// Naive product over W_β ⊗ W_γ (disjoint, non-adjacent supports only).
        #[arg(long, conflicts_with = "klr")]
        naive: bool,
        /// KLR product of the restrictions.
        #[arg(long)]
        klr: bool,
    },
    /// R-matrix M∘N → N∘M.
    Rmatrix {
        a: String,
        b: String,
        #[arg(long, conflicts_with = "klr")]
        naive: bool,
        #[arg(long)]
        klr: bool,
        /// Renormalize through spectral parameters and report s and the degree shift.
        #[arg(long, conflicts_with_all = ["naive", "klr"])]
        renormalized: bool,
        /// Also print the nonzero entries of R_{M_z,N_z'}.
        #[arg(long, requires = "renormalized")]
        spectral: bool,
    },
    /// Simplicity, socle, head, composition factors and reality of a module.
    Analyze { a: String },
    /// Yang–Baxter equation and triangle identities for three modules.
    Ybe { a: String, b: String, c: String },
    /// Replay every golden file and compare.
    PaperSuite {
        /// Corrupt a defining relation; the suite is then expected to fail.
        #[arg(long, value_enum)]
        tweak: Option<TweakArg>,
        /// Write fresh golden files into this directory instead of comparing.
        #[arg(long)]
        update: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TweakArg {
    FlipXSigma,
}

/// Rendered output and whether the command succeeded.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

pub struct Session {
    pub engine: Engine,
    pub ws: Workspace,
}

impl Session {
    pub fn new(engine: Engine, config: Option<&std::path::Path>, cyclic: Option<u32>) -> Result<Self> {
        let ws = match config {
            Some(p) => Workspace::load(&engine, p, cyclic)?,
            None => {
                let cfg = OrbitConfig::new(cyclic.unwrap_or(0)).map_err(|e| anyhow!("{e}"))?;
                Workspace::empty(cfg)
            }
        };
        Ok(Self { engine, ws })
    }

    fn module(&self, s: &str) -> Result<GradedModule> {
        self.ws.eval(&self.engine, &parse_expr(s)?)
    }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Result<Outcome>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(std::iter::once(std::ffi::OsString::from("hecke")).chain(args.into_iter().map(Into::into)))?;
    run(&cli)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::PaperSuite { tweak, update } => {
            let tweak = tweak.map(|TweakArg::FlipXSigma| RelationTweak::FlipXSigmaSign);
            suite::paper_suite(cli.cyclic_order, tweak, update.as_deref())
        }
        Command::Define { file } => {
            let engine = Engine::new();
            let ws = Workspace::load(&engine, file, cli.cyclic_order)?;
            Ok(Outcome { text: define_report(&ws), ok: true })
        }
        cmd => {
            let s = Session::new(Engine::new(), cli.config.as_deref(), cli.cyclic_order)?;
            Ok(Outcome { text: execute(&s, cmd)?, ok: true })
        }
    }
}

/// Runs a module command against an existing session.
pub fn execute(s: &Session, cmd: &Command) -> Result<String> {
    match cmd {
        Command::Conv { a, b, naive, klr } => cmd_conv(s, a, b, *naive, *klr),
        Command::Rmatrix { a, b, naive, klr, renormalized, spectral } => cmd_rmatrix(s, a, b, *naive, *klr, *renormalized, *spectral),
        Command::Analyze { a } => cmd_analyze(s, a),
        Command::Ybe { a, b, c } => cmd_ybe(s, a, b, c),
        Command::Define { .. } | Command::PaperSuite { .. } => bail!("not a module command"),
    }
}

fn character_lines(out: &mut String, m: &GradedModule, indent: &str) {
    for ((l, d), c) in m.character() {
        let _ = writeln!(out, "{indent}e({}) degree {d}: {c}", l.ascii());
    }
}

fn define_report(ws: &Workspace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "orbit: cyclic_order {}", ws.cfg.cyclic_order);
    let _ = writeln!(out, "modules: {}", ws.modules.len());
    for (name, m) in &ws.modules {
        let _ = writeln!(out, "{name}: {} dimension {}", m.algebra().render(), m.dim());
        character_lines(&mut out, m, "  ");
    }
    out
}

fn basis_lines(out: &mut String, c: &ConvModule) {
    for i in 0..c.module.dim() {
        let _ = writeln!(out, "  {i:>3}  {:<28} e({}) degree {}", c.basis_name(i), c.module.labels()[i].ascii(), c.module.degrees()[i]);
    }
}

fn product(s: &Session, a: &GradedModule, b: &GradedModule, naive: bool, klr: bool) -> Result<ConvModule> {
    let e = &s.engine;
    let r = if klr {
        convolve_klr(e, &restrict(a)?, &restrict(b)?)
    } else if naive {
        naive_convolve(e, a, b)
    } else {
        convolve(e, a, b)
    };
    r.map_err(|x| anyhow!("{x}"))
}

fn cmd_conv(s: &Session, a: &str, b: &str, naive: bool, klr: bool) -> Result<String> {
    let (m, n) = (s.module(a)?, s.module(b)?);
    let c = product(s, &m, &n, naive, klr)?;
    let kind = if klr { "KLR " } else if naive { "naive " } else { "" };
    let mut out = String::new();
    let _ = writeln!(out, "{kind}{a} ∘ {b} over {}", c.module.algebra().render());
    let _ = writeln!(out, "dimension: {}", c.module.dim());
    let _ = writeln!(out, "basis (coset length, reduced word, factor basis):");
    basis_lines(&mut out, &c);
    Ok(out)
}

fn matrix_block(out: &mut String, m: &Matrix<Scalar>) {
    if m.nrows() == 0 || m.ncols() == 0 {
        let _ = writeln!(out, "  (empty)");
        return;
    }
    for line in m.render().lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn cmd_rmatrix(s: &Session, a: &str, b: &str, naive: bool, klr: bool, renormalized: bool, spectral: bool) -> Result<String> {
    let (m, n) = (s.module(a)?, s.module(b)?);
    let e = &s.engine;
    let mut out = String::new();
    let name = if renormalized { "r" } else { "R" };
    let (src, dst, mat) = if renormalized {
        let r = renormalized_rmatrix(e, &m, &n).map_err(|x| anyhow!("{x}"))?;
        let _ = writeln!(out, "{name}_{{{a},{b}}}: {} → {}", r.source.module.algebra().render(), r.target.module.algebra().render());
        let _ = writeln!(out, "s = {}", r.s);
        let _ = writeln!(out, "declared shift −(β,γ)+2[β,γ]+2s = {}", r.declared_shift);
        let _ = writeln!(out, "measured degree = {}", r.measured_degree.map_or("none (zero map)".into(), |d| d.to_string()));
        if spectral {
            let spec = r.spectral.as_ref().ok_or_else(|| anyhow!("no spectral matrix"))?;
            let _ = writeln!(out, "R_{{M_z,N_z'}} nonzero entries (target row, source column):");
            for (i, j, p) in spec.entries() {
                let _ = writeln!(out, "  [{i},{j}] {}", p.render(&spectral_name));
            }
        }
        (r.source, r.target, r.map.matrix)
    } else if naive {
        let src = product(s, &m, &n, true, false)?;
        let dst = product(s, &n, &m, true, false)?;
        let mat = block_swap(&src, &dst, 0).map_err(|x| anyhow!("{x}"))?;
        let _ = writeln!(out, "naive R_{{{a},{b}}}");
        (src, dst, mat)
    } else {
        let r = if klr { rmatrix_klr(e, &restrict(&m)?, &restrict(&n)?) } else { rmatrix(e, &m, &n) }.map_err(|x| anyhow!("{x}"))?;
        let _ = writeln!(out, "{}R_{{{a},{b}}}: {} → {}", if klr { "KLR " } else { "" }, r.source.module.algebra().render(), r.target.module.algebra().render());
        let _ = writeln!(out, "shift −(β,γ)+2[β,γ] = {}", r.declared_shift);
        (r.source, r.target, r.map.matrix)
    };
    let _ = writeln!(out, "source basis:");
    basis_lines(&mut out, &src);
    let _ = writeln!(out, "target basis:");
    basis_lines(&mut out, &dst);
    let _ = writeln!(out, "matrix (rows: target, columns: source), rank {}:", mat.rank());
    matrix_block(&mut out, &mat);
    if mat.is_zero() {
        let _ = writeln!(out, "{name} is zero");
    } else if mat.is_invertible() {
        let _ = writeln!(out, "{name} is invertible");
    }
    Ok(out)
}

fn cmd_analyze(s: &Session, a: &str) -> Result<String> {
    let m = s.module(a)?;
    let cs = composition_structure(&m).map_err(|x| anyhow!("{x}"))?;
    let mut out = String::new();
    let _ = writeln!(out, "{a} over {}", m.algebra().render());
    let _ = writeln!(out, "dimension: {}", m.dim());
    let _ = writeln!(out, "graded character:");
    character_lines(&mut out, &m, "  ");
    let _ = writeln!(out, "simple: {}", if cs.is_simple { "yes" } else { "no" });
    let _ = writeln!(out, "composition length: {}", cs.length());
    for (k, f) in cs.factors.iter().enumerate() {
        let _ = writeln!(out, "factor {}: dimension {}", k + 1, f.dim());
        character_lines(&mut out, f, "  ");
    }
    let soc_simple = cs.socle.dim() > 0 && composition_structure(&cs.socle.module).map_err(|x| anyhow!("{x}"))?.is_simple;
    let hd_simple = cs.head.module.dim() > 0 && composition_structure(&cs.head.module).map_err(|x| anyhow!("{x}"))?.is_simple;
    let _ = writeln!(out, "socle: dimension {}, simple: {}", cs.socle.dim(), if soc_simple { "yes" } else { "no" });
    let _ = writeln!(out, "head: dimension {}, simple: {}", cs.head.module.dim(), if hd_simple { "yes" } else { "no" });
    if cs.is_simple && m.algebra().is_vv() {
        let rep = is_real(&s.engine, &m).map_err(|x| anyhow!("{x}"))?;
        let _ = writeln!(out, "real: {}", if rep.real() { "yes" } else { "no" });
        let _ = writeln!(out, "  M∘M simple: {}", rep.square_simple);
        let _ = writeln!(out, "  r_{{M,M}} scalar: {}", rep.r_scalar);
        let _ = writeln!(out, "  dim End(M∘M): {}", rep.end_dim);
    }
    Ok(out)
}

fn cmd_ybe(s: &Session, a: &str, b: &str, c: &str) -> Result<String> {
    let (l, m, n) = (s.module(a)?, s.module(b)?, s.module(c)?);
    let rep = ybe_check(&s.engine, &l, &m, &n).map_err(|x| anyhow!("{x}"))?;
    let yn = |x: bool| if x { "holds" } else { "FAILS" };
    let mut out = String::new();
    let _ = writeln!(out, "L = {a}, M = {b}, N = {c}");
    let _ = writeln!(out, "s(L,M) = {}, s(L,N) = {}, s(M,N) = {}", rep.s[0], rep.s[1], rep.s[2]);
    let _ = writeln!(out, "coefficients: {}", if rep.spectral { "ℚ[z,z',z'']" } else { "ℚ" });
    let _ = writeln!(out, "Yang–Baxter: {}", yn(rep.ybe));
    let _ = writeln!(out, "triangle R_{{L,M∘N}}: {}", yn(rep.triangle_left));
    let _ = writeln!(out, "triangle R_{{L∘M,N}}: {}", yn(rep.triangle_right));
    Ok(out)
}
