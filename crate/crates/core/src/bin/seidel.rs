use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Complex;

use seidel_core::graph::{directed_laplacian, directed_signless_laplacian, entry_scale};
use seidel_core::io::{read_document, write_document, write_document_to, GraphDocument, Metadata};
use seidel_core::seidel::verify_conjugation;
use seidel_core::spectrum::{complex_spectrum, is_symmetric};
use seidel_core::starlike::validate_starlike;
use seidel_core::strength::scan_to_csv;
use seidel_core::{
    adjacency_matrix, density_from_graph, find_isomorphism, is_pure, lq_switch, lq_switch_forced,
    spectral_gap, strength_scan, switch, validate_seidel, von_neumann_entropy, DenseMatrix, Error,
    SeidelPartition, SpectralKind, WeightedDigraph,
};

#[derive(Parser)]
#[command(
    name = "seidel",
    version,
    about = "Seidel switching, cospectral graphs and operator strength"
)]
struct Cli {
    /// Tolerance for spectral comparisons and numerical rank
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Suppress reports; requested documents and CSV still go to stdout
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Adjacency,
    Laplacian,
    Signless,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateKind {
    Laplacian,
    Signless,
}

impl From<StateKind> for SpectralKind {
    fn from(k: StateKind) -> Self {
        match k {
            StateKind::Laplacian => SpectralKind::Laplacian,
            StateKind::Signless => SpectralKind::SignlessLaplacian,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the Seidel and starlike conditions of a partitioned graph
    Validate { path: PathBuf },
    /// Switch a partitioned graph
    Switch {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Adjacency)]
        kind: Kind,
        /// Output file; the document goes to stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print both spectra and their largest gap
        #[arg(long)]
        verify: bool,
        /// Skip validation, conjugate densely and check cospectrality afterwards
        #[arg(long)]
        force: bool,
    },
    /// Print the ascending spectrum of A, L or Q
    Spectra {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Adjacency)]
        kind: Kind,
        /// Accept directed graphs for L and Q, using out-degrees
        #[arg(long)]
        force: bool,
        /// Compare against a second graph; exits 1 when not cospectral
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Print the density matrix L/tr(L) or Q/tr(Q)
    Density {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = StateKind::Laplacian)]
        kind: StateKind,
    },
    /// Print von Neumann entropy, purity and rank of the graph state
    Entropy {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = StateKind::Laplacian)]
        kind: StateKind,
    },
    /// Tabulate K_Sch and K_WZ of Seidel operators as CSV
    StrengthScan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
        max_order: u64,
        /// Also scan U_2 (+) I
        #[arg(long)]
        include_blocks: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive isomorphism test (order at most 12)
    Isomorphic { first: PathBuf, second: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

struct Ctx {
    tol: f64,
    quiet: bool,
}

impl Ctx {
    fn say(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

fn load(path: &Path) -> Result<(GraphDocument, WeightedDigraph), Failure> {
    let doc = read_document(path)?;
    let g = doc.graph()?;
    Ok((doc, g))
}

fn load_partitioned(
    path: &Path,
) -> Result<(GraphDocument, WeightedDigraph, SeidelPartition), Failure> {
    let (doc, g) = load(path)?;
    let part = doc
        .seidel_partition()?
        .ok_or_else(|| Failure::Usage(format!("{}: document has no partition", path.display())))?;
    Ok((doc, g, part))
}

/// Fixed 12-decimal reals; values that print as zero lose their sign.
fn fixed(v: f64) -> String {
    let v = if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{v:.12}")
}

fn real_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| fixed(v))
        .collect::<Vec<_>>()
        .join(" ")
}

fn complex_list(values: &[Complex<f64>], tol: f64) -> String {
    values
        .iter()
        .map(|z| {
            if z.im.abs() <= tol {
                fixed(z.re)
            } else {
                format!("{}{:+.12}i", fixed(z.re), z.im)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn spectrum_line(m: &DenseMatrix, tol: f64) -> Result<String, Failure> {
    if is_symmetric(m) {
        Ok(real_list(seidel_core::spectrum(m)?.eigenvalues()))
    } else {
        Ok(complex_list(&complex_spectrum(m)?, tol * entry_scale(m)))
    }
}

fn graph_matrix(g: &WeightedDigraph, kind: Kind, force: bool) -> Result<DenseMatrix, Failure> {
    let directed = force && !g.is_symmetric();
    Ok(match kind {
        Kind::Adjacency => adjacency_matrix(g),
        Kind::Laplacian if directed => directed_laplacian(g),
        Kind::Signless if directed => directed_signless_laplacian(g),
        Kind::Laplacian => SpectralKind::Laplacian.matrix(g)?,
        Kind::Signless => SpectralKind::SignlessLaplacian.matrix(g)?,
    })
}

fn cmd_validate(ctx: &Ctx, path: &Path) -> CmdResult {
    let (_, g, part) = load_partitioned(path)?;
    let report = validate_seidel(&g, &part)?;
    ctx.say("seidel: valid");
    for cell in &report.cells {
        let cats: Vec<String> = cell
            .categories
            .iter()
            .map(|(v, c)| format!("{v}:{c}"))
            .collect();
        ctx.say(format!(
            "cell {} p={} q={} r={} categories {}",
            cell.cell,
            cell.p,
            cell.q,
            cell.r,
            cats.join(" ")
        ));
    }
    match validate_starlike(&g, &part) {
        Ok(profiles) => {
            ctx.say("starlike: valid");
            let w = |x: Option<f64>| x.map_or("-".to_string(), |v| v.to_string());
            for p in profiles {
                ctx.say(format!(
                    "cell {} w+={} w-={} w^+={} w^-={} p={} q={}",
                    p.cell,
                    w(p.w_plus),
                    w(p.w_minus),
                    w(p.w_sup_plus),
                    w(p.w_sup_minus),
                    p.p,
                    p.q
                ));
            }
        }
        Err(e) => ctx.say(format!("starlike: invalid ({e})")),
    }
    Ok(ExitCode::SUCCESS)
}

fn switched_document(
    doc: &GraphDocument,
    g: &WeightedDigraph,
    part: &SeidelPartition,
) -> GraphDocument {
    let mut out = GraphDocument::from_graph(g).with_partition(part);
    if let Some(meta) = &doc.metadata {
        out.metadata = Some(Metadata {
            name: meta.name.as_ref().map(|n| format!("{n}_switched")),
            notes: None,
            labels: meta.labels.clone(),
        });
    }
    out
}

fn cmd_switch(
    ctx: &Ctx,
    path: &Path,
    kind: Kind,
    out: Option<&Path>,
    verify: bool,
    force: bool,
) -> CmdResult {
    let (doc, g, part) = load_partitioned(path)?;
    let switched = match (kind, force) {
        (Kind::Adjacency, false) => switch(&g, &part)?,
        (Kind::Adjacency, true) => {
            let u = part.operator_in_graph_order();
            let a = adjacency_matrix(&g);
            let m = &u * &a * &u;
            let snap = seidel_core::seidel::WEIGHT_TOL * entry_scale(&m);
            let h = WeightedDigraph::from_adjacency(&m, snap)?;
            verify_conjugation(&a, &adjacency_matrix(&h), &part)?;
            h
        }
        (Kind::Laplacian, false) => lq_switch(&g, &part, SpectralKind::Laplacian)?,
        (Kind::Signless, false) => lq_switch(&g, &part, SpectralKind::SignlessLaplacian)?,
        (Kind::Laplacian, true) => lq_switch_forced(&g, &part, SpectralKind::Laplacian)?,
        (Kind::Signless, true) => lq_switch_forced(&g, &part, SpectralKind::SignlessLaplacian)?,
    };
    let result = switched_document(&doc, &switched, &part);
    // reports go to stderr when the document itself is on stdout
    let report = |line: String| {
        if ctx.quiet {
        } else if out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    };
    match out {
        Some(p) => write_document_to(&result, p)?,
        None => print!("{}", write_document(&result)),
    }
    if verify {
        let before = graph_matrix(&g, kind, false)?;
        let after = graph_matrix(&switched, kind, false)?;
        report(format!("before: {}", spectrum_line(&before, ctx.tol)?));
        report(format!("after:  {}", spectrum_line(&after, ctx.tol)?));
        report(format!("max gap: {:e}", spectral_gap(&before, &after)?));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectra(
    ctx: &Ctx,
    path: &Path,
    kind: Kind,
    force: bool,
    against: Option<&Path>,
) -> CmdResult {
    let (_, g) = load(path)?;
    let m = graph_matrix(&g, kind, force)?;
    let line = spectrum_line(&m, ctx.tol)?;
    let Some(other) = against else {
        ctx.say(line);
        return Ok(ExitCode::SUCCESS);
    };
    let (_, h) = load(other)?;
    let n = graph_matrix(&h, kind, force)?;
    let gap = spectral_gap(&m, &n)?;
    let scale = entry_scale(&m).max(entry_scale(&n));
    let same = gap <= ctx.tol * scale;
    ctx.say(format!("first:  {line}"));
    ctx.say(format!("second: {}", spectrum_line(&n, ctx.tol)?));
    ctx.say(format!("max gap: {gap:e}"));
    ctx.say(format!("cospectral: {}", if same { "yes" } else { "no" }));
    Ok(if same {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_density(ctx: &Ctx, path: &Path, kind: StateKind) -> CmdResult {
    let (_, g) = load(path)?;
    let rho = density_from_graph(&g, kind.into())?;
    for row in rho.matrix().row_iter() {
        let vals: Vec<f64> = row.iter().copied().collect();
        ctx.say(real_list(&vals));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_entropy(ctx: &Ctx, path: &Path, kind: StateKind) -> CmdResult {
    let (_, g) = load(path)?;
    let rho = density_from_graph(&g, kind.into())?;
    ctx.say(format!("entropy: {:.12}", von_neumann_entropy(&rho)));
    ctx.say(format!("purity: {:.12}", rho.purity()));
    ctx.say(format!("rank: {}", rho.rank(ctx.tol)));
    ctx.say(format!(
        "pure: {}",
        if is_pure(&rho, ctx.tol) { "yes" } else { "no" }
    ));
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(ctx: &Ctx, max_order: usize, include_blocks: bool, out: Option<&Path>) -> CmdResult {
    let rows = strength_scan(max_order, include_blocks)?;
    let csv = scan_to_csv(&rows);
    match out {
        Some(p) => {
            std::fs::write(p, csv).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            ctx.say(format!("wrote {} rows to {}", rows.len(), p.display()));
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_isomorphic(ctx: &Ctx, first: &Path, second: &Path) -> CmdResult {
    let (_, g) = load(first)?;
    let (_, h) = load(second)?;
    match find_isomorphism(&g, &h)? {
        Some(f) => {
            ctx.say("isomorphic: yes");
            let pairs: Vec<String> = f
                .iter()
                .enumerate()
                .map(|(u, v)| format!("{u}->{v}"))
                .collect();
            ctx.say(format!("mapping: {}", pairs.join(" ")));
        }
        None => ctx.say("isomorphic: no"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        tol: cli.tol,
        quiet: cli.quiet,
    };
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(&ctx, path),
        Command::Switch {
            path,
            kind,
            out,
            verify,
            force,
        } => cmd_switch(&ctx, path, *kind, out.as_deref(), *verify, *force),
        Command::Spectra {
            path,
            kind,
            force,
            against,
        } => cmd_spectra(&ctx, path, *kind, *force, against.as_deref()),
        Command::Density { path, kind } => cmd_density(&ctx, path, *kind),
        Command::Entropy { path, kind } => cmd_entropy(&ctx, path, *kind),
        Command::StrengthScan {
            max_order,
            include_blocks,
            out,
        } => cmd_scan(&ctx, *max_order as usize, *include_blocks, out.as_deref()),
        Command::Isomorphic { first, second } => cmd_isomorphic(&ctx, first, second),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
