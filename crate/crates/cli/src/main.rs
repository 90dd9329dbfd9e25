//! `ppoly`: batch access to the partial-polytopes library.
//!
//! Exit status: 0 on success, 1 when a check or membership test fails
//! (the counterexample is printed as JSON), 2 on usage or input errors.

mod checks;
mod input;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use partial_polytopes::ehrhart::{
    ehrhart_polynomial, ConjectureScope, PolytopeKind, VolumeResult, STATE_CAP_VAR,
};
use partial_polytopes::matrices::{
    count_partial_perms, count_pasms, for_each_partial_perm, for_each_pasm, IntMatrix,
};
use partial_polytopes::permutohedron::{
    permutohedron_contains, permutohedron_facets, project, weighted_contains,
};
use partial_polytopes::polytopes::{
    decompose_pasm, decompose_pasm_binary, pasm_contains, pasm_face_lattice, pasm_facets,
    pasm_inequalities, pperm_contains, pperm_facets, pperm_inequalities,
};
use partial_polytopes::tubings::stellohedron_face_lattice;
use partial_polytopes::{LinearInequality, Relation};
use serde::Serialize;
use serde_json::{json, Value};

use checks::Check;

/// Listing more matrices than this needs `--long-running`.
const LISTING_LIMIT: u64 = 100_000;

#[derive(Parser)]
#[command(
    name = "ppoly",
    version,
    about = "Exact computations on partial permutation and partial ASM polytopes and partial permutohedra"
)]
#[command(after_help = concat!(
    "Matrices and vectors are JSON arrays with integer or \"p/q\" entries.\n",
    "The lattice-point counters refuse to allocate more dynamic-programming states than\n",
    "PPOLY_MAX_STATES (default 100000000)."
))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixFamily {
    Pperm,
    Pasm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Pperm,
    Pasm,
    Permutohedron,
}

impl From<Family> for PolytopeKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Pperm => PolytopeKind::PPerm,
            Family::Pasm => PolytopeKind::Pasm,
            Family::Permutohedron => PolytopeKind::Permutohedron,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeFamily {
    Pasm,
    Stellohedron,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scope {
    /// PPerm(2,n) for n <= 5 and P(m,2) for m <= 6.
    Default,
    /// PPerm(2,n) for n <= 3 and P(m,2) for m <= 4.
    Quick,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Enumeration,
    Facets,
    Separation,
    Decomposition,
    FaceLattice,
    Projection,
    Volumes,
    TheoremP2n,
    Conjectures,
    Positivity,
    Vertices,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// List the partial permutation matrices or PASMs of a given size.
    Enumerate {
        family: MatrixFamily,
        m: usize,
        n: usize,
        /// Print only the number of matrices.
        #[arg(long)]
        count: bool,
        /// Allow listings of more than 100000 matrices.
        #[arg(long)]
        long_running: bool,
    },
    /// Test membership of a point read from stdin.
    Check {
        family: Family,
        /// Parameter n of P(m,n); m is the length of the point.
        #[arg(long, conflicts_with = "weights")]
        n: Option<usize>,
        /// File holding a weight vector z; tests membership in P_z.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Write a PASM-polytope point read from stdin as a convex combination of PASMs.
    Decompose {
        /// Use two-branch splitting instead of vertex peeling.
        #[arg(long)]
        binary: bool,
        /// Leaf cap for --binary.
        #[arg(long, default_value_t = 4096, requires = "binary")]
        max_leaves: usize,
    },
    /// Print the irredundant facet inequalities.
    Facets {
        family: Family,
        m: usize,
        n: usize,
        /// Print the full defining system instead of the facets.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print a face lattice as node and edge lists.
    FaceLattice {
        family: LatticeFamily,
        m: usize,
        /// Column count, PASM only.
        n: Option<usize>,
    },
    /// Ehrhart polynomial and normalized volume.
    Volume {
        family: Family,
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Allow sizes expected to take more than a minute.
        #[arg(long)]
        long_running: bool,
    },
    /// Run a verification against known values and independent oracles.
    Verify {
        target: Target,
        /// Include the slow cases.
        #[arg(long)]
        long_running: bool,
        #[arg(long, value_enum, default_value_t = Scope::Default)]
        scope: Scope,
        /// Random points per size for the decomposition check.
        #[arg(long, default_value_t = checks::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = checks::DEFAULT_SEED)]
        seed: u64,
        /// Largest n for the P(2,n) volume check.
        #[arg(long, default_value_t = 7)]
        n_max: usize,
    },
    /// Apply the projection X -> zX.
    Project {
        /// JSON weight vector, one entry per matrix row.
        z_file: PathBuf,
        /// JSON matrix; `-` reads stdin.
        matrix_file: PathBuf,
    },
}

enum Status {
    Ok,
    Failed,
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// The rough cost threshold past which `volume` wants `--long-running`.
fn volume_is_long(kind: PolytopeKind, m: usize, n: usize) -> bool {
    match kind {
        PolytopeKind::Pasm => m.min(n) >= 4,
        PolytopeKind::PPerm => m.min(n) >= 5 || (m.min(n) == 4 && m.max(n) >= 6),
        PolytopeKind::Permutohedron => m > 8 || n > 8,
    }
}

fn enumerate(
    family: MatrixFamily,
    m: usize,
    n: usize,
    count: bool,
    long_running: bool,
) -> Result<Status> {
    if m == 0 || n == 0 {
        bail!("m and n must be positive");
    }
    let total: BigInt = match family {
        MatrixFamily::Pperm => count_partial_perms(m, n),
        MatrixFamily::Pasm => BigInt::from(count_pasms(m, n)),
    };
    if count {
        println!("{total}");
        return Ok(Status::Ok);
    }
    if total > BigInt::from(LISTING_LIMIT) && !long_running {
        bail!("listing {total} matrices needs --long-running (or use --count)");
    }
    let mut out = BufWriter::new(io::stdout().lock());
    let mut first = true;
    let mut err = Ok(());
    let mut emit = |x: &IntMatrix| {
        if err.is_ok() {
            let sep = if std::mem::take(&mut first) {
                "[\n  "
            } else {
                ",\n  "
            };
            err = write!(out, "{sep}")
                .and_then(|_| serde_json::to_writer(&mut out, x).map_err(io::Error::from));
        }
    };
    match family {
        MatrixFamily::Pperm => for_each_partial_perm(m, n, &mut emit),
        MatrixFamily::Pasm => for_each_pasm(m, n, &mut emit),
    }
    err?;
    writeln!(out, "{}", if first { "[]" } else { "\n]" })?;
    out.flush()?;
    Ok(Status::Ok)
}

fn membership(family: Family, n: Option<usize>, weights: Option<PathBuf>) -> Result<Status> {
    let member = match family {
        Family::Pperm | Family::Pasm => {
            if n.is_some() || weights.is_some() {
                bail!("--n and --weights apply to permutohedron only");
            }
            let x = input::matrix(None)?;
            let (contains, system) = match family {
                Family::Pperm => (pperm_contains(&x), pperm_inequalities(x.rows(), x.cols())),
                _ => (pasm_contains(&x), pasm_inequalities(x.rows(), x.cols())),
            };
            if !contains {
                let violated = system.iter().find(|h| !h.holds(x.entries()));
                print_json(&json!({"member": false, "violated": violated}))?;
                return Ok(Status::Failed);
            }
            true
        }
        Family::Permutohedron => {
            let u = input::vector(None)?;
            match (n, weights) {
                (Some(n), None) => permutohedron_contains(&u, u.len(), n)?,
                (None, Some(path)) => weighted_contains(&u, &input::vector(Some(&path))?)?,
                _ => bail!("permutohedron membership needs --n or --weights"),
            }
        }
    };
    print_json(&json!({ "member": member }))?;
    Ok(if member { Status::Ok } else { Status::Failed })
}

fn decompose(binary: bool, max_leaves: usize) -> Result<Status> {
    let x = input::matrix(None)?;
    if !pasm_contains(&x) {
        print_json(&json!({"error": "point lies outside the PASM polytope", "point": x}))?;
        return Ok(Status::Failed);
    }
    let d = if binary {
        decompose_pasm_binary(&x, max_leaves)?
    } else {
        decompose_pasm(&x)?
    };
    print_json(&d)?;
    Ok(Status::Ok)
}

fn write_inequalities_csv(system: &[LinearInequality]) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    if let Some(first) = system.first() {
        let mut header: Vec<String> = (0..first.dim()).map(|k| format!("x{k}")).collect();
        header.extend(["relation".into(), "rhs".into()]);
        w.write_record(&header)?;
    }
    for h in system {
        let mut row: Vec<String> = h.coeffs.iter().map(ToString::to_string).collect();
        row.push(match h.relation {
            Relation::Le => "<=".into(),
            Relation::Ge => ">=".into(),
        });
        row.push(h.rhs.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn facets(family: Family, m: usize, n: usize, all: bool, format: Format) -> Result<Status> {
    let system = match (family, all) {
        (Family::Pperm, false) => pperm_facets(m, n)?,
        (Family::Pperm, true) => pperm_inequalities(m, n),
        (Family::Pasm, false) => pasm_facets(m, n)?,
        (Family::Pasm, true) => pasm_inequalities(m, n),
        (Family::Permutohedron, false) => permutohedron_facets(m, n)?,
        (Family::Permutohedron, true) => {
            partial_polytopes::permutohedron::permutohedron_all_inequalities(m, n)
        }
    };
    match format {
        Format::Json => print_json(&system)?,
        Format::Csv => write_inequalities_csv(&system)?,
    }
    Ok(Status::Ok)
}

fn face_lattice(family: LatticeFamily, m: usize, n: Option<usize>) -> Result<Status> {
    let value = match (family, n) {
        (LatticeFamily::Pasm, Some(n)) => {
            let lattice = pasm_face_lattice(m, n)?;
            let vertices = partial_polytopes::matrices::enumerate_pasms(m, n);
            let nodes: Vec<Value> = lattice
                .poset
                .faces
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    json!({
                        "id": k,
                        "dim": f.dim,
                        "vertices": f.vertices,
                        "regions": lattice.regions[k],
                        "labeling": lattice.labels[k],
                    })
                })
                .collect();
            json!({"family": "pasm", "m": m, "n": n, "vertices": vertices, "nodes": nodes, "edges": lattice.poset.covers})
        }
        (LatticeFamily::Pasm, None) => bail!("face-lattice pasm needs both m and n"),
        (LatticeFamily::Stellohedron, Some(_)) => bail!("face-lattice stellohedron takes only m"),
        (LatticeFamily::Stellohedron, None) => {
            let (poset, chains) = stellohedron_face_lattice(m)?;
            let nodes: Vec<Value> = poset
                .faces
                .iter()
                .zip(&chains)
                .enumerate()
                .map(|(k, (f, c))| json!({"id": k, "dim": f.dim, "chain": c}))
                .collect();
            json!({"family": "stellohedron", "m": m, "nodes": nodes, "edges": poset.covers})
        }
    };
    print_json(&value)?;
    Ok(Status::Ok)
}

fn volume_csv(results: &[VolumeResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["kind", "m", "n", "dim", "normalized_volume", "ehrhart"])?;
    for r in results {
        let coeffs: Vec<String> = r.ehrhart.coeffs().iter().map(ToString::to_string).collect();
        w.write_record([
            r.kind.name().to_string(),
            r.m.to_string(),
            r.n.to_string(),
            r.dimension.to_string(),
            r.normalized_volume.to_string(),
            coeffs.join(" "),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn volume(
    family: Family,
    m: usize,
    n: usize,
    format: Format,
    long_running: bool,
) -> Result<Status> {
    let kind = PolytopeKind::from(family);
    if volume_is_long(kind, m, n) && !long_running {
        bail!("{kind}({m},{n}) is expected to take more than a minute; pass --long-running");
    }
    let r = ehrhart_polynomial(kind, m, n)?;
    match format {
        Format::Json => print_json(&r)?,
        Format::Csv => volume_csv(std::slice::from_ref(&r))?,
    }
    Ok(Status::Ok)
}

fn verify(
    target: Target,
    long_running: bool,
    scope: Scope,
    samples: usize,
    seed: u64,
    n_max: usize,
) -> Result<Status> {
    let scope = match scope {
        Scope::Default => ConjectureScope::default(),
        Scope::Quick => ConjectureScope {
            pperm_n_max: 3,
            permutohedron_m_max: 4,
        },
    };
    let mut seen = Vec::new();
    let mut results: Vec<Check> = Vec::new();
    let run = |t: Target, seen: &mut Vec<VolumeResult>| -> Result<Check> {
        match t {
            Target::Enumeration => checks::enumeration(long_running),
            Target::Facets => checks::facets(),
            Target::Separation => checks::separation(),
            Target::Decomposition => checks::decomposition(samples, seed),
            Target::FaceLattice => checks::face_lattice(),
            Target::Projection => checks::projection(),
            Target::Volumes => checks::volumes(long_running, seen),
            Target::TheoremP2n => checks::theorem_p2n(n_max, seen),
            Target::Conjectures => checks::conjectures(scope, seen),
            Target::Positivity => {
                checks::volumes(long_running, seen)?;
                checks::conjectures(scope, seen)?;
                checks::positivity(seen)
            }
            Target::Vertices => checks::vertices(),
            Target::All => unreachable!("expanded below"),
        }
    };
    if target == Target::All {
        let order = [
            Target::Enumeration,
            Target::Facets,
            Target::Separation,
            Target::Decomposition,
            Target::FaceLattice,
            Target::Projection,
            Target::Volumes,
            Target::Conjectures,
        ];
        for t in order {
            results.push(run(t, &mut seen)?);
        }
        results.push(checks::positivity(&seen)?);
        results.push(checks::vertices()?);
        let pass = results.iter().all(|c| c.pass);
        print_json(&json!({"pass": pass, "checks": results}))?;
        return Ok(if pass { Status::Ok } else { Status::Failed });
    }
    let check = run(target, &mut seen)?;
    print_json(&check)?;
    Ok(if check.pass {
        Status::Ok
    } else {
        Status::Failed
    })
}

fn projection(z_file: PathBuf, matrix_file: PathBuf) -> Result<Status> {
    let z = input::vector(Some(&z_file))?;
    let x = input::matrix(Some(&matrix_file))?;
    print_json(&project(&z, &x)?)?;
    Ok(Status::Ok)
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Enumerate {
            family,
            m,
            n,
            count,
            long_running,
        } => enumerate(family, m, n, count, long_running),
        Command::Check { family, n, weights } => membership(family, n, weights),
        Command::Decompose { binary, max_leaves } => decompose(binary, max_leaves),
        Command::Facets {
            family,
            m,
            n,
            all,
            format,
        } => facets(family, m, n, all, format),
        Command::FaceLattice { family, m, n } => face_lattice(family, m, n),
        Command::Volume {
            family,
            m,
            n,
            format,
            long_running,
        } => volume(family, m, n, format, long_running),
        Command::Verify {
            target,
            long_running,
            scope,
            samples,
            seed,
            n_max,
        } => verify(target, long_running, scope, samples, seed, n_max),
        Command::Project {
            z_file,
            matrix_file,
        } => projection(z_file, matrix_file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(partial_polytopes::Error::ResourceGuard { cap, .. }) = e.downcast_ref() {
                eprintln!("the cap is set by {STATE_CAP_VAR} (currently {cap})");
            }
            ExitCode::from(2)
        }
    }
}
