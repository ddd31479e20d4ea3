//! Command-line interface: argument parsing, dispatch, rendering, and run
//! manifests.

pub mod reproduce;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bott::{bott_cohomology, GrassmannianBundle};
use crate::error::{Error, Result};
use crate::field::{parse_rational, PrimeField};
use crate::forms::{alpha4_as_form, classify_orbit, line_type, AltForm};
use crate::hodge::fano::{seeded_quartic, FanoHodgeOptions};
use crate::hodge::jacobian::{hypersurface_hodge, jacobian_ideal_rows, phi_matrix, prime_from_seed, PRIME_RANGE};
use crate::hodge::poly::HomogeneousForm;
use crate::modp::write_triples;
use crate::pfaffian::hull_trials;
use crate::schur::{ext_lambda2, rank2_ext_power, rank2_sym_power, two_column_schur};
use crate::weights::IntWeight;
use reproduce::{Check, Report};

/// Seed used when none is given, so documented runs reproduce verbatim.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "fanokit", version, about = "Exact computations on Fano schemes of lines, Grassmannians and alternating forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Prime for finite-field computations; drawn from the seed if absent.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Print compact JSON instead of a readable rendering.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write a run manifest to this path.
    #[arg(long, global = true)]
    pub manifest_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of Σ^α Q ⊗ Σ^β S on a Grassmannian.
    Bott(BottArgs),
    /// Decompositions of Schur functors of bundles.
    #[command(subcommand)]
    Schur(SchurCommand),
    /// Hodge numbers of hypersurfaces and Fano schemes.
    #[command(subcommand)]
    Hodge(HodgeCommand),
    /// Alternating forms in seven variables and lines on hypersurfaces.
    #[command(subcommand)]
    Forms(FormsCommand),
    /// Skew forms, Pfaffians and constant-rank pencils.
    #[command(subcommand)]
    Pfaffian(PfaffianCommand),
    /// Run a named verification suite.
    #[command(subcommand)]
    Reproduce(ReproduceCommand),
    /// Re-run the command stored in a manifest and compare digests.
    Replay { manifest: PathBuf },
}

#[derive(Debug, Args)]
pub struct BottArgs {
    /// m,N for Gr(m, N).
    #[arg(long, value_parser = parse_pair)]
    pub grassmannian: (usize, usize),
    /// Weight of the quotient bundle (length N−m); zero if omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub quotient: Option<Vec<i64>>,
    /// Weight of the subbundle (length m).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sub: Vec<i64>,
}

#[derive(Debug, Subcommand)]
pub enum SchurCommand {
    /// Λⁱ(S^d T), or Sⁱ(S^d T) with --sym, for a rank-2 bundle T.
    ExtPower {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        sym: bool,
    },
    /// Λᵃ(Λ²U) for U of the given rank.
    Lambda2Ext {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Σ^{(a,b)'}(Λ²U) for U of the given rank.
    TwoColumn {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HodgeCommand {
    /// Middle Hodge numbers of a smooth degree-d hypersurface in P^N.
    Hypersurface {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Hodge numbers of a quartic sixfold and of its Fano scheme of lines.
    QuarticSixfoldFano {
        /// Use Hilbert-series values instead of finite-field ranks.
        #[arg(long)]
        skip_matrix: bool,
    },
    /// Dump the φ_f or β_f matrix of the seeded quartic as "row col value" lines.
    Matrix {
        #[arg(long, value_enum)]
        kind: MatrixKind,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum MatrixKind {
    Phi,
    Beta,
}

#[derive(Debug, Subcommand)]
pub enum FormsCommand {
    /// Orbit of a 3- or 4-form in seven variables read from JSON.
    Classify {
        form: PathBuf,
        #[arg(long, default_value_t = 7)]
        dim: usize,
    },
    /// The 4-form α₄.
    Alpha4 {
        /// Print the form as a JSON term list.
        #[arg(long)]
        emit: bool,
    },
    /// First or second type of a line on a hypersurface in P⁷.
    LineType { quartic: PathBuf, line: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PfaffianCommand {
    /// Kernel hulls of random constant-rank pencils of skew forms.
    Hull {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReproduceCommand {
    /// Hodge numbers of the quartic sixfold and its Fano scheme.
    HodgeNum {
        #[arg(long)]
        skip_matrix: bool,
    },
    /// Orbit invariants of α₄, the zero form and random forms.
    OrbitTable {
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Vanishing for Σ^{(a,b)'}(Λ²U) on Gr(n+k, 2n); without --n, runs
    /// (3,1), (3,2) and (4,1).
    Cohvan {
        #[arg(long, requires = "k")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_ab: usize,
    },
    /// Vanishing for Λᵗ(SⁿL) on Gr(2, 2n).
    Gr2Vanishing {
        #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4])]
        n: Vec<usize>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected m,N, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

/// The JSON produced by a command, whether it passed, and the prime it used.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: Value,
    pub pass: bool,
    pub prime: Option<u64>,
}

impl Outcome {
    fn plain(output: impl Serialize) -> Self {
        Self { output: serde_json::to_value(output).expect("serializable"), pass: true, prime: None }
    }

    fn report(report: Report, prime: Option<u64>) -> Self {
        let pass = report.pass;
        Self { output: serde_json::to_value(report).expect("serializable"), pass, prime }
    }

    /// Canonical serialization, the input of the results digest.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.output).expect("serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: u64,
    pub prime: Option<u64>,
    pub timestamp: String,
    pub results_digest: String,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn resolve_prime(cli: &Cli) -> u64 {
    cli.prime.unwrap_or_else(|| prime_from_seed(cli.seed, PRIME_RANGE.0, PRIME_RANGE.1))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_line(path: &Path) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    let raw: Vec<Vec<Value>> = serde_json::from_str(&read(path)?)?;
    let parse = |v: &Value| match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().expect("checked").into())),
        other => Err(Error::Invalid(format!("expected a rational, found {other}"))),
    };
    match raw.as_slice() {
        [p, q] => Ok((p.iter().map(parse).collect::<Result<_>>()?, q.iter().map(parse).collect::<Result<_>>()?)),
        _ => Err(Error::Invalid("a line is given by exactly two points".into())),
    }
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Bott(args) => {
            let (m, n) = args.grassmannian;
            if m == 0 || m >= n {
                return Err(Error::InvalidGrassmannian { sub_rank: m, ambient_dim: n });
            }
            let quotient = args.quotient.clone().unwrap_or_else(|| vec![0; n - m]);
            let b = GrassmannianBundle::new(n, m, IntWeight::new(quotient)?, IntWeight::new(args.sub.clone())?)?;
            Ok(Outcome::plain(bott_cohomology(&b)))
        }
        Command::Schur(cmd) => run_schur(cmd),
        Command::Hodge(cmd) => run_hodge(cli, cmd),
        Command::Forms(cmd) => run_forms(cmd),
        Command::Pfaffian(PfaffianCommand::Hull { n, k, trials }) => {
            let p = resolve_prime(cli);
            let field = PrimeField::new(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let t = hull_trials(&field, *n, *k, *trials, &mut rng)?;
            let checks = vec![
                Check::new("constant-rank pencils accepted", trials, t.constant_rank_accepted),
                Check::new("hull dimensions", [(n + k, t.constant_rank_accepted)].into_iter().collect::<std::collections::BTreeMap<_, _>>(), &t.hull_dims),
            ];
            Ok(Outcome::report(Report::new(checks, t), Some(p)))
        }
        Command::Reproduce(cmd) => run_reproduce(cli, cmd),
        Command::Replay { manifest } => {
            let m: RunManifest = serde_json::from_str(&read(manifest)?)?;
            let replayed = Cli::try_parse_from(&m.argv).map_err(|e| Error::Invalid(e.to_string()))?;
            if matches!(replayed.command, Command::Replay { .. }) {
                return Err(Error::Invalid("a manifest cannot replay another replay".into()));
            }
            let outcome = run(&replayed)?;
            let computed = digest(&outcome.canonical_json());
            let check = Check::new("results digest", &m.results_digest, computed);
            Ok(Outcome::report(Report::new(vec![check], json!({ "command": m.command })), outcome.prime))
        }
    }
}

fn run_schur(cmd: &SchurCommand) -> Result<Outcome> {
    Ok(match cmd {
        SchurCommand::ExtPower { d, i, sym } => {
            let e = if *sym { rank2_sym_power(*d, *i)? } else { rank2_ext_power(*d, *i)? };
            let op = if *sym { "sym" } else { "ext" };
            Outcome::plain(json!({ "operation": op, "d": d, "i": i, "terms": e }))
        }
        SchurCommand::Lambda2Ext { a, rank } => Outcome::plain(json!({
            "a": a,
            "rank": rank,
            "terms": ext_lambda2(*a, *rank),
            "note": "labels with more rows than the rank vanish and are omitted",
        })),
        SchurCommand::TwoColumn { a, b, rank } => Outcome::plain(json!({
            "a": a,
            "b": b,
            "rank": rank,
            "terms": two_column_schur(*a, *b, *rank)?,
            "note": "labels with more rows than the rank vanish and are omitted",
        })),
    })
}

fn run_hodge(cli: &Cli, cmd: &HodgeCommand) -> Result<Outcome> {
    match cmd {
        HodgeCommand::Hypersurface { n, d } => Ok(Outcome::plain(hypersurface_hodge(*n, *d)?)),
        HodgeCommand::QuarticSixfoldFano { skip_matrix } => hodge_num(cli, *skip_matrix),
        HodgeCommand::Matrix { kind, out } => {
            let p = resolve_prime(cli);
            let field = PrimeField::new(p)?;
            let f = seeded_quartic(&field, cli.seed);
            let (rows, ncols) = match kind {
                MatrixKind::Phi => (phi_matrix(&field, &f), 330),
                MatrixKind::Beta => (jacobian_ideal_rows(&field, &f, 8), 6435),
            };
            let mut file = std::io::BufWriter::new(fs::File::create(out)?);
            write_triples(&mut file, &rows)?;
            let nnz: usize = rows.iter().map(Vec::len).sum();
            let mut o = Outcome::plain(json!({
                "path": out.display().to_string(),
                "rows": rows.len(),
                "cols": ncols,
                "nonzeros": nnz,
                "prime": p,
            }));
            o.prime = Some(p);
            Ok(o)
        }
    }
}

fn hodge_num(cli: &Cli, skip_matrix: bool) -> Result<Outcome> {
    let opts = FanoHodgeOptions { seed: cli.seed, prime: cli.prime, skip_matrix };
    let (report, table) = reproduce::reproduce_hodge_num(opts)?;
    Ok(Outcome::report(report, table.prime))
}

fn run_forms(cmd: &FormsCommand) -> Result<Outcome> {
    match cmd {
        FormsCommand::Classify { form, dim } => {
            let f = AltForm::from_json(&read(form)?, *dim, None)?;
            let record = classify_orbit(&f)?;
            Ok(Outcome::plain(json!({
                "degree": f.degree(),
                "orbit": record,
                "volume": "e1^e2^e3^e4^e5^e6^e7",
            })))
        }
        FormsCommand::Alpha4 { emit } => {
            let f = alpha4_as_form();
            if *emit {
                Ok(Outcome::plain(&f))
            } else {
                Ok(Outcome::plain(json!({
                    "basis": crate::forms::ALPHA4_BASIS,
                    "form": f,
                    "orbit": classify_orbit(&f)?,
                })))
            }
        }
        FormsCommand::LineType { quartic, line } => {
            let f: HomogeneousForm<BigRational> = serde_json::from_str(&read(quartic)?)?;
            let (p, q) = read_line(line)?;
            Ok(Outcome::plain(line_type(&f, &p, &q)?))
        }
    }
}

fn run_reproduce(cli: &Cli, cmd: &ReproduceCommand) -> Result<Outcome> {
    match cmd {
        ReproduceCommand::HodgeNum { skip_matrix } => hodge_num(cli, *skip_matrix),
        ReproduceCommand::OrbitTable { random } => {
            Ok(Outcome::report(reproduce::reproduce_orbit_table(cli.seed, *random)?, None))
        }
        ReproduceCommand::Cohvan { n, k, max_ab } => {
            let cases = match (n, k) {
                (Some(n), Some(k)) => vec![(*n, *k)],
                _ => vec![(3, 1), (3, 2), (4, 1)],
            };
            let mut checks = Vec::new();
            let mut results = Vec::new();
            for (n, k) in cases {
                let r = reproduce::verify_cohvan(n, k, *max_ab)?;
                checks.extend(r.checks);
                results.push(r.result);
            }
            Ok(Outcome::report(Report::new(checks, results), None))
        }
        ReproduceCommand::Gr2Vanishing { n } => Ok(Outcome::report(reproduce::reproduce_gr2_vanishing(n)?, None)),
    }
}

/// Human-readable rendering: check lines for reports, indented JSON otherwise.
pub fn render(outcome: &Outcome) -> String {
    let Some(checks) = outcome.output.get("checks").and_then(Value::as_array) else {
        return serde_json::to_string_pretty(&outcome.output).expect("serializable");
    };
    let mut out = String::new();
    for c in checks {
        let status = if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        let name = c["name"].as_str().unwrap_or_default();
        out.push_str(&format!("{status} {name}: expected {}, computed {}\n", c["expected"], c["computed"]));
    }
    out.push_str(if outcome.pass { "all checks passed" } else { "some checks FAILED" });
    out
}

/// Parses `argv`, runs, prints, and writes the manifest. Returns the process
/// exit code: 0 on success, 1 if any check failed, 2 on error.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let canonical = outcome.canonical_json();
    let text = if cli.json { canonical.clone() } else { render(&outcome) };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = &cli.manifest_out {
        let manifest = RunManifest {
            command: argv.join(" "),
            argv: argv.clone(),
            seed: cli.seed,
            prime: outcome.prime,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            results_digest: digest(&canonical),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("serializable");
        if let Err(e) = fs::write(path, text) {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return 2;
        }
    }
    if outcome.pass {
        0
    } else {
        1
    }
}
