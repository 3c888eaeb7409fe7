//! Argument parsing and dispatch. Exit codes: 0 success, 1 domain error,
//! 2 usage error, 3 a check in the report failed.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use admkit_core::affine_adm::{adm_category_emptiness, cross_validate_sl2, sl2_bk, sl2_weight, sl2_xk, vacuum_status, LevelPQ};
use admkit_core::exactmath::{int, ExtRational, Rational};
use admkit_core::kacline::Height;
use admkit_core::neveu_schwarz::{self as ns, NsVerdict};
use admkit_core::partitions;
use admkit_core::rootsystem::{classify, integral_subsystem, selfext_dim, upsilon_bounds, CartanData, Kind, SimpleType, Weight};
use admkit_core::shapovalov::closed_form::{affine_product, compare_affine, compare_kac};
use admkit_core::shapovalov::{depths_up_to, det_of, shapovalov_matrix, sum_formula_check_with, AlgebraEngine, Grade};
use admkit_core::virasoro::{self as vir, SelfExtCase, VirLevel};
use admkit_core::wreduction::{central_charge, phi_kernel_dim, reduce_weight, vir_recovery_check, wadm_transfer, MinimalWData};
use admkit_core::{Error, Result};

use crate::checks;
use crate::config::{Config, Format};
use crate::output::{Check, Report};
use crate::schema::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "admkit", version, about = "Exact Shapovalov determinants, Jantzen filtrations and admissible weights")]
struct Cli {
    /// Output format; defaults to the config file, then to the command's own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algebra {
    Vir,
    Ns,
    AffSl2,
}

impl Algebra {
    fn engine(self) -> AlgebraEngine {
        match self {
            Algebra::Vir => AlgebraEngine::VIRASORO,
            Algebra::Ns => AlgebraEngine::NEVEU_SCHWARZ,
            Algebra::AffSl2 => AlgebraEngine::AFFINE_SL2,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded dimensions of U(n₋).
    Partitions {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Largest depth: an integer, a half-integer such as 15/2 for ns, a bound on a+b for aff-sl2.
        #[arg(long)]
        up_to: Option<String>,
    },
    /// Positive roots up to a height.
    Roots {
        #[arg(long = "type", required_unless_present = "cartan")]
        ty: Option<String>,
        #[arg(long)]
        affine: bool,
        #[arg(long)]
        height: Option<i64>,
        /// JSON file {"name", "gcm", "tau", "kind"} with a generalized Cartan matrix.
        #[arg(long, conflicts_with_all = ["ty", "affine"])]
        cartan: Option<PathBuf>,
    },
    /// Admissibility predicates of a weight.
    Classify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        affine: bool,
        /// Comma-separated finite Dynkin labels.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        labels: String,
        #[arg(long, allow_hyphen_values = true)]
        level: Option<String>,
        /// Add a transcendental ξ to the level.
        #[arg(long)]
        irrational: bool,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long)]
        height: Option<i64>,
    },
    /// Shapovalov determinant at one depth, compared with its product formula.
    KacDet {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Depth: N, N/2 for ns, or a,b for aff-sl2 (aα + bδ).
        #[arg(long)]
        level: String,
        /// Same as --format json.
        #[arg(long)]
        json: bool,
    },
    /// Jantzen layer dimensions and the sum formula along λ + tμ + t²μ′.
    Jantzen {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "k")]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Direction as name:value pairs, e.g. h:1,c:0.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu2: Option<String>,
        #[arg(long)]
        up_to: Option<String>,
    },
    /// Virasoro algebra.
    Vir {
        #[command(subcommand)]
        command: VirCommand,
    },
    /// Neveu–Schwarz algebra.
    Ns {
        #[command(subcommand)]
        command: NsCommand,
    },
    /// Affine algebras at a fixed level.
    Affine {
        #[command(subcommand)]
        command: AffineCommand,
    },
    /// Reduction to the minimal W-algebra.
    Wred {
        #[command(subcommand)]
        command: WredCommand,
    },
    /// Run the acceptance checks.
    Verify {
        /// `all` or comma-separated check ids.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum VirCommand {
    /// Classify the grid h_{r,s} at k + 2 = p/q.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Dimension of the self-extensions of L(h, c(k)).
    Selfext {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "kac")]
        h: Option<String>,
        /// Symbolic h_{m,n}, as m,n.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "h")]
        kac: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "irrational")]
        k: Option<String>,
        #[arg(long, conflicts_with = "k")]
        irrational: bool,
    },
}

#[derive(Subcommand, Debug)]
enum NsCommand {
    /// Classify the grid h_{r,s} at k + 3/2 = p/q.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
}

#[derive(Subcommand, Debug)]
enum AffineCommand {
    /// Status of the vacuum module kΛ₀ at k + h∨ = p/q.
    Vacuum {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "irrational")]
        p: Option<i64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "irrational")]
        q: Option<i64>,
        #[arg(long, conflicts_with_all = ["p", "q"])]
        irrational: bool,
    },
    /// Admissible weights of affine sl2 at k + 2 = p/q.
    Sl2 {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Cross-check every weight against the general predicates.
        #[arg(long)]
        validate: bool,
    },
}

#[derive(Subcommand, Debug)]
enum WredCommand {
    /// Image of one affine weight at k + h∨ = p/q.
    Reduce {
        #[arg(long = "type", default_value = "A1")]
        ty: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// λ_{r,s} of affine sl2; needs --s.
        #[arg(long, requires = "s", conflicts_with = "labels")]
        r: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "r")]
        s: Option<i64>,
        /// Finite Dynkin labels of λ.
        #[arg(long, allow_hyphen_values = true)]
        labels: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
    },
    /// Reduce every λ_{r,s} and compare with the Virasoro classification.
    Recovery {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Exit with status 3 unless every row agrees.
        #[arg(long)]
        check: bool,
    },
}

/// Parses `argv` (program name first), runs the command and prints its report.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let cfg = match Config::load() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("admkit: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let (report, format) = match execute(&cli, args.into_iter().skip(1).collect(), cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("admkit: {e}");
            return exit_code(&e);
        }
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(report.render(format).as_bytes()).and_then(|_| out.flush()).is_err() {
        return EXIT_OK;
    }
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("admkit: check {} failed", c.id);
    }
    report_status(&report)
}

pub fn report_status(report: &Report) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_USAGE,
        Error::Domain(_) | Error::Cutoff { .. } | Error::Unsupported(_) | Error::Degenerate(_) => EXIT_DOMAIN,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payloads serialize")
}

fn rats(xs: &[Rational]) -> Vec<Rat> {
    xs.iter().map(Rat::from).collect()
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Input(format!("expected an integer, got {s:?}")))
}

fn parse_pair(s: &str) -> Result<(i64, i64)> {
    match s.split_once(',') {
        Some((a, b)) => Ok((parse_int(a)?, parse_int(b)?)),
        None => Err(Error::Input(format!("expected a pair m,n, got {s:?}"))),
    }
}

/// A Neveu–Schwarz depth `N/2`, doubled.
fn parse_half(s: &str) -> Result<i64> {
    let x = parse_rational(s)? * int(2);
    if !x.is_integer() {
        return Err(Error::Input(format!("{s} is not a multiple of 1/2")));
    }
    admkit_core::exactmath::rational::to_i64(&x).ok_or_else(|| Error::Input(format!("{s} is too large")))
}

fn parse_grade(algebra: Algebra, s: &str) -> Result<Grade> {
    match algebra {
        Algebra::Vir => Ok((parse_int(s)?, 0)),
        Algebra::Ns => Ok((parse_half(s)?, 0)),
        Algebra::AffSl2 => parse_pair(s),
    }
}

/// A bound for `depths_up_to`: `N`, `N/2` doubled, or `a + b`.
fn parse_bound(algebra: Algebra, s: &str) -> Result<i64> {
    let b = match algebra {
        Algebra::Ns => parse_half(s)?,
        _ => parse_int(s)?,
    };
    if b < 0 {
        return Err(Error::Input(format!("bound must be nonnegative, got {s}")));
    }
    Ok(b)
}

fn ext_labels(s: &str) -> Result<Vec<ExtRational>> {
    Ok(parse_rationals(s)?.into_iter().map(ExtRational::rational).collect())
}

fn execute(cli: &Cli, argv: Vec<String>, cfg: Config) -> Result<(Report, Format)> {
    let mut default = Format::Json;
    let mut forced = None;
    let mut checks = Vec::new();
    let results = match &cli.command {
        Command::Partitions { algebra, up_to } => {
            default = Format::Csv;
            partitions_cmd(*algebra, up_to.as_deref(), &cfg)?
        }
        Command::Roots { ty, affine, height, cartan } => roots_cmd(ty.as_deref(), *affine, height.unwrap_or(cfg.height), cartan.as_ref())?,
        Command::Classify { ty, affine, labels, level, irrational, delta, height } => {
            let data = if *affine { CartanData::affine(SimpleType::parse(ty)?) } else { CartanData::finite(SimpleType::parse(ty)?) };
            let labels = ext_labels(labels)?;
            let w = if *affine {
                let level = level.as_deref().ok_or_else(|| Error::Input("--level is required with --affine".into()))?;
                let mut level = ExtRational::rational(parse_rational(level)?);
                if *irrational {
                    level = ExtRational::new(level.r, int(1));
                }
                let d = delta.as_deref().map(parse_rational).transpose()?.unwrap_or_default();
                data.affine_weight(&labels, level, ExtRational::rational(d))?
            } else {
                if level.is_some() || *irrational || delta.is_some() {
                    return Err(Error::Input("--level, --irrational and --delta need --affine".into()));
                }
                let l: Vec<Rational> = labels.into_iter().map(|x| x.r).collect();
                data.weight_from_labels(&l)?
            };
            to_value(&classify_cmd(&data, &w, height.unwrap_or(cfg.height))?)
        }
        Command::KacDet { algebra, level, json } => {
            if *json {
                forced = Some(Format::Json);
            }
            let (out, matches) = kac_det_cmd(*algebra, parse_grade(*algebra, level)?)?;
            checks.push(Check { id: "closed-form".into(), passed: matches });
            to_value(&out)
        }
        Command::Jantzen { algebra, h, c, k, mu, mu2, up_to } => {
            let (v, holds) = jantzen_cmd(*algebra, h, c.as_deref(), k.as_deref(), mu.as_deref(), mu2.as_deref(), up_to.as_deref(), &cfg)?;
            checks.push(Check { id: "sum-formula".into(), passed: holds });
            v
        }
        Command::Vir { command: VirCommand::Classify { p, q } } => {
            let rows: Vec<VirGridRowOut> = vir::classify_grid(*p, *q)?
                .into_iter()
                .map(|g| VirGridRowOut {
                    r: g.r,
                    s: g.s,
                    h: Rat::from(&g.h),
                    weakly_admissible: g.weakly_admissible,
                    c_admissible: g.c_admissible,
                    minimal_model: g.minimal_model,
                })
                .collect();
            to_value(&rows)
        }
        Command::Vir { command: VirCommand::Selfext { h, kac, k, irrational } } => {
            let height = match (h, kac) {
                (Some(h), _) => Height::Value(parse_rational(h)?),
                (None, Some(mn)) => {
                    let (m, n) = parse_pair(mn)?;
                    Height::Kac(m, n)
                }
                (None, None) => return Err(Error::Input("need --h or --kac".into())),
            };
            let level = match (k, irrational) {
                (Some(k), false) => VirLevel::rational(parse_rational(k)?)?,
                _ => VirLevel::Irrational,
            };
            let s = vir::selfext_dim_vir(&height, &level)?;
            let case = s.case.map(|c| {
                match c {
                    SelfExtCase::Irreducible => "irreducible",
                    SelfExtCase::Integral => "integral",
                    SelfExtCase::Boundary => "boundary",
                }
                .to_string()
            });
            to_value(&SelfExtOut { dim: s.dim, case, note: s.note.map(String::from) })
        }
        Command::Ns { command: NsCommand::Classify { p, q } } => {
            let rows: Vec<NsGridRowOut> = ns::ns_classify_grid(*p, *q)?
                .into_iter()
                .map(|g| NsGridRowOut {
                    r: g.r,
                    s: g.s,
                    h: Rat::from(&g.h),
                    weakly_admissible: g.weakly_admissible,
                    c_admissible: match g.c_admissible {
                        NsVerdict::Admissible => Some(true),
                        NsVerdict::NotAdmissible => Some(false),
                        NsVerdict::UnknownPerPaper => None,
                    },
                    status: g.c_admissible.as_str().into(),
                    minimal_model: g.minimal_model,
                })
                .collect();
            to_value(&rows)
        }
        Command::Affine { command: AffineCommand::Vacuum { ty, p, q, irrational } } => {
            let ty = SimpleType::parse(ty)?;
            let level = match (p, q, irrational) {
                (_, _, true) => LevelPQ::Irrational,
                (Some(p), Some(q), false) => LevelPQ::new(*p, *q)?,
                _ => return Err(Error::Input("need --p and --q, or --irrational".into())),
            };
            let v = vacuum_status(ty, &level)?;
            let (p, q) = match level {
                LevelPQ::Rational { p, q } => (Some(p), Some(q)),
                LevelPQ::Irrational => (None, None),
            };
            to_value(&VacuumOut {
                ty: ty.name(),
                p,
                q,
                class: v.class.as_str().into(),
                weakly_admissible: v.weakly_admissible,
                k_admissible: v.k_admissible,
                kw_admissible: v.kw_admissible,
                admissible: admissible_str(v.admissible).into(),
                admissible_conjectural: v.admissible_conjectural,
                gcd_q_l: v.gcd_q_l,
                adm_category_empty: adm_category_emptiness(&level).0,
            })
        }
        Command::Affine { command: AffineCommand::Sl2 { p, q, validate } } => {
            let out = sl2_cmd(*p, *q, *validate, cfg.height)?;
            if let Some(v) = &out.validation {
                checks.push(Check { id: "cross-validation".into(), passed: v.mismatches.is_empty() });
            }
            to_value(&out)
        }
        Command::Wred { command: WredCommand::Reduce { ty, p, q, r, s, labels, delta } } => {
            to_value(&wred_reduce_cmd(ty, *p, *q, r.zip(*s), labels.as_deref(), delta.as_deref(), cfg.height)?)
        }
        Command::Wred { command: WredCommand::Recovery { p, q, check } } => {
            let rep = vir_recovery_check(*p, *q, cfg.height)?;
            if *check {
                checks.push(Check { id: "recovery".into(), passed: rep.passed() });
            }
            to_value(&RecoveryOut {
                p: rep.p,
                q: rep.q,
                central_charge: Rat::from(&rep.central_charge),
                c_matches: rep.c_matches,
                undetermined_at_corners_only: rep.undetermined_at_corners_only,
                passed: rep.passed(),
                rows: rep
                    .rows
                    .iter()
                    .map(|r| RecoveryRowOut {
                        r: r.r,
                        s: r.s,
                        l0: Rat::from(&r.l0),
                        h_pq: Rat::from(&r.h_pq),
                        verdict: r.verdict.as_str().into(),
                        vir_admissible: r.vir_admissible,
                        h_matches: r.h_matches(),
                        verdict_agrees: r.verdict_agrees(),
                    })
                    .collect(),
            })
        }
        Command::Verify { suite } => {
            default = Format::Table;
            let ids = parse_suite(suite)?;
            let results = checks::run(&ids, &cfg);
            for r in &results {
                eprintln!("check {:>2} {:.2}s", r.id, r.elapsed.as_secs_f64());
                checks.push(Check { id: r.id.to_string(), passed: r.passed });
            }
            let rows: Vec<VerifyRow> = results
                .into_iter()
                .map(|r| VerifyRow { id: r.id, name: r.name.into(), claim: r.claim.into(), passed: r.passed, detail: r.detail })
                .collect();
            to_value(&rows)
        }
    };
    let format = forced.or(cli.format).or(cfg.format).unwrap_or(default);
    Ok((Report { command: argv, config: cfg, results, checks }, format))
}

fn parse_suite(s: &str) -> Result<Vec<u8>> {
    if s.trim() == "all" {
        return Ok(checks::ALL.to_vec());
    }
    let mut ids = Vec::new();
    for part in s.split(',') {
        let id: u8 = part.trim().parse().map_err(|_| Error::Input(format!("unknown check {part:?}")))?;
        if !checks::ALL.contains(&id) {
            return Err(Error::Input(format!("unknown check {id}; ids run from 1 to {}", checks::ALL.len())));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn partitions_cmd(algebra: Algebra, up_to: Option<&str>, cfg: &Config) -> Result<Value> {
    let n = match up_to {
        Some(s) => parse_bound(algebra, s)?,
        None if algebra == Algebra::Ns => 2 * i64::from(cfg.partition_cutoff),
        None => i64::from(cfg.partition_cutoff),
    };
    let rows: Vec<PartitionRow> = match algebra {
        Algebra::Vir => partitions::vir_table(n as u32)?
            .table
            .iter()
            .map(|(d, dim)| PartitionRow { depth: Depth::Integer(i64::from(*d)), dim: *dim })
            .collect(),
        Algebra::Ns => partitions::ns_table(n as u32)?
            .table
            .iter()
            .map(|(d, dim)| PartitionRow { depth: Depth::Half { x2: i64::from(*d) }, dim: *dim })
            .collect(),
        Algebra::AffSl2 => partitions::affine_sl2_table(n)?
            .table
            .iter()
            .map(|((a, b), dim)| PartitionRow { depth: Depth::Affine { alpha: *a, delta: *b }, dim: *dim })
            .collect(),
    };
    Ok(to_value(&rows))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CartanFile {
    name: String,
    gcm: Vec<Vec<i64>>,
    #[serde(default)]
    tau: Vec<usize>,
    kind: String,
}

fn roots_cmd(ty: Option<&str>, affine: bool, h: i64, cartan: Option<&PathBuf>) -> Result<Value> {
    let data = match (cartan, ty) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            let f: CartanFile = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            CartanData::from_gcm(&f.name, f.gcm, f.tau, Kind::parse(&f.kind)?)?
        }
        (None, Some(t)) if affine => CartanData::affine(SimpleType::parse(t)?),
        (None, Some(t)) => CartanData::finite(SimpleType::parse(t)?),
        (None, None) => return Err(Error::Input("need --type or --cartan".into())),
    };
    let rows: Vec<RootRow> = data
        .positive_roots(h)?
        .into_iter()
        .map(|r| RootRow { height: r.height(), real: r.is_real, multiplicity: r.multiplicity, vector: r.vector })
        .collect();
    Ok(to_value(&rows))
}

/// `None` when the quantity is not available for this kind of data.
fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn classify_cmd(data: &CartanData, w: &Weight, h: i64) -> Result<ClassifyOut> {
    let rep = classify(data, w, h)?;
    let sub = integral_subsystem(data, w, h)?;
    let ub = optional(upsilon_bounds(data, w, h))?;
    // the self-extension formula needs all three
    let defined = rep.non_critical.holds && rep.shifted_regular.holds && rep.weakly_admissible.holds;
    Ok(ClassifyOut {
        weight: w.coords.iter().map(Ext::from).collect(),
        non_critical: VerdictOut::from(&rep.non_critical),
        dominant: VerdictOut::from(&rep.dominant),
        shifted_regular: VerdictOut::from(&rep.shifted_regular),
        rational: VerdictOut::from(&rep.rational),
        weakly_admissible: VerdictOut::from(&rep.weakly_admissible),
        kw_admissible: VerdictOut::from(&rep.kw_admissible),
        admissible: admissible_str(rep.admissible).into(),
        simple_system: sub.simple_system.iter().map(|(r, m)| SimpleRootOut { root: r.vector.clone(), pairing: *m }).collect(),
        selfext_dim: if defined { optional(selfext_dim(data, w, h))? } else { None },
        upsilon_bounds: ub.map(|(lo, hi)| [lo, hi]),
        cutoff: rep.cutoff,
    })
}

fn kac_det_cmd(algebra: Algebra, nu: Grade) -> Result<(KacDetOut, bool)> {
    let e = algebra.engine();
    if !e.in_cone(nu) || nu == (0, 0) {
        return Err(Error::Input(format!("{nu:?} is not a positive depth of {}", e.name())));
    }
    let m = shapovalov_matrix(&e, nu)?;
    let det = det_of(&e, &m)?;
    let ratio = match algebra {
        Algebra::AffSl2 => compare_affine(nu, &det)?,
        _ => compare_kac(&e, nu, &det)?,
    };
    let matches = ratio.is_some();
    let out = KacDetOut {
        algebra: e.name().into(),
        depth: Depth::of(e.id, nu),
        size: m.row_basis.len(),
        determinant: PolyOut::from(&det),
        closed_form_ratio: ratio.as_ref().map(Rat::from),
    };
    Ok((out, matches))
}

/// `name:value` pairs over the engine variables; absent names are zero.
fn parse_direction(vars: &[&str], s: &str) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::default(); vars.len()];
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, value) =
            part.split_once(':').ok_or_else(|| Error::Input(format!("expected name:value, got {part:?}")))?;
        let i = vars
            .iter()
            .position(|v| *v == name.trim())
            .ok_or_else(|| Error::Input(format!("unknown variable {name:?}; expected one of {vars:?}")))?;
        out[i] = parse_rational(value)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn jantzen_cmd(
    algebra: Algebra,
    h: &str,
    c: Option<&str>,
    k: Option<&str>,
    mu: Option<&str>,
    mu2: Option<&str>,
    up_to: Option<&str>,
    cfg: &Config,
) -> Result<(Value, bool)> {
    let e = algebra.engine();
    let h = parse_rational(h)?;
    let second = match (algebra, c, k) {
        (Algebra::AffSl2, None, Some(k)) => parse_rational(k)?,
        (Algebra::AffSl2, _, _) => return Err(Error::Input("aff-sl2 needs --k and no --c".into())),
        (_, Some(c), None) => parse_rational(c)?,
        (Algebra::Vir, None, Some(k)) => vir::c_of_k(&parse_rational(k)?)?,
        (Algebra::Ns, None, Some(k)) => ns::ns_c_of_k(&parse_rational(k)?)?,
        _ => return Err(Error::Input("need exactly one of --c and --k".into())),
    };
    let lambda = vec![h, second];
    let vars = e.vars();
    let mu = parse_direction(vars, mu.unwrap_or("h:1"))?;
    let mu2 = parse_direction(vars, mu2.unwrap_or(""))?;
    if mu.iter().all(|x| *x == int(0)) {
        return Err(Error::Input("the direction μ must be nonzero".into()));
    }
    let bound = match (up_to, algebra) {
        (Some(s), _) => parse_bound(algebra, s)?,
        (None, Algebra::Vir) => cfg.vir_depth,
        (None, Algebra::Ns) => cfg.ns_depth_x2,
        (None, Algebra::AffSl2) => cfg.aff_depth,
    };
    let mut rows = Vec::new();
    for nu in depths_up_to(&e, bound) {
        let m = shapovalov_matrix(&e, nu)?;
        // the product formula has the same valuation as the engine determinant and is much cheaper
        let det = match algebra {
            Algebra::AffSl2 => affine_product(nu)?.0,
            _ => det_of(&e, &m)?,
        };
        let r = sum_formula_check_with(&m, &det, &lambda, &mu, &mu2)?;
        rows.push(JantzenRow {
            depth: Depth::of(e.id, nu),
            layer_sum: r.layer_sum,
            det_valuation: r.det_valuation,
            holds: r.holds,
            layers: r.layers,
        });
    }
    let holds = rows.iter().all(|r| r.holds);
    let v = json!({
        "algebra": e.name(),
        "vars": vars,
        "lambda": rats(&lambda),
        "mu": rats(&mu),
        "mu2": rats(&mu2),
        "rows": to_value(&rows),
    });
    Ok((v, holds))
}

fn sl2_cmd(p: i64, q: i64, validate: bool, h: i64) -> Result<Sl2Out> {
    let gammas = sl2_bk(p, q)?
        .into_iter()
        .map(|g| GammaOut { r: g.r, coroots: g.coroots.iter().map(|c| c.label()).collect() })
        .collect();
    let rows = sl2_xk(p, q)?
        .into_iter()
        .map(|w| {
            let (a, b) = w.pairings();
            Sl2WeightOut {
                r: w.r,
                s: w.s,
                finite_coord: Rat::from(&w.finite_coord),
                pairings: [Rat::from(&a), Rat::from(&b)],
                k_admissible: true,
                kw_admissible: w.is_kw(),
            }
        })
        .collect();
    let validation = if validate {
        let cv = cross_validate_sl2(p, q, h)?;
        Some(ValidationOut { checked: cv.checked, mismatches: cv.mismatches })
    } else {
        None
    };
    Ok(Sl2Out { p, q, level: Rat::from(Rational::new(p.into(), q.into()) - int(2)), gammas, rows, validation })
}

#[allow(clippy::too_many_arguments)]
fn wred_reduce_cmd(
    ty: &str,
    p: i64,
    q: i64,
    rs: Option<(i64, i64)>,
    labels: Option<&str>,
    delta: Option<&str>,
    h: i64,
) -> Result<WReduceOut> {
    let ty = SimpleType::parse(ty)?;
    let level = LevelPQ::new(p, q)?;
    let k = level.k(ty).expect("rational level");
    let w = MinimalWData::new(ty)?;
    let lambda = match (rs, labels) {
        (Some((r, s)), _) => {
            if ty != SimpleType::A(1) {
                return Err(Error::Input("--r/--s name weights of affine sl2; use --labels for other types".into()));
            }
            if delta.is_some() {
                return Err(Error::Input("--delta is fixed to 0 for λ_{r,s}".into()));
            }
            sl2_weight(r, s, p, q)?.weight
        }
        (None, labels) => {
            let labels = ext_labels(labels.unwrap_or(""))?;
            let labels = if labels.is_empty() { vec![ExtRational::zero(); ty.rank()] } else { labels };
            let d = delta.map(parse_rational).transpose()?.unwrap_or_default();
            w.data.affine_weight(&labels, ExtRational::rational(k.clone()), ExtRational::rational(d))?
        }
    };
    let red = reduce_weight(&w, &lambda)?;
    let tr = wadm_transfer(&w, &lambda, h)?;
    Ok(WReduceOut {
        ty: ty.name(),
        level: Rat::from(&k),
        hf: rats(&red.hf),
        l0: Rat::from(&red.l0),
        central_charge: Rat::from(&central_charge(ty, &k)?),
        kernel_dim: phi_kernel_dim(&w, &lambda)?,
        verdict: tr.verdict.as_str().into(),
        rule: tr.rule.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("admkit").chain(s.split_whitespace()).map(String::from).collect()
    }

    #[test]
    fn argument_errors_are_usage_errors() {
        assert_eq!(run(argv("frobnicate")), EXIT_USAGE);
        assert_eq!(run(argv("vir classify --p 4")), EXIT_USAGE);
        assert_eq!(run(argv("verify --suite 11")), EXIT_USAGE);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(run(argv("affine vacuum --type A2 --p 0 --q 1")), EXIT_DOMAIN);
        assert_eq!(run(argv("vir selfext --h 0 --k -2")), EXIT_DOMAIN);
    }

    #[test]
    fn failed_checks_exit_3() {
        let mut r = Report { command: vec![], config: Config::default(), results: Value::Null, checks: vec![] };
        assert_eq!(report_status(&r), EXIT_OK);
        r.checks.push(Check { id: "a".into(), passed: true });
        r.checks.push(Check { id: "b".into(), passed: false });
        assert_eq!(report_status(&r), EXIT_CHECK_FAILED);
    }

    #[test]
    fn grades() {
        assert_eq!(parse_grade(Algebra::Ns, "7/2").unwrap(), (7, 0));
        assert!(parse_grade(Algebra::Ns, "1/3").is_err());
        assert_eq!(parse_grade(Algebra::AffSl2, "-1,2").unwrap(), (-1, 2));
        assert_eq!(parse_suite("3,1,3").unwrap(), vec![1, 3]);
    }

    #[test]
    fn directions() {
        let d = parse_direction(&["h", "c"], "c:1/2").unwrap();
        assert_eq!(d, vec![int(0), Rational::new(1.into(), 2.into())]);
        assert!(parse_direction(&["h", "c"], "k:1").is_err());
    }
}
