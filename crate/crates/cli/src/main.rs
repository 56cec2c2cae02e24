//! Command line front end: bundle files in, reports and bundles out.
//!
//! Exit codes: 0 every check passed, 1 a check failed (report printed with
//! witnesses), 2 malformed input or usage error.

use liegeo_cli::{bundle, reportdoc};

use bundle::BundleDocument;
use clap::{Parser, Subcommand, ValueEnum};
use liegeo::affine::{check_lsa, check_projective, check_radiant, etale_rep};
use liegeo::algebra::LieAlgebra;
use liegeo::catalog::{self, Bundle};
use liegeo::complexstruct::{check_complex_structure, rmap_complex_structure};
use liegeo::contact::{
    check_lck, check_lcs, check_semicontact, check_semisasakian, lcs_of_semicontact, split_lcs,
    LcsData,
};
use liegeo::forms::AltForm;
use liegeo::hessian::{
    check_hessian_cone, check_hessian_metric, kahler_from_hessian,
    semisasakian_from_projective_hessian, ProjectiveHessianData,
};
use liegeo::invariants::structure_invariants;
use liegeo::numcone::{
    check_cone_scaling, check_invariance, num_hessian, rel_err, scaling_readings, tube_kahler,
    ConePoint, PotentialKind, PotentialSpec, SplitMix64, DEFAULT_STEP, SCALING_STEP,
};
use liegeo::scalar::Rat;
use liegeo::{CheckReport, LieError};
use reportdoc::{render_invariance, render_invariants, render_scaling, Format, ReportDocument};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "liegeo", version, about = "Exact structure checks for invariant geometry on Lie algebras")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include elapsed time in reports (off keeps output deterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the bracket axioms of a bundle's algebra.
    Validate { file: PathBuf },
    /// Run a named structure check against a bundle.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        file: PathBuf,
    },
    /// Build a derived structure from a bundle and emit it as a bundle.
    Construct {
        #[arg(value_enum)]
        what: ConstructKind,
        file: PathBuf,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Access the built-in example bundles.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Floating-point verification on the positive-definite matrix cone.
    Numcone {
        #[command(subcommand)]
        action: NumconeAction,
    },
    /// Classical algebraic invariants of a bundle's algebra.
    Invariants { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Lsa,
    Radiant,
    Projective,
    Complex,
    Semicontact,
    Lcs,
    Lck,
    Semisasakian,
    Hessian,
    #[value(name = "hessian-cone")]
    HessianCone,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Etale,
    Rmap,
    #[value(name = "lcs-of-semicontact")]
    LcsOfSemicontact,
    #[value(name = "split-lcs")]
    SplitLcs,
    Kahler,
    #[value(name = "semisasakian-pipeline")]
    SemisasakianPipeline,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the available example names.
    List,
    /// Summarize one example.
    Show { name: String },
    /// Write one example in the bundle format.
    Export {
        name: String,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NumconeAction {
    /// Congruence invariance of the log-char Hessian.
    Invariance {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Dump sampled points, metrics and errors as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Conical scaling of the degree-2 cone power, plus the three-readings
    /// report for the dilation behaviour of each candidate potential.
    Scaling {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Scale factor; when omitted the sweep {0.5, 2, 10} runs.
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Tube-domain complex Hessian against the real Hessian.
    Tube {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    let timing = cli.timing;
    match cli.command {
        Command::Validate { file } => {
            let bundle = load_bundle(&file)?;
            let started = Instant::now();
            let report = bundle.algebra.validate();
            emit_report("validate", &report, format, timing, started)
        }
        Command::Check { kind, file } => {
            let bundle = load_bundle(&file)?;
            let started = Instant::now();
            let (op, outcome) = run_check(kind, &bundle);
            match outcome {
                Ok(report) => emit_report(op, &report, format, timing, started),
                Err(LieError::Rejected { op: pre, report }) => {
                    let doc = ReportDocument::new(&format!("{} (precondition {})", op, pre), &report, None);
                    print!("{}", doc.render(format));
                    Ok(ExitCode::from(1))
                }
                Err(other) => Err(other.to_string()),
            }
        }
        Command::Construct { what, file, output } => {
            let bundle = load_bundle(&file)?;
            match run_construct(what, &bundle) {
                Ok(doc) => {
                    write_output(&doc.to_json_string(), output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(LieError::Rejected { op, report }) => {
                    let doc = ReportDocument::new(&format!("construct rejected by {}", op), &report, None);
                    print!("{}", doc.render(format));
                    Ok(ExitCode::from(1))
                }
                Err(other) => Err(other.to_string()),
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::names() {
                    println!("{}", name);
                }
                Ok(ExitCode::SUCCESS)
            }
            CatalogAction::Show { name } => {
                let bundle = catalog::load_example(&name).map_err(|e| e.to_string())?;
                print!("{}", describe_bundle(&bundle));
                Ok(ExitCode::SUCCESS)
            }
            CatalogAction::Export { name, output } => {
                let bundle = catalog::load_example(&name).map_err(|e| e.to_string())?;
                let doc = BundleDocument::from_catalog(&bundle);
                write_output(&doc.to_json_string(), output.as_deref())?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Numcone { action } => run_numcone(action, format),
        Command::Invariants { file } => {
            let bundle = load_bundle(&file)?;
            match structure_invariants(&bundle.algebra) {
                Ok(inv) => {
                    print!("{}", render_invariants(&inv, format));
                    Ok(ExitCode::SUCCESS)
                }
                Err(LieError::Rejected { report, .. }) => {
                    let doc = ReportDocument::new("validate", &report, None);
                    print!("{}", doc.render(format));
                    Ok(ExitCode::from(1))
                }
                Err(other) => Err(other.to_string()),
            }
        }
    }
}

fn load_bundle(path: &Path) -> Result<Bundle, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    let doc = BundleDocument::parse(&text)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("bundle");
    doc.to_catalog(stem)
}

fn emit_report(
    op: &str,
    report: &CheckReport,
    format: Format,
    timing: bool,
    started: Instant,
) -> Result<ExitCode, String> {
    let elapsed = timing.then(|| started.elapsed().as_millis());
    let doc = ReportDocument::new(op, report, elapsed);
    print!("{}", doc.render(format));
    Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn need_connection(bundle: &Bundle) -> Result<&liegeo::affine::Connection<Rat>, LieError> {
    bundle.connection.as_ref().ok_or(LieError::Structure {
        what: format!("bundle {} carries no connection", bundle.name),
    })
}

fn need_form<'a>(bundle: &'a Bundle, name: &str) -> Result<&'a AltForm<Rat>, LieError> {
    bundle.forms.get(name).ok_or(LieError::Structure {
        what: format!("bundle {} carries no form '{}'", bundle.name, name),
    })
}

fn need_linmap<'a>(bundle: &'a Bundle, name: &str) -> Result<&'a liegeo::matrix::Matrix<Rat>, LieError> {
    bundle.linmaps.get(name).ok_or(LieError::Structure {
        what: format!("bundle {} carries no linear map '{}'", bundle.name, name),
    })
}

fn cone_data(bundle: &Bundle) -> Result<ProjectiveHessianData<Rat>, LieError> {
    let conn = need_connection(bundle)?.clone();
    let g = bundle.metrics.get("g_G").ok_or(LieError::Structure {
        what: format!("bundle {} carries no metric 'g_G'", bundle.name),
    })?;
    ProjectiveHessianData::from_hat(bundle.algebra.clone(), conn, g.clone())
}

fn run_check(kind: CheckKind, bundle: &Bundle) -> (&'static str, Result<CheckReport, LieError>) {
    match kind {
        CheckKind::Lsa => ("check lsa", (|| check_lsa(&bundle.algebra, need_connection(bundle)?))()),
        CheckKind::Radiant => (
            "check radiant",
            (|| {
                let xi = bundle.vectors.get("xi").ok_or(LieError::Structure {
                    what: format!("bundle {} carries no vector 'xi'", bundle.name),
                })?;
                check_radiant(&bundle.algebra, need_connection(bundle)?, xi)
            })(),
        ),
        CheckKind::Projective => (
            "check projective",
            (|| {
                let n1 = bundle.algebra.dim();
                let g = bundle.algebra.restrict(&(0..n1 - 1).collect::<Vec<_>>())?;
                check_projective(&g, &bundle.algebra, need_connection(bundle)?)
            })(),
        ),
        CheckKind::Complex => (
            "check complex",
            (|| check_complex_structure(&bundle.algebra, need_linmap(bundle, "J")?))(),
        ),
        CheckKind::Semicontact => (
            "check semicontact",
            (|| check_semicontact(&catalog::semicontact_of(bundle)?))(),
        ),
        CheckKind::Lcs => (
            "check lcs",
            (|| {
                let data = LcsData::new(
                    bundle.algebra.clone(),
                    need_form(bundle, "Omega")?.clone(),
                    need_form(bundle, "theta")?.clone(),
                )?;
                check_lcs(&data)
            })(),
        ),
        CheckKind::Lck => (
            "check lck",
            (|| {
                let data = LcsData::new(
                    bundle.algebra.clone(),
                    need_form(bundle, "Omega")?.clone(),
                    need_form(bundle, "theta")?.clone(),
                )?;
                check_lck(&data, need_linmap(bundle, "J")?)
            })(),
        ),
        CheckKind::Semisasakian => (
            "check semisasakian",
            (|| {
                let j = bundle.extension_linmaps.get("J").ok_or(LieError::Structure {
                    what: format!("bundle {} carries no extension linear map 'J'", bundle.name),
                })?;
                check_semisasakian(&catalog::semicontact_of(bundle)?, j)
            })(),
        ),
        CheckKind::Hessian => (
            "check hessian",
            (|| {
                let g = bundle.metrics.get("g").ok_or(LieError::Structure {
                    what: format!("bundle {} carries no metric 'g'", bundle.name),
                })?;
                check_hessian_metric(&bundle.algebra, need_connection(bundle)?, g)
            })(),
        ),
        CheckKind::HessianCone => (
            "check hessian-cone",
            (|| check_hessian_cone(&cone_data(bundle)?))(),
        ),
    }
}

fn run_construct(what: ConstructKind, bundle: &Bundle) -> Result<BundleDocument, LieError> {
    match what {
        ConstructKind::Etale => {
            let rep = etale_rep(&bundle.algebra, need_connection(bundle)?)?;
            let mut out = empty_bundle(format!("{}_etale", bundle.name), bundle.algebra.clone());
            out.connection = bundle.connection.clone();
            for (i, m) in rep.mats.iter().enumerate() {
                out.extension_linmaps.insert(format!("rep_{}", i + 1), m.clone());
            }
            Ok(BundleDocument::from_catalog(&out))
        }
        ConstructKind::Rmap => {
            let (tangent, j) = rmap_complex_structure(&bundle.algebra, need_connection(bundle)?)?;
            let mut out = empty_bundle(format!("{}_tangent", bundle.name), tangent);
            out.linmaps.insert("J".into(), j.matrix().clone());
            Ok(BundleDocument::from_catalog(&out))
        }
        ConstructKind::LcsOfSemicontact => {
            let data = catalog::semicontact_of(bundle)?;
            let lcs = lcs_of_semicontact(&data)?;
            let mut out = empty_bundle(format!("{}_lcs", bundle.name), lcs.algebra);
            out.forms.insert("Omega".into(), lcs.omega);
            out.forms.insert("theta".into(), lcs.theta);
            Ok(BundleDocument::from_catalog(&out))
        }
        ConstructKind::SplitLcs => {
            let e = bundle.vectors.get("E").ok_or(LieError::Structure {
                what: format!("bundle {} carries no vector 'E'", bundle.name),
            })?;
            let data = LcsData::new(
                bundle.algebra.clone(),
                need_form(bundle, "Omega")?.clone(),
                need_form(bundle, "theta")?.clone(),
            )?;
            let split = split_lcs(&data, e)?;
            let mut out = empty_bundle(format!("{}_split", bundle.name), split.algebra);
            out.linmaps.insert("D".into(), split.derivation);
            out.forms.insert("omega".into(), split.omega);
            out.forms.insert("eta".into(), split.eta);
            Ok(BundleDocument::from_catalog(&out))
        }
        ConstructKind::Kahler => {
            let g = bundle.metrics.get("g").ok_or(LieError::Structure {
                what: format!("bundle {} carries no metric 'g'", bundle.name),
            })?;
            let k = kahler_from_hessian(&bundle.algebra, need_connection(bundle)?, g)?;
            if !k.closed {
                return Err(LieError::Rejected {
                    op: "check_hessian_metric",
                    report: liegeo::hessian::codazzi_report(need_connection(bundle)?, g),
                });
            }
            let mut out = empty_bundle(format!("{}_kahler", bundle.name), k.algebra);
            out.linmaps.insert("J".into(), k.j);
            out.metrics.insert("g_real".into(), k.g_real);
            out.forms.insert("Omega".into(), k.omega);
            let mut doc = BundleDocument::from_catalog(&out);
            doc.meta.insert("weight".into(), serde_json::json!(k.weight));
            Ok(doc)
        }
        ConstructKind::SemisasakianPipeline => {
            let data = cone_data(bundle)?;
            let result = semisasakian_from_projective_hessian(&data)?;
            let mut out = empty_bundle(format!("{}_semisasakian", bundle.name), result.data.algebra);
            out.linmaps.insert("D".into(), result.data.derivation);
            out.forms.insert("omega".into(), result.data.omega);
            out.forms.insert("eta".into(), result.data.eta);
            out.extension_linmaps.insert("J".into(), result.j_ext);
            out.extension_metrics.insert("g_real".into(), result.g_ext);
            Ok(BundleDocument::from_catalog(&out))
        }
    }
}

fn empty_bundle(name: String, algebra: LieAlgebra<Rat>) -> Bundle {
    Bundle {
        name,
        algebra,
        connection: None,
        forms: BTreeMap::new(),
        linmaps: BTreeMap::new(),
        metrics: BTreeMap::new(),
        vectors: BTreeMap::new(),
        extension_linmaps: BTreeMap::new(),
        extension_metrics: BTreeMap::new(),
        expected: BTreeMap::new(),
    }
}

fn describe_bundle(bundle: &Bundle) -> String {
    let mut out = format!("{}: dimension {}\n", bundle.name, bundle.algebra.dim());
    out.push_str(&format!("  basis: {}\n", bundle.algebra.labels().join(", ")));
    let mut brackets = Vec::new();
    for i in 0..bundle.algebra.dim() {
        for j in i + 1..bundle.algebra.dim() {
            let v = bundle.algebra.bracket_basis(i, j);
            if !liegeo::matrix::vec_is_zero(&v) {
                brackets.push(format!(
                    "[{}, {}] = {}",
                    bundle.algebra.labels()[i],
                    bundle.algebra.labels()[j],
                    liegeo::matrix::fmt_vector(&v)
                ));
            }
        }
    }
    if brackets.is_empty() {
        out.push_str("  brackets: abelian\n");
    } else {
        out.push_str(&format!("  brackets: {}\n", brackets.join("; ")));
    }
    out.push_str(&format!("  connection: {}\n", bundle.connection.is_some()));
    let names = |keys: Vec<&String>| keys.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ");
    if !bundle.forms.is_empty() {
        out.push_str(&format!("  forms: {}\n", names(bundle.forms.keys().collect())));
    }
    if !bundle.linmaps.is_empty() {
        out.push_str(&format!("  linmaps: {}\n", names(bundle.linmaps.keys().collect())));
    }
    if !bundle.metrics.is_empty() {
        out.push_str(&format!("  metrics: {}\n", names(bundle.metrics.keys().collect())));
    }
    if !bundle.vectors.is_empty() {
        out.push_str(&format!("  vectors: {}\n", names(bundle.vectors.keys().collect())));
    }
    if !bundle.extension_linmaps.is_empty() {
        out.push_str(&format!("  extension linmaps: {}\n", names(bundle.extension_linmaps.keys().collect())));
    }
    if !bundle.expected.is_empty() {
        let pairs: Vec<String> = bundle
            .expected
            .iter()
            .map(|(k, v)| format!("{} = {}", k, if *v { "pass" } else { "fail" }))
            .collect();
        out.push_str(&format!("  expected: {}\n", pairs.join(", ")));
    }
    out
}

fn write_output(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        None => {
            print!("{}", text);
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {}", path.display(), e)),
    }
}

fn run_numcone(action: NumconeAction, format: Format) -> Result<ExitCode, String> {
    match action {
        NumconeAction::Invariance { n, samples, seed, tol, csv } => {
            let spec = PotentialSpec::new(PotentialKind::LogChar, n);
            let report =
                check_invariance(&spec, samples, seed, DEFAULT_STEP, tol).map_err(|e| e.to_string())?;
            if let Some(path) = csv {
                std::fs::write(&path, reportdoc::csv_rows(&report.rows))
                    .map_err(|e| format!("cannot write {}: {}", path.display(), e))?;
            }
            print!("{}", render_invariance(&report, format));
            Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        NumconeAction::Scaling { n, samples, seed, tol, q, csv } => {
            let spec = PotentialSpec::new(PotentialKind::ConePower, n);
            let sweep: Vec<f64> = match q {
                Some(v) => vec![v],
                None => vec![0.5, 2.0, 10.0],
            };
            let mut reports = Vec::new();
            for qv in sweep {
                reports.push(
                    check_cone_scaling(&spec, qv, samples, seed, SCALING_STEP, tol)
                        .map_err(|e| e.to_string())?,
                );
            }
            let readings =
                scaling_readings(n, 2.0, samples, seed, SCALING_STEP).map_err(|e| e.to_string())?;
            if let Some(path) = csv {
                let rows: Vec<liegeo::numcone::SampleRow> =
                    reports.iter().flat_map(|r| r.rows.clone()).collect();
                std::fs::write(&path, reportdoc::csv_rows(&rows))
                    .map_err(|e| format!("cannot write {}: {}", path.display(), e))?;
            }
            let pass = reports.iter().all(|r| r.pass());
            print!("{}", render_scaling(&reports, &readings, format));
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        NumconeAction::Tube { n, samples, seed, tol } => {
            let spec = PotentialSpec::new(PotentialKind::LogChar, n);
            let mut rng = SplitMix64::new(seed);
            let mut max_err: f64 = 0.0;
            let mut max_imag: f64 = 0.0;
            let mut all_pd = true;
            for _ in 0..samples {
                let y = ConePoint::sample(n, &mut rng);
                let tube = tube_kahler(&spec, &y, DEFAULT_STEP).map_err(|e| e.to_string())?;
                let real = num_hessian(&spec, &y, DEFAULT_STEP).map_err(|e| e.to_string())?;
                max_err = max_err.max(rel_err(&tube.matrix, &real));
                max_imag = max_imag.max(tube.max_imag);
                all_pd &= tube.positive_definite;
            }
            let pass = max_err <= tol && all_pd;
            match format {
                Format::Text => print!(
                    "tube-domain complex Hessian (n = {}, {} samples, seed {}):\n  max deviation from the real Hessian {:.3e} against {:.1e}; imaginary part max {:.1e}; positive definite at all samples: {}: {}\n",
                    n, samples, seed, max_err, tol, max_imag, all_pd, if pass { "pass" } else { "fail" }
                ),
                Format::Json => {
                    let doc = serde_json::json!({
                        "check": "tube_kahler",
                        "n": n,
                        "samples": samples,
                        "seed": seed,
                        "tol": tol,
                        "max_rel_err": max_err,
                        "max_imag": max_imag,
                        "all_positive_definite": all_pd,
                        "verdict": if pass { "pass" } else { "fail" },
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
