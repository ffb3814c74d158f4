use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use solvcurv::builders::{count_constructions, verify_adapted, verify_iwasawa};
use solvcurv::curvature::{curvature_report, fingerprint, parse_plane, sectional, u_form, Fingerprint, ReportOptions, POSITIVE_K};
use solvcurv::format::fmt12;
use solvcurv::io;
use solvcurv::pipeline::{run_pipeline, sweep, sweep_csv, FlagSpec, PipelineSpec};
use solvcurv::{associate, attach, build_symmetric, CharacteristicElement, Error, Family, FlagChoice, MetricSolvLieAlgebra, RootSystem};

#[derive(Parser)]
#[command(name = "solvcurv", version, about = "Build and certify metric solvable Lie algebras of noncompact symmetric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// orthogonal, unitary, symplectic, so_star or sl_quaternion
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

impl FamilyArgs {
    fn resolve(&self) -> solvcurv::Result<Option<Family>> {
        let Some(name) = &self.family else {
            return Ok(None);
        };
        let params: Vec<usize> = match (self.p, self.q, self.n) {
            (Some(p), Some(q), None) => vec![p, q],
            (None, None, Some(n)) => vec![n],
            _ => return Err(Error::Param("give --p and --q, or --n".into())),
        };
        Family::new(name, &params).map(Some)
    }

    fn require(&self) -> solvcurv::Result<Family> {
        self.resolve()?.ok_or_else(|| Error::Param("--family is required".into()))
    }
}

/// Where the input algebra comes from: a family to build, a JSON file, or stdin.
#[derive(Args, Clone, Default)]
struct Source {
    #[command(flatten)]
    family: FamilyArgs,
    /// Algebra JSON file (default: stdin)
    #[arg(long, short)]
    input: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> solvcurv::Result<MetricSolvLieAlgebra> {
        if let Some(f) = self.family.resolve()? {
            return Ok(build_symmetric(f)?.0);
        }
        let text = match &self.input {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                s
            }
        };
        io::algebra_from_json(&text)
    }
}

#[derive(Args, Clone, Copy)]
struct Checks {
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random planes sampled for the curvature report
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build the symmetric algebra, e.g. `build orthogonal 3 5`
    Build {
        /// Family name followed by its parameters
        spec: Vec<String>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Restrict to the grading of a characteristic element
    Attach {
        /// Coefficients over the simple roots, e.g. 1,1,0
        #[arg(long)]
        z: String,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Twist bracket signs by a flag preset or label list
    Associate {
        /// none, canonical or wb:<a>
        #[arg(long, conflicts_with = "flags")]
        preset: Option<String>,
        /// Comma-separated basis labels
        #[arg(long)]
        flags: Option<String>,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Curvature report; exit status 0 iff the metric is Einstein
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        checks: Checks,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sectional curvature of an explicit plane
    Probe {
        /// Two vectors, e.g. "U27+U28,U37+U38"
        #[arg(long)]
        plane: String,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Isometry-invariant summary
    Fingerprint {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Einstein check over every support of Z and every association preset
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated presets (default: none and every association)
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Restricted root system, with levels when --z is given
    Roots {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        z: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// build, associate, attach and verify in one step
    Run {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        z: Option<String>,
        #[arg(long, conflicts_with = "flags")]
        preset: Option<String>,
        #[arg(long)]
        flags: Option<String>,
        #[command(flatten)]
        checks: Checks,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

struct Output {
    text: String,
    ok: bool,
}

fn ok(text: String) -> Output {
    Output { text, ok: true }
}

fn algebra_output(s: &MetricSolvLieAlgebra, format: Format) -> solvcurv::Result<Output> {
    Ok(ok(match format {
        Format::Json => io::algebra_to_json(s)?,
        Format::Csv => s.structure().to_csv(),
        Format::Text => {
            let mut t = String::new();
            if let Some(f) = s.family() {
                t.push_str(&format!("family {f}\n"));
            }
            t.push_str(&format!("dim {} (a {}, n {})\n", s.dim(), s.dim_a(), s.dim_n()));
            let flags = s.current_flags();
            if !flags.is_empty() {
                t.push_str(&format!("flags {}\n", flags.join(" ")));
            }
            for l in s.labels() {
                t.push_str(l);
                t.push('\n');
            }
            t
        }
    }))
}

fn flag_spec(preset: &Option<String>, flags: &Option<String>) -> solvcurv::Result<Option<FlagSpec>> {
    match (preset, flags) {
        (Some(p), _) => Ok(Some(FlagSpec::Preset(FlagChoice::parse(p)?))),
        (None, Some(l)) => Ok(Some(FlagSpec::Labels(l.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()))),
        (None, None) => Ok(None),
    }
}

fn csv_matrix(labels: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = String::from("label");
    for l in labels {
        out.push_str(&format!(",\"{l}\""));
    }
    out.push('\n');
    for (l, r) in labels.iter().zip(rows) {
        out.push_str(&format!("\"{l}\""));
        for v in r {
            out.push_str(&format!(",{}", fmt12(*v)));
        }
        out.push('\n');
    }
    out
}

fn fingerprint_text(f: &Fingerprint) -> String {
    format!(
        "einstein constant {}\ndim a {}, dim n {}\nnilpotency class {}\nderived series {:?}\nad(H0) spectrum {:?}\nsectional range [{}, {}]\n",
        fmt12(f.einstein_constant),
        f.dim_a,
        f.dim_n,
        f.nilpotency_class,
        f.derived_series,
        f.ad_h0_spectrum,
        fmt12(f.min_sectional),
        fmt12(f.max_sectional)
    )
}

#[derive(Serialize)]
struct ProbeResult {
    plane: String,
    k: f64,
    positive: bool,
    /// `|U(X,Y)|` for the orthonormalized pair
    u_norm: f64,
}

#[derive(Serialize)]
struct VerifyExtras<'a> {
    family: Option<String>,
    dim: usize,
    adapted: bool,
    iwasawa: bool,
    #[serde(flatten)]
    report: &'a solvcurv::curvature::CurvatureReport,
}

fn run(cli: Cli) -> solvcurv::Result<Output> {
    match cli.command {
        Command::Build { spec, family, format } => {
            let f = if spec.is_empty() {
                family.require()?
            } else {
                let params = spec[1..].iter().map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad parameter `{p}`")))).collect::<solvcurv::Result<Vec<_>>>()?;
                Family::new(&spec[0], &params)?
            };
            algebra_output(&build_symmetric(f)?.0, format)
        }
        Command::Attach { z, source, format } => {
            let s = source.load()?;
            algebra_output(&attach(&s, &CharacteristicElement::parse(&z)?)?, format)
        }
        Command::Associate { preset, flags, source, format } => {
            let s = source.load()?;
            let spec = flag_spec(&preset, &flags)?.ok_or_else(|| Error::Param("give --preset or --flags".into()))?;
            let assignment = spec.resolve(&s)?;
            algebra_output(&associate(&s, &assignment)?, format)
        }
        Command::Verify { source, checks, format } => {
            let s = source.load()?;
            let report = curvature_report(&s, ReportOptions { tol: checks.tol, seed: checks.seed, samples: checks.samples })?;
            let pass = report.pass;
            let text = match format {
                Format::Json => {
                    let extras = VerifyExtras {
                        family: s.family().map(|f| f.to_string()),
                        dim: s.dim(),
                        adapted: verify_adapted(&s).passed(),
                        iwasawa: verify_iwasawa(&s).passed(),
                        report: &report,
                    };
                    io::to_json("curvature_report", &extras)?
                }
                Format::Csv => csv_matrix(s.labels(), &report.ricci),
                Format::Text => {
                    let mut t = format!(
                        "einstein {}\nconstant {}\ndeviation {}\n",
                        if pass { "pass" } else { "fail" },
                        fmt12(report.einstein_constant),
                        fmt12(report.deviation)
                    );
                    for p in &report.sampled_planes {
                        t.push_str(&format!("K {} = {}\n", p.plane, fmt12(p.k)));
                    }
                    t
                }
            };
            Ok(Output { text, ok: pass })
        }
        Command::Probe { plane, source, format } => {
            let s = source.load()?;
            let (x, y) = parse_plane(&s, &plane)?;
            let k = sectional(&s, &x, &y)?;
            let (xo, yo) = solvcurv::curvature::orthonormal_pair(&x, &y)?;
            let u: f64 = u_form(&s, &xo, &yo).iter().map(|v| v * v).sum::<f64>().sqrt();
            let r = ProbeResult { plane, k, positive: k > POSITIVE_K, u_norm: u };
            Ok(ok(match format {
                Format::Json => io::to_json("probe", &r)?,
                Format::Csv => format!("plane,k,u_norm\n\"{}\",{},{}\n", r.plane, fmt12(r.k), fmt12(r.u_norm)),
                Format::Text => format!("K({}) = {}\n", r.plane, fmt12(r.k)),
            }))
        }
        Command::Fingerprint { source, format } => {
            let s = source.load()?;
            let f = fingerprint(&s);
            Ok(ok(match format {
                Format::Json => io::to_json("fingerprint", &f)?,
                Format::Csv => format!(
                    "einstein_constant,dim_a,dim_n,nilpotency_class,min_sectional,max_sectional\n{},{},{},{},{},{}\n",
                    fmt12(f.einstein_constant),
                    f.dim_a,
                    f.dim_n,
                    f.nilpotency_class,
                    fmt12(f.min_sectional),
                    fmt12(f.max_sectional)
                ),
                Format::Text => fingerprint_text(&f),
            }))
        }
        Command::Sweep { family, preset, tol, format } => {
            let f = family.require()?;
            let presets = preset.map(|p| p.split(',').map(|x| FlagChoice::parse(x.trim())).collect::<solvcurv::Result<Vec<_>>>()).transpose()?;
            let rows = sweep(f, presets.as_deref(), tol)?;
            let all = rows.iter().all(|r| r.pass);
            let (associates, attached) = count_constructions(f);
            let text = match format {
                Format::Csv => sweep_csv(&rows),
                Format::Json => io::to_json("sweep", &json!({ "family": f.to_string(), "associates": associates, "attached": attached, "rows": rows }))?,
                Format::Text => {
                    let passed = rows.iter().filter(|r| r.pass).count();
                    format!("{f}: {passed}/{} Einstein ({associates} associated, {attached} attached constructions)\n", rows.len())
                }
            };
            Ok(Output { text, ok: all })
        }
        Command::Roots { family, z, format } => {
            let rs = RootSystem::new(family.require()?)?;
            let z = z.map(|z| CharacteristicElement::parse(&z)).transpose()?;
            let doc = io::root_system_doc(&rs, z.as_ref())?;
            Ok(ok(match format {
                Format::Json => io::to_json("root_system", &doc)?,
                _ => {
                    let mut t = String::from("label,coords,mult,level\n");
                    for r in &doc.roots {
                        let coords: Vec<String> = r.coords.iter().map(|c| c.to_string()).collect();
                        t.push_str(&format!("{},\"{}\",{},{}\n", r.label, coords.join(" "), r.mult, r.level.map(|l| l.to_string()).unwrap_or_default()));
                    }
                    t
                }
            }))
        }
        Command::Run { family, z, preset, flags, checks, format } => {
            let mut spec = PipelineSpec::new(family.require()?);
            spec.z = z.map(|z| CharacteristicElement::parse(&z)).transpose()?;
            spec.flags = flag_spec(&preset, &flags)?;
            spec.tol = checks.tol;
            spec.seed = checks.seed;
            spec.samples = checks.samples;
            let out = run_pipeline(&spec)?;
            let text = match format {
                Format::Json => io::to_json("pipeline", &out)?,
                Format::Csv => csv_matrix(out.algebra.labels(), &out.report.ricci),
                Format::Text => format!(
                    "{} z={} dim {}\neinstein {} constant {}\n",
                    out.family,
                    out.z.as_deref().unwrap_or("-"),
                    out.dim,
                    if out.pass { "pass" } else { "fail" },
                    fmt12(out.report.einstein_constant)
                ),
            };
            Ok(Output { text, ok: out.pass })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe downstream is not an error worth reporting
            let _ = stdout.write_all(out.text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let err = json!({ "schema": io::SCHEMA, "kind": "error", "error": { "type": e.kind(), "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string(&err).unwrap_or_else(|_| e.to_string()));
            ExitCode::from(2)
        }
    }
}
