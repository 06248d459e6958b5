use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cliffsys::algebras::{AlgebraTable, Unit};
use cliffsys::clifford::{
    build, class_trace, classify_essential, normalizer_dim, tilde, to_representation, verify, ClassTag,
    CliffordSystem, Essentiality, SystemJson, Variant, VerifyReport,
};
use cliffsys::error::Error;
use cliffsys::evencliff::{build_e10, invariance, psi_d, structure_info, tau4_psi_d, InvarianceReport};
use cliffsys::exactmat::MatrixJson;
use cliffsys::forms::{canonical_form, psi_matrix, CanonicalName, FormJson, FormMatrix, KForm, PsiFamily};
use cliffsys::liealg::{bracket_closed, span_dim, triple_span_decomposition, Decomposition};
use cliffsys::selftest::{run_all, CriterionOutcome};
use cliffsys::spheres::{
    hurwitz_radon, max_vector_fields, random_unit_points, verify_pointwise, HurwitzRadon,
};

const THREADS_ENV: &str = "CLIFFSYS_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "cliffsys",
    version,
    about = "Exact Clifford systems, octonionic forms and sphere vector fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (overrides CLIFFSYS_THREADS).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Class {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    #[value(name = "psiD")]
    PsiD,
    Tau4,
    Invariance,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build C_m.
    Gen {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=16))]
        m: u8,
        /// `minus` selects the opposite trace class (m divisible by 4).
        #[arg(long, value_enum)]
        class: Option<Class>,
        /// The left-multiplication representative (m = 4, 8).
        #[arg(long, conflicts_with = "class")]
        tilde: bool,
    },
    /// Check the Clifford relations of a system JSON file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The representation E_1, …, E_m of C_m.
    Rep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=16))]
        m: u8,
    },
    /// Canonical forms and τ_k of the ψ matrices.
    Form(FormArgs),
    /// Lie-algebra checks on the compositions of C_m.
    Liealg {
        /// `C<m>`, e.g. `C8`.
        #[arg(long, value_parser = parse_system)]
        system: u8,
        #[arg(long, value_delimiter = ',', default_value = "span,bracket")]
        check: Vec<LieCheck>,
    },
    /// The even Clifford structure of rank 10.
    Evencliff(EvenArgs),
    /// Maximal systems of orthonormal vector fields on S^{N-1}.
    SphereFields {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Essentiality of even Clifford structures of rank m + 1.
    ClassifyEssential {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Multiplication table and R_u / L_u of the octonions or quaternions.
    Octonions {
        #[arg(long)]
        quaternions: bool,
        /// Emit R_u for the unit label (1 i j k e f g h).
        #[arg(long, value_parser = parse_unit, conflicts_with = "left")]
        right: Option<Unit>,
        #[arg(long, value_parser = parse_unit)]
        left: Option<Unit>,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Include the slow criterion (τ₄ on ℝ³²).
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Args, Debug)]
struct FormArgs {
    /// omega-l, spin7delta, spin8 or spin9.
    #[arg(long, required_unless_present = "tau", conflicts_with_all = ["tau", "psi"])]
    name: Option<CanonicalName>,
    #[arg(long, requires = "psi", value_parser = clap::value_parser!(u8).range(2..=16))]
    tau: Option<u8>,
    #[arg(long, requires = "tau")]
    psi: Option<PsiFamily>,
}

#[derive(Args, Debug)]
struct EvenArgs {
    #[arg(long, requires = "emit")]
    rank: Option<usize>,
    #[arg(long, value_enum, requires = "rank")]
    emit: Option<Emit>,
    #[arg(long, required_unless_present = "rank", conflicts_with_all = ["rank", "emit"])]
    classify: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LieCheck {
    Span,
    Bracket,
    Normalizer,
    Decomposition,
}

fn parse_system(s: &str) -> Result<u8, String> {
    let m: u8 = s
        .strip_prefix(['C', 'c'])
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| format!("expected C<m>, got {s:?}"))?;
    if (1..=16).contains(&m) {
        Ok(m)
    } else {
        Err(format!("m = {m} outside 1..=16"))
    }
}

fn parse_unit(s: &str) -> Result<Unit, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Unit::ALL
            .into_iter()
            .find(|u| u.label() == c)
            .ok_or_else(|| format!("unknown unit {s:?}")),
        _ => Err(format!("unknown unit {s:?}")),
    }
}

/// What a subcommand produced; `passed = false` maps to exit code 2.
struct Artifact {
    body: String,
    passed: bool,
}

impl Artifact {
    fn ok(body: String) -> Self {
        Self { body, passed: true }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Unsupported(_) | Error::AmbientTooLarge(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Run = Result<Artifact, Failure>;

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn render_form(form: &KForm, fmt: Format) -> Result<String, Failure> {
    match fmt {
        Format::Json => json(&form.to_json()),
        Format::Text => Ok(form.to_text() + "\n"),
    }
}

#[derive(Serialize)]
struct FormMatrixEntry {
    a: usize,
    b: usize,
    form: FormJson,
}

#[derive(Serialize)]
struct FormMatrixJson {
    size: usize,
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<FormMatrixEntry>,
}

fn render_matrix(psi: &FormMatrix, fmt: Format) -> Result<String, Failure> {
    match fmt {
        Format::Json => json(&FormMatrixJson {
            size: psi.size(),
            n: psi.ambient(),
            entries: psi
                .upper_entries()
                .map(|(a, b, f)| FormMatrixEntry {
                    a,
                    b,
                    form: f.to_json(),
                })
                .collect(),
        }),
        Format::Text => Ok(psi
            .upper_entries()
            .map(|(a, b, f)| format!("psi[{a},{b}] = {}\n", f.to_text()))
            .collect()),
    }
}

fn system_text(c: &CliffordSystem) -> String {
    let mut s = format!(
        "C_{} on R^{} (class {})\n",
        c.m(),
        c.order(),
        match c.class_tag() {
            ClassTag::Plus => "plus",
            ClassTag::Minus => "minus",
            ClassTag::NotApplicable => "n/a",
        }
    );
    for (a, p) in c.generators().iter().enumerate() {
        s.push_str(&format!("P_{a} =\n{p}\n"));
    }
    s
}

#[derive(Serialize)]
struct VerifyOutput {
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    trace: i64,
    ok: bool,
    report: VerifyReport,
}

#[derive(Serialize)]
struct RepOutput {
    m: usize,
    dim: usize,
    matrices: Vec<MatrixJson>,
}

#[derive(Serialize)]
struct LieOutput {
    system: String,
    #[serde(rename = "N")]
    n: usize,
    generators: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    span_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_span_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bracket_closed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalizer_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<Decomposition>,
}

#[derive(Serialize)]
struct InvarianceOutput {
    rank: usize,
    form_terms: usize,
    report: InvarianceReport,
}

#[derive(Serialize)]
struct SphereOutput {
    #[serde(rename = "N")]
    n: u64,
    hurwitz_radon: HurwitzRadon,
    structures: Vec<MatrixJson>,
    algebraic: bool,
    points: usize,
    seed: u64,
    pointwise: bool,
}

#[derive(Serialize)]
struct EssentialOutput {
    m: u32,
    rank: u32,
    verdict: Essentiality,
}

#[derive(Serialize)]
struct AlgebraOutput {
    algebra: &'static str,
    operator: String,
    matrix: MatrixJson,
}

#[derive(Serialize)]
struct SelftestOutput {
    passed: usize,
    failed: usize,
    criteria: Vec<CriterionOutcome>,
}

fn dispatch(cmd: &Command, fmt: Format) -> Run {
    match cmd {
        Command::Gen { m, class, tilde: tl } => {
            let m = usize::from(*m);
            let c = if *tl {
                tilde(m)?
            } else {
                let variant = match class {
                    Some(Class::Minus) => Variant::Opposite,
                    _ => Variant::Canonical,
                };
                build(m, variant)?
            };
            Ok(Artifact::ok(match fmt {
                Format::Json => json(&c.to_json())?,
                Format::Text => system_text(&c),
            }))
        }
        Command::Verify { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let doc: SystemJson = serde_json::from_str(&text).map_err(Error::from)?;
            let c = CliffordSystem::from_json(&doc)?;
            let report = verify(&c);
            let ok = report.all_ok();
            let out = VerifyOutput {
                m: c.m(),
                n: c.order(),
                trace: class_trace(&c),
                ok,
                report,
            };
            let body = match fmt {
                Format::Json => json(&out)?,
                Format::Text => format!(
                    "C_{} on R^{}: {} (trace {}){}\n",
                    out.m,
                    out.n,
                    if ok { "ok" } else { "FAILED" },
                    out.trace,
                    out.report
                        .first_failure
                        .as_ref()
                        .map(|f| format!(", first failure: {} at {:?}", f.check, f.generators))
                        .unwrap_or_default()
                ),
            };
            Ok(Artifact { body, passed: ok })
        }
        Command::Rep { m } => {
            let rep = to_representation(&build(usize::from(*m), Variant::Canonical)?)?;
            Ok(Artifact::ok(match fmt {
                Format::Json => json(&RepOutput {
                    m: rep.m(),
                    dim: rep.dim(),
                    matrices: rep.matrices().iter().map(|e| e.to_json()).collect(),
                })?,
                Format::Text => rep
                    .matrices()
                    .iter()
                    .enumerate()
                    .map(|(a, e)| format!("E_{} =\n{e}\n", a + 1))
                    .collect(),
            }))
        }
        Command::Form(args) => {
            let form = match (args.name, args.tau, args.psi) {
                (Some(name), _, _) => canonical_form(name)?,
                (None, Some(k), Some(fam)) => psi_matrix(fam)?.tau(usize::from(k))?,
                _ => return Err(Failure::Usage("give --name or --tau with --psi".into())),
            };
            Ok(Artifact::ok(render_form(&form, fmt)?))
        }
        Command::Liealg { system, check } => {
            let c = build(usize::from(*system), Variant::Canonical)?;
            let comps = c.compositions();
            let m = c.m();
            let mut out = LieOutput {
                system: format!("C{m}"),
                n: c.order(),
                generators: comps.len(),
                span_dim: None,
                expected_span_dim: None,
                bracket_closed: None,
                normalizer_dim: None,
                decomposition: None,
            };
            let mut passed = true;
            for chk in check {
                match chk {
                    LieCheck::Span => {
                        let d = span_dim(&comps)?;
                        passed &= d == m * (m + 1) / 2;
                        out.span_dim = Some(d);
                        out.expected_span_dim = Some(m * (m + 1) / 2);
                    }
                    LieCheck::Bracket => {
                        let closed = bracket_closed(&comps)?;
                        passed &= closed;
                        out.bracket_closed = Some(closed);
                    }
                    LieCheck::Normalizer => out.normalizer_dim = Some(normalizer_dim(&c)?),
                    LieCheck::Decomposition => {
                        if m != 8 {
                            return Err(Failure::Usage(
                                "the decomposition check applies to C8 only".into(),
                            ));
                        }
                        let d = triple_span_decomposition()?;
                        passed &= d.orthogonal && d.total == 120;
                        out.decomposition = Some(d);
                    }
                }
            }
            let body = match fmt {
                Format::Json => json(&out)?,
                Format::Text => {
                    let mut s = format!(
                        "{} on R^{} ({} compositions)\n",
                        out.system, out.n, out.generators
                    );
                    if let Some(d) = out.span_dim {
                        s.push_str(&format!("span dim: {d}\n"));
                    }
                    if let Some(b) = out.bracket_closed {
                        s.push_str(&format!("bracket closed: {b}\n"));
                    }
                    if let Some(d) = out.normalizer_dim {
                        s.push_str(&format!("normalizer dim: {d}\n"));
                    }
                    if let Some(d) = &out.decomposition {
                        s.push_str(&format!(
                            "pairs {} + triples {} = {} (orthogonal: {})\n",
                            d.dim_pairs, d.dim_triples, d.total, d.orthogonal
                        ));
                    }
                    s
                }
            };
            Ok(Artifact { body, passed })
        }
        Command::Evencliff(args) => {
            if let Some(rank) = args.classify {
                let info = structure_info(rank)?;
                return Ok(Artifact::ok(match fmt {
                    Format::Json => json(&info)?,
                    Format::Text => format!(
                        "rank {} on R^{} ({}): {}\n{}\n",
                        info.rank,
                        info.ambient,
                        info.space,
                        if info.essential {
                            "Essential"
                        } else {
                            "NonEssential"
                        },
                        info.note
                    ),
                }));
            }
            let (Some(rank), Some(emit)) = (args.rank, args.emit) else {
                return Err(Failure::Usage("give --rank with --emit, or --classify".into()));
            };
            if rank != 10 {
                return Err(Failure::Usage(format!(
                    "explicit generators are available for rank 10 only, not {rank}"
                )));
            }
            match emit {
                Emit::PsiD => Ok(Artifact::ok(render_matrix(&psi_d()?, fmt)?)),
                Emit::Tau4 => Ok(Artifact::ok(render_form(&tau4_psi_d()?, fmt)?)),
                Emit::Invariance => {
                    let form = tau4_psi_d()?;
                    let report = invariance(&build_e10()?, &form)?;
                    let passed =
                        report.annihilated_by_span && report.annihilated_by_complex && !form.is_zero();
                    let out = InvarianceOutput {
                        rank,
                        form_terms: form.len(),
                        report,
                    };
                    let body = match fmt {
                        Format::Json => json(&out)?,
                        Format::Text => format!(
                            "tau4(psiD): {} terms, invariant under so(10): {}, under I: {}\n",
                            out.form_terms, out.report.annihilated_by_span, out.report.annihilated_by_complex
                        ),
                    };
                    Ok(Artifact { body, passed })
                }
            }
        }
        Command::SphereFields { n, points, seed } => {
            let sys = max_vector_fields(*n)?;
            let pts = random_unit_points(sys.ambient(), *points, *seed);
            let algebraic = sys.check_algebraic();
            let pointwise = verify_pointwise(&sys, &pts)?;
            let out = SphereOutput {
                n: *n,
                hurwitz_radon: hurwitz_radon(*n)?,
                structures: sys.structures().iter().map(|j| j.to_json()).collect(),
                algebraic,
                points: *points,
                seed: *seed,
                pointwise,
            };
            let body = match fmt {
                Format::Json => json(&out)?,
                Format::Text => format!(
                    "S^{}: sigma = {} fields; algebraic: {}; pointwise at {} points: {}\n",
                    n - 1,
                    out.hurwitz_radon.sigma,
                    algebraic,
                    points,
                    pointwise
                ),
            };
            Ok(Artifact {
                body,
                passed: algebraic && pointwise,
            })
        }
        Command::ClassifyEssential { m } => {
            let verdict = classify_essential(*m as usize)?;
            Ok(Artifact::ok(match fmt {
                Format::Json => json(&EssentialOutput {
                    m: *m,
                    rank: m + 1,
                    verdict,
                })?,
                Format::Text => format!("{verdict}\n"),
            }))
        }
        Command::Octonions {
            quaternions,
            right,
            left,
        } => {
            let (table, label) = if *quaternions {
                (AlgebraTable::quaternions(), "quaternions")
            } else {
                (AlgebraTable::octonions(), "octonions")
            };
            if let Some(u) = right.or(*left) {
                if u.index() >= table.dim() {
                    return Err(Failure::Usage(format!(
                        "{} is not a unit of the {label}",
                        u.label()
                    )));
                }
            }
            let op = match (right, left) {
                (Some(u), _) => Some((format!("R_{}", u.label()), table.right_matrix(*u))),
                (None, Some(u)) => Some((format!("L_{}", u.label()), table.left_matrix(*u))),
                (None, None) => None,
            };
            Ok(Artifact::ok(match (op, fmt) {
                (None, _) => table.grid(),
                (Some((name, mat)), Format::Json) => json(&AlgebraOutput {
                    algebra: label,
                    operator: name,
                    matrix: mat.to_json(),
                })?,
                (Some((name, mat)), Format::Text) => format!("{name} =\n{mat}\n"),
            }))
        }
        Command::Selftest { slow } => {
            let outcomes = run_all(*slow);
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let failed = outcomes.len() - passed;
            let body = match fmt {
                Format::Json => json(&SelftestOutput {
                    passed,
                    failed,
                    criteria: outcomes,
                })?,
                Format::Text => {
                    let mut s: String = outcomes.iter().map(|o| o.line() + "\n").collect();
                    s.push_str(&format!("selftest: {passed} passed, {failed} failed\n"));
                    s
                }
            };
            Ok(Artifact {
                body,
                passed: failed == 0,
            })
        }
    }
}

fn threads(cli: &Cli) -> Result<Option<usize>, String> {
    if let Some(t) = cli.threads {
        return Ok(Some(usize::from(t)));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(Some(t)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(None),
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    message: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match threads(&cli) {
        Ok(Some(t)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        }
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    }
    match dispatch(&cli.command, cli.format) {
        Ok(art) => {
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, &art.body).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => {
                    print!("{}", art.body);
                    Ok(())
                }
            };
            if let Err(msg) = written {
                println!("{}", serde_json::json!({ "error": "io", "message": msg }));
                return ExitCode::from(3);
            }
            if art.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            let body = ErrorBody {
                error: "internal",
                message: msg,
            };
            println!("{}", serde_json::to_string(&body).unwrap_or_default());
            ExitCode::from(3)
        }
    }
}
