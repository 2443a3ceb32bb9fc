use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use flatcyl::appendix::{self, verify_appendix};
use flatcyl::constraints::{check_all, ConstraintReport, Verdict};
use flatcyl::cylinder::{build_surface, CylinderSurface};
use flatcyl::enumeration::{
    classify_stratum, enumerate_typed, label_components, type_label, types_mod_reversal, Classification,
    ClassifyOptions, MetricVerdict, SingularityProfile,
};
use flatcyl::error::{ConstraintError, SurfaceError};
use flatcyl::polygon::{apply_matrix, decompose_direction, Matrix2, Point, PolygonSurface, DEFAULT_STEP_CAP};
use flatcyl::quad::QuadNum;
use flatcyl::rel::{rel_deform, RelAxis};
use flatcyl::scenarios::replay_scenario;
use flatcyl::separatrix::SeparatrixDiagram;
use flatcyl::svg::export_svg;

#[derive(Parser)]
#[command(name = "flatcyl", version, about = "Stable cylinder decompositions of translation surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate stable cylinder diagrams of a stratum.
    Enumerate(EnumerateArgs),
    /// Compare the classification of a stratum with the bundled reference lists.
    VerifyAppendix(VerifyArgs),
    /// Build a surface from a diagram or a bundled reference surface.
    Build(BuildArgs),
    /// Apply a twist, shear, matrix or Rel deformation to a surface.
    Deform(DeformArgs),
    /// Cylinder decomposition in a given direction.
    Decompose(DecomposeArgs),
    /// Run the rank-one constraint checks on a surface.
    Check(CheckArgs),
    /// Replay a scripted argument and print its step log.
    Replay(ReplayArgs),
    /// Draw a surface as SVG.
    ExportSvg(ExportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Orders of the zeros, e.g. `2,2`.
    #[arg(long)]
    kappa: String,
    #[arg(long)]
    quotient_minus_omega: bool,
    #[arg(long)]
    mixed_only: bool,
    /// Print only the type multisets.
    #[arg(long)]
    types_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    kappa: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceSource {
    /// Surface file.
    #[arg(long, conflicts_with = "appendix")]
    surface: Option<PathBuf>,
    /// Bundled surface: `h22-a`, `h22-b`, `h22-odd:N`, `h22-hyp:N` or `h31:N`.
    #[arg(long)]
    appendix: Option<String>,
    /// Required quadratic field `Q(sqrt(D))`; 0 for rational surfaces.
    #[arg(long)]
    discriminant: Option<u64>,
}

#[derive(Args)]
struct BuildArgs {
    /// Separatrix diagram file.
    #[arg(long, conflicts_with = "appendix")]
    diagram: Option<PathBuf>,
    #[arg(long)]
    appendix: Option<String>,
    /// One height per cylinder (default 1).
    #[arg(long, value_delimiter = ',')]
    heights: Vec<String>,
    /// One twist per cylinder (default 0).
    #[arg(long, value_delimiter = ',')]
    twists: Vec<String>,
    #[arg(long)]
    discriminant: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    Real,
    Imaginary,
}

#[derive(Args)]
#[group(id = "deformation", required = true, multiple = false, args = ["twist", "shear", "matrix", "rel"])]
struct DeformArgs {
    #[command(flatten)]
    source: SurfaceSource,
    /// Adds `x_i c_i` to the twist of cylinder `i`.
    #[arg(long, value_delimiter = ',')]
    twist: Vec<String>,
    /// Horocycle shear `[[1, s], [0, 1]]`.
    #[arg(long, allow_hyphen_values = true)]
    shear: Option<String>,
    /// Matrix `a,b,c,d` with positive determinant.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    matrix: Vec<String>,
    /// Rel time.
    #[arg(long, allow_hyphen_values = true)]
    rel: Option<String>,
    #[arg(long, value_enum, default_value = "imaginary")]
    axis: Axis,
    /// Continue Rel past collapsing cylinders.
    #[arg(long)]
    surgery: bool,
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    step_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    source: SurfaceSource,
    /// Direction `dx,dy`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    direction: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    step_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: SurfaceSource,
    #[arg(long, alias = "out")]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    scenario: String,
    #[arg(long, alias = "out")]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    source: SurfaceSource,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Assertion(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Assertion(m) | Failure::Io(m) => m,
        }
    }
}

fn assertion(e: impl std::fmt::Display) -> Failure {
    Failure::Assertion(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e)))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn profile(kappa: &str) -> Result<SingularityProfile, Failure> {
    kappa.parse().map_err(usage)
}

fn numbers(v: &[String], discriminant: Option<u64>) -> Result<Vec<QuadNum>, Failure> {
    let xs: Vec<QuadNum> = v.iter().map(|s| s.parse::<QuadNum>().map_err(usage)).collect::<Result<_, _>>()?;
    if let Some(d) = discriminant {
        if let Some(x) = xs.iter().find(|x| !x.is_rational() && x.discriminant() != d) {
            return Err(usage(format!("{} is not in Q(sqrt({}))", x, d)));
        }
    }
    Ok(xs)
}

fn number(s: &str, discriminant: Option<u64>) -> Result<QuadNum, Failure> {
    Ok(numbers(&[s.to_string()], discriminant)?.remove(0))
}

fn bundled(name: &str) -> Result<CylinderSurface, Failure> {
    let (list, item) = match name.split_once(':') {
        Some((l, i)) => (l, Some(i.parse::<usize>().map_err(|_| usage(format!("bad item in `{}`", name)))?)),
        None => (name, None),
    };
    let surfaces = match (list, item) {
        ("h22-a", None) => return Ok(appendix::h22_decomposition_a()),
        ("h22-b", None) => return Ok(appendix::h22_decomposition_b()),
        ("h22-odd", Some(_)) => appendix::h22_odd(),
        ("h22-hyp", Some(_)) => appendix::h22_hyp(),
        ("h31", Some(_)) => appendix::h31(),
        _ => return Err(usage(format!("unknown bundled surface `{}`", name))),
    };
    let i = item.expect("list with item");
    surfaces
        .get(i.wrapping_sub(1))
        .cloned()
        .ok_or_else(|| usage(format!("`{}` has items 1..{}", list, surfaces.len())))
}

fn field_matches(s: &CylinderSurface, discriminant: Option<u64>) -> Result<(), Failure> {
    match discriminant {
        Some(d) if s.discriminant() != 0 && s.discriminant() != d => {
            Err(usage(format!("surface lies over Q(sqrt({})), not Q(sqrt({}))", s.discriminant(), d)))
        }
        _ => Ok(()),
    }
}

fn load(src: &SurfaceSource) -> Result<CylinderSurface, Failure> {
    let s = match (&src.surface, &src.appendix) {
        (Some(p), _) => CylinderSurface::parse(&read(p)?).map_err(|e| Failure::Io(format!("{}: {}", p.display(), e)))?,
        (None, Some(name)) => bundled(name)?,
        (None, None) => return Err(usage("one of --surface or --appendix is required")),
    };
    field_matches(&s, src.discriminant)?;
    Ok(s)
}

fn render(s: &CylinderSurface, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(s.to_text()),
        Format::Svg => export_svg(s).map_err(assertion),
        Format::Json => Ok(serde_json::to_string_pretty(&surface_json(s)).expect("json") + "\n"),
    }
}

fn surface_json(s: &CylinderSurface) -> serde_json::Value {
    json!({
        "discriminant": s.discriminant(),
        "lengths": s.lengths().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "cylinders": s.cylinders().iter().map(|c| json!({
            "circumference": c.circumference.to_string(),
            "height": c.height.to_string(),
            "twist": c.twist.to_string(),
            "top": c.top,
            "bottom": c.bottom,
        })).collect::<Vec<_>>(),
    })
}

fn types_table(p: &SingularityProfile, quotient: bool) -> String {
    let mut rows: Vec<(String, usize, usize)> = enumerate_typed(p)
        .into_iter()
        .map(|t| {
            let types = if quotient { types_mod_reversal(&t.types) } else { t.types.clone() };
            let (pos, neg) = t.types.iter().fold((0, 0), |(a, b), ty| {
                let (x, y) = ty.component_counts();
                (a + x, b + y)
            });
            (type_label(&types), pos, neg)
        })
        .collect();
    rows.sort();
    rows.dedup();
    let mut out = format!("types of {}\n", p);
    for (label, pos, neg) in rows {
        out.push_str(&format!("{}  components {}+ {}-\n", label, pos, neg));
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn classification_text(c: &Classification) -> String {
    let mut out = String::new();
    for e in &c.entries {
        let label = e.component_label.map(|l| format!(" [{}]", l)).unwrap_or_default();
        let mixed: String = e.mixed.iter().map(|&m| if m { 'm' } else { '.' }).collect();
        out.push_str(&format!("# class {} types {} mixed {}{}\n", e.class_id, type_label(&e.types), mixed, label));
        out.push_str(&e.diagram.to_text());
        out.push('\n');
    }
    out.push_str(&format!("# summary: {} classes\n", c.entries.len()));
    out.push_str("# types  pairings  feasible  infeasible  disconnected  classes\n");
    for t in &c.tallies {
        out.push_str(&format!(
            "# {}  {}  {}  {}  {}  {}\n",
            type_label(&t.types),
            t.records.len(),
            t.feasible(),
            t.infeasible(),
            t.disconnected(),
            t.classes
        ));
        for r in &t.records {
            if let MetricVerdict::Infeasible(z) = &r.verdict {
                out.push_str(&format!("#   infeasible pairing [{}] certificate [{}]\n", join(&r.pairing), join(z)));
            }
        }
    }
    out
}

fn classification_json(c: &Classification) -> String {
    let v = json!({
        "profile": c.profile.to_string(),
        "classes": c.entries.iter().map(|e| json!({
            "class": e.class_id,
            "types": type_label(&e.types),
            "mixed": e.mixed,
            "label": e.component_label.map(|l| l.to_string()),
            "diagram": e.diagram.to_text(),
        })).collect::<Vec<_>>(),
        "tallies": c.tallies.iter().map(|t| json!({
            "types": type_label(&t.types),
            "pairings": t.records.len(),
            "feasible": t.feasible(),
            "infeasible": t.infeasible(),
            "disconnected": t.disconnected(),
            "classes": t.classes,
            "certificates": t.records.iter().filter_map(|r| match &r.verdict {
                MetricVerdict::Infeasible(z) => Some(json!({
                    "pairing": r.pairing,
                    "certificate": z.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })),
                _ => None,
            }).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn report_json(r: &ConstraintReport) -> String {
    let v = json!({
        "d": r.d,
        "field_degree": r.field_degree,
        "verdicts": r.verdicts.iter().map(|(c, v)| {
            let (status, message) = match v {
                Verdict::Holds => ("holds", String::new()),
                Verdict::Violated(w) => ("violated", w.message.clone()),
                Verdict::NotApplicable(m) => ("not-applicable", m.clone()),
            };
            json!({"check": c.to_string(), "status": status, "message": message})
        }).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn enumerate(a: &EnumerateArgs) -> Result<(), Failure> {
    let p = profile(&a.kappa)?;
    if a.types_only {
        return emit(&a.out, &types_table(&p, a.quotient_minus_omega));
    }
    let options = ClassifyOptions { quotient_minus_omega: a.quotient_minus_omega, require_mixed: a.mixed_only };
    let mut c = classify_stratum(&p, options).map_err(usage)?;
    label_components(&mut c);
    let text = match a.format {
        Format::Text => classification_text(&c),
        Format::Json => classification_json(&c),
        Format::Svg => return Err(usage("enumerate supports text and json")),
    };
    emit(&a.out, &text)
}

fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let report = verify_appendix(&profile(&a.kappa)?).map_err(usage)?;
    emit(&a.out, &report.to_text())?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Assertion("classification differs from the reference lists".into()))
    }
}

fn build(a: &BuildArgs) -> Result<(), Failure> {
    let s = match (&a.diagram, &a.appendix) {
        (Some(p), _) => {
            let d = SeparatrixDiagram::parse(&read(p)?).map_err(|e| Failure::Io(format!("{}: {}", p.display(), e)))?;
            let m = d.paired().cylinder_count();
            let heights = if a.heights.is_empty() { vec![QuadNum::one(); m] } else { numbers(&a.heights, a.discriminant)? };
            let twists = if a.twists.is_empty() { vec![QuadNum::zero(); m] } else { numbers(&a.twists, a.discriminant)? };
            build_surface(&d, &heights, &twists).map_err(usage)?
        }
        (None, Some(name)) => {
            let s = bundled(name)?;
            let heights = if a.heights.is_empty() { s.heights() } else { numbers(&a.heights, a.discriminant)? };
            let twists = if a.twists.is_empty() { s.twists() } else { numbers(&a.twists, a.discriminant)? };
            s.with_heights_and_twists(&heights, &twists).map_err(usage)?
        }
        (None, None) => return Err(usage("one of --diagram or --appendix is required")),
    };
    field_matches(&s, a.discriminant)?;
    emit(&a.out, &render(&s, a.format)?)
}

fn horizontal(p: PolygonSurface, step_cap: usize) -> Result<CylinderSurface, Failure> {
    p.horizontal_decomposition(step_cap).map_err(|e| match e {
        SurfaceError::StepCapExceeded => Failure::Assertion("result is not horizontally periodic within the step cap".into()),
        e => assertion(e),
    })
}

fn deform(a: &DeformArgs) -> Result<(), Failure> {
    let s = load(&a.source)?;
    let d = a.source.discriminant;
    let out = if !a.twist.is_empty() {
        s.twist_deform(&numbers(&a.twist, d)?).map_err(usage)?
    } else if let Some(sh) = &a.shear {
        horizontal(apply_matrix(&s, &Matrix2::shear(number(sh, d)?)).map_err(assertion)?, a.step_cap)?
    } else if !a.matrix.is_empty() {
        let m = numbers(&a.matrix, d)?;
        let [p, q, r, t] = <[QuadNum; 4]>::try_from(m).map_err(|_| usage("--matrix takes four entries"))?;
        horizontal(apply_matrix(&s, &Matrix2::new(p, q, r, t)).map_err(assertion)?, a.step_cap)?
    } else if let Some(t) = &a.rel {
        let axis = match a.axis {
            Axis::Real => RelAxis::Real,
            Axis::Imaginary => RelAxis::Imaginary,
        };
        rel_deform(&s, &number(t, d)?, axis, a.surgery).map_err(assertion)?
    } else {
        return Err(usage("no deformation given"));
    };
    emit(&a.out, &render(&out, a.format)?)
}

fn decompose(a: &DecomposeArgs) -> Result<(), Failure> {
    let s = load(&a.source)?;
    let v = numbers(&a.direction, a.source.discriminant)?;
    let [dx, dy] = <[QuadNum; 2]>::try_from(v).map_err(|_| usage("--direction takes two entries"))?;
    match decompose_direction(&PolygonSurface::from_cylinders(&s), &Point::new(dx, dy), a.step_cap) {
        Ok(Some(c)) => emit(&a.out, &render(&c, a.format)?),
        Ok(None) => Err(Failure::Assertion("undetermined: step cap reached before every separatrix closed".into())),
        Err(SurfaceError::NonFieldDirection) => Err(usage(SurfaceError::NonFieldDirection)),
        Err(e) => Err(assertion(e)),
    }
}

fn check(a: &CheckArgs) -> Result<(), Failure> {
    let s = load(&a.source)?;
    let r = check_all(&s).map_err(assertion)?;
    let text = match a.format {
        Format::Text => r.to_text(),
        Format::Json => report_json(&r),
        Format::Svg => return Err(usage("check supports text and json")),
    };
    emit(&a.report, &text)?;
    if r.any_violated() {
        Err(Failure::Assertion("some constraint is violated".into()))
    } else {
        Ok(())
    }
}

fn replay(a: &ReplayArgs) -> Result<(), Failure> {
    match replay_scenario(&a.scenario) {
        Ok(log) => emit(&a.log, &log.to_text()),
        Err(ConstraintError::UnknownScenario(n)) => Err(usage(format!(
            "unknown scenario `{}`; expected one of {}",
            n,
            flatcyl::scenarios::SCENARIOS.join(", ")
        ))),
        Err(e) => Err(assertion(e)),
    }
}

fn export(a: &ExportArgs) -> Result<(), Failure> {
    let s = load(&a.source)?;
    emit(&a.out, &export_svg(&s).map_err(assertion)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::VerifyAppendix(a) => verify(a),
        Command::Build(a) => build(a),
        Command::Deform(a) => deform(a),
        Command::Decompose(a) => decompose(a),
        Command::Check(a) => check(a),
        Command::Replay(a) => replay(a),
        Command::ExportSvg(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("flatcyl: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
