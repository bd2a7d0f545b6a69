mod manifest;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ktx_core::covers::{ceil_bound, cover_mo, cover_monotone, CoverError, CoverResult, Transmitter};
use ktx_core::generators::{
    gen_edge_lb_ring, gen_monotone_comb, gen_point_lb_ring, gen_spike_box, gen_staircase, GadgetRingParams, GenError,
    Instance, LineSet,
};
use ktx_core::geom::{point_from_json, point_to_json, polygon_from_json, polygon_to_value};
use ktx_core::solver::{
    build_matrix, build_witnesses, certify_lower_bound, edge_candidates, fuzz, min_cover, point_candidates,
    verify_cover, SolveReport, SolveStatus, DEFAULT_NODE_LIMIT,
};
use ktx_core::visibility::VisibilitySpec;
use ktx_core::{Point, Polygon, Scalar};

use manifest::RunManifest;

const EXIT_VALIDATION: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "ktx", version, about = "Exact 2-transmitter coverage toolkit")]
struct Cli {
    /// Maximum number of connected components a sight line may have.
    #[arg(long, global = true)]
    spec_components: Option<usize>,
    /// Witness grid resolution.
    #[arg(long, global = true, default_value_t = 25)]
    grid: usize,
    /// Seed for the randomized families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a lower-bound or reduction polygon; writes polygon.json and witnesses.json.
    Generate(GenerateArgs),
    /// Constructive edge cover of a monotone polygon; writes cover.json.
    Cover {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
    },
    /// Witness lower bound and exact minimum cover over finite candidates; writes solve.json.
    Solve {
        input: PathBuf,
        /// Witness sidecar; defaults to witnesses.json next to the input.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Candidates::Auto)]
        candidates: Candidates,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Sampled coverage check of a cover; writes verify.json.
    Verify {
        input: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// SVG picture of a polygon with optional cover, witnesses and uncovered points; writes render.svg.
    Render {
        input: PathBuf,
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        witnesses: Option<PathBuf>,
        /// A verify.json whose uncovered points are marked.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    /// Gadget count for the rings.
    #[arg(long, default_value_t = 3)]
    g: usize,
    /// Ring scale as an exact rational, e.g. 3/2
    #[arg(long)]
    radius: Option<String>,
    /// Apex needle stretch for the rings, 1 is the tuned shape
    #[arg(long)]
    apex_depth: Option<String>,
    /// Extra boundary vertices inserted into a ring
    #[arg(long, default_value_t = 0)]
    subdivision: usize,
    /// Gadget count for the comb.
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Stair segments, or the spike-box wall budget.
    #[arg(long)]
    k: Option<usize>,
    /// Line set JSON for the spike box.
    #[arg(long)]
    lines: Option<PathBuf>,
    /// Vertex count for the random families.
    #[arg(long, default_value_t = 10)]
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    PointRing,
    EdgeRing,
    Comb,
    Staircase,
    SpikeBox,
    RandomMonotone,
    RandomMo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Monotone,
    Mo,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Candidates {
    Point,
    Edge,
    Auto,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(m: impl ToString) -> Self {
        Failure { code: EXIT_VALIDATION, message: m.to_string() }
    }

    fn infeasible(m: impl ToString) -> Self {
        Failure { code: EXIT_INFEASIBLE, message: m.to_string() }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        match e {
            GenError::ConstraintUnsatisfied(_) => Failure::infeasible(e),
            _ => Failure::validation(e),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        Failure::validation(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    spec: VisibilitySpec,
    explicit_spec: bool,
    grid: usize,
    seed: u64,
    out: PathBuf,
}

impl Ctx {
    fn manifest(&self, sub: &str) -> RunManifest {
        RunManifest::new(sub, self.spec.max_components, self.grid, self.seed)
    }

    fn write(&self, m: &mut RunManifest, name: &str, body: &str) -> Outcome {
        fs::create_dir_all(&self.out).map_err(|e| Failure::validation(format!("{}: {e}", self.out.display())))?;
        let path = self.out.join(name);
        fs::write(&path, body).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
        m.outputs.push(path.display().to_string());
        Ok(())
    }

    fn write_json(&self, m: &mut RunManifest, name: &str, v: &Value) -> Outcome {
        self.write(m, name, &(pretty(v) + "\n"))
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.spec_components == Some(0) {
        eprintln!("error: --spec-components must be at least 1");
        return ExitCode::from(EXIT_VALIDATION);
    }
    let ctx = Ctx {
        spec: VisibilitySpec::components(cli.spec_components.unwrap_or(2)),
        explicit_spec: cli.spec_components.is_some(),
        grid: cli.grid.max(1),
        seed: cli.seed,
        out: cli.out,
    };
    let r = match cli.cmd {
        Cmd::Generate(a) => generate(&ctx, a),
        Cmd::Cover { input, algorithm } => cover(&ctx, &input, algorithm),
        Cmd::Solve { input, witnesses, candidates, node_limit } => {
            solve(&ctx, &input, witnesses.as_deref(), candidates, node_limit)
        }
        Cmd::Verify { input, cover, witnesses } => verify(&ctx, &input, &cover, witnesses.as_deref()),
        Cmd::Render { input, cover, witnesses, report } => {
            render(&ctx, &input, cover.as_deref(), witnesses.as_deref(), report.as_deref())
        }
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let s = fs::read_to_string(path).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

fn read_polygon(path: &Path) -> Result<Polygon, Failure> {
    let s = fs::read_to_string(path).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    polygon_from_json(&s).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

/// The explicit sidecar, or witnesses.json next to the input when present.
fn read_sidecar(input: &Path, explicit: Option<&Path>) -> Result<Option<(PathBuf, Value)>, Failure> {
    let path = match explicit {
        Some(p) => p.to_path_buf(),
        None => {
            let p = input.with_file_name("witnesses.json");
            if !p.is_file() {
                return Ok(None);
            }
            p
        }
    };
    Ok(Some((path.clone(), read_json(&path)?)))
}

fn points_of(v: Option<&Value>) -> Result<Vec<Point>, Failure> {
    match v.and_then(Value::as_array) {
        None => Ok(Vec::new()),
        Some(a) => a.iter().map(|p| point_from_json(p).map_err(Failure::validation)).collect(),
    }
}

fn parse_scalar(s: &str, what: &str) -> Result<Scalar, Failure> {
    s.parse().map_err(|e| Failure::validation(format!("--{what}: {e}")))
}

fn generate(ctx: &Ctx, a: GenerateArgs) -> Outcome {
    let mut m = ctx.manifest("generate");
    let family_name = a.family.to_possible_value().expect("named").get_name().to_string();
    m.param("family", json!(family_name));
    let ring = |a: &GenerateArgs, m: &mut RunManifest| -> Result<GadgetRingParams, Failure> {
        let mut p = GadgetRingParams::new(a.g).with_subdivision(a.subdivision);
        if let Some(r) = &a.radius {
            p.radius = parse_scalar(r, "radius")?;
        }
        if let Some(d) = &a.apex_depth {
            p.apex_depth = parse_scalar(d, "apex-depth")?;
        }
        m.param("g", json!(p.gadget_count));
        m.param("radius", json!(p.radius.to_string()));
        m.param("apex_depth", json!(p.apex_depth.to_string()));
        m.param("subdivision", json!(p.subdivision));
        Ok(p)
    };
    let mut sidecar_extra = serde_json::Map::new();
    let inst: Instance = match a.family {
        Family::PointRing => gen_point_lb_ring(&ring(&a, &mut m)?)?,
        Family::EdgeRing => gen_edge_lb_ring(&ring(&a, &mut m)?)?,
        Family::Comb => {
            m.param("l", json!(a.l));
            gen_monotone_comb(a.l)?
        }
        Family::Staircase => {
            let k = a.k.ok_or_else(|| Failure::validation("staircase needs --k"))?;
            m.param("k", json!(k));
            gen_staircase(k)?
        }
        Family::SpikeBox => {
            let k = a.k.unwrap_or(2);
            let path = a.lines.as_ref().ok_or_else(|| Failure::validation("spike-box needs --lines"))?;
            m.input("lines", &path.display().to_string());
            m.param("k", json!(k));
            let ls = LineSet::from_json(&read_json(path)?).map_err(Failure::validation)?;
            let sb = gen_spike_box(&ls, k)?;
            sidecar_extra.insert("components".into(), json!(sb.spec.max_components));
            sidecar_extra.insert(
                "extra_candidates".into(),
                Value::Array(sb.line_points.iter().map(point_to_json).collect()),
            );
            sb.instance
        }
        Family::RandomMonotone | Family::RandomMo => {
            m.param("n", json!(a.n));
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let polygon = if a.family == Family::RandomMo {
                if a.n < 4 || a.n % 2 == 1 {
                    return Err(Failure::validation("random-mo needs an even --n of at least 4"));
                }
                fuzz::random_mo(a.n, &mut rng)
            } else {
                if a.n < 3 {
                    return Err(Failure::validation("random-monotone needs --n of at least 3"));
                }
                fuzz::random_monotone(a.n, &mut rng)
            };
            let family = if a.family == Family::RandomMo { "random-mo" } else { "random-monotone" };
            Instance { family, polygon, witnesses: Vec::new(), certificates: Vec::new() }
        }
    };
    let mut sidecar = inst.sidecar_json();
    if let Value::Object(o) = &mut sidecar {
        o.extend(sidecar_extra);
    }
    ctx.write_json(&mut m, "witnesses.json", &sidecar)?;
    let mut poly = polygon_to_value(&inst.polygon);
    m.outputs.push(ctx.out.join("polygon.json").display().to_string());
    poly["manifest"] = m.to_json();
    m.outputs.pop();
    ctx.write_json(&mut m, "polygon.json", &poly)?;
    println!(
        "{}",
        json!({ "family": inst.family, "n": inst.polygon.n(), "witnesses": inst.witnesses.len(), "out": ctx.out.display().to_string() })
    );
    Ok(())
}

fn cover(ctx: &Ctx, input: &Path, algorithm: Algorithm) -> Outcome {
    let poly = read_polygon(input)?;
    let mut m = ctx.manifest("cover");
    m.input("polygon", &input.display().to_string());
    let class = poly.classify();
    let use_mo = match algorithm {
        Algorithm::Mo => true,
        Algorithm::Monotone => false,
        Algorithm::Auto => class.x_monotone && class.orthogonal,
    };
    if !class.x_monotone {
        return Err(Failure::validation(CoverError::NotMonotone(format!(
            "classifier: x_monotone=false, orthogonal={}, n={}",
            class.orthogonal,
            poly.n()
        ))));
    }
    let (name, d) = if use_mo { ("mo", 10) } else { ("monotone", 8) };
    m.param("algorithm", json!(name));
    let res: CoverResult = if use_mo { cover_mo(&poly)? } else { cover_monotone(&poly)? };
    let bound = ceil_bound(poly.n(), d);
    let mut v = res.to_json();
    v["algorithm"] = json!(name);
    v["bound_line"] = json!(format!("size {} ≤ ⌈(n−2)/{d}⌉ = {bound} (n = {})", res.size(), poly.n()));
    let mut m2 = m.clone();
    m2.outputs.push(ctx.out.join("cover.json").display().to_string());
    v["manifest"] = m2.to_json();
    ctx.write_json(&mut m, "cover.json", &v)?;
    println!("{}", v["bound_line"].as_str().unwrap_or_default());
    Ok(())
}

fn solve(ctx: &Ctx, input: &Path, sidecar: Option<&Path>, cands: Candidates, node_limit: u64) -> Outcome {
    let poly = read_polygon(input)?;
    let side = read_sidecar(input, sidecar)?;
    let mut m = ctx.manifest("solve");
    m.input("polygon", &input.display().to_string());
    let side_v = side.as_ref().map(|(p, v)| {
        m.input("witnesses", &p.display().to_string());
        v.clone()
    });
    let get = |k: &str| side_v.as_ref().and_then(|v| v.get(k));
    let family = get("family").and_then(Value::as_str).unwrap_or("");
    let spec = match get("components").and_then(Value::as_u64) {
        Some(c) if !ctx.explicit_spec && c >= 1 => VisibilitySpec::components(c as usize),
        _ => ctx.spec,
    };
    m.spec_components = spec.max_components;
    let designated = points_of(get("witnesses"))?;
    let use_points = match cands {
        Candidates::Point => true,
        Candidates::Edge => false,
        Candidates::Auto => matches!(family, "point-ring" | "spike-box"),
    };
    m.param("candidates", json!(if use_points { "point" } else { "edge" }));
    m.param("node_limit", json!(node_limit));
    let mut candidates = if use_points { point_candidates(&poly, ctx.grid) } else { edge_candidates(&poly) };
    if use_points {
        candidates.extend(points_of(get("extra_candidates"))?.into_iter().map(Transmitter::Point));
    }

    let witnesses = build_witnesses(&poly, ctx.grid, &designated);
    let lb_witnesses: Vec<Point> =
        if designated.is_empty() { witnesses.points.iter().map(|(p, _)| p.clone()).collect() } else { designated };
    let lb = certify_lower_bound(&poly, &lb_witnesses, &candidates, spec, node_limit);
    let all: Vec<Point> = witnesses.points.iter().map(|(p, _)| p.clone()).collect();
    let matrix = build_matrix(&poly, &candidates, &all, spec);
    let full = min_cover(&matrix, node_limit);
    let uncovered = Value::Array(
        full.unseen
            .iter()
            .map(|&i| json!({ "point": point_to_json(&all[i]), "provenance": witnesses.points[i].1 }))
            .collect(),
    );
    let status = [lb.status, full.status]
        .into_iter()
        .max_by_key(|s| match s {
            SolveStatus::Ok => 0,
            SolveStatus::Timeout => 1,
            SolveStatus::Infeasible => 2,
        })
        .unwrap_or(SolveStatus::Ok);
    let mut certificate = lb.certificate();
    certificate["cover"] = json!({
        "witnesses": all.len(),
        "chosen": full.chosen.iter().map(|&c| candidates[c].to_json()).collect::<Vec<_>>(),
        "status": full.status,
        "note": "minimum over the finite candidate set against sampled witnesses",
    });
    let report = SolveReport {
        lb: lb.lb,
        cover_size: (full.status == SolveStatus::Ok).then(|| full.size()),
        uncovered,
        certificate,
        status,
    };
    let mut v = report.to_json();
    let mut m2 = m.clone();
    m2.outputs.push(ctx.out.join("solve.json").display().to_string());
    v["manifest"] = m2.to_json();
    ctx.write_json(&mut m, "solve.json", &v)?;
    println!("{}", json!({ "lb": report.lb, "cover_size": report.cover_size, "status": report.status }));
    match status {
        SolveStatus::Ok => Ok(()),
        other => Err(Failure::infeasible(format!("solver status {other:?}"))),
    }
}

fn verify(ctx: &Ctx, input: &Path, cover_path: &Path, sidecar: Option<&Path>) -> Outcome {
    let poly = read_polygon(input)?;
    let cover = CoverResult::from_json(&read_json(cover_path)?).map_err(Failure::validation)?;
    let side = read_sidecar(input, sidecar)?;
    let mut m = ctx.manifest("verify");
    m.input("polygon", &input.display().to_string());
    m.input("cover", &cover_path.display().to_string());
    if let Some((p, _)) = &side {
        m.input("witnesses", &p.display().to_string());
    }
    for t in &cover.transmitters {
        if let Transmitter::Edge(e) = t {
            if e.0 >= poly.n() {
                return Err(Failure::validation(format!("cover names edge {} of a {}-gon", e.0, poly.n())));
            }
        }
    }
    let designated = points_of(side.as_ref().and_then(|(_, v)| v.get("witnesses")))?;
    let w = build_witnesses(&poly, ctx.grid, &designated);
    let rep = verify_cover(&poly, &cover.transmitters, &w, ctx.spec);
    let mut v = json!({
        "total": rep.total,
        "uncovered": rep.uncovered_json(),
        "uncovered_count": rep.uncovered.len(),
        "spec": rep.spec,
        "mode": rep.mode,
        "note": "sampled check: it can refute a cover but cannot prove that every point is covered",
    });
    let mut m2 = m.clone();
    m2.outputs.push(ctx.out.join("verify.json").display().to_string());
    v["manifest"] = m2.to_json();
    ctx.write_json(&mut m, "verify.json", &v)?;
    println!("{}", json!({ "total": rep.total, "uncovered": rep.uncovered.len() }));
    Ok(())
}

fn render(ctx: &Ctx, input: &Path, cover: Option<&Path>, sidecar: Option<&Path>, report: Option<&Path>) -> Outcome {
    let poly = read_polygon(input)?;
    let mut m = ctx.manifest("render");
    m.lossy = true;
    m.input("polygon", &input.display().to_string());
    let transmitters = match cover {
        Some(p) => {
            m.input("cover", &p.display().to_string());
            CoverResult::from_json(&read_json(p)?).map_err(Failure::validation)?.transmitters
        }
        None => Vec::new(),
    };
    let witnesses = match read_sidecar(input, sidecar)? {
        Some((p, v)) => {
            m.input("witnesses", &p.display().to_string());
            points_of(v.get("witnesses"))?
        }
        None => Vec::new(),
    };
    let uncovered = match report {
        Some(p) => {
            m.input("report", &p.display().to_string());
            let v = read_json(p)?;
            let items = v.get("uncovered").and_then(Value::as_array).cloned().unwrap_or_default();
            items.iter().map(|u| point_from_json(&u["point"]).map_err(Failure::validation)).collect::<Result<_, _>>()?
        }
        None => Vec::new(),
    };
    for t in &transmitters {
        if let Transmitter::Edge(e) = t {
            if e.0 >= poly.n() {
                return Err(Failure::validation(format!("cover names edge {} of a {}-gon", e.0, poly.n())));
            }
        }
    }
    let mut m2 = m.clone();
    m2.outputs.push(ctx.out.join("render.svg").display().to_string());
    let scene = render::Scene { polygon: &poly, transmitters: &transmitters, witnesses: &witnesses, uncovered: &uncovered };
    let body = render::svg(&scene, &m2.to_json().to_string());
    ctx.write(&mut m, "render.svg", &body)?;
    println!("{}", ctx.out.join("render.svg").display());
    Ok(())
}
