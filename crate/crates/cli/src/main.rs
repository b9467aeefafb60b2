mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use subalg::json::{condition_to_json, point_to_json, points_from_text};
use subalg::qn::{verify_d_of_q, verify_main_theorem, verify_qprime_eq_q};
use subalg::sagbi::complete_generators;
use subalg::{
    build_from_conditions, codimension, derivation_space, qn_build, spectrum, Condition, ConditionFiltration,
    PointSet, QnSpec, RPoint, Rational, Report, TermOrder,
};

use session::{parse_poly, Session};

const DEFAULT_MAX_DEGREE: u32 = 12;

#[derive(Parser)]
#[command(name = "subalg", version, about = "Subalgebras of finite codimension given by conditions")]
struct Cli {
    /// term order; overrides the session's
    #[arg(long, global = true, value_parser = parse_order)]
    order: Option<TermOrder>,
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the filtration and print the minimal SAGBI basis of every level
    Build { session: PathBuf },
    /// Subduction verdict and remainder; defaults to the session's generators
    Member { session: PathBuf, polys: Vec<String> },
    /// Codimension, missing monomials and conductor
    Codim { session: PathBuf },
    /// Spectrum points and clusters
    Spectrum { session: PathBuf },
    /// Basis of the derivation space at a point such as `1,0,-1`
    Derivations {
        session: PathBuf,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Check the structure theorem for derivations at a point
    VerifyMain {
        session: PathBuf,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Build Q_N(S) and check it against its ideal description and derivations
    Qn {
        /// points separated by `;`, coordinates by `,`
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long = "N")]
        power: u32,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Filtration(String),
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, passed: true }
    }

    fn report(r: &Report, mut json: Value, mut text: String) -> Self {
        json["report"] = r.to_json();
        text.push_str(&r.to_text());
        Output { text, json, passed: r.pass() }
    }
}

fn parse_order(s: &str) -> Result<TermOrder, String> {
    s.parse()
}

fn max_degree() -> Result<u32, Failure> {
    match std::env::var("SUBALG_MAX_DEGREE") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("SUBALG_MAX_DEGREE: not a degree: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn parse_point(s: &str, n: usize) -> Result<RPoint, Failure> {
    let mut pts = points_from_text::<Rational>(s).map_err(|e| Failure::Input(e.to_string()))?;
    if pts.len() != 1 || pts[0].nvars() != n {
        return Err(Failure::Input(format!("expected one point with {n} coordinates, got {s:?}")));
    }
    Ok(pts.remove(0))
}

fn build(n: usize, conds: &[Condition<Rational>], ord: TermOrder) -> Result<ConditionFiltration<Rational>, Failure> {
    build_from_conditions(n, conds, ord).map_err(|e| Failure::Filtration(e.to_string()))
}

fn load(path: &PathBuf, flag: Option<TermOrder>) -> Result<(Session, ConditionFiltration<Rational>), Failure> {
    let s = Session::load(path)?;
    let ord = s.order(flag)?;
    let f = build(s.n, &s.conditions()?, ord)?;
    Ok((s, f))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn cmd_build(path: &PathBuf, flag: Option<TermOrder>) -> Result<Output, Failure> {
    let (s, f) = load(path, flag)?;
    let mut levels = Vec::new();
    let mut text = format!("n = {}, order {}\n", f.nvars(), f.order());
    for (k, level) in f.levels().iter().enumerate() {
        let cond = condition_to_json(&level.condition);
        text.push_str(&format!("level {k}: {} on {}\n", cond, strings(level.algebra.gens()).join(", ")));
        levels.push(json!({"condition": cond, "basis": strings(level.algebra.gens())}));
    }
    let basis = strings(f.algebra().gens());
    let codim = codimension(&f).codim;
    text.push_str(&format!("basis: {}\ncodim: {codim}\n", basis.join(", ")));
    let out = json!({"n": f.nvars(), "order": f.order().to_string(), "levels": levels, "basis": basis, "codim": codim});
    let gens = s.generators()?;
    if gens.is_empty() {
        return Ok(Output::ok(text, out));
    }
    let mut r = Report::new();
    let outside: Vec<String> = gens
        .iter()
        .filter(|g| !f.algebra().is_member(g).unwrap_or(false))
        .map(|g| g.to_string())
        .collect();
    r.push("generators_are_members", outside.is_empty(), json!({"not_members": outside}));
    let cap = max_degree()?;
    let target = s.codim.unwrap_or(codim);
    let comp = complete_generators(f.nvars(), &gens, f.order(), cap, target).map_err(|e| Failure::Input(e.to_string()))?;
    let same = match comp.basis(f.nvars(), f.order()).map_err(|e| Failure::Input(e.to_string()))? {
        Some(b) if comp.certified => b.same_algebra(f.algebra()).map_err(|e| Failure::Input(e.to_string()))?,
        _ => false,
    };
    r.push(
        "generators_span_algebra",
        same,
        json!({"certified": comp.certified, "max_degree": cap, "target_codim": target}),
    );
    Ok(Output::report(&r, out, text))
}

fn cmd_member(path: &PathBuf, polys: &[String], flag: Option<TermOrder>) -> Result<Output, Failure> {
    let (s, f) = load(path, flag)?;
    let polys = if polys.is_empty() {
        s.generators()?
    } else {
        polys.iter().map(|p| parse_poly(p, s.n)).collect::<Result<_, _>>()?
    };
    let mut sub = f.algebra().subductor();
    let mut text = String::new();
    let mut rows = Vec::new();
    for p in &polys {
        let r = sub.subduce(p).map_err(|e| Failure::Input(e.to_string()))?;
        let member = r.remainder.is_constant();
        text.push_str(&format!("{p}: {member}, remainder {}\n", r.remainder));
        rows.push(json!({"poly": p.to_string(), "member": member, "remainder": r.remainder.to_string()}));
    }
    Ok(Output::ok(text, Value::Array(rows)))
}

fn cmd_codim(path: &PathBuf, flag: Option<TermOrder>) -> Result<Output, Failure> {
    let (_, f) = load(path, flag)?;
    let c = codimension(&f);
    let missing = strings(&c.missing);
    let text = format!("codim: {}\nmissing: {}\nconductor: {}\n", c.codim, missing.join(", "), c.conductor);
    Ok(Output::ok(text, json!({"codim": c.codim, "missing": missing, "conductor": c.conductor})))
}

fn cmd_spectrum(path: &PathBuf, flag: Option<TermOrder>) -> Result<Output, Failure> {
    let (_, f) = load(path, flag)?;
    let sp = spectrum(&f);
    let mut text = format!("points: {}\n", strings(&sp.points).join(" "));
    let mut clusters = Vec::new();
    for k in 0..sp.clusters.len() {
        let pts = sp.cluster_points(k);
        text.push_str(&format!("cluster {k}: {}\n", strings(&pts).join(" ")));
        clusters.push(Value::Array(pts.iter().map(point_to_json).collect()));
    }
    let points: Vec<Value> = sp.points.iter().map(point_to_json).collect();
    Ok(Output::ok(text, json!({"points": points, "clusters": clusters})))
}

fn cmd_derivations(path: &PathBuf, point: &str, flag: Option<TermOrder>) -> Result<Output, Failure> {
    let (s, f) = load(path, flag)?;
    let alpha = parse_point(point, s.n)?;
    let ds = derivation_space(&f, &alpha).map_err(|e| Failure::Input(e.to_string()))?;
    let mut text = format!("dim {} at {alpha}\n", ds.dim());
    let mut basis = Vec::new();
    for l in &ds.basis {
        let c = Condition::derivation(&alpha, l.clone()).map_err(|e| Failure::Input(e.to_string()))?;
        text.push_str(&format!("{l}\n"));
        basis.push(condition_to_json(&c));
    }
    let cluster: Vec<Value> = ds.cluster.iter().map(point_to_json).collect();
    Ok(Output::ok(
        text,
        json!({"point": point_to_json(&alpha), "dim": ds.dim(), "cluster": cluster, "ansatz_order": ds.ansatz_order, "basis": basis}),
    ))
}

fn cmd_verify_main(path: &PathBuf, point: &str, flag: Option<TermOrder>) -> Result<Output, Failure> {
    let (s, f) = load(path, flag)?;
    let alpha = parse_point(point, s.n)?;
    let r = verify_main_theorem(&f, &alpha).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Output::report(&r, json!({"point": point_to_json(&alpha)}), String::new()))
}

fn cmd_qn(points: &str, power: u32, flag: Option<TermOrder>) -> Result<Output, Failure> {
    let ord = flag.unwrap_or(TermOrder::DegRevLex);
    let pts = points_from_text::<Rational>(points).map_err(|e| Failure::Input(e.to_string()))?;
    let s = PointSet::new(pts).map_err(|e| Failure::Input(e.to_string()))?;
    let spec = QnSpec::new(s.clone(), power).map_err(|e| Failure::Input(e.to_string()))?;
    let q = qn_build(&spec, ord);
    let c = codimension(&q);
    let basis = strings(q.algebra().gens());
    let text = format!(
        "conditions: {}\ncodim: {}\nconductor: {}\nbasis: {}\n",
        spec.conditions.len(),
        c.codim,
        c.conductor,
        basis.join(", ")
    );
    let mut r = Report::new();
    let err = |e: subalg::Error| Failure::Input(e.to_string());
    r.extend_prefixed("qprime_eq_q", verify_qprime_eq_q(&s, power, ord).map_err(err)?);
    r.extend_prefixed("derivations", verify_d_of_q(&s, power, s.base(), ord).map_err(err)?);
    let out = json!({
        "points": s.points().iter().map(point_to_json).collect::<Vec<_>>(),
        "N": power,
        "conditions": spec.conditions.iter().map(condition_to_json).collect::<Vec<_>>(),
        "codim": c.codim,
        "conductor": c.conductor,
        "basis": basis,
    });
    Ok(Output::report(&r, out, text))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let o = cli.order;
    match &cli.command {
        Command::Build { session } => cmd_build(session, o),
        Command::Member { session, polys } => cmd_member(session, polys, o),
        Command::Codim { session } => cmd_codim(session, o),
        Command::Spectrum { session } => cmd_spectrum(session, o),
        Command::Derivations { session, point } => cmd_derivations(session, point, o),
        Command::VerifyMain { session, point } => cmd_verify_main(session, point, o),
        Command::Qn { points, power } => cmd_qn(points, *power, o),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Filtration(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
