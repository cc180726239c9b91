use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use clustercat::character::{check_exchange_on, check_multiplication_on, cluster_character, window};
use clustercat::oracle::{run_oracle, DEFAULT_TRUNCATION, MIN_TRUNCATION};
use clustercat::representations::{
    coindex_of_list, enumerate_fp_submodules, index_of_list, module_of, K0Element,
};
use clustercat::series::{poly_display, LaurentPoly};
use clustercat::{
    exchange_triangles, ext1_case, ext1_dim, hom_dim, shift, validate_ct, Arc, CtVertex, Surface, Tilting,
    TiltingSpec,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "clustercat", version, about = "Arcs, cluster-tilting subcategories and cluster characters")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// dim Hom(X, Y[1])
    Ext(ArcPair),
    /// dim Hom(X, Y)
    Hom(ArcPair),
    /// Exchange triangles attached to a nonzero extension
    Triangles(ArcPair),
    /// Validate a tilting spec; exit 0 accepted, 1 rejected, 2 malformed
    CheckCt {
        #[arg(short, long = "tilting", value_name = "FILE")]
        tilting: Option<PathBuf>,
        #[arg(value_name = "FILE", conflicts_with = "tilting")]
        file: Option<PathBuf>,
    },
    /// Dimension vector of Hom(-, M)
    Module(ObjectArgs),
    /// Finitely presented submodules of Hom(-, M) as families
    Submodules(ObjectArgs),
    Index(ObjectArgs),
    Coindex(ObjectArgs),
    /// Cluster character as a formal series
    Character(CharacterArgs),
    /// Compare X(M + N) with X(M) X(N) on windows
    CheckMult(PairArgs),
    /// Compare X(M) X(N) with the exchange right-hand side on windows
    CheckExchange(PairArgs),
    /// Cross-check the engine against brute force on a truncation
    Oracle(OracleArgs),
}

#[derive(Args)]
struct ArcPair {
    #[arg(short, long, value_name = "FILE")]
    surface: PathBuf,
    x: String,
    y: String,
}

#[derive(Args)]
struct ObjectArgs {
    #[arg(short, long, value_name = "FILE")]
    tilting: PathBuf,
    /// Arcs joined by `+`; `p0:0-a0[1]` is a shifted arc.
    object: String,
}

#[derive(Args)]
struct CharacterArgs {
    #[arg(short, long, value_name = "FILE")]
    tilting: PathBuf,
    object: String,
    /// Expand on these vertices, e.g. `1,2,3,z`.
    #[arg(long, visible_alias = "expand", value_name = "CSV")]
    window: Option<String>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(short, long, value_name = "FILE")]
    tilting: PathBuf,
    m: String,
    n: String,
    /// Also check on these vertices; the radius 8 and 16 windows are always checked.
    #[arg(long, value_name = "CSV")]
    window: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(short, long, value_name = "FILE")]
    tilting: PathBuf,
    object: String,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncate: u64,
}

/// Exit code for unreadable or malformed input.
const MALFORMED: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(MALFORMED)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A surface file is `{"acc": r}`, or any file with a `surface` field such
/// as a tilting spec.
fn load_surface(path: &Path) -> Result<Surface> {
    let v: Value = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let s = v.get("surface").unwrap_or(&v);
    let surface: Surface = serde_json::from_value(s.clone()).with_context(|| format!("{}: bad surface", path.display()))?;
    Ok(Surface::new(surface.r)?)
}

fn load_tilting(path: &Path) -> Result<Tilting> {
    Tilting::from_json(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn parse_arc(s: Surface, text: &str) -> Result<Arc> {
    let a: Arc = text.parse()?;
    Ok(s.check_arc(a)?)
}

/// `A + B[1] + ...`: arcs with optional shifts.
fn parse_object(s: Surface, text: &str) -> Result<Vec<Arc>> {
    let mut out = Vec::new();
    for part in text.split('+').map(str::trim).filter(|p| !p.is_empty()) {
        let (body, k) = match part.strip_suffix(']').and_then(|p| p.rsplit_once('[')) {
            Some((body, k)) => (body, k.trim().parse::<i64>().with_context(|| format!("bad shift in `{part}`"))?),
            None => (part, 0),
        };
        out.push(shift(parse_arc(s, body)?, k));
    }
    Ok(out)
}

fn parse_window(t: &Tilting, csv: &str) -> Result<BTreeSet<CtVertex>> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok(t.parse_vertex(s)?))
        .collect()
}

fn windows(t: &Tilting, csv: &Option<String>) -> Result<Vec<(String, BTreeSet<CtVertex>)>> {
    let mut out = Vec::new();
    if let Some(csv) = csv {
        out.push(("window".to_string(), parse_window(t, csv)?));
    }
    out.extend([8, 16].into_iter().map(|r| (format!("radius {r}"), window(t, r))));
    Ok(out)
}

fn k0_json(k: &K0Element, t: &Tilting) -> Value {
    Value::Object(k.0.iter().map(|(&v, &c)| (t.label(v), json!(c))).collect())
}

fn poly_json(p: &LaurentPoly, t: &Tilting) -> Value {
    Value::Array(
        p.iter()
            .map(|(m, &c)| json!({"monomial": m.display(t).to_string(), "coeff": c}))
            .collect(),
    )
}

fn emit(cli: &Cli, value: Value, text: String) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json output"));
    } else {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Ext(p) | Command::Hom(p) => {
            let s = load_surface(&p.surface)?;
            let (x, y) = (parse_arc(s, &p.x)?, parse_arc(s, &p.y)?);
            let is_ext = matches!(cli.command, Command::Ext(_));
            let (dim, case) = if is_ext {
                (ext1_dim(x, y), ext1_case(x, y))
            } else {
                (hom_dim(x, y), ext1_case(x, shift(y, -1)))
            };
            let text = if cli.verbose > 0 { format!("{dim} (case: {})", case.name()) } else { dim.to_string() };
            emit(cli, json!({"x": x, "y": y, "dim": dim, "case": case.name()}), text);
            Ok(0)
        }
        Command::Triangles(p) => {
            let s = load_surface(&p.surface)?;
            let (x, y) = (parse_arc(s, &p.x)?, parse_arc(s, &p.y)?);
            let tris = exchange_triangles(x, y)?;
            let lines: Vec<String> = tris
                .iter()
                .map(|tr| {
                    let mid: Vec<String> = tr.middle.iter().map(Arc::to_string).collect();
                    let mid = if mid.is_empty() { "0".to_string() } else { mid.join(" + ") };
                    format!("{} -> {} -> {} -> {}[1]", tr.start, mid, tr.end, tr.start)
                })
                .collect();
            emit(cli, json!(tris), lines.join("\n"));
            Ok(0)
        }
        Command::CheckCt { tilting, file } => {
            let Some(path) = tilting.as_ref().or(file.as_ref()) else {
                bail!("check-ct needs a tilting file");
            };
            let spec = TiltingSpec::from_json(&read(path)?).with_context(|| format!("loading {}", path.display()))?;
            let rep = validate_ct(&spec);
            let mut lines = vec![if rep.accepted() { "accepted" } else { "rejected" }.to_string()];
            for v in &rep.violations {
                let w: Vec<String> = v.witness.iter().map(Arc::to_string).collect();
                lines.push(format!("{:?}: {} (witness: {})", v.kind, v.message, w.join(", ")));
            }
            emit(cli, json!({"accepted": rep.accepted(), "violations": rep.violations}), lines.join("\n"));
            Ok(if rep.accepted() { 0 } else { 1 })
        }
        Command::Module(o) => {
            let t = load_tilting(&o.tilting)?;
            let m = module_of(&t, &parse_object(t.surface(), &o.object)?)?;
            let text = m.dims.display(&t).to_string();
            emit(cli, json!({"object": m.origin, "dims": text}), text);
            Ok(0)
        }
        Command::Submodules(o) => {
            let t = load_tilting(&o.tilting)?;
            let arcs = parse_object(t.surface(), &o.object)?;
            let [a] = arcs[..] else {
                bail!("submodules takes a single arc");
            };
            module_of(&t, &arcs)?;
            let fams = enumerate_fp_submodules(&t, a)?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for (k, f) in fams.families.iter().enumerate() {
                let gens: Vec<String> = f.generators.iter().map(|&g| t.label(g)).collect();
                let params: Vec<String> = f.params.iter().map(|p| format!("{}(n), n >= {}", p.tail.name(), p.from)).collect();
                let mut desc = format!("<{}>", gens.join(", "));
                if !params.is_empty() {
                    desc = format!("{desc} + <{}>", params.join("; "));
                }
                lines.push(format!("{k}: {desc}"));
                items.push(json!({"generators": gens, "params": params}));
            }
            emit(cli, json!({"object": a, "families": items}), lines.join("\n"));
            Ok(0)
        }
        Command::Index(o) | Command::Coindex(o) => {
            let t = load_tilting(&o.tilting)?;
            let arcs = parse_object(t.surface(), &o.object)?;
            let k = if matches!(cli.command, Command::Index(_)) {
                index_of_list(&t, &arcs)?
            } else {
                coindex_of_list(&t, &arcs)?
            };
            emit(cli, json!({"object": arcs, "value": k0_json(&k, &t)}), k.display(&t).to_string());
            Ok(0)
        }
        Command::Character(c) => {
            let t = load_tilting(&c.tilting)?;
            let arcs = parse_object(t.surface(), &c.object)?;
            let x = cluster_character(&t, &arcs)?;
            match &c.window {
                Some(csv) => {
                    let p = x.expand(&t, &parse_window(&t, csv)?)?;
                    emit(cli, json!({"object": arcs, "expansion": poly_json(&p, &t)}), poly_display(&p, &t));
                }
                None => {
                    let text = x.display(&t).to_string();
                    emit(cli, json!({"object": arcs, "character": text, "exact": x.as_series().is_some()}), text);
                }
            }
            Ok(0)
        }
        Command::CheckMult(p) => {
            let t = load_tilting(&p.tilting)?;
            let (m, n) = (parse_object(t.surface(), &p.m)?, parse_object(t.surface(), &p.n)?);
            let mut ok = true;
            let (mut lines, mut items) = (Vec::new(), Vec::new());
            for (name, w) in windows(&t, &p.window)? {
                let c = check_multiplication_on(&t, &m, &n, &w)?;
                ok &= c.holds;
                let how = if c.exact_product { "exact product" } else { "window product" };
                lines.push(format!("{name}: {} ({how}, {} monomials)", verdict(c.holds), c.direct.len()));
                if cli.verbose > 0 {
                    lines.push(format!("  X(M+N) = {}", poly_display(&c.direct, &t)));
                    lines.push(format!("  X(M)X(N) = {}", poly_display(&c.product, &t)));
                }
                items.push(json!({"window": name, "holds": c.holds, "exact_product": c.exact_product,
                    "direct": poly_json(&c.direct, &t), "product": poly_json(&c.product, &t)}));
            }
            emit(cli, json!({"holds": ok, "windows": items}), lines.join("\n"));
            Ok(if ok { 0 } else { 1 })
        }
        Command::CheckExchange(p) => {
            let t = load_tilting(&p.tilting)?;
            let (m, n) = (parse_single(&t, &p.m)?, parse_single(&t, &p.n)?);
            let mut ok = true;
            let (mut lines, mut items) = (Vec::new(), Vec::new());
            for (name, w) in windows(&t, &p.window)? {
                let c = check_exchange_on(&t, m, n, &w)?;
                ok &= c.holds;
                if lines.is_empty() {
                    for tr in &c.triangles {
                        let mid: Vec<String> = tr.middle.iter().map(Arc::to_string).collect();
                        lines.push(format!("triangle: {} -> [{}] -> {}", tr.start, mid.join(", "), tr.end));
                    }
                    if !c.within_hypotheses {
                        lines.push("outside theorem hypotheses: a limit arc is involved".into());
                    }
                }
                lines.push(format!("{name}: {}", verdict(c.holds)));
                if cli.verbose > 0 {
                    lines.push(format!("  lhs = {}", poly_display(&c.lhs, &t)));
                    lines.push(format!("  rhs = {}", poly_display(&c.rhs, &t)));
                }
                items.push(json!({"window": name, "holds": c.holds, "within_hypotheses": c.within_hypotheses,
                    "triangles": c.triangles, "lhs": poly_json(&c.lhs, &t), "rhs": poly_json(&c.rhs, &t)}));
            }
            emit(cli, json!({"holds": ok, "windows": items}), lines.join("\n"));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Oracle(o) => {
            if o.truncate < MIN_TRUNCATION {
                bail!("truncation length must be at least {MIN_TRUNCATION}");
            }
            let t = load_tilting(&o.tilting)?;
            let a = parse_single(&t, &o.object)?;
            let rep = run_oracle(&t, a, o.truncate)?;
            let mut lines: Vec<String> = rep
                .checks
                .iter()
                .map(|c| format!("{} {}: {}", verdict_word(c.passed), c.name, c.detail))
                .collect();
            lines.push(verdict_word(rep.passed()).to_string());
            emit(cli, json!(rep), lines.join("\n"));
            Ok(if rep.passed() { 0 } else { 1 })
        }
    }
}

fn parse_single(t: &Tilting, text: &str) -> Result<Arc> {
    match parse_object(t.surface(), text)?[..] {
        [a] => Ok(a),
        _ => bail!("expected a single arc, got `{text}`"),
    }
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn verdict_word(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}
