use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cybrauer::brauer::{
    b_cycles, brauer_rotation_classes, count_brauer, count_formula, enumerate_brauer, infer_d,
    is_maximal_brauer, theta_map, BrauerRelation, Budget, Polygon,
};
use cybrauer::config::{ConfigSpace, Strategy};
use cybrauer::dga::{build_presentation, build_quiver, predicted_cm_quiver};
use cybrauer::dynkin::{DynkinDiagram, Family};
use cybrauer::emit::{self, Drawing};
use cybrauer::truncpoly::TruncPoly;
use cybrauer::Error;

const DEFAULT_MAX_STATES: u64 = 2_000_000_000;

#[derive(Parser)]
#[command(name = "cyw", version, about = "Calabi-Yau configurations, Brauer relations and AR quivers")]
struct Cli {
    /// Worker threads for sharded enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Configurations on ℤΔ/𝕊[d].
    Config {
        #[arg(value_enum)]
        action: ConfigAction,
        #[command(flatten)]
        args: ConfigArgs,
    },
    /// Maximal d-Brauer relations on the N-gon.
    Brauer {
        #[arg(value_enum)]
        action: BrauerAction,
        #[command(flatten)]
        args: BrauerArgs,
    },
    /// Quivers: graded Brauer quiver, predicted CM quiver, truncated polynomial AR quiver.
    Quiver {
        #[arg(value_enum)]
        action: QuiverAction,
        #[command(flatten)]
        args: BrauerArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigAction {
    Enumerate,
    Check,
    Classes,
}

#[derive(Clone, Copy, ValueEnum)]
enum BrauerAction {
    Enumerate,
    Count,
    Classes,
    Cycles,
    Theta,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuiverAction {
    Brauer,
    CmPredict,
    Truncpoly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Tikz,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, default_value = "A")]
    diagram: String,
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// "i-j,…" labels (type A) or "(p,q),…" vertices.
    #[arg(long)]
    set: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BrauerArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Comma-separated diagonals, e.g. "1-6,2-4,8-10".
    #[arg(long)]
    relation: Option<String>,
    /// Comma-separated polygon vertices, e.g. "1,4".
    #[arg(long)]
    vertices: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Lib(Error),
    /// Output was produced but the input failed a validity test.
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Lib(Error::Parse(msg.into()))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn render(command: &str, params: Value, result: Value) -> String {
    let doc = json!({"command": command, "params": params, "result": result});
    let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
    s.push('\n');
    s
}

fn unsupported(f: Format) -> Failure {
    let name = match f {
        Format::Json => "json",
        Format::Text => "text",
        Format::Dot => "dot",
        Format::Tikz => "tikz",
    };
    usage(format!("format {name} is not available for this command"))
}

fn budget() -> Budget {
    Budget::from_env(DEFAULT_MAX_STATES)
}

fn config_cmd(action: ConfigAction, a: &ConfigArgs) -> Out {
    let family: Family = a.diagram.parse()?;
    let (rank, d) = match (family, a.rank, a.d, &a.set) {
        (_, Some(r), Some(d), _) => (r, d),
        (Family::A, None, None, Some(set)) => {
            let b: BrauerRelation = set.parse()?;
            let d = infer_d(&b).ok_or_else(|| Failure::Invalid(format!("{set} is not a maximal relation for any d")))?;
            (b.len() as u32, d)
        }
        _ => return Err(usage("--rank and --d are required")),
    };
    let diagram = DynkinDiagram::new(family, rank)?;
    let space = ConfigSpace::new(diagram, d)?;
    let params = json!({"diagram": diagram.code(), "d": d});
    if matches!(a.format, Format::Dot | Format::Tikz) {
        return Err(unsupported(a.format));
    }
    let text = a.format == Format::Text;
    let strategy = if family == Family::A {
        Strategy::Geometric
    } else {
        Strategy::HomTable
    };
    match action {
        ConfigAction::Enumerate => {
            let all = space.enumerate(strategy, &budget())?;
            if text {
                let mut s = format!("{} configurations\n", all.len());
                for c in &all {
                    s.push_str(&format!("{c}\n"));
                }
                return Ok(s);
            }
            let list: Vec<Value> = all.iter().map(|c| json!(c.serialize_items())).collect();
            Ok(render(
                "config enumerate",
                params,
                json!({"count": all.len(), "configurations": list}),
            ))
        }
        ConfigAction::Check => {
            let set = need(a.set.as_deref(), "set")?;
            let idx = space.parse_set(set)?;
            let pre = space.is_preconfiguration(&idx);
            let cov = space.covers(&idx);
            let items = space.make(&idx).serialize_items();
            let out = if text {
                format!("{}: {}\n", items.join(","), if pre && cov { "valid" } else { "invalid" })
            } else {
                render(
                    "config check",
                    params,
                    json!({"set": items, "valid": pre && cov, "preconfiguration": pre, "covers": cov}),
                )
            };
            if pre && cov {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Invalid(format!("{set} is not a configuration")))
            }
        }
        ConfigAction::Classes => {
            let all = space.enumerate(strategy, &budget())?;
            let classes = space.rotation_classes(&all)?;
            if text {
                let mut s = format!("{} classes\n", classes.len());
                for c in &classes {
                    s.push_str(&format!("{} (size {})\n", c[0], c.len()));
                }
                return Ok(s);
            }
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "representative": c[0].serialize_items(),
                        "size": c.len(),
                        "members": c.iter().map(|x| x.serialize_items()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(render("config classes", params, json!({"count": classes.len(), "classes": list})))
        }
    }
}

fn relation_and_polygon(a: &BrauerArgs) -> Result<(BrauerRelation, Polygon), Failure> {
    let b: BrauerRelation = need(a.relation.as_deref(), "relation")?.parse()?;
    let d = match a.d {
        Some(d) => d,
        None => infer_d(&b).ok_or_else(|| Failure::Invalid(format!("{b} is not a maximal relation for any d")))?,
    };
    let n = a.n.unwrap_or(b.len() as u32);
    let p = Polygon::new(n, d)?;
    if !is_maximal_brauer(&b, &p) {
        return Err(Failure::Invalid(format!("{b} is not a maximal {d}-Brauer relation on the {}-gon", p.size)));
    }
    Ok((b, p))
}

fn polygon(a: &BrauerArgs) -> Result<Polygon, Failure> {
    Ok(Polygon::new(need(a.n, "n")?, need(a.d, "d")?)?)
}

fn brauer_cmd(action: BrauerAction, a: &BrauerArgs) -> Out {
    let text = a.format == Format::Text;
    let graphic_ok = matches!(action, BrauerAction::Cycles | BrauerAction::Theta);
    if matches!(a.format, Format::Dot) || (a.format == Format::Tikz && !graphic_ok) {
        return Err(unsupported(a.format));
    }
    match action {
        BrauerAction::Enumerate => {
            let p = polygon(a)?;
            let all = enumerate_brauer(&p, &budget())?;
            if text {
                let mut s = format!("{} relations\n", all.len());
                for b in &all {
                    s.push_str(&format!("{b}\n"));
                }
                return Ok(s);
            }
            let list: Vec<Value> = all
                .iter()
                .map(|b| json!(b.diagonals.iter().map(|x| [x.a, x.b]).collect::<Vec<_>>()))
                .collect();
            Ok(render(
                "brauer enumerate",
                json!({"n": p.n, "d": p.d, "N": p.size}),
                json!({"count": all.len(), "relations": list}),
            ))
        }
        BrauerAction::Count => {
            let p = polygon(a)?;
            let formula = count_formula(p.n, p.d)?;
            let counted = count_brauer(&p, &budget())?;
            let agree = formula == counted as u128;
            if text {
                return Ok(format!("formula {formula}\nenumerated {counted}\nagree {agree}\n"));
            }
            Ok(render(
                "brauer count",
                json!({"n": p.n, "d": p.d, "N": p.size}),
                json!({"formula": formula.to_string(), "enumerated": counted, "agree": agree}),
            ))
        }
        BrauerAction::Classes => {
            let p = polygon(a)?;
            let all = enumerate_brauer(&p, &budget())?;
            let classes = brauer_rotation_classes(&all, &p);
            if text {
                let mut s = format!("{} classes\n", classes.len());
                for c in &classes {
                    s.push_str(&format!("{} (size {})\n", c[0], c.len()));
                }
                return Ok(s);
            }
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "representative": c[0].to_string(),
                        "size": c.len(),
                        "members": c.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(render(
                "brauer classes",
                json!({"n": p.n, "d": p.d, "N": p.size}),
                json!({"count": classes.len(), "classes": list}),
            ))
        }
        BrauerAction::Cycles => {
            let (b, p) = relation_and_polygon(a)?;
            match a.format {
                Format::Tikz => Ok(emit::polygon_tikz(&p, &b)),
                Format::Text => {
                    let mut s = String::new();
                    for c in b_cycles(&b, &p) {
                        let m: Vec<String> = c.members.iter().map(|x| x.to_string()).collect();
                        let ds: Vec<String> = c.deltas(&p)?.iter().map(|x| x.to_string()).collect();
                        s.push_str(&format!("({}) deltas ({})\n", m.join(" "), ds.join(" ")));
                    }
                    Ok(s)
                }
                _ => Ok(render(
                    "brauer cycles",
                    json!({"n": p.n, "d": p.d, "N": p.size, "relation": b.to_string()}),
                    json!({"cycles": emit::cycles_json(&b, &p)?}),
                )),
            }
        }
        BrauerAction::Theta => {
            let raw = need(a.vertices.as_deref(), "vertices")?;
            let vs = raw
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| usage(format!("vertex {s:?}"))))
                .collect::<Result<BTreeSet<u32>, Failure>>()?;
            let n = a.n.unwrap_or(vs.len() as u32);
            let p = Polygon::new(n, need(a.d, "d")?)?;
            let b = theta_map(&vs, &p)?;
            let maximal = is_maximal_brauer(&b, &p);
            match a.format {
                Format::Tikz => Ok(emit::polygon_tikz(&p, &b)),
                Format::Text => Ok(format!("{b}\n")),
                _ => Ok(render(
                    "brauer theta",
                    json!({"n": p.n, "d": p.d, "N": p.size, "vertices": vs}),
                    json!({"relation": b.to_string(), "maximal": maximal}),
                )),
            }
        }
    }
}

fn drawing_out(command: &str, params: Value, g: &Drawing, f: Format, extra: Value) -> String {
    match f {
        Format::Dot => emit::to_dot(command, g),
        Format::Tikz => emit::to_tikz(g),
        Format::Text => {
            let mut s = String::new();
            for (u, v, l) in &g.arrows {
                match l {
                    Some(l) => s.push_str(&format!("{} -> {} [{}]\n", g.vertices[*u], g.vertices[*v], l)),
                    None => s.push_str(&format!("{} -> {}\n", g.vertices[*u], g.vertices[*v])),
                }
            }
            s
        }
        Format::Json => {
            let mut result = g.to_json();
            if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
                r.extend(e);
            }
            render(command, params, result)
        }
    }
}

fn quiver_cmd(action: QuiverAction, a: &BrauerArgs) -> Out {
    match action {
        QuiverAction::Brauer => {
            let (b, p) = relation_and_polygon(a)?;
            let q = build_quiver(&b, &p)?;
            let params = json!({"n": p.n, "d": p.d, "N": p.size, "relation": b.to_string()});
            match a.format {
                Format::Json => Ok(render(
                    "quiver brauer",
                    params,
                    emit::presentation_json(&build_presentation(&q)),
                )),
                f => Ok(drawing_out("quiver brauer", params, &Drawing::from_graded(&q), f, json!({}))),
            }
        }
        QuiverAction::CmPredict => {
            let (b, p) = relation_and_polygon(a)?;
            let aug = predicted_cm_quiver(&b, &p)?;
            let projectives: Vec<String> = aug
                .projectives
                .values()
                .map(|&i| aug.vertices[i].to_string())
                .collect();
            Ok(drawing_out(
                "quiver cm-predict",
                json!({"n": p.n, "d": p.d, "N": p.size, "relation": b.to_string()}),
                &Drawing::from_augmented(&aug),
                a.format,
                json!({"projectives": projectives}),
            ))
        }
        QuiverAction::Truncpoly => {
            let tp = TruncPoly::new(need(a.n, "n")?, need(a.d, "d")?)?;
            let (names, arrows) = tp.named_cm_quiver()?;
            let objects: Vec<String> = tp.cm_indecomposables().iter().map(|o| o.to_string()).collect();
            Ok(drawing_out(
                "quiver truncpoly",
                json!({"n": tp.n, "d": tp.d}),
                &Drawing::from_named(names, &arrows),
                a.format,
                json!({"objects": objects}),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let out = match &cli.command {
        Command::Config { action, args } => config_cmd(*action, args),
        Command::Brauer { action, args } => brauer_cmd(*action, args),
        Command::Quiver { action, args } => quiver_cmd(*action, args),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, message, status) = match f {
                Failure::Lib(e) => {
                    let status = if matches!(e, Error::SizeLimit(_)) { 3 } else { 2 };
                    (e.code().to_string(), e.to_string(), status)
                }
                Failure::Invalid(m) => ("validation_failure".to_string(), m, 2),
            };
            let datum: Vec<String> = std::env::args().skip(1).collect();
            let err = json!({"error": {"code": code, "message": message, "datum": datum.join(" ")}});
            eprintln!("{err}");
            ExitCode::from(status)
        }
    }
}
