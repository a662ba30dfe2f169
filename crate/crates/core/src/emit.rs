//! JSON, DOT and TikZ renderings shared by the CLI and the Python bindings.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::brauer::{b_cycles, BrauerRelation, Polygon};
use crate::dga::{AlgebraPresentation, GradedQuiver};
use crate::dynkin::AugmentedQuiver;

/// A quiver reduced to names and optionally labelled arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub vertices: Vec<String>,
    pub arrows: Vec<(usize, usize, Option<String>)>,
}

impl Drawing {
    pub fn from_graded(q: &GradedQuiver) -> Self {
        Drawing {
            vertices: q.vertices.iter().map(|v| v.to_string()).collect(),
            arrows: q
                .arrows
                .iter()
                .map(|a| (a.source, a.target, Some(a.degree.to_string())))
                .collect(),
        }
    }

    pub fn from_augmented<V: std::fmt::Display>(q: &AugmentedQuiver<V>) -> Self {
        Drawing {
            vertices: q.vertices.iter().map(|v| v.to_string()).collect(),
            arrows: q.arrows.iter().map(|&(s, t)| (s, t, None)).collect(),
        }
    }

    pub fn from_named(vertices: Vec<String>, arrows: &[(usize, usize)]) -> Self {
        Drawing {
            vertices,
            arrows: arrows.iter().map(|&(s, t)| (s, t, None)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "arrows": self.arrows.iter().map(|(s, t, l)| match l {
                Some(l) => json!({"source": s, "target": t, "label": l}),
                None => json!({"source": s, "target": t}),
            }).collect::<Vec<_>>(),
        })
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(name: &str, g: &Drawing) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    out.push_str("  node [shape=plaintext];\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label={}];", quote(v));
    }
    for (s, t, l) in &g.arrows {
        match l {
            Some(l) => {
                let _ = writeln!(out, "  v{s} -> v{t} [label={}];", quote(l));
            }
            None => {
                let _ = writeln!(out, "  v{s} -> v{t};");
            }
        }
    }
    out.push_str("}\n");
    out
}

fn tex_escape(s: &str) -> String {
    s.replace('[', "{[}").replace(']', "{]}")
}

/// Quiver drawn with vertices on a circle.
pub fn to_tikz(g: &Drawing) -> String {
    let n = g.vertices.len().max(1);
    let radius = 1.0 + 0.35 * n as f64;
    let mut out = String::from("\\begin{tikzpicture}[>=stealth]\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let angle = 90.0 - 360.0 * i as f64 / n as f64;
        let _ = writeln!(
            out,
            "  \\node (v{i}) at ({angle:.1}:{radius:.2}) {{${}$}};",
            tex_escape(v)
        );
    }
    for (s, t, l) in &g.arrows {
        match l {
            Some(l) => {
                let _ = writeln!(
                    out,
                    "  \\draw[->] (v{s}) to[bend left=10] node[midway,fill=white,font=\\scriptsize] {{${l}$}} (v{t});"
                );
            }
            None => {
                let _ = writeln!(out, "  \\draw[->] (v{s}) to[bend left=10] (v{t});");
            }
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Polygon with vertex 1 at angle 0 and clockwise numbering.
pub fn polygon_tikz(p: &Polygon, b: &BrauerRelation) -> String {
    let mut out = String::from("\\begin{tikzpicture}\n");
    let n = p.size as f64;
    for v in 1..=p.size {
        let angle = -360.0 * (v - 1) as f64 / n;
        let _ = writeln!(out, "  \\coordinate (p{v}) at ({angle:.2}:2);");
        let _ = writeln!(out, "  \\node at ({angle:.2}:2.35) {{\\scriptsize {v}}};");
    }
    let path: Vec<String> = (1..=p.size).map(|v| format!("(p{v})")).collect();
    let _ = writeln!(out, "  \\draw {} -- cycle;", path.join(" -- "));
    for x in &b.diagonals {
        let _ = writeln!(out, "  \\draw[thick] (p{}) -- (p{});", x.a, x.b);
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Cycles of a relation as nested label lists.
pub fn cycles_json(b: &BrauerRelation, p: &Polygon) -> crate::Result<Value> {
    let mut v = Vec::new();
    for c in b_cycles(b, p) {
        let deltas = c.deltas(p)?;
        v.push(json!({
            "members": c.members.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "deltas": deltas,
        }));
    }
    Ok(Value::Array(v))
}

pub fn quiver_json(q: &GradedQuiver) -> Value {
    json!({
        "vertices": q.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "arrows": q.arrows.iter().map(|a| json!({
            "source": a.source, "target": a.target, "degree": a.degree
        })).collect::<Vec<_>>(),
        "cycles": q.cycles,
    })
}

pub fn presentation_json(p: &AlgebraPresentation) -> Value {
    let mut doc = quiver_json(&p.quiver);
    doc["relations"] = Value::Array(
        p.relations
            .iter()
            .map(|r| {
                json!({
                    "kind": format!("{:?}", r.kind),
                    "terms": r.terms.iter().map(|t| json!({"coeff": t.coeff, "path": t.path})).collect::<Vec<_>>(),
                })
            })
            .collect(),
    );
    doc
}
