use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn cyw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyw"))
        .args(args)
        .env_remove("CYW_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn cyw_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyw"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let o = cyw(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let errs: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errs.is_empty(), "{args:?} violates the schema: {errs:?}");
    v
}

// Recursive-descent check of the DOT grammar subset: graph, node, edge and attribute statements.
mod dot {
    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Id(String),
        Punct(char),
        Edge(&'static str),
    }

    fn lex(s: &str) -> Result<Vec<Tok>, String> {
        let c: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut out = Vec::new();
        while i < c.len() {
            let ch = c[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch == '"' {
                let mut j = i + 1;
                let mut val = String::new();
                while j < c.len() && c[j] != '"' {
                    if c[j] == '\\' && j + 1 < c.len() {
                        val.push(c[j + 1]);
                        j += 2;
                    } else {
                        val.push(c[j]);
                        j += 1;
                    }
                }
                if j >= c.len() {
                    return Err("unterminated string".into());
                }
                out.push(Tok::Id(val));
                i = j + 1;
            } else if ch == '-' && c.get(i + 1) == Some(&'>') {
                out.push(Tok::Edge("->"));
                i += 2;
            } else if ch == '-' && c.get(i + 1) == Some(&'-') {
                out.push(Tok::Edge("--"));
                i += 2;
            } else if "{}[];,=".contains(ch) {
                out.push(Tok::Punct(ch));
                i += 1;
            } else if ch.is_alphanumeric() || ch == '_' || ch == '-' || ch == '.' {
                let mut j = i;
                while j < c.len() && (c[j].is_alphanumeric() || c[j] == '_' || c[j] == '.' || (j == i && c[j] == '-')) {
                    j += 1;
                }
                let word: String = c[i..j].iter().collect();
                let numeral = word.trim_start_matches('-').chars().all(|x| x.is_ascii_digit() || x == '.');
                let ident = word.chars().next().is_some_and(|x| x.is_alphabetic() || x == '_')
                    && word.chars().all(|x| x.is_alphanumeric() || x == '_');
                if !numeral && !ident {
                    return Err(format!("bad id {word}"));
                }
                out.push(Tok::Id(word));
                i = j;
            } else {
                return Err(format!("unexpected {ch:?}"));
            }
        }
        Ok(out)
    }

    struct P {
        t: Vec<Tok>,
        i: usize,
        directed: bool,
        nodes: std::collections::BTreeSet<String>,
        edges: Vec<(String, String)>,
    }

    impl P {
        fn peek(&self) -> Option<&Tok> {
            self.t.get(self.i)
        }
        fn eat(&mut self, t: &Tok) -> bool {
            if self.peek() == Some(t) {
                self.i += 1;
                true
            } else {
                false
            }
        }
        fn id(&mut self) -> Result<String, String> {
            match self.t.get(self.i).cloned() {
                Some(Tok::Id(s)) => {
                    self.i += 1;
                    Ok(s)
                }
                other => Err(format!("expected id, got {other:?}")),
            }
        }
        fn attr_list(&mut self) -> Result<(), String> {
            while self.eat(&Tok::Punct('[')) {
                while !self.eat(&Tok::Punct(']')) {
                    self.id()?;
                    if !self.eat(&Tok::Punct('=')) {
                        return Err("expected =".into());
                    }
                    self.id()?;
                    let _ = self.eat(&Tok::Punct(',')) || self.eat(&Tok::Punct(';'));
                }
            }
            Ok(())
        }
        fn stmt(&mut self) -> Result<(), String> {
            let first = self.id()?;
            if ["graph", "node", "edge"].contains(&first.as_str()) {
                return self.attr_list();
            }
            if self.eat(&Tok::Punct('=')) {
                self.id()?;
                return Ok(());
            }
            let op = if self.directed { Tok::Edge("->") } else { Tok::Edge("--") };
            let mut prev = first.clone();
            let mut is_edge = false;
            while self.eat(&op) {
                let next = self.id()?;
                self.edges.push((prev, next.clone()));
                prev = next;
                is_edge = true;
            }
            if matches!(self.peek(), Some(Tok::Edge(_))) {
                return Err("wrong edge operator".into());
            }
            if !is_edge {
                self.nodes.insert(first);
            }
            self.attr_list()
        }
    }

    pub type Graph = (std::collections::BTreeSet<String>, Vec<(String, String)>);

    /// Returns the declared nodes and the edges.
    pub fn parse(s: &str) -> Result<Graph, String> {
        let t = lex(s)?;
        let mut p = P { t, i: 0, directed: false, nodes: Default::default(), edges: Vec::new() };
        if p.peek() == Some(&Tok::Id("strict".into())) {
            p.i += 1;
        }
        match p.id()?.as_str() {
            "digraph" => p.directed = true,
            "graph" => {}
            other => return Err(format!("expected graph keyword, got {other}")),
        }
        if matches!(p.peek(), Some(Tok::Id(_))) {
            p.id()?;
        }
        if !p.eat(&Tok::Punct('{')) {
            return Err("expected {".into());
        }
        loop {
            if p.eat(&Tok::Punct('}')) {
                break;
            }
            if p.peek().is_none() {
                return Err("unclosed graph body".into());
            }
            p.stmt()?;
            let _ = p.eat(&Tok::Punct(';'));
        }
        if p.i != p.t.len() {
            return Err("trailing tokens".into());
        }
        Ok((p.nodes, p.edges))
    }
}

// TikZ checks: one environment, balanced braces and math, ';'-terminated commands,
// and every path endpoint is a declared node or coordinate.
fn check_tikz(s: &str) -> Result<usize, String> {
    let lines: Vec<&str> = s.lines().collect();
    if lines.first() != Some(&"\\begin{tikzpicture}") && !lines.first().is_some_and(|l| l.starts_with("\\begin{tikzpicture}[")) {
        return Err("missing \\begin{tikzpicture}".into());
    }
    if lines.last() != Some(&"\\end{tikzpicture}") {
        return Err("missing \\end{tikzpicture}".into());
    }
    let mut depth = 0i64;
    let mut prev = ' ';
    for ch in s.chars() {
        if prev != '\\' {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
        }
        if depth < 0 {
            return Err("unbalanced braces".into());
        }
        prev = ch;
    }
    if depth != 0 {
        return Err("unbalanced braces".into());
    }
    let mut names = BTreeSet::new();
    let mut draws = 0;
    for l in &lines[1..lines.len() - 1] {
        let l = l.trim();
        if !l.ends_with(';') {
            return Err(format!("unterminated command: {l}"));
        }
        if l.matches('$').count() % 2 != 0 {
            return Err(format!("unbalanced math: {l}"));
        }
        let cmd = l.split(|c: char| !c.is_alphanumeric() && c != '\\').next().unwrap_or("");
        match cmd {
            "\\node" | "\\coordinate" => {
                if let Some(rest) = l.split_once('(') {
                    let name = rest.1.split(')').next().unwrap();
                    if !l.contains(" at ") {
                        return Err(format!("node without position: {l}"));
                    }
                    if !l[..l.find(" at ").unwrap()].contains('(') {
                        continue;
                    }
                    names.insert(name.to_string());
                }
            }
            "\\draw" => {
                draws += 1;
                let mut rest = l;
                while let Some(k) = rest.find('(') {
                    let inner = &rest[k + 1..];
                    let end = inner.find(')').ok_or("unclosed coordinate")?;
                    let name = &inner[..end];
                    if !name.contains(':') && !name.contains(',') && !names.contains(name) {
                        return Err(format!("undeclared node {name}"));
                    }
                    rest = &inner[end + 1..];
                }
            }
            _ => return Err(format!("unknown command: {l}")),
        }
    }
    Ok(draws)
}

#[test]
fn config_examples() {
    let v = json_ok(&["config", "enumerate", "--diagram", "A", "--rank", "2", "--d", "2"]);
    assert_eq!(v["result"]["count"], 7);
    let v = json_ok(&["config", "check", "--set", "4-6,7-2"]);
    assert_eq!(v["result"]["valid"], true);
    let v = json_ok(&["config", "classes", "--diagram", "A", "--rank", "3", "--d", "2"]);
    assert_eq!(v["result"]["count"], 4);
    let v = json_ok(&["config", "enumerate", "--diagram", "D", "--rank", "4", "--d", "1"]);
    assert!(v["result"]["count"].as_u64().unwrap() > 0);
}

#[test]
fn brauer_examples() {
    let v = json_ok(&["brauer", "count", "--n", "3", "--d", "2"]);
    assert_eq!(v["result"]["enumerated"], 30);
    assert_eq!(v["result"]["agree"], true);
    let v = json_ok(&["brauer", "cycles", "--relation", "1-6,2-4,8-10"]);
    let cycles = v["result"]["cycles"].as_array().unwrap();
    assert_eq!(cycles.len(), 2);
    assert!(cycles.iter().all(|c| c["members"].as_array().unwrap().len() == 2));
    let v = json_ok(&["brauer", "theta", "--vertices", "1,4", "--n", "2", "--d", "2"]);
    assert_eq!(v["result"]["maximal"], true);
    let v = json_ok(&["brauer", "enumerate", "--n", "2", "--d", "2"]);
    assert_eq!(v["result"]["count"], 7);
    let v = json_ok(&["brauer", "classes", "--n", "3", "--d", "2"]);
    assert_eq!(v["result"]["count"], 4);
}

#[test]
fn quiver_examples() {
    let v = json_ok(&["quiver", "brauer", "--relation", "1-3,4-6,7-9", "--d", "2"]);
    let mut degs: Vec<i64> = v["result"]["arrows"].as_array().unwrap().iter().map(|a| a["degree"].as_i64().unwrap()).collect();
    degs.sort();
    assert_eq!(degs, vec![-1, 0, 0]);
    let v = json_ok(&["quiver", "truncpoly", "--n", "2", "--d", "2"]);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 9);
    let v = json_ok(&["quiver", "cm-predict", "--relation", "7-2,4-6"]);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(v["result"]["projectives"].as_array().unwrap().len(), 2);
}

#[test]
fn dot_output_parses() {
    let o = cyw(&["quiver", "brauer", "--relation", "1-3,4-6,7-9", "--d", "2", "--format", "dot"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (nodes, edges) = dot::parse(&text).unwrap();
    assert_eq!(nodes.len(), 3);
    assert_eq!(edges.len(), 3);
    assert_eq!(text.matches("label=\"-1\"").count(), 1);
    for args in [
        &["quiver", "truncpoly", "--n", "3", "--d", "1", "--format", "dot"][..],
        &["quiver", "cm-predict", "--relation", "7-2,4-6", "--format", "dot"][..],
        &["quiver", "brauer", "--relation", "1-6,2-4,8-10", "--format", "dot"][..],
    ] {
        let o = cyw(args);
        assert!(o.status.success(), "{args:?}");
        let (nodes, edges) = dot::parse(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(edges.iter().all(|(s, t)| nodes.contains(s) && nodes.contains(t)));
    }
    assert!(dot::parse("digraph { a -- b }").is_err());
    assert!(dot::parse("digraph { a -> }").is_err());
}

#[test]
fn tikz_output_checks() {
    for args in [
        &["quiver", "brauer", "--relation", "1-3,4-6,7-9", "--format", "tikz"][..],
        &["quiver", "truncpoly", "--n", "2", "--d", "2", "--format", "tikz"][..],
        &["quiver", "cm-predict", "--relation", "7-2,4-6", "--format", "tikz"][..],
        &["brauer", "cycles", "--relation", "1-6,2-4,8-10", "--format", "tikz"][..],
        &["brauer", "theta", "--vertices", "1,4", "--n", "2", "--d", "2", "--format", "tikz"][..],
    ] {
        let o = cyw(args);
        assert!(o.status.success(), "{args:?}");
        let draws = check_tikz(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(draws > 0);
    }
    assert!(check_tikz("\\begin{tikzpicture}\n  \\draw (a) -- (b);\n\\end{tikzpicture}").is_err());
}

#[test]
fn exit_codes() {
    let o = cyw(&["config", "check", "--rank", "2", "--d", "2", "--set", "1-6,2-7"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["code"], "validation_failure");
    assert!(validator().is_valid(&err));

    let o = cyw(&["brauer", "cycles", "--relation", "1-6,2-8"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cyw_env(&["brauer", "count", "--n", "4", "--d", "3"], "CYW_MAX_STATES", "10");
    assert_eq!(o.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(validator().is_valid(&err));

    assert_eq!(cyw(&["brauer", "count", "--n", "2", "--d", "2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["config", "enumerate", "--rank", "3", "--d", "2"][..],
        &["brauer", "classes", "--n", "3", "--d", "3"][..],
        &["quiver", "truncpoly", "--n", "3", "--d", "2", "--format", "dot"][..],
    ] {
        let a = cyw(args);
        let b = cyw(args);
        let c = cyw(&[&["--jobs", "1"][..], args].concat());
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let mut v = json_ok(&["brauer", "count", "--n", "2", "--d", "2"]);
    v["result"]["formula"] = Value::from(7);
    assert!(!validator().is_valid(&v));
    let mut v = json_ok(&["quiver", "brauer", "--relation", "1-3,4-6,7-9"]);
    v["result"]["arrows"][0]["degree"] = Value::from(1);
    assert!(!validator().is_valid(&v));
}
