//! Line-oriented text formats for graphs, morphisms and walks, and DOT
//! export.
//!
//! ```text
//! # a comment
//! graph X
//! node x
//! node y
//! arc a x y
//!
//! morphism f : X -> Y
//! node x => u
//! arc a => b
//!
//! walk X pre=[a] per=[b,c]
//! ```
//!
//! A file is a sequence of such blocks. `node` and `arc` lines belong to the
//! most recent `graph` or `morphism` header. Morphisms and walks refer to
//! graphs defined earlier in the same file by name. `#` starts a comment when
//! it begins a token.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{validate, Graph, RawArc, RawGraph, RawNode};
use crate::morphism::GraphMorphism;
use crate::walks::EPWalk;

/// Everything read from one file, in file order.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub graphs: Vec<Arc<Graph>>,
    pub morphisms: Vec<(String, GraphMorphism)>,
    pub walks: Vec<EPWalk>,
}

impl Document {
    pub fn graph(&self, name: &str) -> Option<&Arc<Graph>> {
        self.graphs.iter().find(|g| g.name() == name)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    let mut prev_space = true;
    for (i, c) in line.char_indices() {
        if c == '#' && prev_space {
            return &line[..i];
        }
        prev_space = c.is_whitespace();
    }
    line
}

enum Block {
    Graph(RawGraph),
    Morphism(RawMorphism),
}

struct RawMorphism {
    name: String,
    domain: String,
    codomain: String,
    line: usize,
    nodes: Vec<(String, String, usize)>,
    arcs: Vec<(String, String, usize)>,
}

/// Syntactic pass: graph blocks are returned without validation.
fn parse_blocks(text: &str) -> Result<Vec<(Block, usize)>> {
    let mut blocks: Vec<(Block, usize)> = Vec::new();
    let mut walks_seen = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = strip_comment(raw_line).split_whitespace().collect();
        let Some(&keyword) = tokens.first() else {
            continue;
        };
        match keyword {
            "graph" => {
                let [_, name] = tokens[..] else {
                    return Err(parse_err(line, "expected `graph <name>`"));
                };
                blocks.push((Block::Graph(RawGraph::new(name)), line));
            }
            "morphism" => {
                let [_, name, ":", dom, "->", cod] = tokens[..] else {
                    return Err(parse_err(line, "expected `morphism <name> : <X> -> <Y>`"));
                };
                blocks.push((
                    Block::Morphism(RawMorphism {
                        name: name.into(),
                        domain: dom.into(),
                        codomain: cod.into(),
                        line,
                        nodes: Vec::new(),
                        arcs: Vec::new(),
                    }),
                    line,
                ));
            }
            "node" | "arc" => match blocks.last_mut() {
                None => return Err(parse_err(line, "missing graph header")),
                Some((Block::Graph(g), _)) => match (keyword, &tokens[..]) {
                    ("node", [_, id]) => g.nodes.push(RawNode {
                        id: id.to_string(),
                        line: Some(line),
                    }),
                    ("arc", [_, id, s, t]) => g.arcs.push(RawArc {
                        id: id.to_string(),
                        source: s.to_string(),
                        target: t.to_string(),
                        line: Some(line),
                    }),
                    ("node", _) => return Err(parse_err(line, "expected `node <id>`")),
                    _ => return Err(parse_err(line, "expected `arc <id> <source> <target>`")),
                },
                Some((Block::Morphism(m), _)) => {
                    let [_, from, "=>", to] = tokens[..] else {
                        return Err(parse_err(line, format!("expected `{keyword} <x> => <y>`")));
                    };
                    let entry = (from.to_string(), to.to_string(), line);
                    if keyword == "node" {
                        m.nodes.push(entry);
                    } else {
                        m.arcs.push(entry);
                    }
                }
            },
            "walk" => walks_seen = true,
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if blocks.is_empty() && !walks_seen {
        return Err(parse_err(1, "missing graph header"));
    }
    Ok(blocks)
}

/// Every graph block of a file, unvalidated.
pub fn parse_raw_graphs(text: &str) -> Result<Vec<RawGraph>> {
    Ok(parse_blocks(text)?
        .into_iter()
        .filter_map(|(b, _)| match b {
            Block::Graph(g) => Some(g),
            Block::Morphism(_) => None,
        })
        .collect())
}

/// Parses and validates a whole file.
pub fn parse_document(text: &str) -> Result<Document> {
    let blocks = parse_blocks(text)?;
    let mut doc = Document::default();
    let mut by_name: HashMap<String, Arc<Graph>> = HashMap::new();
    for (block, line) in blocks {
        match block {
            Block::Graph(raw) => {
                if by_name.contains_key(&raw.name) {
                    return Err(parse_err(line, format!("graph {} defined twice", raw.name)));
                }
                validate(&raw).map_err(Error::InvalidGraph)?;
                let g = Arc::new(raw.build()?);
                by_name.insert(raw.name.clone(), g.clone());
                doc.graphs.push(g);
            }
            Block::Morphism(m) => {
                let find = |name: &str| {
                    by_name
                        .get(name)
                        .cloned()
                        .ok_or_else(|| parse_err(m.line, format!("unknown graph {name}")))
                };
                let dom = find(&m.domain)?;
                let cod = find(&m.codomain)?;
                let f = morphism_from_lines(&m, dom, cod)?;
                doc.morphisms.push((m.name, f));
            }
        }
    }
    for (idx, raw_line) in text.lines().enumerate() {
        let line = strip_comment(raw_line).trim();
        if line.split_whitespace().next() == Some("walk") {
            doc.walks
                .push(parse_walk_line(line, &by_name).map_err(|e| match e {
                    Error::Parse { message, .. } => parse_err(idx + 1, message),
                    other => parse_err(idx + 1, other.to_string()),
                })?);
        }
    }
    Ok(doc)
}

fn morphism_from_lines(m: &RawMorphism, dom: Arc<Graph>, cod: Arc<Graph>) -> Result<GraphMorphism> {
    for (from, to, line) in &m.nodes {
        if dom.node_index(from).is_none() {
            return Err(parse_err(*line, format!("unknown domain node {from}")));
        }
        if cod.node_index(to).is_none() {
            return Err(parse_err(*line, format!("unknown codomain node {to}")));
        }
    }
    for (from, to, line) in &m.arcs {
        if dom.arc_index(from).is_none() {
            return Err(parse_err(*line, format!("unknown domain arc {from}")));
        }
        if cod.arc_index(to).is_none() {
            return Err(parse_err(*line, format!("unknown codomain arc {to}")));
        }
    }
    GraphMorphism::from_ids(
        dom,
        cod,
        m.nodes.iter().map(|(a, b, _)| (a.as_str(), b.as_str())),
        m.arcs.iter().map(|(a, b, _)| (a.as_str(), b.as_str())),
    )
    .map_err(|e| match e {
        Error::InvalidMorphism(msg) => Error::InvalidMorphism(format!("line {}: {msg}", m.line)),
        other => other,
    })
}

/// The first graph of a file.
pub fn parse_graph(text: &str) -> Result<Arc<Graph>> {
    parse_document(text)?
        .graphs
        .into_iter()
        .next()
        .ok_or_else(|| parse_err(1, "missing graph header"))
}

/// The last morphism of a file.
pub fn parse_morphism(text: &str) -> Result<(String, GraphMorphism)> {
    let line_count = text.lines().count().max(1);
    parse_document(text)?
        .morphisms
        .pop()
        .ok_or_else(|| parse_err(line_count, "missing morphism header"))
}

/// Splits on commas outside parentheses and brackets.
fn split_ids(list: &str) -> Vec<&str> {
    if list.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in list.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&list[start..]);
    out
}

fn bracketed<'a>(token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix("=["))
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| parse_err(0, format!("expected `{key}=[...]`, found `{token}`")))
}

/// Parses `walk <graph> pre=[a1,...] per=[b1,...]`.
pub fn parse_walk_line(line: &str, graphs: &HashMap<String, Arc<Graph>>) -> Result<EPWalk> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let ["walk", name, pre, per] = tokens[..] else {
        return Err(parse_err(0, "expected `walk <graph> pre=[...] per=[...]`"));
    };
    let host = graphs
        .get(name)
        .ok_or_else(|| parse_err(0, format!("unknown graph {name}")))?;
    let pre = split_ids(bracketed(pre, "pre")?);
    let per = split_ids(bracketed(per, "per")?);
    EPWalk::from_ids(host.clone(), &pre, &per)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.name());
    for n in g.nodes() {
        writeln!(out, "node {n}").unwrap();
    }
    for a in g.arcs() {
        writeln!(
            out,
            "arc {} {} {}",
            a.id,
            g.node_id(a.source),
            g.node_id(a.target)
        )
        .unwrap();
    }
    out
}

/// The morphism block alone, naming its graphs by their names.
pub fn write_morphism(name: &str, f: &GraphMorphism) -> String {
    let (x, y) = (f.domain(), f.codomain());
    let mut out = format!("morphism {name} : {} -> {}\n", x.name(), y.name());
    for (v, &w) in f.node_map().iter().enumerate() {
        writeln!(out, "node {} => {}", x.node_id(v), y.node_id(w)).unwrap();
    }
    for (a, &b) in f.arc_map().iter().enumerate() {
        writeln!(out, "arc {} => {}", x.arc_id(a), y.arc_id(b)).unwrap();
    }
    out
}

/// A self-contained file: domain, codomain (unless identical) and morphism.
pub fn write_morphism_document(name: &str, f: &GraphMorphism) -> String {
    let mut out = write_graph(f.domain());
    if f.codomain().name() != f.domain().name() {
        out.push('\n');
        out.push_str(&write_graph(f.codomain()));
    }
    out.push('\n');
    out.push_str(&write_morphism(name, f));
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with nodes and arcs in input order.
pub fn write_dot(g: &Graph) -> String {
    let mut out = format!("digraph {} {{\n", dot_quote(g.name()));
    for n in g.nodes() {
        writeln!(out, "  {};", dot_quote(n)).unwrap();
    }
    for a in g.arcs() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_quote(g.node_id(a.source)),
            dot_quote(g.node_id(a.target)),
            dot_quote(&a.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = "\
# bidirected star
graph X
node 0
node 1
node 2
arc (0,1) 0 1
arc (1,0) 1 0   # back
arc (0,2) 0 2
arc (2,0) 2 0
";

    #[test]
    fn graph_round_trip() {
        let g = parse_graph(STAR).unwrap();
        assert_eq!(g.arc_count(), 4);
        let text = write_graph(&g);
        assert_eq!(*parse_graph(&text).unwrap(), *g);
        assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn dangling_reference_has_line_number() {
        let err = parse_graph("graph g\nnode x\narc a x y\n").unwrap_err();
        assert_eq!(
            err.to_string(),
            "invalid graph: line 3: dangling target y of arc a"
        );
    }

    #[test]
    fn empty_file_needs_header() {
        let err = parse_graph("").unwrap_err();
        assert!(err.to_string().contains("missing graph header"));
        let err = parse_graph("# only a comment\nnode x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "missing graph header".into()
            }
        );
    }

    #[test]
    fn syntax_errors_have_line_numbers() {
        let err = parse_graph("graph g\nnode\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("graph g\nedge a b c\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn morphism_document_round_trip() {
        let text = "\
graph C2
node 0
node 1
arc a 0 1
arc b 1 0

graph One
node p
arc l p p

morphism f : C2 -> One
node 0 => p
node 1 => p
arc a => l
arc b => l
";
        let (name, f) = parse_morphism(text).unwrap();
        assert_eq!(name, "f");
        assert_eq!(write_morphism_document(&name, &f), text);
    }

    #[test]
    fn morphism_errors() {
        let text = "graph G\nnode 0\narc a 0 0\nmorphism f : G -> G\nnode 0 => 0\narc a => z\n";
        let err = parse_morphism(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 6, .. }));
        let text = "graph G\nnode 0\nmorphism f : G -> H\n";
        assert!(matches!(
            parse_morphism(text).unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
    }

    #[test]
    fn walks_with_comma_ids() {
        let text = "graph C2\nnode 0\nnode 1\narc (0,1) 0 1\narc (1,0) 1 0\n\
                    walk C2 pre=[] per=[(0,1),(1,0)]\nwalk C2 pre=[(1,0)] per=[(0,1),(1,0)]\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.walks.len(), 2);
        assert_eq!(doc.walks[0].period().len(), 2);
        assert_eq!(doc.walks[0].to_string(), "walk C2 pre=[] per=[(0,1),(1,0)]");
    }

    #[test]
    fn bad_walk_reports_line() {
        let text = "graph C2\nnode 0\nnode 1\narc a 0 1\narc b 1 0\nwalk C2 pre=[] per=[a]\n";
        assert!(matches!(
            parse_document(text).unwrap_err(),
            Error::Parse { line: 6, .. }
        ));
    }

    #[test]
    fn dot_is_stable() {
        let g = parse_graph("graph g\nnode x\nnode \"y\narc a x \"y\n").unwrap();
        assert_eq!(
            write_dot(&g),
            "digraph \"g\" {\n  \"x\";\n  \"\\\"y\";\n  \"x\" -> \"\\\"y\" [label=\"a\"];\n}\n"
        );
    }
}
