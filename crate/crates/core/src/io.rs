//! Text formats: DAG files, ordering files, edge lists and step traces.
//!
//! A DAG file is line oriented:
//!
//! ```text
//! # comment
//! node A 2
//! node B 3
//! arc A B
//! ```
//!
//! Node declaration order defines node indices. Everything after `#` on a
//! line is ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::consensus::Digraph;
use crate::dag::{Arc, CardinalityMap, Dag, NodeOrder};
use crate::error::{Error, Result};
use crate::mdi::Step;
use crate::transform::TransformStep;

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_dag(text: &str) -> Result<(Dag, CardinalityMap)> {
    let mut names: Vec<String> = Vec::new();
    let mut states: Vec<u32> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pending: Vec<(usize, &str, &str)> = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            ["node", name, card] => {
                let r: u32 = card
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad cardinality `{card}`")))?;
                if r < 2 {
                    return Err(Error::parse(
                        line,
                        format!("cardinality of `{name}` must be at least 2"),
                    ));
                }
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(Error::DuplicateNode(name.to_string()));
                }
                names.push(name.to_string());
                states.push(r);
            }
            ["arc", tail, head] => pending.push((line, tail, head)),
            ["node", ..] => return Err(Error::parse(line, "expected `node <name> <cardinality>`")),
            ["arc", ..] => return Err(Error::parse(line, "expected `arc <tail> <head>`")),
            [kw, ..] => return Err(Error::parse(line, format!("unknown directive `{kw}`"))),
            [] => unreachable!(),
        }
    }
    let mut arcs = Vec::with_capacity(pending.len());
    let mut seen = std::collections::HashSet::new();
    for (line, tail, head) in pending {
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::parse(line, format!("unknown node `{s}`")))
        };
        let arc = Arc::new(lookup(tail)?, lookup(head)?);
        if arc.from == arc.to {
            return Err(Error::parse(line, format!("self arc on `{tail}`")));
        }
        if !seen.insert(arc) {
            return Err(Error::parse(line, format!("duplicate arc {tail} -> {head}")));
        }
        arcs.push(arc);
    }
    let dag = Dag::new(names, &arcs)?;
    Ok((dag, CardinalityMap::new(states)?))
}

/// Canonical form: nodes in index order, then arcs by tail and head index.
pub fn serialize_dag(dag: &Dag, cards: &CardinalityMap) -> String {
    assert_eq!(dag.n(), cards.len(), "cardinalities must cover every node");
    let mut out = String::new();
    for v in 0..dag.n() {
        let _ = writeln!(out, "node {} {}", dag.name(v), cards.get(v));
    }
    for a in dag.arcs() {
        let _ = writeln!(out, "arc {} {}", dag.name(a.from), dag.name(a.to));
    }
    out
}

/// Whitespace separated node names, each node exactly once.
pub fn parse_order(text: &str, dag: &Dag) -> Result<NodeOrder> {
    let names: Vec<&str> = content_lines(text).flat_map(|(_, t)| t).collect();
    NodeOrder::from_names(dag, &names)
}

pub fn format_order(order: &NodeOrder, dag: &Dag) -> String {
    let mut s = dag.format_nodes(order.nodes());
    s.push('\n');
    s
}

/// A digraph given one arc per line as `tail head`; a line with a single
/// name declares an isolated vertex. Vertices are numbered by first
/// appearance.
pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arcs = Vec::new();
    let mut intern = |s: &str, names: &mut Vec<String>| {
        *index.entry(s.to_string()).or_insert_with(|| {
            names.push(s.to_string());
            names.len() - 1
        })
    };
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            [v] => {
                intern(v, &mut names);
            }
            [a, b] => {
                if a == b {
                    return Err(Error::parse(line, format!("self loop on `{a}`")));
                }
                let arc = (intern(a, &mut names), intern(b, &mut names));
                if arcs.contains(&arc) {
                    return Err(Error::parse(line, format!("duplicate arc {a} -> {b}")));
                }
                arcs.push(arc);
            }
            _ => return Err(Error::parse(line, "expected `tail head` or a single vertex")),
        }
    }
    for name in &names {
        if name.contains('_') {
            return Err(Error::InvalidName(name.clone()));
        }
    }
    Digraph::new(names, arcs)
}

fn step_parts(step: &Step) -> (&'static str, usize, usize) {
    match *step {
        Step::Add(a) => ("ADD", a.from, a.to),
        Step::Reverse(a) => ("REVERSE", a.from, a.to),
        Step::Swap(a, b) => ("SWAP", a, b),
    }
}

/// One `ADD a b`, `REVERSE a b` or `SWAP a b` line per step.
pub fn format_steps(steps: &[Step], dag: &Dag) -> String {
    let mut out = String::new();
    for s in steps {
        let (kw, a, b) = step_parts(s);
        let _ = writeln!(out, "{kw} {} {}", dag.name(a), dag.name(b));
    }
    out
}

pub fn format_transform(steps: &[TransformStep], dag: &Dag) -> String {
    let converted: Vec<Step> = steps
        .iter()
        .map(|s| match *s {
            TransformStep::Add(a) => Step::Add(a),
            TransformStep::ReverseCovered(a) => Step::Reverse(a),
        })
        .collect();
    format_steps(&converted, dag)
}

/// Parses a step trace against `dag`'s node names.
pub fn parse_steps(text: &str, dag: &Dag) -> Result<Vec<Step>> {
    content_lines(text)
        .map(|(line, tokens)| {
            let [kw, a, b] = tokens.as_slice() else {
                return Err(Error::parse(line, "expected `<ADD|REVERSE|SWAP> <node> <node>`"));
            };
            let lookup = |s: &str| {
                dag.index_of(s)
                    .ok_or_else(|| Error::parse(line, format!("unknown node `{s}`")))
            };
            let (a, b) = (lookup(a)?, lookup(b)?);
            match *kw {
                "ADD" => Ok(Step::Add(Arc::new(a, b))),
                "REVERSE" => Ok(Step::Reverse(Arc::new(a, b))),
                "SWAP" => Ok(Step::Swap(a, b)),
                other => Err(Error::parse(line, format!("unknown step `{other}`"))),
            }
        })
        .collect()
}

/// The graph-changing steps of a trace; `SWAP` lines are dropped.
pub fn parse_transform(text: &str, dag: &Dag) -> Result<Vec<TransformStep>> {
    Ok(parse_steps(text, dag)?
        .into_iter()
        .filter_map(|s| match s {
            Step::Add(a) => Some(TransformStep::Add(a)),
            Step::Reverse(a) => Some(TransformStep::ReverseCovered(a)),
            Step::Swap(..) => None,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIVE: &str = "node I 2\nnode J 2\nnode K 2\nnode L 2\nnode M 2\narc I K\narc J K\narc J L\narc L M\n";

    #[test]
    fn two_nodes() {
        let (g, c) = parse_dag("node A 2\nnode B 2\narc A B\n").unwrap();
        assert_eq!(g.n(), 2);
        assert!(g.has_arc(0, 1));
        assert_eq!(c.as_slice(), &[2, 2]);
    }

    #[test]
    fn round_trip() {
        let (g, c) = parse_dag(FIVE).unwrap();
        assert_eq!(g.arc_count(), 4);
        assert_eq!(serialize_dag(&g, &c), FIVE);
    }

    #[test]
    fn canonicalizes() {
        let text = "# header\nnode B 3 # trailing\n\nnode A 2\narc A B\n";
        let (g, c) = parse_dag(text).unwrap();
        assert_eq!(serialize_dag(&g, &c), "node B 3\nnode A 2\narc A B\n");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_dag("arc A B\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(parse_dag("node A 2\nnode A 3\n"), Err(Error::DuplicateNode("A".into())));
        assert_eq!(parse_dag("node A 2\nnode B 2\narc A B\narc B A\n"), Err(Error::Cycle));
        assert!(matches!(parse_dag("node A 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_dag("node A x\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_dag("node A 2\nedge A A\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dag("node A 2\narc A A\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dag("node A 2\nnode B 2\narc A B\narc A B\n"),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn orders() {
        let (g, _) = parse_dag(FIVE).unwrap();
        let alpha = parse_order("M I K J L\n", &g).unwrap();
        assert_eq!(alpha.nodes(), &[4, 0, 2, 1, 3]);
        assert_eq!(format_order(&alpha, &g), "M I K J L\n");
        assert!(matches!(parse_order("M I K J J", &g), Err(Error::NotAPermutation(_))));
        assert!(matches!(parse_order("M I K J", &g), Err(Error::NotAPermutation(_))));
        assert!(matches!(parse_order("M I K J Q", &g), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn edge_lists() {
        let d = parse_edge_list("# fas\nV1 V2\nV2 V3\nV3 V1\nV4\n").unwrap();
        assert_eq!(d.names(), &["V1", "V2", "V3", "V4"]);
        assert_eq!(d.arcs(), &[(0, 1), (1, 2), (2, 0)]);
        assert!(parse_edge_list("a a\n").is_err());
        assert!(parse_edge_list("a b c\n").is_err());
        assert!(parse_edge_list("a b\na b\n").is_err());
        assert!(parse_edge_list("a_1 b\n").is_err());
    }

    #[test]
    fn traces() {
        let (g, _) = parse_dag(FIVE).unwrap();
        let text = "ADD I J\nREVERSE J K\nSWAP J K\n";
        let steps = parse_steps(text, &g).unwrap();
        assert_eq!(
            steps,
            vec![
                Step::Add(Arc::new(0, 1)),
                Step::Reverse(Arc::new(1, 2)),
                Step::Swap(1, 2)
            ]
        );
        assert_eq!(format_steps(&steps, &g), text);
        let tr = parse_transform(text, &g).unwrap();
        assert_eq!(tr.len(), 2);
        assert_eq!(format_transform(&tr, &g), "ADD I J\nREVERSE J K\n");
        assert!(parse_steps("MOVE I J\n", &g).is_err());
        assert!(parse_steps("ADD I Q\n", &g).is_err());
        assert!(parse_steps("ADD I\n", &g).is_err());
    }
}
