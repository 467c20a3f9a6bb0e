//! Line-oriented netlist text format.
//!
//! ```text
//! # two resistors in series
//! nodes: a b c
//! inputs: a
//! outputs: c
//! R a b 1
//! R b c 1
//! ```
//!
//! `R`/`L`/`C` take positive rational values, `Z` takes a raw rational
//! function (only when allowed, and only if it samples positive), and
//! `W a b` identifies two nodes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Edge, LabelledGraph};
use crate::cospan::NodeId;
use crate::field::{default_sample_points, impedance, parse_rat, ComponentKind, Rat, RatFunc};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: impedance {value} is not positive")]
    NonPositiveImpedance { line: usize, value: String },
    #[error("line {line}: unknown node {label}")]
    UnknownNode { line: usize, label: String },
    #[error("line {line}: raw Z edges need --allow-raw-z")]
    RawImpedanceDisallowed { line: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub allow_raw_z: bool,
    pub sample_points: Vec<Rat>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            allow_raw_z: false,
            sample_points: default_sample_points(),
        }
    }
}

struct RawEdge {
    line: usize,
    src: String,
    tgt: String,
    impedance: RatFunc,
}

fn parse_err(line: usize, reason: impl Into<String>) -> NetlistError {
    NetlistError::Parse {
        line,
        reason: reason.into(),
    }
}

fn component(letter: &str) -> Option<ComponentKind> {
    match letter {
        "R" => Some(ComponentKind::Resistor),
        "L" => Some(ComponentKind::Inductor),
        "C" => Some(ComponentKind::Capacitor),
        _ => None,
    }
}

pub fn parse_netlist(text: &str, opts: &ParseOptions) -> Result<Circuit, NetlistError> {
    let mut declared: Vec<(usize, String)> = Vec::new();
    let mut inputs: Vec<(usize, String)> = Vec::new();
    let mut outputs: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<RawEdge> = Vec::new();
    let mut wires: Vec<(usize, String, String)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, rest)) = content.split_once(':') {
            let labels = rest.split_whitespace().map(|l| (line, l.to_string()));
            match key.trim() {
                "nodes" => declared.extend(labels),
                "inputs" => inputs.extend(labels),
                "outputs" => outputs.extend(labels),
                other => return Err(parse_err(line, format!("unknown directive `{other}:`"))),
            }
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "W" => {
                let [_, a, b] = words[..] else {
                    return Err(parse_err(line, "expected `W <node> <node>`"));
                };
                wires.push((line, a.to_string(), b.to_string()));
            }
            "Z" => {
                let [_, a, b, value] = words[..] else {
                    return Err(parse_err(line, "expected `Z <node> <node> <impedance>`"));
                };
                if !opts.allow_raw_z {
                    return Err(NetlistError::RawImpedanceDisallowed { line });
                }
                let z: RatFunc = value.parse().map_err(|e| parse_err(line, format!("{e}")))?;
                let (z, positive) = z
                    .vet_sampled(&opts.sample_points)
                    .map_err(|e| parse_err(line, format!("{e}")))?;
                if !positive {
                    return Err(NetlistError::NonPositiveImpedance {
                        line,
                        value: value.to_string(),
                    });
                }
                edges.push(RawEdge {
                    line,
                    src: a.to_string(),
                    tgt: b.to_string(),
                    impedance: z,
                });
            }
            letter => {
                let kind = component(letter)
                    .ok_or_else(|| parse_err(line, format!("unknown directive `{letter}`")))?;
                let [_, a, b, value] = words[..] else {
                    return Err(parse_err(
                        line,
                        format!("expected `{letter} <node> <node> <value>`"),
                    ));
                };
                let v = parse_rat(value).map_err(|e| parse_err(line, format!("{e}")))?;
                let z = impedance(kind, &v).map_err(|_| NetlistError::NonPositiveImpedance {
                    line,
                    value: value.to_string(),
                })?;
                edges.push(RawEdge {
                    line,
                    src: a.to_string(),
                    tgt: b.to_string(),
                    impedance: z,
                });
            }
        }
    }

    let mut labels: Vec<String> = Vec::new();
    for (line, l) in &declared {
        NodeId::new(l.as_str())
            .map_err(|_| parse_err(*line, format!("invalid node label `{l}`")))?;
        if !labels.contains(l) {
            labels.push(l.clone());
        }
    }
    labels.sort();
    let position = |line: usize, l: &str| -> Result<usize, NetlistError> {
        labels
            .binary_search_by(|x| x.as_str().cmp(l))
            .map_err(|_| NetlistError::UnknownNode {
                line,
                label: l.to_string(),
            })
    };

    let mut uf = UnionFind::new(labels.len());
    for (line, a, b) in &wires {
        uf.union(position(*line, a)?, position(*line, b)?);
    }
    let mut name_of: Vec<NodeId> = vec![NodeId::new("_").expect("valid"); labels.len()];
    for class in uf.classes() {
        // Labels are sorted, so the least index carries the least label.
        let rep = NodeId::new(labels[class[0]].as_str()).expect("validated");
        for k in class {
            name_of[k] = rep.clone();
        }
    }
    let resolve = |line: usize, l: &str| position(line, l).map(|k| name_of[k].clone());

    let nodes: BTreeSet<NodeId> = name_of.iter().cloned().collect();
    let mut graph_edges = Vec::with_capacity(edges.len());
    for e in edges {
        graph_edges.push(Edge::new(
            resolve(e.line, &e.src)?,
            resolve(e.line, &e.tgt)?,
            e.impedance,
        ));
    }
    let ins = inputs
        .iter()
        .map(|(line, l)| resolve(*line, l))
        .collect::<Result<Vec<_>, _>>()?;
    let outs = outputs
        .iter()
        .map(|(line, l)| resolve(*line, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Circuit::new(
        LabelledGraph::new(nodes, graph_edges)?,
        ins,
        outs,
    )?)
}

/// Recognizes `R`, `sL` and `1/(sC)` shapes with positive constants.
fn as_component(z: &RatFunc) -> Option<(char, Rat)> {
    let (num, den) = (z.num(), z.den());
    let positive = |c: &Rat| *c > Rat::zero();
    if let Some(c) = z.as_constant() {
        return positive(&c).then_some(('R', c));
    }
    let monomial_s = |p: &crate::field::Poly| p.degree() == Some(1) && p.constant_term().is_zero();
    if den.is_one() && monomial_s(num) {
        let c = num.leading().cloned()?;
        return positive(&c).then_some(('L', c));
    }
    if num.is_constant() && monomial_s(den) {
        // z = k/(d s), so C = d/k.
        let c = den.leading().cloned()? / num.constant_term();
        return positive(&c).then_some(('C', c));
    }
    None
}

/// Netlist text for `g`; reparses to a structurally equal circuit (raw
/// impedances need `allow_raw_z`).
pub fn print_netlist(g: &Circuit) -> String {
    let join =
        |ns: &mut dyn Iterator<Item = &NodeId>| ns.map(|n| format!(" {n}")).collect::<String>();
    let mut out = String::new();
    writeln!(out, "nodes:{}", join(&mut g.nodes().iter())).unwrap();
    writeln!(out, "inputs:{}", join(&mut g.inputs().iter())).unwrap();
    writeln!(out, "outputs:{}", join(&mut g.outputs().iter())).unwrap();
    for e in g.edges() {
        match as_component(&e.impedance) {
            Some((letter, value)) => writeln!(out, "{letter} {} {} {value}", e.src, e.tgt).unwrap(),
            None => writeln!(out, "Z {} {} {}", e.src, e.tgt, e.impedance).unwrap(),
        }
    }
    out
}

/// Parses a comma-separated list of rationals, as used by
/// `BLACKBOX_SAMPLE_POINTS`.
pub fn parse_sample_points(text: &str) -> Result<Vec<Rat>, crate::field::FieldError> {
    text.split(',').map(|p| parse_rat(p.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospan::node;
    use crate::field::Positivity;

    fn parse(text: &str) -> Result<Circuit, NetlistError> {
        parse_netlist(text, &ParseOptions::default())
    }

    const SERIES: &str = "nodes: a b c\nR a b 1\nR b c 1\ninputs: a\noutputs: c\n";

    #[test]
    fn series_netlist() {
        let g = parse(SERIES).unwrap();
        assert_eq!(g.nodes().len(), 3);
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.inputs(), &[node("a")]);
        assert_eq!(g.outputs(), &[node("c")]);
        assert_eq!(g.edges()[0].impedance.witness(), Positivity::Structural);
    }

    #[test]
    fn wires_merge_nodes() {
        let g = parse("nodes: b a\nW a b\ninputs: b\noutputs: a a\n").unwrap();
        assert_eq!(g.nodes().len(), 1);
        assert_eq!(g.inputs(), &[node("a")]);
        assert_eq!(g.outputs(), &[node("a"), node("a")]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("nodes: a b\nR a b 0\n"),
            Err(NetlistError::NonPositiveImpedance { line: 2, .. })
        ));
        assert!(matches!(
            parse("nodes: a b\nC a b -1\n"),
            Err(NetlistError::NonPositiveImpedance { .. })
        ));
        assert!(matches!(
            parse("nodes: a\nR a q 1\n"),
            Err(NetlistError::UnknownNode { line: 2, .. })
        ));
        assert!(matches!(
            parse("nodes: a\ninputs: z\n"),
            Err(NetlistError::UnknownNode { .. })
        ));
        assert!(matches!(
            parse("nodes: a b\nR a b\n"),
            Err(NetlistError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("nodes: a b\nQ a b 1\n"),
            Err(NetlistError::Parse { .. })
        ));
        assert!(matches!(
            parse("nodes: a b\nR a b x\n"),
            Err(NetlistError::Parse { .. })
        ));
        assert!(matches!(
            parse("nodes: a b\nZ a b s+1\n"),
            Err(NetlistError::RawImpedanceDisallowed { line: 2 })
        ));
    }

    #[test]
    fn raw_impedance_gate() {
        let opts = ParseOptions {
            allow_raw_z: true,
            ..ParseOptions::default()
        };
        let g = parse_netlist("nodes: a b\nZ a b (s^2+1)/(s+2)\n", &opts).unwrap();
        assert_eq!(g.edges()[0].impedance.witness(), Positivity::Sampled);
        assert!(matches!(
            parse_netlist("nodes: a b\nZ a b s-5\n", &opts),
            Err(NetlistError::NonPositiveImpedance { .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse("# header\n\nnodes: a b # trailing\nR a b 1/2 # half\n").unwrap();
        assert_eq!(g.edges()[0].impedance, RatFunc::parse("1/2"));
    }

    #[test]
    fn print_round_trip() {
        let text = "nodes: a b c d\ninputs: a\noutputs: d\nR a b 2\nL b c 3\nC c d 1/2\nZ a d (s^2+1)/(s+2)\n";
        let opts = ParseOptions {
            allow_raw_z: true,
            ..ParseOptions::default()
        };
        let g = parse_netlist(text, &opts).unwrap();
        let printed = print_netlist(&g);
        assert_eq!(printed, "nodes: a b c d\ninputs: a\noutputs: d\nR a b 2\nL b c 3\nC c d 1/2\nZ a d (s^2+1)/(s+2)\n");
        assert_eq!(parse_netlist(&printed, &opts).unwrap(), g);
    }

    #[test]
    fn sample_points_list() {
        let pts = parse_sample_points("1/2, 2,3").unwrap();
        assert_eq!(pts.len(), 3);
        assert!(parse_sample_points("1,,2").is_err());
    }
}
