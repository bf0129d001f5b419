//! Graph interchange formats: graph6 and a plain edge list.
//!
//! The edge list is `n m` on the first line followed by `m` lines `u v`
//! with 0-indexed endpoints. graph6 follows the nauty definition: a size
//! header, then the upper triangle read column by column, six bits per
//! printable byte offset by 63.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::InvalidParams(format!("unknown graph format {other:?}"))),
        }
    }
}

/// A parsed graph together with the format it came in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub format: GraphFormat,
    pub payload: String,
    pub graph: Graph,
}

impl GraphDocument {
    pub fn parse(payload: &str, format: GraphFormat) -> Result<Self> {
        let graph = parse_graph(payload, format)?;
        Ok(Self { format, payload: payload.to_string(), graph })
    }

    /// Guesses the format: edge lists start with two integers.
    pub fn parse_auto(payload: &str) -> Result<Self> {
        Self::parse(payload, detect_format(payload))
    }

    pub fn emit(graph: &Graph, format: GraphFormat) -> Self {
        let payload = emit_graph(graph, format);
        Self { format, payload, graph: graph.clone() }
    }
}

pub fn detect_format(payload: &str) -> GraphFormat {
    let first = payload.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.split_whitespace().next().is_some_and(|t| t.parse::<usize>().is_ok()) {
        GraphFormat::EdgeList
    } else {
        GraphFormat::Graph6
    }
}

pub fn parse_graph(payload: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(payload),
        GraphFormat::Graph6 => from_graph6(payload),
    }
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => to_edge_list(g),
        GraphFormat::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s
        }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) =
        lines.next().ok_or(Error::Parse { line: 1, msg: "missing header \"n m\"".into() })?;
    let nums = |line: usize, l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse { line, msg: format!("not a vertex count or label: {t:?}") })
            })
            .collect()
    };
    let head = nums(hline + 1, header)?;
    let [n, m] = head[..] else {
        return Err(Error::Parse { line: hline + 1, msg: "header must be \"n m\"".into() });
    };
    let mut b = GraphBuilder::new(n);
    let mut seen = 0;
    for (i, l) in lines {
        let line = i + 1;
        let pair = nums(line, l)?;
        let [u, v] = pair[..] else {
            return Err(Error::Parse { line, msg: "edge lines must be \"u v\"".into() });
        };
        b.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse { line: hline + 1, msg: format!("header announces {m} edges, found {seen}") });
    }
    Ok(b.build())
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

fn size_header(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        let mut out = vec![126];
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        out
    } else {
        let mut out = vec![126, 126];
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        out
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = size_header(n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} at offset {i} outside 63..=126")));
        }
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte size header".into()));
            }
            (rest[..6].iter().fold(0, |acc, &b| acc << 6 | six(b)), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte size header".into()));
            }
            (rest[..3].iter().fold(0, |acc, &b| acc << 6 | six(b)), &rest[3..])
        }
        [first, rest @ ..] => (six(*first), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "{n} vertices need {expected} data bytes, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (six(body[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                b.join(i, j);
            }
            k += 1;
        }
    }
    if (bits..expected * 6).any(bit) {
        return Err(Error::Graph6("padding bits must be zero".into()));
    }
    Ok(b.build())
}
