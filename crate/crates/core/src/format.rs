//! Edge-list input and result documents.
//!
//! Edge lists are a header line `n m` followed by exactly `m` lines `u v`.
//! Blank lines are not allowed anywhere except as a single trailing newline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, OutTree, VertexId, VertexSet};
use crate::kernel::GoodPartition;
use crate::solver::{Answer, CaseLabel, SolveResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected `n m`")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed arc, expected `u v`")]
    MalformedArc { line: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate arc {u} -> {v}")]
    DuplicateArc { line: usize, u: VertexId, v: VertexId },
    #[error("line {line}: header announces {expected} arcs, found {found}")]
    CountMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Result { line: usize, message: String },
}

fn numbers(line: &str) -> Option<Vec<u64>> {
    line.split_whitespace().map(|t| t.parse().ok()).collect()
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines.next().unwrap_or("");
    let (n, m) = match numbers(header).as_deref() {
        Some(&[n, m]) => (n as usize, m as usize),
        _ => return Err(ParseError::MalformedHeader { line: 1 }),
    };
    let mut arcs = Vec::with_capacity(m.min(1 << 20));
    let mut seen = std::collections::HashSet::new();
    let mut found = 0;
    for (i, raw) in lines.enumerate() {
        let line = i + 2;
        found += 1;
        if found > m {
            return Err(ParseError::CountMismatch { line, expected: m, found: m + 1 });
        }
        let (u, v) = match numbers(raw).as_deref() {
            Some(&[u, v]) => (u, v),
            _ => return Err(ParseError::MalformedArc { line }),
        };
        for x in [u, v] {
            if x >= n as u64 {
                return Err(ParseError::OutOfRange { line, vertex: x, n });
            }
        }
        let (u, v) = (u as usize, v as usize);
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateArc { line, u, v });
        }
        arcs.push((u, v));
    }
    if found != m {
        return Err(ParseError::CountMismatch { line: found + 1, expected: m, found });
    }
    Ok(Digraph::from_arcs(n, arcs).expect("arcs validated above"))
}

pub fn render_digraph(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// What `solve` and `oracle` print. `v1`, `v2` and `branching` are present
/// exactly when the answer is YES; `branching` lists `[parent, child]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v1: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v2: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branching: Option<Vec<[VertexId; 2]>>,
    #[serde(default)]
    pub case_trace: Vec<String>,
    #[serde(default)]
    pub elapsed_ms: f64,
}

impl ResultDocument {
    pub fn from_result(res: &SolveResult, elapsed_ms: f64) -> Self {
        let case_trace = res.trace.iter().map(|l: &CaseLabel| l.as_str().to_string()).collect();
        match &res.answer {
            Answer::No => ResultDocument {
                answer: "NO".into(),
                v1: None,
                v2: None,
                branching: None,
                case_trace,
                elapsed_ms,
            },
            Answer::Yes(p) => ResultDocument {
                answer: "YES".into(),
                v1: Some(p.v1.iter().copied().collect()),
                v2: Some(p.v2.iter().copied().collect()),
                branching: Some(
                    p.branching.iter().flat_map(|t| t.arcs()).map(|(a, b)| [a, b]).collect(),
                ),
                case_trace,
                elapsed_ms,
            },
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == "YES"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// One `key values...` line per field; one `branching parent child` line
    /// per tree arc.
    pub fn to_plain(&self) -> String {
        let join = |v: &[VertexId]| v.iter().map(|x| format!(" {x}")).collect::<String>();
        let mut out = format!("answer {}\n", self.answer);
        if let Some(v1) = &self.v1 {
            out.push_str(&format!("v1{}\n", join(v1)));
        }
        if let Some(v2) = &self.v2 {
            out.push_str(&format!("v2{}\n", join(v2)));
        }
        for [p, c] in self.branching.iter().flatten() {
            out.push_str(&format!("branching {p} {c}\n"));
        }
        out.push_str("case_trace");
        for label in &self.case_trace {
            out.push(' ');
            out.push_str(label);
        }
        out.push('\n');
        out.push_str(&format!("elapsed_ms {}\n", self.elapsed_ms));
        out
    }

    /// Accepts either rendering; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| ParseError::Result {
                line: e.line(),
                message: e.to_string(),
            });
        }
        let mut doc = ResultDocument {
            answer: String::new(),
            v1: None,
            v2: None,
            branching: None,
            case_trace: Vec::new(),
            elapsed_ms: 0.0,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let bad = |message: &str| ParseError::Result { line, message: message.to_string() };
            let mut words = raw.split_whitespace();
            let Some(key) = words.next() else { continue };
            let rest: Vec<&str> = words.collect();
            let ids = || -> Result<Vec<VertexId>, ParseError> {
                rest.iter().map(|w| w.parse().map_err(|_| bad("expected vertex ids"))).collect()
            };
            match key {
                "answer" => match rest.as_slice() {
                    [a @ ("YES" | "NO")] => doc.answer = a.to_string(),
                    _ => return Err(bad("answer must be YES or NO")),
                },
                "v1" => doc.v1 = Some(ids()?),
                "v2" => doc.v2 = Some(ids()?),
                "branching" => match ids()?.as_slice() {
                    &[p, c] => doc.branching.get_or_insert_with(Vec::new).push([p, c]),
                    _ => return Err(bad("branching lines hold one parent and one child")),
                },
                "case_trace" => doc.case_trace = rest.iter().map(|s| s.to_string()).collect(),
                "elapsed_ms" => {
                    doc.elapsed_ms = rest
                        .first()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| bad("elapsed_ms needs a number"))?;
                }
                _ => return Err(bad(&format!("unknown key `{key}`"))),
            }
        }
        if doc.answer.is_empty() {
            return Err(ParseError::Result { line: 1, message: "missing answer line".into() });
        }
        if doc.is_yes() && doc.branching.is_none() && doc.v1.is_some() {
            doc.branching = Some(Vec::new());
        }
        Ok(doc)
    }

    /// The witness carried by a YES document. The branching root is the one
    /// vertex of `v1` that is nobody's child; a tree with several such
    /// vertices, or a child with two parents, is rejected.
    pub fn to_partition(&self) -> Result<Option<GoodPartition>, String> {
        if !self.is_yes() {
            return Ok(None);
        }
        let (Some(v1), Some(v2)) = (&self.v1, &self.v2) else {
            return Err("YES document without v1/v2".into());
        };
        let v1: VertexSet = v1.iter().copied().collect();
        let v2: VertexSet = v2.iter().copied().collect();
        let arcs = self.branching.as_deref().unwrap_or(&[]);
        if v1.is_empty() {
            if !arcs.is_empty() {
                return Err("branching given for empty v1".into());
            }
            return Ok(Some(GoodPartition { v1, v2, branching: None }));
        }
        let mut parent = std::collections::BTreeMap::new();
        for &[p, c] in arcs {
            if parent.insert(c, p).is_some() {
                return Err(format!("vertex {c} has two parents in the branching"));
            }
        }
        let roots: Vec<VertexId> = v1.iter().copied().filter(|v| !parent.contains_key(v)).collect();
        let &[root] = roots.as_slice() else {
            return Err(format!("branching must have exactly one root, found {}", roots.len()));
        };
        Ok(Some(GoodPartition { v1, v2, branching: Some(OutTree { root, parent }) }))
    }
}
