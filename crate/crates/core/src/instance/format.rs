//! Text formats.
//!
//! Both instance formats share a header block of `key=value` lines (`p`, `f`,
//! `k`, `clients`, `candidates`, and `d` for point files). Any line containing
//! `=` is a header line; `#` starts a comment. Data lines are `u v w` triples
//! for edge lists and comma-separated coordinates for point files.
//!
//! Edge-list vertex labels that are exactly the integers `0..n` are used as
//! ids; any other labelling is renumbered in order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::{Instance, PointSet, Solution, Space};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    PointsCsv,
}

impl Format {
    /// `.csv` files are point sets, everything else is an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::PointsCsv,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Default)]
struct Header {
    p: Option<u32>,
    f: Option<f64>,
    k: Option<usize>,
    d: Option<(usize, usize)>,
    clients: Option<(usize, Vec<String>)>,
    candidates: Option<(usize, Vec<String>)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header_line(header: &mut Header, line_no: usize, line: &str) -> Result<()> {
    let (key, value) = line.split_once('=').expect("header line contains '='");
    let (key, value) = (key.trim(), value.trim());
    let list = || -> Vec<String> {
        value
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::to_owned)
            .collect()
    };
    match key {
        "p" => {
            header.p = Some(
                value
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad exponent '{value}'")))?,
            )
        }
        "f" => {
            header.f = Some(
                value
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad opening cost '{value}'")))?,
            )
        }
        "k" => {
            header.k = Some(
                value
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad k '{value}'")))?,
            )
        }
        "d" => {
            let d = value
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad dimension '{value}'")))?;
            header.d = Some((line_no, d));
        }
        "clients" => header.clients = Some((line_no, list())),
        "candidates" => header.candidates = Some((line_no, list())),
        other => return Err(parse_err(line_no, format!("unknown header key '{other}'"))),
    }
    Ok(())
}

/// Yields `(1-based line number, content)` for non-blank lines with comments removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

type Resolver = Box<dyn Fn(usize, &str) -> Result<usize>>;

pub fn parse_instance(text: &str, format: Format) -> Result<Instance> {
    let mut header = Header::default();
    let mut data = Vec::new();
    for (line_no, line) in content_lines(text) {
        if line.contains('=') {
            parse_header_line(&mut header, line_no, line)?;
        } else {
            data.push((line_no, line));
        }
    }
    let (space, resolve): (Space, Resolver) = match format {
        Format::EdgeList => {
            let (graph, labels) = parse_edges(&data)?;
            let resolve = move |line: usize, label: &str| {
                labels
                    .get(label)
                    .copied()
                    .ok_or_else(|| parse_err(line, format!("unknown vertex '{label}'")))
            };
            (Space::Graph(graph), Box::new(resolve))
        }
        Format::PointsCsv => {
            let points = parse_points(&data, header.d)?;
            let n = points.len();
            let resolve = move |line: usize, label: &str| {
                label
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < n)
                    .ok_or_else(|| parse_err(line, format!("unknown point '{label}'")))
            };
            (Space::Euclidean(points), Box::new(resolve))
        }
    };
    let n = match &space {
        Space::Graph(g) => g.vertex_count(),
        Space::Euclidean(ps) => ps.len(),
    };
    let resolve_list = |entry: &Option<(usize, Vec<String>)>| -> Result<Vec<usize>> {
        match entry {
            None => Ok((0..n).collect()),
            Some((line, labels)) => labels.iter().map(|l| resolve(*line, l)).collect(),
        }
    };
    let clients = resolve_list(&header.clients)?;
    let candidates = resolve_list(&header.candidates)?;
    let mut inst = Instance::with_roles(space, clients, candidates, header.p.unwrap_or(1))?;
    if let Some(f) = header.f {
        inst = inst.with_opening_cost(f)?;
    }
    if let Some(k) = header.k {
        inst = inst.with_k(k)?;
    }
    Ok(inst)
}

fn parse_edges(data: &[(usize, &str)]) -> Result<(Graph, HashMap<String, usize>)> {
    let mut raw = Vec::with_capacity(data.len());
    for &(line_no, line) in data {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [u, v, w] = tokens[..] else {
            return Err(parse_err(
                line_no,
                format!("expected 'u v w', found {} fields", tokens.len()),
            ));
        };
        let weight: f64 = w
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad weight '{w}'")))?;
        if !weight.is_finite() || weight <= 0.0 {
            return Err(Error::NonPositiveWeight {
                line: line_no,
                weight,
            });
        }
        raw.push((u, v, weight));
    }
    if raw.is_empty() {
        return Err(parse_err(0, "edge list has no edges"));
    }

    let mut order: Vec<&str> = Vec::new();
    let mut seen: HashMap<&str, ()> = HashMap::new();
    for &(u, v, _) in &raw {
        for label in [u, v] {
            if seen.insert(label, ()).is_none() {
                order.push(label);
            }
        }
    }
    let n = order.len();
    let numeric: Option<Vec<usize>> = order.iter().map(|l| l.parse::<usize>().ok()).collect();
    let dense = numeric
        .as_ref()
        .is_some_and(|ids| ids.iter().all(|&i| i < n));
    let labels: HashMap<String, usize> = if dense {
        order
            .iter()
            .map(|l| (l.to_string(), l.parse().expect("numeric label")))
            .collect()
    } else {
        order
            .iter()
            .enumerate()
            .map(|(i, l)| (l.to_string(), i))
            .collect()
    };
    let edges = raw
        .iter()
        .map(|&(u, v, weight)| Edge {
            u: labels[u],
            v: labels[v],
            weight,
        })
        .collect();
    Ok((Graph::new(n, edges)?, labels))
}

fn parse_points(data: &[(usize, &str)], declared: Option<(usize, usize)>) -> Result<PointSet> {
    let mut dim = declared.map(|(_, d)| d);
    if dim == Some(0) {
        return Err(parse_err(declared.unwrap().0, "dimension must be positive"));
    }
    let mut coords = Vec::new();
    for &(line_no, line) in data {
        let values: Vec<f64> = line
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse()
                    .map_err(|_| parse_err(line_no, format!("bad coordinate '{t}'")))
            })
            .collect::<Result<_>>()?;
        let expected = *dim.get_or_insert(values.len());
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                line: line_no,
                expected,
                found: values.len(),
            });
        }
        coords.extend(values);
    }
    if coords.is_empty() {
        return Err(parse_err(0, "point file has no points"));
    }
    PointSet::new(dim.expect("at least one point"), coords)
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl Instance {
    /// Canonical text form; `parse_instance(to_text(x))` reproduces `x`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.element_count();
        if let Space::Euclidean(ps) = &self.space {
            writeln!(out, "d={}", ps.dim()).unwrap();
        }
        writeln!(out, "p={}", self.p).unwrap();
        if let Some(f) = self.opening_cost {
            writeln!(out, "f={f:?}").unwrap();
        }
        if let Some(k) = self.k {
            writeln!(out, "k={k}").unwrap();
        }
        if !self.clients.iter().copied().eq(0..n) {
            writeln!(out, "clients={}", join_ids(&self.clients)).unwrap();
        }
        if !self.candidates.iter().copied().eq(0..n) {
            writeln!(out, "candidates={}", join_ids(&self.candidates)).unwrap();
        }
        match &self.space {
            Space::Graph(g) => {
                for e in g.edges() {
                    writeln!(out, "{} {} {:?}", e.u, e.v, e.weight).unwrap();
                }
            }
            Space::Euclidean(ps) => {
                for i in 0..ps.len() {
                    let row: Vec<String> = ps.point(i).iter().map(|c| format!("{c:?}")).collect();
                    writeln!(out, "{}", row.join(",")).unwrap();
                }
            }
        }
        out
    }

    pub fn format(&self) -> Format {
        match self.space {
            Space::Graph(_) => Format::EdgeList,
            Space::Euclidean(_) => Format::PointsCsv,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_instance(path: &Path, format: Format) -> Result<Instance> {
    parse_instance(&read(path)?, format)
}

pub fn save_instance(path: &Path, instance: &Instance) -> Result<()> {
    write(path, &instance.to_text())
}

/// One center id per line; `#` comments.
pub fn parse_solution(text: &str) -> Result<Solution> {
    let ids = content_lines(text)
        .map(|(line_no, line)| {
            line.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad center id '{line}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    Solution::new(ids)
}

pub fn solution_to_text(s: &Solution) -> String {
    s.iter().map(|c| format!("{c}\n")).collect()
}

pub fn load_solution(path: &Path) -> Result<Solution> {
    parse_solution(&read(path)?)
}

pub fn save_solution(path: &Path, s: &Solution) -> Result<()> {
    write(path, &solution_to_text(s))
}
