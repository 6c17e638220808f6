//! Benchmark domains and the line-oriented instance format.
//!
//! ```text
//! domain: tile            domain: hanoi4        domain: pancake
//! width: 3                discs: 3              start: 3 1 4 2
//! height: 3               start: 0
//! tiles: 1 2 3 4 5 6 7 0 8  goal: 3
//!
//! domain: graph
//! vertex S h=6
//! edge S A
//! start S
//! goal Z
//! ```
//!
//! Fields may also be written as `key=value` tokens on one line, e.g.
//! `discs=3 start=0 goal=3`. `#` starts a comment. [`InstanceSpec::to_text`]
//! produces the canonical form, and parsing canonical text then serializing
//! it reproduces the input byte for byte.

pub mod generate;
pub mod graph;
pub mod hanoi;
pub mod pancake;
pub mod tile;

use crate::error::{Error, Result};
use crate::heuristics::pdb::Abstraction;
use crate::state::{Cost, GoalTest, GraphClass, OpId, PackedState, StateSpace};

pub use graph::{figure1_space, ExplicitGraph, ExplicitGraphInstance, FIGURE1_THRESHOLD};
pub use hanoi::{Hanoi4, Hanoi4Instance};
pub use pancake::{Pancake, PancakeInstance};
pub use tile::{SlidingTile, SlidingTileInstance};

/// Any of the built-in spaces.
#[derive(Clone, Debug)]
pub enum Domain {
    Tile(SlidingTile),
    Hanoi(Hanoi4),
    Pancake(Pancake),
    Graph(ExplicitGraph),
}

impl Domain {
    pub fn name(&self) -> &'static str {
        match self {
            Domain::Tile(_) => "tile",
            Domain::Hanoi(_) => "hanoi4",
            Domain::Pancake(_) => "pancake",
            Domain::Graph(_) => "graph",
        }
    }

    /// Pattern abstraction used to build pattern databases. Pattern
    /// variables are tile numbers, disc numbers (1 = smallest) or pancake
    /// values, depending on the domain.
    pub fn abstraction(&self, pattern: &[u8]) -> Result<Box<dyn Abstraction>> {
        Ok(match self {
            Domain::Tile(t) => Box::new(t.abstraction(pattern)?),
            Domain::Hanoi(h) => Box::new(h.abstraction(pattern)?),
            Domain::Pancake(p) => Box::new(p.abstraction(pattern)?),
            Domain::Graph(_) => {
                return Err(Error::Argument(
                    "explicit graphs have no pattern variables".into(),
                ))
            }
        })
    }
}

impl StateSpace for Domain {
    fn graph_class(&self) -> GraphClass {
        match self {
            Domain::Tile(d) => d.graph_class(),
            Domain::Hanoi(d) => d.graph_class(),
            Domain::Pancake(d) => d.graph_class(),
            Domain::Graph(d) => d.graph_class(),
        }
    }

    fn operator_count(&self) -> usize {
        match self {
            Domain::Tile(d) => d.operator_count(),
            Domain::Hanoi(d) => d.operator_count(),
            Domain::Pancake(d) => d.operator_count(),
            Domain::Graph(d) => d.operator_count(),
        }
    }

    #[inline]
    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()> {
        match self {
            Domain::Tile(d) => d.expand(s, out),
            Domain::Hanoi(d) => d.expand(s, out),
            Domain::Pancake(d) => d.expand(s, out),
            Domain::Graph(d) => d.expand(s, out),
        }
    }

    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>> {
        match self {
            Domain::Tile(d) => d.inverse_operator(op),
            Domain::Hanoi(d) => d.inverse_operator(op),
            Domain::Pancake(d) => d.inverse_operator(op),
            Domain::Graph(d) => d.inverse_operator(op),
        }
    }

    fn describe(&self, s: &PackedState) -> String {
        match self {
            Domain::Tile(d) => d.describe(s),
            Domain::Hanoi(d) => d.describe(s),
            Domain::Pancake(d) => d.describe(s),
            Domain::Graph(d) => d.describe(s),
        }
    }
}

/// A parsed instance of one of the built-in domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    Tile(SlidingTileInstance),
    Hanoi(Hanoi4Instance),
    Pancake(PancakeInstance),
    Graph(ExplicitGraphInstance),
}

/// A ready-to-search problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub space: Domain,
    pub start: PackedState,
    pub goal: GoalTest,
}

impl InstanceSpec {
    pub fn domain_name(&self) -> &'static str {
        match self {
            InstanceSpec::Tile(_) => "tile",
            InstanceSpec::Hanoi(_) => "hanoi4",
            InstanceSpec::Pancake(_) => "pancake",
            InstanceSpec::Graph(_) => "graph",
        }
    }

    pub fn build(&self) -> Result<Problem> {
        Ok(match self {
            InstanceSpec::Tile(t) => {
                t.validate()?;
                let sp = t.space()?;
                Problem {
                    goal: GoalTest::State(sp.goal_state()),
                    start: t.start(),
                    space: Domain::Tile(sp),
                }
            }
            InstanceSpec::Hanoi(h) => {
                let sp = h.space()?;
                Problem {
                    goal: GoalTest::State(sp.goal_state().clone()),
                    start: h.start(),
                    space: Domain::Hanoi(sp),
                }
            }
            InstanceSpec::Pancake(p) => {
                let sp = p.space()?;
                Problem {
                    goal: GoalTest::State(sp.goal_state()),
                    start: p.start(),
                    space: Domain::Pancake(sp),
                }
            }
            InstanceSpec::Graph(g) => Problem {
                space: Domain::Graph(g.space()?),
                start: g.start(),
                goal: g.goal_test(),
            },
        })
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let join = |v: &[u8]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!("domain: {}\n", self.domain_name());
        match self {
            InstanceSpec::Tile(t) => {
                out += &format!(
                    "width: {}\nheight: {}\ntiles: {}\n",
                    t.width,
                    t.height,
                    join(&t.tiles)
                );
            }
            InstanceSpec::Hanoi(h) => {
                let pegs = |v: &[u8]| {
                    if !v.is_empty() && v.iter().all(|&p| p == v[0]) {
                        v[0].to_string()
                    } else {
                        join(v)
                    }
                };
                out += &format!(
                    "discs: {}\nstart: {}\ngoal: {}\n",
                    h.discs,
                    pegs(&h.start),
                    pegs(&h.goal)
                );
            }
            InstanceSpec::Pancake(p) => {
                out += &format!("start: {}\n", join(&p.start));
            }
            InstanceSpec::Graph(g) => {
                for (name, h) in &g.vertices {
                    out += &format!("vertex {name} h={h}\n");
                }
                for &(u, v) in &g.edges {
                    out += &format!("edge {} {}\n", g.vertices[u].0, g.vertices[v].0);
                }
                out += &format!("start {}\n", g.vertices[g.start].0);
                for &goal in &g.goals {
                    out += &format!("goal {}\n", g.vertices[goal].0);
                }
            }
        }
        out
    }
}

/// Parses instance text. `domain` supplies the domain when the text has
/// no `domain:` header; when both are present they must agree.
pub fn parse_instance(text: &str, domain: Option<&str>) -> Result<InstanceSpec> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut body = &lines[..];
    let mut header = None;
    if let Some(&(n, first)) = lines.first() {
        if let Some(rest) = first.strip_prefix("domain") {
            let name = rest
                .trim_start()
                .strip_prefix([':', '='])
                .ok_or_else(|| Error::parse(n, "expected `domain: <name>`"))?
                .trim();
            header = Some((n, name));
            body = &lines[1..];
        }
    }
    let name = match (header, domain) {
        (Some((n, h)), Some(d)) if h != d => {
            return Err(Error::parse(n, format!("file declares domain {h}, expected {d}")))
        }
        (Some((_, h)), _) => h,
        (None, Some(d)) => d,
        (None, None) => return Err(Error::parse(1, "missing `domain:` header")),
    };
    let last_line = lines.last().map_or(1, |l| l.0);

    match name {
        "graph" => parse_graph(body, last_line).map(InstanceSpec::Graph),
        "tile" | "hanoi4" | "pancake" => {
            let fields = parse_fields(body)?;
            let spec = match name {
                "tile" => parse_tile(&fields, last_line)?,
                "hanoi4" => parse_hanoi(&fields, last_line)?,
                _ => parse_pancake(&fields, last_line)?,
            };
            spec.build().map_err(|e| match e {
                Error::Unsolvable(_) | Error::Parse { .. } => e,
                other => Error::parse(last_line, other.to_string()),
            })?;
            Ok(spec)
        }
        other => Err(Error::parse(
            header.map_or(1, |h| h.0),
            format!("unknown domain {other}"),
        )),
    }
}

struct Field<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

fn parse_fields<'a>(lines: &[(usize, &'a str)]) -> Result<Vec<Field<'a>>> {
    let mut out = Vec::new();
    for &(line, text) in lines {
        if let Some((key, value)) = text.split_once(':') {
            out.push(Field {
                line,
                key: key.trim(),
                value: value.trim(),
            });
        } else if text.contains('=') {
            for tok in text.split_whitespace() {
                let (key, value) = tok
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, format!("expected key=value, got `{tok}`")))?;
                out.push(Field { line, key, value });
            }
        } else {
            return Err(Error::parse(line, format!("cannot parse `{text}`")));
        }
    }
    Ok(out)
}

fn field<'a>(fields: &'a [Field<'a>], key: &str) -> Option<&'a Field<'a>> {
    fields.iter().find(|f| f.key == key)
}

fn required<'a>(fields: &'a [Field<'a>], key: &str, last_line: usize) -> Result<&'a Field<'a>> {
    field(fields, key).ok_or_else(|| Error::parse(last_line, format!("missing field `{key}`")))
}

fn check_known(fields: &[Field<'_>], known: &[&str]) -> Result<()> {
    match fields.iter().find(|f| !known.contains(&f.key)) {
        Some(f) => Err(Error::parse(f.line, format!("unknown field `{}`", f.key))),
        None => Ok(()),
    }
}

fn numbers(f: &Field<'_>) -> Result<Vec<u8>> {
    f.value
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u8>()
                .map_err(|_| Error::parse(f.line, format!("`{t}` is not a small integer")))
        })
        .collect()
}

fn number(f: &Field<'_>) -> Result<u8> {
    match numbers(f)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::parse(f.line, format!("`{}` expects one integer", f.key))),
    }
}

fn parse_tile(fields: &[Field<'_>], last: usize) -> Result<InstanceSpec> {
    check_known(fields, &["width", "height", "tiles"])?;
    let width = number(required(fields, "width", last)?)?;
    let height = number(required(fields, "height", last)?)?;
    let tf = required(fields, "tiles", last)?;
    let inst = SlidingTileInstance {
        width,
        height,
        tiles: numbers(tf)?,
    };
    match inst.validate() {
        Err(Error::Unsolvable(m)) => Err(Error::Unsolvable(m)),
        Err(e) => Err(Error::parse(tf.line, e.to_string())),
        Ok(()) => Ok(InstanceSpec::Tile(inst)),
    }
}

fn parse_hanoi(fields: &[Field<'_>], last: usize) -> Result<InstanceSpec> {
    check_known(fields, &["discs", "start", "goal"])?;
    let df = required(fields, "discs", last)?;
    let discs = number(df)?;
    let pegs = |key: &str| -> Result<Vec<u8>> {
        let f = required(fields, key, last)?;
        let v = numbers(f)?;
        Ok(if v.len() == 1 { vec![v[0]; discs as usize] } else { v })
    };
    let inst = Hanoi4Instance {
        discs,
        start: pegs("start")?,
        goal: pegs("goal")?,
    };
    inst.validate()
        .map_err(|e| Error::parse(df.line, e.to_string()))?;
    Ok(InstanceSpec::Hanoi(inst))
}

fn parse_pancake(fields: &[Field<'_>], last: usize) -> Result<InstanceSpec> {
    check_known(fields, &["n", "start"])?;
    let sf = required(fields, "start", last)?;
    let inst = PancakeInstance { start: numbers(sf)? };
    if let Some(nf) = field(fields, "n") {
        if number(nf)? as usize != inst.n() {
            return Err(Error::parse(nf.line, "`n` disagrees with the start permutation"));
        }
    }
    inst.validate()
        .map_err(|e| Error::parse(sf.line, e.to_string()))?;
    Ok(InstanceSpec::Pancake(inst))
}

fn parse_graph(lines: &[(usize, &str)], last: usize) -> Result<ExplicitGraphInstance> {
    let mut g = ExplicitGraphInstance {
        vertices: Vec::new(),
        edges: Vec::new(),
        start: usize::MAX,
        goals: Vec::new(),
    };
    let lookup = |g: &ExplicitGraphInstance, line: usize, name: &str| {
        g.index_of(name)
            .ok_or_else(|| Error::parse(line, format!("undeclared vertex `{name}`")))
    };
    for &(line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", name, h] => {
                let h: Cost = h
                    .strip_prefix("h=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::parse(line, "expected `h=<int>`"))?;
                if g.index_of(name).is_some() {
                    return Err(Error::parse(line, format!("vertex `{name}` declared twice")));
                }
                g.vertices.push((name.to_string(), h));
            }
            ["edge", from, to] => {
                let e = (lookup(&g, line, from)?, lookup(&g, line, to)?);
                g.edges.push(e);
            }
            ["start", name] => {
                if g.start != usize::MAX {
                    return Err(Error::parse(line, "start declared twice"));
                }
                g.start = lookup(&g, line, name)?;
            }
            ["goal", name] => {
                let v = lookup(&g, line, name)?;
                g.goals.push(v);
            }
            _ => return Err(Error::parse(line, format!("cannot parse `{text}`"))),
        }
    }
    if g.start == usize::MAX {
        return Err(Error::parse(last, "missing `start` line"));
    }
    g.validate().map_err(|e| Error::parse(last, e.to_string()))?;
    Ok(g)
}
