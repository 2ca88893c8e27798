//! Text formats and SVG rendering.
//!
//! Line-oriented formats, whitespace-tokenized, `#` starting a comment
//! (object names therefore cannot contain whitespace or `#`, and must be
//! unique within their kind):
//!
//! * `busgraph v1` — graph files: `bus <name> [len <int>]`,
//!   `conn <name> : <bus>...` (one to four buses),
//!   `hyper <count> : <bus>...` (shorthand for `count` parallel connectors,
//!   named `h0, h1, ...` in reading order).
//! * `buslayout v1` — layout files, resolved against a graph:
//!   `bus <name> H|V <x> <y> <len>` (anchor is the minimum-coordinate
//!   endpoint), `conn <name> <x> <y>`.
//! * `busmults v1` — multiplicity overrides for duplicate expansion:
//!   `mult <count> : <bus>...` raises an existing parallel class to `count`.
//!
//! DIMACS CNF is read as not-all-equal clauses by fiat of this tool (no
//! standard exchange format exists for that); every clause must have
//! exactly three literals. Assignment files are whitespace-separated
//! `T`/`F` (or `1`/`0`) tokens, one per variable.

use crate::geometry::{verify_layout, BusPlacement, Layout, Orientation, Point, Violation};
use crate::graph::{BusGraph, BusId, ConnId, MultiplicityMap};
use crate::reductions::{Cnf, Lit};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing or wrong header, expected `{0}`")]
    Header(&'static str),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Comment-stripped, tokenized content lines with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let code = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = code.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn expect_header<'a, I: Iterator<Item = (usize, Vec<&'a str>)>>(
    lines: &mut I,
    want: &'static str,
) -> Result<(), ParseError> {
    match lines.next() {
        Some((_, t)) if t.len() == 2 && format!("{} {}", t[0], t[1]) == want => Ok(()),
        _ => Err(ParseError::Header(want)),
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected {what}, got {tok:?}")))
}

// ---------------------------------------------------------------- busgraph

pub fn parse_graph(text: &str) -> Result<BusGraph, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "busgraph v1")?;
    let mut g = BusGraph::new();
    let mut buses: BTreeMap<String, BusId> = BTreeMap::new();
    let mut conn_names: BTreeMap<String, ()> = BTreeMap::new();
    let mut hyper_seq = 0usize;

    let resolve = |ln: usize, toks: &[&str], buses: &BTreeMap<String, BusId>| {
        if toks.is_empty() || toks.len() > 4 {
            return Err(syntax(ln, "a connector takes one to four buses"));
        }
        toks.iter()
            .map(|n| buses.get(*n).copied().ok_or_else(|| syntax(ln, format!("unknown bus {n:?}"))))
            .collect::<Result<Vec<BusId>, _>>()
    };

    for (ln, t) in lines {
        match t[0] {
            "bus" => {
                let (name, len) = match t.len() {
                    2 => (t[1], None),
                    4 if t[2] == "len" => (t[1], Some(parse_int(ln, t[3], "a length")?)),
                    _ => return Err(syntax(ln, "expected `bus <name> [len <int>]`")),
                };
                if buses.contains_key(name) {
                    return Err(syntax(ln, format!("duplicate bus {name:?}")));
                }
                buses.insert(name.to_string(), g.add_bus_with_length(name, len));
            }
            "conn" => {
                if t.len() < 4 || t[2] != ":" {
                    return Err(syntax(ln, "expected `conn <name> : <bus>...`"));
                }
                if conn_names.insert(t[1].to_string(), ()).is_some() {
                    return Err(syntax(ln, format!("duplicate connector {:?}", t[1])));
                }
                let inc = resolve(ln, &t[3..], &buses)?;
                g.add_connector(t[1], &inc);
            }
            "hyper" => {
                if t.len() < 4 || t[2] != ":" {
                    return Err(syntax(ln, "expected `hyper <count> : <bus>...`"));
                }
                let count: u64 = parse_int(ln, t[1], "a count")?;
                if count == 0 {
                    return Err(syntax(ln, "hyper count must be at least 1"));
                }
                let inc = resolve(ln, &t[3..], &buses)?;
                for _ in 0..count {
                    let name = format!("h{hyper_seq}");
                    hyper_seq += 1;
                    if conn_names.insert(name.clone(), ()).is_some() {
                        return Err(syntax(ln, format!("duplicate connector {name:?}")));
                    }
                    g.add_connector(name, &inc);
                }
            }
            other => return Err(syntax(ln, format!("unknown directive {other:?}"))),
        }
    }
    Ok(g)
}

pub fn serialize_graph(g: &BusGraph) -> String {
    let mut out = String::from("busgraph v1\n");
    for b in &g.buses {
        match b.length {
            Some(l) => writeln!(out, "bus {} len {}", b.name, l).unwrap(),
            None => writeln!(out, "bus {}", b.name).unwrap(),
        }
    }
    for c in &g.connectors {
        let names: Vec<&str> =
            c.incident.iter().map(|&b| g.buses[b.0 as usize].name.as_str()).collect();
        writeln!(out, "conn {} : {}", c.name, names.join(" ")).unwrap();
    }
    out
}

// --------------------------------------------------------------- buslayout

pub fn parse_layout(g: &BusGraph, text: &str) -> Result<Layout, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "buslayout v1")?;
    let buses: BTreeMap<&str, BusId> =
        g.buses.iter().enumerate().map(|(i, b)| (b.name.as_str(), BusId(i as u32))).collect();
    let conns: BTreeMap<&str, ConnId> =
        g.connectors.iter().enumerate().map(|(i, c)| (c.name.as_str(), ConnId(i as u32))).collect();
    let mut l = Layout::new();
    for (ln, t) in lines {
        match t[0] {
            "bus" => {
                if t.len() != 6 {
                    return Err(syntax(ln, "expected `bus <name> H|V <x> <y> <len>`"));
                }
                let &id =
                    buses.get(t[1]).ok_or_else(|| syntax(ln, format!("unknown bus {:?}", t[1])))?;
                let orientation = match t[2] {
                    "H" => Orientation::Horizontal,
                    "V" => Orientation::Vertical,
                    o => return Err(syntax(ln, format!("expected H or V, got {o:?}"))),
                };
                let x = parse_int(ln, t[3], "an x coordinate")?;
                let y = parse_int(ln, t[4], "a y coordinate")?;
                let length = parse_int(ln, t[5], "a length")?;
                if l.buses.contains_key(&id) {
                    return Err(syntax(ln, format!("bus {:?} placed twice", t[1])));
                }
                l.place_bus(id, BusPlacement { orientation, anchor: Point::new(x, y), length });
            }
            "conn" => {
                if t.len() != 4 {
                    return Err(syntax(ln, "expected `conn <name> <x> <y>`"));
                }
                let &id = conns
                    .get(t[1])
                    .ok_or_else(|| syntax(ln, format!("unknown connector {:?}", t[1])))?;
                let x = parse_int(ln, t[2], "an x coordinate")?;
                let y = parse_int(ln, t[3], "a y coordinate")?;
                if l.connectors.contains_key(&id) {
                    return Err(syntax(ln, format!("connector {:?} placed twice", t[1])));
                }
                l.place_connector(id, Point::new(x, y));
            }
            other => return Err(syntax(ln, format!("unknown directive {other:?}"))),
        }
    }
    Ok(l)
}

pub fn serialize_layout(g: &BusGraph, l: &Layout) -> String {
    let mut out = String::from("buslayout v1\n");
    for (&id, p) in &l.buses {
        let o = match p.orientation {
            Orientation::Horizontal => "H",
            Orientation::Vertical => "V",
        };
        let name = &g.buses[id.0 as usize].name;
        writeln!(out, "bus {} {} {} {} {}", name, o, p.anchor.x, p.anchor.y, p.length).unwrap();
    }
    for (&id, c) in &l.connectors {
        let name = &g.connectors[id.0 as usize].name;
        writeln!(out, "conn {} {} {}", name, c.at.x, c.at.y).unwrap();
    }
    out
}

// ---------------------------------------------------------------- busmults

/// Parses multiplicity overrides on top of `g`'s own parallel classes.
/// Every `mult` line must name the bus set of an existing connector.
pub fn parse_mults(g: &BusGraph, text: &str) -> Result<MultiplicityMap, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "busmults v1")?;
    let buses: BTreeMap<&str, BusId> =
        g.buses.iter().enumerate().map(|(i, b)| (b.name.as_str(), BusId(i as u32))).collect();
    let mut m = g.to_multiplicity_encoding();
    for (ln, t) in lines {
        if t[0] != "mult" || t.len() < 4 || t[2] != ":" {
            return Err(syntax(ln, "expected `mult <count> : <bus>...`"));
        }
        let count: u64 = parse_int(ln, t[1], "a count")?;
        if count == 0 {
            return Err(syntax(ln, "multiplicities must be at least 1"));
        }
        let mut key = t[3..]
            .iter()
            .map(|n| buses.get(*n).copied().ok_or_else(|| syntax(ln, format!("unknown bus {n:?}"))))
            .collect::<Result<Vec<BusId>, _>>()?;
        key.sort();
        match m.counts.get_mut(&key) {
            Some(c) => *c = count,
            None => return Err(syntax(ln, "no connector joins exactly these buses")),
        }
    }
    Ok(m)
}

pub fn serialize_mults(g: &BusGraph, m: &MultiplicityMap) -> String {
    let mut out = String::from("busmults v1\n");
    for (key, count) in &m.counts {
        let names: Vec<&str> = key.iter().map(|&b| g.buses[b.0 as usize].name.as_str()).collect();
        writeln!(out, "mult {} : {}", count, names.join(" ")).unwrap();
    }
    out
}

// ------------------------------------------------------------------ DIMACS

pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut vars: Option<usize> = None;
    let mut want_clauses = 0usize;
    let mut clauses: Vec<[Lit; 3]> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if vars.is_some() {
                return Err(syntax(ln, "second problem line"));
            }
            let t: Vec<&str> = rest.split_whitespace().collect();
            if t.len() != 3 || t[0] != "cnf" {
                return Err(syntax(ln, "expected `p cnf <vars> <clauses>`"));
            }
            vars = Some(parse_int(ln, t[1], "a variable count")?);
            want_clauses = parse_int(ln, t[2], "a clause count")?;
            continue;
        }
        let n = vars.ok_or_else(|| syntax(ln, "clause before `p cnf` line"))?;
        for tok in line.split_whitespace() {
            let v: i64 = parse_int(ln, tok, "a literal")?;
            if v == 0 {
                let c: [Lit; 3] = current
                    .clone()
                    .try_into()
                    .map_err(|_| syntax(ln, "every clause must have exactly 3 literals"))?;
                clauses.push(c);
                current.clear();
            } else {
                let var = v.unsigned_abs() as usize;
                if var > n {
                    return Err(syntax(ln, format!("literal {v} exceeds declared {n} variables")));
                }
                current.push(if v > 0 { Lit::pos(var - 1) } else { Lit::neg(var - 1) });
            }
        }
    }
    let n = vars.ok_or(ParseError::Header("p cnf <vars> <clauses>"))?;
    if !current.is_empty() {
        return Err(syntax(text.lines().count(), "unterminated clause (missing 0)"));
    }
    if clauses.len() != want_clauses {
        return Err(syntax(
            text.lines().count(),
            format!("declared {want_clauses} clauses, found {}", clauses.len()),
        ));
    }
    Cnf::new(n, clauses).map_err(|e| syntax(0, e.to_string()))
}

pub fn serialize_dimacs(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.vars, cnf.clauses.len());
    for cl in &cnf.clauses {
        let lit = |l: &Lit| if l.negated { -(l.var as i64 + 1) } else { l.var as i64 + 1 };
        writeln!(out, "{} {} {} 0", lit(&cl[0]), lit(&cl[1]), lit(&cl[2])).unwrap();
    }
    out
}

// -------------------------------------------------------------- assignment

pub fn parse_assignment(text: &str) -> Result<Vec<bool>, ParseError> {
    let mut out = Vec::new();
    for (ln, toks) in content_lines(text) {
        for t in toks {
            match t {
                "T" | "t" | "1" | "true" => out.push(true),
                "F" | "f" | "0" | "false" => out.push(false),
                _ => return Err(syntax(ln, format!("expected T/F/1/0, got {t:?}"))),
            }
        }
    }
    Ok(out)
}

pub fn serialize_assignment(sigma: &[bool]) -> String {
    let toks: Vec<&str> = sigma.iter().map(|&b| if b { "T" } else { "F" }).collect();
    format!("{}\n", toks.join(" "))
}

// --------------------------------------------------------------------- SVG

/// Rendering knobs. Output is deterministic for a given input.
#[derive(Debug, Clone)]
pub struct SvgStyle {
    /// Pixels per grid step.
    pub scale: i64,
    /// Canvas margin in pixels.
    pub margin: i64,
    /// Render even when the layout does not verify.
    pub force: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { scale: 16, margin: 24, force: false }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("layout does not realize the graph ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),
}

/// Draws the layout in the figures' visual idiom: thick bus segments, dot
/// connectors, thin connector edges, grid y pointing up on screen. One SVG
/// element per bus, connector, and derivable edge, each carrying the object
/// name in a `<title>`.
pub fn render_svg(g: &BusGraph, l: &Layout, style: &SvgStyle) -> Result<String, RenderError> {
    if !style.force {
        let violations = verify_layout(g, l);
        if !violations.is_empty() {
            return Err(RenderError::Invalid(violations));
        }
    }
    let (lo, hi) = l.bounding_box().unwrap_or((Point::new(0, 0), Point::new(0, 0)));
    let px = |p: Point| {
        ((p.x - lo.x) * style.scale + style.margin, (hi.y - p.y) * style.scale + style.margin)
    };
    let w = (hi.x - lo.x) * style.scale + 2 * style.margin;
    let h = (hi.y - lo.y) * style.scale + 2 * style.margin;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<style>.bus{{stroke:#1a1a1a;stroke-width:6;stroke-linecap:square}}\
.edge{{stroke:#7a7a7a;stroke-width:2}}.conn{{fill:#c0392b}}</style>"
    )
    .unwrap();
    for e in crate::geometry::derive_edges(g, l) {
        let (x1, y1) = px(e.a);
        let (x2, y2) = px(e.b);
        let name = &g.connectors[e.connector.0 as usize].name;
        writeln!(
            out,
            "<line class=\"edge\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"><title>{name}-{}</title></line>",
            g.buses[e.bus.0 as usize].name
        )
        .unwrap();
    }
    for (&id, p) in &l.buses {
        let (x1, y1) = px(p.anchor);
        let (x2, y2) = px(p.end());
        let name = &g.buses[id.0 as usize].name;
        writeln!(
            out,
            "<line class=\"bus\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"><title>{name}</title></line>"
        )
        .unwrap();
    }
    for (&id, c) in &l.connectors {
        let (cx, cy) = px(c.at);
        let r = (style.scale / 3).max(2);
        let name = &g.connectors[id.0 as usize].name;
        writeln!(out, "<circle class=\"conn\" cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\"><title>{name}</title></circle>")
            .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
