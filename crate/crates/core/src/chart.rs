//! Adams-style charts: parsing, canonical emission, conversion to degreewise
//! modules, dualization, comparison and SVG rendering.
//!
//! A column `x` holds dots `(x, y)`. Dots joined by vertical or exotic edges
//! form a tower, read as a cyclic group `Z/p^(number of dots)` whose bottom
//! dot is the generator. A generator edge from a dot at position `j` of one
//! tower to position `j'` of another says the generator acts by `p^(j'-j)`
//! on the bottom classes. Filtrations `y` are presentation only.
//!
//! Internal degree is `x` on homology charts and `-x` on cohomology charts,
//! so generator edges run from `x` to `x + |v|` on homology charts and to
//! `x - |v|` on cohomology charts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::coeff::CoefficientRing;
use crate::degreewise::DegreewiseModule;
use crate::error::AlgebraError;
use crate::linalg::GroupDescriptor;
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("syntax error on line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("edge on line {line} references a missing dot")]
    DanglingEdge { line: usize },
    #[error("edge {edge} violates the slope rule of its kind")]
    BadSlope { edge: String },
    #[error("towers branch in column {x}")]
    AmbiguousTower { x: i64 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("chart does not match the ring: {0}")]
    RingMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Orientation {
    Homology,
    Cohomology,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Homology => Orientation::Cohomology,
            Orientation::Cohomology => Orientation::Homology,
        }
    }

    /// Internal degree of column `x`.
    pub fn internal_degree(self, x: i64) -> i64 {
        match self {
            Orientation::Homology => x,
            Orientation::Cohomology => -x,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Orientation::Homology => "homology",
            Orientation::Cohomology => "cohomology",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dot {
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeKind {
    Vertical,
    Generator(String),
    Exotic,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeKind::Vertical => f.write_str("vert"),
            EdgeKind::Generator(g) => write!(f, "gen:{g}"),
            EdgeKind::Exotic => f.write_str("exotic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub from: Dot,
    pub to: Dot,
    pub kind: EdgeKind,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {}", self.from.x, self.from.y, self.to.x, self.to.y, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub name: String,
    pub orientation: Orientation,
    pub prime: u64,
    /// generator degrees by name
    pub gens: BTreeMap<String, i64>,
    /// columns whose towers may be cut off by the edge of the picture
    pub incomplete: BTreeSet<i64>,
    pub dots: BTreeSet<Dot>,
    pub edges: BTreeSet<Edge>,
}

impl Default for Chart {
    fn default() -> Self {
        Chart {
            name: "empty".into(),
            orientation: Orientation::Homology,
            prime: 2,
            gens: BTreeMap::new(),
            incomplete: BTreeSet::new(),
            dots: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ChartError {
    ChartError::SyntaxError { line, message: message.into() }
}

fn int(line: usize, s: &str) -> Result<i64, ChartError> {
    s.parse().map_err(|_| syntax(line, format!("expected an integer, found `{s}`")))
}

pub fn parse_chart(text: &str) -> Result<Chart, ChartError> {
    let mut chart: Option<Chart> = None;
    let mut edge_lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if words[0] == "chart" {
            if chart.is_some() {
                return Err(syntax(line, "second chart header"));
            }
            let [_, name, orient, prime] = words[..] else {
                return Err(syntax(line, "expected `chart <name> orientation=<o> prime=<p>`"));
            };
            let orientation = match orient.strip_prefix("orientation=") {
                Some("homology") => Orientation::Homology,
                Some("cohomology") => Orientation::Cohomology,
                _ => return Err(syntax(line, format!("bad orientation `{orient}`"))),
            };
            let prime = prime
                .strip_prefix("prime=")
                .and_then(|p| p.parse::<u64>().ok())
                .filter(|&p| crate::coeff::is_prime(p))
                .ok_or_else(|| syntax(line, format!("bad prime `{prime}`")))?;
            chart = Some(Chart { name: name.to_string(), orientation, prime, ..Chart::default() });
            continue;
        }
        let c = chart.as_mut().ok_or_else(|| syntax(line, "missing chart header"))?;
        match words[0] {
            "gen" => {
                let [_, name, deg] = words[..] else { return Err(syntax(line, "expected `gen <name> <degree>`")) };
                let deg = int(line, deg)?;
                if deg <= 0 {
                    return Err(syntax(line, "generator degrees are positive"));
                }
                if c.gens.insert(name.to_string(), deg).is_some() {
                    return Err(syntax(line, format!("generator `{name}` declared twice")));
                }
            }
            "incomplete" => {
                let [_, x] = words[..] else { return Err(syntax(line, "expected `incomplete <x>`")) };
                c.incomplete.insert(int(line, x)?);
            }
            "dot" => {
                let [_, x, y] = words[..] else { return Err(syntax(line, "expected `dot <x> <y>`")) };
                let (x, y) = (int(line, x)?, int(line, y)?);
                if y < 0 {
                    return Err(syntax(line, "filtration must be nonnegative"));
                }
                c.dots.insert(Dot { x, y });
            }
            "edge" => {
                let [_, x1, y1, x2, y2, kind] = words[..] else {
                    return Err(syntax(line, "expected `edge <x1> <y1> <x2> <y2> <kind>`"));
                };
                let kind = match kind {
                    "vert" => EdgeKind::Vertical,
                    "exotic" => EdgeKind::Exotic,
                    k => match k.strip_prefix("gen:") {
                        Some(g) if !g.is_empty() => EdgeKind::Generator(g.to_string()),
                        _ => return Err(syntax(line, format!("bad edge kind `{k}`"))),
                    },
                };
                let e = Edge {
                    from: Dot { x: int(line, x1)?, y: int(line, y1)? },
                    to: Dot { x: int(line, x2)?, y: int(line, y2)? },
                    kind,
                };
                edge_lines.push((line, e));
            }
            w => return Err(syntax(line, format!("unknown directive `{w}`"))),
        }
    }
    let mut chart = chart.unwrap_or_default();
    for (line, e) in edge_lines {
        if !chart.dots.contains(&e.from) || !chart.dots.contains(&e.to) {
            return Err(ChartError::DanglingEdge { line });
        }
        chart.check_slope(&e)?;
        chart.edges.insert(e);
    }
    Ok(chart)
}

impl Chart {
    fn check_slope(&self, e: &Edge) -> Result<(), ChartError> {
        let ok = match &e.kind {
            EdgeKind::Vertical => e.from.x == e.to.x && e.to.y == e.from.y + 1,
            // exotic extensions may jump several filtrations
            EdgeKind::Exotic => e.from.x == e.to.x && e.to.y > e.from.y,
            EdgeKind::Generator(g) => {
                let deg = *self.gens.get(g).ok_or_else(|| ChartError::UnknownGenerator(g.clone()))?;
                match self.orientation {
                    Orientation::Homology => e.to.x == e.from.x + deg,
                    Orientation::Cohomology => e.to.x == e.from.x - deg,
                }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ChartError::BadSlope { edge: e.to_string() })
        }
    }

    /// Canonical text: header, generators, incomplete columns, dots and
    /// edges, each block sorted.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "chart {} orientation={} prime={}", self.name, self.orientation.name(), self.prime);
        for (g, d) in &self.gens {
            let _ = writeln!(s, "gen {g} {d}");
        }
        for x in &self.incomplete {
            let _ = writeln!(s, "incomplete {x}");
        }
        for d in &self.dots {
            let _ = writeln!(s, "dot {} {}", d.x, d.y);
        }
        for e in &self.edges {
            let _ = writeln!(s, "edge {e}");
        }
        s
    }

    pub fn columns(&self) -> BTreeSet<i64> {
        self.dots.iter().map(|d| d.x).collect()
    }

    fn step(&self, deg: i64) -> i64 {
        match self.orientation {
            Orientation::Homology => deg,
            Orientation::Cohomology => -deg,
        }
    }

    /// Towers of column `x`, each listed bottom to top, ordered by height
    /// (tallest first) and then by bottom filtration.
    pub fn towers(&self, x: i64) -> Result<Vec<Vec<Dot>>, ChartError> {
        let dots: Vec<Dot> = self.dots.iter().copied().filter(|d| d.x == x).collect();
        let mut up: BTreeMap<Dot, Dot> = BTreeMap::new();
        let mut down: BTreeMap<Dot, Dot> = BTreeMap::new();
        for e in &self.edges {
            if e.from.x != x || !matches!(e.kind, EdgeKind::Vertical | EdgeKind::Exotic) {
                continue;
            }
            if up.insert(e.from, e.to).is_some() || down.insert(e.to, e.from).is_some() {
                return Err(ChartError::AmbiguousTower { x });
            }
        }
        let mut towers: Vec<Vec<Dot>> = dots
            .iter()
            .filter(|d| !down.contains_key(d))
            .map(|&bottom| {
                let mut t = vec![bottom];
                while let Some(&next) = up.get(t.last().unwrap()) {
                    t.push(next);
                }
                t
            })
            .collect();
        towers.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].y.cmp(&b[0].y)));
        Ok(towers)
    }

    fn all_towers(&self) -> Result<BTreeMap<i64, Vec<Vec<Dot>>>, ChartError> {
        self.columns().into_iter().map(|x| Ok((x, self.towers(x)?))).collect()
    }

    /// Tower heights per column, tallest first.
    pub fn tower_heights(&self) -> Result<BTreeMap<i64, Vec<usize>>, ChartError> {
        Ok(self.all_towers()?.into_iter().map(|(x, ts)| (x, ts.iter().map(Vec::len).collect())).collect())
    }
}

fn position(towers: &[Vec<Dot>], d: Dot) -> Option<(usize, usize)> {
    towers.iter().enumerate().find_map(|(k, t)| t.iter().position(|&e| e == d).map(|j| (k, j)))
}

/// Generator actions read off the chart: for every generator and source
/// column, the matrix of exponents (`None` for zero) from source towers to
/// target towers, using the lowest-source edge of each tower pair.
type ExponentTable = BTreeMap<(String, i64), Vec<Vec<Option<u32>>>>;

fn action_exponents(c: &Chart, towers: &BTreeMap<i64, Vec<Vec<Dot>>>) -> Result<ExponentTable, ChartError> {
    let mut out: ExponentTable = BTreeMap::new();
    let mut best: BTreeMap<(String, i64, usize, usize), usize> = BTreeMap::new();
    for e in &c.edges {
        let EdgeKind::Generator(g) = &e.kind else { continue };
        let (src, tgt) = (&towers[&e.from.x], &towers[&e.to.x]);
        let (sk, sj) = position(src, e.from).expect("dot in a tower");
        let (tk, tj) = position(tgt, e.to).expect("dot in a tower");
        if tj < sj {
            return Err(ChartError::BadSlope { edge: e.to_string() });
        }
        let key = (g.clone(), e.from.x, sk, tk);
        if best.get(&key).is_none_or(|&j| sj < j) {
            best.insert(key, sj);
            let m = out.entry((g.clone(), e.from.x)).or_insert_with(|| vec![vec![None; src.len()]; tgt.len()]);
            m[tk][sk] = Some((tj - sj) as u32);
        }
    }
    Ok(out)
}

/// Degreewise module over `Z_(p)` described by the chart.
pub fn chart_to_module(c: &Chart, ring: &GradedRing) -> Result<DegreewiseModule, ChartError> {
    if ring.coeff.p() != c.prime {
        return Err(ChartError::RingMismatch(format!("chart prime {} vs ring {}", c.prime, ring.coeff)));
    }
    for (g, &d) in &c.gens {
        match ring.polynomial.iter().find(|r| &r.name == g) {
            Some(r) if r.degree == d => {}
            _ => return Err(ChartError::RingMismatch(format!("generator {g}:{d} is not a ring generator"))),
        }
    }
    chart_module(c)
}

fn chart_module(c: &Chart) -> Result<DegreewiseModule, ChartError> {
    let towers = c.all_towers()?;
    let coeff = CoefficientRing::p_local(c.prime)?;
    let generators: Vec<(String, i64)> = c.gens.iter().map(|(g, &d)| (g.clone(), d)).collect();
    let groups: BTreeMap<i64, Vec<u32>> = towers
        .iter()
        .map(|(&x, ts)| (c.orientation.internal_degree(x), ts.iter().map(|t| t.len() as u32).collect()))
        .collect();
    let mut actions = BTreeMap::new();
    for ((g, x), m) in action_exponents(c, &towers)? {
        let gi = generators.iter().position(|(n, _)| *n == g).ok_or_else(|| ChartError::UnknownGenerator(g.clone()))?;
        let tgt = &towers[&(x + c.step(c.gens[&g]))];
        let rows = m
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let order = c.prime.pow(tgt[k].len() as u32);
                row.iter().map(|e| e.map_or(0, |e| c.prime.checked_pow(e).map_or(0, |v| v % order))).collect()
            })
            .collect();
        actions.insert((gi, c.orientation.internal_degree(x)), rows);
    }
    let degrees: Vec<i64> = groups.keys().copied().collect();
    let window = match (degrees.first(), degrees.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, 0),
    };
    Ok(DegreewiseModule::new(coeff, generators, window, groups, actions, false, false)?)
}

/// The dual chart: columns move to `x + |a|`, every tower is turned upside
/// down, vertical and exotic edges swap (a flipped exotic edge stays exotic
/// when it spans more than one filtration), generator edges are recomputed
/// from the transposed action and the orientation toggles.
pub fn dual_chart(c: &Chart, a: i64) -> Result<Chart, ChartError> {
    let shift = a.abs();
    let towers = c.all_towers()?;
    let exps = action_exponents(c, &towers)?;
    let mut out = Chart {
        name: format!("{}-dual", c.name),
        orientation: c.orientation.flipped(),
        prime: c.prime,
        gens: c.gens.clone(),
        incomplete: c.incomplete.iter().map(|x| x + shift).collect(),
        dots: BTreeSet::new(),
        edges: BTreeSet::new(),
    };
    // flipped towers, listed bottom to top in the dual chart
    let mut flipped: BTreeMap<i64, Vec<Vec<Dot>>> = BTreeMap::new();
    for (&x, ts) in &towers {
        let top = ts.iter().flatten().map(|d| d.y).max().unwrap_or(0);
        let image = |d: &Dot| Dot { x: x + shift, y: top - d.y };
        for t in ts {
            out.dots.extend(t.iter().map(image));
        }
        flipped.insert(x, ts.iter().map(|t| t.iter().rev().map(image).collect()).collect());
    }
    for e in &c.edges {
        let kind = match e.kind {
            EdgeKind::Vertical => EdgeKind::Exotic,
            EdgeKind::Exotic if e.to.y - e.from.y == 1 => EdgeKind::Vertical,
            EdgeKind::Exotic => EdgeKind::Exotic,
            EdgeKind::Generator(_) => continue,
        };
        let top = towers[&e.from.x].iter().flatten().map(|d| d.y).max().unwrap_or(0);
        let from = Dot { x: e.to.x + shift, y: top - e.to.y };
        let to = Dot { x: e.from.x + shift, y: top - e.from.y };
        out.edges.insert(Edge { from, to, kind });
    }
    // x: Z/p^b -> Z/p^a by p^e dualizes to Z/p^a -> Z/p^b by p^(e + b - a)
    for ((g, x), m) in &exps {
        let x2 = x + c.step(c.gens[g]);
        let (src, tgt) = (&flipped[x], &flipped[&x2]);
        for (tk, row) in m.iter().enumerate() {
            for (sk, e) in row.iter().enumerate() {
                let Some(e) = e else { continue };
                let (b, a_len) = (src[sk].len(), tgt[tk].len());
                let Some(e_dual) = (*e as usize + b).checked_sub(a_len) else { continue };
                for i in 0..a_len {
                    if i + e_dual >= b {
                        break;
                    }
                    out.edges.insert(Edge {
                        from: tgt[tk][i],
                        to: src[sk][i + e_dual],
                        kind: EdgeKind::Generator(g.clone()),
                    });
                }
            }
        }
    }
    for e in &out.edges {
        out.check_slope(e)?;
    }
    Ok(out)
}

/// Where [`dual_chart`] sends the dot `d`, if `d` is on the chart.
pub fn dual_position(c: &Chart, d: Dot, a: i64) -> Option<Dot> {
    if !c.dots.contains(&d) {
        return None;
    }
    let top = c.dots.iter().filter(|e| e.x == d.x).map(|e| e.y).max()?;
    Some(Dot { x: d.x + a.abs(), y: top - d.y })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub x: Option<i64>,
    pub what: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChartDiff {
    pub skipped: Vec<i64>,
    pub entries: Vec<DiffEntry>,
}

impl ChartDiff {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.skipped.is_empty() {
            let cols: Vec<String> = self.skipped.iter().map(i64::to_string).collect();
            let _ = writeln!(s, "skipped incomplete columns: {}", cols.join(" "));
        }
        for e in &self.entries {
            let at = e.x.map_or(String::new(), |x| format!("x={x} "));
            let _ = writeln!(s, "{at}{}: {} vs {}", e.what, e.left, e.right);
        }
        let _ = writeln!(s, "{}", if self.is_empty() { "no differences" } else { "charts differ" });
        s
    }
}

fn describe(g: &GroupDescriptor, p: u64) -> String {
    g.format(&CoefficientRing::PLocalIntegers(p))
}

/// Module-level comparison: orientation, prime, generators, tower heights
/// per column and the image of every generator action. Columns marked
/// incomplete in either chart are skipped.
pub fn compare_charts(a: &Chart, b: &Chart) -> Result<ChartDiff, ChartError> {
    let mut entries = Vec::new();
    let mut push = |x: Option<i64>, what: &str, l: String, r: String| {
        entries.push(DiffEntry { x, what: what.into(), left: l, right: r });
    };
    if a.orientation != b.orientation {
        push(None, "orientation", a.orientation.name().into(), b.orientation.name().into());
    }
    if a.prime != b.prime {
        push(None, "prime", a.prime.to_string(), b.prime.to_string());
    }
    if a.gens != b.gens {
        push(None, "generators", format!("{:?}", a.gens), format!("{:?}", b.gens));
    }
    if a.orientation != b.orientation || a.prime != b.prime || a.gens != b.gens {
        return Ok(ChartDiff { skipped: Vec::new(), entries });
    }
    let skip: BTreeSet<i64> = a.incomplete.union(&b.incomplete).copied().collect();
    let (ha, hb) = (a.tower_heights()?, b.tower_heights()?);
    let columns: BTreeSet<i64> = ha.keys().chain(hb.keys()).copied().collect();
    let (ma, mb) = (chart_module(a)?, chart_module(b)?);
    let p = a.prime;
    for &x in &columns {
        if skip.contains(&x) {
            continue;
        }
        let (ta, tb) = (ha.get(&x).cloned().unwrap_or_default(), hb.get(&x).cloned().unwrap_or_default());
        if ta != tb {
            push(Some(x), "towers", format!("{ta:?}"), format!("{tb:?}"));
        }
        for (gi, (g, deg)) in ma.generators.iter().enumerate() {
            let x2 = x + a.step(*deg);
            if skip.contains(&x2) {
                continue;
            }
            let d = a.orientation.internal_degree(x);
            let (ia, ib) = (ma.action_image(gi, d), mb.action_image(gi, d));
            if ia != ib {
                push(Some(x), &format!("{g} image to x={x2}"), describe(&ia, p), describe(&ib, p));
            }
        }
    }
    let skipped = skip.into_iter().filter(|x| columns.contains(x)).collect();
    Ok(ChartDiff { skipped, entries })
}

const UNIT: i64 = 20;
const MARGIN: i64 = 30;

/// Deterministic SVG: black dots and edges, red exotic edges, x labels at
/// multiples of 4. Cohomology charts run right to left.
pub fn emit_chart_svg(c: &Chart) -> String {
    let cols = c.columns();
    let (lo, hi) = match (cols.first(), cols.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, 4),
    };
    let (lo, hi) = (lo - lo.rem_euclid(4), hi + (4 - hi.rem_euclid(4)) % 4);
    let ymax = c.dots.iter().map(|d| d.y).max().unwrap_or(0).max(1);
    let width = (hi - lo) * UNIT + 2 * MARGIN;
    let height = ymax * UNIT + 2 * MARGIN + UNIT;
    let px = |x: i64| match c.orientation {
        Orientation::Homology => MARGIN + (x - lo) * UNIT,
        Orientation::Cohomology => MARGIN + (hi - x) * UNIT,
    };
    let base = MARGIN + ymax * UNIT;
    let py = |y: i64| base - y * UNIT;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#);
    let _ = writeln!(s, "<title>{}</title>", c.name);
    let _ = writeln!(s, r#"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="black" stroke-width="1"/>"#, MARGIN - UNIT / 2, width - MARGIN + UNIT / 2);
    for x in (lo..=hi).step_by(4) {
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{x}</text>"#, px(x), base + UNIT);
    }
    for e in &c.edges {
        let colour = if e.kind == EdgeKind::Exotic { "red" } else { "black" };
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="1.5"/>"#,
            px(e.from.x),
            py(e.from.y),
            px(e.to.x),
            py(e.to.y)
        );
    }
    for d in &c.dots {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, px(d.x), py(d.y));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "chart t orientation=homology prime=2\ngen v 2\ndot 0 0\ndot 0 1\ndot 2 1\nedge 0 0 0 1 vert\nedge 0 0 2 1 gen:v\n";

    #[test]
    fn empty_file_is_an_empty_chart() {
        assert_eq!(parse_chart("").unwrap(), Chart::default());
        assert_eq!(parse_chart("# nothing\n\n").unwrap(), Chart::default());
    }

    #[test]
    fn round_trip_is_canonical() {
        let c = parse_chart(SMALL).unwrap();
        let text = c.emit();
        assert_eq!(text, SMALL);
        assert_eq!(parse_chart(&text).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_slope = "chart t orientation=homology prime=2\ndot 0 0\ndot 0 2\nedge 0 0 0 2 vert\n";
        assert!(matches!(parse_chart(bad_slope), Err(ChartError::BadSlope { .. })));
        let dangling = "chart t orientation=homology prime=2\ndot 0 0\nedge 0 0 0 1 vert\n";
        assert_eq!(parse_chart(dangling), Err(ChartError::DanglingEdge { line: 3 }));
        assert!(matches!(parse_chart("dot 0 0\n"), Err(ChartError::SyntaxError { line: 1, .. })));
        assert!(matches!(parse_chart("chart t orientation=up prime=2\n"), Err(ChartError::SyntaxError { line: 1, .. })));
    }

    #[test]
    fn towers_become_cyclic_groups() {
        let c = parse_chart(SMALL).unwrap();
        let m = chart_module(&c).unwrap();
        assert_eq!(m.exponents(0), vec![2]);
        assert_eq!(m.exponents(2), vec![1]);
        assert_eq!(m.action(0, 0), vec![vec![1]]);
        let single = parse_chart("chart s orientation=homology prime=2\ndot 5 0\n").unwrap();
        assert_eq!(chart_module(&single).unwrap().exponents(5), vec![1]);
    }

    #[test]
    fn branching_towers_are_rejected() {
        let text = "chart b orientation=homology prime=2\ndot 0 0\ndot 0 1\ndot 0 3\nedge 0 0 0 1 vert\nedge 0 0 0 3 exotic\n";
        let c = parse_chart(text).unwrap();
        assert_eq!(chart_module(&c), Err(ChartError::AmbiguousTower { x: 0 }));
    }

    #[test]
    fn dual_of_a_single_dot() {
        let c = parse_chart("chart s orientation=homology prime=2\ndot 7 0\n").unwrap();
        let d = dual_chart(&c, -4).unwrap();
        assert_eq!(d.dots.iter().copied().collect::<Vec<_>>(), vec![Dot { x: 11, y: 0 }]);
        assert_eq!(d.orientation, Orientation::Cohomology);
        let dd = dual_chart(&d, -4).unwrap();
        assert_eq!(dd.dots.iter().copied().collect::<Vec<_>>(), vec![Dot { x: 15, y: 0 }]);
    }

    #[test]
    fn dual_transposes_actions() {
        let c = parse_chart(SMALL).unwrap();
        let d = dual_chart(&c, -4).unwrap();
        let m = chart_module(&d).unwrap();
        // Z/4 at 0 onto Z/2 at 2 dualizes to Z/2 at -6 into Z/4 at -4 by 2
        assert_eq!(m.exponents(-4), vec![2]);
        assert_eq!(m.exponents(-6), vec![1]);
        assert_eq!(m.action(0, -6), vec![vec![2]]);
        assert!(compare_charts(&c, &c).unwrap().is_empty());
    }

    #[test]
    fn svg_for_empty_and_single_dot() {
        let e = emit_chart_svg(&Chart::default());
        assert!(!e.contains("<circle"));
        assert!(e.contains("<line"));
        let c = parse_chart("chart s orientation=homology prime=2\ndot 1 0\n").unwrap();
        assert_eq!(emit_chart_svg(&c).matches("<circle").count(), 1);
    }
}
