//! Combinatorial Heegaard diagrams.
//!
//! A diagram is given by its oriented curves, each listed as a cyclic sequence
//! of intersection points, together with one crossing sign per point. The sign
//! fixes the rotation system at the point: a positive point has the
//! counterclockwise order `(alpha-out, beta-out, alpha-in, beta-in)`, a
//! negative point `(alpha-out, beta-in, alpha-in, beta-out)`. Tracing faces of
//! that rotation system gives the boundary circles of the complementary
//! regions; regions that are not disks are declared with region directives
//! grouping several circles and assigning a genus.
//!
//! In both orders the half-edges at positions 0 and 2 lie on the alpha curve
//! and those at positions 1 and 3 on the beta curve. Quadrant `k` is the
//! sector swept counterclockwise from half-edge `k` to half-edge `k + 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type ArcId = usize;
pub type CircleId = usize;
pub type RegionId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Alpha,
    Beta,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Alpha => f.write_str("alpha"),
            Family::Beta => f.write_str("beta"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    LeftAfter,
    RightAfter,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::LeftAfter => Side::RightAfter,
            Side::RightAfter => Side::LeftAfter,
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            Side::LeftAfter => "left-after",
            Side::RightAfter => "right-after",
        }
    }

    fn parse(s: &str) -> Option<Side> {
        match s {
            "left-after" => Some(Side::LeftAfter),
            "right-after" => Some(Side::RightAfter),
            _ => None,
        }
    }
}

/// 1-based source position. `line == 0` marks programmatically built input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: vertex `{vertex}` listed twice on {family} curves")]
    DuplicateVertex {
        vertex: String,
        family: Family,
        span: Span,
    },
    #[error("{span}: vertex `{vertex}` has no crossing sign")]
    MissingSign { vertex: String, span: Span },
    #[error("{span}: crossing sign on beta vertex `{vertex}` (signs belong on alpha lines)")]
    UnexpectedSign { vertex: String, span: Span },
    #[error("vertex `{vertex}` lies on a {present} curve but on no {missing} curve")]
    UnpairedVertex {
        vertex: String,
        present: Family,
        missing: Family,
    },
    #[error("genus {genus} needs {genus} alpha and {genus} beta curves, found {alphas} and {betas}")]
    CurveCountMismatch {
        genus: usize,
        alphas: usize,
        betas: usize,
    },
    #[error("{span}: curve `{curve}` has no intersection points")]
    EmptyCurve { curve: String, span: Span },
    #[error("{span}: curve name `{curve}` used twice")]
    DuplicateCurve { curve: String, span: Span },
    #[error("{span}: region name `{region}` used twice")]
    DuplicateRegion { region: String, span: Span },
    #[error("missing `{0}` line")]
    MissingLine(&'static str),
    #[error("{span}: unknown curve `{curve}`")]
    UnknownCurve { curve: String, span: Span },
    #[error("{span}: vertex `{vertex}` is not on curve `{curve}`")]
    VertexNotOnCurve {
        curve: String,
        vertex: String,
        span: Span,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("Euler characteristic mismatch: cells give {found}, genus {genus} needs {expected}")]
    EulerMismatch {
        genus: usize,
        expected: i64,
        found: i64,
    },
    #[error("{span}: face circle `{circle}` claimed by more than one region")]
    CircleClaimedTwice { circle: String, span: Span },
    #[error("{span}: `circles=auto` only describes disk regions (genus 0)")]
    AutoWithGenus { span: Span },
    #[error("diagram graph together with its regions is disconnected")]
    Disconnected,
    #[error("cutting along all {0} curves disconnects the surface; the {0} curves are dependent")]
    DependentCurves(Family),
}

impl DiagramError {
    /// Source position, when the error points at one.
    pub fn span(&self) -> Option<Span> {
        use DiagramError::*;
        let span = match self {
            Syntax { span, .. }
            | DuplicateVertex { span, .. }
            | MissingSign { span, .. }
            | UnexpectedSign { span, .. }
            | EmptyCurve { span, .. }
            | DuplicateCurve { span, .. }
            | DuplicateRegion { span, .. }
            | UnknownCurve { span, .. }
            | VertexNotOnCurve { span, .. }
            | CircleClaimedTwice { span, .. }
            | AutoWithGenus { span } => *span,
            _ => return None,
        };
        (span.line > 0).then_some(span)
    }
}

/// Interned intersection point. The sign is the one given on the alpha line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDecl {
    pub name: String,
    pub sign: Sign,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    /// Cyclic order along the oriented curve.
    pub vertices: Vec<VertexId>,
    pub span: Span,
}

/// Names one side of the arc that leaves `vertex` along `curve`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locator {
    pub curve: String,
    pub vertex: String,
    pub side: Side,
    pub span: Span,
}

impl Locator {
    pub fn new(curve: &str, vertex: &str, side: Side) -> Self {
        Locator {
            curve: curve.to_string(),
            vertex: vertex.to_string(),
            side,
            span: Span::default(),
        }
    }
}

impl fmt::Display for Locator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.curve, self.vertex, self.side.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircleSelection {
    /// Every circle not claimed elsewhere becomes its own disk.
    Auto,
    Listed(Vec<Locator>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionDirective {
    pub name: String,
    pub genus: u32,
    pub circles: CircleSelection,
    pub span: Span,
}

/// Parsed diagram description with vertex names interned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSystemInput {
    pub genus: usize,
    pub vertices: Vec<VertexDecl>,
    pub alphas: Vec<Curve>,
    pub betas: Vec<Curve>,
    pub basepoint: Locator,
    pub regions: Vec<RegionDirective>,
}

/// Uninterned curve listing, used by the parser and by programmatic builders.
#[derive(Clone, Debug)]
pub struct CurveListing {
    pub name: String,
    pub entries: Vec<(String, Option<Sign>, Span)>,
    pub span: Span,
}

impl CurveListing {
    pub fn alpha(name: &str, entries: &[(&str, Sign)]) -> Self {
        CurveListing {
            name: name.to_string(),
            entries: entries
                .iter()
                .map(|(v, s)| (v.to_string(), Some(*s), Span::default()))
                .collect(),
            span: Span::default(),
        }
    }

    pub fn beta(name: &str, entries: &[&str]) -> Self {
        CurveListing {
            name: name.to_string(),
            entries: entries
                .iter()
                .map(|v| (v.to_string(), None, Span::default()))
                .collect(),
            span: Span::default(),
        }
    }
}

impl CurveSystemInput {
    /// Interns and checks a raw description: curve counts, one sign per
    /// vertex, each vertex exactly once per family.
    pub fn from_listings(
        genus: usize,
        alphas: Vec<CurveListing>,
        betas: Vec<CurveListing>,
        basepoint: Locator,
        regions: Vec<RegionDirective>,
    ) -> Result<Self, DiagramError> {
        let mut curve_names = BTreeSet::new();
        for c in alphas.iter().chain(&betas) {
            if !curve_names.insert(c.name.clone()) {
                return Err(DiagramError::DuplicateCurve {
                    curve: c.name.clone(),
                    span: c.span,
                });
            }
            if c.entries.is_empty() {
                return Err(DiagramError::EmptyCurve {
                    curve: c.name.clone(),
                    span: c.span,
                });
            }
        }
        let mut region_names = BTreeSet::new();
        for r in &regions {
            if !region_names.insert(r.name.clone()) {
                return Err(DiagramError::DuplicateRegion {
                    region: r.name.clone(),
                    span: r.span,
                });
            }
        }

        let mut vertices: Vec<VertexDecl> = Vec::new();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        let mut out_alphas = Vec::with_capacity(alphas.len());
        for c in &alphas {
            let mut ids = Vec::with_capacity(c.entries.len());
            for (name, sign, span) in &c.entries {
                if index.contains_key(name) {
                    return Err(DiagramError::DuplicateVertex {
                        vertex: name.clone(),
                        family: Family::Alpha,
                        span: *span,
                    });
                }
                let sign = sign.ok_or_else(|| DiagramError::MissingSign {
                    vertex: name.clone(),
                    span: *span,
                })?;
                index.insert(name.clone(), vertices.len());
                ids.push(vertices.len());
                vertices.push(VertexDecl {
                    name: name.clone(),
                    sign,
                    span: *span,
                });
            }
            out_alphas.push(Curve {
                name: c.name.clone(),
                vertices: ids,
                span: c.span,
            });
        }

        let mut on_beta = vec![false; vertices.len()];
        let mut out_betas = Vec::with_capacity(betas.len());
        for c in &betas {
            let mut ids = Vec::with_capacity(c.entries.len());
            for (name, sign, span) in &c.entries {
                if sign.is_some() {
                    return Err(DiagramError::UnexpectedSign {
                        vertex: name.clone(),
                        span: *span,
                    });
                }
                let id = *index.get(name).ok_or_else(|| DiagramError::UnpairedVertex {
                    vertex: name.clone(),
                    present: Family::Beta,
                    missing: Family::Alpha,
                })?;
                if on_beta[id] {
                    return Err(DiagramError::DuplicateVertex {
                        vertex: name.clone(),
                        family: Family::Beta,
                        span: *span,
                    });
                }
                on_beta[id] = true;
                ids.push(id);
            }
            out_betas.push(Curve {
                name: c.name.clone(),
                vertices: ids,
                span: c.span,
            });
        }
        if let Some(v) = on_beta.iter().position(|b| !b) {
            return Err(DiagramError::UnpairedVertex {
                vertex: vertices[v].name.clone(),
                present: Family::Alpha,
                missing: Family::Beta,
            });
        }
        if alphas.len() != genus || betas.len() != genus {
            return Err(DiagramError::CurveCountMismatch {
                genus,
                alphas: alphas.len(),
                betas: betas.len(),
            });
        }
        Ok(CurveSystemInput {
            genus,
            vertices,
            alphas: out_alphas,
            betas: out_betas,
            basepoint,
            regions,
        })
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<(Family, usize)> {
        if let Some(i) = self.alphas.iter().position(|c| c.name == name) {
            return Some((Family::Alpha, i));
        }
        self.betas
            .iter()
            .position(|c| c.name == name)
            .map(|i| (Family::Beta, i))
    }

    fn curves(&self, family: Family) -> &[Curve] {
        match family {
            Family::Alpha => &self.alphas,
            Family::Beta => &self.betas,
        }
    }

    fn locators_mut(&mut self) -> impl Iterator<Item = &mut Locator> {
        let regions = self.regions.iter_mut().flat_map(|r| match &mut r.circles {
            CircleSelection::Auto => [].iter_mut(),
            CircleSelection::Listed(l) => l.iter_mut(),
        });
        std::iter::once(&mut self.basepoint).chain(regions)
    }

    /// Reverses the orientation of one curve. Crossing signs along it flip
    /// and locators are rewritten so that they name the same arc sides.
    pub fn reverse_curve(&mut self, name: &str) -> Result<(), DiagramError> {
        let (family, idx) = self.curve(name).ok_or_else(|| DiagramError::UnknownCurve {
            curve: name.to_string(),
            span: Span::default(),
        })?;
        let old = self.curves(family)[idx].vertices.clone();
        let names: Vec<String> = old.iter().map(|&v| self.vertices[v].name.clone()).collect();
        let k = old.len();
        for loc in self.locators_mut() {
            if loc.curve == name {
                if let Some(p) = names.iter().position(|n| *n == loc.vertex) {
                    loc.vertex = names[(p + 1) % k].clone();
                    loc.side = loc.side.flip();
                }
            }
        }
        for &v in &old {
            self.vertices[v].sign = self.vertices[v].sign.flip();
        }
        let curve = match family {
            Family::Alpha => &mut self.alphas[idx],
            Family::Beta => &mut self.betas[idx],
        };
        curve.vertices.reverse();
        Ok(())
    }

    /// Renames curves and vertices through the given maps (names not present
    /// are kept).
    pub fn rename(&mut self, curves: &BTreeMap<String, String>, vertices: &BTreeMap<String, String>) {
        let map = |m: &BTreeMap<String, String>, s: &mut String| {
            if let Some(n) = m.get(s.as_str()) {
                *s = n.clone();
            }
        };
        for v in &mut self.vertices {
            map(vertices, &mut v.name);
        }
        for c in self.alphas.iter_mut().chain(self.betas.iter_mut()) {
            map(curves, &mut c.name);
        }
        for loc in self.locators_mut() {
            map(curves, &mut loc.curve);
            map(vertices, &mut loc.vertex);
        }
    }

    /// Canonical text form: curves sorted by name, each cycle starting at its
    /// lexicographically smallest vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::from("heegaard v1\n");
        out.push_str(&format!("genus: {}\n", self.genus));
        let rotated = |c: &Curve| -> Vec<VertexId> {
            let start = (0..c.vertices.len())
                .min_by(|&a, &b| {
                    self.vertices[c.vertices[a]]
                        .name
                        .cmp(&self.vertices[c.vertices[b]].name)
                })
                .unwrap_or(0);
            let mut v = c.vertices.clone();
            v.rotate_left(start);
            v
        };
        let mut alphas: Vec<&Curve> = self.alphas.iter().collect();
        alphas.sort_by(|a, b| a.name.cmp(&b.name));
        for c in alphas {
            let items: Vec<String> = rotated(c)
                .iter()
                .map(|&v| format!("{}{}", self.vertices[v].name, self.vertices[v].sign.symbol()))
                .collect();
            out.push_str(&format!("alpha {}: {}\n", c.name, items.join(" ")));
        }
        let mut betas: Vec<&Curve> = self.betas.iter().collect();
        betas.sort_by(|a, b| a.name.cmp(&b.name));
        for c in betas {
            let items: Vec<&str> = rotated(c)
                .iter()
                .map(|&v| self.vertices[v].name.as_str())
                .collect();
            out.push_str(&format!("beta {}: {}\n", c.name, items.join(" ")));
        }
        let bp = &self.basepoint;
        out.push_str(&format!(
            "basepoint: {} {} {}\n",
            bp.curve,
            bp.vertex,
            bp.side.keyword()
        ));
        for r in &self.regions {
            let circles = match &r.circles {
                CircleSelection::Auto => "auto".to_string(),
                CircleSelection::Listed(l) => {
                    l.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                }
            };
            out.push_str(&format!(
                "region {}: genus={} circles={}\n",
                r.name, r.genus, circles
            ));
        }
        out
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax {
        span: Span { line, column },
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((offset + st + 1, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((offset + st + 1, &s[st..]));
    }
    out
}

fn parse_locator(text: &str, line: usize, column: usize) -> Result<Locator, DiagramError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 || !is_name(parts[0]) || !is_name(parts[1]) {
        return Err(syntax(line, column, format!("bad circle reference `{text}`, expected CURVE:VERTEX:SIDE")));
    }
    let side = Side::parse(parts[2])
        .ok_or_else(|| syntax(line, column, format!("unknown side `{}`", parts[2])))?;
    Ok(Locator {
        curve: parts[0].to_string(),
        vertex: parts[1].to_string(),
        side,
        span: Span { line, column },
    })
}

/// Parses the line-oriented diagram format.
pub fn parse_diagram(text: &str) -> Result<CurveSystemInput, DiagramError> {
    let mut header = false;
    let mut genus: Option<usize> = None;
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut basepoint = None;
    let mut regions = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let toks = tokens(content, 0);
        if !header {
            if toks.len() == 2 && toks[0].1 == "heegaard" && toks[1].1 == "v1" {
                header = true;
                continue;
            }
            return Err(syntax(line_no, toks[0].0, "expected header `heegaard v1`"));
        }
        let (col0, keyword) = toks[0];
        match keyword {
            "genus:" => {
                if toks.len() != 2 {
                    return Err(syntax(line_no, col0, "expected `genus: N`"));
                }
                let g = toks[1]
                    .1
                    .parse::<usize>()
                    .map_err(|_| syntax(line_no, toks[1].0, "genus must be a nonnegative integer"))?;
                if genus.replace(g).is_some() {
                    return Err(syntax(line_no, col0, "genus given twice"));
                }
            }
            "alpha" | "beta" => {
                let family = if keyword == "alpha" { Family::Alpha } else { Family::Beta };
                let Some(&(ncol, name_tok)) = toks.get(1) else {
                    return Err(syntax(line_no, col0, "missing curve name"));
                };
                let Some(name) = name_tok.strip_suffix(':') else {
                    return Err(syntax(line_no, ncol, "expected `NAME:` after curve keyword"));
                };
                if !is_name(name) {
                    return Err(syntax(line_no, ncol, format!("bad curve name `{name}`")));
                }
                let mut entries = Vec::new();
                for &(col, tok) in &toks[2..] {
                    let (vname, sign) = if let Some(v) = tok.strip_suffix('+') {
                        (v, Some(Sign::Positive))
                    } else if let Some(v) = tok.strip_suffix('-') {
                        (v, Some(Sign::Negative))
                    } else if let Some(v) = tok.strip_suffix('\u{2212}') {
                        (v, Some(Sign::Negative))
                    } else {
                        (tok, None)
                    };
                    if !is_name(vname) {
                        return Err(syntax(line_no, col, format!("bad vertex token `{tok}`")));
                    }
                    let span = Span { line: line_no, column: col };
                    if family == Family::Alpha && sign.is_none() {
                        return Err(DiagramError::MissingSign {
                            vertex: vname.to_string(),
                            span,
                        });
                    }
                    entries.push((vname.to_string(), sign, span));
                }
                let listing = CurveListing {
                    name: name.to_string(),
                    entries,
                    span: Span { line: line_no, column: col0 },
                };
                match family {
                    Family::Alpha => alphas.push(listing),
                    Family::Beta => betas.push(listing),
                }
            }
            "basepoint:" => {
                if toks.len() != 4 {
                    return Err(syntax(line_no, col0, "expected `basepoint: CURVE VERTEX SIDE`"));
                }
                let side = Side::parse(toks[3].1)
                    .ok_or_else(|| syntax(line_no, toks[3].0, format!("unknown side `{}`", toks[3].1)))?;
                if !is_name(toks[1].1) || !is_name(toks[2].1) {
                    return Err(syntax(line_no, toks[1].0, "bad basepoint names"));
                }
                let loc = Locator {
                    curve: toks[1].1.to_string(),
                    vertex: toks[2].1.to_string(),
                    side,
                    span: Span { line: line_no, column: toks[1].0 },
                };
                if basepoint.replace(loc).is_some() {
                    return Err(syntax(line_no, col0, "basepoint given twice"));
                }
            }
            "region" => {
                let Some(&(ncol, name_tok)) = toks.get(1) else {
                    return Err(syntax(line_no, col0, "missing region name"));
                };
                let name = name_tok
                    .strip_suffix(':')
                    .filter(|n| is_name(n))
                    .ok_or_else(|| syntax(line_no, ncol, "expected `NAME:` after `region`"))?;
                let mut rgenus = None;
                let mut circles = None;
                for &(col, tok) in &toks[2..] {
                    if let Some(g) = tok.strip_prefix("genus=") {
                        let g = g
                            .parse::<u32>()
                            .map_err(|_| syntax(line_no, col + 6, "region genus must be a nonnegative integer"))?;
                        rgenus = Some(g);
                    } else if let Some(c) = tok.strip_prefix("circles=") {
                        if c == "auto" {
                            circles = Some(CircleSelection::Auto);
                        } else {
                            let mut list = Vec::new();
                            let mut off = col + 8;
                            for part in c.split(',') {
                                list.push(parse_locator(part, line_no, off)?);
                                off += part.len() + 1;
                            }
                            circles = Some(CircleSelection::Listed(list));
                        }
                    } else {
                        return Err(syntax(line_no, col, format!("unexpected `{tok}` in region line")));
                    }
                }
                let span = Span { line: line_no, column: col0 };
                regions.push(RegionDirective {
                    name: name.to_string(),
                    genus: rgenus.ok_or_else(|| syntax(line_no, col0, "region line needs `genus=N`"))?,
                    circles: circles.ok_or_else(|| syntax(line_no, col0, "region line needs `circles=...`"))?,
                    span,
                });
            }
            other => {
                return Err(syntax(line_no, col0, format!("unknown line keyword `{other}`")));
            }
        }
    }
    if !header {
        return Err(DiagramError::MissingLine("heegaard v1"));
    }
    let genus = genus.ok_or(DiagramError::MissingLine("genus:"))?;
    let basepoint = basepoint.ok_or(DiagramError::MissingLine("basepoint:"))?;
    CurveSystemInput::from_listings(genus, alphas, betas, basepoint, regions)
}

/// Oriented edge between consecutive points of one curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub family: Family,
    pub curve: usize,
    pub tail: VertexId,
    pub head: VertexId,
}

/// One side of an arc: the arc traversed forward or backward. Its face is the
/// one on its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: ArcId,
    pub forward: bool,
}

impl Dart {
    pub fn index(self) -> usize {
        2 * self.arc + usize::from(!self.forward)
    }

    pub fn reversed(self) -> Dart {
        Dart {
            arc: self.arc,
            forward: !self.forward,
        }
    }
}

/// End of an arc at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub arc: ArcId,
    /// True when the arc starts at this vertex.
    pub outgoing: bool,
}

impl HalfEdge {
    /// The dart leaving the vertex along this half-edge.
    pub fn leaving(self) -> Dart {
        Dart {
            arc: self.arc,
            forward: self.outgoing,
        }
    }
}

/// Arcs and rotation system derived from a curve description.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub arcs: Vec<Arc>,
    /// Counterclockwise half-edge order at each vertex.
    pub rotation: Vec<[HalfEdge; 4]>,
    /// `(alpha curve, position)` and `(beta curve, position)` of each vertex.
    pub alpha_pos: Vec<(usize, usize)>,
    pub beta_pos: Vec<(usize, usize)>,
    /// First arc id of every alpha curve, then of every beta curve.
    alpha_arc_base: Vec<usize>,
    beta_arc_base: Vec<usize>,
}

impl Skeleton {
    pub fn new(input: &CurveSystemInput) -> Skeleton {
        let nv = input.vertices.len();
        let mut arcs = Vec::with_capacity(2 * nv);
        let mut alpha_pos = vec![(0, 0); nv];
        let mut beta_pos = vec![(0, 0); nv];
        let mut alpha_arc_base = Vec::new();
        let mut beta_arc_base = Vec::new();
        for (family, curves) in [(Family::Alpha, &input.alphas), (Family::Beta, &input.betas)] {
            for (ci, c) in curves.iter().enumerate() {
                match family {
                    Family::Alpha => alpha_arc_base.push(arcs.len()),
                    Family::Beta => beta_arc_base.push(arcs.len()),
                }
                let k = c.vertices.len();
                for (p, &v) in c.vertices.iter().enumerate() {
                    match family {
                        Family::Alpha => alpha_pos[v] = (ci, p),
                        Family::Beta => beta_pos[v] = (ci, p),
                    }
                    arcs.push(Arc {
                        family,
                        curve: ci,
                        tail: v,
                        head: c.vertices[(p + 1) % k],
                    });
                }
            }
        }
        let mut sk = Skeleton {
            arcs,
            rotation: Vec::with_capacity(nv),
            alpha_pos,
            beta_pos,
            alpha_arc_base,
            beta_arc_base,
        };
        for v in 0..nv {
            let (ac, ap) = sk.alpha_pos[v];
            let (bc, bp) = sk.beta_pos[v];
            let ak = input.alphas[ac].vertices.len();
            let bk = input.betas[bc].vertices.len();
            let a_out = HalfEdge { arc: sk.alpha_arc_base[ac] + ap, outgoing: true };
            let a_in = HalfEdge { arc: sk.alpha_arc_base[ac] + (ap + ak - 1) % ak, outgoing: false };
            let b_out = HalfEdge { arc: sk.beta_arc_base[bc] + bp, outgoing: true };
            let b_in = HalfEdge { arc: sk.beta_arc_base[bc] + (bp + bk - 1) % bk, outgoing: false };
            sk.rotation.push(match input.vertices[v].sign {
                Sign::Positive => [a_out, b_out, a_in, b_in],
                Sign::Negative => [a_out, b_in, a_in, b_out],
            });
        }
        sk
    }

    pub fn num_darts(&self) -> usize {
        2 * self.arcs.len()
    }

    /// Arc leaving the vertex at `position` along the given curve.
    pub fn arc_at(&self, family: Family, curve: usize, position: usize) -> ArcId {
        match family {
            Family::Alpha => self.alpha_arc_base[curve] + position,
            Family::Beta => self.beta_arc_base[curve] + position,
        }
    }

    /// Next dart along the face on the left: at the head, turn to the
    /// half-edge immediately clockwise from the one we arrived on.
    pub fn next_dart(&self, d: Dart) -> Dart {
        let arc = self.arcs[d.arc];
        let head = if d.forward { arc.head } else { arc.tail };
        let arriving = HalfEdge { arc: d.arc, outgoing: !d.forward };
        let rot = &self.rotation[head];
        let k = rot
            .iter()
            .position(|h| *h == arriving)
            .expect("arriving half-edge present in rotation");
        rot[(k + 3) % 4].leaving()
    }

    pub fn head_of(&self, d: Dart) -> VertexId {
        let a = self.arcs[d.arc];
        if d.forward {
            a.head
        } else {
            a.tail
        }
    }

    pub fn dart_from_index(i: usize) -> Dart {
        Dart { arc: i / 2, forward: i.is_multiple_of(2) }
    }

    pub fn resolve(&self, input: &CurveSystemInput, loc: &Locator) -> Result<Dart, DiagramError> {
        let (family, ci) = input.curve(&loc.curve).ok_or_else(|| DiagramError::UnknownCurve {
            curve: loc.curve.clone(),
            span: loc.span,
        })?;
        let curve = &input.curves(family)[ci];
        let pos = curve
            .vertices
            .iter()
            .position(|&v| input.vertices[v].name == loc.vertex)
            .ok_or_else(|| DiagramError::VertexNotOnCurve {
                curve: loc.curve.clone(),
                vertex: loc.vertex.clone(),
                span: loc.span,
            })?;
        Ok(Dart {
            arc: self.arc_at(family, ci, pos),
            forward: loc.side == Side::LeftAfter,
        })
    }
}

/// Boundary circle of a face: darts in order, each with the face on its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCircle {
    pub darts: Vec<Dart>,
}

/// Traces the face circles of the rotation system. Every dart lies on exactly
/// one circle; circles are ordered by their smallest dart index.
pub fn trace_faces(input: &CurveSystemInput) -> Vec<FaceCircle> {
    trace_skeleton(&Skeleton::new(input))
}

fn trace_skeleton(sk: &Skeleton) -> Vec<FaceCircle> {
    let n = sk.num_darts();
    let mut seen = vec![false; n];
    let mut circles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = Skeleton::dart_from_index(start);
        while !seen[d.index()] {
            seen[d.index()] = true;
            darts.push(d);
            d = sk.next_dart(d);
        }
        circles.push(FaceCircle { darts });
    }
    circles
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Canonical name: smallest dart label among its circles.
    pub name: String,
    /// Name of the directive that declared it, if any.
    pub directive: Option<String>,
    pub genus: u32,
    pub circles: Vec<CircleId>,
    /// Number of vertex quadrants it contains.
    pub corners: usize,
}

impl Region {
    /// Euler characteristic of the closed region.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.circles.len() as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadrant {
    pub vertex: VertexId,
    pub position: usize,
    pub region: RegionId,
}

/// Validated diagram. Immutable once assembled.
#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    input: CurveSystemInput,
    skeleton: Skeleton,
    circles: Vec<FaceCircle>,
    dart_circle: Vec<CircleId>,
    circle_region: Vec<RegionId>,
    regions: Vec<Region>,
    quadrant_region: Vec<[RegionId; 4]>,
    basepoint_region: RegionId,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Groups traced circles into regions and validates the result.
pub fn assemble_regions(
    input: CurveSystemInput,
    faces: Vec<FaceCircle>,
    directives: &[RegionDirective],
) -> Result<HeegaardDiagram, DiagramError> {
    let skeleton = Skeleton::new(&input);
    let mut dart_circle = vec![usize::MAX; skeleton.num_darts()];
    for (ci, c) in faces.iter().enumerate() {
        for d in &c.darts {
            dart_circle[d.index()] = ci;
        }
    }
    debug_assert!(dart_circle.iter().all(|&c| c != usize::MAX));

    let dart_label = |d: Dart| -> String {
        let a = skeleton.arcs[d.arc];
        let curve = match a.family {
            Family::Alpha => &input.alphas[a.curve].name,
            Family::Beta => &input.betas[a.curve].name,
        };
        format!(
            "{}/{}{}",
            curve,
            input.vertices[a.tail].name,
            if d.forward { '+' } else { '-' }
        )
    };

    let mut circle_region = vec![usize::MAX; faces.len()];
    let mut groups: Vec<(Option<String>, u32, Vec<CircleId>)> = Vec::new();
    for dir in directives {
        match &dir.circles {
            CircleSelection::Auto => {
                if dir.genus != 0 {
                    return Err(DiagramError::AutoWithGenus { span: dir.span });
                }
            }
            CircleSelection::Listed(locs) => {
                let gid = groups.len();
                let mut members = Vec::new();
                for loc in locs {
                    let d = skeleton.resolve(&input, loc)?;
                    let c = dart_circle[d.index()];
                    if circle_region[c] != usize::MAX {
                        return Err(DiagramError::CircleClaimedTwice {
                            circle: dart_label(d),
                            span: loc.span,
                        });
                    }
                    circle_region[c] = gid;
                    members.push(c);
                }
                groups.push((Some(dir.name.clone()), dir.genus, members));
            }
        }
    }
    for c in 0..faces.len() {
        if circle_region[c] == usize::MAX {
            circle_region[c] = groups.len();
            groups.push((None, 0, vec![c]));
        }
    }

    let mut regions: Vec<Region> = groups
        .into_iter()
        .map(|(directive, genus, circles)| {
            let name = circles
                .iter()
                .flat_map(|&c| faces[c].darts.iter().map(|&d| dart_label(d)))
                .min()
                .unwrap_or_default();
            let corners = circles.iter().map(|&c| faces[c].darts.len()).sum();
            Region {
                name,
                directive,
                genus,
                circles,
                corners,
            }
        })
        .collect();
    // Order regions by canonical name so ids do not depend on trace order.
    let mut order: Vec<usize> = (0..regions.len()).collect();
    order.sort_by(|&a, &b| regions[a].name.cmp(&regions[b].name));
    let mut new_id = vec![0; regions.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new;
    }
    let mut sorted: Vec<Option<Region>> = regions.drain(..).map(Some).collect();
    let regions: Vec<Region> = order.iter().map(|&o| sorted[o].take().expect("each once")).collect();
    for r in circle_region.iter_mut() {
        *r = new_id[*r];
    }

    let nv = input.vertices.len() as i64;
    let ne = skeleton.arcs.len() as i64;
    let found = nv - ne + regions.iter().map(Region::euler_characteristic).sum::<i64>();
    let expected = 2 - 2 * input.genus as i64;
    if found != expected {
        return Err(DiagramError::EulerMismatch {
            genus: input.genus,
            expected,
            found,
        });
    }

    let region_of_dart = |d: Dart| circle_region[dart_circle[d.index()]];
    let quadrant_region: Vec<[RegionId; 4]> = skeleton
        .rotation
        .iter()
        .map(|rot| {
            let mut q = [0; 4];
            for (k, h) in rot.iter().enumerate() {
                q[k] = region_of_dart(h.leaving());
            }
            q
        })
        .collect();

    // graph plus regions connected
    let mut uf = UnionFind::new(input.vertices.len());
    for a in &skeleton.arcs {
        uf.union(a.tail, a.head);
    }
    for r in &regions {
        let mut anchor = None;
        for &c in &r.circles {
            let v = skeleton.head_of(faces[c].darts[0]);
            if let Some(a) = anchor {
                uf.union(a, v);
            } else {
                anchor = Some(v);
            }
        }
    }
    if uf.components() > 1 {
        return Err(DiagramError::Disconnected);
    }

    // cutting along one family must leave the regions connected across the other
    for family in [Family::Alpha, Family::Beta] {
        let mut uf = UnionFind::new(regions.len());
        for (ai, a) in skeleton.arcs.iter().enumerate() {
            if a.family != family {
                let fwd = Dart { arc: ai, forward: true };
                uf.union(region_of_dart(fwd), region_of_dart(fwd.reversed()));
            }
        }
        if uf.components() > 1 {
            return Err(DiagramError::DependentCurves(family));
        }
    }

    let bp_dart = skeleton.resolve(&input, &input.basepoint)?;
    let basepoint_region = region_of_dart(bp_dart);

    Ok(HeegaardDiagram {
        input,
        skeleton,
        circles: faces,
        dart_circle,
        circle_region,
        regions,
        quadrant_region,
        basepoint_region,
    })
}

impl HeegaardDiagram {
    /// Traces faces and applies the input's own region directives.
    pub fn assemble(input: CurveSystemInput) -> Result<Self, DiagramError> {
        let faces = trace_faces(&input);
        let directives = input.regions.clone();
        assemble_regions(input, faces, &directives)
    }

    pub fn from_text(text: &str) -> Result<Self, DiagramError> {
        Self::assemble(parse_diagram(text)?)
    }

    pub fn input(&self) -> &CurveSystemInput {
        &self.input
    }

    pub fn to_text(&self) -> String {
        self.input.to_text()
    }

    pub fn genus(&self) -> usize {
        self.input.genus
    }

    pub fn num_vertices(&self) -> usize {
        self.input.vertices.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.skeleton.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.skeleton.arcs
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn circles(&self) -> &[FaceCircle] {
        &self.circles
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn num_regions(&self) -> usize {
        self.regions.len()
    }

    pub fn basepoint_region(&self) -> RegionId {
        self.basepoint_region
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.input.vertices[v].name
    }

    pub fn vertex_sign(&self, v: VertexId) -> Sign {
        self.input.vertices[v].sign
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.input.vertex_id(name)
    }

    pub fn alpha_curve_of(&self, v: VertexId) -> usize {
        self.skeleton.alpha_pos[v].0
    }

    pub fn beta_curve_of(&self, v: VertexId) -> usize {
        self.skeleton.beta_pos[v].0
    }

    pub fn alpha_curve_name(&self, i: usize) -> &str {
        &self.input.alphas[i].name
    }

    pub fn beta_curve_name(&self, i: usize) -> &str {
        &self.input.betas[i].name
    }

    /// Points of `alpha_i`, in curve order.
    pub fn alpha_points(&self, i: usize) -> &[VertexId] {
        &self.input.alphas[i].vertices
    }

    pub fn region_of_dart(&self, d: Dart) -> RegionId {
        self.circle_region[self.dart_circle[d.index()]]
    }

    pub fn left_region(&self, arc: ArcId) -> RegionId {
        self.region_of_dart(Dart { arc, forward: true })
    }

    pub fn right_region(&self, arc: ArcId) -> RegionId {
        self.region_of_dart(Dart { arc, forward: false })
    }

    pub fn circle_region(&self, c: CircleId) -> RegionId {
        self.circle_region[c]
    }

    /// Owning regions of the four quadrants at `v`, in rotation order.
    pub fn quadrant_regions(&self, v: VertexId) -> [RegionId; 4] {
        self.quadrant_region[v]
    }

    pub fn quadrants_at(&self, vertex: &str) -> Result<[Quadrant; 4], DiagramError> {
        let v = self
            .vertex_id(vertex)
            .ok_or_else(|| DiagramError::UnknownVertex(vertex.to_string()))?;
        let q = self.quadrant_region[v];
        Ok(std::array::from_fn(|k| Quadrant {
            vertex: v,
            position: k,
            region: q[k],
        }))
    }

    /// A locator naming the given dart.
    pub fn locator_for(&self, d: Dart) -> Locator {
        let a = self.skeleton.arcs[d.arc];
        let curve = match a.family {
            Family::Alpha => self.alpha_curve_name(a.curve),
            Family::Beta => self.beta_curve_name(a.curve),
        };
        Locator::new(
            curve,
            self.vertex_name(a.tail),
            if d.forward { Side::LeftAfter } else { Side::RightAfter },
        )
    }

    /// Algebraic intersection numbers `alpha_i . beta_j`.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.genus();
        let mut m = vec![vec![0; g]; g];
        for v in 0..self.num_vertices() {
            m[self.alpha_curve_of(v)][self.beta_curve_of(v)] += self.vertex_sign(v).as_i64();
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "heegaard v1\ngenus: 1\nalpha a0: x0+\nbeta b0: x0\nbasepoint: a0 x0 left-after\n";

    #[test]
    fn parses_smallest_diagram() {
        let input = parse_diagram(S3).unwrap();
        assert_eq!(input.alphas.len(), 1);
        assert_eq!(input.betas.len(), 1);
        assert_eq!(input.vertices.len(), 1);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let text = "heegaard v1\ngenus: 1\nalpha a0: x0+ x0+\nbeta b0: x0\nbasepoint: a0 x0 left-after\n";
        match parse_diagram(text) {
            Err(DiagramError::DuplicateVertex { vertex, family, span }) => {
                assert_eq!(vertex, "x0");
                assert_eq!(family, Family::Alpha);
                assert_eq!(span, Span { line: 3, column: 15 });
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_error_paths() {
        let missing_sign = "heegaard v1\ngenus: 1\nalpha a0: x0\nbeta b0: x0\nbasepoint: a0 x0 left-after\n";
        assert!(matches!(parse_diagram(missing_sign), Err(DiagramError::MissingSign { .. })));
        let beta_sign = "heegaard v1\ngenus: 1\nalpha a0: x0+\nbeta b0: x0+\nbasepoint: a0 x0 left-after\n";
        assert!(matches!(parse_diagram(beta_sign), Err(DiagramError::UnexpectedSign { .. })));
        let count = "heegaard v1\ngenus: 2\nalpha a0: x0+\nbeta b0: x0\nbasepoint: a0 x0 left-after\n";
        assert!(matches!(parse_diagram(count), Err(DiagramError::CurveCountMismatch { .. })));
        let garbage = "heegaard v1\ngenus: 1\nalpha a0 x0+\n";
        assert!(matches!(parse_diagram(garbage), Err(DiagramError::Syntax { .. })));
        let header = "genus: 1\n";
        assert!(matches!(parse_diagram(header), Err(DiagramError::Syntax { .. })));
        let unpaired = "heegaard v1\ngenus: 1\nalpha a0: x0+ x1+\nbeta b0: x0\nbasepoint: a0 x0 left-after\n";
        assert!(matches!(parse_diagram(unpaired), Err(DiagramError::UnpairedVertex { .. })));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a comment\n\nheegaard v1   # trailing\ngenus: 1\nalpha a0: x0+\n\nbeta  b0: x0\nbasepoint: a0 x0 right-after\n";
        let input = parse_diagram(text).unwrap();
        assert_eq!(input.basepoint.side, Side::RightAfter);
    }

    #[test]
    fn s3_single_square_face() {
        let input = parse_diagram(S3).unwrap();
        let faces = trace_faces(&input);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].darts.len(), 4);
        let d = HeegaardDiagram::assemble(input).unwrap();
        assert_eq!(d.num_regions(), 1);
        assert_eq!(d.regions()[0].corners, 4);
        let q = d.quadrants_at("x0").unwrap();
        assert!(q.iter().all(|q| q.region == 0));
        assert!(d.quadrants_at("nope").is_err());
    }

    #[test]
    fn l21_two_faces() {
        let text = "heegaard v1\ngenus: 1\nalpha a0: x0+ x1+\nbeta b0: x0 x1\nbasepoint: a0 x0 left-after\n";
        let input = parse_diagram(text).unwrap();
        let faces = trace_faces(&input);
        assert_eq!(faces.len(), 2);
        assert_eq!(faces.iter().map(|f| f.darts.len()).sum::<usize>(), 2 * 4);
    }

    #[test]
    fn genus_one_square_is_euler_mismatch() {
        let text = format!("{S3}region r0: genus=1 circles=a0:x0:left-after\n");
        assert!(matches!(
            HeegaardDiagram::from_text(&text),
            Err(DiagramError::EulerMismatch { .. })
        ));
    }

    #[test]
    fn circle_claimed_twice() {
        // both locators name the same (only) circle
        let text = format!("{S3}region r0: genus=0 circles=a0:x0:left-after,b0:x0:left-after\n");
        assert!(matches!(
            HeegaardDiagram::from_text(&text),
            Err(DiagramError::CircleClaimedTwice { .. })
        ));
    }

    #[test]
    fn unresolvable_basepoint() {
        let text = "heegaard v1\ngenus: 1\nalpha a0: x0+\nbeta b0: x0\nbasepoint: a0 x9 left-after\n";
        assert!(matches!(
            HeegaardDiagram::from_text(text),
            Err(DiagramError::VertexNotOnCurve { .. })
        ));
        let text = "heegaard v1\ngenus: 1\nalpha a0: x0+\nbeta b0: x0\nbasepoint: zz x0 left-after\n";
        assert!(matches!(
            HeegaardDiagram::from_text(text),
            Err(DiagramError::UnknownCurve { .. })
        ));
    }

    #[test]
    fn canonical_text_round_trip() {
        let text = "heegaard v1\ngenus: 1\nbeta b0: x2 x1 x0\nalpha a0: x1+ x2+ x0+\nbasepoint: a0 x1 left-after\n";
        let input = parse_diagram(text).unwrap();
        let canon = input.to_text();
        assert_eq!(
            canon,
            "heegaard v1\ngenus: 1\nalpha a0: x0+ x1+ x2+\nbeta b0: x0 x2 x1\nbasepoint: a0 x1 left-after\n"
        );
        let again = parse_diagram(&canon).unwrap();
        assert_eq!(again.to_text(), canon);
    }

    #[test]
    fn reversal_keeps_locators_on_same_side() {
        let text = "heegaard v1\ngenus: 1\nalpha a0: x0+ x1+ x2+\nbeta b0: x0 x1 x2\nbasepoint: a0 x0 left-after\n";
        let d = HeegaardDiagram::from_text(text).unwrap();
        let bp = d.regions()[d.basepoint_region()].name.clone();
        let mut input = d.input().clone();
        input.reverse_curve("a0").unwrap();
        assert_eq!(input.basepoint.vertex, "x1");
        assert_eq!(input.basepoint.side, Side::RightAfter);
        let r = HeegaardDiagram::assemble(input).unwrap();
        assert_eq!(r.num_regions(), d.num_regions());
        // same face, possibly under a different canonical label
        let corners = |d: &HeegaardDiagram| d.regions()[d.basepoint_region()].corners;
        assert_eq!(corners(&r), corners(&d));
        assert!(!bp.is_empty());
    }
}
