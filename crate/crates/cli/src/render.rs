//! SVG alcove diagrams.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use schubert_a2::alcove::{AffineElement, FiniteRoot, Orientation, Point};
use schubert_a2::bruhat::{Hexagon, Hull};
use schubert_a2::loci::LocusReport;
use schubert_a2::qstat::QTable;
use serde::Deserialize;

/// Drawing units per alcove edge.
pub const SCALE: f64 = 40.0;

const MAX_ALCOVES: usize = 200_000;

#[derive(Debug)]
pub enum RenderError {
    EmptyViewport,
    TooLarge(usize),
    NeedsHexagon(&'static str),
    OwnerMismatch,
    Config(String),
}

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderError::EmptyViewport => write!(f, "empty viewport"),
            RenderError::TooLarge(n) => write!(f, "viewport holds {n} alcoves, limit is {MAX_ALCOVES}"),
            RenderError::NeedsHexagon(layer) => write!(f, "layer {layer} needs a non-spiral element"),
            RenderError::OwnerMismatch => write!(f, "payloads belong to different elements"),
            RenderError::Config(m) => write!(f, "config: {m}"),
        }
    }
}

impl std::error::Error for RenderError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Layer {
    Lattice,
    Chambers,
    Hexagon,
    Shells,
    QHeatmap,
    Loci,
    Special,
    Diagonals,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Labels {
    #[default]
    None,
    Q,
    Words,
}

/// Bounding box in plane coordinates, one unit per alcove edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl std::str::FromStr for Viewport {
    type Err = String;

    /// "xmin,ymin,xmax,ymax".
    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [xmin, ymin, xmax, ymax] if v.iter().all(|x| x.is_finite()) => Ok(Viewport { xmin, ymin, xmax, ymax }),
            _ => Err("expected four finite numbers xmin,ymin,xmax,ymax".into()),
        }
    }
}

impl Viewport {
    /// The hull's bounding box with a margin of `pad` edges.
    pub fn around(hull: &Hull, pad: f64) -> Viewport {
        let pts: Vec<(f64, f64)> = hull.vertices().iter().map(|v| v.center().plane()).collect();
        let fold = |f: fn(f64, f64) -> f64, pick: fn(&(f64, f64)) -> f64, init: f64| pts.iter().map(pick).fold(init, f);
        Viewport {
            xmin: fold(f64::min, |p| p.0, f64::INFINITY) - pad,
            ymin: fold(f64::min, |p| p.1, f64::INFINITY) - pad,
            xmax: fold(f64::max, |p| p.0, f64::NEG_INFINITY) + pad,
            ymax: fold(f64::max, |p| p.1, f64::NEG_INFINITY) + pad,
        }
    }

    fn holds(&self, (x, y): (f64, f64)) -> bool {
        x >= self.xmin && x <= self.xmax && y >= self.ymin && y <= self.ymax
    }

    /// Alcove centers inside the box, in (a, b) order.
    fn centers(&self) -> Result<Vec<Point>, RenderError> {
        if !(self.xmin < self.xmax && self.ymin < self.ymax) {
            return Err(RenderError::EmptyViewport);
        }
        let r3 = 3f64.sqrt();
        let (b0, b1) = ((2.0 * r3 * self.ymin).floor() as i64, (2.0 * r3 * self.ymax).ceil() as i64);
        let (a0, a1) = ((3.0 * self.xmin - r3 * self.ymax).floor() as i64, (3.0 * self.xmax - r3 * self.ymin).ceil() as i64);
        let area = (a1 - a0 + 1).saturating_mul(b1 - b0 + 1).max(0) as usize;
        if area / 3 > MAX_ALCOVES {
            return Err(RenderError::TooLarge(area / 3));
        }
        let mut out = Vec::new();
        for a in a0..=a1 {
            for b in b0..=b1 {
                let p = Point::new(a, b);
                if p.is_center() && self.holds(p.plane()) {
                    out.push(p);
                }
            }
        }
        if out.is_empty() {
            return Err(RenderError::EmptyViewport);
        }
        Ok(out)
    }
}

fn default_shell() -> Vec<String> {
    vec!["#f7f7f7".into(), "#dcdcdc".into()]
}

fn default_heat() -> Vec<String> {
    ["#ffffff", "#fee8c8", "#fdbb84", "#fc8d59", "#e34a33", "#b30000", "#7f0000"].map(String::from).to_vec()
}

/// Colors, read from the TOML file named by SCHUBERT_A2_CONFIG.
#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Palette {
    pub background: String,
    pub lattice: String,
    pub chambers: String,
    pub hull: String,
    pub owner: String,
    pub shell: Vec<String>,
    pub heat: Vec<String>,
    pub smooth: String,
    pub rationally_smooth: String,
    pub nrs: String,
    pub special: String,
    pub diagonal: String,
    pub text: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            background: "#ffffff".into(),
            lattice: "#c8c8c8".into(),
            chambers: "#5a5a5a".into(),
            hull: "#000000".into(),
            owner: "#1f4e9c".into(),
            shell: default_shell(),
            heat: default_heat(),
            smooth: "#a0a0a0".into(),
            rationally_smooth: "#f2c14e".into(),
            nrs: "#d1495b".into(),
            special: "#2e86ab".into(),
            diagonal: "#3c8d5a".into(),
            text: "#000000".into(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    colors: Palette,
}

fn is_color(s: &str) -> bool {
    let hex = s.strip_prefix('#').unwrap_or("");
    matches!(hex.len(), 3 | 6) && hex.chars().all(|c| c.is_ascii_hexdigit())
}

impl Palette {
    pub fn from_toml(src: &str) -> Result<Palette, RenderError> {
        let file: ConfigFile = toml::from_str(src).map_err(|e| RenderError::Config(e.message().to_string()))?;
        file.colors.validate()?;
        Ok(file.colors)
    }

    pub fn load(path: Option<&Path>) -> Result<Palette, RenderError> {
        match path {
            None => Ok(Palette::default()),
            Some(p) => {
                let src = std::fs::read_to_string(p).map_err(|e| RenderError::Config(format!("{}: {e}", p.display())))?;
                Palette::from_toml(&src)
            }
        }
    }

    fn validate(&self) -> Result<(), RenderError> {
        let singles = [
            &self.background,
            &self.lattice,
            &self.chambers,
            &self.hull,
            &self.owner,
            &self.smooth,
            &self.rationally_smooth,
            &self.nrs,
            &self.special,
            &self.diagonal,
            &self.text,
        ];
        if self.shell.is_empty() || self.heat.is_empty() {
            return Err(RenderError::Config("shell and heat need at least one color".into()));
        }
        match singles.into_iter().chain(&self.shell).chain(&self.heat).find(|c| !is_color(c)) {
            Some(bad) => Err(RenderError::Config(format!("not a #rgb or #rrggbb color: {bad:?}"))),
            None => Ok(()),
        }
    }
}

pub struct RenderSpec {
    pub viewport: Viewport,
    pub layers: Vec<Layer>,
    pub labels: Labels,
}

/// Data the layers draw from. Fields a spec does not use may be None.
pub struct Payload {
    pub hull: Hull,
    pub q: Option<QTable>,
    pub loci: Option<LocusReport>,
}

impl Payload {
    pub fn for_spec(w: &AffineElement, spec: &RenderSpec) -> Payload {
        let wants = |l: Layer| spec.layers.contains(&l);
        let loci = wants(Layer::Loci).then(|| schubert_a2::loci::locus_report(w));
        let q = (wants(Layer::QHeatmap) || spec.labels == Labels::Q).then(|| QTable::best(w));
        Payload { hull: Hull::of(w), q, loci }
    }
}

struct Canvas {
    vp: Viewport,
    out: String,
}

impl Canvas {
    fn xy(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.vp.xmin) * SCALE, (self.vp.ymax - y) * SCALE)
    }

    fn pt(&self, p: Point) -> (f64, f64) {
        self.xy(p.plane())
    }

    fn triangle(&mut self, p: Point, fill: &str, stroke: Option<&str>) {
        let pts: String = corners(p).iter().map(|&c| fmt_pair(self.pt(c))).collect::<Vec<_>>().join(" ");
        let stroke = stroke.map_or(String::from(r#" stroke="none""#), |s| format!(r#" stroke="{s}" stroke-width="0.5""#));
        let _ = writeln!(self.out, r#"<polygon points="{pts}" fill="{fill}"{stroke}/>"#);
    }

    fn polyline(&mut self, pts: &[Point], color: &str, width: f64, closed: bool) {
        let coords: String = pts.iter().map(|&p| fmt_pair(self.pt(p))).collect::<Vec<_>>().join(" ");
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            self.out,
            r#"<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="{width}" stroke-linejoin="round"/>"#
        );
    }

    fn dot(&mut self, p: Point, r: f64, color: &str) {
        let (x, y) = self.pt(p);
        let _ = writeln!(self.out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#);
    }

    fn text(&mut self, p: Point, s: &str, size: f64, color: &str) {
        let (x, y) = self.pt(p);
        let _ = writeln!(
            self.out,
            r#"<text x="{x:.2}" y="{:.2}" font-size="{size}" font-family="sans-serif" text-anchor="middle" fill="{color}">{s}</text>"#,
            y + size * 0.35
        );
    }

    /// The line c1*a + c2*b = 3k, clipped to the viewport.
    fn hyperplane(&mut self, r: FiniteRoot, k: i64, color: &str) {
        let (c1, c2) = r.coeffs();
        let r3 = 3f64.sqrt();
        // In plane coordinates: nx*x + ny*y = c.
        let (nx, ny, c) = (3.0 * c1 as f64, r3 * (2 * c2 - c1) as f64, 3.0 * k as f64);
        let vp = self.vp;
        let mut hits: Vec<(f64, f64)> = Vec::new();
        for x in [vp.xmin, vp.xmax] {
            if ny != 0.0 {
                hits.push((x, (c - nx * x) / ny));
            }
        }
        for y in [vp.ymin, vp.ymax] {
            if nx != 0.0 {
                hits.push(((c - ny * y) / nx, y));
            }
        }
        hits.retain(|&p| vp.holds(p));
        hits.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if let (Some(&p), Some(&q)) = (hits.first(), hits.last()) {
            let ((x1, y1), (x2, y2)) = (self.xy(p), self.xy(q));
            let _ = writeln!(
                self.out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="1.5" stroke-dasharray="6 4"/>"#
            );
        }
    }
}

fn fmt_pair((x, y): (f64, f64)) -> String {
    format!("{x:.2},{y:.2}")
}

/// Vertices of the alcove centered at p.
fn corners(p: Point) -> [Point; 3] {
    let (a, b) = (p.a, p.b);
    match p.orientation() {
        Some(Orientation::Up) => [Point::new(a - 1, b - 1), Point::new(a + 2, b - 1), Point::new(a - 1, b + 2)],
        _ => [Point::new(a + 1, b + 1), Point::new(a - 2, b + 1), Point::new(a + 1, b - 2)],
    }
}

/// Collinear lattice points in order along their line.
fn along(mut xs: Vec<AffineElement>) -> Vec<Point> {
    let mut pts: Vec<Point> = xs.drain(..).map(|x| x.center()).collect();
    pts.sort_by_key(|p| (p.a, p.b));
    pts
}

fn hexagon_of<'a>(hull: &'a Hull, layer: &'static str) -> Result<&'a Hexagon, RenderError> {
    match hull {
        Hull::Hexagon(h) => Ok(h),
        Hull::Degenerate(_) => Err(RenderError::NeedsHexagon(layer)),
    }
}

pub fn render(spec: &RenderSpec, payload: &Payload, palette: &Palette) -> Result<String, RenderError> {
    let owner = payload.hull.owner();
    let owners = payload.q.iter().map(|t| t.owner).chain(payload.loci.iter().map(|r| r.owner));
    if owners.into_iter().any(|o| o != owner) {
        return Err(RenderError::OwnerMismatch);
    }
    let centers = spec.viewport.centers()?;
    let mut layers = spec.layers.clone();
    layers.sort();
    layers.dedup();
    let has = |l: Layer| layers.contains(&l);
    for (l, name) in [(Layer::Shells, "shells"), (Layer::Special, "special"), (Layer::Diagonals, "diagonals")] {
        if has(l) {
            hexagon_of(&payload.hull, name)?;
        }
    }

    let vp = spec.viewport;
    let (w, h) = ((vp.xmax - vp.xmin) * SCALE, (vp.ymax - vp.ymin) * SCALE);
    let mut c = Canvas { vp, out: String::new() };
    let _ = writeln!(c.out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        c.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(c.out, "<title>{owner}</title>");
    let _ = writeln!(c.out, r#"<rect x="0" y="0" width="{w:.2}" height="{h:.2}" fill="{}"/>"#, palette.background);

    let inside: Vec<(Point, AffineElement)> = centers
        .iter()
        .filter_map(|&p| AffineElement::from_center(p).map(|x| (p, x)))
        .filter(|(_, x)| payload.hull.contains(x))
        .collect();

    if has(Layer::Shells) {
        let hex = hexagon_of(&payload.hull, "shells")?;
        for (p, x) in &inside {
            if let Ok(k) = hex.shell_index(x) {
                c.triangle(*p, &palette.shell[k % palette.shell.len()], None);
            }
        }
    }
    let q: HashMap<AffineElement, u32> = payload.q.as_ref().map(|t| t.as_map()).unwrap_or_default();
    if has(Layer::QHeatmap) {
        for (p, x) in &inside {
            if let Some(&v) = q.get(x) {
                c.triangle(*p, &palette.heat[(v as usize).min(palette.heat.len() - 1)], None);
            }
        }
    }
    if let (true, Some(report)) = (has(Layer::Loci), &payload.loci) {
        let mut entries: Vec<_> = report.entries.iter().collect();
        entries.sort_by_key(|e| (e.x.center().a, e.x.center().b));
        for e in entries {
            let p = e.x.center();
            if !vp.holds(p.plane()) {
                continue;
            }
            let fill = match (e.smooth, e.nrs) {
                (true, _) => &palette.smooth,
                (false, true) => &palette.nrs,
                (false, false) => &palette.rationally_smooth,
            };
            c.triangle(p, fill, None);
        }
    }
    if has(Layer::Lattice) {
        for &p in &centers {
            c.triangle(p, "none", Some(&palette.lattice));
        }
    }
    if has(Layer::Chambers) {
        for r in FiniteRoot::POSITIVE {
            for k in [0, 1] {
                c.hyperplane(r, k, &palette.chambers);
            }
        }
    }
    if has(Layer::Diagonals) {
        let hex = hexagon_of(&payload.hull, "diagonals")?;
        for i in 0..6 {
            c.polyline(&along(hex.diagonal(i)), &palette.diagonal, 1.5, false);
        }
    }
    if has(Layer::Special) {
        let hex = hexagon_of(&payload.hull, "special")?;
        for seg in hex.special_segments() {
            let pts = along(seg.alcoves);
            match pts.len() {
                0 => {}
                1 => c.dot(pts[0], 5.0, &palette.special),
                _ => c.polyline(&pts, &palette.special, 5.0, false),
            }
        }
    }
    if has(Layer::Hexagon) {
        let verts: Vec<Point> = payload.hull.vertices().iter().map(|v| v.center()).collect();
        c.polyline(&verts, &palette.hull, 2.0, verts.len() > 2);
        c.dot(owner.center(), 4.0, &palette.owner);
    }
    match spec.labels {
        Labels::None => {}
        Labels::Q => {
            for (p, x) in &inside {
                if let Some(v) = q.get(x) {
                    c.text(*p, &v.to_string(), 11.0, &palette.text);
                }
            }
        }
        Labels::Words => {
            for (p, x) in &inside {
                c.text(*p, &x.to_string(), 6.0, &palette.text);
            }
        }
    }
    c.out.push_str("</svg>\n");
    Ok(c.out)
}
