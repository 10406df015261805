//! Job specifications and their execution. Every job is deterministic:
//! identical specs produce byte-identical JSON/CSV/SVG artifacts. Nonzero
//! exits happen only on input or internal errors; mathematical outcomes
//! (unstable, empty region, degenerate wall) are ordinary results.

use crate::svg::{self, Annotation, PlotCurve};
use num_rational::BigRational;
use serde::Serialize;
use stabwall::charge::{
    self, bogomolov, charge as eval_charge, in_quiver_region, q_form, slope_of_point, StabParams,
};
use stabwall::kclass::KClass;
use stabwall::kronecker::{classify_stratum, FormMatrix, Stratum, ThetaVerdict};
use stabwall::quiver::{
    scan_walls, stable_range_with, DimVector, ScanFilters, StableEnd, WallSide,
};
use stabwall::rational::{format_rational, parse_rational};
use stabwall::roots::{IsolatedRoot, Window};
use stabwall::wall::{
    intersect_walls, two_class_wall, wall_between, WallCurve, WallEnd, WallKind,
};
use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; names the offending field. Exit code 2.
    Input(String),
    /// Internal invariant violation. Exit code 3.
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {}", m),
            CliError::Internal(m) => write!(f, "internal error: {}", m),
        }
    }
}

impl std::error::Error for CliError {}

fn input_err<T: fmt::Display>(field: &str) -> impl Fn(T) -> CliError + '_ {
    move |e| CliError::Input(format!("{}: {}", field, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub outputs: Vec<(PathBuf, OutputFormat)>,
}

#[derive(Debug, Clone)]
pub enum Command {
    Hilbert {
        v: KClass,
    },
    Charge {
        params: StabParams,
        v: KClass,
    },
    Wall {
        v: KClass,
        a: KClass,
    },
    Scan {
        parent: DimVector,
        window: Window,
        contains: Option<DimVector>,
        /// Restrict candidates to these subvectors (structural scan).
        subs: Option<Vec<DimVector>>,
        stable: bool,
    },
    Region {
        t: BigRational,
        u: BigRational,
    },
    Dual {
        v: Option<KClass>,
        dimvec: Option<DimVector>,
    },
    Kronecker {
        matrices: Vec<FormMatrix>,
        source: String,
    },
    Figure {
        preset: Preset,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Cubic,
    DualCubic,
    Quartic,
    Quiver,
}

impl Preset {
    pub fn parse(s: &str) -> Result<Preset, CliError> {
        match s {
            "cubic" => Ok(Preset::Cubic),
            "dual-cubic" => Ok(Preset::DualCubic),
            "quartic" => Ok(Preset::Quartic),
            "quiver" => Ok(Preset::Quiver),
            other => Err(CliError::Input(format!(
                "preset: unknown `{}` (expected cubic, dual-cubic, quartic, quiver)",
                other
            ))),
        }
    }
}

/// The rendered results of a job: report text plus artifact bytes keyed by
/// requested output.
pub struct Rendered {
    pub stdout: String,
    pub artifacts: Vec<(PathBuf, String)>,
}

/// Executes the job and writes its artifacts.
pub fn run(job: &JobSpec) -> Result<String, CliError> {
    let rendered = render(job)?;
    for (path, bytes) in &rendered.artifacts {
        std::fs::write(path, bytes)
            .map_err(|e| CliError::Input(format!("output {}: {}", path.display(), e)))?;
    }
    Ok(rendered.stdout)
}

/// Pure rendering (no filesystem writes); used by `run` and by tests.
pub fn render(job: &JobSpec) -> Result<Rendered, CliError> {
    match &job.command {
        Command::Hilbert { v } => render_hilbert(job, v),
        Command::Charge { params, v } => render_charge(job, params, v),
        Command::Wall { v, a } => render_wall(job, v, a),
        Command::Scan { parent, window, contains, subs, stable } => {
            render_scan(job, parent, window, contains.as_ref(), subs.as_deref(), *stable)
        }
        Command::Region { t, u } => render_region(job, t, u),
        Command::Dual { v, dimvec } => render_dual(job, v.as_ref(), dimvec.as_ref()),
        Command::Kronecker { matrices, source } => render_kronecker(job, matrices, source),
        Command::Figure { preset } => render_figure(job, *preset),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialize: {}", e)))?;
    text.push('\n');
    Ok(text)
}

/// Fixed-precision decimal for reports; deterministic across runs.
fn approx(x: f64) -> String {
    format!("{:.9}", x)
}

// ---------------------------------------------------------------- hilbert

#[derive(Serialize)]
struct HilbertReport {
    class: KClass,
    hilbert: stabwall::RatPoly,
    euler_characteristic: String,
}

fn render_hilbert(job: &JobSpec, v: &KClass) -> Result<Rendered, CliError> {
    let p = v.hilbert_poly();
    let chi = stabwall::wall::euler_characteristic(v);
    let report = HilbertReport {
        class: v.clone(),
        hilbert: p.clone(),
        euler_characteristic: format_rational(&chi),
    };
    let stdout = format!("chi_t{} = {}\n", v, p);
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&report),
        _ => Err(CliError::Input("hilbert supports json output only".into())),
    })
}

// ----------------------------------------------------------------- charge

#[derive(Serialize)]
struct ChargeReport {
    family: String,
    v: KClass,
    re: String,
    im: String,
    slope: String,
    bogomolov_at_0: String,
    q_form_at_t: Option<String>,
}

fn family_name(params: &StabParams) -> String {
    match params {
        StabParams::Euler { t } => format!("euler t={}", format_rational(t)),
        StabParams::Tilt1 { t } => format!("tilt1 t={}", format_rational(t)),
        StabParams::Tilt2 { t } => format!("tilt2 t={}", format_rational(t)),
        StabParams::DoubleTilt { alpha_sq, beta, s } => format!(
            "doubletilt alpha^2={} beta={} s={}",
            format_rational(alpha_sq),
            format_rational(beta),
            format_rational(s)
        ),
        StabParams::TuPlane { t, u } => {
            format!("tu-plane t={} u={}", format_rational(t), format_rational(u))
        }
    }
}

fn render_charge(job: &JobSpec, params: &StabParams, v: &KClass) -> Result<Rendered, CliError> {
    let z = eval_charge(params, v);
    let slope = match slope_of_point(&z) {
        Ok(s) => s.to_string(),
        Err(_) => "vanishing".to_string(),
    };
    let t_for_q = match params {
        StabParams::Euler { t }
        | StabParams::Tilt1 { t }
        | StabParams::Tilt2 { t }
        | StabParams::TuPlane { t, .. } => Some(t.clone()),
        StabParams::DoubleTilt { .. } => None,
    };
    let report = ChargeReport {
        family: family_name(params),
        v: v.clone(),
        re: format_rational(&z.re),
        im: format_rational(&z.im),
        slope: slope.clone(),
        bogomolov_at_0: format_rational(&bogomolov(v, &BigRational::from_integer(0.into()))),
        q_form_at_t: t_for_q.map(|t| format_rational(&q_form(v, &t))),
    };
    let stdout = format!("Z[{}]{} = {}  slope {}\n", report.family, v, z, slope);
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&report),
        _ => Err(CliError::Input("charge supports json output only".into())),
    })
}

// ------------------------------------------------------------------- wall

#[derive(Serialize)]
struct RootReport {
    approx: String,
    lo: String,
    hi: String,
    exact: Option<String>,
    multiplicity: usize,
}

impl RootReport {
    fn from_root(r: &IsolatedRoot) -> Self {
        RootReport {
            approx: approx(r.to_f64()),
            lo: format_rational(r.lo()),
            hi: format_rational(r.hi()),
            exact: r.as_rational().map(format_rational),
            multiplicity: r.multiplicity(),
        }
    }
}

#[derive(Serialize)]
struct EndReport {
    kind: String,
    value: Option<String>,
    approx: Option<String>,
}

impl EndReport {
    fn from_end(e: &WallEnd) -> Self {
        match e {
            WallEnd::NegInfinite => EndReport { kind: "neg-infinite".into(), value: None, approx: None },
            WallEnd::PosInfinite => EndReport { kind: "pos-infinite".into(), value: None, approx: None },
            WallEnd::Root(r) => EndReport {
                kind: "root".into(),
                value: r.as_rational().map(format_rational),
                approx: Some(approx(r.to_f64())),
            },
            WallEnd::Asymptote(t) => EndReport {
                kind: "asymptote".into(),
                value: Some(format_rational(t)),
                approx: Some(approx(stabwall::rational::to_f64(t))),
            },
        }
    }
}

#[derive(Serialize)]
struct WallReport {
    parent: KClass,
    actor: KClass,
    kind: String,
    center_t: String,
    asymptote_t: Option<String>,
    num: stabwall::RatPoly,
    den: stabwall::RatPoly,
    semicircle_radius_sq: Option<String>,
    components: Vec<(EndReport, EndReport)>,
    u0_roots: Vec<RootReport>,
    warning: Option<String>,
}

fn kind_name(kind: WallKind) -> String {
    match kind {
        WallKind::Type1 => "type1".into(),
        WallKind::Type2 => "type2".into(),
        WallKind::Type3 => "type3".into(),
        WallKind::AsymptoteAtCenter => "asymptote-at-center".into(),
    }
}

fn render_wall(job: &JobSpec, v: &KClass, a: &KClass) -> Result<Rendered, CliError> {
    let wall = wall_between(v, a).map_err(input_err("wall"))?;
    let report = WallReport {
        parent: v.clone(),
        actor: a.clone(),
        kind: kind_name(wall.kind),
        center_t: format_rational(&wall.center_t),
        asymptote_t: wall.asymptote_t.as_ref().map(format_rational),
        num: wall.num.clone(),
        den: wall.den.clone(),
        semicircle_radius_sq: wall.semicircle_radius_sq().as_ref().map(format_rational),
        components: wall
            .components
            .iter()
            .map(|c| (EndReport::from_end(&c.lo), EndReport::from_end(&c.hi)))
            .collect(),
        u0_roots: wall.u0_roots().iter().map(RootReport::from_root).collect(),
        warning: wall.warning.clone(),
    };
    let mut stdout = format!(
        "wall of {} by {}: {} center t = {}\n",
        v,
        a,
        report.kind,
        report.center_t
    );
    for (lo, hi) in &report.components {
        stdout.push_str(&format!(
            "  component [{} .. {}]\n",
            lo.approx.clone().unwrap_or_else(|| "-inf".into()),
            hi.approx.clone().unwrap_or_else(|| "+inf".into()),
        ));
    }
    let svg_doc = || {
        let curves = vec![PlotCurve::from_wall(&wall, "wall", svg::RED)];
        let annotations = wall_annotations(&wall);
        svg::emit_svg(&curves, false, &annotations, "wall")
    };
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => Ok(wall_csv(&wall)),
        OutputFormat::Svg => Ok(svg_doc()),
        OutputFormat::Text => Err(CliError::Input("wall: use json, csv, or svg".into())),
    })
}

fn wall_annotations(wall: &WallCurve) -> Vec<Annotation> {
    let mut out = vec![Annotation {
        x: stabwall::rational::to_f64(&wall.center_t),
        y: 0.0,
        label: "C".to_string(),
    }];
    for r in wall.u0_roots() {
        let x = r.to_f64();
        out.push(Annotation { x, y: 0.0, label: format!("({:.3},0)", x) });
    }
    out
}

fn wall_csv(wall: &WallCurve) -> String {
    let mut out = String::from("component,t,u\n");
    for (idx, component) in wall.components.iter().enumerate() {
        let (lo, hi) = svg::component_extent(component, &wall.num);
        for k in 0..=svg::SAMPLES {
            let t = lo + (hi - lo) * (k as f64) / (svg::SAMPLES as f64);
            if let Some(u) = wall.u_at_f64(t) {
                out.push_str(&format!("{},{:.6},{:.6}\n", idx, t, u));
            }
        }
    }
    out
}

// ------------------------------------------------------------------- scan

#[derive(Serialize)]
struct ScanHitReport {
    sub: [u32; 4],
    root: RootReport,
    side: WallSide,
}

#[derive(Serialize)]
struct StableIntervalReport {
    lo: String,
    hi: String,
    destabilizer: Option<[u32; 4]>,
}

#[derive(Serialize)]
struct ScanReport {
    parent: [u32; 4],
    heart: i64,
    window: String,
    mode: String,
    hits: Vec<ScanHitReport>,
    stable_intervals: Option<Vec<StableIntervalReport>>,
}

fn render_scan(
    job: &JobSpec,
    parent: &DimVector,
    window: &Window,
    contains: Option<&DimVector>,
    subs: Option<&[DimVector]>,
    stable: bool,
) -> Result<Rendered, CliError> {
    let mut filters = ScanFilters::with_heart_positivity();
    filters.contains = contains.cloned();
    if let Some(list) = subs {
        filters.realizable = Some(list.iter().map(|d| d.entries).collect());
    }
    let hits = scan_walls(parent, window, &filters).map_err(input_err("scan"))?;
    let mode = if filters.realizable.is_some() {
        "structural"
    } else {
        "numerical-only"
    };
    let stable_intervals = if stable {
        let ranges = stable_range_with(parent, window, &filters).map_err(input_err("scan"))?;
        Some(
            ranges
                .iter()
                .map(|r| StableIntervalReport {
                    lo: stable_end_str(&r.lo),
                    hi: stable_end_str(&r.hi),
                    destabilizer: match &r.hi {
                        StableEnd::Breakpoint { destabilizer, .. } => Some(destabilizer.entries),
                        StableEnd::WindowEdge(_) => None,
                    },
                })
                .collect(),
        )
    } else {
        None
    };
    let report = ScanReport {
        parent: parent.entries,
        heart: parent.n,
        window: window.to_string(),
        mode: mode.to_string(),
        hits: hits
            .iter()
            .map(|h| ScanHitReport {
                sub: h.sub.entries,
                root: RootReport::from_root(&h.root),
                side: h.side,
            })
            .collect(),
        stable_intervals,
    };
    // human-readable table in the style of the stability table
    let mut stdout = format!(
        "scan {} in A_{} over {} ({} walls, {})\n",
        parent,
        parent.n,
        window,
        report.hits.len(),
        mode
    );
    stdout.push_str("  sub            root           side\n");
    for h in &report.hits {
        stdout.push_str(&format!(
            "  [{},{},{},{}]   {:<12}  {:?}\n",
            h.sub[0], h.sub[1], h.sub[2], h.sub[3], h.root.approx, h.side
        ));
    }
    if let Some(ranges) = &report.stable_intervals {
        stdout.push_str("  stable intervals:\n");
        for r in ranges {
            let tail = match r.destabilizer {
                Some(d) => format!("  (next wall by [{},{},{},{}])", d[0], d[1], d[2], d[3]),
                None => String::new(),
            };
            stdout.push_str(&format!("    ({}, {}){}\n", r.lo, r.hi, tail));
        }
    }
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&report),
        _ => Err(CliError::Input("scan supports json output only".into())),
    })
}

fn stable_end_str(end: &StableEnd) -> String {
    match end {
        StableEnd::WindowEdge(q) => format_rational(q),
        StableEnd::Breakpoint { t, .. } => t
            .as_rational()
            .map(format_rational)
            .unwrap_or_else(|| approx(t.to_f64())),
    }
}

// ----------------------------------------------------------------- region

#[derive(Serialize)]
struct RegionReport {
    t: String,
    u: String,
    inside: bool,
}

fn render_region(job: &JobSpec, t: &BigRational, u: &BigRational) -> Result<Rendered, CliError> {
    let inside = in_quiver_region(t, u);
    let report = RegionReport {
        t: format_rational(t),
        u: format_rational(u),
        inside,
    };
    let stdout = format!(
        "({}, {}) is {} the quiver region\n",
        report.t,
        report.u,
        if inside { "inside" } else { "outside" }
    );
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&report),
        _ => Err(CliError::Input("region supports json output only".into())),
    })
}

// ------------------------------------------------------------------- dual

#[derive(Serialize)]
struct DualReport {
    class: Option<KClass>,
    dual_class: Option<KClass>,
    dual_twisted_by_one: Option<KClass>,
    dimvec: Option<[u32; 4]>,
    heart: Option<i64>,
    reversed: Option<[u32; 4]>,
    reversed_heart: Option<i64>,
}

fn render_dual(
    job: &JobSpec,
    v: Option<&KClass>,
    dimvec: Option<&DimVector>,
) -> Result<Rendered, CliError> {
    if v.is_none() && dimvec.is_none() {
        return Err(CliError::Input("dual: provide --v or --dimvec".into()));
    }
    let mut report = DualReport {
        class: None,
        dual_class: None,
        dual_twisted_by_one: None,
        dimvec: None,
        heart: None,
        reversed: None,
        reversed_heart: None,
    };
    let mut stdout = String::new();
    if let Some(v) = v {
        let dual = v.dual_class();
        let twisted = dual.twist(&BigRational::from_integer(1.into()));
        stdout.push_str(&format!("dual of {} is {} (twist by O(1): {})\n", v, dual, twisted));
        report.class = Some(v.clone());
        report.dual_class = Some(dual);
        report.dual_twisted_by_one = Some(twisted);
    }
    if let Some(d) = dimvec {
        let r = d.reverse();
        stdout.push_str(&format!("reverse of {} in A_{} is {} in A_{}\n", d, d.n, r, r.n));
        report.dimvec = Some(d.entries);
        report.heart = Some(d.n);
        report.reversed = Some(r.entries);
        report.reversed_heart = Some(r.n);
    }
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&report),
        _ => Err(CliError::Input("dual supports json output only".into())),
    })
}

// -------------------------------------------------------------- kronecker

#[derive(Serialize)]
struct KroneckerReport {
    index: usize,
    verdict: String,
    stratum: Option<String>,
    plane: Option<String>,
    witness_sub_dims: Option<(u32, u32)>,
    witness_vector: Option<(String, String)>,
}

fn render_kronecker(
    job: &JobSpec,
    matrices: &[FormMatrix],
    source: &str,
) -> Result<Rendered, CliError> {
    let mut reports = Vec::new();
    let mut stdout = format!("kronecker check: {} ({} matrices)\n", source, matrices.len());
    for (i, m) in matrices.iter().enumerate() {
        let stratum = classify_stratum(m).map_err(input_err("kronecker"))?;
        let (verdict, stratum_name, plane, dims, witness) = match &stratum {
            Stratum::Curve => ("stable", Some("curve"), None, None, None),
            Stratum::Torsion { plane } => {
                ("stable", Some("torsion"), Some(plane.to_string()), None, None)
            }
            Stratum::Unstable(v) => match v {
                ThetaVerdict::Unstable { sub_dims, witness } => (
                    "unstable",
                    None,
                    None,
                    Some(*sub_dims),
                    witness
                        .as_ref()
                        .map(|(a, b)| (format_rational(a), format_rational(b))),
                ),
                ThetaVerdict::Semistable { sub_dims } => {
                    ("semistable", None, None, Some(*sub_dims), None)
                }
                ThetaVerdict::Stable => ("stable", None, None, None, None),
            },
        };
        stdout.push_str(&format!(
            "  ({}) {}{}{}\n",
            i + 1,
            verdict,
            stratum_name.map(|s| format!(", {} stratum", s)).unwrap_or_default(),
            plane.as_ref().map(|p| format!(", plane {} = 0", p)).unwrap_or_default(),
        ));
        if let Some(d) = dims {
            stdout.push_str(&format!("      destabilized by a ({},{}) subrepresentation\n", d.0, d.1));
        }
        reports.push(KroneckerReport {
            index: i + 1,
            verdict: verdict.to_string(),
            stratum: stratum_name.map(|s| s.to_string()),
            plane,
            witness_sub_dims: dims,
            witness_vector: witness,
        });
    }
    finish(job, stdout, |fmt| match fmt {
        OutputFormat::Json => to_json(&reports),
        _ => Err(CliError::Input("kronecker supports json output only".into())),
    })
}

// ----------------------------------------------------------------- figure

fn render_figure(job: &JobSpec, preset: Preset) -> Result<Rendered, CliError> {
    let internal = |e: stabwall::wall::WallError| CliError::Internal(format!("figure: {}", e));
    let (curves, region, annotations, title) = match preset {
        Preset::Cubic | Preset::DualCubic => {
            let (v, o, plane) = if preset == Preset::Cubic {
                (
                    KClass::from_i64(0, 0, 3, -5),
                    KClass::from_i64(1, 0, 0, 0),
                    KClass::new(
                        BigRational::from_integer(0.into()),
                        BigRational::from_integer(1.into()),
                        parse_rational("-1/2").unwrap(),
                        parse_rational("1/6").unwrap(),
                    ),
                )
            } else {
                // mirror data: the derived-dual classes
                let v = KClass::from_i64(0, 0, 3, -5);
                let o = KClass::from_i64(1, 0, 0, 0);
                let plane = KClass::new(
                    BigRational::from_integer(0.into()),
                    BigRational::from_integer(1.into()),
                    parse_rational("-1/2").unwrap(),
                    parse_rational("1/6").unwrap(),
                );
                (v.dual_class(), -&o.dual_class(), -&plane.dual_class())
            };
            let w1 = wall_between(&v, &o).map_err(internal)?;
            let w2 = wall_between(&v, &plane).map_err(internal)?;
            let mut annotations = wall_annotations(&w1);
            annotations.extend(wall_annotations(&w2));
            let name = if preset == Preset::Cubic { "cubic walls" } else { "dual cubic walls" };
            (
                vec![
                    PlotCurve::from_wall(&w1, "W1", svg::RED),
                    PlotCurve::from_wall(&w2, "W2", svg::BLUE),
                ],
                false,
                annotations,
                name,
            )
        }
        Preset::Quartic => {
            let v = KClass::from_i64(0, 0, 4, -7);
            let o = KClass::from_i64(1, 0, 0, 0);
            let quadric = KClass::new(
                BigRational::from_integer(0.into()),
                BigRational::from_integer(2.into()),
                BigRational::from_integer((-2).into()),
                parse_rational("4/3").unwrap(),
            );
            let ideal = KClass::from_i64(1, 0, -4, 7); // O - O_C
            let w1 = wall_between(&v, &o).map_err(internal)?;
            let w2 = wall_between(&v, &quadric).map_err(internal)?;
            let (n3, d3) = two_class_wall(&o, &quadric);
            let (n4, d4) = two_class_wall(&KClass::line_bundle(-2), &ideal);
            let mut annotations = Vec::new();
            // S: intersection of W1 and W2 off the axis
            let points = intersect_walls(&w1, &w2).map_err(internal)?;
            if let Some(s) = points.iter().find(|p| !p.at_axis && p.u_approx > 0.0) {
                annotations.push(Annotation {
                    x: s.t.to_f64(),
                    y: s.u_approx,
                    label: format!("S ({:.3},{:.3})", s.t.to_f64(), s.u_approx),
                });
            }
            annotations.push(Annotation { x: 0.5, y: 0.0, label: "T".to_string() });
            // P: W2 meets the quiver-region boundary (t+1)^2 - 2u^2 = 1
            // on the circle: 3t^2 + 3t - 1 = 0
            let t_p = (-3.0 + 21f64.sqrt()) / 6.0;
            if let Some(u_p) = w2.u_at_f64(t_p) {
                annotations.push(Annotation { x: t_p, y: u_p, label: "P".to_string() });
            }
            annotations.push(Annotation {
                x: stabwall::rational::to_f64(&w2.center_t),
                y: 0.0,
                label: "C".to_string(),
            });
            (
                vec![
                    PlotCurve::from_wall(&w1, "W1", svg::RED),
                    PlotCurve::from_wall(&w2, "W2", svg::BLUE),
                    PlotCurve::from_parts(n3, d3, (-1.5, 1.0), "W3", svg::PURPLE),
                    PlotCurve::from_parts(n4, d4, (-1.5, 1.0), "W4", svg::BROWN),
                ],
                true,
                annotations,
                "quartic composite wall",
            )
        }
        Preset::Quiver => (Vec::new(), true, Vec::new(), "quiver region"),
    };
    let doc = svg::emit_svg(&curves, region, &annotations, title);
    let stdout = format!("figure `{}`: {} curves\n", title, curves.len());
    finish(job, stdout, move |fmt| match fmt {
        OutputFormat::Svg => Ok(doc.clone()),
        _ => Err(CliError::Input("figure supports svg output only".into())),
    })
}

// ------------------------------------------------------------------ shared

fn finish<F>(job: &JobSpec, stdout: String, make: F) -> Result<Rendered, CliError>
where
    F: Fn(OutputFormat) -> Result<String, CliError>,
{
    let mut artifacts = Vec::new();
    for (path, fmt) in &job.outputs {
        artifacts.push((path.clone(), make(*fmt)?));
    }
    Ok(Rendered { stdout, artifacts })
}

// ------------------------------------------------------------ input parsing

/// Parses `a,b,c,d` into a K-class of exact rationals.
pub fn parse_class_flag(s: &str, field: &str) -> Result<KClass, CliError> {
    stabwall::kclass::parse_kclass(s)
        .map_err(|e| CliError::Input(format!("{}: {}", field, e)))
}

/// Parses `a3,a2,a1,a0` into a dimension vector for the given heart.
pub fn parse_dimvec_flag(s: &str, heart: i64, field: &str) -> Result<DimVector, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Input(format!("{}: expected four entries", field)));
    }
    let mut entries = [0u32; 4];
    for (i, p) in parts.iter().enumerate() {
        entries[i] = p
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{}: `{}` is not a non-negative integer", field, p)))?;
    }
    Ok(DimVector::new(heart, entries))
}

/// Parses `lo,hi` into the half-open window `(lo, hi]`.
pub fn parse_window_flag(s: &str, field: &str) -> Result<Window, CliError> {
    let Some((lo, hi)) = s.split_once(',') else {
        return Err(CliError::Input(format!("{}: expected lo,hi", field)));
    };
    let lo = parse_rational(lo).map_err(|e| CliError::Input(format!("{}: {}", field, e)))?;
    let hi = parse_rational(hi).map_err(|e| CliError::Input(format!("{}: {}", field, e)))?;
    if lo >= hi {
        return Err(CliError::Input(format!("{}: lo must be < hi", field)));
    }
    Ok(Window::half_open(lo, hi))
}

/// Parses a rational flag.
pub fn parse_rational_flag(s: &str, field: &str) -> Result<BigRational, CliError> {
    parse_rational(s).map_err(|e| CliError::Input(format!("{}: {}", field, e)))
}

/// Builds stability parameters from flag values.
#[allow(clippy::too_many_arguments)]
pub fn build_params(
    family: &str,
    t: Option<&str>,
    u: Option<&str>,
    alpha: Option<&str>,
    alpha_sq: Option<&str>,
    beta: Option<&str>,
    s: Option<&str>,
) -> Result<StabParams, CliError> {
    let need = |flag: Option<&str>, name: &str| -> Result<BigRational, CliError> {
        let raw = flag.ok_or_else(|| CliError::Input(format!("{}: required for family {}", name, family)))?;
        parse_rational_flag(raw, name)
    };
    match family {
        "euler" => Ok(StabParams::Euler { t: need(t, "t")? }),
        "tilt1" => Ok(StabParams::Tilt1 { t: need(t, "t")? }),
        "tilt2" => Ok(StabParams::Tilt2 { t: need(t, "t")? }),
        "tu-plane" => {
            StabParams::tu(need(t, "t")?, need(u, "u")?).map_err(input_err("u"))
        }
        "doubletilt" => {
            let asq = match (alpha_sq, alpha) {
                (Some(raw), _) => parse_rational_flag(raw, "alpha-sq")?,
                (None, Some(raw)) => {
                    let a = parse_rational_flag(raw, "alpha")?;
                    &a * &a
                }
                (None, None) => {
                    return Err(CliError::Input(
                        "alpha or alpha-sq: required for family doubletilt".into(),
                    ))
                }
            };
            charge::StabParams::double_tilt(asq, need(beta, "beta")?, need(s, "s")?)
                .map_err(input_err("doubletilt"))
        }
        other => Err(CliError::Input(format!(
            "family: unknown `{}` (euler, tilt1, tilt2, doubletilt, tu-plane)",
            other
        ))),
    }
}
