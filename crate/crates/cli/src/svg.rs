//! Deterministic SVG emission for wall diagrams: curve components sampled at
//! a fixed rate, the quiver region, centers, asymptotes, and point
//! annotations. All coordinates are rounded to six digits, so identical
//! inputs produce identical bytes.

use stabwall::poly::RatPoly;
use stabwall::rational::to_f64;
use stabwall::wall::{WallComponent, WallCurve, WallEnd};
use std::fmt::Write as _;

/// Samples per curve component.
pub const SAMPLES: usize = 512;

pub const RED: &str = "#c0392b";
pub const BLUE: &str = "#2b6cb0";
pub const PURPLE: &str = "#6b46c1";
pub const BROWN: &str = "#8b5a2b";
const GREEN: &str = "#2f855a";

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN: f64 = 40.0;
/// Vertical clamp: curve branches running to the asymptote are cut here.
const U_MAX: f64 = 2.5;

pub struct Annotation {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

/// A curve `u^2 = 2 num / den` with drawing metadata.
pub struct PlotCurve {
    pub label: String,
    pub color: String,
    pub num: RatPoly,
    pub den: RatPoly,
    pub components: Vec<(f64, f64)>,
    pub asymptote: Option<f64>,
    pub center: Option<f64>,
}

impl PlotCurve {
    pub fn from_wall(wall: &WallCurve, label: &str, color: &str) -> Self {
        let components = wall
            .components
            .iter()
            .map(|c| component_extent(c, &wall.num))
            .collect();
        PlotCurve {
            label: label.to_string(),
            color: color.to_string(),
            num: wall.num.clone(),
            den: wall.den.clone(),
            components,
            asymptote: wall.asymptote_t.as_ref().map(to_f64),
            center: Some(to_f64(&wall.center_t)),
        }
    }

    /// A bare two-class wall `u^2 = 2 num / den` drawn over `window`; the
    /// sampler skips the sign-incompatible parts.
    pub fn from_parts(num: RatPoly, den: RatPoly, window: (f64, f64), label: &str, color: &str) -> Self {
        PlotCurve {
            label: label.to_string(),
            color: color.to_string(),
            num,
            den,
            components: vec![window],
            asymptote: None,
            center: None,
        }
    }

    fn u_at(&self, t: f64) -> Option<f64> {
        let q = self.den.eval_f64(t);
        if q == 0.0 {
            return None;
        }
        let u2 = 2.0 * self.num.eval_f64(t) / q;
        (u2 >= 0.0).then(|| u2.sqrt())
    }
}

/// The drawable t-range of a component; unbounded ends are clamped.
pub fn component_extent(component: &WallComponent, _num: &RatPoly) -> (f64, f64) {
    let lo = match &component.lo {
        WallEnd::NegInfinite => -5.0,
        other => other.to_f64(),
    };
    let hi = match &component.hi {
        WallEnd::PosInfinite => 3.0,
        other => other.to_f64(),
    };
    (lo, hi)
}

struct Viewport {
    t_min: f64,
    t_max: f64,
    u_min: f64,
    u_max: f64,
}

impl Viewport {
    fn x(&self, t: f64) -> f64 {
        MARGIN + (t - self.t_min) / (self.t_max - self.t_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, u: f64) -> f64 {
        HEIGHT - MARGIN - (u - self.u_min) / (self.u_max - self.u_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn fmt6(x: f64) -> String {
    format!("{:.6}", x)
}

/// Emits a complete SVG document: curves sampled at [`SAMPLES`] points per
/// component (both `u >= 0` and the mirror branch), optional quiver region,
/// centers, asymptotes, axes and annotations.
pub fn emit_svg(
    curves: &[PlotCurve],
    region: bool,
    annotations: &[Annotation],
    title: &str,
) -> String {
    // world bounds from components, centers, and annotations
    let mut t_min = f64::INFINITY;
    let mut t_max = f64::NEG_INFINITY;
    let mut u_peak: f64 = 0.4;
    for c in curves {
        for &(lo, hi) in &c.components {
            t_min = t_min.min(lo);
            t_max = t_max.max(hi);
        }
        if let Some(center) = c.center {
            t_min = t_min.min(center);
            t_max = t_max.max(center);
        }
        for &(lo, hi) in &c.components {
            for k in 0..=32 {
                let t = lo + (hi - lo) * (k as f64) / 32.0;
                if let Some(u) = c.u_at(t) {
                    u_peak = u_peak.max(u.min(U_MAX));
                }
            }
        }
    }
    for a in annotations {
        t_min = t_min.min(a.x);
        t_max = t_max.max(a.x);
        u_peak = u_peak.max(a.y.abs());
    }
    if !t_min.is_finite() || !t_max.is_finite() {
        t_min = -2.2;
        t_max = 1.2;
        u_peak = 1.0;
    }
    let pad = 0.15 * (t_max - t_min).max(0.5);
    let view = Viewport {
        t_min: t_min - pad,
        t_max: t_max + pad,
        u_min: -(u_peak + 0.2),
        u_max: u_peak + 0.2,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    let _ = writeln!(
        out,
        "<!-- viewport: t in [{}, {}], u in [{}, {}]; x = {} + (t - t_min) * {} ; y = {} - (u - u_min) * {} -->",
        fmt6(view.t_min),
        fmt6(view.t_max),
        fmt6(view.u_min),
        fmt6(view.u_max),
        fmt6(MARGIN),
        fmt6((WIDTH - 2.0 * MARGIN) / (view.t_max - view.t_min)),
        fmt6(HEIGHT - MARGIN),
        fmt6((HEIGHT - 2.0 * MARGIN) / (view.u_max - view.u_min)),
    );
    let _ = writeln!(out, "<title>{}</title>", title);

    if region {
        draw_region(&mut out, &view);
    }
    draw_axes(&mut out, &view);
    for c in curves {
        draw_curve(&mut out, &view, c);
    }
    for a in annotations {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="3" fill="black"/><text x="{}" y="{}" font-size="12" font-family="monospace">{}</text>"#,
            fmt6(view.x(a.x)),
            fmt6(view.y(a.y)),
            fmt6(view.x(a.x) + 5.0),
            fmt6(view.y(a.y) - 5.0),
            a.label
        );
    }
    out.push_str("</svg>\n");
    out
}

fn draw_axes(out: &mut String, view: &Viewport) {
    let y0 = view.y(0.0);
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="1"/>"##,
        fmt6(MARGIN),
        fmt6(y0),
        fmt6(WIDTH - MARGIN),
        fmt6(y0)
    );
    if view.t_min <= 0.0 && view.t_max >= 0.0 {
        let x0 = view.x(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="1"/>"##,
            fmt6(x0),
            fmt6(MARGIN),
            fmt6(x0),
            fmt6(HEIGHT - MARGIN)
        );
    }
    let mut tick = view.t_min.ceil() as i64;
    while (tick as f64) <= view.t_max {
        let x = view.x(tick as f64);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="1"/><text x="{}" y="{}" font-size="10" font-family="monospace">{}</text>"##,
            fmt6(x),
            fmt6(y0 - 3.0),
            fmt6(x),
            fmt6(y0 + 3.0),
            fmt6(x - 4.0),
            fmt6(y0 + 14.0),
            tick
        );
        tick += 1;
    }
}

fn draw_curve(out: &mut String, view: &Viewport, curve: &PlotCurve) {
    for &(lo, hi) in &curve.components {
        for mirror in [1.0, -1.0] {
            let mut path = String::new();
            let mut pen_down = false;
            for k in 0..=SAMPLES {
                let t = lo + (hi - lo) * (k as f64) / (SAMPLES as f64);
                match curve.u_at(t) {
                    Some(u) if u <= U_MAX => {
                        let cmd = if pen_down { 'L' } else { 'M' };
                        let _ = write!(
                            path,
                            "{}{} {} ",
                            cmd,
                            fmt6(view.x(t)),
                            fmt6(view.y(mirror * u))
                        );
                        pen_down = true;
                    }
                    _ => pen_down = false,
                }
            }
            if !path.is_empty() {
                let _ = writeln!(
                    out,
                    r#"<path d="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                    path.trim_end(),
                    curve.color
                );
            }
        }
        // label at the first drawable sample past the component's first third
        let label_spot = (0..=SAMPLES)
            .map(|k| lo + (hi - lo) * (k as f64) / (SAMPLES as f64))
            .skip(SAMPLES / 3)
            .find_map(|t| curve.u_at(t).filter(|u| *u <= U_MAX).map(|u| (t, u)))
            .or_else(|| {
                (0..=SAMPLES)
                    .map(|k| lo + (hi - lo) * (k as f64) / (SAMPLES as f64))
                    .find_map(|t| curve.u_at(t).filter(|u| *u <= U_MAX).map(|u| (t, u)))
            });
        if let Some((t, u)) = label_spot {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="12" font-family="monospace" fill="{}">{}</text>"#,
                fmt6(view.x(t)),
                fmt6(view.y(u) - 8.0),
                curve.color,
                curve.label
            );
        }
    }
    if let Some(asym) = curve.asymptote {
        if asym > view.t_min && asym < view.t_max {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1" stroke-dasharray="6 4"/>"#,
                fmt6(view.x(asym)),
                fmt6(MARGIN),
                fmt6(view.x(asym)),
                fmt6(HEIGHT - MARGIN),
                curve.color
            );
        }
    }
    if let Some(center) = curve.center {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#,
            fmt6(view.x(center)),
            fmt6(view.y(0.0)),
            GREEN
        );
    }
}

/// Quiver region: for each unit cell `(n-1, n]` meeting the view, the area
/// below `u(t) = sqrt(min((t'+2)^2, (t'-1)^2) - 1) / sqrt(2)`, `t' = t - n`.
fn draw_region(out: &mut String, view: &Viewport) {
    let n_lo = view.t_min.floor() as i64;
    let n_hi = view.t_max.ceil() as i64;
    for n in n_lo..=n_hi + 1 {
        let cell_lo = (n - 1) as f64;
        let cell_hi = n as f64;
        if cell_hi < view.t_min || cell_lo > view.t_max {
            continue;
        }
        let mut path = String::new();
        let _ = write!(path, "M{} {} ", fmt6(view.x(cell_lo)), fmt6(view.y(0.0)));
        for k in 0..=128 {
            let t = cell_lo + (cell_hi - cell_lo) * (k as f64) / 128.0;
            let tp = t - n as f64;
            let a = (tp + 2.0) * (tp + 2.0) - 1.0;
            let b = (tp - 1.0) * (tp - 1.0) - 1.0;
            let u2 = a.min(b) / 2.0;
            let u = if u2 > 0.0 { u2.sqrt() } else { 0.0 };
            let _ = write!(path, "L{} {} ", fmt6(view.x(t)), fmt6(view.y(u)));
        }
        let _ = write!(path, "L{} {} Z", fmt6(view.x(cell_hi)), fmt6(view.y(0.0)));
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="#c6f6d5" fill-opacity="0.6" stroke="{}" stroke-width="1" stroke-dasharray="4 3"/>"##,
            path, GREEN
        );
    }
}
