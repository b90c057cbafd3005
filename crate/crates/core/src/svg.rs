//! SVG 1.1 drawings. Annuli are cut open along an outer marked point: the
//! outer boundary runs along the bottom, the inner one along the top, and
//! dashed verticals mark the two copies of the cut. Every arc is a single
//! `<path>`; its translates under the deck transformation are subpaths.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::annulus::{disc_to_annulus, AnnulusTriangulation, CoverLayout, Direction, Lift};
use crate::json::Surface;
use crate::polygon::TriangulatedPolygon;
use crate::strip::{StripArc, StripTriangulation};

const PAD: f64 = 40.0;
const TOP: f64 = 60.0;
const BOTTOM: f64 = 300.0;

struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64, title: &str) -> Self {
        let mut body = String::new();
        writeln!(body, "  <title>{}</title>", escape(title)).unwrap();
        writeln!(
            body,
            "  <style>.boundary{{stroke:#000;stroke-width:2}} .cut{{stroke:#888;stroke-dasharray:6 4}} \
             .arc{{fill:none;stroke:#1f5fa8;stroke-width:1.5}} .asymptotic{{stroke:#b03a2e}} \
             text{{font:12px sans-serif}}</style>"
        )
        .unwrap();
        Canvas { width, height, body }
    }

    fn line(&mut self, class: &str, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) {
        writeln!(self.body, "  <line class=\"{class}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>")
            .unwrap();
    }

    fn path(&mut self, class: &str, label: &str, d: &str) {
        writeln!(self.body, "  <path class=\"{class}\" d=\"{}\"><title>{}</title></path>", d.trim(), escape(label))
            .unwrap();
    }

    fn text(&mut self, (x, y): (f64, f64), s: &str) {
        writeln!(self.body, "  <text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"middle\">{}</text>", escape(s)).unwrap();
    }

    fn clip(&mut self, id: &str, (x, y, w, h): (f64, f64, f64, f64)) {
        writeln!(
            self.body,
            "  <clipPath id=\"{id}\"><rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\"/></clipPath>"
        )
        .unwrap();
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" \
             viewBox=\"0 0 {w:.0} {h:.0}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn hump(x1: f64, x2: f64, y: f64, rise: f64) -> String {
    format!("M {x1:.2} {y:.2} Q {:.2} {:.2} {x2:.2} {y:.2} ", (x1 + x2) / 2.0, y + rise)
}

fn bridge(xl: f64, xu: f64) -> String {
    let mid = (TOP + BOTTOM) / 2.0;
    format!("M {xl:.2} {BOTTOM:.2} C {xl:.2} {mid:.2} {xu:.2} {mid:.2} {xu:.2} {TOP:.2} ")
}

/// Cut-open annulus, drawn over one fundamental domain with half a domain of
/// context on either side.
pub fn render_annulus(t: &AnnulusTriangulation) -> String {
    let layout = CoverLayout::new(t.n, t.m);
    let (n, m) = (t.n as i64, t.m as i64);
    let w = layout.width() as f64;
    let unit = 480.0 / w;
    let sx = |x: f64| PAD + 240.0 + x * unit;
    let span_h = BOTTOM - TOP;
    let mut c = Canvas::new(480.0 * 2.0 + 2.0 * PAD, BOTTOM + PAD, &format!("A({},{})", t.n, t.m));
    c.clip("view", (PAD, 0.0, 960.0, BOTTOM + PAD));
    c.line("boundary", (PAD, BOTTOM), (PAD + 960.0, BOTTOM));
    c.line("boundary", (PAD, TOP), (PAD + 960.0, TOP));
    c.line("cut", (sx(0.0), TOP), (sx(0.0), BOTTOM));
    c.line("cut", (sx(w), TOP), (sx(w), BOTTOM));
    c.body.push_str("  <g clip-path=\"url(#view)\">\n");
    for arc in &t.arcs {
        let base = Lift::of(arc, t.n, t.m);
        let mut d = String::new();
        let mut class = "arc";
        for k in -3..=3 {
            match base.translate(k, n, m) {
                Lift::Lower(a, b) => {
                    let (x1, x2) = (layout.lower_x(a) as f64, layout.lower_x(b) as f64);
                    let rise = -(span_h * 0.9).min(span_h * 0.25 + (x2 - x1) / w * span_h * 0.5);
                    d += &hump(sx(x1), sx(x2), BOTTOM, rise);
                }
                Lift::Upper(a, b) => {
                    let (x1, x2) = (layout.upper_x(a) as f64, layout.upper_x(b) as f64);
                    let rise = (span_h * 0.9).min(span_h * 0.25 + (x2 - x1) / w * span_h * 0.5);
                    d += &hump(sx(x1), sx(x2), TOP, rise);
                }
                Lift::Bridge { lower, upper } => {
                    d += &bridge(sx(layout.lower_x(lower) as f64), sx(layout.upper_x(upper) as f64));
                }
                Lift::LowerAsym { at, dir } | Lift::UpperAsym { at, dir } => {
                    class = "arc asymptotic";
                    let lower = matches!(base, Lift::LowerAsym { .. });
                    let x = if lower { layout.lower_x(at) } else { layout.upper_x(at) } as f64;
                    let sign = if dir == Direction::Left { -1.0 } else { 1.0 };
                    let (y0, y1) = if lower { (BOTTOM, TOP + 8.0) } else { (TOP, BOTTOM - 8.0) };
                    let far = x + sign * 1.5 * w;
                    d += &format!(
                        "M {:.2} {y0:.2} C {:.2} {y1:.2} {:.2} {y1:.2} {:.2} {y1:.2} ",
                        sx(x),
                        sx(x),
                        sx((x + far) / 2.0),
                        sx(far)
                    );
                }
            }
        }
        c.path(class, &arc.to_string(), &d);
    }
    c.body.push_str("  </g>\n");
    for i in 0..n {
        c.text((sx(layout.lower_x(i) as f64), BOTTOM + 18.0), &(i + 1).to_string());
    }
    for r in 0..m {
        c.text((sx(layout.upper_x(r) as f64), TOP - 8.0), &(n + 1 + r).to_string());
    }
    c.finish()
}

pub fn render_strip(t: &StripTriangulation) -> String {
    let (l, r) = t.lower;
    let ux: Vec<f64> = t.upper.iter().map(|p| p.to_f64().unwrap()).collect();
    let lo = ux.iter().copied().fold(l as f64, f64::min);
    let hi = ux.iter().copied().fold(r as f64, f64::max);
    let unit = 40.0;
    let sx = |x: f64| PAD + (x - lo) * unit;
    let width = (hi - lo) * unit + 2.0 * PAD;
    let span_h = BOTTOM - TOP;
    let mut c = Canvas::new(width, BOTTOM + PAD, &format!("strip {l}..{r}"));
    c.line("boundary", (PAD / 2.0, BOTTOM), (width - PAD / 2.0, BOTTOM));
    c.line("boundary", (PAD / 2.0, TOP), (width - PAD / 2.0, TOP));
    for arc in &t.arcs {
        let (d, label) = match *arc {
            StripArc::Lower(a, b) => {
                let rise = -(span_h * 0.9).min(span_h * 0.15 * (b - a) as f64);
                (hump(sx(a as f64), sx(b as f64), BOTTOM, rise), format!("[{a},{b}]"))
            }
            StripArc::Upper(a, b) => {
                let rise = (span_h * 0.9).min(span_h * 0.15 * (b - a) as f64);
                (hump(sx(ux[a]), sx(ux[b]), TOP, rise), format!("upper [{a},{b}]"))
            }
            StripArc::Bridge { lower, upper } => {
                (bridge(sx(lower as f64), sx(ux[upper])), format!("[{lower},{}]", t.upper[upper]))
            }
        };
        c.path("arc", &label, &d);
    }
    for x in l..=r {
        c.text((sx(x as f64), BOTTOM + 18.0), &x.to_string());
    }
    for (k, p) in t.upper.iter().enumerate() {
        c.text((sx(ux[k]), TOP - 8.0), &p.to_string());
    }
    c.finish()
}

/// Regular polygon with its diagonals; the boundary is a single polygon.
pub fn render_polygon(p: &TriangulatedPolygon) -> String {
    let (cx, cy, radius) = (200.0, 200.0, 160.0);
    let at = |v: usize| {
        let a = std::f64::consts::TAU * (v as f64 - 1.0) / p.n as f64 - std::f64::consts::FRAC_PI_2;
        (cx + radius * a.cos(), cy + radius * a.sin())
    };
    let mut c = Canvas::new(400.0, 400.0, &format!("{}-gon", p.n));
    let pts: Vec<String> = (1..=p.n).map(|v| format!("{:.2},{:.2}", at(v).0, at(v).1)).collect();
    writeln!(c.body, "  <polygon class=\"boundary\" fill=\"none\" points=\"{}\"/>", pts.join(" ")).unwrap();
    for &(u, v) in &p.diagonals {
        let ((x1, y1), (x2, y2)) = (at(u), at(v));
        c.path("arc", &format!("[{u},{v}]"), &format!("M {x1:.2} {y1:.2} L {x2:.2} {y2:.2}"));
    }
    for v in 1..=p.n {
        let (x, y) = at(v);
        c.text((cx + (x - cx) * 1.12, cy + (y - cy) * 1.12 + 4.0), &v.to_string());
    }
    c.finish()
}

pub fn render(s: &Surface) -> String {
    match s {
        Surface::Annulus(t) => render_annulus(t),
        Surface::Disc(d) => match disc_to_annulus(d) {
            Ok(t) => render_annulus(&t),
            Err(_) => render_annulus(&AnnulusTriangulation::new(d.n, 0, Vec::new())),
        },
        Surface::Polygon(p) => render_polygon(p),
        Surface::Strip(t) => render_strip(t),
    }
}
