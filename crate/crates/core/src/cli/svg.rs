//! Minimal line plots: axes, a few series, an optional shaded band and an
//! optional zoomed inset.

use std::fmt::Write as _;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f5fa8", "#c8492b", "#2e8b57", "#7a4fa0"];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.into(),
            points,
        }
    }
}

/// Zoomed view drawn in the upper right corner.
#[derive(Debug, Clone)]
pub struct Inset {
    pub x_range: (f64, f64),
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Shaded `x` range.
    pub band: Option<(f64, f64)>,
    pub log_x: bool,
    pub log_y: bool,
    pub inset: Option<Inset>,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
            lo -= 0.5;
            hi += 0.5;
        }
        Axis { lo, hi, log }
    }

    fn unit(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    /// Tick positions in data units.
    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let first = self.lo.ceil() as i32;
            let last = self.hi.floor() as i32;
            let step = ((last - first) / 6 + 1).max(1);
            return (first..=last).step_by(step as usize).map(|e| 10f64.powi(e)).collect();
        }
        let raw = (self.hi - self.lo) / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let mut t = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while t <= self.hi + 1e-9 * step {
            out.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
            t += step;
        }
        out
    }
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".into()
    } else if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.0e}")
    }
}

fn polyline(out: &mut String, frame: Frame, xa: Axis, ya: Axis, series: &Series, color: &str, width: f64) {
    // break the line at points that cannot be placed
    let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    for &(x, y) in &series.points {
        match (xa.unit(x), ya.unit(y)) {
            (Some(u), Some(v)) if (0.0..=1.0).contains(&u) => {
                let v = v.clamp(-0.05, 1.05);
                runs.last_mut().unwrap().push((frame.x0 + u * frame.w, frame.y0 + (1.0 - v) * frame.h));
            }
            _ => {
                if !runs.last().unwrap().is_empty() {
                    runs.push(Vec::new());
                }
            }
        }
    }
    for run in runs.iter().filter(|r| r.len() >= 2) {
        let pts: Vec<String> = run.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{}"/>"#,
            pts.join(" ")
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Plot {
    pub fn render(&self) -> String {
        let frame = Frame {
            x0: LEFT,
            y0: TOP,
            w: WIDTH - LEFT - RIGHT,
            h: HEIGHT - TOP - BOTTOM,
        };
        let all = || self.series.iter().flat_map(|s| s.points.iter().copied());
        let xa = Axis::fit(all().map(|p| p.0), self.log_x);
        let ya = Axis::fit(all().map(|p| p.1), self.log_y);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        if let Some((a, b)) = self.band {
            if let (Some(u0), Some(u1)) = (xa.unit(a), xa.unit(b)) {
                let (u0, u1) = (u0.clamp(0.0, 1.0), u1.clamp(0.0, 1.0));
                let _ = writeln!(
                    out,
                    r##"<rect class="band" x="{:.2}" y="{}" width="{:.2}" height="{}" fill="#f2c14e" fill-opacity="0.35"/>"##,
                    frame.x0 + u0 * frame.w,
                    frame.y0,
                    ((u1 - u0) * frame.w).max(1.0),
                    frame.h
                );
            }
        }

        self.axes(&mut out, frame, xa, ya);
        for (i, s) in self.series.iter().enumerate() {
            polyline(&mut out, frame, xa, ya, s, COLORS[i % COLORS.len()], 1.5);
        }
        for (i, s) in self.series.iter().enumerate() {
            let y = frame.y0 + 16.0 + 16.0 * i as f64;
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{y:.2}" fill="{}">{}</text>"#,
                frame.x0 + 10.0,
                COLORS[i % COLORS.len()],
                escape(&s.label)
            );
        }
        if let Some(inset) = &self.inset {
            self.render_inset(&mut out, frame, inset);
        }
        out.push_str("</svg>\n");
        out
    }

    fn axes(&self, out: &mut String, frame: Frame, xa: Axis, ya: Axis) {
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            frame.x0, frame.y0, frame.w, frame.h
        );
        for t in xa.ticks() {
            if let Some(u) = xa.unit(t) {
                let x = frame.x0 + u * frame.w;
                let y = frame.y0 + frame.h;
                let _ = writeln!(
                    out,
                    r#"<line x1="{x:.2}" y1="{y}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                    y + 5.0,
                    y + 18.0,
                    tick_label(t)
                );
            }
        }
        for t in ya.ticks() {
            if let Some(v) = ya.unit(t) {
                let y = frame.y0 + (1.0 - v) * frame.h;
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.2}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                    frame.x0 - 5.0,
                    frame.x0,
                    frame.x0 - 8.0,
                    y + 4.0,
                    tick_label(t)
                );
            }
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.x0 + frame.w / 2.0,
            HEIGHT - 10.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            frame.y0 + frame.h / 2.0,
            frame.y0 + frame.h / 2.0,
            escape(&self.y_label)
        );
    }

    fn render_inset(&self, out: &mut String, outer: Frame, inset: &Inset) {
        let frame = Frame {
            x0: outer.x0 + outer.w - 250.0,
            y0: outer.y0 + 10.0,
            w: 240.0,
            h: 150.0,
        };
        let (a, b) = inset.x_range;
        let inside = || {
            inset
                .series
                .iter()
                .flat_map(|s| s.points.iter().copied())
                .filter(move |p| p.0 >= a && p.0 <= b)
        };
        let xa = Axis { lo: a, hi: b, log: false };
        let ya = Axis::fit(inside().map(|p| p.1), false);
        let _ = writeln!(out, r#"<g class="inset">"#);
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black"/>"#,
            frame.x0, frame.y0, frame.w, frame.h
        );
        if let Some((lo, hi)) = self.band {
            let u0 = ((lo - a) / (b - a)).clamp(0.0, 1.0);
            let u1 = ((hi - a) / (b - a)).clamp(0.0, 1.0);
            let _ = writeln!(
                out,
                r##"<rect x="{:.2}" y="{}" width="{:.2}" height="{}" fill="#f2c14e" fill-opacity="0.35"/>"##,
                frame.x0 + u0 * frame.w,
                frame.y0,
                (u1 - u0) * frame.w,
                frame.h
            );
        }
        for (i, s) in inset.series.iter().enumerate() {
            let clipped = Series::new(s.label.clone(), s.points.iter().copied().filter(|p| p.0 >= a && p.0 <= b).collect());
            polyline(out, frame, xa, ya, &clipped, COLORS[i % COLORS.len()], 1.2);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" fill="{}">{}</text>"#,
                frame.x0 + 6.0,
                frame.y0 + 12.0 + 12.0 * i as f64,
                COLORS[i % COLORS.len()],
                escape(&s.label)
            );
        }
        out.push_str("</g>\n");
    }
}
