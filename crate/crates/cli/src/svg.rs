//! Single-panel line charts as plain SVG text. Output depends only on the
//! input data, so files can be compared byte for byte.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];
/// Solid, dashed, dotted, then repeat.
const DASHES: [Option<&str>; 3] = [None, Some("8 4"), Some("2 3")];

#[derive(Debug, Clone)]
pub struct Trace {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Default)]
pub struct Chart {
    pub title: Option<String>,
    pub x_label: String,
    pub y_label: String,
    pub traces: Vec<Trace>,
    /// Dashed reference lines at these y values.
    pub hlines: Vec<f64>,
    /// Dashed reference lines at these x values.
    pub vlines: Vec<f64>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Option<Range> {
        values
            .filter(|v| v.is_finite())
            .fold(None, |acc, v| match acc {
                None => Some(Range { lo: v, hi: v }),
                Some(r) => Some(Range {
                    lo: r.lo.min(v),
                    hi: r.hi.max(v),
                }),
            })
    }

    fn padded(self, frac: f64) -> Range {
        let span = self.hi - self.lo;
        if span > 0.0 {
            Range {
                lo: self.lo - frac * span,
                hi: self.hi + frac * span,
            }
        } else {
            let d = if self.lo == 0.0 {
                1.0
            } else {
                0.5 * self.lo.abs()
            };
            Range {
                lo: self.lo - d,
                hi: self.hi + d,
            }
        }
    }

    fn map(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.lo) / (self.hi - self.lo) * (to - from)
    }
}

/// Round tick spacing (1, 2 or 5 times a power of ten) giving about
/// `target` intervals.
fn tick_step(r: Range, target: f64) -> f64 {
    let raw = (r.hi - r.lo) / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(r: Range, target: f64) -> (Vec<f64>, usize) {
    let step = tick_step(r, target);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (r.lo / step).ceil() as i64;
    let last = (r.hi / step).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), decimals)
}

impl Chart {
    pub fn render(&self) -> String {
        let x_range = Range::of(
            self.traces
                .iter()
                .flat_map(|t| t.points.iter().map(|p| p.0))
                .chain(self.vlines.iter().copied()),
        )
        .unwrap_or(Range { lo: 0.0, hi: 1.0 });
        let x_range = if x_range.hi > x_range.lo {
            x_range
        } else {
            x_range.padded(0.0)
        };
        let y_range = Range::of(
            self.traces
                .iter()
                .flat_map(|t| t.points.iter().map(|p| p.1))
                .chain(self.hlines.iter().copied()),
        )
        .unwrap_or(Range { lo: 0.0, hi: 1.0 })
        .padded(0.05);

        let (x0, x1) = (LEFT, WIDTH - RIGHT);
        let (y0, y1) = (HEIGHT - BOTTOM, TOP);
        let px = |x: f64| x_range.map(x, x0, x1);
        let py = |y: f64| y_range.map(y, y0, y1);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
        );
        let _ = writeln!(
            s,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        if let Some(title) = &self.title {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
                (x0 + x1) / 2.0,
                escape(title)
            );
        }

        let (xt, xd) = ticks(x_range, 8.0);
        let (yt, yd) = ticks(y_range, 6.0);
        let _ = writeln!(s, r##"<g stroke="#e0e0e0" stroke-width="1">"##);
        for &x in &xt {
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="{y0:.2}" x2="{0:.2}" y2="{y1:.2}"/>"#,
                px(x)
            );
        }
        for &y in &yt {
            let _ = writeln!(
                s,
                r#"<line x1="{x0:.2}" y1="{0:.2}" x2="{x1:.2}" y2="{0:.2}"/>"#,
                py(y)
            );
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(
            s,
            r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
            x1 - x0,
            y0 - y1
        );
        for &x in &xt {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x:.xd$}</text>"#,
                px(x),
                y0 + 18.0
            );
        }
        for &y in &yt {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.yd$}</text>"#,
                x0 - 6.0,
                py(y) + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="{0:.2}" text-anchor="middle" transform="rotate(-90 20 {0:.2})">{1}</text>"#,
            (y0 + y1) / 2.0,
            escape(&self.y_label)
        );

        let _ = writeln!(
            s,
            r##"<g stroke="#555555" stroke-width="1" stroke-dasharray="5 4">"##
        );
        for &y in self.hlines.iter().filter(|v| v.is_finite()) {
            let _ = writeln!(
                s,
                r#"<line x1="{x0:.2}" y1="{0:.2}" x2="{x1:.2}" y2="{0:.2}"/>"#,
                py(y)
            );
        }
        for &x in self.vlines.iter().filter(|v| v.is_finite()) {
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="{y0:.2}" x2="{0:.2}" y2="{y1:.2}"/>"#,
                px(x)
            );
        }
        let _ = writeln!(s, "</g>");

        for (k, trace) in self.traces.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let dash = DASHES[k % DASHES.len()]
                .map(|d| format!(r#" stroke-dasharray="{d}""#))
                .unwrap_or_default();
            let pts: Vec<String> = trace
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                pts.join(" ")
            );
        }
        if !self.traces.is_empty() {
            let _ = writeln!(
                s,
                r##"<rect x="{:.2}" y="{:.2}" width="165" height="{:.2}" fill="white" fill-opacity="0.85" stroke="#999999"/>"##,
                x1 - 176.0,
                y1 + 6.0,
                18.0 * self.traces.len() as f64 + 6.0
            );
        }
        for (k, trace) in self.traces.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            let dash = DASHES[k % DASHES.len()]
                .map(|d| format!(r#" stroke-dasharray="{d}""#))
                .unwrap_or_default();
            let ly = y1 + 18.0 + 18.0 * k as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                x1 - 170.0,
                x1 - 140.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                x1 - 134.0,
                ly + 4.0,
                escape(&trace.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart {
            title: Some("a < b".into()),
            x_label: "x".into(),
            y_label: "y".into(),
            traces: vec![
                Trace {
                    label: "one".into(),
                    points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)],
                },
                Trace {
                    label: "two".into(),
                    points: vec![(0.0, 1.0), (2.0, 0.0)],
                },
            ],
            hlines: vec![0.25],
            vlines: vec![1.5],
        }
    }

    #[test]
    fn render_is_deterministic_and_complete() {
        let a = chart().render();
        assert_eq!(a, chart().render());
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<polyline").count(), 2);
        assert!(a.contains("a &lt; b"));
        assert!(a.contains(r#"stroke-dasharray="8 4""#));
    }

    #[test]
    fn points_map_into_plot_area() {
        let a = chart().render();
        // x = 0 on the left edge, x = 2 on the right edge.
        assert!(a.contains(&format!("{LEFT:.2},")));
        assert!(a.contains(&format!("{:.2},", WIDTH - RIGHT)));
    }

    #[test]
    fn nice_ticks() {
        let (t, d) = ticks(Range { lo: 0.0, hi: 400.0 }, 8.0);
        assert_eq!(
            t,
            vec![0.0, 50.0, 100.0, 150.0, 200.0, 250.0, 300.0, 350.0, 400.0]
        );
        assert_eq!(d, 0);
        let (t, d) = ticks(
            Range {
                lo: -0.03,
                hi: 0.72,
            },
            6.0,
        );
        assert_eq!(t.first().copied(), Some(0.0));
        assert_eq!(d, 1);
    }

    #[test]
    fn degenerate_ranges_do_not_divide_by_zero() {
        let c = Chart {
            traces: vec![Trace {
                label: "flat".into(),
                points: vec![(1.0, 3.0), (1.0, 3.0)],
            }],
            ..Default::default()
        };
        assert!(!c.render().contains("NaN"));
    }
}
