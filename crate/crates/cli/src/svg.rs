//! Minimal self-contained SVG line/scatter charts with a log10 y axis.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Markers,
    Line,
    LineMarkers,
    Dashed,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Frame {
    x0: f64,
    x1: f64,
    /// log10 bounds
    y0: i32,
    y1: i32,
}

impl Frame {
    fn fit(series: &[Series]) -> Frame {
        let pts: Vec<(f64, f64)> = series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|&(x, y)| x.is_finite() && y.is_finite() && y > 0.0)
            .collect();
        if pts.is_empty() {
            return Frame {
                x0: 0.0,
                x1: 1.0,
                y0: -1,
                y1: 0,
            };
        }
        let (mut x0, mut x1) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.0), hi.max(p.0))
            });
        if x0 == x1 {
            x0 -= 1.0;
            x1 += 1.0;
        }
        let (ylo, yhi) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.1.log10()), hi.max(p.1.log10()))
            });
        let y0 = ylo.floor() as i32;
        let mut y1 = yhi.ceil() as i32;
        if y1 == y0 {
            y1 += 1;
        }
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let t = (y.log10() - self.y0 as f64) / (self.y1 - self.y0) as f64;
        HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)
    }
}

fn x_ticks(x0: f64, x1: f64) -> Vec<f64> {
    let span = x1 - x0;
    let raw = span / 8.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
        .max(1.0);
    let mut t = (x0 / step).ceil() * step;
    let mut ticks = Vec::new();
    while t <= x1 + 1e-9 {
        ticks.push(t);
        t += step;
    }
    ticks
}

impl Chart {
    pub fn render(&self) -> String {
        let f = Frame::fit(&self.series);
        let (plot_l, plot_r) = (LEFT, WIDTH - RIGHT);
        let (plot_t, plot_b) = (TOP, HEIGHT - BOTTOM);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="28" text-anchor="middle" font-size="15">{}</text>"#,
            (plot_l + plot_r) / 2.0,
            escape(&self.title)
        );

        // decade grid with minor ticks
        for e in f.y0..=f.y1 {
            let y = f.py(10f64.powi(e));
            let _ = writeln!(
                s,
                r##"<line x1="{plot_l}" y1="{y:.2}" x2="{plot_r}" y2="{y:.2}" stroke="#ccc"/>"##
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{e}</text>"#,
                plot_l - 6.0,
                y + 4.0
            );
            if e < f.y1 {
                for k in 2..10 {
                    let y = f.py(k as f64 * 10f64.powi(e));
                    let _ = writeln!(
                        s,
                        r##"<line x1="{plot_l}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#888"/>"##,
                        plot_l + 4.0
                    );
                }
            }
        }
        for t in x_ticks(f.x0, f.x1) {
            let x = f.px(t);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{plot_b}" x2="{x:.2}" y2="{:.2}" stroke="#888"/>"##,
                plot_b + 5.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{t}</text>"#,
                plot_b + 20.0
            );
        }
        let _ = writeln!(
            s,
            r#"<rect x="{plot_l}" y="{plot_t}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            plot_r - plot_l,
            plot_b - plot_t
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            (plot_l + plot_r) / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
            (plot_t + plot_b) / 2.0,
            escape(&self.y_label)
        );

        if self.series.iter().all(|se| se.points.is_empty()) {
            let _ = writeln!(
                s,
                r##"<text x="{}" y="{}" text-anchor="middle" fill="#888">no data</text>"##,
                (plot_l + plot_r) / 2.0,
                (plot_t + plot_b) / 2.0
            );
        }

        for se in &self.series {
            let pts: Vec<(f64, f64)> = se
                .points
                .iter()
                .filter(|&&(x, y)| x.is_finite() && y.is_finite() && y > 0.0)
                .map(|&(x, y)| (f.px(x), f.py(y)))
                .collect();
            if matches!(se.style, Style::Line | Style::LineMarkers | Style::Dashed) && pts.len() > 1
            {
                let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let dash = if se.style == Style::Dashed {
                    r#" stroke-dasharray="6 4""#
                } else {
                    ""
                };
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
                    path.join(" "),
                    se.color
                );
            }
            if matches!(se.style, Style::Markers | Style::LineMarkers) {
                for (x, y) in &pts {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{}"/>"#,
                        se.color
                    );
                }
            }
        }

        // legend
        for (i, se) in self.series.iter().enumerate() {
            let y = plot_t + 14.0 + 20.0 * i as f64;
            let x = plot_r + 14.0;
            let dash = if se.style == Style::Dashed {
                r#" stroke-dasharray="6 4""#
            } else {
                ""
            };
            let _ = writeln!(
                s,
                r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"{dash}/>"#,
                x + 24.0,
                se.color
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}">{}</text>"#,
                x + 30.0,
                y + 4.0,
                escape(&se.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
