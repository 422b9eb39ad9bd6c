//! Minimal SVG line charts of sweep tables.

use std::fmt::Write;

use crate::sweep::{SweepTable, Variable};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn frac(&self, v: f64) -> f64 {
        if self.log {
            (v.ln() - self.lo.ln()) / (self.hi.ln() - self.lo.ln())
        } else {
            (v - self.lo) / (self.hi - self.lo)
        }
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.log10().floor() as i32, self.hi.log10().ceil() as i32);
            return (a..=b)
                .map(|e| 10f64.powi(e))
                .filter(|&t| t >= self.lo * 0.999 && t <= self.hi * 1.001)
                .collect();
        }
        let span = self.hi - self.lo;
        let raw = span / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 2.5, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| span / s <= 6.0)
            .unwrap_or(mag * 10.0);
        let first = (self.lo / step).ceil() as i64;
        let last = (self.hi / step).floor() as i64;
        (first..=last).map(|i| i as f64 * step).collect()
    }
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.0e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders analysis as solid lines, bounds as dashed lines, Monte Carlo
/// means as circles with 3-stderr bars and design markers as filled squares.
pub fn render(table: &SweepTable, title: &str) -> String {
    let xs: Vec<f64> = table.rows.iter().map(|r| r.x).collect();
    let (xlo, xhi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let log_x = matches!(table.variable, Variable::M | Variable::Lambda) && xlo > 0.0 && xhi / xlo >= 20.0;
    let mut ys: Vec<f64> = Vec::new();
    for r in &table.rows {
        ys.extend(r.analysis);
        ys.extend(r.lower);
        ys.extend(r.upper);
        if let Some(e) = &r.mc {
            ys.push(e.mean + 3.0 * e.stderr);
        }
    }
    ys.extend(table.markers.iter().filter_map(|m| m.es));
    let ymax = ys.iter().cloned().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let x_axis = Axis {
        lo: xlo,
        hi: if xhi > xlo { xhi } else { xlo + 1.0 },
        log: log_x,
    };
    let y_axis = Axis {
        lo: 0.0,
        hi: if ymax > 0.0 { ymax * 1.05 } else { 1.0 },
        log: false,
    };
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + pw * x_axis.frac(x);
    let py = |y: f64| TOP + ph * (1.0 - y_axis.frac(y));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + pw / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r##"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>"##
    );
    for t in x_axis.ticks() {
        let x = px(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/>"##,
            TOP + ph
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + ph + 18.0,
            fmt_tick(t)
        );
    }
    for t in y_axis.ticks() {
        let y = py(t);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##,
            LEFT + pw
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            fmt_tick(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 18.0,
        escape(table.variable.name())
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">E{{S}}</text>"#,
        TOP + ph / 2.0
    );

    let polyline = |s: &mut String, pts: &[(f64, f64)], color: &str, dash: Option<&str>| {
        if pts.len() < 2 {
            return;
        }
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>"#,
            coords.join(" ")
        );
    };

    for (i, name) in table.series().iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let rows: Vec<_> = table.rows_of(name).collect();
        let pick = |f: &dyn Fn(&crate::sweep::SweepRow) -> Option<f64>| -> Vec<(f64, f64)> {
            rows.iter()
                .filter_map(|r| f(r).filter(|v| v.is_finite()).map(|v| (r.x, v)))
                .collect()
        };
        polyline(&mut s, &pick(&|r| r.analysis), color, None);
        polyline(&mut s, &pick(&|r| r.lower), color, Some("6,4"));
        polyline(&mut s, &pick(&|r| r.upper), color, Some("2,3"));
        for r in &rows {
            if let Some(e) = &r.mc {
                let (x, y) = (px(r.x), py(e.mean));
                let (y0, y1) = (py((e.mean - 3.0 * e.stderr).max(0.0)), py(e.mean + 3.0 * e.stderr));
                let _ = writeln!(
                    s,
                    r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" stroke="{color}"/>"#
                );
                let _ = writeln!(
                    s,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="white" stroke="{color}" stroke-width="1.4"/>"#
                );
            }
        }
        for m in table.markers.iter().filter(|m| m.series == *name) {
            if let Some(y) = m.es {
                if m.x >= x_axis.lo && m.x <= x_axis.hi {
                    let _ = writeln!(
                        s,
                        r#"<rect x="{:.2}" y="{:.2}" width="8" height="8" fill="{color}"><title>{}</title></rect>"#,
                        px(m.x) - 4.0,
                        py(y) - 4.0,
                        m.name
                    );
                }
            }
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 22.0
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 28.0, ly + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scenario;
    use crate::sweep::{run_sweep, Output, RunOptions, Series, SweepSpec};

    #[test]
    fn renders_polylines_and_markers() {
        let mut base = Scenario::default();
        base.ch.sigma2 = 0.1;
        let spec = SweepSpec::new(
            Variable::Rho,
            vec![0.1, 0.2, 0.3, 0.5],
            vec![Output::Analysis, Output::Bounds, Output::DesignMarkers],
        )
        .unwrap();
        let t = run_sweep(
            &base,
            &spec,
            &[Series::new("a <b>", vec![])],
            RunOptions {
                trials: 1,
                seed: 0,
                radius: None,
            },
        )
        .unwrap();
        let svg = render(&t, "rho sweep");
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("rho_hat"));
        assert!(svg.contains("a &lt;b&gt;"));
    }

    #[test]
    fn log_ticks() {
        let a = Axis {
            lo: 1.0,
            hi: 1000.0,
            log: true,
        };
        assert_eq!(a.ticks(), vec![1.0, 10.0, 100.0, 1000.0]);
        let l = Axis {
            lo: 0.0,
            hi: 1.0,
            log: false,
        };
        assert_eq!(l.ticks().len(), 6);
    }
}
