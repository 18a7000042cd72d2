//! Self-contained SVG plot of mean evaluations against n: one panel per
//! problem, one polyline per variant, logarithmic y axis.

use std::fmt::Write;

use super::{CellResult, Variant};
use crate::error::{invalid, Result};
use crate::problems::ProblemKind;

const PANEL_W: f64 = 460.0;
const PANEL_H: f64 = 340.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 50.0;
const LEGEND_H: f64 = 120.0;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn title(p: ProblemKind) -> &'static str {
    match p {
        ProblemKind::OneMinMax => "OneMinMax",
        ProblemKind::LeadingOnesTrailingZeroes => "LeadingOnesTrailingZeroes",
    }
}

/// Plotted value: the censored mean, which equals the plain mean when no run
/// was capped and is defined whenever a cell has runs.
fn value(c: &CellResult) -> Option<f64> {
    c.censored_mean_evals.filter(|v| *v > 0.0)
}

fn variants_in_order<'a>(cells: impl Iterator<Item = &'a CellResult>) -> Vec<Variant> {
    let mut out: Vec<Variant> = Vec::new();
    for c in cells {
        if !out.contains(&c.variant) {
            out.push(c.variant);
        }
    }
    out
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One panel as an SVG `<g>` element positioned at `x_offset`. Every cell
/// must belong to `problem`.
pub fn svg_panel(problem: ProblemKind, cells: &[&CellResult], x_offset: f64) -> Result<String> {
    if let Some(c) = cells.iter().find(|c| c.problem != problem) {
        return Err(invalid(format!(
            "panel for {} received a {} result",
            problem.short_name(),
            c.problem.short_name()
        )));
    }
    if cells.is_empty() {
        return Err(invalid(format!("no results for {}", problem.short_name())));
    }

    let mut ns: Vec<usize> = cells.iter().map(|c| c.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let (nmin, nmax) = (ns[0] as f64, ns[ns.len() - 1] as f64);
    let vals: Vec<f64> = cells.iter().filter_map(|c| value(c)).collect();
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min).max(1.0);
    let hi = vals.iter().copied().fold(0.0, f64::max).max(10.0);
    let (dmin, dmax) = (
        lo.log10().floor(),
        hi.log10().ceil().max(lo.log10().floor() + 1.0),
    );

    let plot_w = PANEL_W - LEFT - RIGHT;
    let plot_h = PANEL_H - TOP - BOTTOM;
    let x = |n: f64| {
        let t = if nmax > nmin {
            (n - nmin) / (nmax - nmin)
        } else {
            0.5
        };
        LEFT + t * plot_w
    };
    let y = |v: f64| TOP + (1.0 - (v.log10() - dmin) / (dmax - dmin)) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<g class="panel" data-problem="{}" transform="translate({x_offset},0)">"#,
        problem.short_name()
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + plot_w / 2.0,
        title(problem)
    );
    let _ = writeln!(
        s,
        r##"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>"##
    );
    for &n in &ns {
        let px = x(n as f64);
        let _ = writeln!(
            s,
            r##"<line x1="{px:.1}" y1="{}" x2="{px:.1}" y2="{}" stroke="#444"/><text x="{px:.1}" y="{}" text-anchor="middle" font-size="11">{n}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 18.0
        );
    }
    let mut d = dmin;
    while d <= dmax + 1e-9 {
        let py = y(10f64.powf(d));
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{py:.1}" x2="{}" y2="{py:.1}" stroke="#ddd"/><text x="{}" y="{:.1}" text-anchor="end" font-size="11">1e{d}</text>"##,
            LEFT,
            LEFT + plot_w,
            LEFT - 6.0,
            py + 4.0
        );
        d += 1.0;
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">n</text>"#,
        LEFT + plot_w / 2.0,
        TOP + plot_h + 38.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {})">mean evaluations</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (k, v) in variants_in_order(cells.iter().copied()).iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut pts: Vec<(usize, f64)> = cells
            .iter()
            .filter(|c| c.variant == *v)
            .filter_map(|c| value(c).map(|val| (c.n, val)))
            .collect();
        pts.sort_by_key(|p| p.0);
        let coords: Vec<String> = pts
            .iter()
            .map(|&(n, val)| format!("{:.1},{:.1}", x(n as f64), y(val)))
            .collect();
        let dash = if v.archive {
            ""
        } else {
            r#" stroke-dasharray="5,3""#
        };
        let _ = writeln!(
            s,
            r#"<polyline data-variant="{}" points="{}" fill="none" stroke="{color}" stroke-width="1.8"{dash}/>"#,
            esc(&v.label()),
            coords.join(" ")
        );
        let ly = PANEL_H + 8.0 + 14.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="1.8"{dash}/><text x="{}" y="{}" font-size="11">{}</text>"#,
            LEFT + 24.0,
            LEFT + 30.0,
            ly + 4.0,
            esc(&v.label())
        );
    }
    s.push_str("</g>\n");
    Ok(s)
}

/// One panel per problem, in order of first appearance.
pub fn render_svg(results: &[CellResult]) -> Result<String> {
    if results.is_empty() {
        return Err(invalid("cannot plot an empty result set"));
    }
    let mut problems: Vec<ProblemKind> = Vec::new();
    for c in results {
        if !problems.contains(&c.problem) {
            problems.push(c.problem);
        }
    }
    let width = PANEL_W * problems.len() as f64;
    let height = PANEL_H + LEGEND_H;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    for (i, &p) in problems.iter().enumerate() {
        let cells: Vec<&CellResult> = results.iter().filter(|c| c.problem == p).collect();
        s.push_str(&svg_panel(p, &cells, PANEL_W * i as f64)?);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{default_experiment, CellResult};

    fn fake_results() -> Vec<CellResult> {
        let cfg = default_experiment();
        cfg.cells()
            .into_iter()
            .map(|cell| CellResult {
                problem: cell.problem,
                variant: cell.variant,
                mu: cell.mu(),
                n: cell.n,
                runs: 1,
                max_evals: 1000,
                base_seed: 0,
                successes: 1,
                capped: 0,
                mean_evals: Some(100.0 * cell.n as f64),
                censored_mean_evals: Some(100.0 * cell.n as f64),
                std_evals: None,
                records: vec![],
            })
            .collect()
    }

    #[test]
    fn eight_polylines_per_panel() {
        let svg = render_svg(&fake_results()).unwrap();
        let panels: Vec<&str> = svg.split("<g class=\"panel\"").skip(1).collect();
        assert_eq!(panels.len(), 2);
        for p in panels {
            assert_eq!(p.matches("<polyline").count(), 8);
        }
    }

    #[test]
    fn mixed_problems_in_one_panel_fail() {
        let r = fake_results();
        let cells: Vec<&CellResult> = r.iter().collect();
        assert!(matches!(
            svg_panel(ProblemKind::OneMinMax, &cells, 0.0),
            Err(crate::Error::InvalidInput(_))
        ));
        assert!(render_svg(&[]).is_err());
    }
}
