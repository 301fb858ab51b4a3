//! Static SVG rendering of sweep results: mean energy cost against the
//! aggregation ratio, one polyline per algorithm, with the mean lower bound
//! drawn as a dashed reference curve.
//!
//! The output is a plain self-contained SVG string with no scripting, built
//! from the exact rational means (converted to floats only for pixel
//! placement), so the same rows always render to the same bytes.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{AggError, Result};
use crate::sweep::{summarize, SweepRow};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 180.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
];

/// Renders sweep rows as a cost-versus-ratio SVG chart.
///
/// Each algorithm contributes one solid polyline through its per-`q` mean
/// costs (failed trials are excluded from the means; a `(q, algorithm)` cell
/// whose every trial failed is skipped). The dashed gray curve is the mean
/// lower bound per `q`. Errors when there are no rows or no successful cells
/// to plot.
pub fn emit_chart(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(AggError::InvalidInstance("no rows to chart".into()));
    }

    // Per-algorithm series of (q, mean cost).
    let mut series: BTreeMap<String, Vec<(u64, f64)>> = BTreeMap::new();
    for summary in summarize(rows) {
        if let Some(mean) = summary.mean_cost {
            series
                .entry(summary.algorithm)
                .or_default()
                .push((summary.q, rational_to_f64(mean)?));
        }
    }
    if series.is_empty() {
        return Err(AggError::InvalidInstance(
            "every trial failed; nothing to chart".into(),
        ));
    }

    // Mean lower bound per q. The bound is a property of the instance, not
    // of the algorithm, so average one value per (seed, q) pair.
    let mut lb_cells: BTreeMap<u64, BTreeMap<u64, f64>> = BTreeMap::new();
    for row in rows {
        lb_cells
            .entry(row.q)
            .or_default()
            .entry(row.seed)
            .or_insert(rational_to_f64(row.lower_bound)?);
    }
    let lb_series: Vec<(u64, f64)> = lb_cells
        .into_iter()
        .map(|(q, per_seed)| {
            let n = per_seed.len() as f64;
            (q, per_seed.values().sum::<f64>() / n)
        })
        .collect();

    // Data ranges. The x range covers every q present; y starts at zero so
    // curve heights are comparable.
    let q_min = rows.iter().map(|r| r.q).min().unwrap() as f64;
    let q_max = rows.iter().map(|r| r.q).max().unwrap() as f64;
    let y_max = series
        .values()
        .flatten()
        .map(|&(_, y)| y)
        .chain(lb_series.iter().map(|&(_, y)| y))
        .fold(0.0_f64, f64::max);
    let x_span = if q_max > q_min { q_max - q_min } else { 1.0 };
    let y_top = if y_max > 0.0 { y_max * 1.05 } else { 1.0 };

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |q: f64| MARGIN_LEFT + (q - q_min) / x_span * plot_w;
    let sy = |c: f64| MARGIN_TOP + (1.0 - c / y_top) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));

    // Axes.
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));

    // Ticks: x at up to eight round q positions, y at six even divisions.
    let mut x_ticks: Vec<f64> = Vec::new();
    let q_values: Vec<f64> = {
        let mut qs: Vec<u64> = rows.iter().map(|r| r.q).collect();
        qs.sort_unstable();
        qs.dedup();
        qs.into_iter().map(|q| q as f64).collect()
    };
    if q_values.len() <= 8 {
        x_ticks.extend(&q_values);
    } else {
        let step = (q_values.len() - 1) as f64 / 7.0;
        for i in 0..8 {
            x_ticks.push(q_values[(i as f64 * step).round() as usize]);
        }
    }
    for &q in &x_ticks {
        let x = sx(q);
        svg.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{y0}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"black\"/>\n",
            y0 + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{}\" text-anchor=\"middle\">{q}</text>\n",
            y0 + 20.0
        ));
    }
    for i in 0..=5 {
        let value = y_top * i as f64 / 5.0;
        let y = sy(value);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{y:.2}\" x2=\"{x0}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
            x0 - 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{value:.0}</text>\n",
            x0 - 9.0,
            y + 4.0
        ));
    }

    // Axis labels.
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">aggregation ratio q</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {:.2})\">energy cost</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    ));

    // Lower-bound reference curve, dashed.
    svg.push_str(&polyline_and_dots(
        &lb_series,
        "#777777",
        true,
        &sx,
        &sy,
    ));

    // One solid polyline per algorithm.
    for (idx, points) in series.values().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        svg.push_str(&polyline_and_dots(points, color, false, &sx, &sy));
    }

    // Legend.
    let legend_x = x1 + 15.0;
    let mut legend_y = y1 + 10.0;
    for (idx, name) in series.keys().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        svg.push_str(&format!(
            "  <line x1=\"{legend_x}\" y1=\"{legend_y}\" x2=\"{}\" y2=\"{legend_y}\" \
             stroke=\"{color}\" stroke-width=\"2\"/>\n",
            legend_x + 24.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\">{name}</text>\n",
            legend_x + 30.0,
            legend_y + 4.0
        ));
        legend_y += 20.0;
    }
    svg.push_str(&format!(
        "  <line x1=\"{legend_x}\" y1=\"{legend_y}\" x2=\"{}\" y2=\"{legend_y}\" \
         stroke=\"#777777\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n",
        legend_x + 24.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\">lower bound</text>\n",
        legend_x + 30.0,
        legend_y + 4.0
    ));

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn polyline_and_dots(
    points: &[(u64, f64)],
    color: &str,
    dashed: bool,
    sx: &dyn Fn(f64) -> f64,
    sy: &dyn Fn(f64) -> f64,
) -> String {
    let mut out = String::new();
    if points.len() > 1 {
        let coords: Vec<String> = points
            .iter()
            .map(|&(q, c)| format!("{:.2},{:.2}", sx(q as f64), sy(c)))
            .collect();
        let dash = if dashed {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        out.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{dash}/>\n",
            coords.join(" ")
        ));
    }
    for &(q, c) in points {
        out.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
            sx(q as f64),
            sy(c)
        ));
    }
    out
}

fn rational_to_f64(r: crate::rat::Rational) -> Result<f64> {
    r.to_f64()
        .ok_or_else(|| AggError::Internal("cost out of float range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::rgg::RggConfig;
    use crate::sweep::{run_sweep, summarize, SweepConfig};

    fn row(seed: u64, q: u64, algorithm: &str, cost: Option<i64>, lb: i64) -> SweepRow {
        SweepRow {
            seed,
            q,
            algorithm: algorithm.into(),
            cost: cost.map(rat),
            lower_bound: rat(lb),
            runtime_ms: None,
        }
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(emit_chart(&[]).is_err());
        let all_failed = vec![row(0, 2, "spt", None, 4)];
        assert!(emit_chart(&all_failed).is_err());
    }

    #[test]
    fn single_point_renders_a_dot_and_labels() {
        let svg = emit_chart(&[row(0, 2, "spt", Some(12), 6)]).unwrap();
        assert!(svg.contains("aggregation ratio q"));
        assert!(svg.contains("energy cost"));
        assert!(svg.contains("<circle"));
        assert!(!svg.contains("<polyline points=\"\""));
        assert!(svg.contains("spt"));
        assert!(svg.contains("lower bound"));
    }

    #[test]
    fn multiple_algorithms_get_distinct_polylines() {
        let rows = vec![
            row(0, 2, "spt", Some(20), 5),
            row(0, 4, "spt", Some(14), 4),
            row(0, 2, "spanning", Some(30), 5),
            row(0, 4, "spanning", Some(22), 4),
        ];
        let svg = emit_chart(&rows).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3); // two algorithms + bound
        assert_eq!(svg.matches("stroke-dasharray").count(), 2); // curve + legend
        assert!(emit_chart(&rows).unwrap() == svg, "chart bytes must be stable");
    }

    #[test]
    fn spt_mean_cost_never_rises_with_the_ratio() {
        let rgg = RggConfig {
            n: 30,
            field: 70.0,
            range: 25.0,
            sink_at: (35.0, 35.0),
            seed: 9,
            ..RggConfig::default()
        };
        let cfg = SweepConfig {
            q_values: vec![2, 4, 8, 16, 32],
            trials: 4,
            algorithms: vec!["spt".into()],
            ..SweepConfig::for_rgg(&rgg)
        };
        let rows = run_sweep(&cfg, &rgg).unwrap();
        let summary = summarize(&rows);
        for pair in summary.windows(2) {
            assert!(
                pair[0].mean_cost.unwrap() >= pair[1].mean_cost.unwrap(),
                "mean cost rose from q={} to q={}",
                pair[0].q,
                pair[1].q
            );
        }
        let svg = emit_chart(&rows).unwrap();
        assert!(svg.contains("<polyline"));
    }
}
