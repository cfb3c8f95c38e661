//! Plain-text SVG plot emission: line charts (energy vs iteration) and
//! scatter plots (estimated vs exact with a y = x guide; n vs τ). No
//! renderer dependency; every plot embeds its config fingerprint in a
//! `<desc>` element.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

const PALETTE: &[&str] = &[
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Free-form fingerprint (seed, preset, …) embedded as the description.
    pub metadata: String,
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn from_points<'a>(points: impl Iterator<Item = &'a (f64, f64)>) -> Frame {
        let mut frame = Frame {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        for &(x, y) in points {
            frame.x_min = frame.x_min.min(x);
            frame.x_max = frame.x_max.max(x);
            frame.y_min = frame.y_min.min(y);
            frame.y_max = frame.y_max.max(y);
        }
        if !frame.x_min.is_finite() {
            frame = Frame { x_min: 0.0, x_max: 1.0, y_min: 0.0, y_max: 1.0 };
        }
        if frame.x_max - frame.x_min < 1e-12 {
            frame.x_max = frame.x_min + 1.0;
        }
        if frame.y_max - frame.y_min < 1e-12 {
            frame.y_max = frame.y_min + 1.0;
        }
        // A little breathing room on the y axis.
        let pad = 0.05 * (frame.y_max - frame.y_min);
        frame.y_min -= pad;
        frame.y_max += pad;
        frame
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN_LEFT + (v - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn header(plot: &Plot) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<desc>{meta}</desc>\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" ",
            "font-size=\"15\">{title}</text>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        meta = escape(&plot.metadata),
        tx = WIDTH / 2.0,
        title = escape(&plot.title),
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(frame: &Frame, plot: &Plot) -> String {
    let mut out = String::new();
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    out.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));
    for i in 0..=4 {
        let fx = frame.x_min + (frame.x_max - frame.x_min) * i as f64 / 4.0;
        let px = frame.x(fx);
        out.push_str(&format!(
            "<line x1=\"{px}\" y1=\"{y0}\" x2=\"{px}\" y2=\"{}\" stroke=\"black\"/>\n\
             <text x=\"{px}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">{}</text>\n",
            y0 + 5.0,
            y0 + 20.0,
            format_tick(fx)
        ));
        let fy = frame.y_min + (frame.y_max - frame.y_min) * i as f64 / 4.0;
        let py = frame.y(fy);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{py}\" x2=\"{x0}\" y2=\"{py}\" stroke=\"black\"/>\n\
             <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\">{}</text>\n",
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            format_tick(fy)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\">{}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(&plot.x_label)
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(&plot.y_label)
    ));
    out
}

fn format_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs();
    if (0.01..10_000.0).contains(&magnitude) {
        format!("{v:.3}").trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

/// Multi-series line chart; one polyline per series.
pub fn line_chart(plot: &Plot, series: &[Vec<(f64, f64)>]) -> String {
    let frame = Frame::from_points(series.iter().flatten());
    let mut out = header(plot);
    out.push_str(&axes(&frame, plot));
    for (i, line) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = line
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", frame.x(x), frame.y(y)))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.3\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter plot with optional y = x guide (for estimated-vs-exact panels).
/// Each group is drawn in its own color.
pub fn scatter(plot: &Plot, groups: &[(&str, Vec<(f64, f64)>)], with_diagonal: bool) -> String {
    let frame = Frame::from_points(groups.iter().flat_map(|(_, g)| g.iter()));
    let mut out = header(plot);
    out.push_str(&axes(&frame, plot));
    if with_diagonal {
        let lo = frame.x_min.max(frame.y_min);
        let hi = frame.x_max.min(frame.y_max);
        if hi > lo {
            out.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999\" \
                 stroke-dasharray=\"5,4\"/>\n",
                frame.x(lo),
                frame.y(lo),
                frame.x(hi),
                frame.y(hi)
            ));
        }
    }
    for (i, (label, points)) in groups.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for &(x, y) in points {
            out.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\" fill-opacity=\"0.8\"/>\n",
                frame.x(x),
                frame.y(y)
            ));
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             fill=\"{color}\">{}</text>\n",
            WIDTH - MARGIN_RIGHT - 150.0,
            MARGIN_TOP + 14.0 * (i as f64 + 1.0),
            escape(label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plot() -> Plot {
        Plot {
            title: "t".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            metadata: "seed=7 preset=test".into(),
        }
    }

    #[test]
    fn line_chart_is_valid_svg_with_metadata() {
        let svg = line_chart(&plot(), &[vec![(0.0, 1.0), (1.0, 0.5), (2.0, 0.25)]]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("<desc>seed=7 preset=test</desc>"));
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("x") && svg.contains("y"));
    }

    #[test]
    fn scatter_draws_diagonal_and_points() {
        let svg = scatter(
            &plot(),
            &[("ideal", vec![(0.1, 0.1), (0.6, 0.61)])],
            true,
        );
        assert!(svg.contains("stroke-dasharray"));
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn degenerate_ranges_do_not_panic() {
        let svg = line_chart(&plot(), &[vec![(1.0, 2.0), (1.0, 2.0)]]);
        assert!(svg.contains("<polyline"));
        let empty = line_chart(&plot(), &[]);
        assert!(empty.contains("</svg>"));
    }

    #[test]
    fn metadata_is_escaped() {
        let mut p = plot();
        p.metadata = "a<b&c".into();
        let svg = line_chart(&p, &[]);
        assert!(svg.contains("a&lt;b&amp;c"));
    }
}
