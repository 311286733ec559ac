//! Self-contained SVG rendering of capacity curves.
//!
//! No plotting dependency and no external assets: axes, ticks, legend and
//! one polyline per series, with a fixed palette and dash cycle so up to
//! eight series stay visually distinct. The CSV remains the primary
//! artifact; this is the quick-look companion.

use crate::error::{Error, Result};
use crate::sweep::CapacityCurve;

/// Canvas geometry and labelling.
#[derive(Debug, Clone)]
pub struct PlotStyle {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            width: 840,
            height: 520,
            title: String::new(),
            x_label: String::new(),
            y_label: String::new(),
        }
    }
}

const PALETTE: [&str; 8] = [
    "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#2c3e50", "#7f8c8d",
];
const DASHES: [&str; 4] = ["none", "6,3", "2,3", "8,3,2,3"];

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 34.0;
const MARGIN_BOTTOM: f64 = 46.0;

/// Renders the curve as an SVG document string.
pub fn plot(curve: &CapacityCurve, style: &PlotStyle) -> Result<String> {
    if curve.is_empty() {
        return Err(Error::domain("plot", "empty curve"));
    }
    let w = style.width as f64;
    let h = style.height as f64;
    let pw = w - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = h - MARGIN_TOP - MARGIN_BOTTOM;
    if pw <= 10.0 || ph <= 10.0 {
        return Err(Error::domain("plot", "canvas too small"));
    }

    let (x_min, x_max) = padded_range(curve.x.iter().copied(), 0.0);
    let (y_min, y_max) = padded_range(
        curve.series.iter().flat_map(|s| s.values.iter().copied()),
        0.04,
    );
    let to_px = |x: f64, y: f64| {
        (
            MARGIN_LEFT + (x - x_min) / (x_max - x_min) * pw,
            MARGIN_TOP + ph - (y - y_min) / (y_max - y_min) * ph,
        )
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));

    // grid and ticks
    for (tick, label) in ticks(x_min, x_max) {
        let (px, _) = to_px(tick, y_min);
        out.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            MARGIN_TOP,
            MARGIN_TOP + ph
        ));
        out.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{label}</text>\n",
            MARGIN_TOP + ph + 16.0
        ));
    }
    for (tick, label) in ticks(y_min, y_max) {
        let (_, py) = to_px(x_min, tick);
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT,
            MARGIN_LEFT + pw
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{label}</text>\n",
            MARGIN_LEFT - 6.0,
            py + 4.0
        ));
    }

    // frame
    out.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{pw:.2}\" height=\"{ph:.2}\" \
         fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
        MARGIN_LEFT, MARGIN_TOP
    ));

    // series
    for (i, s) in curve.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = DASHES[(i / PALETTE.len() + i) % DASHES.len()];
        let mut points = String::new();
        for (&x, &y) in curve.x.iter().zip(&s.values) {
            let (px, py) = to_px(x, y);
            points.push_str(&format!("{px:.2},{py:.2} "));
        }
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" \
             stroke-dasharray=\"{dash}\" points=\"{}\"/>\n",
            points.trim_end()
        ));
    }

    // legend, top-left inside the frame
    let lx = MARGIN_LEFT + 10.0;
    let mut ly = MARGIN_TOP + 14.0;
    for (i, s) in curve.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = DASHES[(i / PALETTE.len() + i) % DASHES.len()];
        out.push_str(&format!(
            "<line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
             stroke=\"{color}\" stroke-width=\"1.6\" stroke-dasharray=\"{dash}\"/>\n",
            ly - 4.0,
            lx + 26.0,
            ly - 4.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{ly:.2}\">{}</text>\n",
            lx + 32.0,
            escape(&s.name)
        ));
        ly += 16.0;
    }

    // labels
    if !style.title.is_empty() {
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
            MARGIN_LEFT + pw / 2.0,
            escape(&style.title)
        ));
    }
    let x_label = if style.x_label.is_empty() {
        &curve.x_label
    } else {
        &style.x_label
    };
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + pw / 2.0,
        h - 8.0,
        escape(x_label)
    ));
    if !style.y_label.is_empty() {
        out.push_str(&format!(
            "<text x=\"14\" y=\"{:.2}\" text-anchor=\"middle\" \
             transform=\"rotate(-90 14 {:.2})\">{}</text>\n",
            MARGIN_TOP + ph / 2.0,
            MARGIN_TOP + ph / 2.0,
            escape(&style.y_label)
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn padded_range(values: impl Iterator<Item = f64>, pad: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        // degenerate span, widen symmetrically
        let w = lo.abs().max(1.0);
        return (lo - 0.5 * w, hi + 0.5 * w);
    }
    let span = hi - lo;
    (lo - pad * span, hi + pad * span)
}

/// Tick positions at a {1,2,5}·10^k step targeting about six intervals.
fn ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    let span = hi - lo;
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm < 1.5 {
        mag
    } else if norm < 3.5 {
        2.0 * mag
    } else if norm < 7.5 {
        5.0 * mag
    } else {
        10.0 * mag
    };
    let decimals = (-step.log10().floor() as i32).max(0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last)
        .map(|i| {
            let v = i as f64 * step;
            (v, format!("{v:.decimals$}"))
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(series: &[(&str, Vec<f64>)], x: Vec<f64>) -> CapacityCurve {
        let mut c = CapacityCurve::new("x", x);
        for (name, values) in series {
            c.push_series(*name, values.clone()).unwrap();
        }
        c
    }

    #[test]
    fn single_series_one_polyline_one_legend_entry() {
        let c = curve(&[("cap", vec![0.0, 1.0, 4.0])], vec![0.0, 1.0, 2.0]);
        let svg = plot(&c, &PlotStyle::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches(">cap</text>").count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn eight_series_have_distinct_styles() {
        let names: Vec<String> = (0..8).map(|i| format!("s{i}")).collect();
        let series: Vec<(&str, Vec<f64>)> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), vec![i as f64, i as f64 + 1.0]))
            .collect();
        let c = curve(&series, vec![0.0, 1.0]);
        let svg = plot(&c, &PlotStyle::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 8);
        // collect (stroke, dasharray) pairs of the polylines
        let mut styles = std::collections::BTreeSet::new();
        for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
            let color = line.split("stroke=\"").nth(1).unwrap().split('"').next().unwrap();
            let dash = line
                .split("stroke-dasharray=\"")
                .nth(1)
                .unwrap()
                .split('"')
                .next()
                .unwrap();
            styles.insert((color.to_string(), dash.to_string()));
        }
        assert_eq!(styles.len(), 8, "styles not distinct: {styles:?}");
    }

    #[test]
    fn two_point_series_is_straight_segment_with_bounds() {
        let c = curve(&[("seg", vec![1.0, 3.0])], vec![10.0, 20.0]);
        let svg = plot(&c, &PlotStyle::default()).unwrap();
        let poly = svg
            .lines()
            .find(|l| l.starts_with("<polyline"))
            .unwrap()
            .to_string();
        let pts: Vec<&str> = poly.split("points=\"").nth(1).unwrap().split('"').next().unwrap().split_whitespace().collect();
        assert_eq!(pts.len(), 2);
        // axis tick labels cover the data range
        assert!(svg.contains(">10<") || svg.contains(">10.0<"));
        assert!(svg.contains(">20<") || svg.contains(">20.0<"));
    }

    #[test]
    fn empty_curve_rejected() {
        let c = CapacityCurve::new("x", vec![]);
        assert!(plot(&c, &PlotStyle::default()).is_err());
        let c = CapacityCurve::new("x", vec![1.0]);
        assert!(plot(&c, &PlotStyle::default()).is_err());
    }

    #[test]
    fn deterministic_output() {
        let c = curve(&[("a", vec![0.1, 0.9, 0.4])], vec![0.0, 0.5, 1.0]);
        let s1 = plot(&c, &PlotStyle::default()).unwrap();
        let s2 = plot(&c, &PlotStyle::default()).unwrap();
        assert_eq!(s1, s2);
    }
}
