//! Minimal SVG rendering of a table: axes plus one polyline per series.

use std::fmt::Write as _;

use crate::artifact::{format_num, PlotHint, TableArtifact};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn default_hint(t: &TableArtifact) -> PlotHint {
    let numeric: Vec<usize> = (0..t.columns.len())
        .filter(|&j| t.rows.iter().all(|r| r[j].as_f64().is_some()))
        .collect();
    PlotHint {
        x: numeric.first().copied().unwrap_or(0),
        ys: numeric.iter().skip(1).copied().collect(),
        group: None,
    }
}

type Series = (String, Vec<(f64, f64)>);

fn collect_series(t: &TableArtifact, hint: &PlotHint) -> Vec<Series> {
    let mut out: Vec<Series> = vec![];
    for &y in &hint.ys {
        let mut groups: Vec<(String, Vec<(f64, f64)>)> = vec![];
        for row in &t.rows {
            let (Some(x), Some(v)) = (row[hint.x].as_f64(), row[y].as_f64()) else {
                continue;
            };
            if !x.is_finite() || !v.is_finite() {
                continue;
            }
            let key = hint
                .group
                .map(|g| match &row[g] {
                    crate::artifact::Value::Text(s) => s.clone(),
                    other => format_num(other.as_f64().unwrap_or(f64::NAN)),
                })
                .unwrap_or_default();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, pts)) => pts.push((x, v)),
                None => groups.push((key, vec![(x, v)])),
            }
        }
        for (key, pts) in groups {
            let label = if key.is_empty() {
                t.columns[y].clone()
            } else {
                format!("{} [{key}]", t.columns[y])
            };
            out.push((label, pts));
        }
    }
    out
}

fn bounds(series: &[Series]) -> (f64, f64, f64, f64) {
    let pts = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        return (0.0, 1.0, 0.0, 1.0);
    }
    let pad = |a: f64, b: f64| if b > a { (a, b) } else { (a - 0.5, b + 0.5) };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    (x0, x1, y0, y1)
}

pub fn render(t: &TableArtifact) -> String {
    let hint = t.plot.clone().unwrap_or_else(|| default_hint(t));
    let series = collect_series(t, &hint);
    let (x0, x1, y0, y1) = bounds(&series);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, t.name);
    let (l, r, b, top) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="black" points="{l},{top} {l},{b} {r},{b}"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        t.columns[hint.x]
    );
    for (x, y, v, anchor) in [
        (l, b + 16.0, x0, "start"),
        (r, b + 16.0, x1, "end"),
        (l - 4.0, b, y0, "end"),
        (l - 4.0, top + 4.0, y1, "end"),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" font-size="10" text-anchor="{anchor}">{v:.3}</text>"#
        );
    }
    for (i, (label, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1" points="{}"><title>{label}</title></polyline>"#,
            coords.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_polyline_per_group() {
        let mut t = TableArtifact::new("t", "x", &["eps", "n", "e"]).with_plot(0, &[2], Some(1));
        for n in 0..3usize {
            for k in 0..4 {
                t.push(vec![(k as f64).into(), n.into(), ((n * k) as f64).into()]);
            }
        }
        let svg = render(&t);
        assert_eq!(svg.matches("<polyline").count(), 1 + 3);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_table_still_renders() {
        let t = TableArtifact::new("t", "x", &["a", "b"]);
        assert!(render(&t).contains("<svg"));
    }
}
