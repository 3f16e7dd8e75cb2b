//! Minimal standalone SVG line plots of [`Table`] columns.

use std::fmt::Write as _;

use qsheet_core::stats::weighted_line_fit;
use qsheet_core::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlotSpec {
    pub title: String,
    pub x: String,
    pub y: String,
    /// Split rows into one series per distinct value of this column.
    pub group: Option<String>,
    pub log_x: bool,
    pub log_y: bool,
    /// Fit a line to the plotted (possibly logged) points, weighting by this
    /// standard-error column, and annotate its slope.
    pub fit_stderr: Option<String>,
}

impl PlotSpec {
    pub fn new(title: &str, x: &str, y: &str) -> Self {
        PlotSpec {
            title: title.into(),
            x: x.into(),
            y: y.into(),
            ..Default::default()
        }
    }

    pub fn log_log(mut self) -> Self {
        self.log_x = true;
        self.log_y = true;
        self
    }

    pub fn grouped(mut self, col: &str) -> Self {
        self.group = Some(col.into());
        self
    }

    pub fn with_fit(mut self, stderr_col: &str) -> Self {
        self.fit_stderr = Some(stderr_col.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingColumn(pub String);

impl std::fmt::Display for MissingColumn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "plot column `{}` is not in the table", self.0)
    }
}

impl std::error::Error for MissingColumn {}

/// Linear or logarithmic map from data to pixels.
#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
    px0: f64,
    px1: f64,
}

impl Axis {
    fn fit(values: &[f64], log: bool, px0: f64, px1: f64) -> Self {
        let v: Vec<f64> = values
            .iter()
            .filter(|x| x.is_finite() && (!log || **x > 0.0))
            .map(|x| if log { x.log10() } else { *x })
            .collect();
        let (mut lo, mut hi) = v
            .iter()
            .copied()
            .fold(None, |acc: Option<(f64, f64)>, x| {
                Some(acc.map_or((x, x), |(a, b)| (a.min(x), b.max(x))))
            })
            .unwrap_or((0.0, 1.0));
        if hi - lo < 1e-300 {
            lo -= 0.5;
            hi += 0.5;
        } else {
            let pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
        Axis { lo, hi, log, px0, px1 }
    }

    fn map(&self, x: f64) -> Option<f64> {
        let u = if self.log {
            if x <= 0.0 {
                return None;
            }
            x.log10()
        } else {
            x
        };
        u.is_finite()
            .then(|| self.px0 + (u - self.lo) / (self.hi - self.lo) * (self.px1 - self.px0))
    }

    /// Tick positions (in the transformed coordinate) and labels.
    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let (a, b) = (self.lo.ceil() as i64, self.hi.floor() as i64);
            if b >= a && b - a <= 12 {
                return (a..=b).map(|k| (k as f64, format!("1e{k}"))).collect();
            }
        }
        let span = self.hi - self.lo;
        let raw = span / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| span / s <= 6.0)
            .unwrap_or(10.0 * mag);
        let mut out = Vec::new();
        let mut t = (self.lo / step).ceil() * step;
        while t <= self.hi + 1e-12 * step {
            let label = if self.log {
                format!("{:.3e}", 10f64.powf(t))
            } else {
                format!("{}", (t / step).round() * step)
            };
            out.push((t, label));
            t += step;
        }
        out
    }

    fn pixel_of_transformed(&self, u: f64) -> f64 {
        self.px0 + (u - self.lo) / (self.hi - self.lo) * (self.px1 - self.px0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn text_cell(table: &Table, row: usize, col: usize) -> String {
    match &table.rows[row][col] {
        qsheet_core::Cell::Text(s) => s.clone(),
        qsheet_core::Cell::Int(i) => i.to_string(),
        qsheet_core::Cell::Real(x) => qsheet_core::table::fmt_g17(*x),
    }
}

/// The fitted slope that [`render_svg`] annotates, if a fit was requested
/// and at least two usable points exist.
pub fn plot_fit(table: &Table, spec: &PlotSpec) -> Result<Option<f64>, MissingColumn> {
    let Some(se_col) = &spec.fit_stderr else {
        return Ok(None);
    };
    let col = |n: &str| table.column(n).ok_or_else(|| MissingColumn(n.to_string()));
    let (x, y, se) = (col(&spec.x)?, col(&spec.y)?, col(se_col)?);
    let (mut fx, mut fy, mut fs) = (Vec::new(), Vec::new(), Vec::new());
    for ((x, y), s) in x.iter().zip(&y).zip(&se) {
        let tx = if spec.log_x { x.ln() } else { *x };
        let (ty, ts) = if spec.log_y { (y.ln(), s / y) } else { (*y, *s) };
        if tx.is_finite() && ty.is_finite() && ts.is_finite() && ts > 0.0 {
            fx.push(tx);
            fy.push(ty);
            fs.push(ts);
        }
    }
    if fx.len() < 2 {
        return Ok(None);
    }
    Ok(weighted_line_fit(&fx, &fy, &fs).ok().map(|f| f.slope))
}

/// Render `table` as a standalone SVG document.
pub fn render_svg(table: &Table, spec: &PlotSpec) -> Result<String, MissingColumn> {
    let col = |n: &str| table.column(n).ok_or_else(|| MissingColumn(n.to_string()));
    let xs = col(&spec.x)?;
    let ys = col(&spec.y)?;
    let group_idx = match &spec.group {
        Some(g) => Some(table.column_index(g).ok_or_else(|| MissingColumn(g.clone()))?),
        None => None,
    };
    let slope = plot_fit(table, spec)?;

    let ax = Axis::fit(&xs, spec.log_x, LEFT, WIDTH - RIGHT);
    let ay = Axis::fit(&ys, spec.log_y, HEIGHT - BOTTOM, TOP);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(&spec.title)
    );
    // axes
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        r#"<g class="axes" stroke="black"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"#
    );
    for (u, label) in ax.ticks() {
        let px = ax.pixel_of_transformed(u);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 18.0,
            escape(&label)
        );
    }
    for (u, label) in ay.ticks() {
        let py = ay.pixel_of_transformed(u);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            escape(&label)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(&spec.x),
        if spec.log_x { " (log)" } else { "" }
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(&spec.y),
        if spec.log_y { " (log)" } else { "" }
    );

    // series, in order of first appearance of each group value
    let mut groups: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for (r, (x, y)) in xs.iter().zip(&ys).enumerate() {
        let key = group_idx.map(|g| text_cell(table, r, g)).unwrap_or_default();
        let (Some(px), Some(py)) = (ax.map(*x), ay.map(*y)) else {
            continue;
        };
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, pts)) => pts.push((px, py)),
            None => groups.push((key, vec![(px, py)])),
        }
    }
    for (k, (name, pts)) in groups.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let _ = writeln!(svg, r#"<g class="series" data-name="{}">"#, escape(name));
        if pts.len() > 1 {
            let line: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                line.join(" ")
            );
        }
        for (x, y) in pts {
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
        }
        let _ = writeln!(svg, "</g>");
    }
    if let Some(s) = slope {
        let _ = writeln!(
            svg,
            r#"<text class="fit" x="{}" y="{}" text-anchor="end">fitted slope = {}</text>"#,
            x1 - 6.0,
            y1 + 16.0,
            qsheet_core::table::fmt_g17(s)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
