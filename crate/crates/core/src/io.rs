//! File formats: matrix and trajectory CSV, experiment report CSV and SVG plots.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::contact::Phase;
use crate::error::{Error, Result};
use crate::experiments::{ExperimentReport, LogRow, TrajectoryLog};
use crate::matcore::{Mat6, Vec6};

pub const TRAJECTORY_HEADER: &str = "t,dx,dy,dz,drx,dry,drz,fx,fy,fz,tx,ty,tz,phase";

/// A 6×6 matrix file with its `#` comment lines (without the `#` prefix).
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub comments: Vec<String>,
    pub matrix: Mat6,
}

impl MatrixFile {
    pub fn new(matrix: Mat6) -> Self {
        MatrixFile {
            comments: Vec::new(),
            matrix,
        }
    }

    pub fn with_comment(mut self, line: impl Into<String>) -> Self {
        self.comments.push(line.into());
        self
    }
}

/// Serialises a matrix file. Values use the shortest representation that
/// parses back to the same `f64`, so emit/parse/emit is byte-identical.
pub fn write_matrix_csv(file: &MatrixFile) -> String {
    let mut out = String::new();
    for c in &file.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    for row in &file.matrix.0 {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_matrix_csv(text: &str) -> Result<MatrixFile> {
    let mut comments = Vec::new();
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let values: Vec<f64> = line
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("not a number: {s:?}"),
                })
            })
            .collect::<Result<_>>()?;
        if values.len() != 6 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 6 columns, found {}", values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line: line_no,
                message: "non-finite entry".into(),
            });
        }
        if rows.len() == 6 {
            return Err(Error::Parse {
                line: line_no,
                message: "more than 6 rows".into(),
            });
        }
        let mut row = [0.0; 6];
        row.copy_from_slice(&values);
        rows.push(row);
    }
    if rows.len() != 6 {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected 6 rows, found {}", rows.len()),
        });
    }
    let mut m = [[0.0; 6]; 6];
    m.copy_from_slice(&rows);
    Ok(MatrixFile {
        comments,
        matrix: Mat6(m),
    })
}

pub fn write_trajectory_csv(log: &TrajectoryLog) -> String {
    let mut out = String::with_capacity(64 + log.len() * 160);
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for r in &log.rows {
        let _ = write!(out, "{}", r.t);
        for v in r.dx.0.iter().chain(r.wrench.0.iter()) {
            let _ = write!(out, ",{v}");
        }
        let _ = writeln!(out, ",{}", r.phase.label());
    }
    out
}

fn parse_phase(s: &str) -> Option<Phase> {
    [Phase::Free, Phase::Search, Phase::Insertion]
        .into_iter()
        .find(|p| p.label() == s)
}

pub fn parse_trajectory_csv(text: &str) -> Result<TrajectoryLog> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRAJECTORY_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing trajectory header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if fields.len() != 14 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 14 columns, found {}", fields.len()),
            });
        }
        let mut nums = [0.0; 13];
        for (slot, f) in nums.iter_mut().zip(&fields[..13]) {
            *slot = f.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not a number: {f:?}"),
            })?;
        }
        let phase = parse_phase(fields[13]).ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("unknown phase {:?}", fields[13]),
        })?;
        let mut dx = Vec6::ZERO;
        let mut wrench = Vec6::ZERO;
        dx.0.copy_from_slice(&nums[1..7]);
        wrench.0.copy_from_slice(&nums[7..13]);
        rows.push(LogRow {
            t: nums[0],
            dx,
            wrench,
            phase,
        });
    }
    Ok(TrajectoryLog { rows })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| format!("{v}"))
}

/// One line per run.
pub fn write_runs_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(
        "label,error_x,error_y,repetition,seed,status,insertion_time,max_wrench,lateral_x,lateral_y,design\n",
    );
    for r in &report.runs {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.label,
            r.cell[0],
            r.cell[1],
            r.repetition,
            r.seed,
            r.status.label(),
            opt(r.insertion_time),
            r.max_wrench,
            r.lateral[0],
            r.lateral[1],
            opt(r.design),
        );
    }
    out
}

/// One line per cell aggregate.
pub fn write_summary_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(
        "label,error_x,error_y,runs,successes,diverged,mean_time,std_time,mean_lateral_x,mean_lateral_y,design\n",
    );
    for c in &report.cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            c.label,
            c.cell[0],
            c.cell[1],
            c.runs,
            c.successes,
            c.diverged,
            opt(c.mean_time),
            opt(c.std_time),
            c.mean_lateral[0],
            c.mean_lateral[1],
            opt(c.design),
        );
    }
    out
}

/// Writes `contents` to a sibling temp file and renames it over `path`.
pub fn atomic_write(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| {
        std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name")
    })?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];
const W: f64 = 720.0;
const H: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * (1.0 + lo.abs()) {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

struct Axes {
    x: (f64, f64),
    y: (f64, f64),
}

impl Axes {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (H - TOP - BOTTOM)
    }

    fn frame(&self, out: &mut String, title: &str, xlabel: &str, ylabel: &str) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            (W - RIGHT + LEFT) / 2.0,
            escape(title)
        );
        let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
        let _ = writeln!(
            out,
            r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            x1 - x0,
            y1 - y0
        );
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let xv = self.x.0 + f * (self.x.1 - self.x.0);
            let yv = self.y.0 + f * (self.y.1 - self.y.0);
            let (px, py) = (self.px(xv), self.py(yv));
            let _ = writeln!(
                out,
                r#"<line x1="{px:.1}" y1="{y1}" x2="{px:.1}" y2="{}" stroke="black"/><text x="{px:.1}" y="{}" text-anchor="middle">{}</text>"#,
                y1 + 5.0,
                y1 + 18.0,
                tick(xv)
            );
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{py:.1}" x2="{x0}" y2="{py:.1}" stroke="black"/><text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                py + 4.0,
                tick(yv)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            H - 10.0,
            escape(xlabel)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            (y0 + y1) / 2.0,
            escape(ylabel)
        );
    }
}

fn tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn legend(out: &mut String, names: &[&str]) {
    for (i, name) in names.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * i as f64;
        let x = W - RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            x + 20.0,
            PALETTE[i % PALETTE.len()],
            x + 26.0,
            y + 4.0,
            escape(name)
        );
    }
}

/// One named series of `(x, y)` points.
pub type Series<'a> = (&'a str, Vec<(f64, f64)>);

pub fn svg_line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series<'_>]) -> String {
    let axes = Axes {
        x: range(series.iter().flat_map(|s| s.1.iter().map(|p| p.0))),
        y: range(series.iter().flat_map(|s| s.1.iter().map(|p| p.1))),
    };
    let mut out = String::new();
    axes.frame(&mut out, title, xlabel, ylabel);
    for (i, (_, pts)) in series.iter().enumerate() {
        let path: Vec<String> = pts
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|p| format!("{:.2},{:.2}", axes.px(p.0), axes.py(p.1)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            PALETTE[i % PALETTE.len()],
            path.join(" ")
        );
    }
    let names: Vec<&str> = series.iter().map(|s| s.0).collect();
    legend(&mut out, &names);
    out.push_str("</svg>\n");
    out
}

/// Bars with optional reference marks (for example design values).
pub fn svg_bar_chart(
    title: &str,
    ylabel: &str,
    labels: &[String],
    values: &[f64],
    reference: &[Option<f64>],
) -> String {
    let n = labels.len().max(1);
    let refs = reference.iter().flatten().copied();
    let (lo, hi) = range(values.iter().copied().chain(refs).chain([0.0]));
    let axes = Axes {
        x: (0.0, n as f64),
        y: (lo.min(0.0), hi * 1.1),
    };
    let mut out = String::new();
    axes.frame(&mut out, title, "", ylabel);
    let slot = (W - LEFT - RIGHT) / n as f64;
    for (i, (label, v)) in labels.iter().zip(values).enumerate() {
        let x = axes.px(i as f64) + slot * 0.2;
        let (ya, yb) = (axes.py(v.max(0.0)), axes.py(v.min(0.0)));
        let _ = writeln!(
            out,
            r#"<rect x="{x:.1}" y="{ya:.1}" width="{:.1}" height="{:.1}" fill="{}"/>"#,
            slot * 0.6,
            yb - ya,
            PALETTE[0]
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
            x + slot * 0.3,
            H - BOTTOM + 32.0,
            escape(label)
        );
        if let Some(Some(r)) = reference.get(i) {
            let y = axes.py(*r);
            let _ = writeln!(
                out,
                r#"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{}" stroke-width="2" stroke-dasharray="4 3"/>"#,
                x - slot * 0.05,
                x + slot * 0.65,
                PALETTE[1]
            );
        }
    }
    if reference.iter().any(Option::is_some) {
        legend(&mut out, &["measured", "design"]);
    }
    out.push_str("</svg>\n");
    out
}

/// Success map of a lateral-error grid: one disc per cell, shaded by the
/// success fraction and labelled `successes/runs`.
pub fn svg_grid_plot(title: &str, report: &ExperimentReport) -> String {
    let mm = |v: f64| v * 1e3;
    let (xl, xh) = range(report.cells.iter().map(|c| mm(c.cell[0])));
    let (yl, yh) = range(report.cells.iter().map(|c| mm(c.cell[1])));
    let span = (xh - xl).max(yh - yl).max(1.0) * 0.25;
    let axes = Axes {
        x: (xl - span, xh + span),
        y: (yl - span, yh + span),
    };
    let mut out = String::new();
    axes.frame(&mut out, title, "error x [mm]", "error y [mm]");
    for c in &report.cells {
        let frac = if c.runs == 0 {
            0.0
        } else {
            c.successes as f64 / c.runs as f64
        };
        let g = (60.0 + 160.0 * frac) as u8;
        let r = (220.0 - 160.0 * frac) as u8;
        let (px, py) = (axes.px(mm(c.cell[0])), axes.py(mm(c.cell[1])));
        let _ = writeln!(
            out,
            r##"<circle cx="{px:.1}" cy="{py:.1}" r="18" fill="#{r:02x}{g:02x}50" stroke="black"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}/{}</text>"##,
            py + 4.0,
            c.successes,
            c.runs
        );
        if let Some(t) = c.mean_time {
            let _ = writeln!(
                out,
                r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle" font-size="10">{t:.2} s</text>"#,
                py + 32.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
