use std::fmt::Write;

use super::free_space::FreeSpaceDiagram;
use super::{dist, Polyline};
use crate::Result;

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;
const SAMPLES_PER_CELL: usize = 16;
const MAX_RASTER: usize = 512;
/// Cell outlines and full-cell markers are only drawn below this cell count.
const MAX_OUTLINED_CELLS: usize = 4096;

/// Renders the free-space diagram of `p` and `q` at `epsilon` as SVG.
///
/// The free region is rasterised by testing pixel centres against `epsilon`
/// (merged into horizontal runs), reachable boundary intervals are drawn as
/// red strokes, and the two diagram corners carry a `reachable` or
/// `unreachable` class. Output is deterministic for fixed inputs.
pub fn free_space_svg(p: &Polyline, q: &Polyline, epsilon: f64) -> Result<String> {
    let diagram = FreeSpaceDiagram::build(p, q, epsilon)?;
    let (m, n) = diagram.dims();
    let cw = CANVAS / m as f64;
    let ch = CANVAS / n as f64;
    let x_of = |s: f64| MARGIN + s * cw;
    let y_of = |t: f64| MARGIN + CANVAS - t * ch;

    let mut out = String::new();
    let size = CANVAS + 2.0 * MARGIN;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" data-epsilon="{epsilon}" data-cells="{m}x{n}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect class="background" x="{MARGIN}" y="{MARGIN}" width="{CANVAS}" height="{CANVAS}" fill="#ffffff" stroke="#000000"/>"##
    );

    // free region raster
    let rx = (m * SAMPLES_PER_CELL).min(MAX_RASTER);
    let ry = (n * SAMPLES_PER_CELL).min(MAX_RASTER);
    let (pw, ph) = (CANVAS / rx as f64, CANVAS / ry as f64);
    let _ = writeln!(out, r##"<g class="free" fill="#9ecae1">"##);
    for b in 0..ry {
        let t = (b as f64 + 0.5) / ry as f64 * n as f64;
        let qt = q.point_at(t);
        let mut run: Option<usize> = None;
        for a in 0..=rx {
            let free = a < rx && {
                let s = (a as f64 + 0.5) / rx as f64 * m as f64;
                dist(&p.point_at(s), &qt) <= epsilon
            };
            match (free, run) {
                (true, None) => run = Some(a),
                (false, Some(start)) => {
                    let _ = writeln!(
                        out,
                        r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
                        MARGIN + start as f64 * pw,
                        MARGIN + CANVAS - (b + 1) as f64 * ph,
                        (a - start) as f64 * pw,
                        ph
                    );
                    run = None;
                }
                _ => {}
            }
        }
    }
    let _ = writeln!(out, "</g>");

    if m * n <= MAX_OUTLINED_CELLS {
        let _ = writeln!(out, r##"<g class="grid" stroke="#888888" stroke-width="0.5">"##);
        for i in 1..m {
            let x = x_of(i as f64);
            let _ = writeln!(
                out,
                r#"<line x1="{x:.3}" y1="{MARGIN}" x2="{x:.3}" y2="{:.3}"/>"#,
                MARGIN + CANVAS
            );
        }
        for j in 1..n {
            let y = y_of(j as f64);
            let _ = writeln!(
                out,
                r#"<line x1="{MARGIN}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}"/>"#,
                MARGIN + CANVAS
            );
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(
            out,
            r##"<g class="cells" fill="none" stroke="#1f77b4" stroke-width="2">"##
        );
        for j in 0..n {
            for i in 0..m {
                let c = diagram.cell(i, j);
                let full = [c.left, c.right, c.bottom, c.top]
                    .iter()
                    .all(|s| s.is_some_and(|s| s.lo <= 0.0 && s.hi >= 1.0));
                if full {
                    let _ = writeln!(
                        out,
                        r#"<rect class="cell-full" data-cell="{i},{j}" x="{:.3}" y="{:.3}" width="{cw:.3}" height="{ch:.3}"/>"#,
                        x_of(i as f64),
                        y_of((j + 1) as f64)
                    );
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r##"<g class="reachable" stroke="#d62728" stroke-width="2">"##);
    for j in 0..n {
        for i in 0..m {
            let (x0, y0) = (i as f64, j as f64);
            if let Some(r) = diagram.reachable_left(i, j) {
                line(&mut out, x_of(x0), y_of(y0 + r.lo), x_of(x0), y_of(y0 + r.hi));
            }
            if let Some(r) = diagram.reachable_bottom(i, j) {
                line(&mut out, x_of(x0 + r.lo), y_of(y0), x_of(x0 + r.hi), y_of(y0));
            }
            if i + 1 == m {
                if let Some(r) = diagram.reachable_right(i, j) {
                    line(
                        &mut out,
                        x_of(x0 + 1.0),
                        y_of(y0 + r.lo),
                        x_of(x0 + 1.0),
                        y_of(y0 + r.hi),
                    );
                }
            }
            if j + 1 == n {
                if let Some(r) = diagram.reachable_top(i, j) {
                    line(
                        &mut out,
                        x_of(x0 + r.lo),
                        y_of(y0 + 1.0),
                        x_of(x0 + r.hi),
                        y_of(y0 + 1.0),
                    );
                }
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let start_ok = dist(p.first(), q.first()) <= epsilon;
    for (name, ok, x, y) in [
        ("start", start_ok, x_of(0.0), y_of(0.0)),
        ("end", diagram.corner_reachable(), x_of(m as f64), y_of(n as f64)),
    ] {
        let class = if ok { "reachable" } else { "unreachable" };
        let fill = if ok { "#2ca02c" } else { "#7f7f7f" };
        let _ = writeln!(
            out,
            r#"<circle class="corner {name} {class}" cx="{x:.3}" cy="{y:.3}" r="5" fill="{fill}"/>"#
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64) {
    let _ = writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
}
