use std::fmt::Write;

use pyramidal::geometry::{PolygonPath, PolygonReport};
use pyramidal::SolutionTriple;

const MARGIN: f64 = 0.05;

/// Renders `path` with the y-axis pointing up, the vertex `O` marked, and the
/// validation report in a leading comment.
pub fn render(t: &SolutionTriple, path: &PolygonPath, report: &PolygonReport) -> String {
    let pts: Vec<(f64, f64)> = path.vertices.iter().map(|p| (p.x, -p.y)).collect();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let pad = span * MARGIN;
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let stroke = span / 400.0;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<!--\n{}\n-->",
        comment_safe(&report_text(t, path, report))
    );
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt(min_x - pad),
        fmt(min_y - pad),
        fmt(w),
        fmt(h)
    );
    let mut d = String::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        let _ = write!(
            d,
            "{}{},{} ",
            if i == 0 { "M" } else { "L" },
            fmt(x),
            fmt(y)
        );
    }
    d.push('Z');
    let _ = writeln!(
        s,
        "  <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linejoin=\"round\"/>",
        fmt(stroke)
    );
    let _ = writeln!(
        s,
        "  <circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"red\"><title>O</title></circle>",
        fmt(stroke * 4.0)
    );
    s.push_str("</svg>\n");
    s
}

fn report_text(t: &SolutionTriple, path: &PolygonPath, r: &PolygonReport) -> String {
    format!(
        "solution {t}\nsides {}\nmax side residual {:e}\nmax perpendicularity residual {:e}\n\
         max diagonal residual {:e}\nclosure residual {:e}\ndegenerate vertices {:?}\n\
         self-intersecting {}\nreflex angles {}\nconvex {}",
        path.side_count(),
        r.max_side_residual,
        r.max_perp_residual,
        r.max_diagonal_residual,
        r.closure_residual,
        r.degenerate_vertices,
        r.self_intersecting,
        r.mu,
        r.convex
    )
}

/// XML comments may not contain `--` or end in `-`.
fn comment_safe(text: &str) -> String {
    let mut out = text.replace("--", "- -");
    while out.contains("--") {
        out = out.replace("--", "- -");
    }
    if out.ends_with('-') {
        out.push(' ');
    }
    out
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}
