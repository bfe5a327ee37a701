//! Minimal SVG output: polyline traces, contour segments and point markers.
//! Figures are artifacts, not an interactive surface.

use std::io;
use std::path::Path;

use outer_billiards::poly::BivariatePoly;

#[derive(Default)]
pub struct Figure {
    pub polylines: Vec<Vec<[f64; 2]>>,
    pub segments: Vec<[[f64; 2]; 2]>,
    pub markers: Vec<[f64; 2]>,
}

const CANVAS: f64 = 640.0;
const PAD: f64 = 24.0;

pub fn write_svg(path: &Path, figure: &Figure) -> io::Result<()> {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    let mut grow = |p: &[f64; 2]| {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    };
    for line in &figure.polylines {
        line.iter().for_each(&mut grow);
    }
    for seg in &figure.segments {
        seg.iter().for_each(&mut grow);
    }
    figure.markers.iter().for_each(&mut grow);
    if !min[0].is_finite() {
        min = [-1.0, -1.0];
        max = [1.0, 1.0];
    }
    let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
    let scale = (CANVAS - 2.0 * PAD) / span;
    let map = |p: &[f64; 2]| -> [f64; 2] {
        [
            PAD + (p[0] - min[0]) * scale,
            CANVAS - PAD - (p[1] - min[1]) * scale,
        ]
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n",
        c = CANVAS
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for line in &figure.polylines {
        let pts: Vec<String> = line
            .iter()
            .map(|p| {
                let q = map(p);
                format!("{:.2},{:.2}", q[0], q[1])
            })
            .collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n",
            pts.join(" ")
        ));
    }
    for seg in &figure.segments {
        let a = map(&seg[0]);
        let b = map(&seg[1]);
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>\n",
            a[0], a[1], b[0], b[1]
        ));
    }
    for marker in &figure.markers {
        let q = map(marker);
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.4\" fill=\"crimson\"/>\n",
            q[0], q[1]
        ));
    }
    out.push_str("</svg>\n");
    std::fs::write(path, out)
}

/// Marching-squares zero-set segments of f over the box [x0, y0, x1, y1].
pub fn contour_segments(f: &BivariatePoly, bbox: [f64; 4], cells: usize) -> Vec<[[f64; 2]; 2]> {
    let [x0, y0, x1, y1] = bbox;
    let nx = cells;
    let ny = cells;
    let dx = (x1 - x0) / nx as f64;
    let dy = (y1 - y0) / ny as f64;
    let mut values = vec![vec![0.0f64; ny + 1]; nx + 1];
    for (i, row) in values.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = f.eval_f64(x0 + i as f64 * dx, y0 + j as f64 * dy);
        }
    }
    let mut segments = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let corners = [
                (x0 + i as f64 * dx, y0 + j as f64 * dy, values[i][j]),
                (x0 + (i + 1) as f64 * dx, y0 + j as f64 * dy, values[i + 1][j]),
                (
                    x0 + (i + 1) as f64 * dx,
                    y0 + (j + 1) as f64 * dy,
                    values[i + 1][j + 1],
                ),
                (x0 + i as f64 * dx, y0 + (j + 1) as f64 * dy, values[i][j + 1]),
            ];
            let mut crossings = Vec::new();
            for e in 0..4 {
                let (ax, ay, av) = corners[e];
                let (bx, by, bv) = corners[(e + 1) % 4];
                if av == 0.0 && bv == 0.0 {
                    continue;
                }
                if (av <= 0.0) != (bv <= 0.0) {
                    let t = av / (av - bv);
                    crossings.push([ax + t * (bx - ax), ay + t * (by - ay)]);
                }
            }
            match crossings.len() {
                2 => segments.push([crossings[0], crossings[1]]),
                4 => {
                    // Saddle cell; the pairing ambiguity only affects plots.
                    segments.push([crossings[0], crossings[1]]);
                    segments.push([crossings[2], crossings[3]]);
                }
                _ => {}
            }
        }
    }
    segments
}
