//! SVG picture of a horizontally periodic surface: one parallelogram per
//! cylinder, glued rectangles stacked in a staircase, singularities drawn as
//! `×` and `•`, saddle connections labelled A, B, C...

use std::collections::VecDeque;
use std::fmt::Write;

use crate::cylinder::{plus, CylinderSurface};
use crate::error::SurfaceError;
use crate::quad::QuadNum;

const SCALE: f64 = 80.0;
const MARGIN: f64 = 30.0;

/// Letter name of saddle connection `i`: A..Z, then AA, AB...
pub fn letter(i: usize) -> String {
    let mut n = i;
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (n % 26) as u8);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

/// Offsets of each saddle connection inside a word.
fn offsets(word: &[usize], lengths: &[QuadNum]) -> Vec<(usize, QuadNum)> {
    let mut x = QuadNum::zero();
    word.iter()
        .map(|&a| {
            let at = x.clone();
            x = &x + &lengths[a];
            (a, at)
        })
        .collect()
}

/// Lower-left corner of every cylinder, found by walking across glued
/// saddle connections from cylinder 0.
fn layout(s: &CylinderSurface) -> Vec<(QuadNum, QuadNum)> {
    let l = s.lengths();
    let cyl = s.cylinders();
    let mut bottom_at = vec![(0, QuadNum::zero()); l.len()];
    let mut top_at = vec![(0, QuadNum::zero()); l.len()];
    for (i, c) in cyl.iter().enumerate() {
        for (a, x) in offsets(&c.bottom, l) {
            bottom_at[a] = (i, x);
        }
        for (a, x) in offsets(&c.top, l) {
            top_at[a] = (i, &c.twist + &x);
        }
    }
    let mut pos: Vec<Option<(QuadNum, QuadNum)>> = vec![None; cyl.len()];
    for start in 0..cyl.len() {
        if pos[start].is_some() {
            continue;
        }
        // Disconnected pieces cannot occur on a valid surface; kept for safety.
        let y0 = pos.iter().flatten().map(|p| p.1.clone()).fold(QuadNum::zero(), |m, y| if y > m { y } else { m });
        pos[start] = Some((QuadNum::zero(), y0));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (ox, oy) = pos[i].clone().expect("placed");
            let c = &cyl[i];
            for &a in &c.top {
                let (j, xb) = &bottom_at[a];
                if pos[*j].is_none() {
                    let x = &(&ox + &top_at[a].1) - xb;
                    pos[*j] = Some((x, &oy + &c.height));
                    queue.push_back(*j);
                }
            }
            for &a in &c.bottom {
                let (j, xt) = &top_at[a];
                if pos[*j].is_none() {
                    let x = &(&ox + &bottom_at[a].1) - xt;
                    pos[*j] = Some((x, &oy - &cyl[*j].height));
                    queue.push_back(*j);
                }
            }
        }
    }
    pos.into_iter().map(|p| p.expect("placed")).collect()
}

fn fmt(x: f64) -> String {
    let s = format!("{:.2}", x);
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// SVG text for the surface; rejects surfaces that are not in a stratum
/// with at most two singularities.
pub fn export_svg(s: &CylinderSurface) -> Result<String, SurfaceError> {
    s.stratum_signature()?;
    let l = s.lengths();
    let sing = s.singularity_of_edges();
    let pos = layout(s);
    // Bounding box in surface coordinates.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (c, (ox, oy)) in s.cylinders().iter().zip(&pos) {
        let (x0, y0) = (ox.to_f64(), oy.to_f64());
        let (t, w, h) = (c.twist.to_f64(), c.circumference.to_f64(), c.height.to_f64());
        xs.extend([x0, x0 + w, x0 + t, x0 + t + w]);
        ys.extend([y0, y0 + h]);
    }
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let px = |x: f64| MARGIN + (x - min_x) * SCALE;
    let py = |y: f64| MARGIN + (max_y - y) * SCALE;
    let width = 2.0 * MARGIN + (max_x - min_x) * SCALE;
    let height = 2.0 * MARGIN + (max_y - min_y) * SCALE;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1">"#);
    for (i, (c, (ox, oy))) in s.cylinders().iter().zip(&pos).enumerate() {
        let (x0, y0) = (ox.to_f64(), oy.to_f64());
        let (t, w, h) = (c.twist.to_f64(), c.circumference.to_f64(), c.height.to_f64());
        let _ = writeln!(
            out,
            r#"<polygon id="cylinder-{}" points="{},{} {},{} {},{} {},{}"/>"#,
            i + 1,
            fmt(px(x0)),
            fmt(py(y0)),
            fmt(px(x0 + w)),
            fmt(py(y0)),
            fmt(px(x0 + t + w)),
            fmt(py(y0 + h)),
            fmt(px(x0 + t)),
            fmt(py(y0 + h))
        );
    }
    let _ = writeln!(out, "</g>");

    let mut marks = Vec::new();
    let mut labels = Vec::new();
    for (c, (ox, oy)) in s.cylinders().iter().zip(&pos) {
        let (x0, y0) = (ox.to_f64(), oy.to_f64());
        let h = c.height.to_f64();
        let t = c.twist.to_f64();
        for (a, x) in offsets(&c.bottom, l) {
            let x = x0 + x.to_f64();
            marks.push((px(x), py(y0), sing[plus(a)]));
            labels.push((px(x + l[a].to_f64() / 2.0), py(y0) - 4.0, a));
        }
        for (a, x) in offsets(&c.top, l) {
            let x = x0 + t + x.to_f64();
            marks.push((px(x), py(y0 + h), sing[plus(a)]));
            labels.push((px(x + l[a].to_f64() / 2.0), py(y0 + h) + 12.0, a));
        }
    }
    let _ = writeln!(out, r#"<g font-family="serif" font-size="11" text-anchor="middle">"#);
    for (x, y, a) in labels {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, fmt(x), fmt(y), letter(a));
    }
    let _ = writeln!(out, "</g>");
    let marks: std::collections::BTreeSet<(String, String, usize)> =
        marks.into_iter().map(|(x, y, k)| (fmt(x), fmt(y), k)).collect();
    for (x, y, k) in marks {
        let (xf, yf): (f64, f64) = (x.parse().expect("number"), y.parse().expect("number"));
        if k == 0 {
            let _ = writeln!(
                out,
                r#"<path class="cross" d="M{} {} L{} {} M{} {} L{} {}" stroke="black" stroke-width="1.5"/>"#,
                fmt(xf - 4.0),
                fmt(yf - 4.0),
                fmt(xf + 4.0),
                fmt(yf + 4.0),
                fmt(xf - 4.0),
                fmt(yf + 4.0),
                fmt(xf + 4.0),
                fmt(yf - 4.0)
            );
        } else {
            let _ = writeln!(out, r#"<circle class="dot" cx="{}" cy="{}" r="3" fill="black"/>"#, x, y);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
