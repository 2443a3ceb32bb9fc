//! Spin parity from winding numbers of curves dual to the polygon cells.
//!
//! Each fundamental cycle of the dual graph becomes a polyline through the
//! cell centroids. Its index is the total turning over 2π; two curves meet
//! mod 2 wherever their chords interleave on a cell boundary. The Arf
//! invariant is the majority value of the quadratic form.

use std::collections::VecDeque;
use std::f64::consts::PI;

use flatcyl::cylinder::CylinderSurface;
use flatcyl::polygon::PolygonSurface;

type Side = (usize, usize);

struct Cells {
    pts: Vec<Vec<(f64, f64)>>,
    glue: Vec<Vec<Side>>,
}

impl Cells {
    fn point(&self, (p, k): Side, t: f64) -> (f64, f64) {
        let v = &self.pts[p];
        let a = v[k];
        let b = v[(k + 1) % v.len()];
        (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
    }

    fn centroid(&self, p: usize) -> (f64, f64) {
        let v = &self.pts[p];
        let n = v.len() as f64;
        (v.iter().map(|q| q.0).sum::<f64>() / n, v.iter().map(|q| q.1).sum::<f64>() / n)
    }
}

/// Sides crossed by each fundamental cycle, as exits `(cell, side)`.
fn fundamental_cycles(c: &Cells) -> Vec<Vec<Side>> {
    let n = c.pts.len();
    let mut parent: Vec<Option<Side>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree = std::collections::BTreeSet::new();
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(p) = queue.pop_front() {
        for k in 0..c.pts[p].len() {
            let (q, j) = c.glue[p][k];
            if !seen[q] {
                seen[q] = true;
                parent[q] = Some((p, k));
                tree.insert((p, k));
                tree.insert((q, j));
                queue.push_back(q);
            }
        }
    }
    let path = |mut p: usize| {
        let mut out = Vec::new();
        while let Some(s) = parent[p] {
            out.push(s);
            p = s.0;
        }
        out.reverse();
        out
    };
    let mut cycles = Vec::new();
    for p in 0..n {
        for k in 0..c.pts[p].len() {
            let other = c.glue[p][k];
            if tree.contains(&(p, k)) || (p, k) > other {
                continue;
            }
            let down = path(p);
            let up = path(other.0);
            let common = down.iter().zip(&up).take_while(|(a, b)| a == b).count();
            let mut cyc: Vec<Side> = down[common..].to_vec();
            cyc.push((p, k));
            for s in up[common..].iter().rev() {
                cyc.push(c.glue[s.0][s.1]);
            }
            cycles.push(cyc);
        }
    }
    cycles
}

fn turn(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 * b.1 - a.1 * b.0).atan2(a.0 * b.0 + a.1 * b.1)
}

/// Chord endpoints of curve `i` in each cell: (cell, entry pos, exit pos),
/// positions measured as side index plus parameter.
fn chords(c: &Cells, cyc: &[Side], t: f64) -> (Vec<(usize, f64, f64)>, i64) {
    let m = cyc.len();
    let mut out = Vec::new();
    let mut dirs = Vec::new();
    for j in 0..m {
        let exit = cyc[(j + 1) % m];
        let enter = c.glue[cyc[j].0][cyc[j].1];
        let cell = enter.0;
        assert_eq!(cell, exit.0, "cycle is not contiguous");
        // Parameter t on the exit side is 1 - t on the glued entry side.
        let a = c.point(enter, 1.0 - t);
        let b = c.point(exit, t);
        let o = c.centroid(cell);
        dirs.push((o.0 - a.0, o.1 - a.1));
        dirs.push((b.0 - o.0, b.1 - o.1));
        out.push((cell, enter.1 as f64 + 1.0 - t, exit.1 as f64 + t));
    }
    let total: f64 = (0..dirs.len()).map(|i| turn(dirs[i], dirs[(i + 1) % dirs.len()])).sum();
    (out, (total / (2.0 * PI)).round() as i64)
}

fn between(x: f64, a: f64, b: f64) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    lo < x && x < hi
}

/// Arf invariant of the winding-number quadratic form.
pub fn winding_parity(s: &CylinderSurface) -> u8 {
    let ps = PolygonSurface::from_cylinders(s);
    let cells = Cells {
        pts: ps.polygons().iter().map(|v| v.iter().map(|p| (p.x.to_f64(), p.y.to_f64())).collect()).collect(),
        glue: ps.gluing().to_vec(),
    };
    let cycles = fundamental_cycles(&cells);
    let n = cycles.len();
    let data: Vec<_> = cycles
        .iter()
        .enumerate()
        .map(|(i, cyc)| chords(&cells, cyc, (i as f64 + 1.0) / (n as f64 + 2.0)))
        .collect();
    let q: Vec<u8> = data.iter().map(|(_, ind)| ((ind + 1).rem_euclid(2)) as u8).collect();
    let mut gram = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut x = 0;
            for &(ci, a, b) in &data[i].0 {
                for &(cj, c, d) in &data[j].0 {
                    if ci == cj && between(c, a, b) != between(d, a, b) {
                        x ^= 1;
                    }
                }
            }
            gram[i][j] = x;
            gram[j][i] = x;
        }
    }
    let mut ones = 0usize;
    for v in 0u32..(1 << n) {
        let bit = |i: usize| ((v >> i) & 1) as u8;
        let mut val = 0;
        for i in 0..n {
            val ^= bit(i) & q[i];
            for j in i + 1..n {
                val ^= bit(i) & bit(j) & gram[i][j];
            }
        }
        ones += val as usize;
    }
    let total = 1usize << n;
    assert_ne!(2 * ones, total, "quadratic form does not vanish on the radical");
    u8::from(2 * ones > total)
}
