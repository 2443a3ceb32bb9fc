//! Parity of the spin structure of a horizontally periodic surface.
//!
//! Homology is generated by the core curves of the cylinders and by upward
//! curves: closed paths that cross a cycle of saddle connections, moving
//! upward through one cylinder between consecutive crossings. Core curves
//! have winding index 0 and are simple. An upward curve has its tangent in
//! the open upper half-plane, so its index is 0 and its quadratic form value
//! is `1 + #self-intersections`. A class is identified mod 2 by its
//! intersections with the saddle connections and with one cross arc per
//! cylinder (the segment from the start of the bottom word to the start of
//! the top word), which span relative homology.

use crate::cylinder::CylinderSurface;
use crate::error::SurfaceError;
use crate::quad::QuadNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// A straight pass through cylinder `cyl` from bottom position `x0` to the
/// lifted top position `x1` (both measured from the start of the bottom word).
#[derive(Clone, Debug)]
struct Pass {
    cyl: usize,
    x0: QuadNum,
    x1: QuadNum,
}

#[derive(Clone, Debug)]
enum Curve {
    Core(usize),
    Upward(Vec<usize>),
}

/// Number of integers `k` with `k c` strictly between `lo` and `hi`;
/// neither end is a multiple of `c`.
fn crossings(lo: &QuadNum, hi: &QuadNum, c: &QuadNum) -> usize {
    let (a, b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let fa = (a / c).floor();
    let fb = (b / c).floor();
    let n = fb - fa;
    n.try_into().unwrap_or(0)
}

fn pass_crossings(s: &CylinderSurface, p: &Pass, r: &Pass) -> usize {
    let c = &s.cylinders()[p.cyl].circumference;
    crossings(&(&p.x0 - &r.x0), &(&p.x1 - &r.x1), c)
}

struct Layout<'a> {
    s: &'a CylinderSurface,
    above: Vec<usize>,
    bottom_offset: Vec<QuadNum>,
    top_offset: Vec<QuadNum>,
}

impl<'a> Layout<'a> {
    fn new(s: &'a CylinderSurface) -> Layout<'a> {
        let n = s.saddle_connection_count();
        let mut bottom_offset = vec![QuadNum::zero(); n];
        let mut top_offset = vec![QuadNum::zero(); n];
        for c in s.cylinders() {
            let mut x = QuadNum::zero();
            for &b in &c.bottom {
                bottom_offset[b] = x.clone();
                x += s.lengths()[b].clone();
            }
            let mut x = c.twist.clone();
            for &a in &c.top {
                top_offset[a] = x.clone();
                x += s.lengths()[a].clone();
            }
        }
        let above = s.adjacency().iter().map(|&(_, up)| up).collect();
        Layout { s, above, bottom_offset, top_offset }
    }

    /// Passes of the upward curve through the saddle connection cycle,
    /// crossing each at fraction `lambda` of its length.
    fn passes(&self, cycle: &[usize], lambda: &QuadNum) -> Vec<Pass> {
        let l = self.s.lengths();
        (0..cycle.len())
            .map(|i| {
                let s0 = cycle[i];
                let s1 = cycle[(i + 1) % cycle.len()];
                let cyl = self.above[s0];
                let c = &self.s.cylinders()[cyl].circumference;
                let x0 = &self.bottom_offset[s0] + &(&l[s0] * lambda);
                let top = &self.top_offset[s1] + &(&l[s1] * lambda);
                let x1 = &x0 + &(&top - &x0).rem_euclid(c);
                Pass { cyl, x0, x1 }
            })
            .collect()
    }

    /// Mod-2 intersections with saddle connections and cross arcs.
    fn coordinates(&self, curve: &Curve) -> Vec<u8> {
        let n = self.s.saddle_connection_count();
        let mut v = vec![0u8; n + self.s.cylinder_count()];
        match curve {
            Curve::Core(a) => v[n + a] = 1,
            Curve::Upward(cycle) => {
                for &x in cycle {
                    v[x] ^= 1;
                }
                for p in self.passes(cycle, &QuadNum::from_frac(1, 2)) {
                    let cyl = &self.s.cylinders()[p.cyl];
                    let arc = Pass { cyl: p.cyl, x0: QuadNum::zero(), x1: cyl.twist.clone() };
                    v[n + p.cyl] ^= (pass_crossings(self.s, &p, &arc) % 2) as u8;
                }
            }
        }
        v
    }
}

/// Simple cycles of the digraph `s → s'` (s' on the top of the cylinder
/// above s), by increasing length, each starting at its smallest vertex.
fn simple_cycles(layout: &Layout, max_len: usize) -> Vec<Vec<usize>> {
    let n = layout.s.saddle_connection_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|x| layout.s.cylinders()[layout.above[x]].top.clone()).collect();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for start in 0..n {
            let mut path = vec![start];
            let mut used = vec![false; n];
            used[start] = true;
            extend(&succ, start, len, &mut path, &mut used, &mut out);
        }
    }
    out
}

fn extend(succ: &[Vec<usize>], start: usize, len: usize, path: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    if path.len() == len {
        if succ[last].contains(&start) {
            out.push(path.clone());
        }
        return;
    }
    for &nx in &succ[last] {
        if nx > start && !used[nx] {
            used[nx] = true;
            path.push(nx);
            extend(succ, start, len, path, used, out);
            path.pop();
            used[nx] = false;
        }
    }
}

fn rank_insert(basis: &mut Vec<Vec<u8>>, v: &[u8]) -> bool {
    let mut v = v.to_vec();
    for b in basis.iter() {
        let pivot = b.iter().position(|&x| x == 1).unwrap();
        if v[pivot] == 1 {
            for (x, y) in v.iter_mut().zip(b) {
                *x ^= y;
            }
        }
    }
    if v.iter().all(|&x| x == 0) {
        return false;
    }
    // Keep the basis reduced on pivots.
    let pivot = v.iter().position(|&x| x == 1).unwrap();
    for b in basis.iter_mut() {
        if b[pivot] == 1 {
            for (x, y) in b.iter_mut().zip(&v) {
                *x ^= y;
            }
        }
    }
    basis.push(v);
    true
}

/// Arf invariant of the spin quadratic form.
pub fn spin_parity(s: &CylinderSurface) -> Result<Parity, SurfaceError> {
    let (kappa, genus) = s.stratum_signature()?;
    if let Some(i) = kappa.iter().position(|k| k % 2 == 1) {
        return Err(SurfaceError::OddOrderSingularity(i));
    }
    let layout = Layout::new(s);
    // Curves avoid the singularities, so they span homology of the punctured
    // surface; loops around singularities form the radical of the form.
    let target = 2 * genus + s.singularities().len() - 1;
    let mut basis = Vec::new();
    let mut chosen: Vec<Curve> = Vec::new();
    for a in 0..s.cylinder_count() {
        let c = Curve::Core(a);
        if rank_insert(&mut basis, &layout.coordinates(&c)) {
            chosen.push(c);
        }
    }
    for cycle in simple_cycles(&layout, s.saddle_connection_count()) {
        if chosen.len() == target {
            break;
        }
        let c = Curve::Upward(cycle);
        if rank_insert(&mut basis, &layout.coordinates(&c)) {
            chosen.push(c);
        }
    }
    if chosen.len() != target {
        return Err(SurfaceError::Invalid("curves do not span homology".into()));
    }
    let k = chosen.len();
    let passes: Vec<Vec<Pass>> = chosen
        .iter()
        .enumerate()
        .map(|(j, c)| match c {
            Curve::Core(_) => Vec::new(),
            Curve::Upward(cycle) => layout.passes(cycle, &QuadNum::from_frac(j as i64 + 1, k as i64 + 2)),
        })
        .collect();
    let mut gram = vec![vec![0u8; k]; k];
    let mut q = vec![0u8; k];
    for i in 0..k {
        q[i] = match &chosen[i] {
            Curve::Core(_) => 1,
            Curve::Upward(_) => {
                let mut self_x = 0;
                for a in 0..passes[i].len() {
                    for b in a + 1..passes[i].len() {
                        if passes[i][a].cyl == passes[i][b].cyl {
                            self_x += pass_crossings(s, &passes[i][a], &passes[i][b]);
                        }
                    }
                }
                ((1 + self_x) % 2) as u8
            }
        };
        for j in i + 1..k {
            let x = match (&chosen[i], &chosen[j]) {
                (Curve::Core(_), Curve::Core(_)) => 0,
                (Curve::Core(a), Curve::Upward(_)) => passes[j].iter().filter(|p| p.cyl == *a).count(),
                (Curve::Upward(_), Curve::Core(a)) => passes[i].iter().filter(|p| p.cyl == *a).count(),
                (Curve::Upward(_), Curve::Upward(_)) => {
                    let mut n = 0;
                    for p in &passes[i] {
                        for r in &passes[j] {
                            if p.cyl == r.cyl {
                                n += pass_crossings(s, p, r);
                            }
                        }
                    }
                    n
                }
            };
            gram[i][j] = (x % 2) as u8;
            gram[j][i] = gram[i][j];
        }
    }
    let (a, pairs) = arf_mod_radical(&gram, &q);
    if pairs != genus {
        return Err(SurfaceError::Invalid("intersection form has the wrong rank".into()));
    }
    Ok(if a == 1 { Parity::Odd } else { Parity::Even })
}

/// Arf invariant of `q` on a GF(2) space with nondegenerate form `gram`.
pub fn arf(gram: &[Vec<u8>], q: &[u8]) -> Option<u8> {
    let (a, pairs) = arf_mod_radical(gram, q);
    (2 * pairs == q.len()).then_some(a)
}

/// Arf invariant on the quotient by the radical, and the number of
/// hyperbolic pairs found.
fn arf_mod_radical(gram: &[Vec<u8>], q: &[u8]) -> (u8, usize) {
    let k = q.len();
    let mut vecs: Vec<(Vec<u8>, u8)> = (0..k)
        .map(|i| {
            let mut v = vec![0u8; k];
            v[i] = 1;
            (v, q[i])
        })
        .collect();
    let pair = |x: &[u8], y: &[u8]| -> u8 {
        let mut s = 0;
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                s ^= x[i] & gram[i][j] & y[j];
            }
        }
        s
    };
    let mut total = 0u8;
    let mut pairs = 0;
    while !vecs.is_empty() {
        let (a, qa) = vecs.remove(0);
        let Some(pos) = vecs.iter().position(|(v, _)| pair(&a, v) == 1) else {
            continue;
        };
        let (b, qb) = vecs.remove(pos);
        total ^= qa & qb;
        pairs += 1;
        for (v, qv) in vecs.iter_mut() {
            let alpha = pair(v, &b);
            let beta = pair(v, &a);
            if alpha == 1 {
                *qv ^= qa ^ pair(v, &a);
                for (x, y) in v.iter_mut().zip(&a) {
                    *x ^= y;
                }
            }
            if beta == 1 {
                *qv ^= qb;
                for (x, y) in v.iter_mut().zip(&b) {
                    *x ^= y;
                }
            }
        }
    }
    (total, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QuadNum {
        QuadNum::from_int(n)
    }

    #[test]
    fn h2_is_odd() {
        let s = CylinderSurface::new(
            vec![q(1), q(1), q(1)],
            vec![(q(1), q(0), vec![1, 2], vec![0, 2]), (q(1), q(0), vec![0], vec![1])],
        )
        .unwrap();
        assert_eq!(spin_parity(&s).unwrap(), Parity::Odd);
        let t = s.shift_twists(&[QuadNum::from_frac(1, 3), QuadNum::from_frac(1, 2)]).unwrap();
        assert_eq!(spin_parity(&t).unwrap(), Parity::Odd);
    }

    #[test]
    fn one_cylinder_h2_is_odd() {
        // Single cylinder with top 0,1,2 and bottom 2,1,0.
        let s = CylinderSurface::new(vec![q(1), q(1), q(1)], vec![(q(1), q(0), vec![0, 1, 2], vec![2, 1, 0])]).unwrap();
        assert_eq!(s.stratum_signature().unwrap(), (vec![2], 2));
        assert_eq!(spin_parity(&s).unwrap(), Parity::Odd);
    }

    #[test]
    fn hyperelliptic_h4_is_even() {
        // One cylinder with the symmetric gluing of a hyperelliptic H(4) surface.
        let s = CylinderSurface::new(
            vec![q(1), q(1), q(1), q(1), q(1)],
            vec![(q(1), q(0), vec![0, 1, 2, 3, 4], vec![4, 3, 2, 1, 0])],
        )
        .unwrap();
        assert_eq!(s.stratum_signature().unwrap(), (vec![4], 3));
        assert_eq!(spin_parity(&s).unwrap(), Parity::Even);
    }

    #[test]
    fn arf_of_hyperbolic_plane() {
        let g = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(arf(&g, &[1, 1]), Some(1));
        assert_eq!(arf(&g, &[1, 0]), Some(0));
    }
}
