//! Rel deformations: moving the second singularity relative to the first
//! while keeping absolute periods fixed.
//!
//! Unit time changes the twist (real axis) or height (imaginary axis) of a
//! mixed cylinder by `δ_i`. Crossing a wall where some height reaches zero
//! needs surgery: the surface is triangulated, the vertices at the second
//! singularity are moved, the triangulation is kept Delaunay along the way and
//! the result is decomposed horizontally again.

use crate::cylinder::{mixed_structure, CylinderSurface};
use crate::error::SurfaceError;
use crate::polygon::{Point, PolygonSurface, DEFAULT_STEP_CAP};
use crate::quad::QuadNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelAxis {
    Real,
    Imaginary,
}

impl RelAxis {
    fn direction(self) -> Point {
        match self {
            RelAxis::Real => Point::new(QuadNum::one(), QuadNum::zero()),
            RelAxis::Imaginary => Point::new(QuadNum::zero(), QuadNum::one()),
        }
    }
}

/// Maximum number of move-and-flip rounds before reporting a collision.
pub const SURGERY_ROUNDS: usize = 200;

/// `Rel` by time `t` along `axis`. Without surgery, a wall crossing is
/// reported as `HeightCollapse`.
pub fn rel_deform(s: &CylinderSurface, t: &QuadNum, axis: RelAxis, surgery: bool) -> Result<CylinderSurface, SurfaceError> {
    if s.singularities().len() != 2 {
        return Err(SurfaceError::NotTwoSingularities);
    }
    let ms = mixed_structure(s)?;
    let step: Vec<QuadNum> = ms.delta.iter().map(|&d| t * &QuadNum::from_int(d as i64)).collect();
    match axis {
        RelAxis::Real => s.shift_twists(&step),
        RelAxis::Imaginary => {
            let wall = s
                .cylinders()
                .iter()
                .zip(&step)
                .position(|(c, dh)| !(&c.height + dh).is_positive());
            match wall {
                None => s.shift_heights(&step),
                Some(i) if !surgery => Err(SurfaceError::HeightCollapse(i)),
                Some(_) => {
                    let (_, s2) = ms.singularities.expect("two singularities give a mixed cylinder");
                    rel_by_surgery(s, s2, t, axis)
                }
            }
        }
    }
}

/// Moves every vertex labelled `moving` by `t · axis` through a sequence of
/// Delaunay triangulations and decomposes the result horizontally.
pub fn rel_by_surgery(s: &CylinderSurface, moving: usize, t: &QuadNum, axis: RelAxis) -> Result<CylinderSurface, SurfaceError> {
    let mut mesh = Mesh::triangulate(&PolygonSurface::from_cylinders(s));
    let w = axis.direction().scale(&QuadNum::from_int(if t.is_negative() { -1 } else { 1 }));
    let mut remaining = t.abs();
    mesh.make_delaunay()?;
    for _ in 0..SURGERY_ROUNDS {
        if remaining.is_zero() {
            let area = s.area();
            let out = mesh.into_polygons()?.horizontal_decomposition(DEFAULT_STEP_CAP)?;
            debug_assert_eq!(out.area(), area);
            return Ok(out);
        }
        if mesh.collides(moving, &w, &remaining) {
            return Err(SurfaceError::Collision);
        }
        let dt = match mesh.collapse_time(moving, &w) {
            Some(tc) if tc <= remaining => &tc * &QuadNum::from_frac(1, 2),
            _ => remaining.clone(),
        };
        mesh.shift(moving, &w.scale(&dt));
        remaining = &remaining - &dt;
        mesh.make_delaunay()?;
    }
    Err(SurfaceError::Collision)
}

#[derive(Clone, Debug)]
struct Triangle {
    pts: [Point; 3],
    labels: [usize; 3],
    glue: [(usize, usize); 3],
}

impl Triangle {
    fn area2(&self) -> QuadNum {
        (&self.pts[1] - &self.pts[0]).cross(&(&self.pts[2] - &self.pts[0]))
    }
}

#[derive(Clone, Debug)]
struct Mesh {
    tris: Vec<Triangle>,
}

#[derive(Clone, Copy, Debug)]
enum EdgeRef {
    Original(usize, usize),
    Internal(usize, usize),
}

impl Mesh {
    /// Ear-clipping of every polygon. An ear is accepted when its area is
    /// positive and no other ring vertex lies on its chord.
    fn triangulate(ps: &PolygonSurface) -> Mesh {
        let mut tris: Vec<Triangle> = Vec::new();
        let mut placed = ps.polygons().iter().map(|v| vec![(0, 0); v.len()]).collect::<Vec<_>>();
        for (p, poly) in ps.polygons().iter().enumerate() {
            let mut ring: Vec<usize> = (0..poly.len()).collect();
            let mut refs: Vec<EdgeRef> = (0..poly.len()).map(|i| EdgeRef::Original(p, i)).collect();
            let mut attach = |tris: &mut Vec<Triangle>, r: EdgeRef, at: (usize, usize)| match r {
                EdgeRef::Original(q, i) => placed[q][i] = at,
                EdgeRef::Internal(ti, e) => {
                    tris[ti].glue[e] = at;
                    tris[at.0].glue[at.1] = (ti, e);
                }
            };
            while ring.len() > 3 {
                let n = ring.len();
                let k = (0..n)
                    .find(|&k| {
                        let (a, b, c) = (&poly[ring[(k + n - 1) % n]], &poly[ring[k]], &poly[ring[(k + 1) % n]]);
                        (b - a).cross(&(c - a)).is_positive()
                            && (0..n).filter(|&j| j != k && j != (k + n - 1) % n && j != (k + 1) % n).all(|j| {
                                let v = &poly[ring[j]];
                                !on_segment(c, a, v)
                            })
                    })
                    .expect("a convex polygon has an ear");
                let (ia, ib, ic) = (ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]);
                let ti = tris.len();
                tris.push(Triangle {
                    pts: [poly[ia].clone(), poly[ib].clone(), poly[ic].clone()],
                    labels: [ps.labels()[p][ia], ps.labels()[p][ib], ps.labels()[p][ic]],
                    glue: [(usize::MAX, 0); 3],
                });
                attach(&mut tris, refs[(k + n - 1) % n], (ti, 0));
                attach(&mut tris, refs[k], (ti, 1));
                refs[(k + n - 1) % n] = EdgeRef::Internal(ti, 2);
                ring.remove(k);
                refs.remove(k);
            }
            let ti = tris.len();
            tris.push(Triangle {
                pts: [poly[ring[0]].clone(), poly[ring[1]].clone(), poly[ring[2]].clone()],
                labels: [ps.labels()[p][ring[0]], ps.labels()[p][ring[1]], ps.labels()[p][ring[2]]],
                glue: [(usize::MAX, 0); 3],
            });
            for e in 0..3 {
                attach(&mut tris, refs[e], (ti, e));
            }
        }
        for (p, g) in ps.gluing().iter().enumerate() {
            for (i, &(q, j)) in g.iter().enumerate() {
                let (ta, ea) = placed[p][i];
                tris[ta].glue[ea] = placed[q][j];
            }
        }
        Mesh { tris }
    }

    /// Smallest positive time at which a triangle degenerates when the
    /// `moving` vertices travel with velocity `w`.
    fn collapse_time(&self, moving: usize, w: &Point) -> Option<QuadNum> {
        let zero = Point::origin();
        self.tris
            .iter()
            .filter_map(|t| {
                let v: Vec<&Point> = t.labels.iter().map(|&l| if l == moving { w } else { &zero }).collect();
                let rate = (v[1] - v[0]).cross(&(&t.pts[2] - &t.pts[0])) + (&t.pts[1] - &t.pts[0]).cross(&(v[2] - v[0]));
                rate.is_negative().then(|| &t.area2() / &(-rate))
            })
            .min()
    }

    /// True when an edge from a fixed vertex to a moving one points along
    /// `-w` and is closed up within time `within`. The closest pair of
    /// vertices is always a Delaunay edge, so an approaching collision is
    /// seen after finitely many rounds.
    fn collides(&self, moving: usize, w: &Point, within: &QuadNum) -> bool {
        self.tris.iter().any(|t| {
            (0..3).any(|k| {
                let (a, b) = (k, (k + 1) % 3);
                if (t.labels[a] == moving) == (t.labels[b] == moving) {
                    return false;
                }
                let v = if t.labels[b] == moving { &t.pts[b] - &t.pts[a] } else { &t.pts[a] - &t.pts[b] };
                v.cross(w).is_zero() && v.dot(w).is_negative() && &(-v.dot(w)) <= within
            })
        })
    }

    fn shift(&mut self, moving: usize, d: &Point) {
        for t in &mut self.tris {
            for k in 0..3 {
                if t.labels[k] == moving {
                    t.pts[k] = &t.pts[k] + d;
                }
            }
        }
    }

    /// The vertex of the neighbour across edge `e` of triangle `a`,
    /// translated into the frame of `a`.
    fn opposite(&self, a: usize, e: usize) -> (Point, usize, usize) {
        let (b, f) = self.tris[a].glue[e];
        let off = &self.tris[a].pts[e] - &self.tris[b].pts[(f + 1) % 3];
        (&self.tris[b].pts[(f + 2) % 3] + &off, b, f)
    }

    fn make_delaunay(&mut self) -> Result<(), SurfaceError> {
        let cap = 100 * self.tris.len() * self.tris.len() + 100;
        for _ in 0..cap {
            let mut flipped = false;
            'scan: for a in 0..self.tris.len() {
                for e in 0..3 {
                    let (d, _, _) = self.opposite(a, e);
                    let t = &self.tris[a];
                    let (pa, pb, pc) = (&t.pts[e], &t.pts[(e + 1) % 3], &t.pts[(e + 2) % 3]);
                    if in_circle(pa, pb, pc, &d) && (pa - pc).cross(&(&d - pc)).is_positive() && (&d - pc).cross(&(pb - pc)).is_positive() {
                        self.flip(a, e);
                        flipped = true;
                        break 'scan;
                    }
                }
            }
            if !flipped {
                return Ok(());
            }
        }
        Err(SurfaceError::Collision)
    }

    /// Replaces the diagonal on edge `i` of triangle `t1`.
    fn flip(&mut self, t1: usize, i: usize) {
        let (d, t2, j) = self.opposite(t1, i);
        let a = self.tris[t1].clone();
        let b = self.tris[t2].clone();
        let (pa, pb, pc) = (a.pts[i].clone(), a.pts[(i + 1) % 3].clone(), a.pts[(i + 2) % 3].clone());
        let (la, lb, lc, ld) = (a.labels[i], a.labels[(i + 1) % 3], a.labels[(i + 2) % 3], b.labels[(j + 2) % 3]);
        // Old outer edges and where they go: (t1, CA), (t2, AD), (t2, DB), (t1, BC).
        let outer = [((t1, (i + 2) % 3), (t1, 0)), ((t2, (j + 1) % 3), (t1, 1)), ((t2, (j + 2) % 3), (t2, 0)), ((t1, (i + 1) % 3), (t2, 1))];
        let remap = |r: (usize, usize)| outer.iter().find(|(old, _)| *old == r).map(|&(_, new)| new).unwrap_or(r);
        let targets: Vec<(usize, usize)> = outer.iter().map(|&(old, _)| remap(self.tris[old.0].glue[old.1])).collect();
        self.tris[t1] = Triangle { pts: [pc.clone(), pa, d.clone()], labels: [lc, la, ld], glue: [targets[0], targets[1], (t2, 2)] };
        self.tris[t2] = Triangle { pts: [d, pb, pc], labels: [ld, lb, lc], glue: [targets[2], targets[3], (t1, 2)] };
        for (k, &(_, new)) in outer.iter().enumerate() {
            let r = targets[k];
            self.tris[r.0].glue[r.1] = new;
        }
    }

    fn into_polygons(self) -> Result<PolygonSurface, SurfaceError> {
        let polygons = self.tris.iter().map(|t| t.pts.to_vec()).collect();
        let gluing = self.tris.iter().map(|t| t.glue.to_vec()).collect();
        let labels = self.tris.iter().map(|t| t.labels.to_vec()).collect();
        PolygonSurface::new(polygons, gluing, labels)
    }
}

fn on_segment(a: &Point, b: &Point, v: &Point) -> bool {
    (b - a).cross(&(v - a)).is_zero() && !(v - a).dot(&(v - b)).is_positive()
}

/// Strictly inside the circumcircle of the counterclockwise triangle `abc`.
fn in_circle(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let row = |p: &Point| {
        let x = &p.x - &d.x;
        let y = &p.y - &d.y;
        let n = &(&x * &x) + &(&y * &y);
        (x, y, n)
    };
    let (ax, ay, an) = row(a);
    let (bx, by, bn) = row(b);
    let (cx, cy, cn) = row(c);
    let det = &ax * &(&(&by * &cn) - &(&bn * &cy)) - &ay * &(&(&bx * &cn) - &(&bn * &cx)) + &an * &(&(&bx * &cy) - &(&by * &cx));
    det.is_positive()
}
