//! Translation surfaces as convex polygons glued along edges, and the
//! recovery of the horizontal cylinder decomposition by tracing separatrices.
//!
//! Polygon vertices are listed counterclockwise; edge `i` runs from vertex
//! `i` to vertex `i + 1`. Glued edges have opposite vectors. Every vertex is
//! a singularity. A corner `(P, i)` is the angular sector at vertex `i` of
//! polygon `P`, covering directions from `d_i` (inclusive) to `-d_{i-1}`
//! (exclusive) counterclockwise, where `d_i` is the vector of edge `i`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::cylinder::{minus, plus, CylinderSurface};
use crate::diagram::Prediagram;
use crate::error::SurfaceError;
use crate::perm;
use crate::quad::{common_discriminant, QuadNum};

pub const DEFAULT_STEP_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl Point {
    pub fn new(x: QuadNum, y: QuadNum) -> Point {
        Point { x, y }
    }

    pub fn origin() -> Point {
        Point::new(QuadNum::zero(), QuadNum::zero())
    }

    pub fn cross(&self, o: &Point) -> QuadNum {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Point) -> QuadNum {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn scale(&self, k: &QuadNum) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> Point {
        Point::new(-self.x.clone(), -self.y.clone())
    }
}

impl Add for &Point {
    type Output = Point;

    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Point {
    type Output = Point;

    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub a: QuadNum,
    pub b: QuadNum,
    pub c: QuadNum,
    pub d: QuadNum,
}

impl Matrix2 {
    pub fn new(a: QuadNum, b: QuadNum, c: QuadNum, d: QuadNum) -> Matrix2 {
        Matrix2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Matrix2 {
        Matrix2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Matrix2 {
        Matrix2::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> QuadNum {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(&self.a * &p.x + &self.b * &p.y, &self.c * &p.x + &self.d * &p.y)
    }

    /// The horocycle shear `[[1, s], [0, 1]]`.
    pub fn shear(s: QuadNum) -> Matrix2 {
        Matrix2::new(QuadNum::one(), s, QuadNum::zero(), QuadNum::one())
    }

    /// `[[dx, dy], [-dy, dx]]`, sending `(dx, dy)` to `(|v|², 0)`. It is a
    /// rotation composed with scaling by `|v|`.
    pub fn rotating_to_horizontal(dx: &QuadNum, dy: &QuadNum) -> Matrix2 {
        Matrix2::new(dx.clone(), dy.clone(), -dy.clone(), dx.clone())
    }
}

/// A corner `(polygon, vertex)`.
pub type Corner = (usize, usize);

#[derive(Clone, PartialEq, Eq)]
pub struct PolygonSurface {
    polygons: Vec<Vec<Point>>,
    gluing: Vec<Vec<(usize, usize)>>,
    labels: Vec<Vec<usize>>,
    discriminant: u64,
}

impl fmt::Debug for PolygonSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.polygons.iter().enumerate() {
            writeln!(f, "P{}: {:?} glue {:?} labels {:?}", i, p, self.gluing[i], self.labels[i])?;
        }
        Ok(())
    }
}

/// One traced piece of a saddle connection inside one polygon.
#[derive(Clone, Debug)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
    /// Distance from the start of the saddle connection.
    pub offset: QuadNum,
    /// Edge of the polygon the segment runs along, if any.
    pub on_edge: Option<usize>,
}

/// A horizontal saddle connection found by tracing.
#[derive(Clone, Debug)]
pub struct TracedConnection {
    pub start: Corner,
    pub end: Corner,
    pub length: QuadNum,
    pub pieces: Vec<(usize, Segment)>,
}

enum Exit {
    Vertex(usize),
    Edge(usize, Point),
}

impl PolygonSurface {
    pub fn new(
        polygons: Vec<Vec<Point>>,
        gluing: Vec<Vec<(usize, usize)>>,
        labels: Vec<Vec<usize>>,
    ) -> Result<PolygonSurface, SurfaceError> {
        let discriminant = common_discriminant(polygons.iter().flatten().flat_map(|p| [&p.x, &p.y]))
            .map_err(|(a, b)| SurfaceError::MixedDiscriminants(a, b))?;
        let s = PolygonSurface { polygons, gluing, labels, discriminant };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<(), SurfaceError> {
        for (p, poly) in self.polygons.iter().enumerate() {
            if poly.len() < 3 || self.gluing[p].len() != poly.len() || self.labels[p].len() != poly.len() {
                return Err(SurfaceError::Invalid(format!("polygon {} is malformed", p)));
            }
            for i in 0..poly.len() {
                let a = self.edge(p, i);
                let b = self.edge(p, (i + 1) % poly.len());
                if a.cross(&b).is_negative() {
                    return Err(SurfaceError::Invalid(format!("polygon {} is not convex", p)));
                }
                let (q, j) = self.gluing[p][i];
                if self.gluing.get(q).and_then(|g| g.get(j)) != Some(&(p, i)) {
                    return Err(SurfaceError::Invalid(format!("edge ({}, {}) is not glued back", p, i)));
                }
                if self.edge(q, j) != a.neg() {
                    return Err(SurfaceError::Invalid(format!("edge ({}, {}) is glued to a non-opposite edge", p, i)));
                }
            }
            if !self.polygon_area2(p).is_positive() {
                return Err(SurfaceError::Invalid(format!("polygon {} has no area", p)));
            }
        }
        Ok(())
    }

    /// Each cylinder becomes one parallelogram with its saddle connections as
    /// marked points along the horizontal sides; corners are labelled by the
    /// singularity index of the surface.
    pub fn from_cylinders(s: &CylinderSurface) -> PolygonSurface {
        let sing = s.singularity_of_edges();
        let l = s.lengths();
        let mut polygons = Vec::new();
        let mut labels = Vec::new();
        let mut bottom_edge = vec![(0, 0); l.len()];
        let mut top_edge = vec![(0, 0); l.len()];
        for (ci, c) in s.cylinders().iter().enumerate() {
            let n = c.bottom.len();
            let m = c.top.len();
            let mut verts = Vec::new();
            let mut lab = Vec::new();
            let mut x = QuadNum::zero();
            for (k, &b) in c.bottom.iter().enumerate() {
                verts.push(Point::new(x.clone(), QuadNum::zero()));
                lab.push(sing[plus(b)]);
                bottom_edge[b] = (ci, k);
                x += l[b].clone();
            }
            verts.push(Point::new(x, QuadNum::zero()));
            lab.push(sing[minus(c.bottom[n - 1])]);
            let mut x = &c.twist + &c.circumference;
            for j in 0..m {
                let a = c.top[m - 1 - j];
                verts.push(Point::new(x.clone(), c.height.clone()));
                lab.push(if j == 0 { sing[minus(a)] } else { sing[plus(c.top[m - j])] });
                top_edge[a] = (ci, n + 1 + j);
                x -= l[a].clone();
            }
            verts.push(Point::new(x, c.height.clone()));
            lab.push(sing[plus(c.top[0])]);
            polygons.push(verts);
            labels.push(lab);
        }
        let mut gluing: Vec<Vec<(usize, usize)>> = polygons.iter().map(|v| vec![(0, 0); v.len()]).collect();
        for (ci, c) in s.cylinders().iter().enumerate() {
            let n = c.bottom.len();
            let v = polygons[ci].len();
            gluing[ci][n] = (ci, v - 1);
            gluing[ci][v - 1] = (ci, n);
        }
        for sc in 0..l.len() {
            let (bp, bi) = bottom_edge[sc];
            let (tp, ti) = top_edge[sc];
            gluing[bp][bi] = (tp, ti);
            gluing[tp][ti] = (bp, bi);
        }
        PolygonSurface::new(polygons, gluing, labels).expect("cylinder polygons are valid")
    }

    pub fn polygons(&self) -> &[Vec<Point>] {
        &self.polygons
    }

    pub fn gluing(&self) -> &[Vec<(usize, usize)>] {
        &self.gluing
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn vertex(&self, p: usize, i: usize) -> &Point {
        let n = self.polygons[p].len();
        &self.polygons[p][i % n]
    }

    pub fn edge(&self, p: usize, i: usize) -> Point {
        let n = self.polygons[p].len();
        self.vertex(p, (i + 1) % n) - self.vertex(p, i % n)
    }

    fn polygon_area2(&self, p: usize) -> QuadNum {
        let v = &self.polygons[p];
        (0..v.len()).fold(QuadNum::zero(), |acc, i| acc + v[i].cross(&v[(i + 1) % v.len()]))
    }

    pub fn area(&self) -> QuadNum {
        (0..self.polygons.len()).fold(QuadNum::zero(), |acc, p| acc + self.polygon_area2(p)) * QuadNum::from_frac(1, 2)
    }

    /// The image under `M` with `det M > 0`.
    pub fn apply_matrix(&self, m: &Matrix2) -> Result<PolygonSurface, SurfaceError> {
        if !m.det().is_positive() {
            return Err(SurfaceError::NonPositiveDeterminant);
        }
        let polygons = self.polygons.iter().map(|v| v.iter().map(|p| m.apply(p)).collect()).collect();
        PolygonSurface::new(polygons, self.gluing.clone(), self.labels.clone())
    }

    /// The corner following `(p, i)` counterclockwise around its vertex.
    pub fn next_corner(&self, (p, i): Corner) -> Corner {
        let n = self.polygons[p].len();
        self.gluing[p][(i + n - 1) % n]
    }

    /// Corners grouped by singularity.
    pub fn corner_orbits(&self) -> Vec<Vec<Corner>> {
        let mut seen: Vec<Vec<bool>> = self.polygons.iter().map(|v| vec![false; v.len()]).collect();
        let mut out = Vec::new();
        for p in 0..self.polygons.len() {
            for i in 0..self.polygons[p].len() {
                if seen[p][i] {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut c = (p, i);
                while !seen[c.0][c.1] {
                    seen[c.0][c.1] = true;
                    orbit.push(c);
                    c = self.next_corner(c);
                }
                out.push(orbit);
            }
        }
        out
    }

    /// True iff direction `r` lies in corner `(p, i)`.
    pub fn in_corner(&self, (p, i): Corner, r: &Point) -> bool {
        let n = self.polygons[p].len();
        let a = self.edge(p, i);
        let b = self.edge(p, (i + n - 1) % n).neg();
        let ab = a.cross(&b);
        let ar = a.cross(r);
        if ab.is_positive() {
            !ar.is_negative() && r.cross(&b).is_positive()
        } else {
            ar.is_positive() || (ar.is_zero() && a.dot(r).is_positive())
        }
    }

    /// The corner containing `r` among the corners of the vertex of `c`,
    /// searching counterclockwise from `c` (inclusive).
    fn corner_with(&self, c: Corner, r: &Point) -> Corner {
        let mut cur = c;
        let total: usize = self.polygons.iter().map(|v| v.len()).sum();
        for _ in 0..=total {
            if self.in_corner(cur, r) {
                return cur;
            }
            cur = self.next_corner(cur);
        }
        panic!("direction not found around a vertex");
    }

    /// Where the ray `p + s r` (s > 0) leaves polygon `q`. `skip` lists
    /// edges the ray starts on.
    fn exit(&self, q: usize, p: &Point, r: &Point, skip: &[usize]) -> Result<(Exit, QuadNum), SurfaceError> {
        let n = self.polygons[q].len();
        let mut best: Option<(QuadNum, Exit)> = None;
        for j in (0..n).filter(|j| !skip.contains(j)) {
            let vj = self.vertex(q, j);
            let e = self.edge(q, j);
            let denom = r.cross(&e);
            if denom.is_zero() {
                continue;
            }
            let w = vj - p;
            let s = w.cross(&e) / denom.clone();
            let u = w.cross(r) / denom;
            if !s.is_positive() || u.is_negative() || u > QuadNum::one() {
                continue;
            }
            let hit = if u.is_zero() {
                Exit::Vertex(j)
            } else if u == QuadNum::one() {
                Exit::Vertex((j + 1) % n)
            } else {
                Exit::Edge(j, p + &r.scale(&s))
            };
            if best.as_ref().is_none_or(|(bs, _)| &s < bs) {
                best = Some((s, hit));
            }
        }
        let (s, hit) = best.ok_or_else(|| SurfaceError::Invalid("ray does not leave the polygon".into()))?;
        Ok((hit, s))
    }

    /// Follows the ray in direction `r` from corner `c` until it reaches a
    /// vertex. Returns the arrival corner (containing `-r`), the travelled
    /// parameter and the pieces.
    pub fn trace(&self, c: Corner, r: &Point, step_cap: usize) -> Result<TracedConnection, SurfaceError> {
        let (p0, i0) = c;
        let n0 = self.polygons[p0].len();
        let a = self.edge(p0, i0);
        let back = r.neg();
        if a.cross(r).is_zero() && a.dot(r).is_positive() {
            // Along edge i0.
            let s = a.dot(r) / r.dot(r);
            let start = self.vertex(p0, i0).clone();
            let end = self.vertex(p0, i0 + 1).clone();
            let (q, j) = self.gluing[p0][i0];
            let off = self.vertex(q, j + 1) - &start;
            let seg = Segment { start: start.clone(), end: end.clone(), offset: QuadNum::zero(), on_edge: Some(i0) };
            let twin = Segment { start: &start + &off, end: &end + &off, offset: QuadNum::zero(), on_edge: Some(j) };
            let arrive = self.corner_with((p0, (i0 + 1) % n0), &back);
            return Ok(TracedConnection { start: c, end: arrive, length: s, pieces: vec![(p0, seg), (q, twin)] });
        }
        let mut pieces = Vec::new();
        let mut poly = p0;
        let mut point = self.vertex(p0, i0).clone();
        let mut skip = vec![i0, (i0 + n0 - 1) % n0];
        let mut travelled = QuadNum::zero();
        for _ in 0..=step_cap {
            let (hit, s) = self.exit(poly, &point, r, &skip)?;
            let end = match &hit {
                Exit::Vertex(w) => self.vertex(poly, *w).clone(),
                Exit::Edge(_, q) => q.clone(),
            };
            pieces.push((
                poly,
                Segment { start: point.clone(), end: end.clone(), offset: travelled.clone(), on_edge: None },
            ));
            travelled += s;
            match hit {
                Exit::Vertex(w) => {
                    let arrive = self.corner_with((poly, w), &back);
                    return Ok(TracedConnection { start: c, end: arrive, length: travelled, pieces });
                }
                Exit::Edge(j, q) => {
                    let (np, nj) = self.gluing[poly][j];
                    let off = self.vertex(np, nj) - self.vertex(poly, j + 1);
                    point = &q + &off;
                    poly = np;
                    skip = vec![nj];
                }
            }
        }
        Err(SurfaceError::StepCapExceeded)
    }

    /// The horizontal cylinder decomposition, if every rightward horizontal
    /// separatrix is a saddle connection within the step cap.
    pub fn horizontal_decomposition(&self, step_cap: usize) -> Result<CylinderSurface, SurfaceError> {
        let east = Point::new(QuadNum::one(), QuadNum::zero());
        let west = east.neg();
        let mut starts = Vec::new();
        for orbit in self.corner_orbits() {
            for c in orbit {
                if self.in_corner(c, &east) {
                    starts.push(c);
                }
            }
        }
        let mut conns = Vec::new();
        for &c in &starts {
            conns.push(self.trace(c, &east, step_cap)?);
        }
        let n = conns.len();
        let mut east_index: HashMap<Corner, usize> = HashMap::new();
        let mut west_index: HashMap<Corner, usize> = HashMap::new();
        for (s, t) in conns.iter().enumerate() {
            east_index.insert(t.start, s);
            west_index.insert(t.end, s);
        }
        if west_index.len() != n {
            return Err(SurfaceError::Invalid("leftward separatrices do not match".into()));
        }
        let mut sigma = vec![0; 2 * n];
        let mut tau = vec![0; 2 * n];
        let mut positive = vec![false; 2 * n];
        for (s, t) in conns.iter().enumerate() {
            let wc = self.corner_with(self.next_corner(t.start), &west);
            let ec = self.corner_with(self.next_corner(t.end), &east);
            sigma[plus(s)] = minus(*west_index.get(&wc).ok_or_else(unmatched)?);
            sigma[minus(s)] = plus(*east_index.get(&ec).ok_or_else(unmatched)?);
            tau[plus(s)] = minus(s);
            tau[minus(s)] = plus(s);
            positive[plus(s)] = true;
        }
        let pd = Prediagram::from_mask(sigma, tau, positive).map_err(|e| SurfaceError::Invalid(e.to_string()))?;
        let sigma_inf = pd.sigma_inf();
        let inv = perm::inverse(&sigma_inf);
        let lengths: Vec<QuadNum> = conns.iter().map(|t| t.length.clone()).collect();
        let mut segs_by_poly: Vec<Vec<(usize, Segment)>> = vec![Vec::new(); self.polygons.len()];
        for (s, t) in conns.iter().enumerate() {
            for (p, seg) in &t.pieces {
                segs_by_poly[*p].push((s, seg.clone()));
            }
        }
        let mut specs = Vec::new();
        for cyc in perm::cycles(&sigma_inf) {
            if !pd.is_positive(cyc[0]) {
                continue;
            }
            let top: Vec<usize> = cyc.iter().map(|e| e / 2).collect();
            let (h, bottom_sc, x_bot, x_top) = self.descend(&conns, &segs_by_poly, &lengths, top[0], step_cap)?;
            // The bottom word is the negative orbit read backwards, starting at bottom_sc.
            let mut bottom = vec![bottom_sc];
            let mut cur = inv[minus(bottom_sc)];
            while cur != minus(bottom_sc) {
                bottom.push(cur / 2);
                cur = inv[cur];
            }
            let c: QuadNum = top.iter().fold(QuadNum::zero(), |acc, &s| acc + lengths[s].clone());
            let t = (x_bot - x_top).rem_euclid(&c);
            specs.push((h, t, top, bottom));
        }
        CylinderSurface::new(lengths, specs)
    }

    /// Drops vertically from a point of saddle connection `s` (on the top of
    /// a cylinder) to the bottom of that cylinder. Returns the height, the
    /// saddle connection hit, and the positions along the bottom and top
    /// saddle connections.
    fn descend(
        &self,
        conns: &[TracedConnection],
        segs: &[Vec<(usize, Segment)>],
        lengths: &[QuadNum],
        s: usize,
        step_cap: usize,
    ) -> Result<(QuadNum, usize, QuadNum, QuadNum), SurfaceError> {
        let down = Point::new(QuadNum::zero(), -QuadNum::one());
        let fractions = [(1, 2), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5), (4, 5), (1, 7), (3, 7), (5, 7), (1, 11), (7, 11)];
        for (a, b) in fractions {
            let lambda = QuadNum::from_frac(a, b);
            let target = &lengths[s] * &lambda;
            if let Some(found) = self.try_descend(conns, segs, s, &target, &down, step_cap)? {
                return Ok((found.0, found.1, found.2, target));
            }
        }
        Err(SurfaceError::Invalid("no non-degenerate vertical descent found".into()))
    }

    fn try_descend(
        &self,
        conns: &[TracedConnection],
        segs: &[Vec<(usize, Segment)>],
        s: usize,
        target: &QuadNum,
        down: &Point,
        step_cap: usize,
    ) -> Result<Option<(QuadNum, usize, QuadNum)>, SurfaceError> {
        // Locate the piece of s containing the target position, in a polygon
        // lying below it.
        let mut start = None;
        for (p, seg) in &conns[s].pieces {
            let len = &seg.end.x - &seg.start.x;
            let rel = target - &seg.offset;
            if rel.is_negative() || rel > len {
                continue;
            }
            if rel.is_zero() || rel == len {
                return Ok(None);
            }
            if let Some(j) = seg.on_edge {
                if self.edge(*p, j).x.is_positive() {
                    continue;
                }
            }
            let point = Point::new(&seg.start.x + &rel, seg.start.y.clone());
            start = Some((*p, point, seg.on_edge));
            break;
        }
        let Some((mut poly, mut point, on_edge)) = start else {
            return Ok(None);
        };
        let mut skip: Vec<usize> = on_edge.into_iter().collect();
        let mut dropped = QuadNum::zero();
        for _ in 0..=step_cap {
            let (hit, dist) = match self.exit(poly, &point, down, &skip) {
                Ok(v) => v,
                Err(_) => return Ok(None),
            };
            let mut best: Option<(QuadNum, usize, QuadNum)> = None;
            for (sc, seg) in &segs[poly] {
                if seg.start.y >= point.y {
                    continue;
                }
                if point.x < seg.start.x || point.x > seg.end.x {
                    continue;
                }
                if point.x == seg.start.x || point.x == seg.end.x {
                    return Ok(None);
                }
                let d = &point.y - &seg.start.y;
                if d > dist {
                    continue;
                }
                if best.as_ref().is_none_or(|(bd, _, _)| &d < bd) {
                    best = Some((d, *sc, &seg.offset + &(&point.x - &seg.start.x)));
                }
            }
            if let Some((d, sc, pos)) = best {
                return Ok(Some((dropped + d, sc, pos)));
            }
            match hit {
                Exit::Vertex(_) => return Ok(None),
                Exit::Edge(j, q) => {
                    let (np, nj) = self.gluing[poly][j];
                    let off = self.vertex(np, nj) - self.vertex(poly, j + 1);
                    dropped += dist;
                    point = &q + &off;
                    poly = np;
                    skip = vec![nj];
                }
            }
        }
        Err(SurfaceError::StepCapExceeded)
    }

    /// Singularity label of every corner orbit, checking consistency.
    pub fn orbit_labels(&self) -> Vec<usize> {
        self.corner_orbits().iter().map(|o| self.labels[o[0].0][o[0].1]).collect()
    }
}

fn unmatched() -> SurfaceError {
    SurfaceError::Invalid("separatrix does not close up".into())
}

/// Rotates `direction` to the horizontal with `[[dx, dy], [-dy, dx]]` and
/// decomposes. Lengths of the result are scaled by `|direction|`. Returns
/// `None` when some separatrix does not close within `step_cap` crossings.
pub fn decompose_direction(
    s: &PolygonSurface,
    direction: &Point,
    step_cap: usize,
) -> Result<Option<CylinderSurface>, SurfaceError> {
    if direction.x.is_zero() && direction.y.is_zero() {
        return Err(SurfaceError::NonFieldDirection);
    }
    let d = common_discriminant([&direction.x, &direction.y]).map_err(|_| SurfaceError::NonFieldDirection)?;
    if d != 0 && s.discriminant() != 0 && d != s.discriminant() {
        return Err(SurfaceError::NonFieldDirection);
    }
    let m = Matrix2::rotating_to_horizontal(&direction.x, &direction.y);
    let rotated = s.apply_matrix(&m)?;
    match rotated.horizontal_decomposition(step_cap) {
        Ok(c) => Ok(Some(c)),
        Err(SurfaceError::StepCapExceeded) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The polygon representation of `M · s`.
pub fn apply_matrix(s: &CylinderSurface, m: &Matrix2) -> Result<PolygonSurface, SurfaceError> {
    PolygonSurface::from_cylinders(s).apply_matrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QuadNum {
        QuadNum::from_int(n)
    }

    fn h2() -> CylinderSurface {
        CylinderSurface::new(
            vec![q(1), q(1), q(1)],
            vec![(q(1), q(0), vec![1, 2], vec![0, 2]), (q(1), q(0), vec![0], vec![1])],
        )
        .unwrap()
    }

    #[test]
    fn polygons_have_the_surface_area() {
        let s = h2();
        let p = PolygonSurface::from_cylinders(&s);
        assert_eq!(p.area(), s.area());
        assert_eq!(p.corner_orbits().len(), 1);
    }

    #[test]
    fn horizontal_decomposition_recovers_cylinders() {
        let s = h2().shift_twists(&[QuadNum::from_frac(1, 2), q(0)]).unwrap();
        let p = PolygonSurface::from_cylinders(&s);
        let d = p.horizontal_decomposition(DEFAULT_STEP_CAP).unwrap();
        assert_eq!(d.area(), s.area());
        let mut c = d.circumferences();
        c.sort();
        assert_eq!(c, vec![q(1), q(2)]);
        assert_eq!(d.stratum_signature().unwrap(), (vec![2], 2));
    }

    #[test]
    fn non_positive_determinant_is_rejected() {
        let p = PolygonSurface::from_cylinders(&h2());
        assert_eq!(p.apply_matrix(&Matrix2::from_ints(1, 0, 0, -1)), Err(SurfaceError::NonPositiveDeterminant));
    }
}
