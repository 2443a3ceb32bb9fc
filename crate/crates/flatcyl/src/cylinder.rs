//! Horizontally periodic translation surfaces given by their cylinders.
//!
//! Cylinder `i` is the parallelogram with bottom side `[0, c) × {0}` and top
//! side `[t, t + c) × {h}`. Its bottom word lists saddle connections from
//! left to right starting at `x = 0`; its top word lists them from left to
//! right starting at `x = t`. Every saddle connection occurs once in some
//! top word and once in some bottom word.
//!
//! Saddle connection `s` gives the edges `2s` (the rightward separatrix at
//! its left end) and `2s + 1` (the leftward separatrix at its right end).

use std::fmt;

use crate::diagram::Prediagram;
use crate::error::{ParseError, SurfaceError};
use crate::perm;
use crate::quad::{common_discriminant, QuadNum};
use crate::separatrix::{PairedDiagram, SeparatrixDiagram};

#[derive(Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub circumference: QuadNum,
    pub height: QuadNum,
    /// Offset of the top word, in `[0, circumference)`.
    pub twist: QuadNum,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct CylinderSurface {
    discriminant: u64,
    lengths: Vec<QuadNum>,
    cylinders: Vec<Cylinder>,
}

/// Height, twist, top word and bottom word of one cylinder.
pub type CylinderSpec = (QuadNum, QuadNum, Vec<usize>, Vec<usize>);

pub fn plus(s: usize) -> usize {
    2 * s
}

pub fn minus(s: usize) -> usize {
    2 * s + 1
}

impl CylinderSurface {
    pub fn new(lengths: Vec<QuadNum>, specs: Vec<CylinderSpec>) -> Result<CylinderSurface, SurfaceError> {
        let values = lengths.iter().chain(specs.iter().flat_map(|(h, t, _, _)| [h, t]));
        let discriminant = common_discriminant(values).map_err(|(a, b)| SurfaceError::MixedDiscriminants(a, b))?;
        let n = lengths.len();
        if let Some(s) = (0..n).find(|&s| !lengths[s].is_positive()) {
            return Err(SurfaceError::LengthMismatch(format!("saddle connection {} has non-positive length", s)));
        }
        let mut in_top = vec![0; n];
        let mut in_bottom = vec![0; n];
        let mut cylinders = Vec::new();
        for (i, (h, t, top, bottom)) in specs.into_iter().enumerate() {
            if !h.is_positive() {
                return Err(SurfaceError::NonPositiveHeight(i));
            }
            if top.is_empty() || bottom.is_empty() {
                return Err(SurfaceError::Invalid(format!("cylinder {} has an empty boundary", i)));
            }
            for &s in &top {
                *in_top.get_mut(s).ok_or_else(|| bad_id(s))? += 1;
            }
            for &s in &bottom {
                *in_bottom.get_mut(s).ok_or_else(|| bad_id(s))? += 1;
            }
            let ct = sum(&lengths, &top);
            let cb = sum(&lengths, &bottom);
            if ct != cb {
                return Err(SurfaceError::LengthMismatch(format!(
                    "cylinder {}: top {} and bottom {} differ",
                    i, ct, cb
                )));
            }
            let twist = t.rem_euclid(&ct);
            cylinders.push(Cylinder { circumference: ct, height: h, twist, top, bottom });
        }
        if let Some(s) = (0..n).find(|&s| in_top[s] != 1 || in_bottom[s] != 1) {
            return Err(SurfaceError::Invalid(format!(
                "saddle connection {} must occur once on a top and once on a bottom",
                s
            )));
        }
        if cylinders.is_empty() {
            return Err(SurfaceError::Invalid("no cylinders".into()));
        }
        Ok(CylinderSurface { discriminant, lengths, cylinders })
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn lengths(&self) -> &[QuadNum] {
        &self.lengths
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn cylinder_count(&self) -> usize {
        self.cylinders.len()
    }

    pub fn saddle_connection_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn circumferences(&self) -> Vec<QuadNum> {
        self.cylinders.iter().map(|c| c.circumference.clone()).collect()
    }

    pub fn heights(&self) -> Vec<QuadNum> {
        self.cylinders.iter().map(|c| c.height.clone()).collect()
    }

    pub fn twists(&self) -> Vec<QuadNum> {
        self.cylinders.iter().map(|c| c.twist.clone()).collect()
    }

    pub fn area(&self) -> QuadNum {
        self.cylinders
            .iter()
            .fold(QuadNum::zero(), |acc, c| acc + &c.circumference * &c.height)
    }

    /// `(cylinder below, cylinder above)` of every saddle connection.
    pub fn adjacency(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.lengths.len()];
        for (i, c) in self.cylinders.iter().enumerate() {
            for &s in &c.top {
                out[s].0 = i;
            }
            for &s in &c.bottom {
                out[s].1 = i;
            }
        }
        out
    }

    /// Position of every saddle connection in its top and bottom words:
    /// `(index in top word, index in bottom word)`.
    fn word_positions(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.lengths.len()];
        for c in &self.cylinders {
            for (k, &s) in c.top.iter().enumerate() {
                out[s].0 = k;
            }
            for (k, &s) in c.bottom.iter().enumerate() {
                out[s].1 = k;
            }
        }
        out
    }

    /// The prediagram of horizontal separatrices.
    pub fn prediagram(&self) -> Prediagram {
        let n = self.lengths.len();
        let adj = self.adjacency();
        let pos = self.word_positions();
        let mut sigma = vec![0; 2 * n];
        let mut tau = vec![0; 2 * n];
        let mut positive = vec![false; 2 * n];
        for s in 0..n {
            let above = &self.cylinders[adj[s].1].bottom;
            let below = &self.cylinders[adj[s].0].top;
            let pred = above[(pos[s].1 + above.len() - 1) % above.len()];
            let succ = below[(pos[s].0 + 1) % below.len()];
            sigma[plus(s)] = minus(pred);
            sigma[minus(s)] = plus(succ);
            tau[plus(s)] = minus(s);
            tau[minus(s)] = plus(s);
            positive[plus(s)] = true;
        }
        Prediagram::from_mask(sigma, tau, positive).expect("surface data gives a valid prediagram")
    }

    pub fn horizontal_paired(&self) -> PairedDiagram {
        let pairs: Vec<(usize, usize)> =
            self.cylinders.iter().map(|c| (plus(c.top[0]), minus(c.bottom[0]))).collect();
        PairedDiagram::from_edge_pairs(self.prediagram(), &pairs).expect("surface data gives a valid pairing")
    }

    /// The canonical diagram of horizontal separatrices with its metric.
    pub fn horizontal_diagram(&self) -> SeparatrixDiagram {
        let lengths: Vec<QuadNum> = (0..2 * self.lengths.len()).map(|e| self.lengths[e / 2].clone()).collect();
        SeparatrixDiagram::new(self.horizontal_paired(), lengths).expect("surface lengths are a metric")
    }

    /// Singularities as σ-orbits of edges, in order of smallest edge.
    pub fn singularities(&self) -> Vec<Vec<usize>> {
        self.prediagram().singularities()
    }

    /// Singularity index of every edge.
    pub fn singularity_of_edges(&self) -> Vec<usize> {
        self.prediagram().singularity_of_edges()
    }

    /// Singularity of the bottom and top boundary of each cylinder (read
    /// from the first saddle connection of each word).
    pub fn boundary_singularities(&self) -> Vec<(usize, usize)> {
        let sing = self.singularity_of_edges();
        self.cylinders
            .iter()
            .map(|c| (sing[plus(c.bottom[0])], sing[plus(c.top[0])]))
            .collect()
    }

    /// True iff every boundary word has all its endpoints on one singularity.
    pub fn is_stable(&self) -> bool {
        let sing = self.singularity_of_edges();
        self.cylinders.iter().all(|c| {
            let b = sing[plus(c.bottom[0])];
            let t = sing[plus(c.top[0])];
            c.bottom.iter().all(|&s| sing[plus(s)] == b) && c.top.iter().all(|&s| sing[plus(s)] == t)
        })
    }

    /// Singularity orders and genus.
    pub fn stratum_signature(&self) -> Result<(Vec<usize>, usize), SurfaceError> {
        let orbits = self.singularities();
        let mut kappa = Vec::new();
        for (i, o) in orbits.iter().enumerate() {
            let k = o.len() / 2 - 1;
            if k == 0 {
                return Err(SurfaceError::ZeroOrderSingularity(i));
            }
            kappa.push(k);
        }
        let genus = kappa.iter().sum::<usize>() / 2 + 1;
        Ok((kappa, genus))
    }

    /// Adds `x_i · c_i` to the twist of cylinder `i`.
    pub fn twist_deform(&self, x: &[QuadNum]) -> Result<CylinderSurface, SurfaceError> {
        self.check_dim(x.len())?;
        let shifts: Vec<QuadNum> = x.iter().zip(&self.cylinders).map(|(xi, c)| xi * &c.circumference).collect();
        self.shift_twists(&shifts)
    }

    /// Adds `dt_i` to the twist of cylinder `i`.
    pub fn shift_twists(&self, dt: &[QuadNum]) -> Result<CylinderSurface, SurfaceError> {
        self.check_dim(dt.len())?;
        let specs = self
            .cylinders
            .iter()
            .zip(dt)
            .map(|(c, d)| (c.height.clone(), &c.twist + d, c.top.clone(), c.bottom.clone()))
            .collect();
        CylinderSurface::new(self.lengths.clone(), specs)
    }

    /// Adds `dh_i` to the height of cylinder `i`.
    pub fn shift_heights(&self, dh: &[QuadNum]) -> Result<CylinderSurface, SurfaceError> {
        self.check_dim(dh.len())?;
        let specs = self
            .cylinders
            .iter()
            .zip(dh)
            .map(|(c, d)| (&c.height + d, c.twist.clone(), c.top.clone(), c.bottom.clone()))
            .collect();
        CylinderSurface::new(self.lengths.clone(), specs)
    }

    pub fn with_heights_and_twists(&self, heights: &[QuadNum], twists: &[QuadNum]) -> Result<CylinderSurface, SurfaceError> {
        self.check_dim(heights.len())?;
        self.check_dim(twists.len())?;
        let specs = self
            .cylinders
            .iter()
            .zip(heights.iter().zip(twists))
            .map(|(c, (h, t))| (h.clone(), t.clone(), c.top.clone(), c.bottom.clone()))
            .collect();
        CylinderSurface::new(self.lengths.clone(), specs)
    }

    fn check_dim(&self, got: usize) -> Result<(), SurfaceError> {
        if got != self.cylinders.len() {
            return Err(SurfaceError::DimensionMismatch { expected: self.cylinders.len(), got });
        }
        Ok(())
    }

    /// The image under `-Id`: tops and bottoms swap and reverse.
    pub fn rotate_pi(&self) -> CylinderSurface {
        let specs = self
            .cylinders
            .iter()
            .map(|c| {
                let mut bottom = c.top.clone();
                bottom.reverse();
                let mut top = c.bottom.clone();
                top.reverse();
                (c.height.clone(), c.twist.clone(), top, bottom)
            })
            .collect();
        CylinderSurface::new(self.lengths.clone(), specs).expect("rotation preserves validity")
    }

    /// Text form: `D=`, a `lengths=` table, then one line per cylinder.
    pub fn to_text(&self) -> String {
        let mut out = format!("D={}\n", self.discriminant);
        let l: Vec<String> = self.lengths.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("lengths=[{}]\n", l.join(",")));
        for c in &self.cylinders {
            out.push_str(&format!(
                "c={};h={};t={};top=[{}];bottom=[{}]\n",
                c.circumference,
                c.height,
                c.twist,
                join(&c.top),
                join(&c.bottom)
            ));
        }
        out
    }

    pub fn parse(s: &str) -> Result<CylinderSurface, ParseError> {
        let mut d: Option<u64> = None;
        let mut lengths: Option<Vec<QuadNum>> = None;
        let mut specs = Vec::new();
        let mut circs = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some(v) = line.strip_prefix("D=") {
                d = Some(v.trim().parse().map_err(|_| ParseError::new(format!("bad discriminant `{}`", v)))?);
            } else if let Some(v) = line.strip_prefix("lengths=") {
                let body = brackets(v)?;
                lengths = Some(
                    body.split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| t.parse::<QuadNum>())
                        .collect::<Result<_, _>>()?,
                );
            } else {
                let mut c = None;
                let mut h = None;
                let mut t = None;
                let mut top = None;
                let mut bottom = None;
                for field in line.split(';').map(str::trim).filter(|f| !f.is_empty()) {
                    let (k, v) = field
                        .split_once('=')
                        .ok_or_else(|| ParseError::new(format!("field `{}` lacks `=`", field)))?;
                    match k.trim() {
                        "c" => c = Some(v.parse::<QuadNum>()?),
                        "h" => h = Some(v.parse::<QuadNum>()?),
                        "t" => t = Some(v.parse::<QuadNum>()?),
                        "top" => top = Some(id_list(v)?),
                        "bottom" => bottom = Some(id_list(v)?),
                        other => return Err(ParseError::new(format!("unknown field `{}`", other))),
                    }
                }
                let missing = |n: &str| ParseError::new(format!("cylinder record lacks `{}`", n));
                circs.push(c);
                specs.push((
                    h.ok_or_else(|| missing("h"))?,
                    t.unwrap_or_else(QuadNum::zero),
                    top.ok_or_else(|| missing("top"))?,
                    bottom.ok_or_else(|| missing("bottom"))?,
                ));
            }
        }
        let lengths = lengths.ok_or_else(|| ParseError::new("missing `lengths=` table"))?;
        let surface = CylinderSurface::new(lengths, specs).map_err(|e| ParseError::new(e.to_string()))?;
        if let Some(d) = d {
            if surface.discriminant != 0 && surface.discriminant != d {
                return Err(ParseError::new(format!(
                    "values lie in Q(sqrt({})) but the header says D={}",
                    surface.discriminant, d
                )));
            }
        }
        for (i, c) in circs.into_iter().enumerate() {
            if let Some(c) = c {
                if c != surface.cylinders[i].circumference {
                    return Err(ParseError::new(format!("cylinder {}: circumference does not match its words", i)));
                }
            }
        }
        Ok(surface)
    }
}

impl fmt::Debug for CylinderSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn bad_id(s: usize) -> SurfaceError {
    SurfaceError::Invalid(format!("unknown saddle connection {}", s))
}

fn sum(lengths: &[QuadNum], ids: &[usize]) -> QuadNum {
    ids.iter()
        .filter(|&&s| s < lengths.len())
        .fold(QuadNum::zero(), |acc, &s| acc + lengths[s].clone())
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn brackets(v: &str) -> Result<&str, ParseError> {
    v.trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(format!("expected a [list], got `{}`", v)))
}

fn id_list(v: &str) -> Result<Vec<usize>, ParseError> {
    brackets(v)?
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| ParseError::new(format!("bad id `{}`", t))))
        .collect()
}

/// Glues the surface of a diagram. Saddle connection `s` is the τ-orbit of
/// the `s`-th positive edge; cylinder `i` has the `i`-th positive component
/// on top.
pub fn build_surface(
    d: &SeparatrixDiagram,
    heights: &[QuadNum],
    twists: &[QuadNum],
) -> Result<CylinderSurface, SurfaceError> {
    let paired = d.paired();
    let p = d.prediagram();
    let m = paired.cylinder_count();
    if heights.len() != m || twists.len() != m {
        return Err(SurfaceError::LengthMismatch(format!(
            "{} cylinders but {} heights and {} twists",
            m,
            heights.len(),
            twists.len()
        )));
    }
    let pos = p.positive_edges();
    let mut sc = vec![0; p.len()];
    for (i, &e) in pos.iter().enumerate() {
        sc[e] = i;
        sc[p.tau()[e]] = i;
    }
    let lengths: Vec<QuadNum> = pos.iter().map(|&e| d.lengths()[e].clone()).collect();
    let specs = (0..m)
        .map(|i| {
            let (top, bottom) = paired.cylinder(i);
            let top: Vec<usize> = top.iter().map(|&e| sc[e]).collect();
            let bottom: Vec<usize> = bottom.iter().rev().map(|&e| sc[e]).collect();
            (heights[i].clone(), twists[i].clone(), top, bottom)
        })
        .collect();
    CylinderSurface::new(lengths, specs)
}

/// `δ_i` and the derived cylinder classes of a stable decomposition with
/// two singularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedStructure {
    /// `+1` when the bottom lies on the first singularity and the top on the
    /// second, `-1` for the reverse, `0` for a non-mixed cylinder.
    pub delta: Vec<i8>,
    /// Singularity indices (σ-orbit order) of the first and second
    /// singularity; the first is the bottom of the lowest-index mixed
    /// cylinder.
    pub singularities: Option<(usize, usize)>,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub non_mixed: Vec<usize>,
    pub plus0: Vec<usize>,
    pub plus1: Vec<usize>,
    pub minus0: Vec<usize>,
    pub minus1: Vec<usize>,
    /// Set when the surface has a single singularity.
    pub one_singularity: bool,
}

impl MixedStructure {
    /// `u = (δ_i / c_i)`.
    pub fn u(&self, s: &CylinderSurface) -> Vec<QuadNum> {
        self.delta
            .iter()
            .zip(s.cylinders())
            .map(|(&d, c)| QuadNum::from_int(d as i64) * c.circumference.recip())
            .collect()
    }

    /// `μ = (h_i / c_i)`.
    pub fn mu(&self, s: &CylinderSurface) -> Vec<QuadNum> {
        s.cylinders().iter().map(|c| &c.height / &c.circumference).collect()
    }

    pub fn is_mixed(&self, i: usize) -> bool {
        self.delta[i] != 0
    }
}

pub fn mixed_structure(s: &CylinderSurface) -> Result<MixedStructure, SurfaceError> {
    let nsing = s.singularities().len();
    if nsing > 2 {
        return Err(SurfaceError::MoreThanTwoSingularities);
    }
    if !s.is_stable() {
        return Err(SurfaceError::Invalid("decomposition is not stable".into()));
    }
    let m = s.cylinder_count();
    let bs = s.boundary_singularities();
    let first = bs.iter().find(|(b, t)| b != t).map(|&(b, t)| (b, t));
    let delta: Vec<i8> = bs
        .iter()
        .map(|&(b, t)| match first {
            Some((s1, _)) if b != t => {
                if b == s1 {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        })
        .collect();
    let class = |d: i8| (0..m).filter(|&i| delta[i] == d).collect::<Vec<_>>();
    let (plus, minus, non_mixed) = (class(1), class(-1), class(0));
    let split = |v: &[usize]| {
        let minh = v.iter().map(|&i| s.cylinders()[i].height.clone()).min();
        let (a, b): (Vec<usize>, Vec<usize>) =
            v.iter().partition(|&&i| Some(&s.cylinders()[i].height) == minh.as_ref());
        (a, b)
    };
    let (plus0, plus1) = split(&plus);
    let (minus0, minus1) = split(&minus);
    Ok(MixedStructure {
        delta,
        singularities: first,
        plus,
        minus,
        non_mixed,
        plus0,
        plus1,
        minus0,
        minus1,
        one_singularity: nsing == 1,
    })
}

/// Cylinder permutation helper: the words of `s` with saddle connections
/// renamed by `map`.
pub fn relabel_saddle_connections(s: &CylinderSurface, map: &[usize]) -> CylinderSurface {
    let inv = perm::inverse(map);
    let lengths = (0..s.lengths.len()).map(|k| s.lengths[inv[k]].clone()).collect();
    let specs = s
        .cylinders
        .iter()
        .map(|c| {
            (
                c.height.clone(),
                c.twist.clone(),
                c.top.iter().map(|&x| map[x]).collect(),
                c.bottom.iter().map(|&x| map[x]).collect(),
            )
        })
        .collect();
    CylinderSurface::new(lengths, specs).expect("relabelling preserves validity")
}
