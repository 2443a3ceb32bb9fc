//! Diagrams of separatrices: a prediagram together with a pairing of its
//! cylinder components and a τ-invariant metric.

use std::fmt;

use crate::diagram::{parse_pairs, record_fields, CylinderComponents, Prediagram};
use crate::error::{DiagramError, ParseError};
use crate::perm;
use crate::quad::QuadNum;

/// A prediagram with a bijection from positive to negative cylinder
/// components. Each pair bounds one cylinder: the positive component is its
/// top boundary, the negative one its bottom boundary.
#[derive(Clone, PartialEq, Eq)]
pub struct PairedDiagram {
    prediagram: Prediagram,
    components: CylinderComponents,
    pairing: Vec<usize>,
}

impl PairedDiagram {
    pub fn new(prediagram: Prediagram, pairing: Vec<usize>) -> Result<PairedDiagram, DiagramError> {
        if !prediagram.is_alternating() {
            return Err(DiagramError::NotAlternating);
        }
        let components = prediagram.cylinder_components()?;
        let (np, nn) = (components.positive.len(), components.negative.len());
        if np != nn {
            return Err(DiagramError::UnequalComponentCounts(np, nn));
        }
        if pairing.len() != np || !perm::is_permutation(&pairing) {
            return Err(DiagramError::InvalidPairing("not a bijection".into()));
        }
        Ok(PairedDiagram { prediagram, components, pairing })
    }

    pub fn prediagram(&self) -> &Prediagram {
        &self.prediagram
    }

    pub fn components(&self) -> &CylinderComponents {
        &self.components
    }

    /// `pairing()[i]` is the negative component paired with positive `i`.
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn cylinder_count(&self) -> usize {
        self.pairing.len()
    }

    /// Top (positive) and bottom (negative) edge cycles of cylinder `i`.
    pub fn cylinder(&self, i: usize) -> (&[usize], &[usize]) {
        (
            &self.components.positive[i].edges,
            &self.components.negative[self.pairing[i]].edges,
        )
    }

    /// Singularity (σ-orbit index) of the top and bottom of each cylinder.
    pub fn boundary_singularities(&self) -> Vec<(usize, usize)> {
        let sing = self.prediagram.singularity_of_edges();
        (0..self.cylinder_count())
            .map(|i| {
                let (top, bottom) = self.cylinder(i);
                (sing[top[0]], sing[bottom[0]])
            })
            .collect()
    }

    /// A cylinder is mixed when its boundaries lie on different singularities.
    pub fn mixed_flags(&self) -> Vec<bool> {
        self.boundary_singularities().iter().map(|(t, b)| t != b).collect()
    }

    /// True iff the glued surface is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.prediagram.len();
        let mut uf = UnionFind::new(n);
        for e in 0..n {
            uf.union(e, self.prediagram.sigma()[e]);
            uf.union(e, self.prediagram.tau()[e]);
        }
        for i in 0..self.cylinder_count() {
            let (top, bottom) = self.cylinder(i);
            uf.union(top[0], bottom[0]);
        }
        (0..n).all(|e| uf.find(e) == uf.find(0))
    }

    /// The diagram of the surface rotated by π.
    pub fn reverse(&self) -> PairedDiagram {
        let p = self.prediagram.reverse();
        let pairing = perm::inverse(&self.pairing);
        PairedDiagram::new(p, pairing).expect("reversal preserves validity")
    }

    /// Text record; pairs are written as smallest edges of the components.
    pub fn to_text(&self) -> String {
        let pairs: String = (0..self.cylinder_count())
            .map(|i| {
                let (top, bottom) = self.cylinder(i);
                format!("({},{})", top[0], bottom[0])
            })
            .collect();
        format!("{}; pairing={}", self.prediagram.to_text(), pairs)
    }

    /// Builds the pairing from pairs of representative edges.
    pub fn from_edge_pairs(
        prediagram: Prediagram,
        pairs: &[(usize, usize)],
    ) -> Result<PairedDiagram, DiagramError> {
        let comps = prediagram.cylinder_components()?;
        let mut pairing = vec![usize::MAX; comps.positive.len()];
        for &(a, b) in pairs {
            let bad = || DiagramError::InvalidPairing(format!("({},{})", a, b));
            let (pa, ia) = comps.index_of(a).ok_or_else(bad)?;
            let (pb, ib) = comps.index_of(b).ok_or_else(bad)?;
            if !pa || pb {
                return Err(bad());
            }
            if pairing[ia] != usize::MAX {
                return Err(bad());
            }
            pairing[ia] = ib;
        }
        if pairing.contains(&usize::MAX) {
            return Err(DiagramError::InvalidPairing("a positive component is unpaired".into()));
        }
        PairedDiagram::new(prediagram, pairing)
    }

    pub fn parse(s: &str) -> Result<PairedDiagram, ParseError> {
        let p = Prediagram::parse(s)?;
        let fields = record_fields(s)?;
        let pairs = parse_pairs(fields.get("pairing")?)?;
        PairedDiagram::from_edge_pairs(p, &pairs).map_err(|e| ParseError::new(e.to_string()))
    }
}

impl fmt::Debug for PairedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairedDiagram({})", self.to_text())
    }
}

/// A paired diagram with a strictly positive τ-invariant length on every
/// edge such that paired components have equal total length.
#[derive(Clone, PartialEq, Eq)]
pub struct SeparatrixDiagram {
    paired: PairedDiagram,
    lengths: Vec<QuadNum>,
}

impl SeparatrixDiagram {
    /// `lengths[e]` for every edge; must be positive and τ-invariant.
    pub fn new(paired: PairedDiagram, lengths: Vec<QuadNum>) -> Result<SeparatrixDiagram, DiagramError> {
        let p = paired.prediagram();
        if lengths.len() != p.len() {
            return Err(DiagramError::InvalidMetric("wrong number of lengths".into()));
        }
        for e in 0..p.len() {
            if !lengths[e].is_positive() {
                return Err(DiagramError::InvalidMetric(format!("edge {} has non-positive length", e)));
            }
            if lengths[e] != lengths[p.tau()[e]] {
                return Err(DiagramError::InvalidMetric(format!("edge {} is not tau-invariant", e)));
            }
        }
        let d = SeparatrixDiagram { paired, lengths };
        for i in 0..d.paired.cylinder_count() {
            let (top, bottom) = d.paired.cylinder(i);
            if d.total(top) != d.total(bottom) {
                return Err(DiagramError::InvalidMetric(format!("cylinder {} boundaries differ", i)));
            }
        }
        Ok(d)
    }

    /// Lengths given per positive edge (one per τ-orbit).
    pub fn from_positive_lengths(
        paired: PairedDiagram,
        positive_lengths: &[QuadNum],
    ) -> Result<SeparatrixDiagram, DiagramError> {
        let p = paired.prediagram();
        let pos = p.positive_edges();
        if positive_lengths.len() != pos.len() {
            return Err(DiagramError::InvalidMetric("wrong number of lengths".into()));
        }
        let mut lengths = vec![QuadNum::zero(); p.len()];
        for (e, l) in pos.iter().zip(positive_lengths) {
            lengths[*e] = l.clone();
            lengths[p.tau()[*e]] = l.clone();
        }
        SeparatrixDiagram::new(paired, lengths)
    }

    pub fn paired(&self) -> &PairedDiagram {
        &self.paired
    }

    pub fn prediagram(&self) -> &Prediagram {
        self.paired.prediagram()
    }

    pub fn lengths(&self) -> &[QuadNum] {
        &self.lengths
    }

    pub fn total(&self, edges: &[usize]) -> QuadNum {
        edges.iter().fold(QuadNum::zero(), |acc, &e| acc + self.lengths[e].clone())
    }

    /// Circumference of cylinder `i`.
    pub fn circumference(&self, i: usize) -> QuadNum {
        self.total(self.paired.cylinder(i).0)
    }

    pub fn reverse(&self) -> SeparatrixDiagram {
        SeparatrixDiagram { paired: self.paired.reverse(), lengths: self.lengths.clone() }
    }

    pub fn to_text(&self) -> String {
        let metric: Vec<String> = self
            .prediagram()
            .positive_edges()
            .iter()
            .map(|&e| format!("{}:{}", e, self.lengths[e]))
            .collect();
        format!("{}; metric={}", self.paired.to_text(), metric.join(","))
    }

    pub fn parse(s: &str) -> Result<SeparatrixDiagram, ParseError> {
        let paired = PairedDiagram::parse(s)?;
        let fields = record_fields(s)?;
        let p = paired.prediagram().clone();
        let mut lengths = vec![None; p.len()];
        for item in fields.get("metric")?.split(',') {
            let (e, l) = item
                .split_once(':')
                .ok_or_else(|| ParseError::new(format!("bad metric entry `{}`", item)))?;
            let e: usize = e
                .trim()
                .parse()
                .map_err(|_| ParseError::new(format!("bad edge `{}`", e)))?;
            if e >= p.len() {
                return Err(ParseError::new("metric edge out of range"));
            }
            let l: QuadNum = l.parse()?;
            lengths[e] = Some(l.clone());
            lengths[p.tau()[e]] = Some(l);
        }
        let lengths: Vec<QuadNum> = lengths
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| ParseError::new("metric does not cover every edge"))?;
        SeparatrixDiagram::new(paired, lengths).map_err(|e| ParseError::new(e.to_string()))
    }
}

impl fmt::Debug for SeparatrixDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeparatrixDiagram({})", self.to_text())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mintype::MinimalType;

    #[test]
    fn single_component_unique_pairing() {
        let c = MinimalType::from_cycles("(123)", 3).unwrap().component();
        let d = PairedDiagram::new(c, vec![0]).unwrap();
        assert!(d.is_connected());
        assert_eq!(d.mixed_flags(), vec![false]);
    }

    #[test]
    fn text_round_trip() {
        let c = MinimalType::from_cycles("(123)", 3).unwrap().component();
        let d = PairedDiagram::new(c, vec![0]).unwrap();
        let s = SeparatrixDiagram::from_positive_lengths(
            d,
            &[QuadNum::from_int(1), QuadNum::from_int(1), QuadNum::from_int(1)],
        )
        .unwrap();
        let t = s.to_text();
        assert_eq!(SeparatrixDiagram::parse(&t).unwrap(), s);
    }
}
