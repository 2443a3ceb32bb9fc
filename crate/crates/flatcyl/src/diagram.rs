//! Prediagrams of separatrices: the combinatorial record `(E, σ, τ, θ)` of
//! the horizontal separatrices of a translation surface.
//!
//! Edges are `0..N`. `σ` is the counterclockwise successor of a separatrix
//! at its singularity, `τ` pairs the two ends of a saddle connection and the
//! positive edges are those pointing in the direction of positive real
//! period (to the right).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{DiagramError, ParseError};
use crate::perm;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prediagram {
    sigma: Vec<usize>,
    tau: Vec<usize>,
    positive: Vec<bool>,
}

/// An orbit of `σ∞ = σ ∘ τ`, one boundary circle of a cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderComponent {
    /// Edges in `σ∞` order starting from the smallest.
    pub edges: Vec<usize>,
    pub positive: bool,
}

/// Positive and negative cylinder components, each list in order of
/// smallest edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderComponents {
    pub positive: Vec<CylinderComponent>,
    pub negative: Vec<CylinderComponent>,
}

impl CylinderComponents {
    /// Index of the component containing `e` within its orientation class.
    pub fn index_of(&self, e: usize) -> Option<(bool, usize)> {
        for (i, c) in self.positive.iter().enumerate() {
            if c.edges.contains(&e) {
                return Some((true, i));
            }
        }
        for (i, c) in self.negative.iter().enumerate() {
            if c.edges.contains(&e) {
                return Some((false, i));
            }
        }
        None
    }
}

impl Prediagram {
    /// Checks the prediagram invariants and builds the value.
    pub fn validate(
        sigma: Vec<usize>,
        tau: Vec<usize>,
        positive: &[usize],
    ) -> Result<Prediagram, DiagramError> {
        let n = sigma.len();
        if tau.len() != n {
            return Err(DiagramError::LengthMismatch);
        }
        let mut mask = vec![false; n];
        for &e in positive {
            if e >= n {
                return Err(DiagramError::ThetaNotSection);
            }
            mask[e] = true;
        }
        Prediagram::from_mask(sigma, tau, mask)
    }

    pub fn from_mask(
        sigma: Vec<usize>,
        tau: Vec<usize>,
        positive: Vec<bool>,
    ) -> Result<Prediagram, DiagramError> {
        let n = sigma.len();
        if tau.len() != n || positive.len() != n {
            return Err(DiagramError::LengthMismatch);
        }
        if !perm::is_permutation(&sigma) {
            return Err(DiagramError::NotPermutation("sigma"));
        }
        if !perm::is_permutation(&tau) {
            return Err(DiagramError::NotPermutation("tau"));
        }
        if (0..n).any(|e| tau[e] == e || tau[tau[e]] != e) {
            return Err(DiagramError::TauNotFixedPointFreeInvolution);
        }
        if (0..n).any(|e| positive[e] == positive[tau[e]]) {
            return Err(DiagramError::ThetaNotSection);
        }
        Ok(Prediagram { sigma, tau, positive })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn is_positive(&self, e: usize) -> bool {
        self.positive[e]
    }

    pub fn positive_mask(&self) -> &[bool] {
        &self.positive
    }

    pub fn positive_edges(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.positive[e]).collect()
    }

    pub fn negative_edges(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| !self.positive[e]).collect()
    }

    /// `σ∞ = σ ∘ τ`.
    pub fn sigma_inf(&self) -> Vec<usize> {
        perm::compose(&self.sigma, &self.tau)
    }

    /// True iff orientations alternate along every σ-orbit, i.e. σ(E+) = E−.
    pub fn is_alternating(&self) -> bool {
        (0..self.len()).all(|e| self.positive[e] != self.positive[self.sigma[e]])
    }

    /// True iff τ preserves every σ-orbit.
    pub fn is_stable(&self) -> bool {
        let orbit = self.singularity_of_edges();
        (0..self.len()).all(|e| orbit[e] == orbit[self.tau[e]])
    }

    /// σ-orbits (singularities), each sorted, in order of smallest edge.
    pub fn singularities(&self) -> Vec<Vec<usize>> {
        perm::group_orbits(&[&self.sigma], self.len())
    }

    /// Index into [`Prediagram::singularities`] for every edge.
    pub fn singularity_of_edges(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (i, orb) in self.singularities().iter().enumerate() {
            for &e in orb {
                out[e] = i;
            }
        }
        out
    }

    /// Orders `k = |orbit|/2 - 1` of the singularities.
    pub fn singularity_orders(&self) -> Vec<isize> {
        self.singularities().iter().map(|o| o.len() as isize / 2 - 1).collect()
    }

    /// Edge sets of the ⟨σ, τ⟩-orbits, in order of smallest edge.
    pub fn component_edge_sets(&self) -> Vec<Vec<usize>> {
        perm::group_orbits(&[&self.sigma, &self.tau], self.len())
    }

    /// The connected components as re-indexed prediagrams. Edges of each
    /// component are numbered in increasing order of their original labels.
    pub fn connected_components(&self) -> Vec<Prediagram> {
        self.component_edge_sets().iter().map(|set| self.induced(set)).collect()
    }

    /// Sub-prediagram on a union of ⟨σ, τ⟩-orbits, relabelled in order.
    pub fn induced(&self, edges: &[usize]) -> Prediagram {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &e) in edges.iter().enumerate() {
            index[e] = i;
        }
        let sigma = edges.iter().map(|&e| index[self.sigma[e]]).collect();
        let tau = edges.iter().map(|&e| index[self.tau[e]]).collect();
        let positive = edges.iter().map(|&e| self.positive[e]).collect();
        Prediagram { sigma, tau, positive }
    }

    /// Cylinder components; requires consistent orientation on every
    /// `σ∞`-orbit, which holds for alternating prediagrams.
    pub fn cylinder_components(&self) -> Result<CylinderComponents, DiagramError> {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for cyc in perm::cycles(&self.sigma_inf()) {
            let sign = self.positive[cyc[0]];
            if cyc.iter().any(|&e| self.positive[e] != sign) {
                return Err(DiagramError::OrientationMixedWithinOrbit);
            }
            let c = CylinderComponent { edges: cyc, positive: sign };
            if sign {
                positive.push(c);
            } else {
                negative.push(c);
            }
        }
        Ok(CylinderComponents { positive, negative })
    }

    /// `Γ̄ = (E, σ, τ, E−)`: the prediagram of the surface rotated by π.
    pub fn reverse(&self) -> Prediagram {
        Prediagram {
            sigma: self.sigma.clone(),
            tau: self.tau.clone(),
            positive: self.positive.iter().map(|p| !p).collect(),
        }
    }

    /// Disjoint union, with the edges of later parts shifted up.
    pub fn disjoint_union(parts: &[Prediagram]) -> Prediagram {
        let mut sigma = Vec::new();
        let mut tau = Vec::new();
        let mut positive = Vec::new();
        for p in parts {
            let off = sigma.len();
            sigma.extend(p.sigma.iter().map(|x| x + off));
            tau.extend(p.tau.iter().map(|x| x + off));
            positive.extend_from_slice(&p.positive);
        }
        Prediagram { sigma, tau, positive }
    }

    /// The image under the relabelling `e ↦ map[e]`.
    pub fn relabel(&self, map: &[usize]) -> Prediagram {
        let n = self.len();
        let mut sigma = vec![0; n];
        let mut tau = vec![0; n];
        let mut positive = vec![false; n];
        for e in 0..n {
            sigma[map[e]] = map[self.sigma[e]];
            tau[map[e]] = map[self.tau[e]];
            positive[map[e]] = self.positive[e];
        }
        Prediagram { sigma, tau, positive }
    }

    /// Text record `N; sigma=...; tau=...; pos={...}`.
    pub fn to_text(&self) -> String {
        let sigma: Vec<String> = self.sigma.iter().map(|x| x.to_string()).collect();
        let tau: String = perm::cycles(&self.tau)
            .iter()
            .map(|c| format!("({},{})", c[0], c[1]))
            .collect();
        let pos: Vec<String> = self.positive_edges().iter().map(|x| x.to_string()).collect();
        format!("{}; sigma={}; tau={}; pos={{{}}}", self.len(), sigma.join(","), tau, pos.join(","))
    }

    pub fn parse(s: &str) -> Result<Prediagram, ParseError> {
        let fields = record_fields(s)?;
        let n: usize = fields
            .head
            .trim()
            .parse()
            .map_err(|_| ParseError::new(format!("bad edge count `{}`", fields.head)))?;
        let sigma = parse_list(fields.get("sigma")?)?;
        let tau_pairs = parse_pairs(fields.get("tau")?)?;
        let mut tau = vec![usize::MAX; n];
        for (a, b) in tau_pairs {
            if a >= n || b >= n {
                return Err(ParseError::new("tau entry out of range"));
            }
            tau[a] = b;
            tau[b] = a;
        }
        if tau.contains(&usize::MAX) {
            return Err(ParseError::new("tau does not cover every edge"));
        }
        let pos_str = fields.get("pos")?.trim();
        let pos_body = pos_str
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ParseError::new("pos must be a {set}"))?;
        let pos = parse_list(pos_body)?;
        if sigma.len() != n {
            return Err(ParseError::new("sigma length differs from N"));
        }
        Prediagram::validate(sigma, tau, &pos).map_err(|e| ParseError::new(e.to_string()))
    }
}

impl fmt::Debug for Prediagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prediagram({})", self.to_text())
    }
}

pub(crate) struct RecordFields {
    pub head: String,
    pub items: Vec<(String, String)>,
}

impl RecordFields {
    pub fn get(&self, key: &str) -> Result<&str, ParseError> {
        self.items
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| ParseError::new(format!("missing field `{}`", key)))
    }
}

pub(crate) fn record_fields(s: &str) -> Result<RecordFields, ParseError> {
    let mut parts = s.split(';');
    let head = parts.next().unwrap_or("").trim().to_string();
    let mut items = Vec::new();
    for p in parts {
        let p = p.trim();
        if p.is_empty() {
            continue;
        }
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| ParseError::new(format!("field `{}` lacks `=`", p)))?;
        items.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(RecordFields { head, items })
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<usize>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| ParseError::new(format!("bad index `{}`", t))))
        .collect()
}

/// Parses `(a,b)(c,d)...`.
pub(crate) fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut out = Vec::new();
    for part in s.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let body = part
            .strip_prefix('(')
            .ok_or_else(|| ParseError::new(format!("bad pair `{}`", part)))?;
        let v = parse_list(body)?;
        if v.len() != 2 {
            return Err(ParseError::new(format!("bad pair `{}`", part)));
        }
        out.push((v[0], v[1]));
    }
    Ok(out)
}

/// Sorted set helper for tests and callers.
pub fn edge_set(edges: &[usize]) -> BTreeSet<usize> {
    edges.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> Prediagram {
        Prediagram::validate(vec![1, 2, 3, 4, 5, 0], vec![3, 4, 5, 0, 1, 2], &[0, 2, 4]).unwrap()
    }

    #[test]
    fn validates_basic_example() {
        let p = hexagon();
        assert!(p.is_alternating());
        assert!(p.is_stable());
        assert_eq!(p.component_edge_sets().len(), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let sigma = vec![1, 2, 3, 4, 5, 0];
        assert_eq!(
            Prediagram::validate(sigma.clone(), vec![0, 2, 1, 4, 3, 5], &[1, 3]),
            Err(DiagramError::TauNotFixedPointFreeInvolution)
        );
        assert_eq!(
            Prediagram::validate(sigma.clone(), vec![1, 0, 3, 2, 5, 4], &[0, 1, 2]),
            Err(DiagramError::ThetaNotSection)
        );
        assert_eq!(
            Prediagram::validate(vec![0, 0, 1, 2, 3, 4], vec![1, 0, 3, 2, 5, 4], &[0, 2, 4]),
            Err(DiagramError::NotPermutation("sigma"))
        );
    }

    #[test]
    fn adjacent_positives_are_not_alternating() {
        let p = Prediagram::validate(vec![1, 2, 3, 4, 5, 0], vec![3, 4, 5, 0, 1, 2], &[0, 1, 2])
            .unwrap();
        assert!(!p.is_alternating());
    }

    #[test]
    fn tau_across_orbits_is_unstable() {
        let p = Prediagram::validate(vec![1, 0, 3, 2], vec![2, 3, 0, 1], &[0, 3]).unwrap();
        assert!(!p.is_stable());
    }

    #[test]
    fn disjoint_union_splits_back() {
        let p = hexagon();
        let u = Prediagram::disjoint_union(&[p.clone(), p.clone()]);
        let comps = u.connected_components();
        assert_eq!(comps, vec![p.clone(), p]);
    }

    #[test]
    fn reverse_is_involution() {
        let p = hexagon();
        assert_eq!(p.reverse().reverse(), p);
    }

    #[test]
    fn text_round_trip() {
        let p = hexagon();
        let s = p.to_text();
        assert_eq!(s, "6; sigma=1,2,3,4,5,0; tau=(0,3)(1,4)(2,5); pos={0,2,4}");
        assert_eq!(Prediagram::parse(&s).unwrap(), p);
    }
}
