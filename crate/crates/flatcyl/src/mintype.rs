//! Types of minimal stable alternating prediagrams.
//!
//! Fix a positive edge `x` of a minimal component with `2n` edges. Positive
//! edges are `σ^{2k}(x)` and `τ(σ^{2k}(x)) = σ^{2f(k)+1}(x)` for a
//! permutation `f` of `0..n`. Changing the base edge conjugates `f` by the
//! cyclic shift `c(k) = k + 1`, so the type is `f` up to that conjugation.

use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::Prediagram;
use crate::error::DiagramError;
use crate::perm;

/// A canonical representative of a conjugacy class under `⟨c_n⟩`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalType {
    f: Vec<usize>,
}

/// `c^k ∘ f ∘ c^{-k}` in one-line notation.
pub fn conjugate_by_shift(f: &[usize], k: usize) -> Vec<usize> {
    let n = f.len();
    let mut g = vec![0; n];
    for i in 0..n {
        g[(i + k) % n] = (f[i] + k) % n;
    }
    g
}

/// Lexicographic minimum over the cyclic conjugates.
pub fn canonical_form(f: &[usize]) -> Vec<usize> {
    (0..f.len().max(1))
        .map(|k| conjugate_by_shift(f, k))
        .min()
        .unwrap_or_default()
}

/// `(f ∘ c)^{-1}`, the permutation describing the reversed orientation.
pub fn reversed_permutation(f: &[usize]) -> Vec<usize> {
    let n = f.len();
    let fc: Vec<usize> = (0..n).map(|i| f[(i + 1) % n]).collect();
    perm::inverse(&fc)
}

impl MinimalType {
    pub fn from_permutation(f: &[usize]) -> MinimalType {
        assert!(perm::is_permutation(f), "not a permutation");
        MinimalType { f: canonical_form(f) }
    }

    /// Parses cycle notation on `1..=n`, e.g. `(1)(243)`.
    pub fn from_cycles(s: &str, n: usize) -> Option<MinimalType> {
        perm::parse_cycles(s, n).map(|f| MinimalType::from_permutation(&f))
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// Singularity order `n - 1`.
    pub fn order(&self) -> usize {
        self.f.len() - 1
    }

    pub fn permutation(&self) -> &[usize] {
        &self.f
    }

    /// Type of the reversed orientation.
    pub fn reversed(&self) -> MinimalType {
        MinimalType::from_permutation(&reversed_permutation(&self.f))
    }

    /// Representative of the class `{f, reversed(f)}`.
    pub fn up_to_reversal(&self) -> MinimalType {
        let r = self.reversed();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    /// The standard component: `σ = (0 1 ... 2n-1)`, even edges positive.
    pub fn component(&self) -> Prediagram {
        component_from_permutation(&self.f)
    }

    /// Number of positive and negative cylinder components: the cycles of
    /// `c ∘ f` and of `f`.
    pub fn component_counts(&self) -> (usize, usize) {
        let n = self.n();
        let cf: Vec<usize> = self.f.iter().map(|&x| (x + 1) % n).collect();
        (perm::cycles(&cf).len(), perm::cycles(&self.f).len())
    }

    pub fn cycle_notation(&self) -> String {
        perm::cycle_string(&self.f)
    }
}

impl fmt::Display for MinimalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl fmt::Debug for MinimalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MinimalType{:?}", self.f)
    }
}

/// Minimal component built from any permutation `f` (not necessarily
/// canonical), with base edge 0.
pub fn component_from_permutation(f: &[usize]) -> Prediagram {
    let n = f.len();
    let m = 2 * n;
    let sigma: Vec<usize> = (0..m).map(|j| (j + 1) % m).collect();
    let mut tau = vec![0; m];
    for k in 0..n {
        tau[2 * k] = 2 * f[k] + 1;
        tau[2 * f[k] + 1] = 2 * k;
    }
    let positive: Vec<usize> = (0..n).map(|k| 2 * k).collect();
    Prediagram::validate(sigma, tau, &positive).expect("standard component is valid")
}

/// The permutation `f` read from base edge `x`.
pub fn permutation_from_base(p: &Prediagram, x: usize) -> Vec<usize> {
    let m = p.len();
    let mut pos = vec![usize::MAX; m];
    let mut e = x;
    for j in 0..m {
        pos[e] = j;
        e = p.sigma()[e];
    }
    let n = m / 2;
    let mut f = vec![0; n];
    let mut e = x;
    for fk in f.iter_mut() {
        *fk = (pos[p.tau()[e]] - 1) / 2;
        e = p.sigma()[p.sigma()[e]];
    }
    f
}

/// Type of a minimal stable alternating prediagram.
pub fn minimal_type(p: &Prediagram) -> Result<MinimalType, DiagramError> {
    if p.component_edge_sets().len() != 1 {
        return Err(DiagramError::NotMinimal);
    }
    if !p.is_stable() {
        return Err(DiagramError::NotStable);
    }
    if !p.is_alternating() {
        return Err(DiagramError::NotAlternating);
    }
    let x = p.positive_edges()[0];
    Ok(MinimalType::from_permutation(&permutation_from_base(p, x)))
}

/// All types on `n` symbols, optionally one per reversal class.
pub fn enumerate_types(n: usize, quotient_by_reversal: bool) -> Vec<MinimalType> {
    let mut set = BTreeSet::new();
    for f in perm::all_permutations(n) {
        let t = MinimalType::from_permutation(&f);
        set.insert(if quotient_by_reversal { t.up_to_reversal() } else { t });
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_component_has_its_type() {
        for f in perm::all_permutations(4) {
            let t = MinimalType::from_permutation(&f);
            assert_eq!(minimal_type(&component_from_permutation(&f)).unwrap(), t);
        }
    }

    #[test]
    fn base_edge_independence() {
        for f in perm::all_permutations(4) {
            let p = component_from_permutation(&f);
            let t = minimal_type(&p).unwrap();
            for x in p.positive_edges() {
                assert_eq!(MinimalType::from_permutation(&permutation_from_base(&p, x)), t);
            }
        }
    }

    #[test]
    fn type_counts_small_n() {
        assert_eq!(enumerate_types(2, false).len(), 2);
        assert_eq!(enumerate_types(2, true).len(), 1);
        assert_eq!(enumerate_types(3, false).len(), 4);
        assert_eq!(enumerate_types(3, true).len(), 3);
        assert_eq!(enumerate_types(4, false).len(), 10);
        assert_eq!(enumerate_types(4, true).len(), 5);
    }

    #[test]
    fn component_counts_for_order_two() {
        let id = MinimalType::from_cycles("id", 3).unwrap();
        assert_eq!(id.component_counts(), (1, 3));
        assert_eq!(id.reversed().component_counts(), (3, 1));
        let c = MinimalType::from_cycles("(123)", 3).unwrap();
        assert_eq!(c.component_counts(), (1, 1));
        let t = MinimalType::from_cycles("(12)(3)", 3).unwrap();
        assert_eq!(t.component_counts(), (2, 2));
    }
}
