//! Isomorphisms and canonical keys of prediagrams and diagrams.
//!
//! A relabelling is produced by breadth-first search from a start edge,
//! pushing `σ(e)` then `τ(e)`. Since σ and τ generate a transitive action on
//! each connected component, any isomorphism carries the search from `s` to
//! the search from its image, so comparing all start choices is complete.

use crate::diagram::Prediagram;
use crate::error::DiagramError;
use crate::mintype::{minimal_type, MinimalType};
use crate::perm;
use crate::quad::QuadNum;
use crate::separatrix::{PairedDiagram, SeparatrixDiagram};

/// Canonical encoding of a prediagram with optional pairing and metric.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub positive: Vec<bool>,
    pub pairs: Vec<(usize, usize)>,
    pub lengths: Vec<QuadNum>,
}

/// Old-to-new labels from searching the components in the given order,
/// each from its start edge.
fn bfs_labelling(p: &Prediagram, starts: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for &s in starts {
        let mut queue = vec![s];
        label[s] = next;
        next += 1;
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            for f in [p.sigma()[e], p.tau()[e]] {
                if label[f] == usize::MAX {
                    label[f] = next;
                    next += 1;
                    queue.push(f);
                }
            }
            i += 1;
        }
    }
    label
}

/// Every choice of component order and start edge, as start lists.
fn start_choices(p: &Prediagram) -> Vec<Vec<usize>> {
    let comps = p.component_edge_sets();
    let mut out = Vec::new();
    for order in perm::all_permutations(comps.len()) {
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for &c in &order {
            let mut grown = Vec::new();
            for prefix in &acc {
                for &s in &comps[c] {
                    let mut v = prefix.clone();
                    v.push(s);
                    grown.push(v);
                }
            }
            acc = grown;
        }
        out.extend(acc);
    }
    out
}

fn encode(
    p: &Prediagram,
    label: &[usize],
    paired: Option<&PairedDiagram>,
    lengths: Option<&[QuadNum]>,
) -> CanonicalKey {
    let q = p.relabel(label);
    let pairs = match paired {
        Some(d) => {
            let mut v: Vec<(usize, usize)> = (0..d.cylinder_count())
                .map(|i| {
                    let (top, bottom) = d.cylinder(i);
                    let a = top.iter().map(|&e| label[e]).min().unwrap();
                    let b = bottom.iter().map(|&e| label[e]).min().unwrap();
                    (a, b)
                })
                .collect();
            v.sort_unstable();
            v
        }
        None => Vec::new(),
    };
    let lengths = match lengths {
        Some(l) => {
            let mut v = vec![QuadNum::zero(); l.len()];
            for (e, x) in l.iter().enumerate() {
                v[label[e]] = x.clone();
            }
            v
        }
        None => Vec::new(),
    };
    CanonicalKey {
        sigma: q.sigma().to_vec(),
        tau: q.tau().to_vec(),
        positive: q.positive_mask().to_vec(),
        pairs,
        lengths,
    }
}

fn min_key(p: &Prediagram, paired: Option<&PairedDiagram>, lengths: Option<&[QuadNum]>) -> CanonicalKey {
    start_choices(p)
        .iter()
        .map(|s| encode(p, &bfs_labelling(p, s), paired, lengths))
        .min()
        .expect("at least one labelling")
}

pub fn prediagram_key(p: &Prediagram) -> CanonicalKey {
    min_key(p, None, None)
}

pub fn paired_key(d: &PairedDiagram) -> CanonicalKey {
    min_key(d.prediagram(), Some(d), None)
}

pub fn metric_key(d: &SeparatrixDiagram) -> CanonicalKey {
    min_key(d.prediagram(), Some(d.paired()), Some(d.lengths()))
}

/// Key of the class of `d` modulo rotation by π.
pub fn paired_key_mod_reversal(d: &PairedDiagram) -> CanonicalKey {
    paired_key(d).min(paired_key(&d.reverse()))
}

/// All isomorphisms `a → b` of the underlying prediagrams, as maps on edges.
pub fn prediagram_isomorphisms(a: &Prediagram, b: &Prediagram) -> Vec<Vec<usize>> {
    if a.len() != b.len() {
        return Vec::new();
    }
    let comps = a.component_edge_sets();
    let starts_a: Vec<usize> = comps.iter().map(|c| c[0]).collect();
    let la = bfs_labelling(a, &starts_a);
    let ka = a.relabel(&la);
    let mut out = Vec::new();
    for s in start_choices(b) {
        let lb = bfs_labelling(b, &s);
        if b.relabel(&lb) == ka {
            let lb_inv = perm::inverse(&lb);
            out.push(la.iter().map(|&x| lb_inv[x]).collect());
        }
    }
    out
}

/// Isomorphisms of paired diagrams: prediagram isomorphisms that carry the
/// pairing of `a` to that of `b`.
pub fn paired_isomorphisms(a: &PairedDiagram, b: &PairedDiagram) -> Vec<Vec<usize>> {
    prediagram_isomorphisms(a.prediagram(), b.prediagram())
        .into_iter()
        .filter(|phi| respects_pairing(a, b, phi))
        .collect()
}

fn respects_pairing(a: &PairedDiagram, b: &PairedDiagram, phi: &[usize]) -> bool {
    let cb = b.components();
    (0..a.cylinder_count()).all(|i| {
        let (top, bottom) = a.cylinder(i);
        let (_, it) = cb.index_of(phi[top[0]]).expect("edge in a component");
        let (_, ib) = cb.index_of(phi[bottom[0]]).expect("edge in a component");
        b.pairing()[it] == ib
    })
}

/// Multiset of component types of a stable alternating prediagram.
pub fn type_multiset(p: &Prediagram) -> Result<Vec<MinimalType>, DiagramError> {
    let mut v = p
        .connected_components()
        .iter()
        .map(minimal_type)
        .collect::<Result<Vec<_>, _>>()?;
    v.sort();
    Ok(v)
}

/// Isomorphism test for prediagrams. Stable alternating prediagrams are
/// compared by their multisets of component types.
pub fn prediagrams_isomorphic(a: &Prediagram, b: &Prediagram) -> bool {
    if let (Ok(ta), Ok(tb)) = (type_multiset(a), type_multiset(b)) {
        return ta == tb;
    }
    !prediagram_isomorphisms(a, b).is_empty()
}

pub fn paired_isomorphic(a: &PairedDiagram, b: &PairedDiagram) -> bool {
    paired_key(a) == paired_key(b)
}

pub fn metric_isomorphic(a: &SeparatrixDiagram, b: &SeparatrixDiagram) -> bool {
    metric_key(a) == metric_key(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mintype::component_from_permutation;

    #[test]
    fn relabelled_prediagrams_share_a_key() {
        let p = component_from_permutation(&[0, 3, 1, 2]);
        let map = vec![5, 3, 7, 1, 0, 2, 6, 4];
        let q = p.relabel(&map);
        assert_eq!(prediagram_key(&p), prediagram_key(&q));
        assert!(prediagrams_isomorphic(&p, &q));
        let isos = prediagram_isomorphisms(&p, &q);
        assert!(isos.contains(&map));
        for phi in isos {
            assert_eq!(p.relabel(&phi), q);
        }
    }

    #[test]
    fn different_types_differ() {
        let a = component_from_permutation(&[0, 1, 2]);
        let b = component_from_permutation(&[1, 2, 0]);
        assert_ne!(prediagram_key(&a), prediagram_key(&b));
        assert!(!prediagrams_isomorphic(&a, &b));
    }

    #[test]
    fn automorphisms_of_rotation_component() {
        // (123) is invariant under every shift of the base edge.
        let p = component_from_permutation(&[1, 2, 0]);
        assert_eq!(prediagram_isomorphisms(&p, &p).len(), 3);
    }
}
