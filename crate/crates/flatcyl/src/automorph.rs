//! Translation isomorphisms between horizontally periodic surfaces and
//! involutions with derivative `-Id`.

use crate::cylinder::{minus, plus, CylinderSurface};
use crate::iso;
use crate::quad::QuadNum;

/// A translation isomorphism, as maps on saddle connections and cylinders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceMap {
    pub saddle_connections: Vec<usize>,
    pub cylinders: Vec<usize>,
}

fn offset_in(word: &[usize], s: usize, lengths: &[QuadNum]) -> Option<QuadNum> {
    let k = word.iter().position(|&x| x == s)?;
    Some(word[..k].iter().fold(QuadNum::zero(), |acc, &x| acc + lengths[x].clone()))
}

/// All translation isomorphisms `a → b`.
pub fn translation_isomorphisms(a: &CylinderSurface, b: &CylinderSurface) -> Vec<SurfaceMap> {
    if a.saddle_connection_count() != b.saddle_connection_count() || a.cylinder_count() != b.cylinder_count() {
        return Vec::new();
    }
    let da = a.horizontal_paired();
    let db = b.horizontal_paired();
    let mut out = Vec::new();
    'iso: for phi in iso::paired_isomorphisms(&da, &db) {
        let sc: Vec<usize> = (0..a.saddle_connection_count()).map(|s| phi[plus(s)] / 2).collect();
        if (0..sc.len()).any(|s| a.lengths()[s] != b.lengths()[sc[s]]) {
            continue;
        }
        let mut cyl = Vec::new();
        for ca in a.cylinders() {
            let Some(j) = b.cylinders().iter().position(|cb| cb.top.contains(&sc[ca.top[0]])) else {
                continue 'iso;
            };
            let cb = &b.cylinders()[j];
            if ca.height != cb.height {
                continue 'iso;
            }
            let o_top = offset_in(&cb.top, sc[ca.top[0]], b.lengths());
            let o_bot = offset_in(&cb.bottom, sc[ca.bottom[0]], b.lengths());
            let (Some(o_top), Some(o_bot)) = (o_top, o_bot) else {
                continue 'iso;
            };
            let lhs = (&ca.twist + &o_bot).rem_euclid(&ca.circumference);
            let rhs = (&cb.twist + &o_top).rem_euclid(&cb.circumference);
            if lhs != rhs {
                continue 'iso;
            }
            cyl.push(j);
        }
        out.push(SurfaceMap { saddle_connections: sc, cylinders: cyl });
    }
    out
}

pub fn translation_isomorphic(a: &CylinderSurface, b: &CylinderSurface) -> bool {
    !translation_isomorphisms(a, b).is_empty()
}

/// A flat involution with derivative `-Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegInvolution {
    /// Saddle connection `s` is carried onto `saddle_connections[s]`,
    /// with reversed direction.
    pub saddle_connections: Vec<usize>,
    pub cylinders: Vec<usize>,
    pub singularities: Vec<usize>,
    pub fixed_points: usize,
    pub quotient_genus: usize,
}

/// Genus from the Euler characteristic `V - #saddle connections`.
pub fn genus(s: &CylinderSurface) -> usize {
    let v = s.singularities().len() as i64;
    let chi = v - s.saddle_connection_count() as i64;
    ((2 - chi) / 2) as usize
}

/// Every involution of `s` with derivative `-Id`.
pub fn neg_involutions(s: &CylinderSurface) -> Vec<NegInvolution> {
    let r = s.rotate_pi();
    let sing = s.singularity_of_edges();
    let nsing = s.singularities().len();
    let g = genus(s);
    let mut out = Vec::new();
    for m in translation_isomorphisms(&r, s) {
        let sc = &m.saddle_connections;
        let cy = &m.cylinders;
        if (0..sc.len()).any(|x| sc[sc[x]] != x) || (0..cy.len()).any(|x| cy[cy[x]] != x) {
            continue;
        }
        let mut sing_map = vec![usize::MAX; nsing];
        for x in 0..sc.len() {
            sing_map[sing[plus(x)]] = sing[minus(sc[x])];
        }
        let fixed = 2 * (0..cy.len()).filter(|&i| cy[i] == i).count()
            + (0..sc.len()).filter(|&x| sc[x] == x).count()
            + (0..nsing).filter(|&v| sing_map[v] == v).count();
        let num = 2 * g as i64 + 2 - fixed as i64;
        if num < 0 || num % 4 != 0 {
            continue;
        }
        out.push(NegInvolution {
            saddle_connections: sc.clone(),
            cylinders: cy.clone(),
            singularities: sing_map,
            fixed_points: fixed,
            quotient_genus: (num / 4) as usize,
        });
    }
    out
}

/// One `-Id` involution, preferring the smallest quotient genus.
pub fn detect_neg_involution(s: &CylinderSurface) -> Option<NegInvolution> {
    neg_involutions(s).into_iter().min_by_key(|i| i.quotient_genus)
}

/// True iff some `-Id` involution has a genus-zero quotient.
pub fn is_hyperelliptic(s: &CylinderSurface) -> bool {
    neg_involutions(s).iter().any(|i| i.quotient_genus == 0)
}
