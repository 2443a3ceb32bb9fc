//! Enumeration of stable alternating prediagrams, pairings and feasible
//! metrics for a singularity profile, and the resulting classification.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automorph;
use crate::cylinder::{build_surface, CylinderSurface};
use crate::diagram::Prediagram;
use crate::error::{DiagramError, EnumerationError, ParseError};
use crate::feasibility::{self, Feasibility};
use crate::iso::{self, CanonicalKey};
use crate::linalg::Matrix;
use crate::mintype::{enumerate_types, MinimalType};
use crate::perm;
use crate::quad::QuadNum;
use crate::separatrix::{PairedDiagram, SeparatrixDiagram};
use crate::spin::{self, Parity};

/// Orders `k_i` of the singularities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityProfile {
    kappa: Vec<usize>,
}

impl SingularityProfile {
    pub fn new(kappa: Vec<usize>) -> Result<SingularityProfile, EnumerationError> {
        if kappa.is_empty() || kappa.contains(&0) {
            return Err(EnumerationError::UnsupportedProfile("orders must be positive".into()));
        }
        if kappa.iter().sum::<usize>() % 2 != 0 {
            return Err(EnumerationError::UnsupportedProfile("sum of orders must be even".into()));
        }
        Ok(SingularityProfile { kappa })
    }

    pub fn kappa(&self) -> &[usize] {
        &self.kappa
    }

    pub fn genus(&self) -> usize {
        self.kappa.iter().sum::<usize>() / 2 + 1
    }

    pub fn edge_count(&self) -> usize {
        self.kappa.iter().map(|k| 2 * (k + 1)).sum()
    }
}

impl fmt::Display for SingularityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.kappa.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for SingularityProfile {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kappa = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| ParseError::new(format!("bad order `{}`", t))))
            .collect::<Result<Vec<_>, _>>()?;
        SingularityProfile::new(kappa).map_err(|e| ParseError::new(e.to_string()))
    }
}

/// A prediagram assembled from one minimal component per singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedPrediagram {
    pub types: Vec<MinimalType>,
    pub prediagram: Prediagram,
}

impl TypedPrediagram {
    pub fn from_types(types: Vec<MinimalType>) -> TypedPrediagram {
        let parts: Vec<Prediagram> = types.iter().map(|t| t.component()).collect();
        TypedPrediagram { prediagram: Prediagram::disjoint_union(&parts), types }
    }

    /// Types written in cycle notation, e.g. `[(1)(243), (1)(2)]`.
    pub fn type_label(&self) -> String {
        type_label(&self.types)
    }
}

pub fn type_label(types: &[MinimalType]) -> String {
    let parts: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// All stable alternating prediagrams with one minimal component per
/// singularity and balanced cylinder-component counts, up to isomorphism.
pub fn enumerate_typed(profile: &SingularityProfile) -> Vec<TypedPrediagram> {
    let per_sing: Vec<Vec<MinimalType>> =
        profile.kappa.iter().map(|&k| enumerate_types(k + 1, false)).collect();
    let mut out = Vec::new();
    let mut choice = Vec::new();
    choose_types(profile.kappa(), &per_sing, 0, &mut choice, &mut out);
    out.retain(|t: &TypedPrediagram| {
        let (p, n) = t.types.iter().fold((0, 0), |(p, n), ty| {
            let (a, b) = ty.component_counts();
            (p + a, n + b)
        });
        p == n
    });
    out
}

fn choose_types(
    kappa: &[usize],
    per_sing: &[Vec<MinimalType>],
    i: usize,
    choice: &mut Vec<usize>,
    out: &mut Vec<TypedPrediagram>,
) {
    if i == kappa.len() {
        let types = choice.iter().enumerate().map(|(j, &c)| per_sing[j][c].clone()).collect();
        out.push(TypedPrediagram::from_types(types));
        return;
    }
    // Singularities of equal order are interchangeable: keep choices sorted.
    let start = if i > 0 && kappa[i] == kappa[i - 1] { choice[i - 1] } else { 0 };
    for c in start..per_sing[i].len() {
        choice.push(c);
        choose_types(kappa, per_sing, i + 1, choice, out);
        choice.pop();
    }
}

pub fn enumerate_prediagrams(
    profile: &SingularityProfile,
    stable: bool,
) -> Result<Vec<Prediagram>, EnumerationError> {
    if !stable {
        return Err(EnumerationError::UnsupportedProfile("only stable prediagrams are enumerated".into()));
    }
    Ok(enumerate_typed(profile).into_iter().map(|t| t.prediagram).collect())
}

/// All bijections from positive to negative components, lexicographically.
pub fn enumerate_pairings(p: &Prediagram) -> Result<Vec<Vec<usize>>, DiagramError> {
    let comps = p.cylinder_components()?;
    let (a, b) = (comps.positive.len(), comps.negative.len());
    if a != b {
        return Err(DiagramError::UnequalComponentCounts(a, b));
    }
    Ok(perm::all_permutations(a))
}

pub fn surface_connected(p: &Prediagram, pairing: &[usize]) -> Result<bool, DiagramError> {
    Ok(PairedDiagram::new(p.clone(), pairing.to_vec())?.is_connected())
}

/// The equalities `l̂(top) = l̂(bottom)`, one row per cylinder, over one
/// variable per positive edge (listed in the returned vector).
pub fn metric_system(d: &PairedDiagram) -> (Matrix, Vec<usize>) {
    let p = d.prediagram();
    let vars = p.positive_edges();
    let mut var_of = vec![0; p.len()];
    for (i, &e) in vars.iter().enumerate() {
        var_of[e] = i;
        var_of[p.tau()[e]] = i;
    }
    let mut rows = Vec::new();
    for c in 0..d.cylinder_count() {
        let mut row = vec![BigRational::zero(); vars.len()];
        let (top, bottom) = d.cylinder(c);
        for &e in top {
            row[var_of[e]] += BigRational::one();
        }
        for &e in bottom {
            row[var_of[e]] -= BigRational::one();
        }
        rows.push(row);
    }
    (rows, vars)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricVerdict {
    /// Integer length per positive edge, in the order of `positive_edges`.
    Feasible(Vec<BigInt>),
    /// One coefficient per cylinder equation.
    Infeasible(Vec<BigRational>),
    Disconnected,
}

impl MetricVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, MetricVerdict::Feasible(_))
    }
}

pub fn metric_feasible(d: &PairedDiagram) -> MetricVerdict {
    if !d.is_connected() {
        return MetricVerdict::Disconnected;
    }
    let (a, vars) = metric_system(d);
    match feasibility::positive_kernel(&a, vars.len()) {
        Feasibility::Feasible(x) => MetricVerdict::Feasible(x),
        Feasibility::Infeasible(z) => MetricVerdict::Infeasible(z),
    }
}

/// The diagram with the given integer lengths on positive edges.
pub fn with_lengths(d: &PairedDiagram, lengths: &[BigInt]) -> SeparatrixDiagram {
    let l: Vec<QuadNum> = lengths.iter().map(|x| QuadNum::from_rational(BigRational::from_integer(x.clone()))).collect();
    SeparatrixDiagram::from_positive_lengths(d.clone(), &l).expect("verified witness")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub quotient_minus_omega: bool,
    pub require_mixed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentLabel {
    Odd,
    Hyp,
    NonHypEven,
    NotApplicable,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentLabel::Odd => "odd",
            ComponentLabel::Hyp => "hyp",
            ComponentLabel::NonHypEven => "nonhyp-even",
            ComponentLabel::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationEntry {
    pub class_id: usize,
    pub types: Vec<MinimalType>,
    pub diagram: SeparatrixDiagram,
    pub mixed: Vec<bool>,
    pub component_label: Option<ComponentLabel>,
    pub key: CanonicalKey,
}

impl ClassificationEntry {
    pub fn paired(&self) -> &PairedDiagram {
        self.diagram.paired()
    }
}

/// Outcome of one pairing of one prediagram.
#[derive(Clone, Debug)]
pub struct PairingRecord {
    pub pairing: Vec<usize>,
    pub verdict: MetricVerdict,
}

#[derive(Clone, Debug)]
pub struct TypeTally {
    pub types: Vec<MinimalType>,
    pub records: Vec<PairingRecord>,
    /// Classes first found on this prediagram.
    pub classes: usize,
}

impl TypeTally {
    pub fn count(&self, f: impl Fn(&MetricVerdict) -> bool) -> usize {
        self.records.iter().filter(|r| f(&r.verdict)).count()
    }

    pub fn feasible(&self) -> usize {
        self.count(|v| matches!(v, MetricVerdict::Feasible(_)))
    }

    pub fn infeasible(&self) -> usize {
        self.count(|v| matches!(v, MetricVerdict::Infeasible(_)))
    }

    pub fn disconnected(&self) -> usize {
        self.count(|v| matches!(v, MetricVerdict::Disconnected))
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub profile: SingularityProfile,
    pub options: ClassifyOptions,
    pub entries: Vec<ClassificationEntry>,
    pub tallies: Vec<TypeTally>,
}

/// Evaluates every pairing of one prediagram.
pub fn evaluate_prediagram(p: &Prediagram) -> Vec<PairingRecord> {
    enumerate_pairings(p)
        .unwrap_or_default()
        .into_iter()
        .map(|pairing| {
            let d = PairedDiagram::new(p.clone(), pairing.clone()).expect("balanced prediagram");
            PairingRecord { verdict: metric_feasible(&d), pairing }
        })
        .collect()
}

/// Key of the class of `d` at the metric-free level.
pub fn class_key(d: &PairedDiagram, quotient_minus_omega: bool) -> CanonicalKey {
    if quotient_minus_omega {
        iso::paired_key_mod_reversal(d)
    } else {
        iso::paired_key(d)
    }
}

pub fn classify_stratum(
    profile: &SingularityProfile,
    options: ClassifyOptions,
) -> Result<Classification, EnumerationError> {
    let typed = enumerate_typed(profile);
    let evaluated: Vec<(TypedPrediagram, Vec<PairingRecord>)> = std::thread::scope(|s| {
        let handles: Vec<_> = typed
            .into_iter()
            .map(|t| s.spawn(move || {
                let r = evaluate_prediagram(&t.prediagram);
                (t, r)
            }))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut classes: BTreeMap<CanonicalKey, (Vec<MinimalType>, SeparatrixDiagram)> = BTreeMap::new();
    let mut tallies = Vec::new();
    for (t, records) in evaluated {
        let mut new_classes = 0;
        for r in &records {
            let MetricVerdict::Feasible(x) = &r.verdict else {
                continue;
            };
            let d = PairedDiagram::new(t.prediagram.clone(), r.pairing.clone()).expect("valid pairing");
            if options.require_mixed && !d.mixed_flags().iter().any(|&m| m) {
                continue;
            }
            let key = class_key(&d, options.quotient_minus_omega);
            classes.entry(key).or_insert_with(|| {
                new_classes += 1;
                (t.types.clone(), with_lengths(&d, x))
            });
        }
        tallies.push(TypeTally { types: t.types, records, classes: new_classes });
    }
    let entries = classes
        .into_iter()
        .enumerate()
        .map(|(class_id, (key, (types, diagram)))| ClassificationEntry {
            class_id,
            mixed: diagram.paired().mixed_flags(),
            types,
            diagram,
            component_label: None,
            key,
        })
        .collect();
    Ok(Classification { profile: profile.clone(), options, entries, tallies })
}

/// Component of the surface built on `d` with unit heights and twists
/// `1/3, 1/5, …`, generic enough to avoid accidental symmetries.
pub fn component_label(d: &SeparatrixDiagram) -> ComponentLabel {
    let m = d.paired().cylinder_count();
    let heights = vec![QuadNum::one(); m];
    let twists: Vec<QuadNum> = (0..m).map(|i| QuadNum::from_frac(1, 2 * i as i64 + 3)).collect();
    let Ok(s) = build_surface(d, &heights, &twists) else {
        return ComponentLabel::NotApplicable;
    };
    surface_component(&s)
}

/// Odd spin parity, or even parity with a genus-zero `-Id` involution that
/// permutes the singularities without fixed ones (when there are two), or
/// neither.
pub fn surface_component(s: &CylinderSurface) -> ComponentLabel {
    match spin::spin_parity(s) {
        Ok(Parity::Odd) => ComponentLabel::Odd,
        Ok(Parity::Even) => {
            let n = s.singularities().len();
            let hyp = automorph::neg_involutions(s)
                .iter()
                .any(|i| i.quotient_genus == 0 && (n == 1 || (0..n).all(|v| i.singularities[v] != v)));
            if hyp {
                ComponentLabel::Hyp
            } else {
                ComponentLabel::NonHypEven
            }
        }
        Err(_) => ComponentLabel::NotApplicable,
    }
}

/// Fills in `component_label` on every entry.
pub fn label_components(c: &mut Classification) {
    for e in &mut c.entries {
        e.component_label = Some(component_label(&e.diagram));
    }
}

/// Type multiset modulo reversal of every component at once.
pub fn types_mod_reversal(types: &[MinimalType]) -> Vec<MinimalType> {
    let mut a = types.to_vec();
    a.sort();
    let mut b: Vec<MinimalType> = types.iter().map(|t| t.reversed()).collect();
    b.sort();
    a.min(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_parsing() {
        let p: SingularityProfile = "2,2".parse().unwrap();
        assert_eq!(p.genus(), 3);
        assert_eq!(p.edge_count(), 12);
        assert!("2,1".parse::<SingularityProfile>().is_err());
    }

    #[test]
    fn unbalanced_types_are_dropped() {
        let p: SingularityProfile = "2".parse().unwrap();
        // Only (123) and (12)(3) have balanced counts on their own.
        let t = enumerate_typed(&p);
        assert!(t.iter().all(|t| {
            let (a, b) = t.types[0].component_counts();
            a == b
        }));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn non_stable_mode_is_rejected() {
        let p: SingularityProfile = "2,2".parse().unwrap();
        assert!(enumerate_prediagrams(&p, false).is_err());
    }
}
