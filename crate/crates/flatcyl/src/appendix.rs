//! Reference surfaces for the cylinder decompositions of H(2,2) and H(3,1)
//! with a mixed cylinder, transcribed from the rectangle figures.
//!
//! Every cylinder has height 1. Saddle connections are numbered in the
//! order their letters are listed next to each constructor.

use std::fmt::Write;

use crate::cylinder::CylinderSurface;
use crate::enumeration::{
    classify_stratum, label_components, Classification, ClassifyOptions, ComponentLabel, SingularityProfile,
};
use crate::error::{EnumerationError, ParseError};
use crate::iso::{self, CanonicalKey};
use crate::quad::QuadNum;
use crate::separatrix::SeparatrixDiagram;

const GOLDEN_H22_ODD: &str = include_str!("../golden/h22_odd.txt");
const GOLDEN_H22_HYP: &str = include_str!("../golden/h22_hyp.txt");
const GOLDEN_H31: &str = include_str!("../golden/h31.txt");

fn q(n: i64) -> QuadNum {
    QuadNum::from_int(n)
}

fn f(n: i64, d: i64) -> QuadNum {
    QuadNum::from_frac(n, d)
}

/// `(twist, top, bottom)` per cylinder, all of height 1.
fn surface(lengths: Vec<QuadNum>, cyls: Vec<(QuadNum, Vec<usize>, Vec<usize>)>) -> CylinderSurface {
    let specs = cyls.into_iter().map(|(t, top, bottom)| (q(1), t, top, bottom)).collect();
    CylinderSurface::new(lengths, specs).expect("reference surface is valid")
}

fn untwisted(lengths: Vec<QuadNum>, cyls: Vec<(Vec<usize>, Vec<usize>)>) -> CylinderSurface {
    surface(lengths, cyls.into_iter().map(|(t, b)| (q(0), t, b)).collect())
}

/// Decomposition with cylinder words `E/AC`, `AX/BE`, `BF/X`, `C/F`.
/// Letters: A C X B E F.
pub fn h22_decomposition_a() -> CylinderSurface {
    untwisted(
        vec![f(3, 4), q(1), f(9, 4), f(5, 4), f(7, 4), q(1)],
        vec![(vec![4], vec![0, 1]), (vec![0, 2], vec![3, 4]), (vec![3, 5], vec![2]), (vec![1], vec![5])],
    )
}

/// Decomposition with cylinder words `X/E`, `DEF/AXB`, `A/D`, `B/F`.
/// Letters: A X B D E F.
pub fn h22_decomposition_b() -> CylinderSurface {
    untwisted(
        vec![q(1); 6],
        vec![(vec![1], vec![4]), (vec![3, 4, 5], vec![0, 1, 2]), (vec![0], vec![3]), (vec![2], vec![5])],
    )
}

/// Representatives of the four decompositions of H^odd(2,2).
pub fn h22_odd() -> Vec<CylinderSurface> {
    vec![
        // C B X A Y Z
        untwisted(
            vec![q(1), q(1), q(1), q(1), q(2), q(2)],
            vec![(vec![2], vec![0]), (vec![4], vec![1, 2]), (vec![3, 5], vec![3, 4]), (vec![1, 0], vec![5])],
        ),
        // A P Q R S T
        untwisted(
            vec![q(1); 6],
            vec![(vec![1, 2], vec![1, 0]), (vec![3], vec![2]), (vec![4, 5], vec![4, 3]), (vec![0], vec![5])],
        ),
        h22_decomposition_a(),
        h22_decomposition_b(),
    ]
}

/// Representatives of the three decompositions of H^hyp(2,2).
pub fn h22_hyp() -> Vec<CylinderSurface> {
    vec![
        // A P Q R B S
        untwisted(
            vec![q(1); 6],
            vec![(vec![1], vec![0]), (vec![0, 3], vec![1, 2]), (vec![2, 5], vec![3, 4]), (vec![4], vec![5])],
        ),
        // B V A W U Z
        untwisted(
            vec![f(3, 4), q(1), f(5, 4), f(5, 4), q(1), f(3, 4)],
            vec![(vec![1], vec![4]), (vec![3, 4, 5], vec![0, 1, 2]), (vec![2], vec![3]), (vec![0], vec![5])],
        ),
        // A B C D E X
        untwisted(
            vec![f(17, 20), f(23, 20), q(1), f(17, 20), f(23, 20), q(1)],
            vec![(vec![4, 3, 5], vec![0, 1, 2]), (vec![2, 1, 0], vec![5, 3, 4])],
        ),
    ]
}

/// Representatives of the seven decompositions of H(3,1) with a mixed
/// cylinder.
pub fn h31() -> Vec<CylinderSurface> {
    vec![
        // A E C Q B P
        untwisted(
            vec![q(1), q(1), q(1), q(2), q(1), q(1)],
            vec![(vec![1], vec![4]), (vec![0, 3], vec![0, 1, 2]), (vec![4, 5], vec![3]), (vec![2], vec![5])],
        ),
        // A E C Q B P
        untwisted(
            vec![q(1), q(1), q(1), q(2), q(1), q(1)],
            vec![(vec![1], vec![0]), (vec![0, 3], vec![4, 1, 2]), (vec![4, 5], vec![3]), (vec![2], vec![5])],
        ),
        // C E A B Q P
        untwisted(
            vec![q(1), q(1), q(1), q(1), q(2), q(1)],
            vec![(vec![1], vec![0]), (vec![4, 0], vec![2, 3, 1]), (vec![2, 5], vec![4]), (vec![3], vec![5])],
        ),
        // A B E Q C P
        untwisted(
            vec![q(1); 6],
            vec![(vec![0, 2], vec![0, 1]), (vec![3], vec![2]), (vec![1, 5], vec![3, 4]), (vec![4], vec![5])],
        ),
        // A B E C Q P
        untwisted(
            vec![q(1), q(1), q(2), q(1), q(2), q(1)],
            vec![(vec![2], vec![0, 1]), (vec![0, 4], vec![2, 3]), (vec![1, 5], vec![4]), (vec![3], vec![5])],
        ),
        // A E B C D Q
        untwisted(
            vec![q(1), q(1), q(1), f(17, 20), f(23, 20), q(3)],
            vec![(vec![1], vec![0]), (vec![0, 5], vec![1, 2, 3, 4]), (vec![2, 4, 3], vec![5])],
        ),
        // A B C D X Y
        surface(
            vec![q(1), q(1), q(1), q(1), q(2), q(2)],
            vec![
                (q(0), vec![4, 5], vec![0, 1, 2, 3]),
                (q(0), vec![0, 2], vec![4]),
                (f(1, 2), vec![1, 3], vec![5]),
            ],
        ),
    ]
}

/// One diagram of a bundled reference list.
#[derive(Clone, Debug)]
pub struct GoldenEntry {
    pub list: &'static str,
    /// 1-based position in its list.
    pub item: usize,
    pub label: ComponentLabel,
    pub diagram: SeparatrixDiagram,
}

impl GoldenEntry {
    pub fn key(&self) -> CanonicalKey {
        iso::paired_key_mod_reversal(self.diagram.paired())
    }
}

fn parse_golden(list: &'static str, text: &str, label: ComponentLabel) -> Result<Vec<GoldenEntry>, ParseError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(i, l)| Ok(GoldenEntry { list, item: i + 1, label, diagram: SeparatrixDiagram::parse(l)? }))
        .collect()
}

/// The bundled reference diagrams for `κ = (2,2)` or `(3,1)`.
pub fn golden(profile: &SingularityProfile) -> Result<Vec<GoldenEntry>, EnumerationError> {
    let parsed = match profile.kappa() {
        [2, 2] => parse_golden("h22_odd", GOLDEN_H22_ODD, ComponentLabel::Odd).and_then(|mut a| {
            a.extend(parse_golden("h22_hyp", GOLDEN_H22_HYP, ComponentLabel::Hyp)?);
            Ok(a)
        }),
        [3, 1] | [1, 3] => parse_golden("h31", GOLDEN_H31, ComponentLabel::NotApplicable),
        _ => return Err(EnumerationError::UnsupportedProfile(format!("no reference list for {}", profile))),
    };
    Ok(parsed.expect("bundled reference files parse"))
}

/// Comparison of a classification against the reference list.
#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub classification: Classification,
    pub golden: Vec<GoldenEntry>,
    /// `(golden index, class id)` for every reference found.
    pub matched: Vec<(usize, usize)>,
    pub missing: Vec<usize>,
    pub extra: Vec<usize>,
    /// Matched pairs whose component labels differ.
    pub mislabelled: Vec<(usize, usize)>,
}

impl AppendixReport {
    pub fn is_ok(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.mislabelled.is_empty()
    }

    /// `(label, computed, expected)` per component label present.
    pub fn component_counts(&self) -> Vec<(ComponentLabel, usize, usize)> {
        let mut labels: Vec<ComponentLabel> = self
            .classification
            .entries
            .iter()
            .filter_map(|e| e.component_label)
            .chain(self.golden.iter().map(|g| g.label))
            .collect();
        labels.sort();
        labels.dedup();
        labels
            .into_iter()
            .map(|l| {
                let computed = self.classification.entries.iter().filter(|e| e.component_label == Some(l)).count();
                let expected = self.golden.iter().filter(|g| g.label == l).count();
                (l, computed, expected)
            })
            .collect()
    }

    /// Summary line, counts and a diff (`-` reference only, `+` computed
    /// only, `~` label differs).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.classification.entries.len();
        if self.is_ok() {
            let _ = writeln!(out, "{} classes: OK", n);
        } else {
            let _ = writeln!(out, "{} classes, {} expected: MISMATCH", n, self.golden.len());
        }
        for (l, computed, expected) in self.component_counts() {
            let _ = writeln!(out, "{}: {} computed, {} expected", l, computed, expected);
        }
        for &g in &self.missing {
            let e = &self.golden[g];
            let _ = writeln!(out, "- {} item {}: {}", e.list, e.item, e.diagram.to_text());
        }
        for &c in &self.extra {
            let e = &self.classification.entries[c];
            let label = e.component_label.map(|l| l.to_string()).unwrap_or_default();
            let _ = writeln!(out, "+ class {} [{}]: {}", c, label, e.diagram.to_text());
        }
        for &(g, c) in &self.mislabelled {
            let e = &self.golden[g];
            let got = self.classification.entries[c].component_label.map(|l| l.to_string()).unwrap_or_default();
            let _ = writeln!(out, "~ {} item {} (class {}): expected {}, computed {}", e.list, e.item, c, e.label, got);
        }
        out
    }
}

/// Classifies `profile` modulo `-ω` with at least one mixed cylinder and
/// compares against the reference list.
pub fn verify_appendix(profile: &SingularityProfile) -> Result<AppendixReport, EnumerationError> {
    let golden = golden(profile)?;
    let options = ClassifyOptions { quotient_minus_omega: true, require_mixed: true };
    let mut classification = classify_stratum(profile, options)?;
    label_components(&mut classification);
    let mut matched = Vec::new();
    let mut missing = Vec::new();
    let mut mislabelled = Vec::new();
    for (g, entry) in golden.iter().enumerate() {
        let key = entry.key();
        match classification.entries.iter().position(|e| e.key == key) {
            Some(c) => {
                matched.push((g, c));
                if classification.entries[c].component_label != Some(entry.label) {
                    mislabelled.push((g, c));
                }
            }
            None => missing.push(g),
        }
    }
    let extra = (0..classification.entries.len()).filter(|c| !matched.iter().any(|m| m.1 == *c)).collect();
    Ok(AppendixReport { classification, golden, matched, missing, extra, mislabelled })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_surfaces_lie_in_their_strata() {
        for s in h22_odd().iter().chain(&h22_hyp()) {
            assert_eq!(s.stratum_signature().unwrap(), (vec![2, 2], 3));
        }
        for s in h31() {
            let (mut k, g) = s.stratum_signature().unwrap();
            k.sort();
            assert_eq!((k, g), (vec![1, 3], 3));
        }
    }

    #[test]
    fn golden_files_encode_the_reference_surfaces() {
        let h22 = golden(&SingularityProfile::new(vec![2, 2]).unwrap()).unwrap();
        let surfaces: Vec<CylinderSurface> = h22_odd().into_iter().chain(h22_hyp()).collect();
        assert_eq!(h22.len(), surfaces.len());
        for (g, s) in h22.iter().zip(&surfaces) {
            assert!(iso::metric_isomorphic(&g.diagram, &s.horizontal_diagram()));
        }
        let h31g = golden(&SingularityProfile::new(vec![3, 1]).unwrap()).unwrap();
        for (g, s) in h31g.iter().zip(&h31()) {
            assert!(iso::metric_isomorphic(&g.diagram, &s.horizontal_diagram()));
        }
    }
}
