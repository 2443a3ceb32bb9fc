//! Necessary conditions for a horizontally periodic surface with two
//! singularities to lie in a proper non-arithmetic rank-one invariant locus.
//!
//! Notation: `γ_i = 1/c_i`, `μ_i = h_i γ_i`, `u = (δ_i γ_i)`, and `d` is the
//! dimension of the rational span of the entries of `u`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cylinder::{mixed_structure, CylinderSurface, MixedStructure};
use crate::error::ConstraintError;
use crate::linalg::{self, Matrix};
use crate::quad::{common_discriminant, QuadNum};

/// Exact evidence for a violated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub message: String,
    /// Rational coefficients, one per cylinder (empty when not relevant).
    pub relation: Vec<BigRational>,
    /// The quantity that should vanish and does not.
    pub residue: QuadNum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Witness),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::NotApplicable(why) => write!(f, "not-applicable ({})", why),
            Verdict::Violated(w) => {
                write!(f, "violated: {}; residue={}", w.message, w.residue)?;
                if !w.relation.is_empty() {
                    let r: Vec<String> = w.relation.iter().map(|x| x.to_string()).collect();
                    write!(f, "; relation=[{}]", r.join(","))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommensurabilityPartition {
    /// Indices grouped by rational ratio, in order of first appearance.
    pub classes: Vec<Vec<usize>>,
    /// Basis of `{p ∈ Q^n : Σ p_i v_i = 0}`.
    pub relations: Vec<Vec<BigRational>>,
    /// Dimension of the rational span of the values.
    pub degree: usize,
}

/// The `2 × n` rational matrix of `(a, b)` coordinates.
fn coordinates(values: &[QuadNum]) -> Matrix {
    vec![
        values.iter().map(|v| v.rational_part().clone()).collect(),
        values.iter().map(|v| v.irrational_part().clone()).collect(),
    ]
}

fn discriminant_of(values: &[QuadNum]) -> Result<u64, ConstraintError> {
    common_discriminant(values).map_err(|(a, b)| ConstraintError::MixedDiscriminants(a, b))
}

/// Rational span dimension and relation basis of values that may vanish.
fn span(values: &[QuadNum]) -> Result<(usize, Vec<Vec<BigRational>>), ConstraintError> {
    discriminant_of(values)?;
    let m = coordinates(values);
    Ok((linalg::rank(&m, values.len()), linalg::kernel_basis(&m, values.len())))
}

pub fn commensurability(values: &[QuadNum]) -> Result<CommensurabilityPartition, ConstraintError> {
    discriminant_of(values)?;
    if let Some(i) = values.iter().position(|v| v.is_zero()) {
        return Err(ConstraintError::ZeroValue(i));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..values.len() {
        match classes.iter_mut().find(|c| (&values[c[0]] / &values[i]).is_rational()) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let (degree, relations) = span(values)?;
    Ok(CommensurabilityPartition { classes, relations, degree })
}

pub fn commensurable(a: &QuadNum, b: &QuadNum) -> bool {
    (a / b).is_rational()
}

/// `u`, `μ` and the rational structure of `u`.
#[derive(Clone, Debug)]
pub struct VSpace {
    pub u: Vec<QuadNum>,
    pub mu: Vec<QuadNum>,
    pub degree: usize,
    /// Basis of the rational relations among the entries of `u`.
    pub relations: Vec<Vec<BigRational>>,
    pub mixed: MixedStructure,
}

pub fn v_space(s: &CylinderSurface) -> Result<VSpace, ConstraintError> {
    let mixed = mixed_structure(s)?;
    let u = mixed.u(s);
    let mu = mixed.mu(s);
    let (degree, relations) = span(&u)?;
    Ok(VSpace { u, mu, degree, relations, mixed })
}

fn combine(p: &[BigRational], v: &[QuadNum]) -> QuadNum {
    p.iter()
        .zip(v)
        .filter(|(c, _)| !c.is_zero())
        .fold(QuadNum::zero(), |acc, (c, x)| acc + &QuadNum::from_rational(c.clone()) * x)
}

fn gamma(s: &CylinderSurface, i: usize) -> QuadNum {
    s.cylinders()[i].circumference.recip()
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

/// `d ≤ 2`, required of every horizontally periodic surface in a proper
/// rank-one locus.
pub fn check_rational_closure(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let v = v_space(s)?;
    if v.degree <= 2 {
        return Ok(Verdict::Holds);
    }
    Ok(Verdict::Violated(Witness {
        message: format!("the entries of u span a rational space of dimension {}", v.degree),
        relation: Vec::new(),
        residue: QuadNum::from_int(v.degree as i64),
    }))
}

/// When `d = 2`, every rational relation among the `δ_i γ_i` holds for the
/// moduli.
pub fn check_equation_propagation(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let v = v_space(s)?;
    if v.degree != 2 {
        return Ok(Verdict::NotApplicable(format!("d = {}", v.degree)));
    }
    for p in &v.relations {
        let r = combine(p, &v.mu);
        if !r.is_zero() {
            return Ok(Verdict::Violated(Witness {
                message: "a rational relation of u fails on the moduli".into(),
                relation: p.clone(),
                residue: r,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// With a non-mixed cylinder present, mixed circumferences are pairwise
/// commensurable.
pub fn check_notmixed(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let v = v_space(s)?;
    let m = s.cylinder_count();
    let Some(k) = (0..m).find(|&i| !v.mixed.is_mixed(i)) else {
        return Ok(Verdict::NotApplicable("every cylinder is mixed".into()));
    };
    let mixed: Vec<usize> = (0..m).filter(|&i| v.mixed.is_mixed(i)).collect();
    let c = s.circumferences();
    for (x, &i) in mixed.iter().enumerate() {
        for &j in &mixed[x + 1..] {
            if !commensurable(&c[i], &c[j]) {
                return Ok(Verdict::Violated(Witness {
                    message: format!(
                        "mixed cylinders {} and {} are incommensurable, so the relation δ_{}γ_{} = 0 forces μ_{} = 0",
                        i, j, k, k, k
                    ),
                    relation: unit(m, k),
                    residue: v.mu[k].clone(),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Clause (a): when `d = 2`, non-equivalent mixed cylinders are
/// incommensurable.
pub fn check_noneq(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let v = v_space(s)?;
    if v.degree != 2 {
        return Ok(Verdict::NotApplicable(format!("d = {}", v.degree)));
    }
    let m = s.cylinder_count();
    let d = &v.mixed.delta;
    for i in 0..m {
        for j in i + 1..m {
            if d[i] * d[j] != -1 {
                continue;
            }
            let q = &gamma(s, i) / &gamma(s, j);
            if let Some(q) = q.to_rational() {
                // γ_i = q γ_j = -q δ_j γ_j, so μ_i + q μ_j would vanish.
                let mut p = unit(m, i);
                p[j] = q.clone();
                let residue = combine(&p, &v.mu);
                return Ok(Verdict::Violated(Witness {
                    message: format!("non-equivalent cylinders {} and {} are commensurable", i, j),
                    relation: p,
                    residue,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Clauses (b) and (c): when `d = 2`, commensurable equivalent cylinders
/// have equal heights, and equivalent cylinders of equal height are
/// commensurable.
pub fn check_height(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let v = v_space(s)?;
    if v.degree != 2 {
        return Ok(Verdict::NotApplicable(format!("d = {}", v.degree)));
    }
    let m = s.cylinder_count();
    let d = &v.mixed.delta;
    let cyl = s.cylinders();
    for i in 0..m {
        for j in i + 1..m {
            if d[i] == 0 || d[i] != d[j] {
                continue;
            }
            let (hi, hj) = (&cyl[i].height, &cyl[j].height);
            match (&gamma(s, i) / &gamma(s, j)).to_rational() {
                Some(q) if hi != hj => {
                    let mut p = unit(m, i);
                    p[j] = -q;
                    let residue = combine(&p, &v.mu);
                    return Ok(Verdict::Violated(Witness {
                        message: format!("equivalent cylinders {} and {} are commensurable with unequal heights", i, j),
                        relation: p,
                        residue,
                    }));
                }
                None if hi == hj => {
                    return Ok(Verdict::Violated(Witness {
                        message: format!("equivalent cylinders {} and {} have equal heights but are incommensurable", i, j),
                        relation: Vec::new(),
                        residue: &cyl[i].circumference / &cyl[j].circumference,
                    }));
                }
                _ => {}
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Clauses (a), (b) and (c) together; the first violation wins.
pub fn check_noneq_and_height(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let a = check_noneq(s)?;
    if a.is_violated() {
        return Ok(a);
    }
    check_height(s)
}

/// Cylinders sharing a saddle connection with `a`, other than `a`.
fn neighbours(adj: &[(usize, usize)], a: usize) -> Vec<usize> {
    let mut out: Vec<usize> = adj
        .iter()
        .filter_map(|&(lo, hi)| if lo == a { Some(hi) } else if hi == a { Some(lo) } else { None })
        .filter(|&x| x != a)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn two_adjacent(adj: &[(usize, usize)], a: usize, b: usize) -> bool {
    adj.contains(&(a, b)) && adj.contains(&(b, a))
}

/// Replay of the `Rel` argument: `γ_a = Σ p_i γ_i` over the other class,
/// combined with the moduli equations on `X` and on `Rel^{h+ε}(X)` at
/// `ε = h/2`. The residue is `2γ_a(ε − h_a)`, nonzero whenever `ε ≠ h_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacentCertificate {
    pub cylinder: usize,
    pub relation: Vec<BigRational>,
    pub epsilon: QuadNum,
    pub lhs: QuadNum,
    pub rhs: QuadNum,
}

impl AdjacentCertificate {
    pub fn residue(&self) -> QuadNum {
        &self.lhs - &self.rhs
    }
}

pub fn adjacent_certificate(
    s: &CylinderSurface,
    a: usize,
    others: &[usize],
) -> Result<Option<AdjacentCertificate>, ConstraintError> {
    let m = s.cylinder_count();
    let g: Vec<QuadNum> = others.iter().map(|&i| gamma(s, i)).collect();
    discriminant_of(&g)?;
    let target = gamma(s, a);
    let b = [target.rational_part().clone(), target.irrational_part().clone()];
    let Some(p) = linalg::solve(&coordinates(&g), g.len(), &b) else {
        return Ok(None);
    };
    let mut relation = vec![BigRational::zero(); m];
    for (k, &i) in others.iter().enumerate() {
        relation[i] = p[k].clone();
    }
    let h = s.cylinders()[a].height.clone();
    let epsilon = &h / &QuadNum::from_int(2);
    let mu_a = &h * &target;
    let lhs = &(&epsilon - &h) * &target;
    let rhs = &(&mu_a + &mu_a) - &(&(&h + &epsilon) * &target);
    Ok(Some(AdjacentCertificate { cylinder: a, relation, epsilon, lhs, rhs }))
}

/// When `d = 2` and a minimal-height cylinder of one class is 2-adjacent to
/// a minimal-height cylinder of the other class and adjacent to no
/// non-minimal cylinder of its own class, the non-minimal cylinders of its
/// class are pairwise commensurable. Both sign conventions are tried.
pub fn check_adjacent(s: &CylinderSurface) -> Result<Verdict, ConstraintError> {
    let v = v_space(s)?;
    if v.degree != 2 {
        return Ok(Verdict::NotApplicable(format!("d = {}", v.degree)));
    }
    let adj = s.adjacency();
    let cyl = s.cylinders();
    let c = s.circumferences();
    let mut applied = false;
    for sign in [1i8, -1] {
        let class = |sg: i8| -> Vec<usize> { (0..s.cylinder_count()).filter(|&i| v.mixed.delta[i] == sg).collect() };
        let minimal = |members: &[usize]| -> Vec<usize> {
            let Some(h) = members.iter().map(|&i| &cyl[i].height).min() else {
                return Vec::new();
            };
            members.iter().copied().filter(|&i| &cyl[i].height == h).collect()
        };
        let plus = class(sign);
        let minus = class(-sign);
        let plus0 = minimal(&plus);
        let minus0 = minimal(&minus);
        let plus1: Vec<usize> = plus.iter().copied().filter(|i| !plus0.contains(i)).collect();
        for &a in &plus0 {
            if !minus0.iter().any(|&b| two_adjacent(&adj, a, b)) {
                continue;
            }
            if neighbours(&adj, a).iter().any(|x| plus1.contains(x)) {
                continue;
            }
            applied = true;
            for (x, &i) in plus1.iter().enumerate() {
                for &j in &plus1[x + 1..] {
                    if commensurable(&c[i], &c[j]) {
                        continue;
                    }
                    let cert = adjacent_certificate(s, a, &plus1)?.expect("incommensurable pair spans the u-space");
                    return Ok(Verdict::Violated(Witness {
                        message: format!(
                            "cylinder {} meets the hypothesis but cylinders {} and {} are incommensurable; at ε = {} the combined equations give {} = {}",
                            a, i, j, cert.epsilon, cert.lhs, cert.rhs
                        ),
                        residue: cert.residue(),
                        relation: cert.relation,
                    }));
                }
            }
        }
    }
    if applied {
        Ok(Verdict::Holds)
    } else {
        Ok(Verdict::NotApplicable("no minimal cylinder meets the adjacency hypothesis".into()))
    }
}

/// Ratios `c_i / c_base` and the degree of the field they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldGenerators {
    pub base: usize,
    pub ratios: Vec<QuadNum>,
    pub degree: usize,
}

pub fn field_generators(s: &CylinderSurface, base: usize) -> Result<FieldGenerators, ConstraintError> {
    let c = s.circumferences();
    if base >= c.len() {
        return Err(ConstraintError::Surface(crate::error::SurfaceError::DimensionMismatch {
            expected: c.len(),
            got: base,
        }));
    }
    let ratios: Vec<QuadNum> = c.iter().map(|x| x / &c[base]).collect();
    let degree = if ratios.iter().all(QuadNum::is_rational) { 1 } else { 2 };
    Ok(FieldGenerators { base, ratios, degree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    RationalClosure,
    EquationPropagation,
    Notmixed,
    Noneq,
    Height,
    Adjacent,
    FieldDegree,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::RationalClosure => "rational_closure",
            Check::EquationPropagation => "equation_propagation",
            Check::Notmixed => "notmixed",
            Check::Noneq => "noneq",
            Check::Height => "height",
            Check::Adjacent => "adjacent",
            Check::FieldDegree => "field_degree",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintReport {
    pub d: usize,
    pub field_degree: usize,
    pub verdicts: Vec<(Check, Verdict)>,
}

impl ConstraintReport {
    pub fn verdict(&self, c: Check) -> &Verdict {
        &self.verdicts.iter().find(|(k, _)| *k == c).expect("every check is reported").1
    }

    pub fn any_violated(&self) -> bool {
        self.verdicts.iter().any(|(_, v)| v.is_violated())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("d={}\nfield_degree={}\n", self.d, self.field_degree);
        for (c, v) in &self.verdicts {
            out.push_str(&format!("{}: {}\n", c, v));
        }
        out
    }
}

/// Every check on `s`. The field degree of a surface over a quadratic
/// field is at most 2, so that check always holds; its value is reported.
pub fn check_all(s: &CylinderSurface) -> Result<ConstraintReport, ConstraintError> {
    let v = v_space(s)?;
    let fg = field_generators(s, 0)?;
    let field = Verdict::Holds;
    Ok(ConstraintReport {
        d: v.degree,
        field_degree: fg.degree,
        verdicts: vec![
            (Check::RationalClosure, check_rational_closure(s)?),
            (Check::EquationPropagation, check_equation_propagation(s)?),
            (Check::Notmixed, check_notmixed(s)?),
            (Check::Noneq, check_noneq(s)?),
            (Check::Height, check_height(s)?),
            (Check::Adjacent, check_adjacent(s)?),
            (Check::FieldDegree, field),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{classify_stratum, ClassifyOptions, SingularityProfile};
    use crate::quad::rat;

    fn q(n: i64) -> QuadNum {
        QuadNum::from_int(n)
    }

    fn r2() -> QuadNum {
        QuadNum::sqrt(2)
    }

    /// Decomposition with words `X/E`, `DEF/AXB`, `A/D`, `B/F`, where
    /// `A = D = a`, `X = E = x`, `B = F = b`.
    fn decomposition_b(a: QuadNum, x: QuadNum, b: QuadNum, h: [QuadNum; 4]) -> CylinderSurface {
        let [h0, h1, h2, h3] = h;
        CylinderSurface::new(
            vec![a.clone(), x.clone(), b.clone(), a, x, b],
            vec![
                (h0, q(0), vec![1], vec![4]),
                (h1, q(0), vec![3, 4, 5], vec![0, 1, 2]),
                (h2, q(0), vec![0], vec![3]),
                (h3, q(0), vec![2], vec![5]),
            ],
        )
        .unwrap()
    }

    /// Decomposition with words `E/AC`, `AX/BE`, `BF/X`, `C/F` and the
    /// metric `A = 1, C = √2, B = 1, E = X = 1 + √2, F = √2`.
    fn decomposition_a(h: [QuadNum; 4]) -> CylinderSurface {
        let [h0, h1, h2, h3] = h;
        let e = &q(1) + &r2();
        CylinderSurface::new(
            vec![q(1), r2(), e.clone(), q(1), e, r2()],
            vec![
                (h0, q(0), vec![4], vec![0, 1]),
                (h1, q(0), vec![0, 2], vec![3, 4]),
                (h2, q(0), vec![3, 5], vec![2]),
                (h3, q(0), vec![1], vec![5]),
            ],
        )
        .unwrap()
    }

    /// The first H(3,1) decomposition: words `E/B`, `AQ/AEC`, `BP/Q`, `C/P`
    /// with `B = E`, `P = C`, `Q = E + C`.
    fn h31_first(a: QuadNum, e: QuadNum, c: QuadNum) -> CylinderSurface {
        let qq = &e + &c;
        CylinderSurface::new(
            vec![a, e.clone(), c.clone(), qq, e, c],
            vec![
                (q(1), q(0), vec![1], vec![4]),
                (q(1), q(0), vec![0, 3], vec![0, 1, 2]),
                (q(1), q(0), vec![4, 5], vec![3]),
                (q(1), q(0), vec![2], vec![5]),
            ],
        )
        .unwrap()
    }

    fn scenario_b() -> CylinderSurface {
        let two_r2 = &r2() + &r2();
        decomposition_b(r2(), q(1), q(1), [q(1), &q(2) + &r2(), two_r2, q(1)])
    }

    #[test]
    fn rational_multiples_form_a_class() {
        let p = commensurability(&[q(1), q(2), r2()]).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(p.degree, 2);
        let p = commensurability(&[&q(1) + &r2(), &q(2) + &(&r2() + &r2())]).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!(p.degree, 1);
    }

    #[test]
    fn relation_among_one_root_two_and_their_sum() {
        let v = [q(1), r2(), &q(1) + &r2()];
        let p = commensurability(&v).unwrap();
        assert_eq!(p.degree, 2);
        assert_eq!(p.classes.len(), 3);
        assert_eq!(p.relations.len(), 1);
        // The 2×3 system a: (1,0,1), b: (0,1,1) has kernel spanned by (1,1,-1).
        let k = &p.relations[0];
        assert_eq!(k[0], k[1]);
        assert_eq!(k[2], -k[0].clone());
        assert!(combine(k, &v).is_zero());
    }

    #[test]
    fn commensurability_errors() {
        assert_eq!(
            commensurability(&[r2(), QuadNum::sqrt(3)]),
            Err(ConstraintError::MixedDiscriminants(2, 3))
        );
        assert_eq!(commensurability(&[q(1), q(0)]), Err(ConstraintError::ZeroValue(1)));
    }

    #[test]
    fn v_space_degrees() {
        let arith = decomposition_b(q(1), q(2), q(1), [q(1), q(1), q(1), q(1)]);
        assert!(v_space(&arith).unwrap().degree <= 1);
        let v = v_space(&scenario_b()).unwrap();
        assert_eq!(v.degree, 2);
        for p in &v.relations {
            assert!(combine(p, &v.u).is_zero());
        }
    }

    #[test]
    fn connected_stable_decompositions_have_a_mixed_cylinder() {
        // Saddle connections on one singularity only bound cylinders with
        // both boundaries there, so a decomposition without mixed cylinders
        // is disconnected and u never vanishes identically.
        for kappa in [vec![1, 1], vec![2, 2], vec![3, 1]] {
            let c = classify_stratum(&SingularityProfile::new(kappa).unwrap(), ClassifyOptions::default()).unwrap();
            assert!(c.entries.iter().all(|e| e.mixed.iter().any(|&m| m)));
        }
        let (d, rel) = span(&[q(0), q(0), q(0)]).unwrap();
        assert_eq!((d, rel.len()), (0, 3));
    }

    #[test]
    fn equation_propagation() {
        assert_eq!(check_equation_propagation(&scenario_b()).unwrap(), Verdict::Holds);
        let two_r2 = &r2() + &r2();
        let bad = decomposition_b(r2(), q(1), q(1), [q(1), &q(2) + &r2(), two_r2, q(2)]);
        let Verdict::Violated(w) = check_equation_propagation(&bad).unwrap() else {
            panic!("expected a violation");
        };
        let v = v_space(&bad).unwrap();
        assert!(combine(&w.relation, &v.u).is_zero());
        assert_eq!(combine(&w.relation, &v.mu), w.residue);
        assert!(!w.residue.is_zero());
        let arith = decomposition_b(q(1), q(2), q(1), [q(1), q(1), q(1), q(1)]);
        assert!(matches!(check_equation_propagation(&arith).unwrap(), Verdict::NotApplicable(_)));
    }

    #[test]
    fn notmixed() {
        let x = h31_first(q(1), q(1), q(1));
        assert_eq!(check_notmixed(&x).unwrap(), Verdict::Holds);
        let bad = h31_first(q(1), q(1), &r2() - &q(1));
        let c = bad.circumferences();
        assert_eq!(&c[2] / &c[0], r2());
        let Verdict::Violated(w) = check_notmixed(&bad).unwrap() else {
            panic!("expected a violation");
        };
        assert_eq!(w.residue, (&q(1) + &r2()).recip());
        assert!(matches!(check_notmixed(&scenario_b()).unwrap(), Verdict::NotApplicable(_)));
    }

    #[test]
    fn noneq_and_height() {
        let a = decomposition_a([q(1), q(1), q(1), q(2)]);
        assert_eq!(v_space(&a).unwrap().degree, 2);
        let c = a.circumferences();
        assert!(!commensurable(&c[0], &c[1]));
        assert_eq!(check_noneq_and_height(&a).unwrap(), Verdict::Holds);
        assert_eq!(check_noneq_and_height(&scenario_b()).unwrap(), Verdict::Holds);
        let bad = decomposition_b(r2(), q(2), q(1), [q(1), q(1), q(3), q(2)]);
        let Verdict::Violated(w) = check_noneq_and_height(&bad).unwrap() else {
            panic!("expected a violation");
        };
        assert_eq!(w.residue, QuadNum::from_rational(rat(-1, 2)));
        let v = v_space(&bad).unwrap();
        assert!(combine(&w.relation, &v.u).is_zero());
        assert_eq!(combine(&w.relation, &v.mu), w.residue);
    }

    #[test]
    fn adjacent_holds_on_commensurable_configuration() {
        let s = decomposition_b(r2(), q(1), q(1), [q(2), q(1), q(1), q(2)]);
        assert_eq!(check_adjacent(&s).unwrap(), Verdict::Holds);
    }

    #[test]
    fn adjacent_not_applicable_without_two_adjacency() {
        let s = decomposition_a([q(1), q(2), q(2), q(1)]);
        assert!(matches!(check_adjacent(&s).unwrap(), Verdict::NotApplicable(_)));
    }

    #[test]
    fn adjacent_certificate_replays_the_contradiction() {
        let s = decomposition_b(q(1), q(1), r2(), [q(2), q(1), q(1), q(2)]);
        let Verdict::Violated(w) = check_adjacent(&s).unwrap() else {
            panic!("expected a violation");
        };
        let a = 2;
        let g: Vec<QuadNum> = (0..4).map(|i| gamma(&s, i)).collect();
        assert_eq!(combine(&w.relation, &g), g[a]);
        let h = s.cylinders()[a].height.clone();
        assert_eq!(w.residue, -(&h * &g[a]));
        let cert = adjacent_certificate(&s, a, &[0, 3]).unwrap().unwrap();
        // (ε − h)γ = 2μ − (h + ε)γ reduces to 2γ(ε − h).
        assert_eq!(cert.residue(), &(&g[a] + &g[a]) * &(&cert.epsilon - &h));
    }

    #[test]
    fn field_degree() {
        let arith = decomposition_b(q(1), q(2), q(1), [q(1), q(1), q(1), q(1)]);
        assert_eq!(field_generators(&arith, 0).unwrap().degree, 1);
        let s5 = decomposition_b(QuadNum::sqrt(5), q(1), q(1), [q(1), q(1), q(1), q(1)]);
        assert_eq!(field_generators(&s5, 0).unwrap().degree, 2);
        for s in [scenario_b(), s5, decomposition_a([q(1), q(1), q(1), q(1)])] {
            let d: Vec<usize> = (0..s.cylinder_count()).map(|b| field_generators(&s, b).unwrap().degree).collect();
            assert!(d.iter().all(|&x| x == d[0]));
        }
    }

    #[test]
    fn report_lists_every_check() {
        let r = check_all(&scenario_b()).unwrap();
        assert_eq!(r.d, 2);
        assert_eq!(r.field_degree, 2);
        assert_eq!(r.verdicts.len(), 7);
        assert!(!r.any_violated(), "{}", r.to_text());
    }
}
