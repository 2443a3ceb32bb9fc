//! Scripted replays of the two rank-one arguments: the Prym conclusion in
//! H^odd(2,2) and the arithmetic conclusion in H(3,1).
//!
//! Each replay fixes a metric over Q(√2), runs the deformations the
//! arguments use and checks every constraint they invoke. Case choices are
//! hard-coded; cited external results are logged as unchecked.

use std::fmt::Write;

use crate::appendix;
use crate::automorph::{detect_neg_involution, NegInvolution};
use crate::constraints::{self, check_all, commensurable, ConstraintReport, Verdict};
use crate::cylinder::{mixed_structure, CylinderSurface};
use crate::error::{ConstraintError, SurfaceError};
use crate::polygon::{self, decompose_direction, Matrix2, Point, PolygonSurface, DEFAULT_STEP_CAP};
use crate::quad::QuadNum;
use crate::rel::{rel_deform, RelAxis};
use crate::automorph::translation_isomorphic;
use crate::separatrix::UnionFind;

pub const SCENARIOS: [&str; 2] = ["h22_theorem", "h31_theorem"];

#[derive(Clone, Debug)]
pub struct ScenarioStep {
    pub index: usize,
    pub description: String,
    pub outcome: String,
}

#[derive(Clone, Debug)]
pub enum ScenarioOutcome {
    H22 {
        final_surface: CylinderSurface,
        vertical: CylinderSurface,
        /// Vertical cylinders of circumference `h1 + h2` and height `c1`,
        /// and of circumference `h2 + h4` and height `c4`.
        dark_grey: usize,
        light_grey: usize,
        involution: NegInvolution,
    },
    H31 {
        x: CylinderSurface,
        y: CylinderSurface,
        /// Cylinders of `x` whose circumference is found again on `y`.
        persisted: Vec<usize>,
        /// The same for the figure metric `A = 1`.
        figure_persisted: Vec<usize>,
        forced_classes: Vec<Vec<usize>>,
        /// Field degree of the same decomposition with every circumference
        /// commensurable.
        arithmetic_degree: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ScenarioLog {
    pub name: String,
    pub steps: Vec<ScenarioStep>,
    pub reports: Vec<(String, ConstraintReport)>,
    pub outcome: ScenarioOutcome,
}

impl ScenarioLog {
    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {}\n", self.name);
        for s in &self.steps {
            let _ = writeln!(out, "[{}] {}: {}", s.index, s.description, s.outcome);
        }
        for (name, r) in &self.reports {
            let _ = writeln!(out, "report {}:", name);
            for line in r.to_text().lines() {
                let _ = writeln!(out, "  {}", line);
            }
        }
        out
    }
}

struct Log {
    steps: Vec<ScenarioStep>,
    reports: Vec<(String, ConstraintReport)>,
}

impl Log {
    fn new() -> Log {
        Log { steps: Vec::new(), reports: Vec::new() }
    }

    fn step(&mut self, description: &str, outcome: impl Into<String>) {
        let index = self.steps.len() + 1;
        self.steps.push(ScenarioStep { index, description: description.into(), outcome: outcome.into() });
    }

    /// Records a step whose condition must hold.
    fn check(&mut self, description: &str, ok: bool, detail: impl Into<String>) -> Result<(), ConstraintError> {
        let detail = detail.into();
        let index = self.steps.len() + 1;
        if !ok {
            return Err(ConstraintError::ScenarioAssertionFailed { step: index, message: format!("{}: {}", description, detail) });
        }
        self.step(description, detail);
        Ok(())
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ConstraintError> {
        Err(ConstraintError::ScenarioAssertionFailed { step: self.steps.len() + 1, message: message.into() })
    }

    fn report(&mut self, name: &str, s: &CylinderSurface) -> Result<ConstraintReport, ConstraintError> {
        let r = check_all(s)?;
        self.reports.push((name.into(), r.clone()));
        Ok(r)
    }
}

pub fn replay_scenario(name: &str) -> Result<ScenarioLog, ConstraintError> {
    match name {
        "h22_theorem" => h22_theorem(),
        "h31_theorem" => h31_theorem(),
        other => Err(ConstraintError::UnknownScenario(other.into())),
    }
}

fn q(n: i64) -> QuadNum {
    QuadNum::from_int(n)
}

fn f(n: i64, d: i64) -> QuadNum {
    QuadNum::from_frac(n, d)
}

fn r2() -> QuadNum {
    QuadNum::sqrt(2)
}

/// `δ` equals `pattern` or its negative.
fn signs_match(delta: &[i8], pattern: &[i8]) -> bool {
    delta == pattern || delta.iter().zip(pattern).all(|(a, b)| *a == -b)
}

fn show(v: &[QuadNum]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(", "))
}

/// Element `t1 μ + t2 u` of `V(X)` giving cylinders `i` and `j` the twist
/// changes `di` and `dj`: the twist of cylinder `k` changes by
/// `t1 h_k + t2 δ_k`.
fn v_twist(
    s: &CylinderSurface,
    (i, di): (usize, &QuadNum),
    (j, dj): (usize, &QuadNum),
) -> Result<(QuadNum, QuadNum, Vec<QuadNum>), ConstraintError> {
    let delta = mixed_structure(s)?.delta;
    let h = s.heights();
    let (hi, hj) = (&h[i], &h[j]);
    let (si, sj) = (q(delta[i] as i64), q(delta[j] as i64));
    let det = &(hi * &sj) - &(hj * &si);
    if det.is_zero() {
        return Err(SurfaceError::Invalid("twist targets are not independent in V(X)".into()).into());
    }
    let t1 = &(&(di * &sj) - &(dj * &si)) / &det;
    let t2 = &(&(hi * dj) - &(hj * di)) / &det;
    let x = (0..s.cylinder_count())
        .map(|k| &(&(&t1 * &h[k]) + &(&t2 * &q(delta[k] as i64))) / &s.cylinders()[k].circumference)
        .collect();
    Ok((t1, t2, x))
}

fn persisting(cx: &[QuadNum], cy: &[QuadNum]) -> Vec<usize> {
    (0..cx.len()).filter(|&i| cy.contains(&cx[i])).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn vertical(s: &CylinderSurface) -> Result<Option<CylinderSurface>, SurfaceError> {
    decompose_direction(&PolygonSurface::from_cylinders(s), &Point::new(q(0), q(1)), DEFAULT_STEP_CAP)
}

/// Largest number of saddle connections on one boundary component.
fn longest_boundary(s: &CylinderSurface) -> usize {
    s.cylinders().iter().map(|c| c.top.len().max(c.bottom.len())).max().unwrap_or(0)
}

/// Decomposition A over Q(√2): letters A C X B E F with
/// `A = 1, C = √2, X = E = 1 + √2, B = 1, F = √2`.
pub fn h22_decomposition_a_metric() -> CylinderSurface {
    let e = &q(1) + &r2();
    CylinderSurface::new(
        vec![q(1), r2(), e.clone(), q(1), e, r2()],
        vec![
            (q(1), q(0), vec![4], vec![0, 1]),
            (q(1), q(0), vec![0, 2], vec![3, 4]),
            (q(1), q(0), vec![3, 5], vec![2]),
            (q(2), q(0), vec![1], vec![5]),
        ],
    )
    .expect("valid surface")
}

/// Decomposition B over Q(√2): letters A X B D E F with `A = D = √2` and
/// every other length 1, heights `(1, 2 + √2, 2√2, 1)`.
pub fn h22_decomposition_b_metric(twists: [QuadNum; 4]) -> CylinderSurface {
    let [t0, t1, t2, t3] = twists;
    CylinderSurface::new(
        vec![r2(), q(1), q(1), r2(), q(1), q(1)],
        vec![
            (q(1), t0, vec![1], vec![4]),
            (&q(2) + &r2(), t1, vec![3, 4, 5], vec![0, 1, 2]),
            (&r2() + &r2(), t2, vec![0], vec![3]),
            (q(1), t3, vec![2], vec![5]),
        ],
    )
    .expect("valid surface")
}

fn h22_theorem() -> Result<ScenarioLog, ConstraintError> {
    let mut log = Log::new();

    // Decomposition A.
    let a = h22_decomposition_a_metric();
    let ms = mixed_structure(&a)?;
    log.check(
        "decomposition A: u = (γ1, -γ2, γ3, -γ4)",
        signs_match(&ms.delta, &[1, -1, 1, -1]),
        format!("δ = {:?}", ms.delta),
    )?;
    let ra = log.report("decomposition A", &a)?;
    log.check("decomposition A: d = 2", ra.d == 2, format!("d = {}", ra.d))?;
    let c = a.circumferences();
    log.check(
        "decomposition A: cylinders 1 and 2 incommensurable",
        !commensurable(&c[0], &c[1]) && ra.verdict(constraints::Check::Noneq).holds(),
        format!("c1 = {}, c2 = {}", c[0], c[1]),
    )?;
    let (t1, t2, x) = v_twist(&a, (1, &f(-1, 2)), (2, &f(1, 2)))?;
    let a2 = a.twist_deform(&x)?;
    log.step(
        "decomposition A: twist by t1 μ + t2 u",
        format!("t1 = {}, t2 = {}, twists {}", t1, t2, show(&a2.twists())),
    );
    // The vertical through the point between B and E on the bottom of
    // cylinder 2 rises through cylinders 2 and 3.
    let poly = PolygonSurface::from_cylinders(&a2);
    let conn = poly.trace((1, 1), &Point::new(q(0), q(1)), DEFAULT_STEP_CAP)?;
    let labels = poly.labels();
    let (s0, s1) = (labels[conn.start.0][conn.start.1], labels[conn.end.0][conn.end.1]);
    let h = a2.heights();
    log.check(
        "decomposition A: vertical saddle connection from a singularity to itself",
        s0 == s1 && conn.length == &h[1] + &h[2],
        format!("singularity {} to {}, length {}", s0, s1, conn.length),
    )?;
    log.step(
        "decomposition A: vertical direction periodic",
        "complete periodicity of rank-one loci (cited, unchecked)",
    );
    let with_feature: Vec<usize> =
        appendix::h22_odd().iter().enumerate().filter(|(_, s)| longest_boundary(s) >= 3).map(|(i, _)| i + 1).collect();
    log.check(
        "odd list: decompositions with a boundary angle of at least 3π",
        with_feature == [4] && longest_boundary(&a) < 3,
        format!("items {:?}; decomposition A is eliminated", with_feature),
    )?;

    // Decomposition B.
    let (tau1, tau2, tau4) = (f(1, 3), f(1, 2), f(1, 3));
    let probe = h22_decomposition_b_metric([q(0), q(0), q(0), q(0)]);
    let ms = mixed_structure(&probe)?;
    log.check(
        "decomposition B: u = (γ1, -γ2, γ3, γ4)",
        signs_match(&ms.delta, &[1, -1, 1, 1]),
        format!("δ = {:?}", ms.delta),
    )?;
    let h = probe.heights();
    let c = probe.circumferences();
    // Twist moves of t1 μ + t2 u that zero τ1 and τ2.
    let t1 = -(&(&tau1 + &tau2) / &(&h[0] + &h[1]));
    let t2 = &(-(&tau1 + &(&t1 * &h[0]))) / &q(ms.delta[0] as i64);
    let dtau3 = &(&t1 * &h[2]) + &(&t2 * &q(ms.delta[2] as i64));
    let tau3 = (&(&c[2] / &q(2)) - &dtau3).rem_euclid(&c[2]);
    let b = h22_decomposition_b_metric([tau1.clone(), tau2.clone(), tau3, tau4.clone()]);
    let rb = log.report("decomposition B", &b)?;
    log.check("decomposition B: d = 2", rb.d == 2, format!("d = {}, field degree {}", rb.d, rb.field_degree))?;
    let v = constraints::v_space(&b)?;
    let rel_a = [q(1), q(1), q(-1), q(0)];
    let rel_b = [q(1), q(0), q(0), q(-1)];
    let holds_on = |p: &[QuadNum], w: &[QuadNum]| {
        p.iter().zip(w).fold(QuadNum::zero(), |acc, (a, b)| acc + a * b).is_zero()
    };
    log.check(
        "decomposition B: u1 + u2 - u3 = 0 and u1 = u4, also on μ",
        [&v.u, &v.mu].iter().all(|w| holds_on(&rel_a, w) && holds_on(&rel_b, w)),
        format!("u = {}, μ = {}", show(&v.u), show(&v.mu)),
    )?;
    for (check, name) in [
        (constraints::Check::Noneq, "no two non-equivalent cylinders commensurable"),
        (constraints::Check::Height, "cylinders 1 and 4: commensurable with equal heights"),
        (constraints::Check::EquationPropagation, "relations of u propagate to μ"),
    ] {
        let verdict = rb.verdict(check);
        log.check(&format!("decomposition B: {}", name), verdict.holds(), verdict.to_string())?;
    }
    log.step("decomposition B: 2-adjacency condition", rb.verdict(constraints::Check::Adjacent).to_string());
    log.check(
        "decomposition B: c1 = c4 and h1 = h4",
        c[0] == c[3] && h[0] == h[3],
        format!("c1 = {}, c4 = {}", c[0], c[3]),
    )?;

    let x = (0..4)
        .map(|k| &(&(&t1 * &h[k]) + &(&t2 * &q(ms.delta[k] as i64))) / &c[k])
        .collect::<Vec<_>>();
    let fin = b.twist_deform(&x)?;
    let tw = fin.twists();
    log.check(
        "decomposition B: twists after t1 μ + t2 u",
        tw[0].is_zero() && tw[1].is_zero() && tw[3].is_zero() && tw[2] == &c[2] / &q(2),
        format!("t1 = {}, t2 = {}, twists {}", t1, t2, show(&tw)),
    )?;
    let sheared = polygon::apply_matrix(&rel_deform(&b, &t2, RelAxis::Real, false)?, &Matrix2::shear(t1.clone()))?
        .horizontal_decomposition(DEFAULT_STEP_CAP)?;
    log.check(
        "decomposition B: twist equals shear after real Rel",
        translation_isomorphic(&sheared, &fin),
        "translation isomorphic",
    )?;

    let Some(vert) = vertical(&fin)? else {
        return log.fail("vertical direction is not periodic");
    };
    let target_dark = (&h[0] + &h[1], c[0].clone());
    let target_light = (&h[1] + &h[3], c[3].clone());
    let find = |t: &(QuadNum, QuadNum), skip: Option<usize>| {
        vert.cylinders()
            .iter()
            .enumerate()
            .position(|(i, cy)| Some(i) != skip && cy.circumference == t.0 && cy.height == t.1)
    };
    let dark = find(&target_dark, None);
    let light = dark.and_then(|d| find(&target_light, Some(d)));
    let (Some(dark), Some(light)) = (dark, light) else {
        return log.fail(format!("vertical decomposition lacks the grey cylinders:\n{}", vert.to_text()));
    };
    log.check(
        "final surface: vertical decomposition",
        vert.cylinder_count() == 3,
        format!(
            "{} cylinders; dark grey {} (circumference h1 + h2 = {}, height c1 = {}), light grey {}",
            vert.cylinder_count(),
            dark + 1,
            target_dark.0,
            target_dark.1,
            light + 1
        ),
    )?;
    let Some(inv) = detect_neg_involution(&fin) else {
        return log.fail("no -Id involution on the final surface");
    };
    log.check(
        "final surface: -Id involution",
        inv.quotient_genus == 1,
        format!("quotient genus {} (Prym involution)", inv.quotient_genus),
    )?;
    log.step(
        "Prym eigenform conclusion",
        "hyperbolic element in the Veech group (cited, unchecked)",
    );
    Ok(ScenarioLog {
        name: "h22_theorem".into(),
        steps: log.steps,
        reports: log.reports,
        outcome: ScenarioOutcome::H22 { final_surface: fin, vertical: vert, dark_grey: dark, light_grey: light, involution: inv },
    })
}

/// The first H(3,1) decomposition: letters A E C Q B P with `E = B = 1`,
/// `C = P = 1`, `Q = 2`, cylinders of height 1/2 and the third twisted by
/// 1/2. `A = 1` is the metric of the figure.
pub fn h31_first_metric(a: QuadNum) -> CylinderSurface {
    let h = f(1, 2);
    CylinderSurface::new(
        vec![a, q(1), q(1), q(2), q(1), q(1)],
        vec![
            (h.clone(), q(0), vec![1], vec![4]),
            (h.clone(), q(0), vec![0, 3], vec![0, 1, 2]),
            (h.clone(), f(1, 2), vec![5, 4], vec![3]),
            (h, q(0), vec![2], vec![5]),
        ],
    )
    .expect("valid surface")
}

fn h31_theorem() -> Result<ScenarioLog, ConstraintError> {
    let mut log = Log::new();
    let x = h31_first_metric(r2());
    let ms = mixed_structure(&x)?;
    log.check(
        "X: u = (γ1, 0, -γ3, γ4)",
        signs_match(&ms.delta, &[1, 0, -1, 1]),
        format!("δ = {:?}", ms.delta),
    )?;
    let rx = log.report("X", &x)?;
    log.check(
        "X: cylinders 1, 3, 4 pairwise commensurable",
        rx.verdict(constraints::Check::Notmixed).holds(),
        rx.verdict(constraints::Check::Notmixed).to_string(),
    )?;
    log.step("X: field generated by circumference ratios", format!("degree {}", rx.field_degree));

    let h3 = x.heights()[2].clone();
    let t = &h3 + &(&h3 / &q(5));
    let blocked = rel_deform(&x, &t, RelAxis::Imaginary, false);
    log.check(
        "Y: direct imaginary Rel collapses cylinder 3",
        blocked == Err(SurfaceError::HeightCollapse(2)),
        format!("{:?}", blocked.as_ref().map(|_| ())),
    )?;
    let y = rel_deform(&x, &t, RelAxis::Imaginary, true)?;
    log.step("Y = Rel^(h3 + ε) along iu", format!("t = {}, circumferences {}", t, show(&y.circumferences())));
    let cx = x.circumferences();
    let cy = y.circumferences();
    let persisted = persisting(&cx, &cy);
    log.check(
        "Y: circumference of cylinder 2 persists",
        persisted.contains(&1) && x.area() == y.area(),
        format!("c2 = {}; cylinders of X found on Y: {:?}", cx[1], one_based(&persisted)),
    )?;
    let ry = log.report("Y", &y)?;
    let my = mixed_structure(&y)?;
    let y_mixed: Vec<usize> = (0..y.cylinder_count()).filter(|&i| my.is_mixed(i)).collect();
    log.check(
        "Y: mixed cylinders include one of circumference c2",
        y_mixed.iter().any(|&i| cy[i] == cx[1]),
        format!("mixed {:?}", one_based(&y_mixed)),
    )?;
    log.check(
        "Y: mixed cylinders pairwise commensurable is violated for irrational c2",
        ry.verdict(constraints::Check::Notmixed).is_violated(),
        ry.verdict(constraints::Check::Notmixed).to_string(),
    )?;

    // Classes forced by the constraint on X and on Y, pulled back to the
    // cylinders of X through equal circumferences.
    let mut uf = UnionFind::new(x.cylinder_count());
    let x_mixed: Vec<usize> = (0..x.cylinder_count()).filter(|&i| ms.is_mixed(i)).collect();
    for w in x_mixed.windows(2) {
        uf.union(w[0], w[1]);
    }
    let (cxr, cyr) = (&cx, &cy);
    let back: Vec<usize> =
        y_mixed.iter().flat_map(|&j| (0..cxr.len()).filter(move |&i| cxr[i] == cyr[j])).collect();
    for w in back.windows(2) {
        uf.union(w[0], w[1]);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..x.cylinder_count() {
        let r = uf.find(i);
        match classes.iter_mut().find(|c| uf.find(c[0]) == r) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    log.check(
        "forced commensurability classes",
        classes.len() == 1,
        format!("{:?}: all circumferences commensurable", classes),
    )?;

    let arith = h31_first_metric(q(1));
    let ra = log.report("X with A = 1", &arith)?;
    let fine = ra.verdicts.iter().all(|(_, v)| !matches!(v, Verdict::Violated(_)));
    let arithmetic_degree = constraints::field_generators(&arith, 0)?.degree;
    log.check(
        "arithmetic metric: every check holds, field degree 1",
        fine && arithmetic_degree == 1,
        format!("degree {}", arithmetic_degree),
    )?;
    let ya = rel_deform(&arith, &t, RelAxis::Imaginary, true)?;
    let figure_persisted = persisting(&arith.circumferences(), &ya.circumferences());
    log.check(
        "figure metric: circumferences of cylinders 2 and 3 persist",
        figure_persisted.contains(&1) && figure_persisted.contains(&2),
        format!("cylinders of X found on Y: {:?}", one_based(&figure_persisted)),
    )?;
    let rya = log.report("Y with A = 1", &ya)?;
    log.check(
        "arithmetic metric: Y passes every check",
        rya.verdicts.iter().all(|(_, v)| !v.is_violated()),
        "holds or not-applicable",
    )?;
    Ok(ScenarioLog {
        name: "h31_theorem".into(),
        steps: log.steps,
        reports: log.reports,
        outcome: ScenarioOutcome::H31 { x, y, persisted, figure_persisted, forced_classes: classes, arithmetic_degree },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h22_replay_reaches_the_prym_surface() {
        let log = replay_scenario("h22_theorem").unwrap_or_else(|e| panic!("{}", e));
        let ScenarioOutcome::H22 { vertical, involution, .. } = &log.outcome else {
            panic!("wrong outcome");
        };
        assert_eq!(vertical.cylinder_count(), 3);
        assert_eq!(involution.quotient_genus, 1);
    }

    #[test]
    fn h31_replay_forces_degree_one() {
        let log = replay_scenario("h31_theorem").unwrap_or_else(|e| panic!("{}", e));
        let ScenarioOutcome::H31 { forced_classes, arithmetic_degree, .. } = &log.outcome else {
            panic!("wrong outcome");
        };
        assert_eq!(forced_classes.len(), 1);
        assert_eq!(*arithmetic_degree, 1);
    }

    #[test]
    fn unknown_scenario() {
        assert_eq!(replay_scenario("").unwrap_err(), ConstraintError::UnknownScenario(String::new()));
    }
}
