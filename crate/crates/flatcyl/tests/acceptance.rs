//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria 3 and 4 are known to fail: the H(2,2) reference lists contain a
//! two-cylinder surface whose spin parity is odd, and the exhaustive
//! classification finds three odd classes absent from the lists. The run
//! exits non-zero only when some other criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::winding::winding_parity;
use flatcyl::appendix::{self, verify_appendix};
use flatcyl::automorph::{neg_involutions, translation_isomorphic};
use flatcyl::constraints::{check_all, check_noneq_and_height, Verdict};
use flatcyl::cylinder::{build_surface, mixed_structure};
use flatcyl::enumeration::{
    classify_stratum, metric_system, type_label, Classification, ClassifyOptions, MetricVerdict, SingularityProfile,
};
use flatcyl::iso::metric_isomorphic;
use flatcyl::linalg::kernel_basis;
use flatcyl::mintype::{enumerate_types, MinimalType};
use flatcyl::polygon::{apply_matrix, Matrix2, DEFAULT_STEP_CAP};
use flatcyl::quad::QuadNum;
use flatcyl::rel::{rel_deform, RelAxis};
use flatcyl::scenarios::{replay_scenario, ScenarioOutcome};
use flatcyl::separatrix::SeparatrixDiagram;

const KNOWN_RED: [usize; 2] = [3, 4];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: i64, d: i64) -> QuadNum {
    QuadNum::from_frac(n, d)
}

fn profile(k: &str) -> SingularityProfile {
    k.parse().expect("profile")
}

fn classify(k: &str) -> Classification {
    classify_stratum(&profile(k), ClassifyOptions { quotient_minus_omega: true, require_mixed: true }).expect("classify")
}

fn type_set(cycles: &[&str], n: usize) -> BTreeSet<String> {
    cycles
        .iter()
        .map(|c| MinimalType::from_cycles(c, n).expect("cycles").up_to_reversal().to_string())
        .collect()
}

fn criterion_1() -> Outcome {
    let got3: BTreeSet<String> = enumerate_types(3, true).iter().map(|t| t.to_string()).collect();
    let want3 = type_set(&["(1)(2)(3)", "(123)", "(12)(3)"], 3);
    ensure(got3 == want3 && got3.len() == 3, format!("n=3: {:?} vs {:?}", got3, want3))?;
    let got4: BTreeSet<String> = enumerate_types(4, true).iter().map(|t| t.to_string()).collect();
    let want4 = type_set(&["(1)(243)", "(1)(3)(24)", "(1)(234)", "(13)(24)", "(1)(2)(3)(4)"], 4);
    ensure(got4 == want4 && got4.len() == 5, format!("n=4: {:?} vs {:?}", got4, want4))?;
    Ok("3 types for n=3, 5 types for n=4".into())
}

/// Tally of the prediagram whose order-3 component has the given type, in
/// either orientation.
fn tally_for<'a>(c: &'a Classification, cycles: &str, n: usize) -> Vec<&'a flatcyl::enumeration::TypeTally> {
    let t = MinimalType::from_cycles(cycles, n).expect("cycles");
    c.tallies.iter().filter(|x| x.types.iter().any(|y| y.up_to_reversal() == t.up_to_reversal())).collect()
}

fn criterion_2() -> Outcome {
    let c = classify("3,1");
    let t16 = tally_for(&c, "(1)(243)", 4);
    ensure(!t16.is_empty(), "type (1,6) missing")?;
    for t in &t16 {
        ensure(
            t.records.len() == 24 && t.infeasible() == 18 && t.feasible() == 6,
            format!("type (1,6) {}: {} pairings, {} infeasible, {} feasible", type_label(&t.types), t.records.len(), t.infeasible(), t.feasible()),
        )?;
    }
    let mut classes = Vec::new();
    for cycles in ["(1)(243)", "(1)(3)(24)", "(1)(234)", "(13)(24)"] {
        classes.push(tally_for(&c, cycles, 4).iter().map(|t| t.classes).sum::<usize>());
    }
    ensure(classes == [3, 2, 1, 1], format!("classes per type {:?}", classes))?;
    ensure(c.entries.len() == 7, format!("{} classes", c.entries.len()))?;
    let report = verify_appendix(&profile("3,1")).map_err(|e| e.to_string())?;
    ensure(report.is_ok(), report.to_text())?;
    Ok("(1,6): 24 pairings, 18 infeasible, 6 feasible, 3 classes; 3+2+1+1 = 7 classes match the reference list".into())
}

/// `z^T A` is semi-definite and non-zero, so `A x = 0` has no positive solution.
fn farkas_ok(d: &flatcyl::separatrix::PairedDiagram, z: &[BigRational]) -> bool {
    let (a, vars) = metric_system(d);
    let w: Vec<BigRational> = (0..vars.len())
        .map(|j| a.iter().zip(z).fold(BigRational::zero(), |acc, (row, zi)| acc + &row[j] * zi))
        .collect();
    let nonneg = w.iter().all(|x| !x.is_negative()) && w.iter().any(|x| x.is_positive());
    let nonpos = w.iter().all(|x| !x.is_positive()) && w.iter().any(|x| x.is_negative());
    nonneg || nonpos
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn criterion_3() -> Outcome {
    let c = classify("2,2");
    let t33 = tally_for(&c, "(12)(3)", 3);
    let t33: Vec<_> = t33.into_iter().filter(|t| t.types.iter().all(|y| y.component_counts() == (2, 2))).collect();
    ensure(t33.len() == 1, format!("{} prediagrams of type (3,3)", t33.len()))?;
    let t = t33[0];
    ensure(t.disconnected() == 4 && t.infeasible() == 13, format!("{} disconnected, {} infeasible", t.disconnected(), t.infeasible()))?;
    // The disconnected pairings are p0 composed with {id, (ab), (cd), (ab)(cd)}.
    let disc: Vec<&Vec<usize>> =
        t.records.iter().filter(|r| r.verdict == MetricVerdict::Disconnected).map(|r| &r.pairing).collect();
    let p0inv = inverse(disc[0]);
    let rel: BTreeSet<Vec<usize>> = disc.iter().map(|p| compose(&p0inv, p)).collect();
    let moved: Vec<usize> = rel.iter().map(|r| r.iter().enumerate().filter(|(i, x)| i != *x).count()).collect();
    let closed = rel.iter().all(|a| rel.iter().all(|b| rel.contains(&compose(a, b))));
    let mut sorted = moved.clone();
    sorted.sort_unstable();
    ensure(closed && sorted == [0, 2, 2, 4], format!("disconnected pairings {:?}", disc))?;
    let prediagram = {
        let e = c.entries.iter().find(|e| e.types == t.types).ok_or("no class of type (3,3)")?;
        e.paired().prediagram().clone()
    };
    for r in &t.records {
        if let MetricVerdict::Infeasible(z) = &r.verdict {
            let d = flatcyl::separatrix::PairedDiagram::new(prediagram.clone(), r.pairing.clone()).map_err(|e| e.to_string())?;
            ensure(farkas_ok(&d, z), format!("certificate for {:?} does not verify", r.pairing))?;
        }
    }
    let report = verify_appendix(&profile("2,2")).map_err(|e| e.to_string())?;
    let counts = report.component_counts();
    ensure(report.is_ok(), format!("pairings as stated, but {}", report.to_text().lines().collect::<Vec<_>>().join("; ")))?;
    Ok(format!("{:?}", counts))
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    for (list, want) in [("odd list", 1u8), ("hyp list", 0u8)] {
        let surfaces = if want == 1 { appendix::h22_odd() } else { appendix::h22_hyp() };
        for (i, s) in surfaces.iter().enumerate() {
            let lib = flatcyl::spin::spin_parity(s).map_err(|e| e.to_string())?.as_bit();
            let oracle = winding_parity(s);
            if lib != oracle {
                problems.push(format!("{} item {}: library {} vs oracle {}", list, i + 1, lib, oracle));
            }
            if oracle != want {
                problems.push(format!("{} item {}: parity {}", list, i + 1, if oracle == 1 { "odd" } else { "even" }));
            }
            let hyper = neg_involutions(s).iter().any(|v| v.quotient_genus == 0);
            if hyper != (want == 0) {
                problems.push(format!("{} item {}: genus-0 involution {}", list, i + 1, if hyper { "present" } else { "absent" }));
            }
        }
    }
    ensure(problems.is_empty(), problems.join("; "))?;
    Ok("parities and hyperellipticity as listed".into())
}

/// A random positive point of the metric cone of `d`, near its integer
/// witness.
fn random_metric(d: &SeparatrixDiagram, rng: &mut ChaCha8Rng) -> SeparatrixDiagram {
    let paired = d.paired();
    let (a, vars) = metric_system(paired);
    let basis = kernel_basis(&a, vars.len());
    let p = paired.prediagram();
    let base: Vec<BigRational> = p.positive_edges().iter().map(|&e| d.lengths()[e].to_rational().expect("rational")).collect();
    loop {
        let mut x = base.iter().map(|v| v * BigRational::from_integer(BigInt::from(4))).collect::<Vec<_>>();
        for b in &basis {
            let r = BigRational::new(BigInt::from(rng.gen_range(-30..=30)), BigInt::from(rng.gen_range(1..=10)));
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += &r * bi;
            }
        }
        if x.iter().all(|v| v.is_positive()) {
            let l: Vec<QuadNum> = x.into_iter().map(QuadNum::from_rational).collect();
            return SeparatrixDiagram::from_positive_lengths(paired.clone(), &l).expect("positive metric");
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for k in ["2,2", "3,1", "4"] {
        for e in &classify(k).entries {
            for _ in 0..10 {
                let d = random_metric(&e.diagram, &mut rng);
                let m = d.paired().cylinder_count();
                let h: Vec<QuadNum> = (0..m).map(|_| q(rng.gen_range(1..=9), rng.gen_range(1..=5))).collect();
                let t: Vec<QuadNum> = (0..m).map(|_| q(rng.gen_range(0..=9), 7)).collect();
                let s = build_surface(&d, &h, &t).map_err(|e| e.to_string())?;
                ensure(metric_isomorphic(&s.horizontal_diagram(), &d), format!("round trip fails for {}", d.to_text()))?;
                let delta = mixed_structure(&s).map_err(|e| e.to_string())?.delta;
                let c = s.circumferences();
                let side = |sign: i8| {
                    c.iter().zip(&delta).filter(|(_, &x)| x == sign).fold(QuadNum::zero(), |acc, (ci, _)| acc + ci.clone())
                };
                ensure(side(1) == side(-1), format!("unbalanced circumferences on {}", s.to_text()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} random metrics", checked))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x = flatcyl::scenarios::h31_first_metric(QuadNum::sqrt(2));
    let b = flatcyl::scenarios::h22_decomposition_b_metric([q(1, 3), q(1, 2), q(1, 5), q(1, 3)]);
    for s in [&x, &b] {
        let mu: Vec<QuadNum> = s.cylinders().iter().map(|c| &c.height / &c.circumference).collect();
        for _ in 0..10 {
            let sh = q(rng.gen_range(-40..=40), rng.gen_range(1..=13));
            let twisted = s.twist_deform(&mu.iter().map(|m| m * &sh).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
            let sheared = apply_matrix(s, &Matrix2::shear(sh.clone()))
                .and_then(|p| p.horizontal_decomposition(DEFAULT_STEP_CAP))
                .map_err(|e| e.to_string())?;
            ensure(translation_isomorphic(&twisted, &sheared), format!("shear {} differs from twist", sh))?;
            let k: Vec<QuadNum> = (0..s.cylinder_count()).map(|_| q(rng.gen_range(-3..=3), 1)).collect();
            ensure(translation_isomorphic(&s.twist_deform(&k).map_err(|e| e.to_string())?, s), "integer twist changes the surface")?;
        }
        for axis in [RelAxis::Real, RelAxis::Imaginary] {
            for _ in 0..10 {
                let t1 = q(rng.gen_range(-10..=10), 97);
                let t2 = q(rng.gen_range(-10..=10), 89);
                let once = rel_deform(s, &(&t1 + &t2), axis, false).map_err(|e| e.to_string())?;
                let twice = rel_deform(&rel_deform(s, &t1, axis, false).map_err(|e| e.to_string())?, &t2, axis, false)
                    .map_err(|e| e.to_string())?;
                ensure(translation_isomorphic(&once, &twice), format!("Rel {} + {} not additive", t1, t2))?;
                ensure(once.circumferences() == s.circumferences(), "Rel changes a circumference")?;
            }
        }
    }
    Ok("shear = twist by s·μ, integer twists, Rel additivity and circumferences".into())
}

fn criterion_7() -> Outcome {
    let log = replay_scenario("h22_theorem").map_err(|e| e.to_string())?;
    let ScenarioOutcome::H22 { final_surface, vertical, dark_grey, involution, .. } = &log.outcome else {
        return Err("wrong outcome".into());
    };
    let h = final_surface.heights();
    let c = final_surface.circumferences();
    let dark = &vertical.cylinders()[*dark_grey];
    ensure(vertical.cylinder_count() == 3, format!("{} vertical cylinders", vertical.cylinder_count()))?;
    ensure(dark.circumference == &h[0] + &h[1] && dark.height == c[0], "dark grey cylinder has the wrong shape")?;
    ensure(involution.quotient_genus == 1, format!("quotient genus {}", involution.quotient_genus))?;
    Ok(format!("3 vertical cylinders, dark grey {} x {}, quotient genus 1", dark.circumference, dark.height))
}

fn criterion_8() -> Outcome {
    let log = replay_scenario("h31_theorem").map_err(|e| e.to_string())?;
    let ScenarioOutcome::H31 { x, y, persisted, figure_persisted, forced_classes, arithmetic_degree } = &log.outcome else {
        return Err("wrong outcome".into());
    };
    let (cx, cy) = (x.circumferences(), y.circumferences());
    ensure(cy.contains(&cx[1]) && persisted.contains(&1), "c2 does not persist")?;
    ensure(figure_persisted.contains(&1) && figure_persisted.contains(&2), "figure metric: c2 or c3 does not persist")?;
    ensure(forced_classes.len() == 1 && *arithmetic_degree == 1, format!("classes {:?}, degree {}", forced_classes, arithmetic_degree))?;
    Ok("c2 persists (c2 and c3 at the figure metric); one commensurability class; degree 1".into())
}

fn criterion_9() -> Outcome {
    // Decomposition B over Q(√2); cylinders 1 and 4 are equivalent and
    // commensurable with heights 1 and 2, every other height distinct.
    let b = flatcyl::scenarios::h22_decomposition_b_metric([q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
    let mut h = b.heights();
    h[3] = q(2, 1);
    h[1] = q(1, 1);
    h[2] = q(3, 1);
    let s = b.with_heights_and_twists(&h, &b.twists()).map_err(|e| e.to_string())?;
    let v = check_noneq_and_height(&s).map_err(|e| e.to_string())?;
    let Verdict::Violated(w) = &v else {
        return Err(format!("verdict {}", v));
    };
    // Re-substitute: the relation kills (δ_i / c_i) and leaves h_i / c_i.
    let delta = mixed_structure(&s).map_err(|e| e.to_string())?.delta;
    let c = s.circumferences();
    let dot = |f: &dyn Fn(usize) -> QuadNum| {
        w.relation.iter().enumerate().fold(QuadNum::zero(), |acc, (i, r)| acc + &QuadNum::from_rational(r.clone()) * &f(i))
    };
    let on_u = dot(&|i| &QuadNum::from_int(delta[i] as i64) / &c[i]);
    let on_mu = dot(&|i| &h[i] / &c[i]);
    ensure(on_u.is_zero() && !on_mu.is_zero() && on_mu == w.residue, format!("witness does not re-substitute: {}", v))?;
    let mut arithmetic = appendix::h22_odd();
    arithmetic.extend(appendix::h22_hyp());
    arithmetic.extend(appendix::h31());
    for k in ["2,2", "3,1"] {
        for e in &classify(k).entries {
            let m = e.paired().cylinder_count();
            arithmetic.push(build_surface(&e.diagram, &vec![q(1, 1); m], &vec![q(0, 1); m]).map_err(|e| e.to_string())?);
        }
    }
    for s in &arithmetic {
        let r = check_all(s).map_err(|e| e.to_string())?;
        ensure(!r.any_violated(), format!("violation on an arithmetic surface:\n{}", r.to_text()))?;
    }
    Ok(format!("witness residue {}; {} arithmetic surfaces clean", w.residue, arithmetic.len()))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = false;
    let mut passed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(detail) => {
                passed += 1;
                println!("PASS criterion {}: {}", n, detail);
            }
            Err(why) => {
                unexpected |= !KNOWN_RED.contains(&n);
                println!("FAIL criterion {}: {}", n, why);
            }
        }
    }
    println!("{}/9 criteria pass", passed);
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
