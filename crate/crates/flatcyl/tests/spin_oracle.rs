mod common;

use common::winding::winding_parity;
use flatcyl::appendix;
use flatcyl::cylinder::build_surface;
use flatcyl::enumeration::{classify_stratum, ClassifyOptions, SingularityProfile};
use flatcyl::quad::QuadNum;
use flatcyl::spin::spin_parity;

fn twisted(s: &flatcyl::cylinder::CylinderSurface, k: i64) -> flatcyl::cylinder::CylinderSurface {
    let dt: Vec<QuadNum> = (0..s.cylinder_count() as i64).map(|i| QuadNum::from_frac(k * (i + 1), 7)).collect();
    s.shift_twists(&dt).unwrap()
}

#[test]
fn reference_surfaces_agree_with_winding_numbers() {
    for s in appendix::h22_odd().iter().chain(&appendix::h22_hyp()) {
        for k in 0..3 {
            let t = twisted(s, k);
            assert_eq!(spin_parity(&t).unwrap().as_bit(), winding_parity(&t), "{}", t.to_text());
        }
    }
}

#[test]
fn classified_even_strata_agree_with_winding_numbers() {
    for kappa in [vec![2, 2], vec![4]] {
        let c = classify_stratum(&SingularityProfile::new(kappa).unwrap(), ClassifyOptions::default()).unwrap();
        let mut seen = [false; 2];
        for e in &c.entries {
            let m = e.paired().cylinder_count();
            let s = build_surface(&e.diagram, &vec![QuadNum::one(); m], &vec![QuadNum::zero(); m]).unwrap();
            let t = twisted(&s, 2);
            let w = winding_parity(&t);
            assert_eq!(spin_parity(&t).unwrap().as_bit(), w, "{}", t.to_text());
            seen[w as usize] = true;
        }
        assert_eq!(seen, [true, true]);
    }
}
