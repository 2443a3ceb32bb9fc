//! Exact decision of whether `A x = 0` has a strictly positive solution.
//!
//! By Gordan's alternative exactly one of the following holds: there is
//! `x > 0` with `A x = 0`, or there is `z` with `zᵀA ≥ 0` and `zᵀA ≠ 0`.
//! Writing `x = Kλ` for a kernel basis `K`, Fourier–Motzkin elimination on
//! `Kλ ≥ 1` either produces `λ` or a nonnegative combination `μ` of rows
//! with `μᵀK = 0`. Such a `μ` lies in the row space of `A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// Integer solution with every entry at least 1.
    Feasible(Vec<BigInt>),
    /// One coefficient per equation; the combination is `≥ 0` and nonzero.
    Infeasible(Vec<BigRational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    mult: Vec<BigRational>,
}

impl Ineq {
    fn scaled(&self, s: &BigRational) -> Ineq {
        Ineq {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            rhs: &self.rhs * s,
            mult: self.mult.iter().map(|c| c * s).collect(),
        }
    }

    fn add(&self, other: &Ineq) -> Ineq {
        Ineq {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            rhs: &self.rhs + &other.rhs,
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(self) -> Ineq {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => {
                let s = c.abs().recip();
                self.scaled(&s)
            }
            None => self,
        }
    }
}

/// Decides feasibility of `A x = 0, x > 0` for an `m × n` matrix.
pub fn positive_kernel(a: &Matrix, ncols: usize) -> Feasibility {
    let kernel = linalg::kernel_basis(a, ncols);
    let r = kernel.len();
    if r == 0 {
        let mut e0 = vec![BigRational::zero(); ncols];
        if ncols > 0 {
            e0[0] = BigRational::one();
        }
        return Feasibility::Infeasible(row_space_preimage(a, ncols, &e0));
    }
    let mut system: Vec<Ineq> = (0..ncols)
        .map(|i| {
            let mut mult = vec![BigRational::zero(); ncols];
            mult[i] = BigRational::one();
            Ineq {
                coeffs: kernel.iter().map(|k| k[i].clone()).collect(),
                rhs: BigRational::one(),
                mult,
            }
        })
        .collect();
    let mut stages: Vec<Vec<Ineq>> = Vec::new();
    for var in 0..r {
        stages.push(system.clone());
        system = eliminate(&system, var);
    }
    if let Some(bad) = system.iter().find(|q| q.rhs.is_positive()) {
        return Feasibility::Infeasible(row_space_preimage(a, ncols, &bad.mult));
    }
    let mut lambda = vec![BigRational::zero(); r];
    for var in (0..r).rev() {
        lambda[var] = choose_value(&stages[var], var, &lambda);
    }
    let x: Vec<BigRational> = (0..ncols)
        .map(|i| (0..r).fold(BigRational::zero(), |acc, j| acc + &kernel[j][i] * &lambda[j]))
        .collect();
    let denom = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut xi: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let g = xi.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        xi = xi.into_iter().map(|v| v / &g).collect();
    }
    debug_assert!(xi.iter().all(|v| v.is_positive()));
    Feasibility::Feasible(xi)
}

fn eliminate(system: &[Ineq], var: usize) -> Vec<Ineq> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out: Vec<Ineq> = Vec::new();
    for q in system {
        let c = &q.coeffs[var];
        if c.is_positive() {
            lower.push(q.scaled(&c.recip()));
        } else if c.is_negative() {
            upper.push(q.scaled(&(-c).recip()));
        } else {
            out.push(q.clone());
        }
    }
    for l in &lower {
        for u in &upper {
            out.push(l.add(u));
        }
    }
    let mut dedup: Vec<Ineq> = Vec::new();
    for q in out.into_iter().map(Ineq::normalized) {
        let trivial = q.coeffs.iter().all(|c| c.is_zero()) && !q.rhs.is_positive();
        if trivial {
            continue;
        }
        match dedup.iter_mut().find(|d| d.coeffs == q.coeffs) {
            Some(d) => {
                if q.rhs > d.rhs {
                    *d = q;
                }
            }
            None => dedup.push(q),
        }
    }
    dedup
}

/// A value of `var` satisfying every inequality of the stage, given the
/// later variables already fixed in `lambda` (earlier ones have zero
/// coefficient in this stage).
fn choose_value(stage: &[Ineq], var: usize, lambda: &[BigRational]) -> BigRational {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for q in stage {
        let c = &q.coeffs[var];
        if c.is_zero() {
            continue;
        }
        let rest = (0..q.coeffs.len())
            .filter(|&j| j != var)
            .fold(BigRational::zero(), |acc, j| acc + &q.coeffs[j] * &lambda[j]);
        let bound = (&q.rhs - rest) / c;
        if c.is_positive() {
            lo = Some(match lo {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        } else {
            hi = Some(match hi {
                Some(h) if h <= bound => h,
                _ => bound,
            });
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => {
            let c = l.ceil();
            if c <= h {
                c
            } else {
                l
            }
        }
        (Some(l), None) => l.ceil(),
        (None, Some(h)) => h.floor(),
        (None, None) => BigRational::zero(),
    }
}

/// Solves `Aᵀ z = y` for `y` in the row space of `A`.
fn row_space_preimage(a: &Matrix, ncols: usize, y: &[BigRational]) -> Vec<BigRational> {
    let at = linalg::transpose(a, ncols);
    linalg::solve(&at, a.len(), y).expect("combination lies in the row space")
}

/// Checks that `z` certifies infeasibility: `zᵀA ≥ 0` and nonzero.
pub fn certificate_valid(a: &Matrix, ncols: usize, z: &[BigRational]) -> bool {
    if z.len() != a.len() {
        return false;
    }
    let w: Vec<BigRational> = (0..ncols)
        .map(|c| (0..a.len()).fold(BigRational::zero(), |acc, r| acc + &z[r] * &a[r][c]))
        .collect();
    w.iter().all(|v| !v.is_negative()) && w.iter().any(|v| !v.is_zero())
}

/// Checks an integer witness: positive entries and `A x = 0`.
pub fn witness_valid(a: &Matrix, x: &[BigInt]) -> bool {
    let xr: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    x.iter().all(|v| v.is_positive()) && linalg::mat_vec(a, &xr).iter().all(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_matrix;

    #[test]
    fn feasible_system() {
        let a = rat_matrix(&[vec![1, 1, -1, 0], vec![0, 1, 1, -2]]);
        match positive_kernel(&a, 4) {
            Feasibility::Feasible(x) => assert!(witness_valid(&a, &x)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn infeasible_system() {
        // x0 + x1 = x0 forces x1 = 0.
        let a = rat_matrix(&[vec![0, 1, 0], vec![1, 0, -1]]);
        match positive_kernel(&a, 3) {
            Feasibility::Infeasible(z) => assert!(certificate_valid(&a, 3, &z)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn full_rank_is_infeasible() {
        let a = rat_matrix(&[vec![1, 0], vec![0, 1]]);
        match positive_kernel(&a, 2) {
            Feasibility::Infeasible(z) => assert!(certificate_valid(&a, 2, &z)),
            other => panic!("{:?}", other),
        }
    }
}
