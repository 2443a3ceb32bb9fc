//! Exact arithmetic in a real quadratic field Q(√D).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// An element `a + b√D` with rational `a`, `b`.
///
/// `d == 0` marks a rational number, in which case `b` is zero. Rational
/// values combine freely with any field; combining two irrational values
/// with different discriminants panics, so surfaces validate their field
/// up front (see [`common_discriminant`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Splits `n` into `s * s * f` with `f` square-free and returns `(s, f)`.
fn square_part(mut n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut f = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QuadNum {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> QuadNum {
        if b.is_zero() || d == 0 {
            assert!(b.is_zero() || d != 0, "irrational part without a discriminant");
            return QuadNum { a, b: BigRational::zero(), d: 0 };
        }
        let (s, f) = square_part(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if f == 1 {
            QuadNum { a: a + b, b: BigRational::zero(), d: 0 }
        } else {
            QuadNum { a, b, d: f }
        }
    }

    pub fn from_rational(a: BigRational) -> QuadNum {
        QuadNum { a, b: BigRational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> QuadNum {
        QuadNum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> QuadNum {
        QuadNum::from_rational(rat(n, d))
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> QuadNum {
        QuadNum::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> QuadNum {
        QuadNum::from_int(0)
    }

    pub fn one() -> QuadNum {
        QuadNum::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The discriminant tag, or 0 for a rational value.
    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    fn field_with(&self, other: &QuadNum) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixed discriminants {} and {}", d, e),
        }
    }

    /// The Galois conjugate `a - b√D`.
    pub fn conjugate(&self) -> QuadNum {
        QuadNum { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// The field norm `a² - D b²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - d * &self.b * &self.b
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // a and b√D have opposite signs; compare magnitudes of squares.
        let d = BigRational::from_integer(BigInt::from(self.d));
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> QuadNum {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> QuadNum {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        QuadNum { a: &self.a / &n, b: -(&self.b / &n), d: self.d }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        let approx = self.to_f64().floor();
        let mut n = BigInt::from(approx as i64);
        loop {
            let q = QuadNum::from_rational(BigRational::from_integer(n.clone()));
            if &q > self {
                n -= 1;
                continue;
            }
            let q1 = QuadNum::from_rational(BigRational::from_integer(&n + 1));
            if &q1 <= self {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Reduces into `[0, m)` for positive `m`.
    pub fn rem_euclid(&self, m: &QuadNum) -> QuadNum {
        assert!(m.is_positive(), "modulus must be positive");
        let k = (self.clone() / m.clone()).floor();
        self.clone() - m.clone() * QuadNum::from_rational(BigRational::from_integer(k))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Integer multiple helper.
    pub fn scale(&self, k: i64) -> QuadNum {
        self.clone() * QuadNum::from_int(k)
    }

    /// Midpoint of two values.
    pub fn midpoint(&self, other: &QuadNum) -> QuadNum {
        (self.clone() + other.clone()) * QuadNum::from_frac(1, 2)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// The single discriminant shared by all irrational values, or 0.
pub fn common_discriminant<'a, I: IntoIterator<Item = &'a QuadNum>>(
    values: I,
) -> Result<u64, (u64, u64)> {
    let mut d = 0;
    for v in values {
        if v.d != 0 {
            if d == 0 {
                d = v.d;
            } else if d != v.d {
                return Err((d, v.d));
            }
        }
    }
    Ok(d)
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &QuadNum) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &QuadNum) -> Ordering {
        (self.clone() - other.clone()).signum().cmp(&0)
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, o: QuadNum) -> QuadNum {
        let d = self.field_with(&o);
        QuadNum::new(self.a + o.a, self.b + o.b, d)
    }
}

impl<'a> Add<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn add(self, o: &QuadNum) -> QuadNum {
        self.clone() + o.clone()
    }
}

impl AddAssign for QuadNum {
    fn add_assign(&mut self, o: QuadNum) {
        *self = self.clone() + o;
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, o: QuadNum) -> QuadNum {
        let d = self.field_with(&o);
        QuadNum::new(self.a - o.a, self.b - o.b, d)
    }
}

impl<'a> Sub<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn sub(self, o: &QuadNum) -> QuadNum {
        self.clone() - o.clone()
    }
}

impl SubAssign for QuadNum {
    fn sub_assign(&mut self, o: QuadNum) {
        *self = self.clone() - o;
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, o: QuadNum) -> QuadNum {
        let d = self.field_with(&o);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + dd * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadNum::new(a, b, d)
    }
}

impl<'a> Mul<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn mul(self, o: &QuadNum) -> QuadNum {
        self.clone() * o.clone()
    }
}

impl Div for QuadNum {
    type Output = QuadNum;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: QuadNum) -> QuadNum {
        self * o.recip()
    }
}

impl<'a> Div<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn div(self, o: &QuadNum) -> QuadNum {
        self.clone() / o.clone()
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a, b: -self.b, d: self.d }
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> QuadNum {
        QuadNum::from_int(n)
    }
}

impl From<BigRational> for QuadNum {
    fn from(r: BigRational) -> QuadNum {
        QuadNum::from_rational(r)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let b = fmt_rat(&self.b);
        if self.a.is_zero() {
            write!(f, "{}*sqrt({})", b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{}{}*sqrt({})", fmt_rat(&self.a), b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", fmt_rat(&self.a), b, self.d)
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::new(format!("bad rational `{}`", s));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

impl FromStr for QuadNum {
    type Err = ParseError;

    /// Accepts `p/q`, `r/s*sqrt(D)` and `p/q+r/s*sqrt(D)` (or with `-`).
    fn from_str(s: &str) -> Result<QuadNum, ParseError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find("*sqrt(") else {
            return Ok(QuadNum::from_rational(parse_rat(&s)?));
        };
        let tail = &s[pos + 6..];
        let d_str = tail
            .strip_suffix(')')
            .ok_or_else(|| ParseError::new(format!("bad surd `{}`", s)))?;
        let d: u64 = d_str
            .parse()
            .map_err(|_| ParseError::new(format!("bad discriminant `{}`", d_str)))?;
        let head = &s[..pos];
        // Split head into the rational part and the coefficient of the surd.
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rat(&head[..i])?, parse_rat(head[i..].trim_start_matches('+'))?),
            None => (BigRational::zero(), parse_rat(head)?),
        };
        if d == 0 {
            return Err(ParseError::new("discriminant must be positive"));
        }
        Ok(QuadNum::new(a, b, d))
    }
}

/// `gcd`-reduced integer helper used by callers that need exact integer ratios.
pub fn integer_ratio(x: &QuadNum, y: &QuadNum) -> Option<(BigInt, BigInt)> {
    let r = (x.clone() / y.clone()).to_rational()?;
    let g = r.numer().gcd(r.denom());
    Some((r.numer() / &g, r.denom() / &g))
}
