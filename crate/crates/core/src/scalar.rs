//! Exact scalars: complex rationals attached to integer powers of π.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{HhError, Result};

pub type Rat = BigRational;
pub type CRat = Complex<BigRational>;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn crat(re: Rat, im: Rat) -> CRat {
    Complex::new(re, im)
}

pub fn creal(re: Rat) -> CRat {
    Complex::new(re, Rat::zero())
}

pub fn c_i() -> CRat {
    Complex::new(Rat::zero(), Rat::one())
}

pub fn cconj(c: &CRat) -> CRat {
    Complex::new(c.re.clone(), -c.im.clone())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Γ(m) for a positive integer m, as an exact rational.
pub fn gamma_int(m: u32) -> Rat {
    assert!(m >= 1, "gamma at nonpositive integer");
    Rat::from_integer(factorial(m - 1))
}

pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Parse "p/q", "p", or a decimal-free integer ratio.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || HhError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // very large numerators or denominators: scale through the bit lengths
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift >= 0 {
            r / Rat::from_integer(BigInt::one() << shift as usize)
        } else {
            r * Rat::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

pub fn crat_to_c64(c: &CRat) -> Complex64 {
    Complex64::new(rat_to_f64(&c.re), rat_to_f64(&c.im))
}

/// Finite Laurent polynomial in π with complex rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiScalar {
    terms: BTreeMap<i32, CRat>,
}

impl PiScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn i() -> Self {
        Self::from_crat(c_i(), 0)
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_crat(creal(r), 0)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(rat_int(k))
    }

    /// `c · π^k`
    pub fn from_crat(c: CRat, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `r · π^k`
    pub fn rat_pi(r: Rat, k: i32) -> Self {
        Self::from_crat(creal(r), k)
    }

    pub fn pi_pow(k: i32) -> Self {
        Self::rat_pi(Rat::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &CRat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// The single `(exponent, coefficient)` pair when the scalar is a monomial in π.
    pub fn single_power(&self) -> Option<(i32, &CRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, k: i32, c: &CRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, cconj(c))).collect(),
        }
    }

    pub fn scale(&self, c: &CRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, Complex::new(&v.re * r, &v.im * r)))
                .collect(),
        }
    }

    pub fn shift_pi(&self, dk: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k + dk, v.clone())).collect(),
        }
    }

    /// Inverse of a monomial in π; other scalars have no inverse in this ring.
    pub fn inv(&self) -> Result<Self> {
        match self.single_power() {
            Some((k, c)) => Ok(Self::from_crat(c.inv(), -k)),
            None => Err(HhError::Invalid(format!(
                "scalar {self} is not invertible (not a monomial in pi)"
            ))),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            acc += crat_to_c64(c) * std::f64::consts::PI.powi(*k);
        }
        acc
    }

    /// Sum of |coefficient| over all π powers, evaluated in floating point. Zero iff exactly zero.
    pub fn magnitude(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| crat_to_c64(c).norm() * std::f64::consts::PI.powi(*k))
            .sum()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    /// True if the scalar is a positive rational multiple of a single power of π.
    pub fn is_positive_monomial(&self) -> bool {
        matches!(self.single_power(), Some((_, c)) if c.im.is_zero() && c.re.is_positive())
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.terms.iter().rev() {
            let coeff = if c.im.is_zero() {
                fmt_real_pi(&c.re, *k)
            } else if c.re.is_zero() {
                format!("i*({})", fmt_real_pi(&c.im, *k))
            } else {
                format!("({} + i*{})", fmt_real_pi(&c.re, *k), fmt_real_pi(&c.im, *k))
            };
            parts.push(coeff);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn fmt_real_pi(r: &Rat, k: i32) -> String {
    let pi = match k.abs() {
        0 => String::new(),
        1 => "pi".to_string(),
        e => format!("pi^{e}"),
    };
    let num = r.numer();
    let den = r.denom();
    if k == 0 {
        return fmt_rat(r);
    }
    let (sign, num_abs) = if num.is_negative() {
        ("-", -num.clone())
    } else {
        ("", num.clone())
    };
    if k > 0 {
        let head = if num_abs.is_one() {
            pi
        } else {
            format!("{num_abs}*{pi}")
        };
        if den.is_one() {
            format!("{sign}{head}")
        } else {
            format!("{sign}{head}/{den}")
        }
    } else if den.is_one() {
        format!("{sign}{num_abs}/{pi}")
    } else {
        format!("{sign}{num_abs}/({den}*{pi})")
    }
}

impl Add<&PiScalar> for &PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &PiScalar) -> PiScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PiScalar {
    type Output = PiScalar;
    fn add(mut self, rhs: PiScalar) -> PiScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&PiScalar> for PiScalar {
    fn add_assign(&mut self, rhs: &PiScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Sub<&PiScalar> for &PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: &PiScalar) -> PiScalar {
        let mut out = self.clone();
        out += &(-rhs);
        out
    }
}

impl Sub for PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: PiScalar) -> PiScalar {
        &self - &rhs
    }
}

impl Neg for &PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        -&self
    }
}

impl Mul<&PiScalar> for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        let mut out = PiScalar::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: PiScalar) -> PiScalar {
        &self * &rhs
    }
}

impl From<Rat> for PiScalar {
    fn from(r: Rat) -> Self {
        PiScalar::from_rat(r)
    }
}

impl From<CRat> for PiScalar {
    fn from(c: CRat) -> Self {
        PiScalar::from_crat(c, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = PiScalar::rat_pi(rat(1, 2), 1);
        let b = PiScalar::rat_pi(rat(-1, 2), 1);
        assert!((&a + &b).is_zero());
        let c = &a * &PiScalar::rat_pi(rat(2, 1), -1);
        assert_eq!(c, PiScalar::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(PiScalar::rat_pi(rat(1, 2), 1).to_string(), "pi/2");
        assert_eq!(PiScalar::rat_pi(rat(4, 1), -2).to_string(), "4/pi^2");
        assert_eq!(PiScalar::zero().to_string(), "0");
        assert_eq!(PiScalar::rat_pi(rat(-3, 4), 2).to_string(), "-3*pi^2/4");
    }

    #[test]
    fn numeric_value_matches() {
        let s = PiScalar::rat_pi(rat(3, 7), -8) + PiScalar::rat_pi(rat(5, 3), 8);
        let exact = 3.0 / 7.0 * std::f64::consts::PI.powi(-8) + 5.0 / 3.0 * std::f64::consts::PI.powi(8);
        assert!((s.to_c64().re - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&rat(6, 4)), "3/2");
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(gamma_int(4), rat_int(6));
    }
}
