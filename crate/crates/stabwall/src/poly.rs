//! Univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree with the leading coefficient
//! nonzero (the zero polynomial has an empty coefficient list). Degrees stay
//! tiny here (Hilbert polynomials are cubics, wall resultants reach degree
//! six), so plain Euclidean division over Q is used throughout.

use crate::rational::{format_rational, parse_rational, rat_int, to_f64};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// `c * t^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        RatPoly { coeffs }
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        RatPoly::monomial(BigRational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    /// k-th formal derivative.
    pub fn derivative(&self, k: usize) -> RatPoly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.coeffs.len() <= 1 {
                return RatPoly::zero();
            }
            p = RatPoly::from_coeffs(
                p.coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| c * BigRational::from_integer(i.into()))
                    .collect(),
            );
        }
        p
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `p(-t)`: negates odd-degree coefficients.
    pub fn reflect(&self) -> RatPoly {
        RatPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Euclidean division; panics on zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let r_lead = rem.last().unwrap().clone();
            if r_lead.is_zero() {
                rem.pop();
                continue;
            }
            let q = &r_lead / lead;
            let shift = rem.len() - 1 - dd;
            quot[shift] = q.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = &rem[idx] - &(c * &q);
            }
            rem.pop();
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Monic gcd over Q (Euclidean algorithm); gcd(0,0) = 0.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Normalizes to leading coefficient 1 (zero polynomial unchanged).
    pub fn into_monic(self) -> RatPoly {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = l.clone();
                RatPoly {
                    coeffs: self.coeffs.iter().map(|c| c / &inv).collect(),
                }
            }
        }
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn square_free_part(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let g = self.gcd(&self.derivative(1));
        if g.degree() == Some(0) {
            return self.clone().into_monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.into_monic()
    }

    /// Yun square-free decomposition: returns `(factor, multiplicity)` pairs
    /// with the factors monic, square-free, pairwise coprime, and
    /// `p = lc * prod factor^multiplicity`.
    pub fn square_free_decomposition(&self) -> Vec<(RatPoly, usize)> {
        if self.is_zero() || self.degree() == Some(0) {
            return Vec::new();
        }
        let p = self.clone().into_monic();
        let dp = p.derivative(1);
        let a0 = p.gcd(&dp);
        let (mut b, r) = p.div_rem(&a0);
        debug_assert!(r.is_zero());
        let (mut c, r) = dp.div_rem(&a0);
        debug_assert!(r.is_zero());
        let mut d = &c - &b.derivative(1);
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            let (b2, r) = b.div_rem(&a);
            debug_assert!(r.is_zero());
            b = b2;
            if b.degree() == Some(0) {
                break;
            }
            let (c2, r) = d.div_rem(&a);
            debug_assert!(r.is_zero());
            c = c2;
            d = &c - &b.derivative(1);
            i += 1;
        }
        out
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn proportional_to(&self, other: &RatPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.degree() != other.degree() {
            return false;
        }
        let c = self.leading().unwrap() / other.leading().unwrap();
        *self == other.scale(&c)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        RatPoly::from_coeffs(out)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        RatPoly::from_coeffs(out)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", format_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", format_rational(&a))?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

// Serialized as an ascending array of rational strings.
impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatPoly::from_coeffs(coeffs))
    }
}
