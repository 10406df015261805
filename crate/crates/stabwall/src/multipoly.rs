//! Sparse multivariate polynomials over Q in up to four variables, with an
//! exact gcd by recursive content/primitive-part reduction and a subresultant
//! pseudo-remainder sequence. Variables are ordered `x0 > x1 > x2 > x3`; the
//! degrees met here are tiny (forms of degree <= 2), so no modular tricks.

use crate::rational::{format_rational, rat_int};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const NUM_VARS: usize = 4;

/// Exponent vector for `x0^e0 x1^e1 x2^e2 x3^e3`.
pub type Monomial = [u8; NUM_VARS];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    /// Nonzero coefficients only, in lexicographic monomial order.
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; NUM_VARS], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        assert!(i < NUM_VARS);
        let mut mono = [0u8; NUM_VARS];
        mono[i] = 1;
        let mut p = MultiPoly::zero();
        p.add_term(mono, BigRational::one());
        p
    }

    /// A linear form `c0 x0 + c1 x1 + c2 x2 + c3 x3`.
    pub fn linear(coeffs: [i64; NUM_VARS]) -> Self {
        let mut p = MultiPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut mono = [0u8; NUM_VARS];
                mono[i] = 1;
                p.add_term(mono, rat_int(c));
            }
        }
        p
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0; NUM_VARS]))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
    }

    /// True when every monomial has the same total degree `d` (zero counts as
    /// homogeneous of any degree).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().map(|&e| e as u32).sum::<u32>() == d)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m[i] as u32).max().unwrap_or(0)
    }

    /// Writes `self` as a univariate polynomial in `x_i` with [`MultiPoly`]
    /// coefficients (ascending).
    fn as_univariate(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MultiPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest[i] as usize;
            rest[i] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    fn from_univariate(coeffs: Vec<MultiPoly>, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            for (m, a) in c.terms {
                let mut mono = m;
                mono[i] += e as u8;
                out.add_term(mono, a);
            }
        }
        out
    }

    /// Substitutes `x_i -> sum_j m[i][j] x_j` (an exact linear change of
    /// coordinates given by an integer matrix).
    pub fn substitute_linear(&self, m: &[[i64; NUM_VARS]; NUM_VARS]) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..NUM_VARS).map(|i| MultiPoly::linear(m[i])).collect();
        let mut out = MultiPoly::zero();
        for (mono, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[i];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Exact division; `None` when the remainder is nonzero. Implemented as
    /// recursive univariate division in the top variable present.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if divisor.is_constant() {
            let c = divisor.terms.get(&[0; NUM_VARS]).unwrap();
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let var = (0..NUM_VARS).find(|&i| divisor.degree_in(i) > 0).unwrap();
        let d_coeffs = divisor.as_univariate(var);
        let d_deg = d_coeffs.len() - 1;
        let d_lead = d_coeffs.last().unwrap();
        let mut rem = self.as_univariate(var);
        if rem.len() < d_coeffs.len() {
            return None;
        }
        let mut quot = vec![MultiPoly::zero(); rem.len() - d_deg];
        while rem.len() > d_deg {
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let q = top.div_exact(d_lead)?;
            let shift = rem.len() - 1 - d_deg;
            for (k, dc) in d_coeffs.iter().enumerate() {
                let prod = &q * dc;
                rem[shift + k] = &rem[shift + k] - &prod;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot[shift] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(MultiPoly::from_univariate(quot, var))
        } else {
            None
        }
    }

    /// Clears denominators and divides by the integer content; the result has
    /// coprime integer coefficients with positive leading coefficient.
    pub fn primitive_normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let int = (c * BigRational::from_integer(denom_lcm.clone())).to_integer();
            content = content.gcd(&int);
        }
        let scale = BigRational::new(denom_lcm, content);
        let scaled = self.scale(&scale);
        // positive leading (first in monomial order) coefficient
        if scaled.terms.values().next_back().unwrap().is_negative() {
            scaled.scale(&rat_int(-1))
        } else {
            scaled
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for i in 0..NUM_VARS {
                    m[i] += mb[i];
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat_int(-1))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x0", "x1", "x2", "x3"];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
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
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                write!(f, "{}", format_rational(&a))?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                write!(f, "{}{}", sep, names[i])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

/// Gcd of multivariate polynomials: recursive content/primitive-part with a
/// subresultant pseudo-remainder sequence in the top variable. The result is
/// primitive with positive leading coefficient (1 for coprime inputs).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_normalized();
    }
    if b.is_zero() {
        return a.primitive_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let var = (0..NUM_VARS)
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("nonconstant polynomials use a variable");
    if a.degree_in(var) == 0 || b.degree_in(var) == 0 {
        // the top variable appears in only one input: gcd divides the other's
        // coefficients in that variable
        let (flat, deep) = if a.degree_in(var) == 0 { (a, b) } else { (b, a) };
        let mut g = flat.primitive_normalized();
        for c in deep.as_univariate(var) {
            g = gcd(&g, &c);
            if g.is_constant() {
                return MultiPoly::one();
            }
        }
        return g;
    }
    let pa = primitive_part(a, var);
    let pb = primitive_part(b, var);
    let content_gcd = gcd(&content(a, var), &content(b, var));
    let prim_gcd = subresultant_gcd(&pa, &pb, var);
    (&content_gcd * &prim_gcd).primitive_normalized()
}

/// Content: gcd of the coefficients of `p` as a univariate in `x_var`.
fn content(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.as_univariate(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return MultiPoly::one();
        }
    }
    g
}

fn primitive_part(p: &MultiPoly, var: usize) -> MultiPoly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides").primitive_normalized()
}

/// Subresultant PRS on primitive inputs, both with positive degree in `var`.
fn subresultant_gcd(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut h = MultiPoly::one();
    let mut s = MultiPoly::one();
    loop {
        let df = f.degree_in(var) as i64;
        let dg = g.degree_in(var) as i64;
        let delta = (df - dg) as u32;
        let rem = pseudo_rem(&f, &g, var);
        if rem.is_zero() {
            return primitive_part(&g, var);
        }
        if rem.degree_in(var) == 0 {
            return MultiPoly::one();
        }
        // divisor s * h^delta of the subresultant sequence
        let mut divisor = s.clone();
        for _ in 0..delta {
            divisor = &divisor * &h;
        }
        let next = rem
            .div_exact(&divisor)
            .unwrap_or_else(|| rem.primitive_normalized());
        s = g.as_univariate(var).last().unwrap().clone();
        // h = s^delta / h^(delta-1)
        let mut num = MultiPoly::one();
        for _ in 0..delta {
            num = &num * &s;
        }
        let mut den = MultiPoly::one();
        for _ in 0..delta.saturating_sub(1) {
            den = &den * &h;
        }
        h = num.div_exact(&den).unwrap_or_else(|| num.primitive_normalized());
        f = g;
        g = next;
    }
}

/// `lc(g)^(df - dg + 1) f mod g` in `var`.
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let fc = f.as_univariate(var);
    let gc = g.as_univariate(var);
    let dg = gc.len() - 1;
    let lead = gc.last().unwrap();
    let mut rem = fc;
    let mut shifts = (rem.len() as i64 - gc.len() as i64 + 1).max(0) as u32;
    while rem.len() > dg {
        let top = rem.last().unwrap().clone();
        if top.is_zero() {
            rem.pop();
            shifts = shifts.saturating_sub(1);
            continue;
        }
        // rem = lead * rem - top * g * x^shift
        let shift = rem.len() - 1 - dg;
        for item in rem.iter_mut() {
            *item = &*item * lead;
        }
        for (k, gcoef) in gc.iter().enumerate() {
            let prod = &top * gcoef;
            rem[shift + k] = &rem[shift + k] - &prod;
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        shifts = shifts.saturating_sub(1);
    }
    // multiply by remaining lead powers so the subresultant bookkeeping holds
    let mut out = MultiPoly::from_univariate(rem, var);
    for _ in 0..shifts {
        out = &out * lead;
    }
    out
}
