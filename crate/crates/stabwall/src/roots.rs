//! Certified real-root isolation via Sturm sequences.
//!
//! Roots are isolated on the square-free part, then bisected to a requested
//! tolerance; multiplicities come from the Yun decomposition. An
//! [`IsolatedRoot`] keeps its defining square-free polynomial together with a
//! rational isolating interval, so downstream code can refine it, compare it
//! against rationals, and decide the sign of another polynomial at the root,
//! all exactly.

use crate::poly::RatPoly;
use crate::rational::{rat, rat_int, to_f64};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("identically zero")]
    IdenticallyZero,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("empty window")]
    EmptyWindow,
}

/// A t-interval with open/closed endpoints; `lo <= hi` required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: BigRational,
    pub hi: BigRational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Window {
    /// `(lo, hi]`, the window shape used by the heart intervals.
    pub fn half_open(lo: BigRational, hi: BigRational) -> Self {
        Window { lo, hi, lo_open: true, hi_open: false }
    }

    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        Window { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        Window { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let lo_ok = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let hi_ok = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        lo_ok && hi_ok
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { "(" } else { "[" },
            crate::rational::format_rational(&self.lo),
            crate::rational::format_rational(&self.hi),
            if self.hi_open { ")" } else { "]" },
        )
    }
}

/// A real root certified by a square-free defining polynomial and a rational
/// isolating interval. `lo == hi` marks an exact rational root; otherwise the
/// polynomial changes sign strictly across `[lo, hi]` and the root is the
/// unique root inside.
#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    poly: RatPoly,
    lo: BigRational,
    hi: BigRational,
    multiplicity: usize,
}

impl IsolatedRoot {
    pub fn exact(value: BigRational, poly: RatPoly, multiplicity: usize) -> Self {
        IsolatedRoot { poly, lo: value.clone(), hi: value, multiplicity }
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Shrinks the isolating interval below `tol` by sign-preserving bisection.
    pub fn refine(&mut self, tol: &BigRational) {
        if self.lo == self.hi {
            return;
        }
        let mut f_lo = self.poly.eval(&self.lo);
        debug_assert!(!f_lo.is_zero());
        while self.width() > *tol {
            let mid = self.midpoint();
            let f_mid = self.poly.eval(&mid);
            if f_mid.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if f_mid.is_negative() == f_lo.is_negative() {
                self.lo = mid;
                f_lo = f_mid;
            } else {
                self.hi = mid;
            }
        }
    }

    pub fn refined(mut self, tol: &BigRational) -> Self {
        self.refine(tol);
        self
    }

    /// Upgrades an interval root to an exact rational when the simplest
    /// rational inside the interval happens to be the root. After refinement
    /// to width `w`, this certifies every rational root of denominator up to
    /// about `1/sqrt(w)` (any other rational in the interval is then more
    /// complex than the root itself).
    pub fn promote_rational(&mut self) {
        if self.lo == self.hi {
            return;
        }
        if let Some(q) = simplest_rational_between(&self.lo, &self.hi) {
            if self.poly.eval(&q).is_zero() {
                self.lo = q.clone();
                self.hi = q;
            }
        }
    }

    /// Exact order of this root against a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(q);
        }
        if q <= &self.lo {
            // q at lo: lo is not a root (strict sign change), so root > q
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        let f_q = self.poly.eval(q);
        if f_q.is_zero() {
            return Ordering::Equal;
        }
        let f_lo = self.poly.eval(&self.lo);
        if f_q.is_negative() == f_lo.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact order against another isolated root (refines both as needed;
    /// equality is decided through a gcd witness).
    pub fn cmp_root(&self, other: &IsolatedRoot) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(q).reverse();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        // Equal roots are caught by a shared factor having a sign change on
        // the overlap; otherwise refinement separates the intervals.
        let g = a.poly.gcd(&b.poly);
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if g.degree().unwrap_or(0) > 0 {
                let lo = a.lo.clone().max(b.lo.clone());
                let hi = a.hi.clone().min(b.hi.clone());
                if lo < hi {
                    let g_lo = g.eval(&lo);
                    let g_hi = g.eval(&hi);
                    if !g_lo.is_zero() && !g_hi.is_zero() && g_lo.is_negative() != g_hi.is_negative()
                    {
                        // both roots are the unique root of g in the overlap
                        return Ordering::Equal;
                    }
                }
            }
            let w = a.width().min(b.width()) / rat_int(4);
            if w.is_zero() {
                // one interval degenerated to a rational
                if let Some(q) = a.as_rational() {
                    return b.cmp_rational(q).reverse();
                }
                if let Some(q) = b.as_rational() {
                    return a.cmp_rational(q);
                }
                unreachable!("zero-width non-rational isolating interval");
            }
            a.refine(&w);
            b.refine(&w);
        }
    }
}

/// Sign of `g` at an isolated root, decided exactly: zero is certified by a
/// gcd with a sign change on the isolating interval, otherwise the interval
/// is refined until interval evaluation of `g` excludes zero.
pub fn sign_at(g: &RatPoly, root: &IsolatedRoot) -> Ordering {
    if g.is_zero() {
        return Ordering::Equal;
    }
    if let Some(q) = root.as_rational() {
        let v = g.eval(q);
        return v.cmp(&BigRational::zero());
    }
    let common = root.poly().gcd(g);
    if common.degree().unwrap_or(0) > 0 {
        let c_lo = common.eval(root.lo());
        let c_hi = common.eval(root.hi());
        if !c_lo.is_zero() && !c_hi.is_zero() && c_lo.is_negative() != c_hi.is_negative() {
            return Ordering::Equal;
        }
    }
    let mut r = root.clone();
    loop {
        let (min, max) = interval_eval(g, &r.lo, &r.hi);
        if min.is_positive() {
            return Ordering::Greater;
        }
        if max.is_negative() {
            return Ordering::Less;
        }
        let w = r.width() / rat_int(8);
        r.refine(&w);
        if let Some(q) = r.as_rational() {
            return g.eval(q).cmp(&BigRational::zero());
        }
    }
}

/// Interval evaluation of `g` over `[lo, hi]` by Horner with interval ops.
fn interval_eval(g: &RatPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut min = BigRational::zero();
    let mut max = BigRational::zero();
    for c in g.coeffs().iter().rev() {
        // [min,max] * [lo,hi] + c
        let candidates = [&min * lo, &min * hi, &max * lo, &max * hi];
        let mut new_min = candidates[0].clone();
        let mut new_max = candidates[0].clone();
        for cand in &candidates[1..] {
            if *cand < new_min {
                new_min = cand.clone();
            }
            if *cand > new_max {
                new_max = cand.clone();
            }
        }
        min = new_min + c;
        max = new_max + c;
    }
    (min, max)
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative(1)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

/// Sign variations of the chain at `x`; with the chain of a square-free `p`,
/// `variations(a) - variations(b)` counts roots in `(a, b]`.
fn variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let neg = v.is_negative();
        if let Some(l) = last {
            if l != neg {
                count += 1;
            }
        }
        last = Some(neg);
    }
    count
}

/// All real roots of `p` in `window`, isolated to width `<= tol`, with
/// multiplicities from square-free factorization, sorted increasing.
pub fn real_roots(
    p: &RatPoly,
    window: &Window,
    tol: &BigRational,
) -> Result<Vec<IsolatedRoot>, RootError> {
    if p.is_zero() {
        return Err(RootError::IdenticallyZero);
    }
    if !tol.is_positive() {
        return Err(RootError::NonPositiveTolerance);
    }
    if window.lo > window.hi || (window.lo == window.hi && (window.lo_open || window.hi_open)) {
        return Err(RootError::EmptyWindow);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }

    let factors = p.square_free_decomposition();
    let mut out: Vec<IsolatedRoot> = Vec::new();
    for (factor, multiplicity) in &factors {
        for mut root in isolate_square_free(factor, window)? {
            root.multiplicity = *multiplicity;
            root.refine(tol);
            root.promote_rational();
            out.push(root);
        }
    }
    out.sort_by(|a, b| a.cmp_root(b));
    Ok(out)
}

/// The rational with smallest denominator strictly inside `(lo, hi)`;
/// `None` when the interval is empty. Classic Stern-Brocot descent.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    if lo >= hi {
        return None;
    }
    Some(simplest_impl(lo, hi))
}

fn simplest_impl(lo: &BigRational, hi: &BigRational) -> BigRational {
    let n = lo.floor() + BigRational::one(); // smallest integer > lo
    if &n < hi {
        return n;
    }
    let base = lo.floor();
    let f_lo = lo - &base; // in [0, 1)
    let f_hi = hi - &base; // in (f_lo, 1]
    if f_lo.is_zero() {
        // simplest in (0, f_hi) is 1/k for the smallest k with 1/k < f_hi
        let k = (BigRational::one() / &f_hi).floor() + BigRational::one();
        return base + BigRational::one() / k;
    }
    base + BigRational::one()
        / simplest_impl(&(BigRational::one() / &f_hi), &(BigRational::one() / &f_lo))
}

/// Default root-isolation tolerance, 10^-9.
pub fn default_tol() -> BigRational {
    rat(1, 1_000_000_000)
}

fn isolate_square_free(p: &RatPoly, window: &Window) -> Result<Vec<IsolatedRoot>, RootError> {
    let mut out = Vec::new();
    if window.lo == window.hi {
        if p.eval(&window.lo).is_zero() {
            out.push(IsolatedRoot::exact(window.lo.clone(), p.clone(), 1));
        }
        return Ok(out);
    }
    // Endpoint roots are handled explicitly; Sturm counts roots in (lo, hi].
    if !window.lo_open && p.eval(&window.lo).is_zero() {
        out.push(IsolatedRoot::exact(window.lo.clone(), p.clone(), 1));
    }
    let chain = sturm_chain(p);
    let hi_is_root = p.eval(&window.hi).is_zero();
    if hi_is_root && !window.hi_open {
        out.push(IsolatedRoot::exact(window.hi.clone(), p.clone(), 1));
    }
    let mut count = variations(&chain, &window.lo) - variations(&chain, &window.hi);
    if hi_is_root {
        count -= 1; // already reported (or excluded by an open endpoint)
    }
    if count > 0 {
        subdivide(p, &chain, &window.lo, &window.hi, count, &mut out);
    }
    out.sort_by(|a, b| a.cmp_root(b));
    Ok(out)
}

/// Splits until each piece brackets a single root. `count` is the number of
/// roots strictly inside `(lo, hi)`; the endpoints themselves may be roots
/// that were already reported or excluded by the caller.
fn subdivide(
    p: &RatPoly,
    chain: &[RatPoly],
    lo: &BigRational,
    hi: &BigRational,
    count: usize,
    out: &mut Vec<IsolatedRoot>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        let mut a = lo.clone();
        let mut b = hi.clone();
        loop {
            let fa = p.eval(&a);
            let fb = p.eval(&b);
            if !fa.is_zero() && !fb.is_zero() {
                // square-free p with exactly one (simple) root inside
                debug_assert!(fa.is_negative() != fb.is_negative());
                out.push(IsolatedRoot { poly: p.clone(), lo: a, hi: b, multiplicity: 1 });
                return;
            }
            // an endpoint coincides with a different root: shrink past it
            let m = (&a + &b) / rat_int(2);
            if p.eval(&m).is_zero() {
                out.push(IsolatedRoot::exact(m, p.clone(), 1));
                return;
            }
            let mut right = variations(chain, &m) - variations(chain, &b);
            if p.eval(&b).is_zero() {
                right -= 1; // b is some other, already handled root
            }
            if right == 1 {
                a = m;
            } else {
                b = m;
            }
        }
    }
    let mid = (lo + hi) / rat_int(2);
    if p.eval(&mid).is_zero() {
        out.push(IsolatedRoot::exact(mid.clone(), p.clone(), 1));
        let left = variations(chain, lo) - variations(chain, &mid) - 1;
        subdivide(p, chain, lo, &mid, left, out);
        subdivide(p, chain, &mid, hi, count - left - 1, out);
        return;
    }
    let left = variations(chain, lo) - variations(chain, &mid);
    subdivide(p, chain, lo, &mid, left, out);
    subdivide(p, chain, &mid, hi, count - left, out);
}

/// A real number certified either exactly (rational) or as an isolated
/// algebraic root. Used for wall endpoints and square roots of rationals.
#[derive(Debug, Clone)]
pub enum CertifiedReal {
    Rational(BigRational),
    Algebraic(IsolatedRoot),
}

impl CertifiedReal {
    /// The nonnegative square root of `q >= 0`, as a certified real.
    pub fn sqrt(q: &BigRational) -> Option<CertifiedReal> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(CertifiedReal::Rational(BigRational::zero()));
        }
        // exact rational square root when numerator and denominator are squares
        let ns = q.numer().sqrt();
        let ds = q.denom().sqrt();
        if &ns * &ns == *q.numer() && &ds * &ds == *q.denom() {
            return Some(CertifiedReal::Rational(BigRational::new(ns, ds)));
        }
        let poly = RatPoly::from_coeffs(vec![-q.clone(), BigRational::zero(), BigRational::one()]);
        let hi = q.clone().max(BigRational::one()) + BigRational::one();
        Some(CertifiedReal::Algebraic(IsolatedRoot {
            poly,
            lo: BigRational::zero(),
            hi,
            multiplicity: 1,
        }))
    }

    /// `c + sign * sqrt(d)` for `d >= 0`, the root of `(x-c)^2 - d`.
    pub fn offset_sqrt(c: &BigRational, d: &BigRational, positive_branch: bool) -> Option<CertifiedReal> {
        let s = CertifiedReal::sqrt(d)?;
        match s {
            CertifiedReal::Rational(r) => Some(CertifiedReal::Rational(if positive_branch {
                c + &r
            } else {
                c - &r
            })),
            CertifiedReal::Algebraic(_) => {
                // (x - c)^2 - d, expanded
                let poly = RatPoly::from_coeffs(vec![
                    c * c - d,
                    -(c + c),
                    BigRational::one(),
                ]);
                let bound = d.clone().max(BigRational::one()) + BigRational::one();
                let (lo, hi) = if positive_branch {
                    (c.clone(), c + &bound)
                } else {
                    (c - &bound, c.clone())
                };
                Some(CertifiedReal::Algebraic(IsolatedRoot {
                    poly,
                    lo,
                    hi,
                    multiplicity: 1,
                }))
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            CertifiedReal::Rational(q) => Some(q),
            CertifiedReal::Algebraic(r) => r.as_rational(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            CertifiedReal::Rational(q) => to_f64(q),
            CertifiedReal::Algebraic(r) => r.clone().refined(&rat(1, 1_000_000_000_000)).to_f64(),
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        match self {
            CertifiedReal::Rational(r) => r.cmp(q),
            CertifiedReal::Algebraic(r) => r.cmp_rational(q),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_rational(&BigRational::zero()) == Ordering::Greater
    }
}
