//! Numerical wall curves in the `(t, u)`-plane for a one-dimensional class.
//!
//! A wall between the parent `v = (0, 0, m > 0, ch3)` and an actor `A` is the
//! locus where the `(t, u)`-slopes agree; eliminating `u` gives
//! `u^2(t) = 2 P(t) / Q(t)` with `P = m chi_t(A) - (mt + chi) chi'_t(A)` and
//! `Q = m chi''_t(A)`. Walls are stored as exact rational functions; only
//! rendering ever samples them.

use crate::kclass::KClass;
use crate::poly::RatPoly;
use crate::rational::{rat_int, to_f64};
use crate::roots::{real_roots, sign_at, CertifiedReal, IsolatedRoot, Window};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WallError {
    #[error("parent class must be one-dimensional: ch0 = ch1 = 0, ch2 > 0")]
    BadParent,
    #[error("degenerate actor: ch0 = ch1 = 0 doesn't define a wall")]
    DegenerateActor,
    #[error("degenerate: proportional slopes")]
    ProportionalSlopes,
    #[error("coincident walls")]
    CoincidentWalls,
    #[error("walls have different parent classes")]
    ParentMismatch,
    #[error("no finite critical u: chi''_t(h) = 0")]
    NoFiniteCriticalU,
}

/// Wall taxonomy. Type 1 has its vertical asymptote left of the center,
/// Type 3 right of it; Type 2 (rank-zero actor) is a semicircle. An actor
/// whose asymptote lands exactly on the center is reported separately with a
/// warning, since the Type 1 / Type 3 dichotomy is silent there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallKind {
    Type1,
    Type2,
    Type3,
    AsymptoteAtCenter,
}

/// Endpoint of a wall component on the t-axis (`u = 0` at roots of `P`),
/// open at vertical asymptotes where `u` diverges.
#[derive(Debug, Clone)]
pub enum WallEnd {
    NegInfinite,
    PosInfinite,
    Root(IsolatedRoot),
    Asymptote(BigRational),
}

impl WallEnd {
    pub fn to_f64(&self) -> f64 {
        match self {
            WallEnd::NegInfinite => f64::NEG_INFINITY,
            WallEnd::PosInfinite => f64::INFINITY,
            WallEnd::Root(r) => r.to_f64(),
            WallEnd::Asymptote(t) => to_f64(t),
        }
    }
}

/// A maximal t-interval on which `u^2(t) >= 0`.
#[derive(Debug, Clone)]
pub struct WallComponent {
    pub lo: WallEnd,
    pub hi: WallEnd,
}

impl WallComponent {
    pub fn is_bounded(&self) -> bool {
        matches!(self.lo, WallEnd::Root(_)) && matches!(self.hi, WallEnd::Root(_))
    }
}

#[derive(Debug, Clone)]
pub struct WallCurve {
    pub parent: KClass,
    pub actor: KClass,
    /// `P(t)`; the wall is `u^2 = 2 P / Q`.
    pub num: RatPoly,
    /// `Q(t)`, linear in `t` (constant for Type 2).
    pub den: RatPoly,
    pub kind: WallKind,
    /// `-chi/m`, the common center of bounded parts.
    pub center_t: BigRational,
    /// `-ch1(A)/ch0(A) - 2` when `ch0(A) != 0`.
    pub asymptote_t: Option<BigRational>,
    pub components: Vec<WallComponent>,
    pub warning: Option<String>,
}

/// `chi = 2 ch2 + ch3` of a class (Riemann-Roch Euler characteristic for
/// one-dimensional classes).
pub fn euler_characteristic(v: &KClass) -> BigRational {
    rat_int(2) * &v.ch2 + &v.ch3
}

fn require_one_dimensional(v: &KClass) -> Result<(), WallError> {
    if v.ch0.is_zero() && v.ch1.is_zero() && v.ch2.is_positive() {
        Ok(())
    } else {
        Err(WallError::BadParent)
    }
}

/// Slope-equality locus of two arbitrary classes, as `u^2 = 2 num / den`:
/// `num = chi_a chi'_b - chi_b chi'_a`, `den = chi''_a chi'_b - chi''_b chi'_a`.
pub fn two_class_wall(a: &KClass, b: &KClass) -> (RatPoly, RatPoly) {
    let chi_a = a.hilbert_poly();
    let chi_b = b.hilbert_poly();
    let num = &(&chi_a * &chi_b.derivative(1)) - &(&chi_b * &chi_a.derivative(1));
    let den = &(&chi_a.derivative(2) * &chi_b.derivative(1))
        - &(&chi_b.derivative(2) * &chi_a.derivative(1));
    (num, den)
}

/// The numerical wall of `v` defined by the actor `a`, fully classified.
pub fn wall_between(v: &KClass, a: &KClass) -> Result<WallCurve, WallError> {
    require_one_dimensional(v)?;
    if a.ch0.is_zero() && a.ch1.is_zero() {
        return Err(WallError::DegenerateActor);
    }
    let m = &v.ch2;
    let chi = euler_characteristic(v);
    let chi_a = a.hilbert_poly();
    // P = m chi_t(a) - (m t + chi) chi'_t(a); Q = m chi''_t(a)
    let mt_chi = RatPoly::from_coeffs(vec![chi.clone(), m.clone()]);
    let num = &chi_a.scale(m) - &(&mt_chi * &chi_a.derivative(1));
    let den = chi_a.derivative(2).scale(m);
    let center_t = -&chi / m;

    let mut warning = None;
    let (kind, asymptote_t) = if a.ch0.is_zero() {
        (WallKind::Type2, None)
    } else {
        let asym = -&a.ch1 / &a.ch0 - rat_int(2);
        let kind = match asym.cmp(&center_t) {
            Ordering::Less => WallKind::Type1,
            Ordering::Greater => WallKind::Type3,
            Ordering::Equal => {
                warning = Some(
                    "asymptote coincides with the center; type-1/3 classification degenerate"
                        .to_string(),
                );
                WallKind::AsymptoteAtCenter
            }
        };
        (kind, Some(asym))
    };

    let components = compute_components(&num, &den, asymptote_t.as_ref());
    Ok(WallCurve {
        parent: v.clone(),
        actor: a.clone(),
        num,
        den,
        kind,
        center_t,
        asymptote_t,
        components,
        warning,
    })
}

impl WallCurve {
    /// `u^2` at a rational `t`; `None` on the asymptote.
    pub fn u_squared_at(&self, t: &BigRational) -> Option<BigRational> {
        let q = self.den.eval(t);
        if q.is_zero() {
            return None;
        }
        Some(rat_int(2) * self.num.eval(t) / q)
    }

    pub fn u_at_f64(&self, t: f64) -> Option<f64> {
        let q = self.den.eval_f64(t);
        if q == 0.0 {
            return None;
        }
        let u2 = 2.0 * self.num.eval_f64(t) / q;
        (u2 >= 0.0).then(|| u2.sqrt())
    }

    /// Roots of `P` (the `u = 0` crossings), sorted.
    pub fn u0_roots(&self) -> Vec<IsolatedRoot> {
        poly_roots_everywhere(&self.num).unwrap_or_default()
    }

    /// For Type 2 walls: the exact squared radius, from
    /// `u^2(t) + (t - center)^2` being constant.
    pub fn semicircle_radius_sq(&self) -> Option<BigRational> {
        if self.kind != WallKind::Type2 {
            return None;
        }
        let q = self.den.leading()?.clone();
        if q.is_zero() {
            return None;
        }
        let u2 = self.num.scale(&(rat_int(2) / q));
        let shift = RatPoly::from_coeffs(vec![-&self.center_t, BigRational::one()]);
        let sum = &u2 + &(&shift * &shift);
        if sum.degree().unwrap_or(0) == 0 {
            Some(sum.coeff(0))
        } else {
            None
        }
    }
}

/// All real roots of `p`, isolated over a Cauchy-bound window; `None` for the
/// zero polynomial.
fn poly_roots_everywhere(p: &RatPoly) -> Option<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return None;
    }
    if p.degree() == Some(0) {
        return Some(Vec::new());
    }
    let bound = cauchy_bound(p);
    let window = Window::closed(-&bound, bound.clone());
    Some(real_roots(p, &window, &crate::roots::default_tol()).expect("nonzero polynomial"))
}

/// `1 + max |a_i| / |a_n|` bounds the absolute value of every root.
fn cauchy_bound(p: &RatPoly) -> BigRational {
    let lead = p.leading().expect("nonzero").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    BigRational::one() + max / lead
}

/// Sign analysis of `2 P / Q` over the root-and-pole partition of the line.
fn compute_components(
    num: &RatPoly,
    den: &RatPoly,
    asymptote: Option<&BigRational>,
) -> Vec<WallComponent> {
    if num.is_zero() {
        return Vec::new(); // identically-zero wall equation: no curve
    }
    // reduce the fraction so a shared root does not masquerade as a pole
    let g = num.gcd(den);
    let (num, den) = if g.degree().unwrap_or(0) > 0 {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    } else {
        (num.clone(), den.clone())
    };
    let (num, den) = (&num, &den);
    if num.is_zero() {
        return Vec::new();
    }
    let mut roots = poly_roots_everywhere(num).unwrap_or_default();
    // refine so the isolating intervals are disjoint from each other and the pole
    let tol = crate::roots::default_tol();
    for r in &mut roots {
        r.refine(&tol);
    }
    let pole = asymptote.filter(|a| den.eval(a).is_zero());
    if let Some(p) = pole {
        // after the gcd reduction no root equals the pole; separate any
        // isolating interval still straddling it
        for r in &mut roots {
            while r.as_rational().is_none() && r.lo() < p && p < r.hi() {
                let w = r.width() / rat_int(4);
                r.refine(&w);
            }
        }
    }

    // breakpoints: ordered list of (position, is_root, root index)
    #[derive(Clone)]
    enum Break {
        Root(usize),
        Pole(BigRational),
    }
    let mut breaks: Vec<Break> = roots.iter().enumerate().map(|(i, _)| Break::Root(i)).collect();
    if let Some(p) = pole {
        let idx = roots
            .iter()
            .position(|r| r.cmp_rational(p) == Ordering::Greater)
            .unwrap_or(roots.len());
        // a root exactly at the pole was cancelled in the reduced fraction;
        // keep both breakpoints, the pole after coincident roots
        breaks.insert(idx, Break::Pole(p.clone()));
    }
    if breaks.is_empty() {
        // constant sign everywhere
        let sample = BigRational::zero();
        let q = den.eval(&sample);
        let positive = !q.is_zero() && !(num.eval(&sample) * q).is_negative();
        return if positive {
            vec![WallComponent { lo: WallEnd::NegInfinite, hi: WallEnd::PosInfinite }]
        } else {
            Vec::new()
        };
    }

    // sample points strictly between consecutive breakpoints, plus the ends
    let lo_of = |b: &Break, roots: &[IsolatedRoot]| -> BigRational {
        match b {
            Break::Root(i) => roots[*i].lo().clone(),
            Break::Pole(p) => p.clone(),
        }
    };
    let hi_of = |b: &Break, roots: &[IsolatedRoot]| -> BigRational {
        match b {
            Break::Root(i) => roots[*i].hi().clone(),
            Break::Pole(p) => p.clone(),
        }
    };
    let mut samples: Vec<BigRational> = Vec::new();
    for k in 0..=breaks.len() {
        let sample = if k == 0 {
            lo_of(&breaks[0], &roots) - rat_int(1)
        } else if k == breaks.len() {
            hi_of(&breaks[k - 1], &roots) + rat_int(1)
        } else {
            let a = hi_of(&breaks[k - 1], &roots);
            let b = lo_of(&breaks[k], &roots);
            if a >= b {
                // overlapping isolating data (root equal to pole); sample collapses
                a.clone()
            } else {
                (&a + &b) / rat_int(2)
            }
        };
        samples.push(sample);
    }
    let positive: Vec<bool> = samples
        .iter()
        .map(|s| {
            let q = den.eval(s);
            if q.is_zero() {
                return false;
            }
            !(num.eval(s) * q).is_negative()
        })
        .collect();

    // stitch segments where u^2 >= 0 into maximal components
    let mut components = Vec::new();
    let mut current: Option<WallEnd> = None;
    let end_of = |b: &Break, roots: &[IsolatedRoot]| -> WallEnd {
        match b {
            Break::Root(i) => WallEnd::Root(roots[*i].clone()),
            Break::Pole(p) => WallEnd::Asymptote(p.clone()),
        }
    };
    for k in 0..=breaks.len() {
        let seg_ok = positive[k];
        let seg_lo: WallEnd = if k == 0 {
            WallEnd::NegInfinite
        } else {
            end_of(&breaks[k - 1], &roots)
        };
        let seg_hi: WallEnd = if k == breaks.len() {
            WallEnd::PosInfinite
        } else {
            end_of(&breaks[k], &roots)
        };
        if seg_ok {
            if current.is_none() {
                current = Some(seg_lo);
            }
            if k == breaks.len() {
                components.push(WallComponent {
                    lo: current.take().unwrap(),
                    hi: WallEnd::PosInfinite,
                });
            } else if matches!(breaks[k], Break::Pole(_)) {
                // component ends open at the asymptote
                components.push(WallComponent {
                    lo: current.take().unwrap(),
                    hi: seg_hi,
                });
            }
        } else {
            if let Some(lo) = current.take() {
                components.push(WallComponent { lo, hi: seg_lo });
            }
            // an isolated tangency: root with negative sign on both sides
            if k < breaks.len() {
                if let Break::Root(i) = &breaks[k] {
                    let prev_neg = !positive[k];
                    let next_neg = k < breaks.len() && !positive[k + 1];
                    if prev_neg && next_neg {
                        components.push(WallComponent {
                            lo: WallEnd::Root(roots[*i].clone()),
                            hi: WallEnd::Root(roots[*i].clone()),
                        });
                    }
                }
            }
        }
    }
    components
}

/// Real roots of `P` in the window: the Euler-slope wall points at `u = 0`.
pub fn wall_at_u0(
    v: &KClass,
    a: &KClass,
    window: &Window,
) -> Result<Vec<IsolatedRoot>, WallError> {
    require_one_dimensional(v)?;
    let m = &v.ch2;
    let chi = euler_characteristic(v);
    let chi_a = a.hilbert_poly();
    let mt_chi = RatPoly::from_coeffs(vec![chi, m.clone()]);
    let num = &chi_a.scale(m) - &(&mt_chi * &chi_a.derivative(1));
    if num.is_zero() {
        return Err(WallError::ProportionalSlopes);
    }
    Ok(real_roots(&num, window, &crate::roots::default_tol()).expect("nonzero polynomial"))
}

/// A certified intersection of two wall curves.
#[derive(Debug, Clone)]
pub struct WallIntersection {
    pub t: IsolatedRoot,
    /// `u^2` is nonnegative here by construction; `u` as f64 for reporting.
    pub u_approx: f64,
    pub at_axis: bool,
}

/// Intersections `P1/Q1 = P2/Q2` with `u^2 >= 0`, away from the poles.
pub fn intersect_walls(
    w1: &WallCurve,
    w2: &WallCurve,
) -> Result<Vec<WallIntersection>, WallError> {
    if w1.parent != w2.parent {
        return Err(WallError::ParentMismatch);
    }
    let resultant = &(&w1.num * &w2.den) - &(&w2.num * &w1.den);
    if resultant.is_zero() {
        return Err(WallError::CoincidentWalls);
    }
    let roots = poly_roots_everywhere(&resultant).unwrap_or_default();
    let mut out = Vec::new();
    for root in roots {
        let d1 = sign_at(&w1.den, &root);
        let d2 = sign_at(&w2.den, &root);
        if d1 == Ordering::Equal || d2 == Ordering::Equal {
            continue; // pole of one of the curves
        }
        let n1 = sign_at(&w1.num, &root);
        // u^2 = 2 num/den >= 0
        let u_sq_sign = match (n1, d1) {
            (Ordering::Equal, _) => Ordering::Equal,
            (a, b) if a == b => Ordering::Greater,
            _ => Ordering::Less,
        };
        if u_sq_sign == Ordering::Less {
            continue;
        }
        let refined = root.refined(&crate::roots::default_tol());
        let mid = refined.midpoint();
        let u2 = rat_int(2) * w1.num.eval(&mid) / w1.den.eval(&mid);
        let u_approx = to_f64(&u2).max(0.0).sqrt();
        out.push(WallIntersection {
            t: refined,
            u_approx,
            at_axis: u_sq_sign == Ordering::Equal,
        });
    }
    Ok(out)
}

/// Exact check that `w` passes through the intersection point whose
/// t-coordinate is `t_root` (a root shared with another wall there):
/// the residual `num_w * den_ref - num_ref * den_w` must vanish at the root.
pub fn passes_through(
    w: &WallCurve,
    reference: &WallCurve,
    t_root: &IsolatedRoot,
) -> bool {
    let residual = &(&w.num * &reference.den) - &(&reference.num * &w.den);
    sign_at(&residual, t_root) == Ordering::Equal
}

/// `[chi/m - w, chi/m + w]` with `w = ch2 + 2 sqrt(2 ch2)`: every bounded
/// wall lives inside.
pub fn wall_search_region(v: &KClass) -> Result<(CertifiedReal, CertifiedReal), WallError> {
    require_one_dimensional(v)?;
    let m = &v.ch2;
    let center = euler_characteristic(v) / m;
    let eight_m = rat_int(8) * m;
    let lo = CertifiedReal::offset_sqrt(&(&center - m), &eight_m, false).expect("8m >= 0");
    let hi = CertifiedReal::offset_sqrt(&(&center + m), &eight_m, true).expect("8m >= 0");
    Ok((lo, hi))
}

/// Default `B2 = 1/(b m)` for `t = a/b` in lowest terms and `m = ch2(v)`.
pub fn default_b2(t: &BigRational, v: &KClass) -> BigRational {
    let b = t.denom().clone();
    BigRational::new(1.into(), b * (&v.ch2 * rat_int(2)).to_integer()) * rat_int(2)
}

/// Gieseker-chamber u-bound `(2/B2)(B1 - t - chi/m)`: above it, stability
/// for the one-dimensional class coincides with Gieseker stability.
pub fn gieseker_u_bound(
    b1: &BigRational,
    b2: &BigRational,
    t: &BigRational,
    v: &KClass,
) -> Result<BigRational, WallError> {
    if !b2.is_positive() {
        return Err(WallError::BadParent);
    }
    let chi = euler_characteristic(v);
    Ok(rat_int(2) / b2 * (b1 - t - chi / &v.ch2))
}

/// The threshold `u` at which `lambda_{t,u}(h) = t + chi/m`, solved for
/// `u^2 = 2 (chi_t(h) - (t + chi/m) chi'_t(h)) / chi''_t(h)`.
#[derive(Debug, Clone)]
pub struct CriticalU {
    pub u_squared: BigRational,
    /// Present when `u_squared >= 0`.
    pub u: Option<CertifiedReal>,
}

pub fn critical_u(v: &KClass, h: &KClass, t: &BigRational) -> Result<CriticalU, WallError> {
    require_one_dimensional(v)?;
    let chi_h = h.hilbert_poly();
    let d2 = chi_h.derivative(2).eval(t);
    if d2.is_zero() {
        return Err(WallError::NoFiniteCriticalU);
    }
    let gieseker = t + euler_characteristic(v) / &v.ch2;
    let u_squared = rat_int(2) * (chi_h.eval(t) - gieseker * chi_h.derivative(1).eval(t)) / d2;
    let u = if u_squared.is_negative() {
        None
    } else {
        CertifiedReal::sqrt(&u_squared)
    };
    Ok(CriticalU { u_squared, u })
}

/// Result of the complex-existence bound: complexes with cohomology data
/// `(R, C, D)` and width `m` can only live on a bounded t-interval.
#[derive(Debug, Clone)]
pub enum ExistenceInterval {
    Empty,
    Interval { lo: CertifiedReal, hi: CertifiedReal },
}

impl ExistenceInterval {
    pub fn width_f64(&self) -> f64 {
        match self {
            ExistenceInterval::Empty => 0.0,
            ExistenceInterval::Interval { lo, hi } => hi.to_f64() - lo.to_f64(),
        }
    }
}

/// The set `{t : chi'' = C + (t+2) R >= 0, f1(t) <= 0 <= f2(t)}` with
/// `f2 = R (t+2)^2 / 2 + C (t+2) + D - R/6` and `f1 = f2 - m`, as a closed
/// interval (or empty).
pub fn complex_existence_interval(
    r: i64,
    c: i64,
    d: &BigRational,
    m: &BigRational,
) -> Result<ExistenceInterval, WallError> {
    if !m.is_positive() {
        return Err(WallError::BadParent);
    }
    if r == 0 && c <= 0 {
        return Err(WallError::BadParent);
    }
    let rq = rat_int(r);
    let cq = rat_int(c);
    let k2 = d - &rq / rat_int(6); // constant term of f2 in s = t + 2
    if r == 0 {
        // linear: C s + D on s >= -infty, chi'' = C > 0
        let s_lo = -d / &cq;
        let s_hi = (m - d) / &cq;
        return Ok(ExistenceInterval::Interval {
            lo: CertifiedReal::Rational(s_lo - rat_int(2)),
            hi: CertifiedReal::Rational(s_hi - rat_int(2)),
        });
    }
    // branch point of chi'' >= 0 in t
    let t0 = -rat_int(2) - &cq / &rq;
    // vertex value of f2 on the branch
    let vertex = &k2 - &cq * &cq / (rat_int(2) * &rq);
    let d2 = &cq * &cq - rat_int(2) * &rq * &k2; // discriminant-like of f2
    let d1 = &cq * &cq - rat_int(2) * &rq * (&k2 - m);
    let r_sq = &rq * &rq;
    if r > 0 {
        if (&vertex - m).is_positive() {
            return Ok(ExistenceInterval::Empty);
        }
        let lo = if vertex.is_negative() {
            CertifiedReal::offset_sqrt(&t0, &(&d2 / &r_sq), true).expect("d2 >= 0 when vertex < 0")
        } else {
            CertifiedReal::Rational(t0.clone())
        };
        let hi =
            CertifiedReal::offset_sqrt(&t0, &(&d1 / &r_sq), true).expect("d1 >= 0 when nonempty");
        Ok(ExistenceInterval::Interval { lo, hi })
    } else {
        if vertex.is_negative() {
            return Ok(ExistenceInterval::Empty);
        }
        let lo =
            CertifiedReal::offset_sqrt(&t0, &(&d2 / &r_sq), false).expect("d2 >= 0 when nonempty");
        let hi = if (&vertex - m).is_positive() {
            CertifiedReal::offset_sqrt(&t0, &(&d1 / &r_sq), false)
                .expect("d1 >= 0 when vertex > m")
        } else {
            CertifiedReal::Rational(t0.clone())
        };
        Ok(ExistenceInterval::Interval { lo, hi })
    }
}
