//! Central charges, slopes, quadratic forms, the quiver region, and the
//! support-cone margin.
//!
//! Every charge here is a rational evaluation of the Hilbert polynomial and
//! its derivatives; the double-tilt charge is parametrized by `alpha^2` (only
//! the square ever enters the formulas), which keeps the `alpha = 1/sqrt(3)`
//! specialization exact.

use crate::kclass::KClass;
use crate::rational::{format_rational, rat, rat_int, to_f64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChargeError {
    #[error("charge vanishes: class invisible to this charge")]
    ChargeVanishes,
    #[error("invalid stability parameters: {0}")]
    InvalidParams(String),
    #[error("support property unverifiable at t = {0}: generator cone is not salient")]
    ConeNotSalient(String),
}

/// The image of a class under a central charge, as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargePoint {
    pub re: BigRational,
    pub im: BigRational,
}

impl ChargePoint {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ChargePoint { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Valid stability-function image: upper half-plane, with the real axis
    /// only allowed on the strictly negative side.
    pub fn in_stability_halfplane(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }
}

impl fmt::Display for ChargePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.re),
            format_rational(&self.im)
        )
    }
}

/// Which member of the charge family to evaluate.
///
/// - `Euler`: `Z_t = chi'_t + i chi_t`
/// - `Tilt1`: `Z_{1,t} = -chi''_t + i chi'''_t`
/// - `Tilt2`: `Z_{2,t} = -chi'_t + i chi''_t`
/// - `DoubleTilt`: `-ch3^b + (s + 1/6) a^2 ch1^b + i (ch2^b - a^2/2 ch0^b)`
/// - `TuPlane`: `Z_{t,u} = -chi_t + u^2/2 chi''_t + i chi'_t`
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabParams {
    Euler { t: BigRational },
    Tilt1 { t: BigRational },
    Tilt2 { t: BigRational },
    DoubleTilt { alpha_sq: BigRational, beta: BigRational, s: BigRational },
    TuPlane { t: BigRational, u: BigRational },
}

impl StabParams {
    pub fn euler(t: BigRational) -> Self {
        StabParams::Euler { t }
    }

    pub fn tu(t: BigRational, u: BigRational) -> Result<Self, ChargeError> {
        if u.is_negative() {
            return Err(ChargeError::InvalidParams("u must be >= 0".into()));
        }
        Ok(StabParams::TuPlane { t, u })
    }

    pub fn double_tilt(
        alpha_sq: BigRational,
        beta: BigRational,
        s: BigRational,
    ) -> Result<Self, ChargeError> {
        if !alpha_sq.is_positive() {
            return Err(ChargeError::InvalidParams("alpha^2 must be > 0".into()));
        }
        if !s.is_positive() {
            return Err(ChargeError::InvalidParams("s must be > 0".into()));
        }
        Ok(StabParams::DoubleTilt { alpha_sq, beta, s })
    }
}

/// Exact evaluation of the selected central charge at a class.
pub fn charge(params: &StabParams, v: &KClass) -> ChargePoint {
    match params {
        StabParams::Euler { t } => {
            let chi = v.hilbert_poly();
            ChargePoint::new(chi.derivative(1).eval(t), chi.eval(t))
        }
        StabParams::Tilt1 { t } => {
            let chi = v.hilbert_poly();
            ChargePoint::new(-chi.derivative(2).eval(t), chi.derivative(3).eval(t))
        }
        StabParams::Tilt2 { t } => {
            let chi = v.hilbert_poly();
            ChargePoint::new(-chi.derivative(1).eval(t), chi.derivative(2).eval(t))
        }
        StabParams::DoubleTilt { alpha_sq, beta, s } => {
            let tw = v.twisted(beta);
            let re = -&tw.ch3 + (s + rat(1, 6)) * alpha_sq * &tw.ch1;
            let im = &tw.ch2 - alpha_sq / rat_int(2) * &tw.ch0;
            ChargePoint::new(re, im)
        }
        StabParams::TuPlane { t, u } => {
            let chi = v.hilbert_poly();
            let u2 = u * u;
            let re = -chi.eval(t) + u2 / rat_int(2) * chi.derivative(2).eval(t);
            ChargePoint::new(re, chi.derivative(1).eval(t))
        }
    }
}

/// Slope `-Re/Im` as an exact value, with `Im = 0` mapped to an infinite
/// slope carrying the sign of `Re` (negative real axis is phase 1, positive
/// is phase 0). The derived `Ord` is the phase order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slope {
    /// `Im = 0, Re > 0`: phase 0 boundary.
    NegativeInfinite,
    Finite(BigRational),
    /// `Im = 0, Re < 0`: phase 1 boundary.
    PositiveInfinite,
}

impl Slope {
    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Slope::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::NegativeInfinite => write!(f, "-inf"),
            Slope::Finite(q) => write!(f, "{}", format_rational(q)),
            Slope::PositiveInfinite => write!(f, "+inf"),
        }
    }
}

/// Slope of the selected charge at a class; errors when the charge vanishes.
pub fn slope(params: &StabParams, v: &KClass) -> Result<Slope, ChargeError> {
    let z = charge(params, v);
    slope_of_point(&z)
}

pub fn slope_of_point(z: &ChargePoint) -> Result<Slope, ChargeError> {
    if z.im.is_zero() {
        if z.re.is_zero() {
            return Err(ChargeError::ChargeVanishes);
        }
        return Ok(if z.re.is_negative() {
            Slope::PositiveInfinite
        } else {
            Slope::NegativeInfinite
        });
    }
    Ok(Slope::Finite(-&z.re / &z.im))
}

/// Bogomolov form on twisted characters,
/// `(ch1^b)^2 - 2 ch0^b ch2^b` at `b = beta`.
pub fn bogomolov(v: &KClass, beta: &BigRational) -> BigRational {
    let tw = v.twisted(beta);
    &tw.ch1 * &tw.ch1 - rat_int(2) * &tw.ch0 * &tw.ch2
}

/// Which reading of the support-property quadratic form to use. The printed
/// form contains a `ch_12` token read here as `ch2` (corrected, the default);
/// the strict reading takes it as the product `ch1 * ch2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QFormConvention {
    #[default]
    Corrected,
    StrictPaper,
}

/// Support-property quadratic form `Q_t` of the one-dimensional family.
pub fn q_form(v: &KClass, t: &BigRational) -> BigRational {
    q_form_with(v, t, QFormConvention::Corrected)
}

pub fn q_form_with(v: &KClass, t: &BigRational, convention: QFormConvention) -> BigRational {
    let t2 = t + rat_int(2);
    let second = match convention {
        QFormConvention::Corrected => v.ch2.clone(),
        QFormConvention::StrictPaper => &v.ch1 * &v.ch2,
    };
    let discr = &v.ch1 * &v.ch1 - rat_int(2) * &v.ch0 * &second;
    discr * (rat(1, 3) + &t2 * &t2)
        + (rat_int(6) * &v.ch0 * &v.ch3 - rat_int(2) * &v.ch1 * &v.ch2) * (-&t2)
        - rat_int(6) * &v.ch1 * &v.ch3
        + rat_int(4) * &v.ch2 * &v.ch2
}

/// Heart index `n = ceil(t)`.
pub fn heart_index(t: &BigRational) -> i64 {
    t.ceil().to_integer().try_into().expect("heart index fits i64")
}

/// Generator classes `(-1)^i ch(O(-n-i))`, `i = 0..3`, of the heart `A_n`.
pub fn heart_generator_classes(n: i64) -> [KClass; 4] {
    [
        KClass::line_bundle(-n),
        -&KClass::line_bundle(-n - 1),
        KClass::line_bundle(-n - 2),
        -&KClass::line_bundle(-n - 3),
    ]
}

/// Euler charges of the four generators of `A_{ceil(t)}` at `t`, plus a flag
/// for membership in the closed upper half-plane with the `Im = 0 => Re < 0`
/// convention.
pub fn heart_generator_charges(t: &BigRational) -> Vec<(ChargePoint, bool)> {
    let n = heart_index(t);
    let params = StabParams::euler(t.clone());
    heart_generator_classes(n)
        .iter()
        .map(|g| {
            let z = charge(&params, g);
            let ok = z.in_stability_halfplane();
            (z, ok)
        })
        .collect()
}

/// Support margin certificate: the cone of generator charges is salient and
/// every lattice class of the heart keeps `|Z| / ||v||` above the returned
/// bound `C_t = a_t / b_t`.
#[derive(Debug, Clone)]
pub struct SupportMargin {
    /// `(a_t / b_t)^2` as an exact rational; positive iff the margin is.
    pub margin_sq: BigRational,
    pub approx: f64,
}

/// Lattice sup-norm `||(ch0, ch1, 2 ch2, 6 ch3)||_inf`.
pub fn lattice_norm(v: &KClass) -> BigRational {
    let coords = [
        v.ch0.abs(),
        v.ch1.abs(),
        (&v.ch2 * rat_int(2)).abs(),
        (&v.ch3 * rat_int(6)).abs(),
    ];
    coords.into_iter().max().unwrap()
}

fn cross(a: &ChargePoint, b: &ChargePoint) -> BigRational {
    &a.re * &b.im - &a.im * &b.re
}

fn dot(a: &ChargePoint, b: &ChargePoint) -> BigRational {
    &a.re * &b.re + &a.im * &b.im
}

/// Verifies the generator charges at `t in (0, 1]` span a salient cone and
/// returns the margin `C_t > 0` of the support property.
pub fn support_margin(t: &BigRational) -> Result<SupportMargin, ChargeError> {
    if !t.is_positive() || t > &rat_int(1) {
        return Err(ChargeError::InvalidParams(
            "support margin is proved for t in (0, 1]".into(),
        ));
    }
    let params = StabParams::euler(t.clone());
    let classes = heart_generator_classes(heart_index(t));
    let charges: Vec<ChargePoint> = classes.iter().map(|g| charge(&params, g)).collect();
    if charges.iter().any(|z| z.is_zero()) {
        return Err(ChargeError::ConeNotSalient(format_rational(t)));
    }

    // The clockwise-most ray u: every other charge within [0, pi) ccw of it.
    let mut edge: Option<usize> = None;
    'outer: for i in 0..charges.len() {
        for j in 0..charges.len() {
            if i == j {
                continue;
            }
            let c = cross(&charges[i], &charges[j]);
            if c.is_negative() {
                continue 'outer;
            }
            if c.is_zero() && dot(&charges[i], &charges[j]).is_negative() {
                continue 'outer; // opposite rays: width exactly pi
            }
        }
        edge = Some(i);
        break;
    }
    let Some(lo) = edge else {
        return Err(ChargeError::ConeNotSalient(format_rational(t)));
    };
    // Counterclockwise-most ray w relative to u, by angle within [0, pi).
    let mut hi = lo;
    for j in 0..charges.len() {
        if j == lo || j == hi {
            continue;
        }
        let c = cross(&charges[hi], &charges[j]);
        if c.is_positive() || (c.is_zero() && dot(&charges[hi], &charges[j]).is_negative()) {
            hi = j;
        }
    }
    let u = &charges[lo];
    let w = &charges[hi];

    // Bisector-normal: n with <u, n> = <w, n> > 0, i.e. n perpendicular to
    // u - w. Degenerates to rot90(u) when the cone is a single ray.
    let diff = ChargePoint::new(&u.re - &w.re, &u.im - &w.im);
    let mut normal = if diff.is_zero() {
        ChargePoint::new(-&u.im, u.re.clone())
    } else {
        ChargePoint::new(-&diff.im, diff.re.clone())
    };
    if dot(&normal, u).is_negative() {
        normal = ChargePoint::new(-&normal.re, -&normal.im);
    }
    let projections: Vec<BigRational> = charges.iter().map(|z| dot(&normal, z)).collect();
    let min_p = projections.iter().min().unwrap().clone();
    if !min_p.is_positive() {
        return Err(ChargeError::ConeNotSalient(format_rational(t)));
    }
    let norm_sq = dot(&normal, &normal);
    let bound = classes.iter().map(lattice_norm).max().unwrap();
    let margin_sq = &min_p * &min_p / (&norm_sq * &bound * &bound);
    let approx = to_f64(&min_p) / (to_f64(&norm_sq).sqrt() * to_f64(&bound));
    Ok(SupportMargin { margin_sq, approx })
}

/// Quiver-region membership: with `t' = t - ceil(t) in (-1, 0]`, requires
/// `(t'+2)^2 - 2u^2 - 1 >= 0` and `(t'-1)^2 - 2u^2 - 1 >= 0` (period 1).
pub fn in_quiver_region(t: &BigRational, u: &BigRational) -> bool {
    if u.is_negative() {
        return false;
    }
    let tp = t - BigRational::from_integer(BigInt::from(heart_index(t)));
    let u2 = rat_int(2) * u * u;
    let a = &tp + rat_int(2);
    let b = &tp - rat_int(1);
    (&a * &a - &u2 - rat_int(1)) >= BigRational::zero()
        && (&b * &b - &u2 - rat_int(1)) >= BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kclass::lattice_class;
    use crate::rational::rat;

    fn euler_at(t: i64) -> StabParams {
        StabParams::euler(rat_int(t))
    }

    #[test]
    fn euler_charge_of_structure_sheaf() {
        let z = charge(&euler_at(0), &KClass::from_i64(1, 0, 0, 0));
        assert_eq!(z, ChargePoint::new(rat(11, 6), rat_int(1)));
    }

    #[test]
    fn euler_charge_of_shifted_line_bundle() {
        let v = -&KClass::line_bundle(-1); // O(-1)[1]
        let z = charge(&euler_at(0), &v);
        assert_eq!(z, ChargePoint::new(rat(-1, 3), rat_int(0)));
        assert!(z.in_stability_halfplane());
    }

    #[test]
    fn double_tilt_specializes_to_minus_chi() {
        // alpha^2 = 1/3, beta = -t-2, s = 1/3 gives (-chi_t, chi'_t);
        // linearity in v + degree <= 3 in t make a finite check a proof.
        let ts = [rat_int(0), rat_int(1), rat_int(-1), rat(1, 2), rat(-7, 3)];
        let basis = [
            KClass::from_i64(1, 0, 0, 0),
            KClass::from_i64(0, 1, 0, 0),
            KClass::from_i64(0, 0, 1, 0),
            KClass::from_i64(0, 0, 0, 1),
        ];
        for t in &ts {
            let params = StabParams::double_tilt(
                rat(1, 3),
                -t - rat_int(2),
                rat(1, 3),
            )
            .unwrap();
            for v in &basis {
                let z = charge(&params, v);
                let chi = v.hilbert_poly();
                assert_eq!(z.re, -chi.eval(t));
                assert_eq!(z.im, chi.derivative(1).eval(t));
            }
        }
    }

    #[test]
    fn tu_slope_of_one_dimensional_class_is_linear() {
        let v = KClass::from_i64(0, 0, 3, -5);
        for (t, u) in [(rat_int(0), rat_int(1)), (rat(1, 2), rat(3, 4))] {
            let params = StabParams::tu(t.clone(), u).unwrap();
            let s = slope(&params, &v).unwrap();
            // t + chi/m with chi = 1, m = 3
            assert_eq!(s, Slope::Finite(&t + rat(1, 3)));
        }
    }

    #[test]
    fn tilt2_slope_of_structure_sheaf() {
        let t = rat(2, 7);
        let s = slope(&StabParams::Tilt2 { t: t.clone() }, &KClass::from_i64(1, 0, 0, 0)).unwrap();
        let t2 = &t + rat_int(2);
        let expected = (&t2 * &t2 / rat_int(2) - rat(1, 6)) / &t2;
        assert_eq!(s, Slope::Finite(expected));
    }

    #[test]
    fn slope_vanishing_charge_errors() {
        let params = euler_at(0);
        assert_eq!(
            slope(&params, &KClass::zero()),
            Err(ChargeError::ChargeVanishes)
        );
    }

    #[test]
    fn slope_phase_order() {
        assert!(Slope::NegativeInfinite < Slope::Finite(rat_int(-100)));
        assert!(Slope::Finite(rat_int(100)) < Slope::PositiveInfinite);
    }

    #[test]
    fn bogomolov_examples() {
        for k in -3..=3 {
            assert!(bogomolov(&KClass::line_bundle(k), &rat(2, 3)).is_zero());
        }
        assert!(bogomolov(&KClass::from_i64(0, 0, 3, -5), &rat_int(1)).is_zero());
        let plane = KClass::new(rat_int(0), rat_int(1), rat(-1, 2), rat(1, 6));
        assert_eq!(bogomolov(&plane, &rat_int(0)), rat_int(1));
    }

    #[test]
    fn q_form_null_on_line_bundles_over_a_grid() {
        for k in -5..=5 {
            let bundle = KClass::line_bundle(k);
            for step in -8..=8 {
                let t = rat(step, 4);
                assert!(q_form(&bundle, &t).is_zero(), "k={} t={}", k, t);
            }
        }
    }

    #[test]
    fn q_form_examples() {
        let t = rat(3, 5);
        assert!(q_form(&KClass::from_i64(1, 0, 0, 0), &t).is_zero());
        assert_eq!(q_form(&KClass::from_i64(0, 0, 3, -5), &t), rat_int(36));
        let plane = KClass::new(rat_int(0), rat_int(1), rat(-1, 2), rat(1, 6));
        // brute expansion at t = 0
        let expected = rat(1, 3) + rat_int(4) // (1/3 + 4) * 1
            - rat_int(2) * (-rat_int(2) * rat_int(1) * rat(-1, 2)) // (6*0*ch3 - 2 ch1 ch2)(-2)
            - rat_int(6) * rat(1, 6)
            + rat_int(4) * rat(1, 4);
        assert_eq!(q_form(&plane, &rat_int(0)), expected);
        assert!(q_form(&plane, &rat_int(0)).is_positive());
    }

    #[test]
    fn generator_charges_at_integer_t() {
        let charges = heart_generator_charges(&rat_int(0));
        assert_eq!(charges[0].0, ChargePoint::new(rat(11, 6), rat_int(1)));
        for (z, ok) in &charges[1..] {
            assert!(z.im.is_zero());
            assert!(z.re.is_negative());
            assert!(ok);
        }
    }

    #[test]
    fn generator_charges_strictly_upper_at_non_integer_t() {
        for t in [rat(9, 10), rat(1, 2)] {
            for (z, ok) in heart_generator_charges(&t) {
                assert!(z.im.is_positive(), "t = {}: {}", t, z);
                assert!(ok);
            }
        }
    }

    #[test]
    fn support_margin_positive_on_samples() {
        for t in [rat(9, 10), rat(1, 2), rat(1, 100), rat_int(1)] {
            let m = support_margin(&t).unwrap();
            assert!(m.margin_sq.is_positive(), "t = {}", t);
            assert!(m.approx > 0.0);
        }
        assert!(support_margin(&rat_int(2)).is_err());
    }

    #[test]
    fn quiver_region_examples() {
        assert!(in_quiver_region(&rat(-1, 2), &rat(7, 10)));
        assert!(!in_quiver_region(&rat_int(0), &rat(1, 10)));
        // figure-7 boundary point (0.189, 0.608) falls just outside
        assert!(!in_quiver_region(&rat(189, 1000), &rat(608, 1000)));
        // mirror symmetry on a few samples
        for (t, u) in [(rat(1, 3), rat(1, 2)), (rat(7, 5), rat(3, 10))] {
            assert_eq!(in_quiver_region(&t, &u), in_quiver_region(&(-&t), &u));
        }
    }

    #[test]
    fn cone_closure_under_nonnegative_combinations() {
        let t = rat(3, 7);
        let params = StabParams::euler(t.clone());
        let gens = heart_generator_classes(heart_index(&t));
        assert!(gens
            .iter()
            .all(|g| !charge(&params, g).im.is_negative()));
        for coeffs in [[1i64, 2, 0, 3], [5, 0, 0, 1], [2, 2, 2, 2]] {
            let mut v = KClass::zero();
            for (g, c) in gens.iter().zip(coeffs) {
                v = &v + &g.scale(&rat_int(c));
            }
            assert!(!charge(&params, &v).im.is_negative());
        }
    }

    #[test]
    fn slope_duality_antisymmetry() {
        // slope(euler at -t, -D(v)) = -slope(euler at t, v) when finite
        for (coeffs, t) in [
            ([1i64, 0, -2, 3], rat(2, 5)),
            ([0, 1, 4, -1], rat(-3, 7)),
            ([2, -3, 1, 1], rat(1, 3)),
        ] {
            let (v, _) = lattice_class(-2, coeffs);
            let s = slope(&StabParams::euler(t.clone()), &v);
            let sd = slope(&StabParams::euler(-&t), &-&v.dual_class());
            if let (Ok(Slope::Finite(a)), Ok(Slope::Finite(b))) = (s, sd) {
                assert_eq!(b, -a);
            }
        }
    }
}
