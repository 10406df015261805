//! K-classes of P^3 and their Riemann-Roch arithmetic.
//!
//! A [`KClass`] is a point of the numerical K-group, written against powers
//! of the hyperplane class as four exact rationals `(ch0, ch1, ch2, ch3)`.
//! The Todd class of P^3 is hard-coded as `(1, 2, 11/6, 1)` and the twist
//! convention is multiplication by `e^{+beta H}`; the twisted character
//! `ch^beta` of the tilt-stability literature is recovered as
//! `twist(v, -beta)`.

use crate::poly::RatPoly;
use crate::rational::{format_rational, parse_rational, rat, rat_int};
use crate::roots::{real_roots, IsolatedRoot, RootError, Window};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Todd class of P^3 against (1, H, H^2, H^3).
pub fn todd_p3() -> [BigRational; 4] {
    [rat_int(1), rat_int(2), rat(11, 6), rat_int(1)]
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KClass {
    pub ch0: BigRational,
    pub ch1: BigRational,
    pub ch2: BigRational,
    pub ch3: BigRational,
}

impl KClass {
    pub fn new(ch0: BigRational, ch1: BigRational, ch2: BigRational, ch3: BigRational) -> Self {
        KClass { ch0, ch1, ch2, ch3 }
    }

    pub fn from_i64(ch0: i64, ch1: i64, ch2: i64, ch3: i64) -> Self {
        KClass::new(rat_int(ch0), rat_int(ch1), rat_int(ch2), rat_int(ch3))
    }

    pub fn zero() -> Self {
        KClass::from_i64(0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.ch0.is_zero() && self.ch1.is_zero() && self.ch2.is_zero() && self.ch3.is_zero()
    }

    /// `ch(O(k)) = (1, k, k^2/2, k^3/6)`.
    pub fn line_bundle(k: i64) -> Self {
        let k = rat_int(k);
        KClass::new(
            rat_int(1),
            k.clone(),
            &k * &k / rat_int(2),
            &k * &k * &k / rat_int(6),
        )
    }

    /// Lattice invariants: `ch0, ch1` integers, `2 ch2` and `6 ch3` integers,
    /// and the Hilbert polynomial integer-valued on the integers.
    pub fn satisfies_invariants(&self) -> bool {
        if !self.ch0.is_integer() || !self.ch1.is_integer() {
            return false;
        }
        if !(&self.ch2 * rat_int(2)).is_integer() || !(&self.ch3 * rat_int(6)).is_integer() {
            return false;
        }
        let p = self.hilbert_poly();
        (-10..=10).all(|n| p.eval(&rat_int(n)).is_integer())
    }

    /// Tensor by `e^{+beta H}` on the level of classes.
    pub fn twist(&self, beta: &BigRational) -> KClass {
        let b2 = beta * beta;
        let b3 = &b2 * beta;
        KClass::new(
            self.ch0.clone(),
            &self.ch1 + beta * &self.ch0,
            &self.ch2 + beta * &self.ch1 + &b2 * &self.ch0 / rat_int(2),
            &self.ch3 + beta * &self.ch2 + &b2 * &self.ch1 / rat_int(2)
                + &b3 * &self.ch0 / rat_int(6),
        )
    }

    /// The tilt-stability twisted character `ch^beta = ch * e^{-beta H}`.
    pub fn twisted(&self, beta: &BigRational) -> KClass {
        self.twist(&-beta)
    }

    /// Negates `ch1` and `ch3` (the action of the anti-involution used by
    /// duals and the Euler pairing).
    pub fn conj(&self) -> KClass {
        KClass::new(
            self.ch0.clone(),
            -&self.ch1,
            self.ch2.clone(),
            -&self.ch3,
        )
    }

    /// Product of Chern characters truncated past H^3.
    pub fn mul_class(&self, other: &KClass) -> KClass {
        KClass::new(
            &self.ch0 * &other.ch0,
            &self.ch0 * &other.ch1 + &self.ch1 * &other.ch0,
            &self.ch0 * &other.ch2 + &self.ch1 * &other.ch1 + &self.ch2 * &other.ch0,
            &self.ch0 * &other.ch3
                + &self.ch1 * &other.ch2
                + &self.ch2 * &other.ch1
                + &self.ch3 * &other.ch0,
        )
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigRational) -> KClass {
        KClass::new(&self.ch0 * c, &self.ch1 * c, &self.ch2 * c, &self.ch3 * c)
    }

    /// Class of the homological shift `[k]`: multiplication by `(-1)^k`.
    pub fn shift(&self, k: i64) -> KClass {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self
        }
    }

    /// The Hilbert polynomial `chi_t`: the H^3-coefficient of
    /// `ch(v) * e^{tH} * Td(P^3)` as a cubic in `t`.
    pub fn hilbert_poly(&self) -> RatPoly {
        // chi_t = ch3 + ch2 (t+2) + ch1 (t^2/2 + 2t + 11/6)
        //       + ch0 (t^3/6 + t^2 + 11t/6 + 1)
        let c0 = &self.ch3 + &self.ch2 * rat_int(2) + &self.ch1 * rat(11, 6) + &self.ch0;
        let c1 = &self.ch2 + &self.ch1 * rat_int(2) + &self.ch0 * rat(11, 6);
        let c2 = &self.ch1 / rat_int(2) + &self.ch0;
        let c3 = &self.ch0 / rat_int(6);
        RatPoly::from_coeffs(vec![c0, c1, c2, c3])
    }

    /// k-th derivative of the Hilbert polynomial, `chi^(k)_t`.
    pub fn hilbert_derivative(&self, k: usize) -> RatPoly {
        self.hilbert_poly().derivative(k)
    }

    /// Euler pairing `chi(a, b)`: the alternating sum of Ext dimensions
    /// predicted by Riemann-Roch, computed as the Hilbert polynomial of
    /// `conj(a) * b` at `t = 0`.
    pub fn euler_pairing(&self, other: &KClass) -> BigRational {
        self.conj()
            .mul_class(other)
            .hilbert_poly()
            .eval(&BigRational::zero())
    }

    /// Class of the derived dual `E |-> RHom(E, omega)[2]`:
    /// `twist(conj(v), -4)`.
    pub fn dual_class(&self) -> KClass {
        self.conj().twist(&rat_int(-4))
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        KClass::new(
            &self.ch0 + &rhs.ch0,
            &self.ch1 + &rhs.ch1,
            &self.ch2 + &rhs.ch2,
            &self.ch3 + &rhs.ch3,
        )
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        KClass::new(
            &self.ch0 - &rhs.ch0,
            &self.ch1 - &rhs.ch1,
            &self.ch2 - &rhs.ch2,
            &self.ch3 - &rhs.ch3,
        )
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::new(-&self.ch0, -&self.ch1, -&self.ch2, -&self.ch3)
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            format_rational(&self.ch0),
            format_rational(&self.ch1),
            format_rational(&self.ch2),
            format_rational(&self.ch3),
        )
    }
}

// JSON: array of four rational strings, e.g. ["0","0","3","-5"].
impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [
            format_rational(&self.ch0),
            format_rational(&self.ch1),
            format_rational(&self.ch2),
            format_rational(&self.ch3),
        ]
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts: [String; 4] = Deserialize::deserialize(deserializer)?;
        let mut vals = parts
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom));
        Ok(KClass::new(
            vals.next().unwrap()?,
            vals.next().unwrap()?,
            vals.next().unwrap()?,
            vals.next().unwrap()?,
        ))
    }
}

/// Parses a comma-separated class like `0,0,3,-5` (each entry a rational).
pub fn parse_kclass(s: &str) -> Result<KClass, crate::rational::ParseRationalError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(crate::rational::ParseRationalError::Invalid(s.to_string()));
    }
    Ok(KClass::new(
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
        parse_rational(parts[3])?,
    ))
}

/// Real roots of a Hilbert (or wall) polynomial inside a window. Thin wrapper
/// so callers of the kclass module need not import the roots module.
pub fn poly_real_roots(
    p: &RatPoly,
    window: &Window,
    tol: &BigRational,
) -> Result<Vec<IsolatedRoot>, RootError> {
    real_roots(p, window, tol)
}

/// Produces a random valid K-class as an integer combination of the line
/// bundles `O(base) .. O(base+3)`; such combinations span the integral
/// lattice, so every invariant holds by construction. Used by randomized
/// suites; the decomposition is returned for independent oracles.
pub fn lattice_class(base: i64, coeffs: [i64; 4]) -> (KClass, Vec<(i64, i64)>) {
    let mut v = KClass::zero();
    let mut decomp = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let k = base + i as i64;
        v = &v + &KClass::line_bundle(k).scale(&rat_int(c));
        decomp.push((c, k));
    }
    (v, decomp)
}

/// Binomial `binom(n+3, 3)` as a rational, valid for any integer `n`:
/// the Euler characteristic `chi(O(n))` on P^3.
pub fn chi_line_bundle(n: i64) -> BigRational {
    let n = BigInt::from(n);
    let p = (&n + 1) * (&n + 2) * (&n + 3);
    BigRational::new(p, BigInt::from(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::default_tol;
    use proptest::prelude::*;

    #[test]
    fn line_bundle_examples() {
        assert_eq!(KClass::line_bundle(0), KClass::from_i64(1, 0, 0, 0));
        assert_eq!(
            KClass::line_bundle(-1),
            KClass::new(rat_int(1), rat_int(-1), rat(1, 2), rat(-1, 6))
        );
        // e^{-4H} truncated at H^3
        assert_eq!(
            KClass::line_bundle(-4),
            KClass::new(rat_int(1), rat_int(-4), rat_int(8), rat(-32, 3))
        );
    }

    #[test]
    fn twist_examples() {
        let o = KClass::from_i64(1, 0, 0, 0);
        let t = rat(7, 3);
        let tw = o.twist(&t);
        assert_eq!(tw.ch1, t);
        assert_eq!(tw.ch2, &t * &t / rat_int(2));
        assert_eq!(tw.ch3, &t * &t * &t / rat_int(6));

        let v = KClass::from_i64(0, 0, 3, -7);
        assert_eq!(v.twist(&rat_int(1)), KClass::from_i64(0, 0, 3, -4));
    }

    #[test]
    fn hilbert_examples() {
        // chi_t(O) = (t+1)(t+2)(t+3)/6 with roots -1,-2,-3
        let p = KClass::from_i64(1, 0, 0, 0).hilbert_poly();
        for r in [-1, -2, -3] {
            assert!(p.eval(&rat_int(r)).is_zero());
        }
        assert_eq!(p.eval(&rat_int(0)), rat_int(1));

        // twisted cubic structure sheaf: 3t + 1
        let p = KClass::from_i64(0, 0, 3, -5).hilbert_poly();
        assert_eq!(p, RatPoly::from_i64(&[1, 3]));

        // quadric surface: (t+1)^2
        let oq = KClass::new(rat_int(0), rat_int(2), rat_int(-2), rat(4, 3));
        assert_eq!(oq.hilbert_poly(), RatPoly::from_i64(&[1, 2, 1]));

        // second derivative of chi_t(O) is t + 2
        let d2 = KClass::from_i64(1, 0, 0, 0).hilbert_derivative(2);
        assert_eq!(d2, RatPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn euler_pairing_examples() {
        let o = KClass::from_i64(1, 0, 0, 0);
        assert_eq!(o.euler_pairing(&o), rat_int(1));
        let ic1 = KClass::from_i64(-1, 0, 3, -5);
        assert_eq!(ic1.euler_pairing(&o), rat_int(10));
        assert_eq!(ic1.euler_pairing(&ic1), rat_int(-11));
    }

    #[test]
    fn shift_alternates_sign() {
        let v = KClass::from_i64(0, 0, 3, -5);
        assert_eq!(v.shift(2), v);
        assert_eq!(v.shift(1), -&v);
        assert_eq!(v.shift(-1), -&v);
        assert_eq!(v.shift(3), -&v);
    }

    #[test]
    fn dual_class_examples() {
        let o = KClass::from_i64(1, 0, 0, 0);
        assert_eq!(o.dual_class(), KClass::line_bundle(-4));
        let v = KClass::from_i64(0, 0, 3, -5);
        assert_eq!(v.dual_class(), KClass::from_i64(0, 0, 3, -7));
        assert_eq!(v.dual_class().twist(&rat_int(1)), KClass::from_i64(0, 0, 3, -4));
    }

    #[test]
    fn duality_functional_equation() {
        // P_{-D(v)}(s) = P_v(-s), coefficient-wise
        for coeffs in [[1, 0, -2, 3], [0, 1, 4, -1], [2, -3, 1, 1]] {
            let (v, _) = lattice_class(-2, coeffs);
            let lhs = (-&v.dual_class()).hilbert_poly();
            let rhs = v.hilbert_poly().reflect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn wall_roots_via_real_roots() {
        let p = RatPoly::from_i64(&[-3, 2, 3]);
        let w = Window::half_open(rat_int(0), rat_int(1));
        let roots = poly_real_roots(&p, &w, &default_tol()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].to_f64() - 0.7207592200561264).abs() < 1e-8);
    }

    #[test]
    fn invariants_detect_bad_classes() {
        assert!(KClass::from_i64(0, 0, 3, -5).satisfies_invariants());
        assert!(!KClass::new(rat(1, 2), rat_int(0), rat_int(0), rat_int(0)).satisfies_invariants());
        // 2ch2 integral but Hilbert polynomial not integer-valued
        assert!(!KClass::new(rat_int(0), rat_int(0), rat(1, 2), rat_int(0)).satisfies_invariants());
    }

    #[test]
    fn euler_pairing_against_bilinear_oracle_and_serre_form() {
        // oracle: chi(O(p), O(q)) = binom(q - p + 3, 3), extended bilinearly
        // over the line-bundle decompositions
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_0E01);
        for _ in 0..100 {
            let (a, da) = lattice_class(rng.gen_range(-4..2), [
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
            ]);
            let (b, db) = lattice_class(rng.gen_range(-4..2), [
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
            ]);
            let mut oracle = rat_int(0);
            for (ca, ka) in &da {
                for (cb, kb) in &db {
                    oracle += rat_int(ca * cb) * chi_line_bundle(kb - ka);
                }
            }
            assert_eq!(a.euler_pairing(&b), oracle);
            // Serre-type symmetry: chi(a, b) = -chi(b, a tensor omega)
            let serre = -b.euler_pairing(&a.twist(&rat_int(-4)));
            assert_eq!(a.euler_pairing(&b), serre);
        }
    }

    proptest! {
        #[test]
        fn twist_group_law(c in -6i64..6, k in -4i64..4, num in -12i64..12, den in 1i64..6) {
            let (v, _) = lattice_class(k, [c, 1, -c, 2]);
            let beta = rat(num, den);
            let round = v.twist(&beta).twist(&(-&beta));
            prop_assert_eq!(round, v);
        }

        #[test]
        fn hilbert_additive(a0 in -3i64..3, a1 in -3i64..3, b0 in -3i64..3, b1 in -3i64..3) {
            let (a, _) = lattice_class(-1, [a0, a1, 1, 0]);
            let (b, _) = lattice_class(0, [b0, b1, 0, 1]);
            let sum = &a + &b;
            let lhs = sum.hilbert_poly();
            let rhs = &a.hilbert_poly() + &b.hilbert_poly();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
