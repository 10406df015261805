//! Dimension-vector calculus for the hearts `A_n`.
//!
//! A heart `A_n` is generated by `O(-n-3)[3], O(-n-2)[2], O(-n-1)[1], O(-n)`;
//! an object is recorded by its dimension vector `[a3, a2, a1, a0]` (the
//! multiplicity of `O(-n-i)[i]` at slot `a_i`). Candidate subobjects are
//! enumerated over the full componentwise box, a deliberate
//! over-approximation of genuine subcomplexes, so every reported wall is
//! numerical-only until checked by hand.

use crate::kclass::KClass;
use crate::poly::RatPoly;
use crate::rational::{rat_int, to_f64};
use crate::roots::{real_roots, sign_at, IsolatedRoot, Window};
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("not representable in A_{0}: {1}")]
    NotRepresentable(i64, String),
    #[error("window must sit inside (n-1, n] for heart A_n")]
    WindowOutsideHeart,
    #[error("subvector exceeds the parent componentwise")]
    SubNotContained,
}

/// Dimension vector `[a3, a2, a1, a0]` in the heart `A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimVector {
    pub n: i64,
    pub entries: [u32; 4],
}

impl DimVector {
    pub fn new(n: i64, entries: [u32; 4]) -> Self {
        DimVector { n, entries }
    }

    /// The alternating-signed combination `sum_i (-1)^i a_i ch(O(-n-i))`.
    pub fn class(&self) -> KClass {
        let [a3, a2, a1, a0] = self.entries;
        let mut v = KClass::zero();
        for (i, a) in [(0i64, a0), (1, a1), (2, a2), (3, a3)] {
            if a == 0 {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let term = KClass::line_bundle(-self.n - i).scale(&rat_int(sign * a as i64));
            v = &v + &term;
        }
        v
    }

    /// Entries reversed; the target heart is `A_{1-n}` (mirror window).
    pub fn reverse(&self) -> DimVector {
        let [a3, a2, a1, a0] = self.entries;
        DimVector::new(1 - self.n, [a0, a1, a2, a3])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    pub fn contains(&self, sub: &DimVector) -> bool {
        self.n == sub.n && self.entries.iter().zip(&sub.entries).all(|(p, s)| s <= p)
    }

    /// Componentwise difference (the quotient's dimension vector).
    pub fn minus(&self, sub: &DimVector) -> Option<DimVector> {
        if !self.contains(sub) {
            return None;
        }
        let mut entries = [0u32; 4];
        for i in 0..4 {
            entries[i] = self.entries[i] - sub.entries[i];
        }
        Some(DimVector::new(self.n, entries))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a3, a2, a1, a0] = self.entries;
        write!(f, "[{},{},{},{}]", a3, a2, a1, a0)
    }
}

/// Inverse of [`DimVector::class`]: solves the triangular system given by
/// Hilbert-polynomial values at `n, n+1, n+2, n+3`. Fails when the solution
/// has a negative or non-integer entry.
pub fn dimvec_of(v: &KClass, n: i64) -> Result<DimVector, QuiverError> {
    let p = v.hilbert_poly();
    let chi = |k: i64| p.eval(&rat_int(k));
    // chi_n = a0; chi_{n+1} = 4 a0 - a1; chi_{n+2} = 10 a0 - 4 a1 + a2;
    // chi_{n+3} = 20 a0 - 10 a1 + 4 a2 - a3   (chi(O(k)) = binom(k+3,3))
    let a0 = chi(n);
    let a1 = rat_int(4) * &a0 - chi(n + 1);
    let a2 = chi(n + 2) - rat_int(10) * &a0 + rat_int(4) * &a1;
    let a3 = rat_int(20) * &a0 - rat_int(10) * &a1 + rat_int(4) * &a2 - chi(n + 3);
    let mut entries = [0u32; 4];
    for (slot, val) in [(3usize, a0), (2, a1), (1, a2), (0, a3)] {
        if !val.is_integer() || val.is_negative() {
            return Err(QuiverError::NotRepresentable(n, format!("{}", v)));
        }
        let as_int: u32 = val
            .to_integer()
            .try_into()
            .map_err(|_| QuiverError::NotRepresentable(n, format!("{}", v)))?;
        entries[slot] = as_int;
    }
    Ok(DimVector::new(n, entries))
}

/// Numerator of the Euler slope difference `lambda(sub) - lambda(parent)`:
/// `N = chi'_p chi_s - chi'_s chi_p` over the positive denominator
/// `chi_s chi_p` (inside the open heart window both factors are positive).
pub fn slope_equality_poly(sub: &KClass, parent: &KClass) -> RatPoly {
    let chi_s = sub.hilbert_poly();
    let chi_p = parent.hilbert_poly();
    &(&chi_p.derivative(1) * &chi_s) - &(&chi_s.derivative(1) * &chi_p)
}

/// Which side of a wall root the subobject dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallSide {
    SubDominatesAbove,
    SubDominatesBelow,
    Tangential,
}

/// One numerical wall candidate from a scan.
#[derive(Debug, Clone)]
pub struct WallHit {
    pub sub: DimVector,
    pub root: IsolatedRoot,
    pub side: WallSide,
    pub heart_ok: bool,
}

/// Optional filters for [`scan_walls`]: heart positivity at the root, a
/// required contained complex `T` with strict lexicographic ordering
/// `T < sub < parent` and non-destabilization of the sub by `T` at the root
/// (the by-hand candidate constraints), and an optional whitelist of
/// realizable subvectors (from coordinate subcomplex enumeration) that turns
/// the scan from numerical-only into structural.
#[derive(Debug, Clone, Default)]
pub struct ScanFilters {
    pub heart_positivity: bool,
    pub contains: Option<DimVector>,
    pub realizable: Option<std::collections::BTreeSet<[u32; 4]>>,
}

impl ScanFilters {
    pub fn with_heart_positivity() -> Self {
        ScanFilters { heart_positivity: true, contains: None, realizable: None }
    }

    pub fn structural(allowed: std::collections::BTreeSet<[u32; 4]>) -> Self {
        ScanFilters { heart_positivity: true, contains: None, realizable: Some(allowed) }
    }
}

fn lex_less(a: &DimVector, b: &DimVector) -> bool {
    a.entries < b.entries
}

/// Euler-charge validity of a class at an isolated root: `chi >= 0`, ties
/// `chi = 0` resolved by `chi' < 0`.
fn heart_positive_at(v: &KClass, root: &IsolatedRoot) -> bool {
    let chi = v.hilbert_poly();
    match sign_at(&chi, root) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => sign_at(&chi.derivative(1), root) == Ordering::Less,
    }
}

/// Enumerates every candidate subvector `0 < d' < parent` (componentwise box)
/// and isolates the roots of the slope-equality polynomial in the window.
pub fn scan_walls(
    parent: &DimVector,
    window: &Window,
    filters: &ScanFilters,
) -> Result<Vec<WallHit>, QuiverError> {
    // window must sit inside (n-1, n]
    let cell_lo = rat_int(parent.n - 1);
    let cell_hi = rat_int(parent.n);
    let lo_ok = window.lo > cell_lo || (window.lo == cell_lo && window.lo_open);
    if !lo_ok || window.hi > cell_hi {
        return Err(QuiverError::WindowOutsideHeart);
    }
    if let Some(t) = &filters.contains {
        if !parent.contains(t) {
            return Err(QuiverError::SubNotContained);
        }
    }
    let parent_class = parent.class();
    let candidates: Vec<DimVector> = sub_box(parent);
    let tol = crate::roots::default_tol();
    let mut hits: Vec<WallHit> = candidates
        .par_iter()
        .flat_map_iter(|sub| {
            scan_one(sub, parent, &parent_class, window, filters, &tol).into_iter()
        })
        .collect();
    hits.sort_by(|a, b| a.root.cmp_root(&b.root).then_with(|| a.sub.entries.cmp(&b.sub.entries)));
    Ok(hits)
}

/// All `0 < d' < parent` componentwise.
fn sub_box(parent: &DimVector) -> Vec<DimVector> {
    let [a3, a2, a1, a0] = parent.entries;
    let mut out = Vec::new();
    for b3 in 0..=a3 {
        for b2 in 0..=a2 {
            for b1 in 0..=a1 {
                for b0 in 0..=a0 {
                    let d = DimVector::new(parent.n, [b3, b2, b1, b0]);
                    if !d.is_zero() && d.entries != parent.entries {
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}

fn scan_one(
    sub: &DimVector,
    parent: &DimVector,
    parent_class: &KClass,
    window: &Window,
    filters: &ScanFilters,
    tol: &BigRational,
) -> Vec<WallHit> {
    if let Some(allowed) = &filters.realizable {
        if !allowed.contains(&sub.entries) {
            return Vec::new();
        }
    }
    if let Some(t) = &filters.contains {
        if !(sub.contains(t) && lex_less(t, sub) && lex_less(sub, parent)) {
            return Vec::new();
        }
    }
    let sub_class = sub.class();
    let n_poly = slope_equality_poly(&sub_class, parent_class);
    if n_poly.is_zero() {
        return Vec::new(); // proportional charges: no isolated wall
    }
    let roots = match real_roots(&n_poly, window, tol) {
        Ok(r) => r,
        Err(_) => return Vec::new(),
    };
    let quotient_class = parent.minus(sub).map(|q| q.class());
    let mut out = Vec::new();
    for root in roots {
        let mut heart_ok = true;
        if filters.heart_positivity {
            heart_ok = heart_positive_at(&sub_class, &root)
                && quotient_class
                    .as_ref()
                    .map(|q| heart_positive_at(q, &root))
                    .unwrap_or(true);
            if !heart_ok {
                continue;
            }
        }
        if let Some(t_vec) = &filters.contains {
            // T must not destabilize the sub at the wall
            if !slope_le_at(&t_vec.class(), &sub_class, &root) {
                continue;
            }
        }
        let side = wall_side(&n_poly, &sub_class, parent_class, &root);
        out.push(WallHit { sub: sub.clone(), root, side, heart_ok });
    }
    out
}

/// `lambda(a) <= lambda(b)` at an isolated root, via the sign of
/// `N_{a,b} = chi'_b chi_a - chi'_a chi_b` against the sign of
/// `chi_a chi_b`.
fn slope_le_at(a: &KClass, b: &KClass, root: &IsolatedRoot) -> bool {
    let n = slope_equality_poly(a, b);
    let num_sign = sign_at(&n, root);
    if num_sign == Ordering::Equal {
        return true;
    }
    let den = &a.hilbert_poly() * &b.hilbert_poly();
    match sign_at(&den, root) {
        Ordering::Greater => num_sign == Ordering::Less,
        Ordering::Less => num_sign == Ordering::Greater,
        // a boundary charge: compare through the exact charge points instead
        Ordering::Equal => true,
    }
}

fn wall_side(
    n_poly: &RatPoly,
    sub_class: &KClass,
    parent_class: &KClass,
    root: &IsolatedRoot,
) -> WallSide {
    if root.multiplicity() % 2 == 0 {
        return WallSide::Tangential;
    }
    let deriv_sign = sign_at(&n_poly.derivative(1), root);
    let den = &sub_class.hilbert_poly() * &parent_class.hilbert_poly();
    let den_sign = sign_at(&den, root);
    match (deriv_sign, den_sign) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => WallSide::Tangential,
        (a, b) if a == b => WallSide::SubDominatesAbove,
        _ => WallSide::SubDominatesBelow,
    }
}

/// A stable subinterval of the scan window.
#[derive(Debug, Clone)]
pub struct StableInterval {
    pub lo: StableEnd,
    pub hi: StableEnd,
}

#[derive(Debug, Clone)]
pub enum StableEnd {
    WindowEdge(BigRational),
    Breakpoint { t: IsolatedRoot, destabilizer: DimVector },
}

impl StableEnd {
    pub fn to_f64(&self) -> f64 {
        match self {
            StableEnd::WindowEdge(q) => to_f64(q),
            StableEnd::Breakpoint { t, .. } => t.to_f64(),
        }
    }

    pub fn as_breakpoint(&self) -> Option<(&IsolatedRoot, &DimVector)> {
        match self {
            StableEnd::Breakpoint { t, destabilizer } => Some((t, destabilizer)),
            StableEnd::WindowEdge(_) => None,
        }
    }
}

/// The window cut along the candidate wall roots: sub-intervals on which no
/// filtered candidate changes dominance, with each breakpoint labelled by a
/// destabilizer (the pair member whose slope dominates above the root).
///
/// Candidate subvectors over-approximate genuine subcomplexes and each
/// numerical wall is reported by a sub/quotient pair with opposite sides, so
/// without a realizability whitelist the breakpoints are numerical-only. The
/// first interval runs from the window's small-t edge (where these parents
/// are stable) to the minimum over candidate roots.
pub fn stable_range_with(
    parent: &DimVector,
    window: &Window,
    filters: &ScanFilters,
) -> Result<Vec<StableInterval>, QuiverError> {
    let hits = scan_walls(parent, window, filters)?;
    let mut out = Vec::new();
    let mut lo = StableEnd::WindowEdge(window.lo.clone());
    let mut i = 0;
    while i < hits.len() {
        let mut j = i + 1;
        while j < hits.len() && hits[j].root.cmp_root(&hits[i].root) == Ordering::Equal {
            j += 1;
        }
        let representative = hits[i..j]
            .iter()
            .find(|h| h.side == WallSide::SubDominatesAbove)
            .unwrap_or(&hits[i]);
        let end = StableEnd::Breakpoint {
            t: representative.root.clone(),
            destabilizer: representative.sub.clone(),
        };
        out.push(StableInterval { lo, hi: end.clone() });
        lo = end;
        i = j;
    }
    out.push(StableInterval { lo, hi: StableEnd::WindowEdge(window.hi.clone()) });
    Ok(out)
}

/// [`stable_range_with`] under the plain heart-positivity filter.
pub fn stable_range(
    parent: &DimVector,
    window: &Window,
) -> Result<Vec<StableInterval>, QuiverError> {
    stable_range_with(parent, window, &ScanFilters::with_heart_positivity())
}

/// Per-subvector slope comparison at a fixed certified parameter; the verdict
/// lists any subvector whose slope is not strictly smaller than the parent's.
#[derive(Debug, Clone)]
pub struct AppendixScanReport {
    pub checked: usize,
    pub violators: Vec<DimVector>,
}

impl AppendixScanReport {
    pub fn all_strictly_smaller(&self) -> bool {
        self.violators.is_empty()
    }
}

pub fn appendix_scan(
    parent: &DimVector,
    subs: &[DimVector],
    t: &IsolatedRoot,
) -> Result<AppendixScanReport, QuiverError> {
    for s in subs {
        if !parent.contains(s) {
            return Err(QuiverError::SubNotContained);
        }
    }
    let parent_class = parent.class();
    let violators: Vec<DimVector> = subs
        .par_iter()
        .filter(|s| {
            let sub_class = s.class();
            if s.entries == parent.entries {
                return false;
            }
            !slope_strictly_less_at(&sub_class, &parent_class, t)
        })
        .cloned()
        .collect();
    Ok(AppendixScanReport { checked: subs.len(), violators })
}

fn slope_strictly_less_at(a: &KClass, b: &KClass, root: &IsolatedRoot) -> bool {
    let n = slope_equality_poly(a, b);
    let num_sign = sign_at(&n, root);
    if num_sign == Ordering::Equal {
        return false;
    }
    let den = &a.hilbert_poly() * &b.hilbert_poly();
    match sign_at(&den, root) {
        Ordering::Greater => num_sign == Ordering::Less,
        Ordering::Less => num_sign == Ordering::Greater,
        Ordering::Equal => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn class_of_known_vectors() {
        assert_eq!(
            DimVector::new(1, [1, 4, 6, 4]).class(),
            KClass::from_i64(1, 0, 0, 0)
        );
        assert_eq!(
            DimVector::new(1, [1, 6, 9, 4]).class(),
            KClass::from_i64(0, 0, 3, -5)
        );
        assert_eq!(
            DimVector::new(1, [2, 8, 11, 5]).class(),
            KClass::new(rat_int(0), rat_int(1), rat(1, 2), rat(-5, 6))
        );
        assert_eq!(
            DimVector::new(1, [1, 3, 3, 1]).class(),
            KClass::from_i64(0, 0, 0, 1)
        );
    }

    #[test]
    fn dimvec_round_trips() {
        let cases = [
            (KClass::from_i64(1, 0, 0, 0), [1u32, 4, 6, 4]),
            (KClass::new(rat_int(0), rat_int(1), rat(-1, 2), rat(1, 6)), [1, 4, 6, 3]),
            (KClass::from_i64(0, 0, 3, -5), [1, 6, 9, 4]),
            (KClass::from_i64(-1, 0, 3, -5), [0, 2, 3, 0]),
            (KClass::new(rat_int(0), rat_int(-1), rat(7, 2), rat(-31, 6)), [0, 2, 3, 1]),
        ];
        for (class, entries) in cases {
            let d = dimvec_of(&class, 1).unwrap();
            assert_eq!(d.entries, entries);
            assert_eq!(d.class(), class);
        }
        // not representable: a negative entry
        assert!(dimvec_of(&KClass::from_i64(0, 0, 0, -1), 1).is_err());
    }

    #[test]
    fn dimvec_of_inverts_class_of() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let d = DimVector::new(
                rng.gen_range(-2..3),
                [
                    rng.gen_range(0..5),
                    rng.gen_range(0..9),
                    rng.gen_range(0..12),
                    rng.gen_range(0..6),
                ],
            );
            assert_eq!(dimvec_of(&d.class(), d.n).unwrap(), d);
        }
    }

    #[test]
    fn reverse_involution_and_duality() {
        let d = DimVector::new(1, [1, 4, 6, 4]);
        let r = d.reverse();
        assert_eq!(r.entries, [4, 6, 4, 1]);
        assert_eq!(r.n, 0);
        assert_eq!(r.reverse(), d);
        // class consistency with the derived dual
        let dual = -&d.class().dual_class();
        assert_eq!(r.class(), dual);
        assert_eq!(
            r.class(),
            KClass::new(rat_int(-1), rat_int(4), rat_int(-8), rat(32, 3))
        );
    }

    #[test]
    fn scan_finds_both_cubic_walls() {
        let parent = DimVector::new(1, [1, 6, 9, 4]);
        let window = Window::half_open(rat_int(0), rat_int(1));
        let hits = scan_walls(&parent, &window, &ScanFilters::with_heart_positivity()).unwrap();
        let koszul = hits
            .iter()
            .find(|h| h.sub.entries == [1, 4, 6, 4])
            .expect("structure-sheaf wall");
        assert!((koszul.root.to_f64() - 0.3487).abs() < 1e-3);
        let plane = hits
            .iter()
            .find(|h| h.sub.entries == [1, 4, 6, 3])
            .expect("plane wall");
        assert!((plane.root.to_f64() - 0.7208).abs() < 1e-3);
    }

    #[test]
    fn stable_range_of_1462_breaks_at_half() {
        let parent = DimVector::new(1, [1, 4, 6, 2]);
        let window = Window::open(rat_int(0), rat_int(1));
        let model = crate::fixtures::table1_models()
            .into_iter()
            .find(|(e, _)| *e == [1, 4, 6, 2])
            .unwrap()
            .1;
        let filters = ScanFilters::structural(model.subrep_dimension_vectors());
        let ranges = stable_range_with(&parent, &window, &filters).unwrap();
        let first = &ranges[0];
        let (root, destabilizer) = first.hi.as_breakpoint().expect("breakpoint");
        assert_eq!(root.as_rational(), Some(&rat(1, 2)));
        assert_eq!(destabilizer.entries, [0, 0, 1, 0]);
        // the numerical-only scan reports an earlier candidate root
        let numeric = stable_range(&parent, &window).unwrap();
        let (nroot, _) = numeric[0].hi.as_breakpoint().expect("breakpoint");
        assert!(nroot.to_f64() < 0.5);
    }

    #[test]
    fn scan_rejects_windows_outside_the_heart() {
        let parent = DimVector::new(1, [1, 4, 6, 4]);
        let filters = ScanFilters::with_heart_positivity();
        let too_wide = Window::half_open(rat_int(0), rat_int(2));
        assert_eq!(
            scan_walls(&parent, &too_wide, &filters).unwrap_err(),
            QuiverError::WindowOutsideHeart
        );
        let closed_at_cell_edge = Window::closed(rat_int(0), rat_int(1));
        assert_eq!(
            scan_walls(&parent, &closed_at_cell_edge, &filters).unwrap_err(),
            QuiverError::WindowOutsideHeart
        );
        let inner = Window::closed(rat(1, 10), rat(9, 10));
        assert!(scan_walls(&parent, &inner, &filters).is_ok());
    }

    #[test]
    fn plane_shift_is_stable_in_open_cell() {
        // O_Lambda(-2)[1] = [0,1,1,0]: single nontrivial subvector gives no root
        let parent = DimVector::new(1, [0, 1, 1, 0]);
        let window = Window::open(rat_int(0), rat_int(1));
        let hits = scan_walls(&parent, &window, &ScanFilters::with_heart_positivity()).unwrap();
        assert!(hits.iter().all(|h| h.sub.entries != [0, 0, 1, 0]));
    }

    #[test]
    fn wall_symmetry_sub_vs_quotient() {
        let parent = DimVector::new(1, [1, 6, 9, 4]);
        let sub = DimVector::new(1, [1, 4, 6, 4]);
        let quot = parent.minus(&sub).unwrap();
        let n_sub = slope_equality_poly(&sub.class(), &parent.class());
        let n_quot = slope_equality_poly(&quot.class(), &parent.class());
        assert!(n_sub.proportional_to(&n_quot));
    }

    #[test]
    fn dual_scan_reflection() {
        // N_dual(t) proportional to N(-t) for the reversed data
        let parent = DimVector::new(1, [1, 6, 9, 4]);
        let sub = DimVector::new(1, [1, 4, 6, 4]);
        let quot = parent.minus(&sub).unwrap();
        let n = slope_equality_poly(&sub.class(), &parent.class());
        let dual_sub = parent.reverse().minus(&sub.reverse()).unwrap();
        assert_eq!(dual_sub, quot.reverse());
        let n_dual = slope_equality_poly(&dual_sub.class(), &parent.reverse().class());
        assert!(n_dual.proportional_to(&n.reflect()));
    }

    #[test]
    fn scan_scale_invariance_of_roots() {
        let parent = DimVector::new(1, [1, 6, 9, 4]).class();
        let sub = DimVector::new(1, [1, 4, 6, 4]).class();
        let n1 = slope_equality_poly(&sub, &parent);
        let n2 = slope_equality_poly(&sub, &parent.scale(&rat(7, 3)));
        assert!(n2.proportional_to(&n1));
    }
}
