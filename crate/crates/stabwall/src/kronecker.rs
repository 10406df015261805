//! Matrices of homogeneous forms and King stability for the (2,3) Kronecker
//! quiver with four arrows.
//!
//! A linear 2x3 matrix `M` (rows indexed by the 2-space, columns by the
//! 3-space) is the representation `M = sum_k x_k A_k^T` with arrow matrices
//! `A_k` of shape 3x2. With `theta = (-3, 2)` the destabilizing subreps are
//! `(2, b <= 2)` and `(1, b <= 1)`, so stability reduces to two exact rank
//! conditions decided over Q.

use crate::kclass::KClass;
use crate::multipoly::{gcd, MultiPoly, Monomial, NUM_VARS};
use crate::quiver::DimVector;
use crate::rational::{format_rational, parse_rational, rat_int};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KroneckerError {
    #[error("shape mismatch: {0}x{1} cannot compose with {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("entry at ({0},{1}) is not homogeneous of degree {2}")]
    NotHomogeneous(usize, usize, u32),
    #[error("not a complex: composition of maps {0} and {1} is nonzero")]
    NotAComplex(usize, usize),
    #[error("expected a linear 2x3 matrix")]
    BadKroneckerShape,
    #[error("chain shape does not match the twist sequence")]
    BadChain,
}

/// A matrix of homogeneous forms of a fixed degree; a map
/// `O(d)^rows -> O(d+degree)^cols` composing by row-vector convention
/// (`compose(f, g) = f * g` requires `f.cols == g.rows`).
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix {
    pub rows: usize,
    pub cols: usize,
    pub degree: u32,
    entries: Vec<MultiPoly>, // row major
}

impl FormMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        degree: u32,
        entries: Vec<MultiPoly>,
    ) -> Result<Self, KroneckerError> {
        assert_eq!(entries.len(), rows * cols, "entry count");
        for (k, e) in entries.iter().enumerate() {
            if !e.is_homogeneous_of(degree) {
                return Err(KroneckerError::NotHomogeneous(k / cols, k % cols, degree));
            }
        }
        Ok(FormMatrix { rows, cols, degree, entries })
    }

    pub fn zero(rows: usize, cols: usize, degree: u32) -> Self {
        FormMatrix {
            rows,
            cols,
            degree,
            entries: vec![MultiPoly::zero(); rows * cols],
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, p: MultiPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Builds a linear matrix from rows of coefficient vectors: each entry is
    /// `[c0, c1, c2, c3]` for `c0 x0 + ... + c3 x3`.
    pub fn linear_from_rows(rows: &[Vec<[i64; NUM_VARS]>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&coeffs| MultiPoly::linear(coeffs)))
            .collect();
        FormMatrix::new(r, c, 1, entries).expect("linear forms are homogeneous")
    }

    /// Polynomial matrix product (degree adds).
    pub fn compose(&self, other: &FormMatrix) -> Result<FormMatrix, KroneckerError> {
        if self.cols != other.rows {
            return Err(KroneckerError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = FormMatrix::zero(self.rows, other.cols, self.degree + other.degree);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.entry(i, k) * other.entry(k, j));
                }
                out.set_entry(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Reduces every entry modulo a linear form (substituting the leading
    /// variable of the form). Used to check compositions that vanish only on
    /// a hyperplane.
    pub fn reduce_mod_linear(&self, form: &MultiPoly) -> FormMatrix {
        // solve form = 0 for its leading variable
        let (var, coeff) = (0..NUM_VARS)
            .find_map(|i| {
                let mut mono = [0u8; NUM_VARS];
                mono[i] = 1;
                form.terms()
                    .find(|(m, _)| **m == mono)
                    .map(|(_, c)| (i, c.clone()))
            })
            .expect("nonzero linear form");
        // x_var -> x_var - form/coeff (which eliminates x_var from form)
        let mut substitution = MultiPoly::var(var);
        substitution = &substitution - &form.scale(&(BigRational::one() / &coeff));
        let entries = self
            .entries
            .iter()
            .map(|e| substitute_var(e, var, &substitution))
            .collect();
        FormMatrix { rows: self.rows, cols: self.cols, degree: self.degree, entries }
    }

    /// The maximal minors of a 2x3 matrix (quadrics for a linear matrix),
    /// ordered by the deleted column.
    pub fn maximal_minors_2x3(&self) -> Result<[MultiPoly; 3], KroneckerError> {
        if self.rows != 2 || self.cols != 3 {
            return Err(KroneckerError::BadKroneckerShape);
        }
        let det2 = |c1: usize, c2: usize| -> MultiPoly {
            &(self.entry(0, c1) * self.entry(1, c2)) - &(self.entry(0, c2) * self.entry(1, c1))
        };
        Ok([det2(1, 2), det2(0, 2), det2(0, 1)])
    }

    /// Applies the coordinate substitution `x_i -> sum_j m[i][j] x_j`.
    pub fn substitute_linear(&self, m: &[[i64; NUM_VARS]; NUM_VARS]) -> FormMatrix {
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            degree: self.degree,
            entries: self.entries.iter().map(|e| e.substitute_linear(m)).collect(),
        }
    }

    /// Left/right multiplication by constant rational matrices (basis changes
    /// on source and target).
    pub fn change_basis(&self, left: &[Vec<BigRational>], right: &[Vec<BigRational>]) -> FormMatrix {
        assert_eq!(left.len(), self.rows);
        assert_eq!(left[0].len(), self.rows);
        assert_eq!(right.len(), self.cols);
        assert_eq!(right[0].len(), self.cols);
        let mut out = FormMatrix::zero(self.rows, self.cols, self.degree);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut acc = MultiPoly::zero();
                for k in 0..self.rows {
                    for l in 0..self.cols {
                        let c = &left[i][k] * &right[l][j];
                        acc = &acc + &self.entry(k, l).scale(&c);
                    }
                }
                out.set_entry(i, j, acc);
            }
        }
        out
    }
}

fn substitute_var(p: &MultiPoly, var: usize, image: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (mono, c) in p.terms() {
        let mut term = MultiPoly::constant(c.clone());
        for (i, &e) in mono.iter().enumerate() {
            let factor = if i == var { image.clone() } else { MultiPoly::var(i) };
            for _ in 0..e {
                term = &term * &factor;
            }
        }
        out = &out + &term;
    }
    out
}

// JSON schema: {rows, cols, degree, entries: [[{"e0e1e2e3": "coeff"}]]}
impl Serialize for FormMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rows: usize,
            cols: usize,
            degree: u32,
            entries: Vec<EntryRow<'a>>,
        }
        struct EntryRow<'a>(&'a FormMatrix, usize);
        impl Serialize for EntryRow<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.cols))?;
                for c in 0..self.0.cols {
                    let map: BTreeMap<String, String> = self
                        .0
                        .entry(self.1, c)
                        .terms()
                        .map(|(m, q)| {
                            (
                                m.iter().map(|e| e.to_string()).collect::<String>(),
                                format_rational(q),
                            )
                        })
                        .collect();
                    seq.serialize_element(&map)?;
                }
                seq.end()
            }
        }
        Repr {
            rows: self.rows,
            cols: self.cols,
            degree: self.degree,
            entries: (0..self.rows).map(|r| EntryRow(self, r)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            degree: u32,
            entries: Vec<Vec<BTreeMap<String, String>>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows {
            return Err(D::Error::custom("row count mismatch"));
        }
        let mut entries = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.entries {
            if row.len() != repr.cols {
                return Err(D::Error::custom("column count mismatch"));
            }
            for cell in row {
                let mut p = MultiPoly::zero();
                for (key, val) in cell {
                    if key.len() != NUM_VARS || !key.chars().all(|c| c.is_ascii_digit()) {
                        return Err(D::Error::custom(format!("bad monomial key `{}`", key)));
                    }
                    let mut mono: Monomial = [0; NUM_VARS];
                    for (i, ch) in key.chars().enumerate() {
                        mono[i] = ch.to_digit(10).unwrap() as u8;
                    }
                    let q = parse_rational(val).map_err(D::Error::custom)?;
                    p.add_term(mono, q);
                }
                entries.push(p);
            }
        }
        FormMatrix::new(repr.rows, repr.cols, repr.degree, entries).map_err(D::Error::custom)
    }
}

/// Kronecker representation with dimension vector (2,3): four arrow matrices
/// `A_k : C^2 -> C^3` (shape 3x2), the coefficient slices of a linear 2x3
/// form matrix (transposed, since the form matrix is written with rows
/// indexed by the 2-space).
#[derive(Debug, Clone, PartialEq)]
pub struct KroneckerRep {
    pub arrows: [[[BigRational; 2]; 3]; 4],
}

impl KroneckerRep {
    pub fn from_form_matrix(m: &FormMatrix) -> Result<Self, KroneckerError> {
        if m.rows != 2 || m.cols != 3 || m.degree != 1 {
            return Err(KroneckerError::BadKroneckerShape);
        }
        let mut arrows: [[[BigRational; 2]; 3]; 4] = std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
        });
        for (k, arrow) in arrows.iter_mut().enumerate() {
            let mut mono: Monomial = [0; NUM_VARS];
            mono[k] = 1;
            for (j, row_j) in arrow.iter_mut().enumerate() {
                for (i, slot) in row_j.iter_mut().enumerate() {
                    let coeff = m
                        .entry(i, j)
                        .terms()
                        .find(|(mm, _)| **mm == mono)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(BigRational::zero);
                    *slot = coeff;
                }
            }
        }
        Ok(KroneckerRep { arrows })
    }

    /// Reassembles the linear form matrix (the transpose bookkeeping undone).
    pub fn to_form_matrix(&self) -> FormMatrix {
        let mut out = FormMatrix::zero(2, 3, 1);
        for i in 0..2 {
            for j in 0..3 {
                let mut p = MultiPoly::zero();
                for (k, arrow) in self.arrows.iter().enumerate() {
                    let mut mono: Monomial = [0; NUM_VARS];
                    mono[k] = 1;
                    p.add_term(mono, arrow[j][i].clone());
                }
                out.set_entry(i, j, p);
            }
        }
        out
    }
}

/// King stability verdict for `theta = (-3, 2)` on dimension vector (2,3).
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaVerdict {
    Stable,
    /// A proper nonzero subrepresentation pairs to zero (cannot occur for
    /// dimension vector (2,3), kept for the API).
    Semistable { sub_dims: (u32, u32) },
    Unstable {
        sub_dims: (u32, u32),
        /// Generating vector of the 1-dimensional source when `sub_dims.0 == 1`
        /// and it is rational; the common-root locus is reported otherwise.
        witness: Option<(BigRational, BigRational)>,
    },
}

impl ThetaVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, ThetaVerdict::Stable)
    }
}

/// Exact King theta-stability for the (2,3) representation with 4 arrows.
///
/// Stable iff (i) the images of all arrows span the 3-space (rules out
/// `(2, b <= 2)` subreps) and (ii) for every nonzero `w` in the 2-space,
/// `dim span{A_0 w, .., A_3 w} >= 2` (rules out `(1, b <= 1)`, since
/// `theta(1,1) = -1 < 0` while `theta(1,2) = 1 > 0`). Condition (ii) is
/// decided by the gcd of the 2x2 minors of the 4x3 stack of images, linear
/// in `(s : t)`; a nonconstant gcd is exactly a common projective root.
pub fn theta_stable_23(rep: &KroneckerRep) -> ThetaVerdict {
    // (i): rank of the 3x8 matrix of all image columns
    let mut columns: Vec<[BigRational; 3]> = Vec::new();
    for arrow in &rep.arrows {
        for i in 0..2 {
            columns.push([
                arrow[0][i].clone(),
                arrow[1][i].clone(),
                arrow[2][i].clone(),
            ]);
        }
    }
    if rank3(&columns) < 3 {
        let b = rank3(&columns) as u32;
        return ThetaVerdict::Unstable { sub_dims: (2, b), witness: None };
    }

    // (ii): images of w = (s, t) as rows linear in (s, t); use auxiliary
    // variables x0 = s, x1 = t in the shared polynomial ring
    let s = MultiPoly::var(0);
    let t = MultiPoly::var(1);
    let image = |k: usize, j: usize| -> MultiPoly {
        // (A_k w)_j = A_k[j][0] s + A_k[j][1] t
        &s.scale(&rep.arrows[k][j][0]) + &t.scale(&rep.arrows[k][j][1])
    };
    let mut minors: Vec<MultiPoly> = Vec::new();
    for k1 in 0..4 {
        for k2 in (k1 + 1)..4 {
            for j1 in 0..3 {
                for j2 in (j1 + 1)..3 {
                    let det = &(&image(k1, j1) * &image(k2, j2))
                        - &(&image(k1, j2) * &image(k2, j1));
                    if !det.is_zero() {
                        minors.push(det);
                    }
                }
            }
        }
    }
    if minors.is_empty() {
        // every w spans at most a line: a (1, <=1) subrep everywhere
        return ThetaVerdict::Unstable {
            sub_dims: (1, 0),
            witness: Some((BigRational::one(), BigRational::zero())),
        };
    }
    let mut g = minors[0].clone();
    for m in &minors[1..] {
        g = gcd(&g, m);
        if g.is_constant() {
            return ThetaVerdict::Stable;
        }
    }
    // nonconstant gcd: a common projective root (s : t) exists
    let witness = rational_root_of_binary_form(&g);
    let b = witness
        .as_ref()
        .map(|w| image_rank_at(rep, w))
        .unwrap_or(1);
    ThetaVerdict::Unstable { sub_dims: (1, b), witness }
}

fn image_rank_at(rep: &KroneckerRep, w: &(BigRational, BigRational)) -> u32 {
    let columns: Vec<[BigRational; 3]> = rep
        .arrows
        .iter()
        .map(|a| {
            [
                &a[0][0] * &w.0 + &a[0][1] * &w.1,
                &a[1][0] * &w.0 + &a[1][1] * &w.1,
                &a[2][0] * &w.0 + &a[2][1] * &w.1,
            ]
        })
        .collect();
    rank3(&columns) as u32
}

/// Rank of a set of vectors in Q^3 by Gaussian elimination.
fn rank3(columns: &[[BigRational; 3]]) -> usize {
    let mut basis: Vec<[BigRational; 3]> = Vec::new();
    for col in columns {
        let mut v = col.clone();
        for b in &basis {
            // eliminate with the pivot of b
            let pivot = b.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let factor = &v[pivot] / &b[pivot];
                for i in 0..3 {
                    v[i] = &v[i] - &(&factor * &b[i]);
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            basis.push(v);
            if basis.len() == 3 {
                return 3;
            }
        }
    }
    basis.len()
}

/// A rational projective root of a binary form in `(x0, x1)`, if one exists:
/// checks `(1, 0)` and the rational roots of the dehomogenization.
fn rational_root_of_binary_form(g: &MultiPoly) -> Option<(BigRational, BigRational)> {
    // coefficients of s^i t^(d-i)
    let d = g.total_degree()? as usize;
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for (m, c) in g.terms() {
        coeffs[m[0] as usize] = c.clone();
    }
    if coeffs[d].is_zero() {
        return Some((BigRational::one(), BigRational::zero())); // t | g
    }
    // rational roots of sum coeffs[i] s^i (t = 1), inside the Cauchy bound
    let poly = crate::poly::RatPoly::from_coeffs(coeffs);
    let lead = poly.leading().unwrap().abs();
    let bound = BigRational::one()
        + poly
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
            / lead;
    let roots = crate::roots::real_roots(
        &poly,
        &crate::roots::Window::closed(-&bound, bound.clone()),
        &crate::roots::default_tol(),
    )
    .ok()?;
    roots
        .iter()
        .find_map(|r| r.as_rational().cloned())
        .map(|s| (s, BigRational::one()))
}

/// Stratum of a stable linear 2x3 matrix in the Kronecker moduli space.
#[derive(Debug, Clone, PartialEq)]
pub enum Stratum {
    /// Ideal-sheaf locus: the maximal minors have no common factor.
    Curve,
    /// The minors share a linear factor: the plane it cuts out.
    Torsion { plane: MultiPoly },
    Unstable(ThetaVerdict),
}

/// Classifies into curve / torsion / unstable. Torsion means the three
/// maximal minors (quadrics) share a common linear factor, returned as the
/// plane.
pub fn classify_stratum(m: &FormMatrix) -> Result<Stratum, KroneckerError> {
    let rep = KroneckerRep::from_form_matrix(m)?;
    let verdict = theta_stable_23(&rep);
    if !verdict.is_stable() {
        return Ok(Stratum::Unstable(verdict));
    }
    let [m1, m2, m3] = m.maximal_minors_2x3()?;
    let g = gcd(&gcd(&m1, &m2), &m3);
    if g.is_constant() {
        Ok(Stratum::Curve)
    } else {
        // the gcd of quadrics sharing a factor is the linear plane form
        Ok(Stratum::Torsion { plane: g })
    }
}

/// Expected dimension `k a b - a^2 - b^2 + 1` of the moduli of stable
/// representations of the k-arrow Kronecker quiver with dimension vector
/// `(a, b)`.
pub fn expected_dim(arrows: i64, dims: (i64, i64)) -> i64 {
    let (a, b) = dims;
    arrows * a * b - a * a - b * b + 1
}

/// Dimension of the partial flag variety of subspace dimensions
/// `d1 < .. < dk` in C^n: `sum d_i (d_{i+1} - d_i)` with `d_{k+1} = n`.
pub fn flag_dimension(dims: &[i64], n: i64) -> i64 {
    let mut total = 0;
    for (i, &d) in dims.iter().enumerate() {
        let next = if i + 1 < dims.len() { dims[i + 1] } else { n };
        total += d * (next - d);
    }
    total
}

/// A chain of form matrices presenting a complex of twisted line bundles:
/// `O(twists[0])^{r0} -> O(twists[1])^{r1} -> ...` with `maps[i]` of shape
/// `r_i x r_{i+1}` and degree `twists[i+1] - twists[i]`.
pub fn resolution_class(
    maps: &[FormMatrix],
    twists: &[i64],
) -> Result<(DimVector, KClass), KroneckerError> {
    if maps.is_empty() || twists.len() != maps.len() + 1 {
        return Err(KroneckerError::BadChain);
    }
    for w in twists.windows(2) {
        if w[1] <= w[0] {
            return Err(KroneckerError::BadChain);
        }
    }
    for (i, pair) in maps.windows(2).enumerate() {
        let prod = pair[0].compose(&pair[1])?;
        if !prod.is_zero() {
            return Err(KroneckerError::NotAComplex(i, i + 1));
        }
    }
    // multiplicities along the chain; the last term has twist -n-0 = -n
    let n = -twists[twists.len() - 1];
    if twists.len() > 4 || twists[0] != -n - (twists.len() as i64 - 1) {
        return Err(KroneckerError::BadChain);
    }
    let mut entries = [0u32; 4];
    let mut sizes: Vec<usize> = maps.iter().map(|m| m.rows).collect();
    sizes.push(maps.last().unwrap().cols);
    // sizes[j] multiplies O(twists[j]) = O(-n - i) with i = -(twists[j] + n)
    let mut class = KClass::zero();
    for (j, &size) in sizes.iter().enumerate() {
        let i = -(twists[j] + n);
        let slot = 3 - i as usize; // entries are [a3, a2, a1, a0]
        entries[slot] = size as u32;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        class = &class + &KClass::line_bundle(twists[j]).scale(&rat_int(sign * size as i64));
    }
    let d = DimVector::new(n, entries);
    debug_assert_eq!(d.class(), class);
    Ok((d, class))
}

impl fmt::Display for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::rat;

    #[test]
    fn compose_shapes_and_vanishing() {
        let (maps, _) = fixtures::koszul_structure_chain();
        for pair in maps.windows(2) {
            assert!(pair[0].compose(&pair[1]).unwrap().is_zero());
        }
        let bad = maps[0].compose(&maps[0]);
        assert!(matches!(bad, Err(KroneckerError::ShapeMismatch(..))));
    }

    #[test]
    fn hankel_matrix_is_stable_curve() {
        let m = &fixtures::canonical_kronecker_matrices()[0];
        let rep = KroneckerRep::from_form_matrix(m).unwrap();
        assert!(theta_stable_23(&rep).is_stable());
        assert_eq!(classify_stratum(m).unwrap(), Stratum::Curve);
    }

    #[test]
    fn matrix_nine_is_torsion_with_plane_x1() {
        let m = &fixtures::canonical_kronecker_matrices()[8];
        match classify_stratum(m).unwrap() {
            Stratum::Torsion { plane } => assert_eq!(plane, MultiPoly::var(1)),
            other => panic!("expected torsion, got {:?}", other),
        }
    }

    #[test]
    fn zero_row_is_unstable_with_witness() {
        let m = FormMatrix::linear_from_rows(&[
            vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
            vec![[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        ]);
        let rep = KroneckerRep::from_form_matrix(&m).unwrap();
        match theta_stable_23(&rep) {
            ThetaVerdict::Unstable { sub_dims, witness } => {
                assert_eq!(sub_dims, (1, 0));
                assert_eq!(witness, Some((rat_int(0), rat_int(1))));
            }
            other => panic!("expected unstable, got {:?}", other),
        }
    }

    #[test]
    fn rank_deficient_target_is_unstable() {
        // all arrows land in the span of the first two coordinates
        let m = FormMatrix::linear_from_rows(&[
            vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]],
            vec![[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
        ]);
        let rep = KroneckerRep::from_form_matrix(&m).unwrap();
        match theta_stable_23(&rep) {
            ThetaVerdict::Unstable { sub_dims, .. } => assert_eq!(sub_dims, (2, 2)),
            other => panic!("expected unstable, got {:?}", other),
        }
    }

    #[test]
    fn expected_dims() {
        assert_eq!(expected_dim(4, (2, 3)), 12);
        assert_eq!(expected_dim(1, (1, 1)), 0);
        assert_eq!(flag_dimension(&[1, 3], 4), 5);
    }

    #[test]
    fn slices_reassemble() {
        let m = &fixtures::canonical_kronecker_matrices()[4];
        let rep = KroneckerRep::from_form_matrix(m).unwrap();
        assert_eq!(&rep.to_form_matrix(), m);
    }

    #[test]
    fn torsion_plane_divides_every_minor() {
        let m = &fixtures::canonical_kronecker_matrices()[8];
        let Stratum::Torsion { plane } = classify_stratum(m).unwrap() else {
            panic!("expected torsion");
        };
        for minor in m.maximal_minors_2x3().unwrap() {
            if minor.is_zero() {
                continue;
            }
            let q = minor.div_exact(&plane).expect("plane divides the minor");
            assert_eq!(&(&q * &plane), &minor);
        }
    }

    #[test]
    fn stable_minors_are_not_all_proportional() {
        // proportional minors would hand every w a rank-one image family
        for m in &fixtures::canonical_kronecker_matrices() {
            let minors = m.maximal_minors_2x3().unwrap();
            let nonzero: Vec<&MultiPoly> = minors.iter().filter(|p| !p.is_zero()).collect();
            assert!(nonzero.len() >= 2);
            let all_proportional = nonzero.windows(2).all(|pair| {
                let prod = gcd(pair[0], pair[1]);
                prod.total_degree() == pair[0].total_degree()
                    && prod.total_degree() == pair[1].total_degree()
            });
            assert!(!all_proportional);
        }
    }

    #[test]
    fn resolution_class_is_basis_independent() {
        // compatible basis changes g_i along the chain leave the class alone
        let (maps, twists) = fixtures::f1_chain();
        let g2 = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(0), rat_int(1)],
        ];
        let g1 = vec![
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat(1, 3)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ];
        let g0 = vec![vec![rat_int(1)]];
        let changed = vec![
            maps[0].change_basis(&g2, &invert_upper(&g1)),
            maps[1].change_basis(&g1, &invert_upper(&g0)),
        ];
        let (d0, c0) = resolution_class(&maps, &twists).unwrap();
        let (d1, c1) = resolution_class(&changed, &twists).unwrap();
        assert_eq!(d0, d1);
        assert_eq!(c0, c1);
    }

    /// Inverse of an upper-triangular unit matrix (enough for the test data).
    fn invert_upper(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        let n = m.len();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        // forward substitution on columns (unit diagonal assumed)
        for col in 0..n {
            for row in (0..col).rev() {
                let mut acc = BigRational::zero();
                for k in (row + 1)..=col {
                    acc += &m[row][k] * &inv[k][col];
                }
                inv[row][col] = -acc;
            }
        }
        inv
    }

    #[test]
    fn form_matrix_serde_round_trip() {
        let m = fixtures::canonical_kronecker_matrices()[8].clone();
        let json = serde_json::to_string(&m).unwrap();
        let back: FormMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn basis_change_invariance_on_all_nine() {
        let left = vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(-1), rat_int(1)],
        ];
        let right = vec![
            vec![rat_int(1), rat_int(0), rat_int(2)],
            vec![rat(1, 3), rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(-1), rat_int(1)],
        ];
        let sub = [[1, 1, 0, 0], [0, 1, 0, 2], [0, 0, 1, 1], [1, 0, 0, 1]];
        for m in &fixtures::canonical_kronecker_matrices() {
            let changed = m.change_basis(&left, &right);
            let rep = KroneckerRep::from_form_matrix(&changed).unwrap();
            assert!(theta_stable_23(&rep).is_stable());
            let substituted = m.substitute_linear(&sub);
            let rep2 = KroneckerRep::from_form_matrix(&substituted).unwrap();
            assert!(theta_stable_23(&rep2).is_stable());
            let both = changed.substitute_linear(&sub);
            let rep3 = KroneckerRep::from_form_matrix(&both).unwrap();
            assert!(theta_stable_23(&rep3).is_stable());
        }
    }
}
