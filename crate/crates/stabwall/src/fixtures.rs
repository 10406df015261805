//! Canonical matrices, chains, and tables used across the engine and its
//! test suites: the Koszul chain of the structure sheaf, the skyscraper and
//! torsion-complex presentations, the quadric-surface presentation, the
//! point-in-plane ideal presentation with its subcomplex table, and the nine
//! canonical Kronecker matrices.

use crate::kronecker::FormMatrix;
use crate::multipoly::{MultiPoly, NUM_VARS};
use crate::quiver::DimVector;

fn lin(rows: &[Vec<[i64; NUM_VARS]>]) -> FormMatrix {
    FormMatrix::linear_from_rows(rows)
}

// coefficient vectors for single variables
const X0: [i64; 4] = [1, 0, 0, 0];
const X1: [i64; 4] = [0, 1, 0, 0];
const X2: [i64; 4] = [0, 0, 1, 0];
const X3: [i64; 4] = [0, 0, 0, 1];
const NX1: [i64; 4] = [0, -1, 0, 0];
const NX2: [i64; 4] = [0, 0, -1, 0];
const NX3: [i64; 4] = [0, 0, 0, -1];
const ZERO: [i64; 4] = [0, 0, 0, 0];

/// The nine linear 2x3 matrices whose Kronecker complexes are stable;
/// (1)-(8) present ideal sheaves of space cubics, (9) the torsion sheaf on
/// the plane `x1 = 0`.
pub fn canonical_kronecker_matrices() -> Vec<FormMatrix> {
    vec![
        lin(&[vec![X0, X1, X2], vec![X1, X2, X3]]),
        lin(&[vec![X1, X0, ZERO], vec![X0, X2, X3]]),
        lin(&[vec![X3, X0, ZERO], vec![ZERO, X2, X1]]),
        lin(&[vec![X2, X1, ZERO], vec![ZERO, X1, X0]]),
        lin(&[vec![X1, X0, ZERO], vec![X3, X2, X0]]),
        lin(&[vec![X3, X0, ZERO], vec![ZERO, X1, X0]]),
        lin(&[vec![X1, X0, ZERO], vec![X2, X1, X0]]),
        lin(&[vec![X1, X0, ZERO], vec![ZERO, X1, X0]]),
        lin(&[vec![X1, ZERO, X2], vec![ZERO, X1, X3]]),
    ]
}

/// Koszul chain of the structure sheaf in `A_1`:
/// `O(-4) -> O(-3)^4 -> O(-2)^6 -> O(-1)^4`, twists `[-4, -3, -2, -1]`,
/// generated from the exterior-algebra differential (contraction with the
/// coordinate vector).
pub fn koszul_structure_chain() -> (Vec<FormMatrix>, Vec<i64>) {
    let maps = vec![koszul_map(4), koszul_map(3), koszul_map(2)];
    (maps, vec![-4, -3, -2, -1])
}

/// Final Koszul augmentation `O(-1)^4 -> O` given by `(x0, x1, x2, x3)`.
pub fn koszul_augmentation() -> FormMatrix {
    lin(&[vec![X0], vec![X1], vec![X2], vec![X3]])
}

/// The differential `Lambda^k -> Lambda^(k-1)` (rows index size-k subsets of
/// the coordinates in lexicographic order): `e_S -> sum (-1)^pos x_i e_(S-i)`.
fn koszul_map(k: usize) -> FormMatrix {
    let sources = subsets(k);
    let targets = subsets(k - 1);
    let mut m = FormMatrix::zero(sources.len(), targets.len(), 1);
    for (r, s) in sources.iter().enumerate() {
        for (pos, &i) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(pos);
            let c = targets.iter().position(|t| *t == rest).unwrap();
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let mut coeffs = [0i64; NUM_VARS];
            coeffs[i] = sign;
            m.set_entry(r, c, MultiPoly::linear(coeffs));
        }
    }
    m
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..16 {
        if mask.count_ones() as usize == k {
            out.push((0..4).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Koszul presentation of the skyscraper sheaf of the point
/// `x1 = x2 = x3 = 0`, dimension vector `[1, 3, 3, 1]` in `A_1`.
pub fn skyscraper_chain() -> (Vec<FormMatrix>, Vec<i64>) {
    let m = lin(&[vec![X1, NX2, X3]]);
    let n = lin(&[
        vec![X2, ZERO, NX3],
        vec![X1, NX3, ZERO],
        vec![ZERO, NX2, X1],
    ]);
    let s = lin(&[vec![X3], vec![X1], vec![X2]]);
    (vec![m, n, s], vec![-4, -3, -2, -1])
}

/// The torsion complex `F_1 = [O(-3)^2 -> O(-2)^3 -> O(-1)]`, dimension
/// vector `[0, 2, 3, 1]` in `A_1` (plane `x1 = 0`, point `x1 = x2 = x3 = 0`).
pub fn f1_chain() -> (Vec<FormMatrix>, Vec<i64>) {
    let m = lin(&[vec![X1, ZERO, X2], vec![ZERO, X1, X3]]);
    let n = lin(&[vec![X2], vec![X3], vec![NX1]]);
    (vec![m, n], vec![-3, -2, -1])
}

/// Presentation of the structure sheaf of the quadric `x0 x3 - x1 x2 = 0`,
/// dimension vector `[1, 4, 7, 4]` in `A_1`.
pub fn o_quadric_chain() -> (Vec<FormMatrix>, Vec<i64>) {
    let m = lin(&[vec![NX3, X2, NX1, X0]]);
    let n = lin(&[
        vec![X2, NX1, X0, ZERO, ZERO, ZERO, ZERO],
        vec![X3, ZERO, ZERO, NX1, X0, ZERO, ZERO],
        vec![ZERO, X3, ZERO, NX2, ZERO, X0, ZERO],
        vec![ZERO, ZERO, X3, ZERO, NX2, X1, ZERO],
    ]);
    let s = lin(&[
        vec![NX1, X0, ZERO, ZERO],
        vec![NX2, ZERO, X0, ZERO],
        vec![ZERO, NX2, X1, ZERO],
        vec![NX3, ZERO, ZERO, X0],
        vec![ZERO, NX3, ZERO, X1],
        vec![ZERO, ZERO, NX3, X2],
        vec![X3, NX2, ZERO, ZERO],
    ]);
    (vec![m, n, s], vec![-4, -3, -2, -1])
}

/// Presentation chain of the twisted ideal sheaf of a point in a plane
/// (`x0 = 0` the plane, `x0 = x1 = x2 = 0` the point), dimension vector
/// `[2, 8, 11, 5]` in `A_1`. Coordinates `(x, y, z, w) = (x0, x1, x2, x3)`.
pub fn appendix_a1_chain() -> (Vec<FormMatrix>, Vec<i64>) {
    let m = lin(&[
        vec![NX3, ZERO, X2, NX1, ZERO, X0, ZERO, ZERO],
        vec![ZERO, NX3, ZERO, X2, X2, ZERO, NX1, X0],
    ]);
    let n = lin(&[
        vec![X2, NX1, X0, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO],
        vec![ZERO, X2, ZERO, NX1, X0, ZERO, ZERO, ZERO, ZERO, ZERO, ZERO],
        vec![X3, ZERO, ZERO, ZERO, ZERO, NX1, X0, ZERO, ZERO, ZERO, ZERO],
        vec![ZERO, X3, ZERO, ZERO, ZERO, NX2, ZERO, ZERO, X0, ZERO, ZERO],
        vec![ZERO, ZERO, ZERO, ZERO, ZERO, X2, ZERO, NX1, ZERO, X0, ZERO],
        vec![ZERO, ZERO, X3, ZERO, ZERO, ZERO, NX2, ZERO, X1, ZERO, ZERO],
        vec![ZERO, ZERO, ZERO, X3, ZERO, ZERO, ZERO, NX2, ZERO, ZERO, X0],
        vec![ZERO, ZERO, ZERO, ZERO, X3, ZERO, ZERO, ZERO, NX2, NX2, X1],
    ]);
    let s = lin(&[
        vec![X0, ZERO, ZERO, ZERO, ZERO],
        vec![ZERO, X0, ZERO, ZERO, ZERO],
        vec![NX2, X1, ZERO, ZERO, ZERO],
        vec![ZERO, ZERO, X0, ZERO, ZERO],
        vec![ZERO, NX2, X1, ZERO, ZERO],
        vec![ZERO, ZERO, ZERO, X0, ZERO],
        vec![NX3, ZERO, ZERO, X1, ZERO],
        vec![ZERO, ZERO, ZERO, ZERO, X0],
        vec![ZERO, NX3, ZERO, X2, ZERO],
        vec![ZERO, ZERO, ZERO, NX2, X1],
        vec![ZERO, ZERO, NX3, ZERO, X2],
    ]);
    (vec![m, n, s], vec![-4, -3, -2, -1])
}

/// Quadratic augmentation `O(-1)^5 -> I_{P/Lambda}(1)`: the target sheaf is
/// supported on the plane `x0 = 0`, so the composition with the chain
/// vanishes only modulo `x0`.
pub fn appendix_a1_augmentation() -> FormMatrix {
    let y = MultiPoly::var(1);
    let z = MultiPoly::var(2);
    let w = MultiPoly::var(3);
    let entries = vec![&y * &y, &y * &z, &z * &z, &y * &w, &z * &w];
    FormMatrix::new(5, 1, 2, entries).expect("quadrics")
}

/// Dimension vectors of all subcomplexes of the `[2, 8, 11, 5]` presentation,
/// parametrized families expanded.
pub fn appendix_a1_subvectors() -> Vec<DimVector> {
    let mut rows: Vec<[u32; 4]> = vec![
        [0, 6, 10, 5],
        [0, 7, 11, 5],
        [0, 8, 11, 5],
        [1, 5, 8, 4],
        [1, 5, 8, 5],
        [1, 6, 10, 5],
        [1, 6, 11, 5],
        [1, 7, 11, 5],
        [1, 8, 11, 5],
        [0, 4, 8, 4],
        [0, 4, 8, 5],
        [0, 5, 8, 4],
    ];
    for n in 1..=5 {
        rows.push([0, 0, 0, n]);
    }
    for n in 9..=11 {
        rows.push([0, 1, n, 5]);
    }
    for n in 2..=5 {
        rows.push([0, 0, 2, n]);
    }
    for n in 6..=8 {
        for m in 4..=5 {
            rows.push([0, 2, n, m]);
        }
    }
    for n in 2..=5 {
        rows.push([0, 0, 3, n]);
    }
    for n in 9..=11 {
        rows.push([0, 2, n, 5]);
    }
    for n in 3..=5 {
        rows.push([0, 0, 4, n]);
    }
    for n in 7..=8 {
        for m in 4..=5 {
            rows.push([0, 3, n, m]);
        }
    }
    for n in 3..=5 {
        rows.push([0, 0, 5, n]);
    }
    for n in 9..=11 {
        rows.push([0, 3, n, 5]);
    }
    for n in 6..=8 {
        for m in 4..=5 {
            rows.push([0, 0, n, m]);
        }
    }
    for n in 9..=11 {
        rows.push([0, 4, n, 5]);
    }
    for n in 9..=11 {
        rows.push([0, 0, n, 5]);
    }
    for n in 8..=11 {
        rows.push([0, 5, n, 5]);
    }
    for n in 2..=5 {
        rows.push([0, 1, 3, n]);
    }
    for n in 6..=8 {
        for m in 4..=5 {
            rows.push([1, 4, n, m]);
        }
    }
    for n in 3..=5 {
        rows.push([0, 1, 4, n]);
    }
    for n in 9..=11 {
        rows.push([1, 5, n, 5]);
    }
    for n in 3..=5 {
        rows.push([0, 1, 5, n]);
    }
    for n in 3..=5 {
        rows.push([0, 2, 5, n]);
    }
    for n in 6..=8 {
        for m in 4..=5 {
            rows.push([0, 1, n, m]);
        }
    }
    rows.into_iter().map(|r| DimVector::new(1, r)).collect()
}

/// Stability ranges of the quotient complexes of the structure sheaf in
/// `A_1`: `(entries, breakpoint)` with `None` marking "stable on all of
/// (0, 1]".
pub fn table1_breakpoint_rows() -> Vec<([u32; 4], Option<f64>)> {
    vec![
        ([1, 4, 6, 4], None),
        ([1, 4, 6, 3], None),
        ([1, 4, 6, 2], Some(0.5)),
        ([1, 4, 6, 1], Some(0.541)),
        ([1, 4, 5, 2], None),
        ([1, 4, 5, 1], Some(0.528)),
        ([1, 4, 4, 1], Some(0.586)),
        ([1, 4, 3, 1], Some(0.423)),
        ([1, 3, 3, 1], None),
    ]
}

/// Index of a wedge basis vector inside the lexicographic-by-mask subset
/// order used by the Koszul chain slots.
fn wedge_index(k: usize, subset: &[usize]) -> usize {
    let target: u32 = subset.iter().map(|&i| 1u32 << i).sum();
    let mut idx = 0;
    for mask in 0u32..16 {
        if mask.count_ones() as usize != k {
            continue;
        }
        if mask == target {
            return idx;
        }
        idx += 1;
    }
    panic!("subset not found");
}

/// The quotient-of-Koszul row complexes of the stability table, as
/// coordinate models: `(entries, model)`. Every row is the structure-sheaf
/// Koszul chain modulo a coordinate subrepresentation in the (generic)
/// coordinate position of the catalogued presentations.
pub fn table1_models() -> Vec<([u32; 4], crate::subcomplex::CoordinateComplex)> {
    use crate::subcomplex::CoordinateComplex;
    let (maps, _) = koszul_structure_chain();
    let koszul = CoordinateComplex::from_chain(&maps);
    let e = |i: usize| 1u64 << i;
    let w = |a: usize, b: usize| 1u64 << wedge_index(2, &[a, b]);
    let v3 = |a: usize, b: usize, c: usize| 1u64 << wedge_index(3, &[a, b, c]);
    // kill masks per slot [a3, a2, a1, a0]
    let rows: Vec<([u32; 4], [u64; 4])> = vec![
        ([1, 4, 6, 4], [0, 0, 0, 0]),
        ([1, 4, 6, 3], [0, 0, 0, e(3)]),
        ([1, 4, 6, 2], [0, 0, 0, e(2) | e(3)]),
        ([1, 4, 6, 1], [0, 0, 0, e(1) | e(2) | e(3)]),
        ([1, 4, 5, 2], [0, 0, w(2, 3), e(2) | e(3)]),
        ([1, 4, 5, 1], [0, 0, w(2, 3), e(1) | e(2) | e(3)]),
        ([1, 4, 4, 1], [0, 0, w(1, 3) | w(2, 3), e(1) | e(2) | e(3)]),
        (
            [1, 4, 3, 1],
            [0, 0, w(1, 2) | w(1, 3) | w(2, 3), e(1) | e(2) | e(3)],
        ),
        (
            [1, 3, 3, 1],
            [0, v3(1, 2, 3), w(1, 2) | w(1, 3) | w(2, 3), e(1) | e(2) | e(3)],
        ),
    ];
    rows.into_iter()
        .map(|(entries, kill)| {
            let model = koszul.quotient(kill);
            assert_eq!(model.entries(), entries);
            (entries, model)
        })
        .collect()
}

/// Candidate destabilizers of `[1, 6, 9, 4]` surviving the containment,
/// window, and non-destabilization filters, per contained complex.
pub fn table2_expected() -> Vec<([u32; 4], Vec<[u32; 4]>)> {
    vec![
        (
            [1, 4, 6, 4],
            vec![[1, 5, 6, 4], [1, 6, 6, 4], [1, 6, 7, 4], [1, 6, 8, 4]],
        ),
        ([1, 4, 6, 3], vec![[1, 5, 6, 3]]),
    ]
}
