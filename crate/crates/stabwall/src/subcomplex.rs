//! Coordinate subcomplex enumeration for explicit complexes of line bundles.
//!
//! A complex `[O(-n-3)^{a3} -> ... -> O(-n)^{a0}]` is a representation of the
//! heart's quiver: four coordinate spaces with arrows given by the variable
//! slices of the differentials. A subobject is a tuple of subspaces closed
//! under every slice. This module enumerates the subrepresentations spanned
//! by coordinate vectors; for complexes whose data sits in generic coordinate
//! position (all the catalogued presentations here do), the dimension vectors
//! obtained this way are realized by genuine subcomplexes, so every wall they
//! define is structural rather than merely numerical.

use crate::kronecker::FormMatrix;
use num_traits::Zero;
use std::collections::BTreeSet;

/// An explicit complex in coordinate form: slot sizes `[a3, a2, a1, a0]` and,
/// per differential and per variable, the support mask of each basis vector's
/// image.
#[derive(Debug, Clone)]
pub struct CoordinateComplex {
    sizes: [usize; 4],
    /// `support[i][k][b]`: bitmask over slot `i+1` hit by basis `b` of slot
    /// `i` under the `x_k` slice of the `i`-th differential.
    support: Vec<Vec<Vec<u64>>>,
}

impl CoordinateComplex {
    /// Builds from a chain of (at most three) linear form matrices running
    /// from the `a3` slot toward the `a0` slot. Shorter chains embed with
    /// leading zero slots.
    pub fn from_chain(maps: &[FormMatrix]) -> Self {
        assert!(!maps.is_empty() && maps.len() <= 3, "chain length");
        let offset = 3 - maps.len();
        let mut sizes = [0usize; 4];
        for (i, m) in maps.iter().enumerate() {
            sizes[offset + i] = m.rows;
        }
        sizes[3] = maps.last().unwrap().cols;
        let mut support = vec![Vec::new(); offset];
        for m in maps {
            assert!(m.rows <= 64 && m.cols <= 64, "coordinate model limit");
            let mut per_k = vec![vec![0u64; m.rows]; 4];
            for r in 0..m.rows {
                for c in 0..m.cols {
                    for (mono, coef) in m.entry(r, c).terms() {
                        if coef.is_zero() {
                            continue;
                        }
                        let k = mono.iter().position(|&e| e > 0).expect("linear form");
                        per_k[k][r] |= 1 << c;
                    }
                }
            }
            support.push(per_k);
        }
        // pad the leading empty differentials
        for item in support.iter_mut().take(offset) {
            *item = vec![vec![]; 4];
        }
        CoordinateComplex { sizes, support }
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn entries(&self) -> [u32; 4] {
        [
            self.sizes[0] as u32,
            self.sizes[1] as u32,
            self.sizes[2] as u32,
            self.sizes[3] as u32,
        ]
    }

    /// True when the coordinate family given by per-slot bitmasks is closed
    /// under every arrow slice (a subrepresentation).
    pub fn is_closed(&self, masks: [u64; 4]) -> bool {
        for i in 0..3 {
            for b in 0..self.sizes[i] {
                if masks[i] & (1 << b) == 0 {
                    continue;
                }
                for k in 0..4 {
                    if self.support[i][k].get(b).copied().unwrap_or(0) & !masks[i + 1] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Quotient by a coordinate subrepresentation (the kill masks must be
    /// closed), reindexing the kept basis.
    pub fn quotient(&self, kill: [u64; 4]) -> CoordinateComplex {
        assert!(self.is_closed(kill), "kill set must be a subrepresentation");
        let mut keep_idx: Vec<Vec<usize>> = Vec::new();
        let mut sizes = [0usize; 4];
        for i in 0..4 {
            let kept: Vec<usize> = (0..self.sizes[i])
                .filter(|b| kill[i] & (1 << b) == 0)
                .collect();
            sizes[i] = kept.len();
            keep_idx.push(kept);
        }
        let mut support = Vec::new();
        for i in 0..3 {
            let mut per_k = vec![vec![0u64; sizes[i]]; 4];
            for k in 0..4 {
                for (new_b, &old_b) in keep_idx[i].iter().enumerate() {
                    let old = self.support[i][k].get(old_b).copied().unwrap_or(0);
                    let mut mask = 0u64;
                    for (new_c, &old_c) in keep_idx[i + 1].iter().enumerate() {
                        if old & (1 << old_c) != 0 {
                            mask |= 1 << new_c;
                        }
                    }
                    per_k[k][new_b] = mask;
                }
            }
            support.push(per_k);
        }
        CoordinateComplex { sizes, support }
    }

    /// Dimension vectors `[b3, b2, b1, b0]` of all coordinate
    /// subrepresentations (the trivial ones included).
    pub fn subrep_dimension_vectors(&self) -> BTreeSet<[u32; 4]> {
        let mut out = BTreeSet::new();
        // enumerate closed tuples slot by slot, pruning on the closure test
        let totals: Vec<u64> = self.sizes.iter().map(|&s| 1u64 << s).collect();
        for t3 in 0..totals[0] {
            for t2 in 0..totals[1] {
                if !self.slot_closed(0, t3, t2) {
                    continue;
                }
                for t1 in 0..totals[2] {
                    if !self.slot_closed(1, t2, t1) {
                        continue;
                    }
                    for t0 in 0..totals[3] {
                        if !self.slot_closed(2, t1, t0) {
                            continue;
                        }
                        out.insert([
                            t3.count_ones(),
                            t2.count_ones(),
                            t1.count_ones(),
                            t0.count_ones(),
                        ]);
                    }
                }
            }
        }
        out
    }

    fn slot_closed(&self, i: usize, from: u64, into: u64) -> bool {
        for b in 0..self.sizes[i] {
            if from & (1 << b) == 0 {
                continue;
            }
            for k in 0..4 {
                if self.support[i][k].get(b).copied().unwrap_or(0) & !into != 0 {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn koszul_subreps_force_closure() {
        let (maps, _) = fixtures::koszul_structure_chain();
        let k = CoordinateComplex::from_chain(&maps);
        assert_eq!(k.entries(), [1, 4, 6, 4]);
        let dims = k.subrep_dimension_vectors();
        // a single 3-form drags three 2-forms and three 1-forms along
        assert!(dims.contains(&[0, 1, 3, 3]));
        assert!(!dims.contains(&[0, 1, 0, 0]));
        assert!(!dims.contains(&[0, 1, 2, 3]));
        // a single 2-form closes with its two contractions
        assert!(dims.contains(&[0, 0, 1, 2]));
        assert!(!dims.contains(&[0, 0, 1, 1]));
        // the whole representation and zero
        assert!(dims.contains(&[1, 4, 6, 4]));
        assert!(dims.contains(&[0, 0, 0, 0]));
    }

    #[test]
    fn quotient_reindexes() {
        let (maps, _) = fixtures::koszul_structure_chain();
        let k = CoordinateComplex::from_chain(&maps);
        // kill two line bundles at the bottom (slot a0 basis e2, e3)
        let r = k.quotient([0, 0, 0, 0b1100]);
        assert_eq!(r.entries(), [1, 4, 6, 2]);
        let dims = r.subrep_dimension_vectors();
        // O(-2)[1] survives: the wedge of the two killed directions maps to 0
        assert!(dims.contains(&[0, 0, 1, 0]));
    }

    #[test]
    fn row_1441_contains_a_plane_shift_with_wall_at_one_half() {
        // the [1,4,4,1] quotient-of-Koszul contains the subcomplex
        // [O(-3) -> O(-2)] (a plane twist shift) whose slope crosses the
        // parent's at exactly t = 1/2, one wall before the O(-2)[1] wall
        // at 2 - sqrt(2)
        use crate::quiver::{slope_equality_poly, DimVector};
        use crate::rational::{rat, rat_int};
        let model = crate::fixtures::table1_models()
            .into_iter()
            .find(|(e, _)| *e == [1, 4, 4, 1])
            .unwrap()
            .1;
        let dims = model.subrep_dimension_vectors();
        assert!(dims.contains(&[0, 1, 1, 0]));
        let parent = DimVector::new(1, [1, 4, 4, 1]);
        let sub = DimVector::new(1, [0, 1, 1, 0]);
        let n = slope_equality_poly(&sub.class(), &parent.class());
        assert!(n.eval(&rat(1, 2)).is_zero());
        assert!(!n.eval(&rat_int(0)).is_zero());
    }

    #[test]
    fn shorter_chains_embed() {
        let (maps, _) = fixtures::f1_chain();
        let c = CoordinateComplex::from_chain(&maps);
        assert_eq!(c.entries(), [0, 2, 3, 1]);
        let dims = c.subrep_dimension_vectors();
        assert!(dims.contains(&[0, 2, 3, 1]));
    }
}
