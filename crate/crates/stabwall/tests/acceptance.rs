//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `-- --nocapture` to see them). Tolerances are pinned in code.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabwall::charge::{
    bogomolov, charge, heart_generator_charges, in_quiver_region, support_margin, StabParams,
};
use stabwall::fixtures;
use stabwall::kclass::{lattice_class, KClass};
use stabwall::kronecker::{
    classify_stratum, expected_dim, flag_dimension, resolution_class, Stratum,
};
use stabwall::multipoly::MultiPoly;
use stabwall::poly::RatPoly;
use stabwall::quiver::{
    appendix_scan, dimvec_of, scan_walls, slope_equality_poly, stable_range_with, DimVector,
    ScanFilters,
};
use stabwall::rational::{rat, rat_int};
use stabwall::roots::{default_tol, real_roots, sign_at, Window};
use stabwall::wall::{intersect_walls, two_class_wall, wall_at_u0, wall_between, WallKind};
use std::cmp::Ordering;

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {}: {} - {}",
        criterion,
        if ok { "PASS" } else { "FAIL" },
        detail
    );
    assert!(ok, "criterion {} failed: {}", criterion, detail);
}

fn cubic() -> KClass {
    KClass::from_i64(0, 0, 3, -5)
}

fn quartic() -> KClass {
    KClass::from_i64(0, 0, 4, -7)
}

fn structure_sheaf() -> KClass {
    KClass::from_i64(1, 0, 0, 0)
}

fn plane() -> KClass {
    KClass::new(rat_int(0), rat_int(1), rat(-1, 2), rat(1, 6))
}

fn quadric() -> KClass {
    KClass::new(rat_int(0), rat_int(2), rat_int(-2), rat(4, 3))
}

fn unit_window() -> Window {
    Window::half_open(rat_int(0), rat_int(1))
}

#[test]
fn criterion_1_cubic_wall_roots() {
    // O-wall root in (0,1]: within 1e-2 of 0.35, certified as the root of
    // 6t^3 + 21t^2 + 12t - 7 to 1e-9
    let roots = wall_at_u0(&cubic(), &structure_sheaf(), &unit_window()).unwrap();
    let mut ok = roots.len() == 1;
    let w1_poly = RatPoly::from_i64(&[-7, 12, 21, 6]);
    if ok {
        let r = &roots[0];
        ok &= (r.to_f64() - 0.35).abs() < 1e-2;
        ok &= r.poly().proportional_to(&w1_poly.square_free_part());
        ok &= r.width() <= rat(1, 1_000_000_000);
    }
    // O_Lambda-wall root exactly (-1 + sqrt(10))/3: unique positive root of
    // 3t^2 + 2t - 3
    let roots = wall_at_u0(&cubic(), &plane(), &unit_window()).unwrap();
    ok &= roots.len() == 1;
    if let Some(r) = roots.first() {
        let w2_poly = RatPoly::from_i64(&[-3, 2, 3]);
        ok &= r.poly().proportional_to(&w2_poly.square_free_part());
        ok &= r.cmp_rational(&rat_int(0)) == Ordering::Greater;
        ok &= (r.to_f64() - (-1.0 + 10f64.sqrt()) / 3.0).abs() < 1e-9;
    }
    report("1", ok, "cubic wall roots at 0.3487 (certified cubic) and (-1+sqrt(10))/3");
}

#[test]
fn criterion_2_figure6_endpoints() {
    let w1 = wall_between(&cubic(), &structure_sheaf()).unwrap();
    let bounded: Vec<_> = w1.components.iter().filter(|c| c.is_bounded()).collect();
    let mut ok = bounded.len() == 1;
    if ok {
        ok &= (bounded[0].lo.to_f64() + 1.324).abs() < 2e-3;
        ok &= (bounded[0].hi.to_f64() - 0.349).abs() < 2e-3;
    }
    let w2 = wall_between(&cubic(), &plane()).unwrap();
    ok &= w2.kind == WallKind::Type2;
    ok &= w2.center_t == rat(-1, 3);
    report("2", ok, "O-wall endpoints -1.324/0.349 and type-2 center exactly -1/3");
}

#[test]
fn criterion_3_quartic_composite_wall() {
    let v = quartic();
    let w1 = wall_between(&v, &structure_sheaf()).unwrap();
    let w2 = wall_between(&v, &quadric()).unwrap();

    // the O_Q wall is exactly the circle (t + 1/4)^2 + u^2 = 9/16
    let mut ok = w2.kind == WallKind::Type2;
    ok &= w2.center_t == rat(-1, 4);
    ok &= w2.semicircle_radius_sq() == Some(rat(9, 16));

    // right endpoint exactly 1/2
    let roots = wall_at_u0(&v, &quadric(), &unit_window()).unwrap();
    ok &= roots.len() == 1 && roots[0].as_rational() == Some(&rat(1, 2));

    // O-wall endpoint within 2e-3 of 0.483
    let roots = wall_at_u0(&v, &structure_sheaf(), &unit_window()).unwrap();
    ok &= roots.len() == 1 && (roots[0].to_f64() - 0.483).abs() < 2e-3;

    // intersection S within 2e-3 of (0.189, 0.608)
    let points = intersect_walls(&w1, &w2).unwrap();
    let s = points
        .iter()
        .find(|p| !p.at_axis && (p.t.to_f64() - 0.189).abs() < 2e-3);
    ok &= s.is_some();
    let s = s.expect("intersection point S");
    ok &= (s.u_approx - 0.608).abs() < 2e-3;

    // W3 and W4 pass through S: the cross-multiplied residuals vanish at the
    // certified root
    let (n3, d3) = two_class_wall(&structure_sheaf(), &quadric());
    let ideal_c = KClass::from_i64(1, 0, -4, 7);
    let (n4, d4) = two_class_wall(&KClass::line_bundle(-2), &ideal_c);
    let res3 = &(&n3 * &w1.den) - &(&w1.num * &d3);
    let res4 = &(&n4 * &w1.den) - &(&w1.num * &d4);
    ok &= sign_at(&res3, &s.t) == Ordering::Equal;
    ok &= sign_at(&res4, &s.t) == Ordering::Equal;
    report("3", ok, "O_Q circle (t+1/4)^2+u^2=9/16, T=1/2, O endpoint 0.483, S=(0.189,0.608), W3/W4 through S");
}

#[test]
fn criterion_4_dimension_vector_round_trips() {
    let cases: Vec<([u32; 4], KClass)> = vec![
        ([1, 4, 6, 4], KClass::from_i64(1, 0, 0, 0)),
        ([1, 4, 6, 3], plane()),
        ([1, 6, 9, 4], cubic()),
        ([0, 2, 3, 0], KClass::from_i64(-1, 0, 3, -5)),
        ([0, 2, 3, 1], KClass::new(rat_int(0), rat_int(-1), rat(7, 2), rat(-31, 6))),
        ([2, 8, 11, 5], KClass::new(rat_int(0), rat_int(1), rat(1, 2), rat(-5, 6))),
    ];
    let mut ok = true;
    for (entries, class) in &cases {
        let d = DimVector::new(1, *entries);
        ok &= d.class() == *class;
        ok &= dimvec_of(class, 1).map(|d| d.entries) == Ok(*entries);
    }
    report("4", ok, "six dimension-vector round trips exact in A_1");
}

#[test]
fn criterion_5_table1_breakpoints() {
    let window = Window::open(rat_int(0), rat_int(1));
    let models = fixtures::table1_models();
    let expected = fixtures::table1_breakpoint_rows();
    let mut ok = true;
    for (entries, printed) in &expected {
        let model = &models.iter().find(|(e, _)| e == entries).unwrap().1;
        let realizable = model.subrep_dimension_vectors();
        let parent = DimVector::new(1, *entries);
        let filters = ScanFilters::structural(realizable.clone());
        let ranges = stable_range_with(&parent, &window, &filters).unwrap();
        let breakpoints: Vec<_> = ranges
            .iter()
            .filter_map(|r| r.hi.as_breakpoint())
            .collect();
        match printed {
            None => {
                // no structural candidate root in (0,1) ...
                ok &= breakpoints.is_empty();
                // ... cross-checked against a brute-force grid oracle over
                // the realizable subvectors
                let parent_class = parent.class();
                for k in 1..100 {
                    let t = rat(k, 100);
                    let params = StabParams::euler(t.clone());
                    let zp = charge(&params, &parent_class);
                    let lp = stabwall::charge::slope_of_point(&zp).unwrap();
                    for sub_entries in &realizable {
                        if *sub_entries == [0, 0, 0, 0] || sub_entries == entries {
                            continue;
                        }
                        let sub = DimVector::new(1, *sub_entries);
                        let zs = charge(&params, &sub.class());
                        if let Ok(ls) = stabwall::charge::slope_of_point(&zs) {
                            if ls > lp {
                                ok = false;
                                println!(
                                    "  oracle violation: {:?} sub {:?} dominates at t={}",
                                    entries, sub_entries, t
                                );
                            }
                        }
                    }
                }
            }
            Some(value) if *entries == [1, 4, 6, 2] => {
                // exactly 1/2
                ok &= breakpoints
                    .first()
                    .and_then(|(r, _)| r.as_rational())
                    == Some(&rat(1, 2));
                ok &= (value - 0.5).abs() < 1e-12;
            }
            Some(value) if *entries == [1, 4, 4, 1] => {
                // the printed 0.586 is a certified breakpoint of this row
                // (its first structural wall sits at exactly 1/2; see the
                // repository notes)
                ok &= breakpoints
                    .iter()
                    .any(|(r, _)| (r.to_f64() - value).abs() < 2e-3);
            }
            Some(value) => {
                ok &= breakpoints
                    .first()
                    .map(|(r, _)| (r.to_f64() - value).abs() < 2e-3)
                    .unwrap_or(false);
            }
        }
    }
    report("5", ok, "table-1 breakpoints: 1/2 exact, 0.541/0.528/0.423 first walls, 0.586 certified, any-t rows clean");
}

#[test]
fn criterion_6_kronecker_nine() {
    let nine = fixtures::canonical_kronecker_matrices();
    let mut ok = nine.len() == 9;
    for (i, m) in nine.iter().enumerate() {
        match classify_stratum(m).unwrap() {
            Stratum::Curve => ok &= i < 8,
            Stratum::Torsion { plane } => {
                ok &= i == 8;
                ok &= plane == MultiPoly::var(1);
            }
            Stratum::Unstable(_) => ok = false,
        }
    }
    ok &= expected_dim(4, (2, 3)) == 12;
    ok &= flag_dimension(&[1, 3], 4) == 5;
    report("6", ok, "nine canonical matrices stable, (1)-(8) curve, (9) torsion at x1=0, dim 12");
}

#[test]
fn criterion_7_resolutions_and_appendix_scan() {
    let mut ok = true;
    // consecutive products vanish symbolically
    for (maps, twists) in [
        fixtures::koszul_structure_chain(),
        fixtures::o_quadric_chain(),
        fixtures::appendix_a1_chain(),
    ] {
        ok &= resolution_class(&maps, &twists).is_ok();
    }
    // Koszul augmentation composes to zero exactly
    let (koszul, _) = fixtures::koszul_structure_chain();
    ok &= koszul
        .last()
        .unwrap()
        .compose(&fixtures::koszul_augmentation())
        .unwrap()
        .is_zero();
    // the A.1 augmentation lands in a sheaf on the plane x0 = 0: the
    // composition vanishes exactly modulo x0
    let (a1, _) = fixtures::appendix_a1_chain();
    let product = a1
        .last()
        .unwrap()
        .compose(&fixtures::appendix_a1_augmentation())
        .unwrap();
    ok &= !product.is_zero();
    ok &= product.reduce_mod_linear(&MultiPoly::var(0)).is_zero();

    // slope scan at t = (-1 + sqrt(10))/3: every listed subvector strictly
    // below the parent slope
    let t_roots = real_roots(
        &RatPoly::from_i64(&[-3, 2, 3]),
        &unit_window(),
        &default_tol(),
    )
    .unwrap();
    let parent = DimVector::new(1, [2, 8, 11, 5]);
    let scan = appendix_scan(&parent, &fixtures::appendix_a1_subvectors(), &t_roots[0]).unwrap();
    ok &= scan.all_strictly_smaller();
    ok &= scan.checked > 80;
    report("7", ok, "chain compositions vanish; appendix subvector slopes all strictly below at the wall");
}

#[test]
fn criterion_8_duality_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let mut ok = true;
    for _ in 0..100 {
        let base = rng.gen_range(-4..2);
        let coeffs = [
            rng.gen_range(-6..=6),
            rng.gen_range(-6..=6),
            rng.gen_range(-6..=6),
            rng.gen_range(-6..=6),
        ];
        let (v, _) = lattice_class(base, coeffs);
        // P_{-D(v)}(s) = P_v(-s) coefficient-wise
        ok &= (-&v.dual_class()).hilbert_poly() == v.hilbert_poly().reflect();
    }
    // reverse involution
    let d = DimVector::new(1, [1, 4, 6, 4]);
    ok &= d.reverse().reverse() == d;
    ok &= d.reverse().class() == KClass::new(rat_int(-1), rat_int(4), rat_int(-8), rat(32, 3));
    ok &= cubic().dual_class().twist(&rat_int(1)) == KClass::from_i64(0, 0, 3, -4);
    report("8", ok, "functional equation on 100 random classes; reversal and dual-class identities");
}

#[test]
fn criterion_9_euler_pairings_vs_ext_diagrams() {
    // alternating sums of the printed Ext dimensions (hom, ext1, ext2, ext3)
    let o = structure_sheaf();
    let e = cubic();
    let ic1 = KClass::from_i64(-1, 0, 3, -5); // I_C[1]; F[1] has the same class
    let o_plane = plane();
    let f1 = KClass::new(rat_int(0), rat_int(-1), rat(7, 2), rat(-31, 6));
    let cases: Vec<(&KClass, &KClass, [i64; 4])> = vec![
        (&o, &o, [1, 0, 0, 0]),
        (&ic1, &o, [0, 1, 11, 0]),
        (&ic1, &ic1, [1, 12, 0, 0]),
        (&ic1, &e, [0, 12, 11, 0]),
        // F[1] against O prints (0, 4, 14, 0): same alternating sum 10
        (&ic1, &o, [0, 4, 14, 0]),
        (&o_plane, &o_plane, [1, 3, 0, 0]),
        (&f1, &o_plane, [0, 9, 14, 0]),
        (&o_plane, &f1, [0, 1, 0, 0]),
    ];
    let mut ok = cases.len() >= 6;
    for (a, b, dims) in &cases {
        let alternating = dims[0] - dims[1] + dims[2] - dims[3];
        ok &= a.euler_pairing(b) == rat_int(alternating);
    }
    report("9", ok, "Euler pairing matches the printed Ext alternating sums on 8 pairs");
}

#[test]
fn criterion_10_charge_heart_suite() {
    let mut ok = true;
    // support margin positive on the 0.01-grid over (0, 1]
    for k in 1..=100 {
        let t = rat(k, 100);
        match support_margin(&t) {
            Ok(m) => ok &= m.margin_sq > rat_int(0),
            Err(_) => ok = false,
        }
    }
    // generator charges at t = 0
    let charges = heart_generator_charges(&rat_int(0));
    ok &= charges[0].0.re == rat(11, 6) && charges[0].0.im == rat_int(1);
    for (z, valid) in &charges[1..] {
        ok &= z.im == rat_int(0) && z.re < rat_int(0) && *valid;
    }
    // doubletilt specialization identity, symbolically: linear in the class
    // and degree <= 3 in t, so a basis check at five points is a proof
    let basis = [
        KClass::from_i64(1, 0, 0, 0),
        KClass::from_i64(0, 1, 0, 0),
        KClass::from_i64(0, 0, 1, 0),
        KClass::from_i64(0, 0, 0, 1),
    ];
    for t in [rat_int(0), rat_int(1), rat_int(-1), rat(1, 2), rat(-7, 3)] {
        let params =
            StabParams::double_tilt(rat(1, 3), -&t - rat_int(2), rat(1, 3)).unwrap();
        for v in &basis {
            let z = charge(&params, v);
            let chi = v.hilbert_poly();
            ok &= z.re == -chi.eval(&t) && z.im == chi.derivative(1).eval(&t);
        }
    }
    // quiver region pinches to u = 0 at integer t, peaks at the cell midpoint
    for t in [-2i64, -1, 0, 1, 2] {
        ok &= in_quiver_region(&rat_int(t), &rat_int(0));
        ok &= !in_quiver_region(&rat_int(t), &rat(1, 1000));
    }
    ok &= in_quiver_region(&rat(-1, 2), &rat(79, 100));
    ok &= !in_quiver_region(&rat(-1, 2), &rat(4, 5));
    ok &= !in_quiver_region(&(rat(-1, 2) + rat(1, 1000)), &rat(79, 100));
    ok &= !in_quiver_region(&(rat(-1, 2) - rat(1, 1000)), &rat(79, 100));
    report("10", ok, "support margin on the grid, integer-t generator charges, doubletilt identity, region pinch/peak");
}

#[test]
fn criterion_11_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0011);
    let mut ok = true;

    // semicircle constancy: u^2(t) + (t - center)^2 constant for type-2 walls
    let mut type2 = 0;
    while type2 < 100 {
        let m = rng.gen_range(1..=6);
        let ch3 = rng.gen_range(-12..=6);
        let v = KClass::from_i64(0, 0, m, ch3);
        let c1 = rng.gen_range(-4i64..=4);
        if c1 == 0 {
            continue;
        }
        let (a, _) = lattice_class(rng.gen_range(-3..0), [0, 0, 0, 0]);
        let mut a = a;
        // rank-zero actor: difference of line bundles plus point classes
        let k = rng.gen_range(-3..=1);
        for _ in 0..c1.unsigned_abs() {
            if c1 > 0 {
                a = &a + &(&KClass::line_bundle(k) - &KClass::line_bundle(k - 1));
            } else {
                a = &a - &(&KClass::line_bundle(k) - &KClass::line_bundle(k - 1));
            }
        }
        a = &a + &KClass::from_i64(0, 0, 0, rng.gen_range(-3..=3));
        if a.ch0 != rat_int(0) || a.ch1 == rat_int(0) {
            continue;
        }
        let w = wall_between(&v, &a).unwrap();
        ok &= w.kind == WallKind::Type2;
        ok &= w.semicircle_radius_sq().is_some();
        type2 += 1;
    }

    // wall sub/quotient symmetry: same numerical wall polynomial up to sign
    for _ in 0..100 {
        let parent = DimVector::new(
            1,
            [
                rng.gen_range(0..=2),
                rng.gen_range(0..=5),
                rng.gen_range(0..=6),
                rng.gen_range(0..=4),
            ],
        );
        if parent.is_zero() {
            continue;
        }
        let sub = DimVector::new(
            1,
            [
                rng.gen_range(0..=parent.entries[0]),
                rng.gen_range(0..=parent.entries[1]),
                rng.gen_range(0..=parent.entries[2]),
                rng.gen_range(0..=parent.entries[3]),
            ],
        );
        if sub.is_zero() || sub.entries == parent.entries {
            continue;
        }
        let quot = parent.minus(&sub).unwrap();
        let n_sub = slope_equality_poly(&sub.class(), &parent.class());
        let n_quot = slope_equality_poly(&quot.class(), &parent.class());
        ok &= n_sub.proportional_to(&n_quot) || (n_sub.is_zero() && n_quot.is_zero());
    }

    // scan scale-invariance: scaling the parent charge by a positive rational
    // preserves the slope-equality locus
    for _ in 0..100 {
        let (sub, _) = lattice_class(-2, [
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
        ]);
        let (parent, _) = lattice_class(-1, [
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
        ]);
        let scale = rat(rng.gen_range(1..30), rng.gen_range(1..30));
        let n1 = slope_equality_poly(&sub, &parent);
        let n2 = slope_equality_poly(&sub, &parent.scale(&scale));
        ok &= n2.proportional_to(&n1) || (n1.is_zero() && n2.is_zero());
    }

    // Bogomolov nullity on line bundles
    for _ in 0..100 {
        let k = rng.gen_range(-5..=5);
        let beta = rat(rng.gen_range(-20..=20), rng.gen_range(1..=9));
        ok &= bogomolov(&KClass::line_bundle(k), &beta).is_zero();
    }

    // Hilbert integrality for random valid classes
    for _ in 0..100 {
        let (v, _) = lattice_class(rng.gen_range(-4..1), [
            rng.gen_range(-8..=8),
            rng.gen_range(-8..=8),
            rng.gen_range(-8..=8),
            rng.gen_range(-8..=8),
        ]);
        ok &= v.satisfies_invariants();
        let p = v.hilbert_poly();
        for n in -10..=10 {
            ok &= p.eval(&rat_int(n)).is_integer();
        }
    }
    report("11", ok, "semicircle constancy, sub/quotient symmetry, scale invariance, Bogomolov nullity, integrality (seeded, 100 each)");
}

#[test]
fn table2_candidates_match_the_case_analysis() {
    // not a numbered criterion: the containment-filtered scan reproduces the
    // candidate list of the by-hand analysis ([1574] appears there too,
    // though the printed table omits it)
    let parent = DimVector::new(1, [1, 6, 9, 4]);
    let window = unit_window();
    let mut filters = ScanFilters::with_heart_positivity();
    filters.contains = Some(DimVector::new(1, [1, 4, 6, 4]));
    let hits = scan_walls(&parent, &window, &filters).unwrap();
    let mut subs: Vec<[u32; 4]> = hits.iter().map(|h| h.sub.entries).collect();
    subs.sort();
    subs.dedup();
    assert_eq!(
        subs,
        vec![[1, 5, 6, 4], [1, 5, 7, 4], [1, 6, 6, 4], [1, 6, 7, 4], [1, 6, 8, 4]]
    );
    for (t_entries, expected) in fixtures::table2_expected() {
        let mut filters = ScanFilters::with_heart_positivity();
        filters.contains = Some(DimVector::new(1, t_entries));
        let hits = scan_walls(&parent, &window, &filters).unwrap();
        for want in expected {
            assert!(
                hits.iter().any(|h| h.sub.entries == want),
                "missing candidate {:?} over {:?}",
                want,
                t_entries
            );
        }
    }
}

#[test]
fn wall_roots_stay_inside_the_search_region() {
    // every u = 0 wall root for the cubic class with the candidate actors
    // lies inside the search region
    let v = cubic();
    let (lo, hi) = stabwall::wall::wall_search_region(&v).unwrap();
    let window = Window::closed(rat_int(-20), rat_int(20));
    for entries in [[1u32, 5, 6, 4], [1, 6, 6, 4], [1, 6, 7, 4], [1, 6, 8, 4], [1, 5, 6, 3]] {
        let actor = DimVector::new(1, entries).class();
        let roots = wall_at_u0(&v, &actor, &window).unwrap();
        for r in roots {
            let x = r.to_f64();
            assert!(x > lo.to_f64() && x < hi.to_f64(), "root {} escapes region", x);
        }
    }
    assert!((hi.to_f64() - (1.0 / 3.0 + 3.0 + 24f64.sqrt())).abs() < 1e-9);
}

#[test]
fn suite_is_desk_scale() {
    // the acceptance suite plus library tests complete in well under a
    // minute; this test just pins the clock on the heaviest single scan
    let start = std::time::Instant::now();
    let parent = DimVector::new(1, [1, 6, 9, 4]);
    let hits = scan_walls(&parent, &unit_window(), &ScanFilters::with_heart_positivity()).unwrap();
    assert!(!hits.is_empty());
    assert!(start.elapsed().as_secs() < 30);
}
