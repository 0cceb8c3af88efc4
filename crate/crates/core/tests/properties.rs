use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use std::f64::consts::{E, PI};
use subordkit::admiss::{example_g, g_consistency, CaseId};
use subordkit::apps::{corollary_check, Corollary};
use subordkit::domains::{DomainId, Membership, TargetDomain};
use subordkit::fncat::{fd_residual, is_convex_polygon, AnalyticMap, DiskGrid};
use subordkit::janowski::{check_conditions, eval_poly, min_quad, spiral_coeffs, JanowskiQuad};
use subordkit::means::{arith_mean, geo_mean, h_operator, harm_mean, p_operator, MeanWeight, ThetaPhiPair};
use subordkit::subord::is_subordinate;
use subordkit::thresholds::{
    beta0_value, beta1_value, combined_threshold, my_bound, re_e0_exact, re_e1_exact, BoundaryPoint, Theorem, ThresholdParams,
};
use subordkit::verify::constructor_samples;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk_point(rmax: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, -PI..PI).prop_map(move |(u, t)| Complex64::from_polar(rmax * u.sqrt(), t))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

const CATALOG: [DomainId; 10] = [
    DomainId::HalfPlane { alpha: 0.0 },
    DomainId::HalfPlane { alpha: 0.3 },
    DomainId::Janowski { a: 0.5, b: -0.5 },
    DomainId::Exp,
    DomainId::Sqrt,
    DomainId::Sigmoid,
    DomainId::Crescent,
    DomainId::Sine,
    DomainId::Cardioid,
    DomainId::Power { gamma: 0.5 },
];

// ---- expressions

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fd_residual_small_for_every_constructor(i in 0usize..16, z in disk_point(0.9)) {
        let (name, map) = constructor_samples().swap_remove(i);
        let r = fd_residual(&map, z, 1e-5).unwrap();
        prop_assert!(r <= 1e-6, "{name} at {z}: {r}");
    }

    #[test]
    fn scaled_composition_chain_rule(i in 0usize..16, z in disk_point(0.9), m in 0.05..1.0f64, arg in -PI..PI) {
        let (_, f) = constructor_samples().swap_remove(i);
        let cc = Complex64::from_polar(m, arg);
        let g = AnalyticMap::compose(f.clone(), AnalyticMap::polynomial(vec![c(0.0, 0.0), cc]));
        let lhs = g.jet_at(z).unwrap().d1;
        let rhs = cc * f.jet_at(cc * z).unwrap().d1;
        prop_assert!(rel(lhs, rhs) <= 1e-12, "{lhs} vs {rhs}");
    }
}

#[test]
fn convex_flagged_boundaries_are_convex_polygons() {
    for id in CATALOG {
        let dom = TargetDomain::new(id).unwrap();
        let pts: Vec<Complex64> = dom.boundary_table(1024).unwrap().into_iter().map(|(_, w)| w).filter(|w| w.norm() < 1e6).collect();
        if dom.convex() && id.bounded() {
            assert!(is_convex_polygon(&pts, 1e-9), "{id}");
        }
    }
}

// ---- means

proptest! {
    /// The arithmetic mean puts weight t on y while the geometric and
    /// harmonic means put it on x, so the chain holds with A at 1 − t.
    #[test]
    fn mean_chain_on_positive_reals(t in 0.0..=1.0f64, x in 1e-3..1e3f64, y in 1e-3..1e3f64) {
        let w = MeanWeight::new(t).unwrap();
        let (x, y) = (c(x, 0.0), c(y, 0.0));
        let h = harm_mean(w, x, y).unwrap().value().re;
        let g = geo_mean(w, x, y).unwrap().re;
        let a = arith_mean(MeanWeight::new(1.0 - t).unwrap(), x, y).re;
        let tol = 1e-12 * a;
        prop_assert!(h <= g + tol && g <= a + tol, "{h} {g} {a}");
    }

    #[test]
    fn means_are_idempotent(t in 0.0..=1.0f64, x in disk_point(10.0)) {
        prop_assume!(x.norm() > 1e-6 && !(x.im == 0.0 && x.re < 0.0));
        let w = MeanWeight::new(t).unwrap();
        prop_assert!(rel(geo_mean(w, x, x).unwrap(), x) <= 1e-12);
        prop_assert!(rel(harm_mean(w, x, x).unwrap().value(), x) <= 1e-12);
    }

    #[test]
    fn h_operator_is_harmonic_mean_of_p_ends(
        t in 0.0..=1.0f64,
        a in prop::array::uniform3(-0.3..0.3f64),
        th1 in -0.5..0.5f64,
        phi in 0.5..2.0f64,
        z in disk_point(0.95),
    ) {
        let p = AnalyticMap::real_polynomial(&[1.0, a[0], a[1], a[2]]);
        let pair = ThetaPhiPair::new(AnalyticMap::real_polynomial(&[1.0, th1]), AnalyticMap::constant(phi)).unwrap();
        let p0 = p_operator(&pair, &p, 0.0, z).unwrap();
        let p1 = p_operator(&pair, &p, 1.0, z).unwrap();
        let pm = p_operator(&pair, &p, 1.0 - t, z).unwrap();
        prop_assert!(rel(pm, t * p0 + (1.0 - t) * p1) <= 1e-12);
        let h = h_operator(&pair, &p, t, z).unwrap();
        let m = harm_mean(MeanWeight::new(1.0 - t).unwrap(), p0, p1).unwrap();
        if h.is_regular() && m.is_regular() {
            prop_assert!(rel(h.value(), m.value()) <= 1e-12, "{:?} vs {:?}", h, m);
        }
    }

    #[test]
    fn unit_pair_half_weight_closed_form(a in prop::array::uniform3(-0.3..0.3f64), z in disk_point(0.95)) {
        let p = AnalyticMap::real_polynomial(&[1.0, a[0], a[1], a[2]]);
        let j = p.jet_at(z).unwrap();
        let want = 2.0 * j.f * (j.f + z * j.d1) / (2.0 * j.f + z * j.d1);
        let got = h_operator(&ThetaPhiPair::unit(), &p, 0.5, z).unwrap();
        if got.is_regular() {
            prop_assert!(rel(got.value(), want) <= 1e-12);
        }
    }
}

// ---- domains

#[test]
fn interior_images_are_inside() {
    for id in CATALOG {
        let dom = TargetDomain::new(id).unwrap();
        for r in [0.1, 0.5, 0.9, 0.99] {
            for k in 0..256 {
                let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / 256.0);
                let w = dom.map().value(z).unwrap();
                assert_eq!(dom.contains(w), Membership::Inside, "{id} r={r} k={k}");
            }
        }
    }
}

#[test]
fn real_part_extremes_match_a_boundary_scan() {
    for id in CATALOG {
        let dom = TargetDomain::new(id).unwrap();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        // endpoints included: the sqrt minimum sits at a cusp at θ = π
        for k in 0..=100_000 {
            let th = -PI + 2.0 * PI * k as f64 / 100_000.0;
            if let Ok(w) = dom.map().value(Complex64::from_polar(1.0, th)) {
                lo = lo.min(w.re);
                hi = hi.max(w.re);
            }
        }
        if dom.re_inf().is_finite() {
            assert!((lo - dom.re_inf()).abs() <= 1e-8, "{id}: inf {} vs scan {lo}", dom.re_inf());
        }
        if dom.re_sup().is_finite() {
            assert!((hi - dom.re_sup()).abs() <= 1e-8, "{id}: sup {} vs scan {hi}", dom.re_sup());
        }
    }
}

#[test]
fn convex_boundaries_pass_the_support_test() {
    for id in CATALOG {
        let dom = TargetDomain::new(id).unwrap();
        if !dom.convex() {
            continue;
        }
        let pts: Vec<Complex64> = dom.boundary_table(1024).unwrap().into_iter().map(|(_, w)| w).filter(|w| w.norm() < 1e6).collect();
        for k in 0..64 {
            let th = -PI + 2.0 * PI * (k as f64 + 0.37) / 64.0;
            let (p, n) = dom.support_halfplane(th).unwrap();
            for w in &pts {
                let s = ((w - p) * n.conj()).re;
                assert!(s >= -1e-9 * (1.0 + w.norm()), "{id} probe {th}: {s}");
            }
        }
    }
}

// ---- subordination

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_persist_at_larger_radii(m in 0.5..3.0f64, arg in -PI..PI, r in 0.3..0.95f64, dr in 0.001..0.05f64) {
        // Re(1 + a z) > 0 on |z| ≤ r iff r|a| < 1
        let p = AnalyticMap::polynomial(vec![c(1.0, 0.0), Complex64::from_polar(m, arg)]);
        let dom = TargetDomain::new(DomainId::HalfPlane { alpha: 0.0 }).unwrap();
        let v = is_subordinate(&p, &dom, &[r], 256).unwrap();
        if let Some(w) = &v.witness {
            let v2 = is_subordinate(&p, &dom, &[(w.r + dr).min(0.999)], 256).unwrap();
            prop_assert!(v2.witness.is_some());
        }
        if m * r < 0.99 {
            prop_assert!(v.subordinate);
        }
    }
}

// ---- admissibility constants

proptest! {
    #[test]
    fn exp_g_at_origin_closed_form(m in 1.0..20.0f64) {
        let g = example_g(CaseId::Exp, 0.0, m).unwrap();
        prop_assert!((g - 2.0 * E * (m + 1.0) / (m + 2.0)).abs() <= 1e-12 * g);
        let g2 = example_g(CaseId::Exp, 0.0, m + 1e-3).unwrap();
        prop_assert!(g2 > g);
    }

    #[test]
    fn sqrt_g_increasing_in_m(th in -0.78..0.78f64, m in 1.0..19.0f64) {
        let a = example_g(CaseId::Sqrt, th, m).unwrap();
        let b = example_g(CaseId::Sqrt, th, m + 0.5).unwrap();
        prop_assert!(b >= a - 1e-12, "θ={th}: g({m})={a}, g({})={b}", m + 0.5);
    }
}

#[test]
fn same_t_chain_fails_off_the_midpoint() {
    let w = MeanWeight::new(0.75).unwrap();
    let (x, y) = (c(900.0, 0.0), c(100.0, 0.0));
    let g = geo_mean(w, x, y).unwrap().re;
    let a = arith_mean(w, x, y).re;
    assert!(g > a, "{g} {a}");
    let h = MeanWeight::new(0.5).unwrap();
    assert!(geo_mean(h, x, y).unwrap().re <= arith_mean(h, x, y).re);
}

#[test]
fn printed_exp_form_agrees_only_at_m_one() {
    let printed = |m: f64| 2.0 * E * (m * m + 3.0 * m + 2.0) / (5.0 + 4.0 * m);
    assert!((example_g(CaseId::Exp, 0.0, 1.0).unwrap() - printed(1.0)).abs() < 1e-12);
    assert!((example_g(CaseId::Exp, 0.0, 2.0).unwrap() - printed(2.0)).abs() > 0.1);
}

#[test]
fn closed_forms_match_direct_psi() {
    for case in [CaseId::Exp, CaseId::Sqrt, CaseId::Sigmoid] {
        let ms: Vec<f64> = (0..77).map(|i| 1.0 + 0.25 * i as f64).collect();
        let res = g_consistency(case, &case.theta_grid(1024), &ms).unwrap();
        assert!(res <= 1e-10, "{case}: {res}");
    }
}

// ---- Janowski

fn quad() -> impl Strategy<Value = JanowskiQuad<f64>> {
    (-1.0..=1.0f64, -1.0..=1.0f64, -1.0..=1.0f64, -1.0..=1.0f64)
        .prop_filter_map("ordered", |(x, y, u, v)| JanowskiQuad::new(x.max(y), x.min(y), u.max(v), u.min(v)).ok())
}

proptest! {
    #[test]
    fn modulus_expansions_match_direct(q in quad(), k in 1.0..100.0f64, th in -PI..PI) {
        let s = spiral_coeffs(&q, k).unwrap();
        let w = Complex64::from_polar(1.0, th);
        let num = (s.l + s.m * w + s.n * w * w).norm_sqr();
        let den = (s.g + s.h * w + s.i * w * w + s.j * w * w * w).norm_sqr();
        prop_assert!((eval_poly(&s.num_poly(), th.cos()) - num).abs() <= 1e-10 * num.max(1.0));
        prop_assert!((eval_poly(&s.den_poly(), th.cos()) - den).abs() <= 1e-10 * den.max(1.0));
    }

    #[test]
    fn min_quad_matches_brute_force(a in -10.0..10.0f64, b in -10.0..10.0f64, cc in -10.0..10.0f64) {
        let n = 100_000;
        let brute = (0..n)
            .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
            .map(|t| a * t * t + b * t + cc)
            .fold(f64::INFINITY, f64::min);
        let m = min_quad(a, b, cc);
        prop_assert!(m <= brute + 1e-12 && brute - m <= 1e-9, "{m} vs {brute}");
    }
}

fn q_rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn exact_and_float_conditions_agree_on_rational_grid() {
    let vals: Vec<i64> = (-4..=4).collect();
    let ks: Vec<BigRational> = [1, 2, 5, 10].iter().map(|&k| q_rat(k, 1)).collect();
    let kf: Vec<f64> = [1.0, 2.0, 5.0, 10.0].to_vec();
    let mut compared = 0;
    for &a in &vals {
        for &b in &vals {
            for &d in &vals {
                for &e in &vals {
                    let Ok(q) = JanowskiQuad::new(q_rat(a, 4), q_rat(b, 4), q_rat(d, 4), q_rat(e, 4)) else { continue };
                    let x = check_conditions(&q, &ks).unwrap();
                    let y = check_conditions(&q.to_f64(), &kf).unwrap();
                    // floats may round an exact zero either way; compare away from ties
                    use num_traits::{ToPrimitive, Zero};
                    if !x.cond3_value.is_zero() {
                        assert_eq!(x.cond3, y.cond3, "{a} {b} {d} {e}");
                    }
                    if !x.cond4_margin.is_zero() {
                        assert_eq!(x.cond4, y.cond4, "{a} {b} {d} {e}");
                    }
                    for (u, v) in x.cond2.iter().zip(&y.cond2) {
                        if u.margin.to_f64().unwrap().abs() > 1e-9 {
                            assert_eq!(u.holds, v.holds, "{a} {b} {d} {e} k={}", u.k);
                        }
                    }
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 500);
}

/// Under the second condition the cubic in cos θ should be nondecreasing.
/// The implication is asserted where GJ ≤ 0; tuples with GJ > 0 that break
/// it are counted and shown.
#[test]
fn cond2_makes_denominator_nondecreasing() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = (quad(), 1.0..50.0f64);
    let (mut checked, mut gj_pos_breaks) = (0, 0);
    for _ in 0..20_000 {
        let (q, k) = strat.new_tree(&mut runner).unwrap().current();
        let s = spiral_coeffs(&q, k).unwrap();
        if s.cond2_margin() < 0.0 {
            continue;
        }
        let p = s.den_poly();
        let dp = |t: f64| p[1] + 2.0 * p[2] * t + 3.0 * p[3] * t * t;
        let scale = p.iter().map(|v| v.abs()).fold(1.0, f64::max);
        let mono = (0..=200).all(|i| dp(-1.0 + i as f64 / 100.0) >= -1e-9 * scale);
        if s.g * s.j <= 0.0 {
            assert!(mono, "{q:?} k={k}");
            checked += 1;
        } else if !mono {
            gj_pos_breaks += 1;
        }
    }
    eprintln!("cond2 monotonicity: {checked} tuples with GJ <= 0 checked, {gj_pos_breaks} GJ > 0 exceptions");
    assert!(checked > 1000);
}

// ---- thresholds

fn small_rat() -> impl Strategy<Value = BigRational> {
    (1i64..200, 1i64..64).prop_map(|(n, d)| q_rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn boundary_expressions_exact(an in 1i64..99, rn in 0i64..=100, x in small_rat(), y in small_rat()) {
        let alpha = q_rat(an, 100);
        let rho = q_rat(rn, 100);
        let my = -y;
        let q = Complex::new(alpha.clone(), x.clone());
        let my_c = Complex::new(my.clone(), BigRational::from_integer(0.into()));
        let one = Complex::new(BigRational::from_integer(1.into()), BigRational::from_integer(0.into()));
        let rho_c = Complex::new(rho.clone(), BigRational::from_integer(0.into()));
        let den = one + rho_c * my_c.clone() / (q.clone() * q.clone());
        let e0 = (q.clone() + my_c / q.clone()) / den.clone();
        let e1 = q / den;
        prop_assert_eq!(re_e0_exact(&alpha, &rho, &x, &my), e0.re);
        prop_assert_eq!(re_e1_exact(&alpha, &rho, &x, &my), e1.re);
    }

    #[test]
    fn combined_beta_monotone_in_gamma(
        alpha in 0.0..0.99f64,
        rho_u in 0.0..=1.0f64,
        mu in 0.0..=1.0f64,
        delta in 1.0..=2.0f64,
        x in 1e-3..10.0f64,
        depth in 0.0..50.0f64,
        g1 in 0.0..=1.0f64,
        g2 in 0.0..=1.0f64,
    ) {
        let lo = if alpha <= 0.5 { alpha * (1.0 + 2.0 * alpha) } else { 0.0 };
        let rho = lo + (1.0 - lo) * rho_u;
        let pt = BoundaryPoint::new(alpha, x, my_bound(alpha, x) - depth).unwrap();
        let (ga, gb) = (g1.min(g2), g1.max(g2));
        for thm in [Theorem::Thm29, Theorem::Thm210] {
            let at = |g: f64| combined_threshold(&ThresholdParams::new(g, alpha, mu, delta, rho).unwrap(), thm, &pt).map(|b| b.value);
            let (Ok(ba), Ok(bb), Ok(b0)) = (at(ga), at(gb), at(0.0)) else { continue };
            // affine in γ between β(0) and α
            if b0 >= alpha {
                prop_assert!(bb <= ba + 1e-12);
            } else {
                prop_assert!(bb >= ba - 1e-12);
            }
            prop_assert!((at(1.0).unwrap() - alpha).abs() <= 1e-15);
        }
    }

    #[test]
    fn plus_corrections_do_not_go_below_alpha(alpha in 0.01..0.99f64, rho_u in 0.0..=1.0f64) {
        if alpha < 0.5 {
            let rho = alpha * (1.0 + 2.0 * alpha) + (1.0 - alpha * (1.0 + 2.0 * alpha)) * rho_u;
            prop_assume!(rho * (1.0 - alpha) - 2.0 * alpha * alpha > 1e-9);
            prop_assert!(beta0_value(alpha, rho, 1).unwrap() >= alpha - 1e-12);
            if (rho - 2.0 * (1.0 - alpha)).abs() > 1e-9 {
                prop_assert!(beta1_value(alpha, rho, 2).unwrap() >= alpha - 1e-12);
            }
        } else if alpha > 0.5 {
            prop_assert!(beta1_value(alpha, rho_u, 4).unwrap() >= alpha - 1e-12);
        }
    }
}

// ---- applications

fn params() -> impl Strategy<Value = ThresholdParams> {
    (0.0..=1.0f64, 0.0..0.99f64, 0.0..=1.0f64, 0.0..=1.0f64, 1.0..=2.0f64).prop_filter_map("admissible", |(g, a, r, m, d)| {
        let lo = if a <= 0.5 { a * (1.0 + 2.0 * a) } else { 0.0 };
        ThresholdParams::new(g, a, m, d, lo + (1.0 - lo) * r).ok()
    })
}

fn small_grid(n: usize) -> DiskGrid {
    DiskGrid::new(vec![0.5, 0.9, 0.99], n, false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identity_function_passes_every_corollary(p in params()) {
        for which in [Corollary::Starlike36, Corollary::Univalent38, Corollary::Fz39] {
            match corollary_check(which, &AnalyticMap::Identity, &p, &small_grid(64)) {
                // Re(zf'/f) = 1 > α always; the premise value is 1, which may sit below β
                Ok(r) => prop_assert!(r.conclusion_holds && r.implication_violations == 0, "{which}: {r:?}"),
                // a degenerate β branch is the only admissible refusal
                Err(e) => prop_assert!(e.to_string().contains("degenerate"), "{e}"),
            }
        }
    }

    #[test]
    fn starlike_premise_with_margin_implies_conclusion(p in params(), a2 in -0.2..0.2f64, a3 in -0.1..0.1f64) {
        let f = AnalyticMap::real_polynomial(&[0.0, 1.0, a2, a3]);
        if let Ok(r) = corollary_check(Corollary::Starlike36, &f, &p, &small_grid(128)) {
            prop_assert!(r.implication_checked || r.premise_min <= r.beta + 0.01);
            prop_assert_eq!(r.implication_violations, 0, "{:?}", r);
        }
    }
}
