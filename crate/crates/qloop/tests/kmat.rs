use qloop::braid::{Gauge, TwistSpec};
use qloop::kmat::*;
use qloop::linalg::Mat;
use qloop::repcore::{eval_sl2, trivial, vector_sl_n, Rep};
use qloop::rootdata::{CartanDatum, GradingShift, QspParams, SatakeDiagram};
use qloop::scalars::{parse_rat, Rat, Var};

fn a1(tau: &[usize]) -> SatakeDiagram {
    SatakeDiagram::new(CartanDatum::affine_a(1).unwrap(), &[], tau).unwrap()
}

fn onsager() -> SatakeDiagram {
    a1(&[0, 1])
}

fn swapped() -> SatakeDiagram {
    a1(&[1, 0])
}

/// Symbolic parameters with `γ(δ) = 1`, so the default β is trivial.
fn balanced(d: &SatakeDiagram) -> QspParams {
    let mut p = QspParams::symbolic(d);
    p.gamma[1] = p.gamma[0].inv();
    p
}

fn spin(two_j: u32, a: Rat) -> Rep {
    eval_sl2(two_j, a).unwrap()
}

fn semi(d: &SatakeDiagram, p: &QspParams) -> TwistSpec {
    TwistSpec::new(d.clone(), Gauge::SemiStandard, p)
}

#[test]
fn trivial_rep_gives_identity() {
    let d = onsager();
    let p = QspParams::symbolic(&d);
    let t = trivial(d.cartan().clone());
    let k = solve_k(&t, &semi(&d, &p), &GradingShift::tau_minimal(&d), &p).unwrap();
    assert_eq!(k.kernel_dim, 1);
    assert!(k.matrix.is_identity());
}

#[test]
fn onsager_kernel_is_one_dimensional() {
    let d = onsager();
    let p = QspParams::symbolic(&d);
    let s = GradingShift::tau_minimal(&d);
    for two_j in [1, 2, 3] {
        let k = solve_k(&spin(two_j, Rat::var(Var::A)), &semi(&d, &p), &s, &p).unwrap();
        assert_eq!(k.kernel_dim, 1, "spin {two_j}/2");
        assert!(!k.normalization.canonical);
        assert!(regular_at_zero(&k.matrix));
    }
}

#[test]
fn swapped_fundamental_is_diagonal_and_canonical() {
    let d = swapped();
    let p = QspParams::symbolic(&d);
    let k = solve_k(&spin(1, Rat::var(Var::A)), &semi(&d, &p), &GradingShift::tau_minimal(&d), &p).unwrap();
    assert_eq!(k.normalization.rule, NormalizationRule::LHighestWeight { index: 0 });
    assert!(k.normalization.canonical);
    let expected = Mat::diag(vec![
        Rat::one(),
        parse_rat("(a*g0*g1*z^2 - g1)/(a*g1*z^2 - 1)").unwrap(),
    ]);
    assert_eq!(k.matrix, expected);
}

#[test]
fn non_invariant_shift_rejected() {
    let d = swapped();
    let p = QspParams::symbolic(&d);
    let s = GradingShift(vec![1, 0]);
    let r = solve_k(&spin(1, Rat::one()), &semi(&d, &p), &s, &p);
    assert!(matches!(r, Err(KmatError::ShiftNotInvariant)));
}

#[test]
fn generators_on_x_are_plain() {
    let c = CartanDatum::affine_a(2).unwrap();
    let d = SatakeDiagram::new(c, &[1, 2], &[0, 2, 1]).unwrap();
    let p = QspParams::symbolic(&d);
    let v = vector_sl_n(3, Rat::var(Var::A)).unwrap();
    let g = qsp_generators(&v, &d, &p, &GradingShift::tau_minimal(&d)).unwrap();
    assert_eq!(g.labels[..4], ["B0", "F1", "E1", "K1"]);
    assert_eq!(&g.mats[1], v.f(1));
    assert_eq!(&g.mats[2], v.e(1));
    assert_eq!(&g.mats[3], v.k(1));
}

fn gre_factors(d: &SatakeDiagram, gauge: Gauge) -> GreFactors {
    let p = QspParams::symbolic(d);
    let spec = TwistSpec::new(d.clone(), gauge, &p);
    let (check, f) = verify_gre(
        &spin(1, Rat::var(Var::A)),
        &spin(1, Rat::var(Var::B)),
        &spec,
        &GradingShift::tau_minimal(d),
        &p,
    )
    .unwrap();
    assert!(check.pass, "{:?}", check.detail);
    f
}

#[test]
fn gre_holds_for_both_a1_involutions() {
    for d in [onsager(), swapped()] {
        for gauge in [Gauge::SemiStandard, Gauge::Standard] {
            gre_factors(&d, gauge);
        }
    }
}

#[test]
fn gre_is_scale_invariant_and_detects_perturbation() {
    let f = gre_factors(&onsager(), Gauge::SemiStandard);
    let mut scaled = f.clone();
    scaled.kv = f.kv.scale(&parse_rat("(z - q)/(z^2 + 3)").unwrap());
    scaled.kw = f.kw.scale(&parse_rat("g0*z^3").unwrap());
    assert!(check_gre(&scaled).unwrap().pass);
    let mut broken = f;
    let x = &broken.kv.get(0, 1).clone() + &Rat::var(Var::Z);
    broken.kv.set(0, 1, x);
    let c = check_gre(&broken).unwrap();
    assert!(!c.pass);
    assert!(c.detail.is_some());
}

#[test]
fn gre_spin_one_with_fundamental() {
    let d = swapped();
    let p = QspParams::symbolic(&d);
    let spec = semi(&d, &p);
    let (c, _) = verify_gre(
        &spin(2, Rat::var(Var::A)),
        &spin(1, Rat::var(Var::B)),
        &spec,
        &GradingShift::tau_minimal(&d),
        &p,
    )
    .unwrap();
    assert!(c.pass, "{:?}", c.detail);
}

#[test]
fn standard_re_at_unit_evaluation_point() {
    let d = onsager();
    let p = balanced(&d);
    let spec = TwistSpec::new(d.clone(), Gauge::Auxiliary, &p);
    let s = GradingShift::tau_minimal(&d);
    let v = spin(1, Rat::one());
    assert!(verify_standard_re(&v, &v, &spec, &s, &p).unwrap().pass);
    // numeric coideal parameters keep the spin-1 products small
    let pn = p
        .substitute(&[
            (Var::gamma(0), Rat::int(3)),
            (Var::sigma(0), Rat::int(2)),
            (Var::sigma(1), Rat::int(5)),
        ])
        .unwrap();
    let spec_n = TwistSpec::new(d.clone(), Gauge::Auxiliary, &pn);
    let w = spin(2, Rat::one());
    assert!(verify_standard_re(&v, &w, &spec_n, &s, &pn).unwrap().pass);
    // ψ₀ inverts a symbolic evaluation point, so the plain form fails
    let va = spin(1, Rat::var(Var::A));
    assert!(!verify_standard_re(&va, &va, &spec, &s, &p).unwrap().pass);
}

#[test]
fn standard_re_requires_auxiliary_gauge() {
    let d = onsager();
    let p = balanced(&d);
    let spec = semi(&d, &p);
    let v = spin(1, Rat::one());
    let r = verify_standard_re(&v, &v, &spec, &GradingShift::tau_minimal(&d), &p);
    assert!(matches!(r, Err(KmatError::NotStandardForm)));
}

#[test]
fn paired_unitarity_on_swapped_datum() {
    let d = swapped();
    let p = balanced(&d);
    let s = GradingShift::tau_minimal(&d);
    for two_j in [1, 2] {
        let (c, kv, kpsi) = paired_unitarity(&spin(two_j, Rat::var(Var::A)), &semi(&d, &p), &s, &p).unwrap();
        assert!(c.pass, "{:?}", c.detail);
        let prod = &kpsi.substitute(&[(Var::Z, Rat::var(Var::Z).inv())]).unwrap() * &kv.matrix;
        assert!(prod.is_identity());
    }
}

#[test]
fn unitarity_reports_scalar_defect() {
    let d = swapped();
    let p = balanced(&d);
    let (_, kv, kpsi) =
        paired_unitarity(&spin(1, Rat::var(Var::A)), &semi(&d, &p), &GradingShift::tau_minimal(&d), &p).unwrap();
    let c = check_k_unitarity(&kv.matrix, &kpsi.scale(&Rat::var(Var::Z))).unwrap();
    assert!(!c.pass);
    assert!(c.detail.unwrap().contains("times the identity"));
}

#[test]
fn unitarity_needs_canonical_normalization() {
    let d = onsager();
    let p = balanced(&d);
    let r = paired_unitarity(&spin(1, Rat::var(Var::A)), &semi(&d, &p), &GradingShift::tau_minimal(&d), &p);
    assert!(matches!(r, Err(KmatError::AmbiguousNormalization(_))));
}

#[test]
fn principal_conversion_matches_direct_solve() {
    for (d, order, exponent) in [(onsager(), 2, 4), (swapped(), 1, 1)] {
        let p = QspParams::symbolic(&d);
        let v = spin(1, Rat::var(Var::A));
        let spec = semi(&d, &p);
        let kpr = solve_k(&v, &spec, &GradingShift::principal(d.cartan()), &p).unwrap();
        let conv = convert_grading(&kpr, &v, &d, &p).unwrap();
        assert_eq!((conv.root_order, conv.exponent), (order, exponent));
        assert!(conv.intertwines);
        let direct = solve_k(&v, &spec, &GradingShift::tau_minimal(&d), &p).unwrap();
        let y = Rat::mono(Var::Z, exponent as i32);
        let lifted = direct.at(&y).unwrap();
        assert!(proportionality(conv.matrix.vec(), lifted.vec()).is_some());
    }
}

#[test]
fn a2_diagrams_solve_and_satisfy_gre() {
    let c = CartanDatum::affine_a(2).unwrap();
    for (x, tau) in [(vec![], vec![0, 2, 1]), (vec![], vec![1, 0, 2]), (vec![1, 2], vec![0, 2, 1])] {
        let d = SatakeDiagram::new(c.clone(), &x, &tau).unwrap();
        let p = QspParams::symbolic(&d);
        let v = vector_sl_n(3, Rat::var(Var::A)).unwrap();
        let w = vector_sl_n(3, Rat::var(Var::B)).unwrap();
        let spec = semi(&d, &p);
        let s = GradingShift::tau_minimal(&d);
        let k = solve_k(&v, &spec, &s, &p).unwrap();
        assert_eq!(k.kernel_dim, 1);
        assert!(regular_at_zero(&k.matrix));
        assert!(verify_gre(&v, &w, &spec, &s, &p).unwrap().0.pass, "{x:?} {tau:?}");
    }
}

#[test]
fn json_carries_diagnostics() {
    let d = swapped();
    let p = QspParams::symbolic(&d);
    let k = solve_k(&spin(1, Rat::var(Var::A)), &semi(&d, &p), &GradingShift::tau_minimal(&d), &p).unwrap();
    let j = k.to_json();
    assert_eq!(j["kernel_dimension"], 1);
    assert_eq!(j["normalization"]["canonical"], true);
    assert!(j["latex"].as_str().unwrap().contains("\\begin"));
}
