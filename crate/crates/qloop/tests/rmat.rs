use std::time::Instant;

use qloop::linalg::Mat;
use qloop::repcore::{eval_sl2, trivial, vector_sl_n, Rep};
use qloop::rmat::{check_unitarity, check_ybe, detect_degeneration, solve_r, Degeneration, RMatrix};
use qloop::scalars::{Rat, Var};

fn fund(v: Var) -> Rep {
    eval_sl2(1, Rat::var(v)).unwrap()
}

fn ybe(u: &Rep, v: &Rep, w: &Rep) -> bool {
    let uv = solve_r(u, v).unwrap();
    let uw = solve_r(u, w).unwrap();
    let vw = solve_r(v, w).unwrap();
    check_ybe(&uv, &uw, &vw).unwrap().pass
}

#[test]
fn ybe_trivial_triple() {
    let t = trivial(fund(Var::A).cartan().clone());
    assert!(ybe(&t, &t, &t));
}

#[test]
fn ybe_sl2_fundamental_triple() {
    assert!(ybe(&fund(Var::A), &fund(Var::B), &fund(Var::C)));
}

#[test]
fn ybe_mixed_spins() {
    let s1 = eval_sl2(2, Rat::var(Var::B)).unwrap();
    assert!(ybe(&fund(Var::A), &s1, &fund(Var::C)));
}

#[test]
fn ybe_sl3_vector_triple() {
    let v = vector_sl_n(3, Rat::one()).unwrap();
    let start = Instant::now();
    let r = solve_r(&v, &v).unwrap();
    assert_eq!(r.kernel_dim, 1);
    assert_eq!(r.matrix.rows(), 9);
    assert!(check_ybe(&r, &r, &r).unwrap().pass);
    assert!(start.elapsed().as_secs() < 300);
}

#[test]
fn ybe_fails_for_perturbed_matrix() {
    let u = fund(Var::A);
    let v = fund(Var::B);
    let w = fund(Var::C);
    let mut uv = solve_r(&u, &v).unwrap();
    let x = uv.matrix.get(1, 2).clone();
    uv.matrix.set(1, 2, &x * &Rat::int(2));
    let check = check_ybe(&uv, &solve_r(&u, &w).unwrap(), &solve_r(&v, &w).unwrap()).unwrap();
    assert!(!check.pass);
    assert!(check.detail.is_some());
}

#[test]
fn unitarity_sl2_pair() {
    let v = fund(Var::A);
    let w = fund(Var::B);
    let vw = solve_r(&v, &w).unwrap();
    let wv = solve_r(&w, &v).unwrap();
    assert!(check_unitarity(&vw, &wv).unwrap().pass);
    let t = trivial(v.cartan().clone());
    assert!(check_unitarity(&solve_r(&t, &t).unwrap(), &solve_r(&t, &t).unwrap()).unwrap().pass);
}

#[test]
fn unitarity_needs_the_normalization() {
    let v = fund(Var::A);
    let w = fund(Var::B);
    let wv = solve_r(&w, &v).unwrap();
    let mut vw = solve_r(&v, &w).unwrap();
    let z = Rat::var(Var::Z);
    vw.matrix = vw.matrix.scale(&(&z + &Rat::one()));
    assert!(!check_unitarity(&vw, &wv).unwrap().pass);
    // f(z) = z satisfies f(z) f(1/z) = 1
    let mut ok = solve_r(&v, &w).unwrap();
    ok.matrix = ok.matrix.scale(&z);
    let mut back = wv.clone();
    back.matrix = back.matrix.scale(&z);
    assert!(check_unitarity(&ok, &back).unwrap().pass);
}

#[test]
fn unitarity_sl3_and_spin_one() {
    let v = vector_sl_n(3, Rat::var(Var::A)).unwrap();
    let w = vector_sl_n(3, Rat::var(Var::B)).unwrap();
    assert!(check_unitarity(&solve_r(&v, &w).unwrap(), &solve_r(&w, &v).unwrap()).unwrap().pass);
    let s = eval_sl2(2, Rat::var(Var::A)).unwrap();
    let f = fund(Var::B);
    assert!(check_unitarity(&solve_r(&s, &f).unwrap(), &solve_r(&f, &s).unwrap()).unwrap().pass);
}

fn sl2_pair() -> RMatrix {
    solve_r(&fund(Var::A), &fund(Var::B)).unwrap()
}

#[test]
fn degeneration_loci() {
    let r = sl2_pair();
    let at = |b: Rat| vec![(Var::A, Rat::one()), (Var::B, b), (Var::Z, Rat::one())];
    assert_eq!(detect_degeneration(&r, &at(Rat::q_pow(2))).unwrap(), Degeneration::Pole);
    assert_eq!(detect_degeneration(&r, &at(Rat::q_pow(-2))).unwrap(), Degeneration::Singular);
    let generic = vec![(Var::Z, Rat::one())];
    assert_eq!(detect_degeneration(&r, &generic).unwrap(), Degeneration::RegularInvertible);
}

#[test]
fn solution_is_weight_block_diagonal_and_invertible() {
    let r = sl2_pair();
    for (i, j) in r.matrix.support() {
        assert!(i == j || (i, j) == (1, 2) || (i, j) == (2, 1));
    }
    assert!(!r.matrix.det().unwrap().is_zero());
    assert_eq!(Mat::identity(4).rows(), r.matrix.rows());
}
