//! The pooled and single-threaded paths must agree exactly.

use qloop::braid::{Gauge, TwistSpec};
use qloop::exec::single_threaded;
use qloop::irred::{check_irreducible, modified_lowering};
use qloop::kmat::{solve_k, verify_gre};
use qloop::repcore::{eval_sl2, vector_sl_n};
use qloop::rmat::{check_ybe, solve_r};
use qloop::rootdata::{CartanDatum, GradingShift, QspParams, SatakeDiagram};
use qloop::scalars::{Rat, Var};

/// Every intermediate result in canonical text, so equality is bitwise on output.
fn workload() -> Vec<String> {
    let sl3 = |v: Var| vector_sl_n(3, Rat::var(v)).unwrap();
    let (u, v, w) = (sl3(Var::A), sl3(Var::B), sl3(Var::C));
    let uv = solve_r(&u, &v).unwrap();
    let uw = solve_r(&u, &w).unwrap();
    let vw = solve_r(&v, &w).unwrap();
    let ybe = check_ybe(&uv, &uw, &vw).unwrap();

    let d = SatakeDiagram::new(CartanDatum::affine_a(1).unwrap(), &[], &[0, 1]).unwrap();
    let p = QspParams::symbolic(&d);
    let spec = TwistSpec::new(d.clone(), Gauge::SemiStandard, &p);
    let s = GradingShift::tau_minimal(&d);
    let spin1 = eval_sl2(2, Rat::var(Var::A)).unwrap();
    let k = solve_k(&spin1, &spec, &s, &p).unwrap();
    let (gre, f) = verify_gre(&spin1, &eval_sl2(1, Rat::var(Var::B)).unwrap(), &spec, &s, &p).unwrap();
    let closure = check_irreducible(&modified_lowering(&vector_sl_n(4, Rat::var(Var::A)).unwrap(), &[]).unwrap()).unwrap();

    vec![
        uv.to_json().to_string(),
        vw.to_json().to_string(),
        format!("{ybe:?}"),
        k.to_json().to_string(),
        format!("{gre:?}"),
        f.r_v_w.to_json().to_string(),
        closure.to_json().to_string(),
    ]
}

#[test]
fn pooled_equals_single_threaded() {
    let pooled = workload();
    let single = single_threaded(workload);
    assert_eq!(pooled, single);
}
