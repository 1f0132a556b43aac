//! Exact check of the defining relations of the quantum affine algebra.

use serde::Serialize;

use crate::linalg::Mat;
use crate::scalars::{qbinomial, Rat};

use super::Rep;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|c| !c.pass)
            .map(|c| c.relation.as_str())
    }
}

/// `Σ_k (-1)^k [m choose k]_{q_i} X_i^{m-k} X_j X_i^k` with `m = 1 - a_ij`.
fn serre(xi: &Mat, xj: &Mat, m: u32, d: i32) -> Mat {
    let mut acc = Mat::zeros(xi.rows(), xi.cols());
    for k in 0..=m {
        let c = qbinomial(m, k, d);
        let c = if k % 2 == 1 { -c } else { c };
        let t = &(&xi.pow(m - k) * xj) * &xi.pow(k);
        acc = &acc + &t.scale(&c);
    }
    acc
}

pub fn verify_relations(v: &Rep) -> RelationReport {
    let c = v.cartan();
    let mut checks = Vec::new();
    let mut push = |relation: String, pass: bool| checks.push(RelationCheck { relation, pass });
    let n = v.dim();
    let kc = c
        .nodes()
        .fold(Mat::identity(n), |acc, i| &acc * &v.k(i).pow(c.mark(i) as u32));
    push("K_c = 1".into(), kc.is_identity());
    for i in c.nodes() {
        let di = c.d(i) as i32;
        let ki = v.k(i);
        let ki_inv = v.k_inv(i);
        for j in c.nodes() {
            let qa = Rat::q_pow(di * c.a(i, j) as i32);
            let ke = &(ki * v.e(j)) * &ki_inv;
            push(format!("K_{i} E_{j} K_{i}^-1 = q^({}) E_{j}", di as i64 * c.a(i, j)), ke == v.e(j).scale(&qa));
            let kf = &(ki * v.f(j)) * &ki_inv;
            push(format!("K_{i} F_{j} K_{i}^-1 = q^({}) F_{j}", -(di as i64) * c.a(i, j)), kf == v.f(j).scale(&qa.inv()));
            let comm = v.e(i).commutator(v.f(j));
            let rhs = if i == j {
                let qi = Rat::q_pow(di);
                let denom = &qi - &qi.inv();
                (ki - &ki_inv).scale(&denom.inv())
            } else {
                Mat::zeros(n, n)
            };
            push(format!("[E_{i}, F_{j}]"), comm == rhs);
            if i != j {
                let m = (1 - c.a(i, j)) as u32;
                push(format!("Serre E_{i} E_{j}"), serre(v.e(i), v.e(j), m, di).is_zero());
                push(format!("Serre F_{i} F_{j}"), serre(v.f(i), v.f(j), m, di).is_zero());
            }
        }
    }
    RelationReport { checks }
}
