//! Named matrices used by tests, sweeps and the acceptance suite.

use crate::gcm::Gcm;

fn build(name: &str, rows: &[&[i64]]) -> Gcm {
    Gcm::new(rows.iter().map(|r| r.to_vec()).collect())
        .expect("reference matrix is a valid GCM")
        .named(name)
}

pub fn a2() -> Gcm {
    build("A2", &[&[2, -1], &[-1, 2]])
}

pub fn b2() -> Gcm {
    build("B2", &[&[2, -2], &[-1, 2]])
}

pub fn g2() -> Gcm {
    build("G2", &[&[2, -1], &[-3, 2]])
}

/// `A₁⁽¹⁾`
pub fn a1_affine() -> Gcm {
    build("A1~", &[&[2, -2], &[-2, 2]])
}

/// `A₂⁽¹⁾`
pub fn a2_affine() -> Gcm {
    build("A2~", &[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
}

/// Rank-2 hyperbolic matrix with both off-diagonal entries −3.
pub fn hyperbolic_33() -> Gcm {
    build("H33", &[&[2, -3], &[-3, 2]])
}

/// Rank-3 indefinite matrix containing an `A₁⁽¹⁾` block on `{1,2}`.
pub fn rank3_affine_block() -> Gcm {
    build("R3", &[&[2, -2, -1], &[-2, 2, 0], &[-1, 0, 2]])
}

/// The four matrices every oracle cross-check runs on.
pub fn core_four() -> Vec<Gcm> {
    vec![a2(), g2(), a1_affine(), hyperbolic_33()]
}

/// All reference matrices.
pub fn all() -> Vec<Gcm> {
    vec![
        a2(),
        b2(),
        g2(),
        a1_affine(),
        a2_affine(),
        hyperbolic_33(),
        rank3_affine_block(),
    ]
}
