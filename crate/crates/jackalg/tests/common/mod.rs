//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use jackalg::algebra::{q_frac, q_int, AlphaField, Q};
use jackalg::partitions::Partition;

pub fn p(parts: &[u32]) -> Partition {
    Partition::of(parts)
}

/// The rational parameters used across the exact grids.
pub fn alphas() -> Vec<Q> {
    vec![q_int(1), q_int(2), q_frac(1, 4), q_int(4)]
}

pub fn field(a: &Q) -> AlphaField {
    AlphaField::new(a.clone()).expect("positive alpha")
}

/// Reference expansions of `L_mu` in the moment basis.
pub const GOLDEN_L: [(&[u32], &str); 6] = [
    (&[1], "M_2"),
    (&[2], "M_3 + \\gamma M_2"),
    (&[3], "M_4 - 2M_2^2 + 3\\gamma M_3 + (1 + 2\\gamma^2)M_2"),
    (
        &[4],
        "M_5 - 5M_3M_2 + 6\\gamma M_4 - 11\\gamma M_2^2 + (5 + 11\\gamma^2)M_3 + (7\\gamma + 6\\gamma^3)M_2",
    ),
    (
        &[5],
        "M_6 - 6M_4M_2 -3M_3^2 + 7M_2^3 + 10\\gamma M_5 - 45\\gamma M_3M_2 + (15+35\\gamma^2)M_4 - (25+60\\gamma^2)M_2^2 + (55\\gamma + 50\\gamma^3)M_3 + (8 + 46\\gamma^2 + 24\\gamma^4)M_2",
    ),
    (
        &[2, 2],
        "M_3^2 + 2\\gamma M_3 M_2 - 4 M_4 + (\\gamma^2+6) M_2^2 - 10 \\gamma M_3 -(6\\gamma^2+2) M_2",
    ),
];

/// Reference Kerov polynomials in the free-cumulant basis.
pub const GOLDEN_K: [(&[u32], &str); 6] = [
    (&[1], "R_2"),
    (&[2], "R_3 + \\gamma R_2"),
    (&[3], "R_4 + 3\\gamma R_3 + (1 + 2\\gamma^2)R_2"),
    (
        &[4],
        "R_5 + 6\\gamma R_4 + \\gamma R_2^2 + (5 + 11\\gamma^2)R_3 + (7\\gamma + 6\\gamma^3)R_2",
    ),
    (
        &[5],
        "R_6 + 10\\gamma R_5 + 5\\gamma R_3R_2 + (15 + 35 \\gamma^2) R_4 + (5+10\\gamma^2) R_2^2 + (55\\gamma + 50\\gamma^3)R_3 + (8 + 46\\gamma^2 + 24\\gamma^4)R_2",
    ),
    (
        &[2, 2],
        "R_3^2 + 2\\gamma R_3 R_2 - 4 R_4 + (\\gamma^2-2) R_2^2 - 10 \\gamma R_3 -(6\\gamma^2+2) R_2",
    ),
];

/// Reference expansion of `L'_{(2,2)}` in the shifted moment basis.
pub const GOLDEN_LPRIME_22: &str = "(M'_3)^2 +6(M'_2)^2 - 4 M'_4 -10 \\gamma M'_3 -2M'_2";
