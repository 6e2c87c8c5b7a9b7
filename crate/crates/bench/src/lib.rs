//! Inputs shared by the criterion benchmarks in `benches/`.

use polyreplay::{MultiPoly, PolyMatrix, Vocab};

/// The generic quintic and quadratic in `lam_v`.
pub fn generic_pair(v: &Vocab) -> (MultiPoly, MultiPoly) {
    (
        v.poly("v0 + v1*lam_v + v2*lam_v^2 + v3*lam_v^3 + v4*lam_v^4 + v5*lam_v^5"),
        v.poly("v6 + v7*lam_v + v8*lam_v^2"),
    )
}

/// Dense polynomial `(1 + x + y + z)^k` over the standard symbols.
pub fn dense(v: &Vocab, k: u32) -> MultiPoly {
    v.poly("1 + lam1 + lam_u + lam_v").pow(k)
}

/// `n × n` matrix with linear entries, a worst case for fraction-free
/// elimination.
pub fn linear_matrix(v: &Vocab, n: usize) -> PolyMatrix {
    let names = ["lam1", "lam_u", "lam_v", "lam_w", "alpha", "phi"];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| v.poly(&format!("{} + {}*{}", i + 2 * j + 1, (i * j) % 3 + 1, names[(i + j) % names.len()])))
                .collect()
        })
        .collect()
}
