//! Deterministic workloads shared by the benchmarks.

use fqav_core::gallery;
use fqav_core::{
    close_group, AbelianVarietyModel, AffineAutomorphism, EllipticFactor, EndoBlockMatrix,
    FiniteGroupAction, IntMatrix, TorsionPoint, DEFAULT_GROUP_CAP,
};

/// `count` square integer matrices with entries in `[−9, 9]`, from a fixed recurrence.
pub fn matrices(count: usize, dim: usize) -> Vec<IntMatrix> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    (0..count)
        .map(|_| {
            let entries: Vec<i64> = (0..dim * dim)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) % 19) as i64 - 9
                })
                .collect();
            IntMatrix::from_i64(dim, dim, &entries)
        })
        .collect()
}

/// `E_ω²` with `⟨ζ₆ × 1, swap⟩`, of order 72.
pub fn wreath_zeta6() -> FiniteGroupAction {
    let a = AbelianVarietyModel::new(vec![EllipticFactor::Zeta6; 2]).unwrap();
    let rot = EndoBlockMatrix::diagonal(&[(0, 1), (1, 0)]);
    let swap = EndoBlockMatrix::from_i64(2, &[(0, 0), (1, 0), (1, 0), (0, 0)]);
    let gens: Vec<AffineAutomorphism> = [rot, swap]
        .into_iter()
        .map(|h| AffineAutomorphism::new(h, TorsionPoint::zero(4), &a).unwrap())
        .collect();
    close_group(&a, &gens, DEFAULT_GROUP_CAP).unwrap()
}

/// The gallery plus the larger wreath product.
pub fn actions() -> Vec<(&'static str, FiniteGroupAction)> {
    let mut v = gallery::all();
    v.push(("wreath-zeta6", wreath_zeta6()));
    v
}
