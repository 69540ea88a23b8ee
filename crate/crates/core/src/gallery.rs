//! Small worked actions used as fixtures.

use crate::group::{close_group, AffineAutomorphism, FiniteGroupAction, DEFAULT_GROUP_CAP};
use crate::linalg::TorsionPoint;
use crate::variety::{AbelianVarietyModel, EllipticFactor, EndoBlockMatrix};

fn build(
    factors: Vec<EllipticFactor>,
    gens: Vec<(EndoBlockMatrix, TorsionPoint)>,
) -> FiniteGroupAction {
    let a = AbelianVarietyModel::new(factors).expect("nonempty");
    let gens: Vec<AffineAutomorphism> = gens
        .into_iter()
        .map(|(h, t)| AffineAutomorphism::new(h, t, &a).expect("valid fixture"))
        .collect();
    close_group(&a, &gens, DEFAULT_GROUP_CAP).expect("finite fixture")
}

fn generic(label: &str) -> EllipticFactor {
    EllipticFactor::Generic(label.to_string())
}

/// `E_i²` with `⟨i × i⟩`: quasi-étale, uniruled, ℚ-abelian.
pub fn ex51() -> FiniteGroupAction {
    build(
        vec![EllipticFactor::Zeta4, EllipticFactor::Zeta4],
        vec![(
            EndoBlockMatrix::diagonal(&[(0, 1), (0, 1)]),
            TorsionPoint::zero(4),
        )],
    )
}

/// `E × E_i` with `⟨[−1] × i⟩`: neither ℚ-Fano nor ℚ-abelian.
pub fn ex52() -> FiniteGroupAction {
    build(
        vec![generic("E"), EllipticFactor::Zeta4],
        vec![(
            EndoBlockMatrix::diagonal(&[(-1, 0), (0, 1)]),
            TorsionPoint::zero(4),
        )],
    )
}

/// `E × F` with `⟨−1⟩`: a Kummer surface.
pub fn kummer() -> FiniteGroupAction {
    build(
        vec![generic("E"), generic("F")],
        vec![(EndoBlockMatrix::scalar(2, -1), TorsionPoint::zero(4))],
    )
}

/// `E × F` with `⟨t_{(1/2, 0)} ∘ (id × [−1])⟩`: a bielliptic surface.
pub fn bielliptic() -> FiniteGroupAction {
    build(
        vec![generic("E"), generic("F")],
        vec![(
            EndoBlockMatrix::diagonal(&[(1, 0), (-1, 0)]),
            TorsionPoint::from_fractions(&[(1, 2), (0, 1), (0, 1), (0, 1)]),
        )],
    )
}

/// `E_i` with `⟨i⟩`: the quotient is `ℙ¹`.
pub fn p1_from_ei() -> FiniteGroupAction {
    build(
        vec![EllipticFactor::Zeta4],
        vec![(EndoBlockMatrix::diagonal(&[(0, 1)]), TorsionPoint::zero(2))],
    )
}

/// Every fixture with its name.
pub fn all() -> Vec<(&'static str, FiniteGroupAction)> {
    vec![
        ("ex51", ex51()),
        ("ex52", ex52()),
        ("kummer", kummer()),
        ("bielliptic", bielliptic()),
        ("p1-from-Ei", p1_from_ei()),
    ]
}
