//! Products of elliptic curves and their endomorphisms.
//!
//! `A = E_1 × … × E_n` with `E_j = ℂ/(ℤ + ℤτ_j)`. The lattice is `ℤ^{2n}` with
//! coordinates `(1, τ_j)` per factor, so a point is a vector in `ℝ^{2n}/ℤ^{2n}`.
//! Abelian subvarieties are saturated sublattices whose rational span is stable
//! under the complex structure.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycloField, CycloMatrix, CycloNumber};
use crate::error::{Error, Result};
use crate::linalg::{
    intersect_lattices, kernel_lattice, solve_affine_mod_lattice, IntMatrix, Lattice, RatMatrix,
    TorsionPoint,
};

/// One elliptic curve factor, identified by its complex multiplication type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EllipticFactor {
    /// `τ = ζ₄`, `τ² = −1`.
    Zeta4,
    /// `τ = ζ₆`, `τ² = τ − 1`.
    Zeta6,
    /// No CM. Factors with equal labels are the same curve; distinct labels are non-isogenous.
    Generic(String),
}

impl EllipticFactor {
    pub fn is_cm(&self) -> bool {
        !matches!(self, EllipticFactor::Generic(_))
    }

    /// Multiplication by `τ` on the lattice coordinates `(1, τ)`.
    pub fn tau_block(&self) -> Option<IntMatrix> {
        match self {
            EllipticFactor::Zeta4 => Some(IntMatrix::from_i64(2, 2, &[0, -1, 1, 0])),
            EllipticFactor::Zeta6 => Some(IntMatrix::from_i64(2, 2, &[0, -1, 1, 1])),
            EllipticFactor::Generic(_) => None,
        }
    }

    /// `(c + dτ)(c' + d'τ)` reduced with this factor's `τ²`.
    fn mul_pair(&self, a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let (c1, d1) = a;
        let (c2, d2) = b;
        let dd = d1 * d2;
        let c = c1 * c2 - &dd;
        let mut d = c1 * d2 + d1 * c2;
        if *self == EllipticFactor::Zeta6 {
            d += dd;
        }
        (c, d)
    }
}

impl fmt::Display for EllipticFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticFactor::Zeta4 => write!(f, "E_i"),
            EllipticFactor::Zeta6 => write!(f, "E_ω"),
            EllipticFactor::Generic(l) => f.write_str(l),
        }
    }
}

/// `A = ∏ E_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianVarietyModel {
    factors: Vec<EllipticFactor>,
}

impl AbelianVarietyModel {
    pub fn new(factors: Vec<EllipticFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::DimensionMismatch(
                "an abelian variety needs at least one factor".into(),
            ));
        }
        Ok(AbelianVarietyModel { factors })
    }

    pub fn factors(&self) -> &[EllipticFactor] {
        &self.factors
    }

    /// Complex dimension `n`.
    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    /// `2n`.
    pub fn lattice_rank(&self) -> usize {
        2 * self.dim()
    }

    /// Lattice of the `j`-th factor `{0} × … × E_j × … × {0}`.
    pub fn factor_lattice(&self, j: usize) -> Lattice {
        let n = self.lattice_rank();
        let mut a = vec![BigInt::zero(); n];
        let mut b = vec![BigInt::zero(); n];
        a[2 * j] = BigInt::one();
        b[2 * j + 1] = BigInt::one();
        Lattice::new(n, vec![a, b])
    }

    /// Rational-level model: complex-structure coefficient matrices and the
    /// product principal polarization.
    pub fn torus(&self) -> TorusModel {
        let n = self.dim();
        let zero2 = RatMatrix::zeros(2, 2);
        let q = |p: i64, d: i64| BigRational::new(p.into(), d.into());
        let mut structure = Vec::new();

        // Per CM factor: [[-x, -|τ|²], [1, x]] with τ = x + iy.
        if self.factors.iter().any(EllipticFactor::is_cm) {
            let blocks: Vec<RatMatrix> = self
                .factors
                .iter()
                .map(|f| match f {
                    EllipticFactor::Zeta4 => {
                        IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]).to_rational()
                    }
                    EllipticFactor::Zeta6 => RatMatrix::from_rows(
                        2,
                        vec![vec![q(-1, 2), q(-1, 1)], vec![q(1, 1), q(1, 2)]],
                    ),
                    EllipticFactor::Generic(_) => zero2.clone(),
                })
                .collect();
            structure.push(RatMatrix::block_diag(&blocks));
        }

        // Per generic label: the same matrix with x, |τ|² indeterminate, split
        // into its constant, x- and |τ|²-coefficients.
        let mut labels: Vec<&String> = self
            .factors
            .iter()
            .filter_map(|f| match f {
                EllipticFactor::Generic(l) => Some(l),
                _ => None,
            })
            .collect();
        labels.sort();
        labels.dedup();
        let coeff_blocks = [
            IntMatrix::from_i64(2, 2, &[0, 0, 1, 0]),
            IntMatrix::from_i64(2, 2, &[-1, 0, 0, 1]),
            IntMatrix::from_i64(2, 2, &[0, -1, 0, 0]),
        ];
        for label in labels {
            for cb in &coeff_blocks {
                let blocks: Vec<RatMatrix> = self
                    .factors
                    .iter()
                    .map(|f| match f {
                        EllipticFactor::Generic(l) if l == label => cb.to_rational(),
                        _ => zero2.clone(),
                    })
                    .collect();
                structure.push(RatMatrix::block_diag(&blocks));
            }
        }

        let seed = IntMatrix::from_i64(2, 2, &[0, 1, -1, 0]);
        TorusModel {
            rank: 2 * n,
            structure,
            polarization: IntMatrix::block_diag(&vec![seed; n]),
        }
    }
}

impl fmt::Display for AbelianVarietyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" × "))
    }
}

/// A complex torus seen through its lattice: what remains of an abelian
/// variety once only rational-representation data is kept. Abelian
/// subvarieties of products of elliptic curves, in lattice coordinates, are
/// again of this form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusModel {
    rank: usize,
    /// A rational subspace is complex-linear iff it is stable under all of these.
    structure: Vec<RatMatrix>,
    /// Alternating integer form of a polarization.
    polarization: IntMatrix,
}

impl TorusModel {
    /// The zero-dimensional torus.
    pub fn point() -> Self {
        TorusModel {
            rank: 0,
            structure: Vec::new(),
            polarization: IntMatrix::zeros(0, 0),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rank / 2
    }

    pub fn polarization(&self) -> &IntMatrix {
        &self.polarization
    }

    pub fn structure(&self) -> &[RatMatrix] {
        &self.structure
    }

    /// Even rank and rational span stable under the complex structure.
    pub fn is_complex_linear(&self, l: &Lattice) -> bool {
        l.ambient() == self.rank
            && l.rank().is_multiple_of(2)
            && self.structure.iter().all(|j| l.is_stable_under(j))
    }

    /// Whether the integer matrix preserves the complex structure.
    pub fn is_holomorphic(&self, m: &IntMatrix) -> bool {
        let mq = m.to_rational();
        self.structure.iter().all(|j| &mq * j == j * &mq)
    }

    /// The same data in the coordinates of a saturated, complex-linear sublattice.
    pub fn restrict(&self, sub: &Lattice) -> Result<TorusModel> {
        if !self.is_complex_linear(sub) {
            return Err(Error::Certificate(
                "restriction to a sublattice that is not complex-linear".into(),
            ));
        }
        let k = sub.rank();
        let w = sub.basis();
        let structure = self
            .structure
            .iter()
            .map(|j| {
                let cols: Vec<Vec<BigRational>> = w
                    .row_vectors()
                    .map(|r| {
                        let img = j.mul_vec(&rat(r));
                        sub.coordinates(&img).expect("stable subspace")
                    })
                    .collect();
                RatMatrix::from_rows(k, cols).transpose()
            })
            .filter(|m| !m.is_zero())
            .collect();
        let polarization = &(w * &self.polarization) * &w.transpose();
        Ok(TorusModel {
            rank: k,
            structure,
            polarization,
        })
    }

    /// Every lattice automorphism in `group` preserves `l`'s rational span.
    pub fn is_invariant(l: &Lattice, group: &[IntMatrix]) -> bool {
        group.iter().all(|g| l.is_stable_under(&g.to_rational()))
    }
}

fn rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// An `n × n` matrix of `c + d·τ` blocks: an endomorphism of `A` in block form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoBlockMatrix {
    n: usize,
    blocks: Vec<(BigInt, BigInt)>,
}

impl EndoBlockMatrix {
    pub fn new(n: usize, blocks: Vec<(BigInt, BigInt)>) -> Self {
        assert_eq!(blocks.len(), n * n, "expected n² blocks");
        EndoBlockMatrix { n, blocks }
    }

    /// Row-major `(c, d)` pairs.
    pub fn from_i64(n: usize, blocks: &[(i64, i64)]) -> Self {
        EndoBlockMatrix::new(
            n,
            blocks
                .iter()
                .map(|&(c, d)| (BigInt::from(c), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut blocks = vec![(BigInt::zero(), BigInt::zero()); n * n];
        for j in 0..n {
            blocks[j * n + j].0 = BigInt::from(c);
        }
        EndoBlockMatrix { n, blocks }
    }

    pub fn identity(n: usize) -> Self {
        EndoBlockMatrix::scalar(n, 1)
    }

    /// Diagonal endomorphism from per-factor `(c, d)`.
    pub fn diagonal(entries: &[(i64, i64)]) -> Self {
        let n = entries.len();
        let mut blocks = vec![(BigInt::zero(), BigInt::zero()); n * n];
        for (j, &(c, d)) in entries.iter().enumerate() {
            blocks[j * n + j] = (BigInt::from(c), BigInt::from(d));
        }
        EndoBlockMatrix { n, blocks }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn block(&self, j: usize, k: usize) -> &(BigInt, BigInt) {
        &self.blocks[j * self.n + k]
    }

    pub fn is_identity(&self) -> bool {
        *self == EndoBlockMatrix::identity(self.n)
    }

    /// Checks the block constraints against the factor list.
    pub fn validate(&self, a: &AbelianVarietyModel) -> Result<()> {
        if self.n != a.dim() {
            return Err(Error::NotAnEndomorphism(format!(
                "block matrix is {}×{} but the variety has {} factors",
                self.n,
                self.n,
                a.dim()
            )));
        }
        for j in 0..self.n {
            for k in 0..self.n {
                let (c, d) = self.block(j, k);
                let (fj, fk) = (&a.factors[j], &a.factors[k]);
                if (!c.is_zero() || !d.is_zero()) && fj != fk {
                    return Err(Error::NotAnEndomorphism(format!(
                        "block ({j},{k}) maps {fk} to non-isogenous {fj}"
                    )));
                }
                if !d.is_zero() && !fj.is_cm() {
                    return Err(Error::NotAnEndomorphism(format!(
                        "block ({j},{k}) uses τ on a factor without complex multiplication"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EndoBlockMatrix, a: &AbelianVarietyModel) -> EndoBlockMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut blocks = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let mut acc = (BigInt::zero(), BigInt::zero());
                for l in 0..n {
                    let p = a.factors[l].mul_pair(self.block(j, l), other.block(l, k));
                    acc.0 += p.0;
                    acc.1 += p.1;
                }
                blocks.push(acc);
            }
        }
        EndoBlockMatrix { n, blocks }
    }
}

impl fmt::Display for EndoBlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 0..self.n {
            if j > 0 {
                write!(f, "; ")?;
            }
            for k in 0..self.n {
                if k > 0 {
                    write!(f, ", ")?;
                }
                let (c, d) = self.block(j, k);
                match (c.is_zero(), d.is_zero()) {
                    (_, true) => write!(f, "{c}")?,
                    (true, false) => write!(f, "{d}τ")?,
                    (false, false) => {
                        let sign = if d.is_negative() { "-" } else { "+" };
                        write!(f, "{c}{sign}{}τ", d.abs())?
                    }
                }
            }
        }
        write!(f, "]")
    }
}

/// The `2n × 2n` action on `Λ = ℤ^{2n}`: block `(c, d)` becomes `c·I₂ + d·R_τ`.
pub fn rational_rep(phi: &EndoBlockMatrix, a: &AbelianVarietyModel) -> Result<IntMatrix> {
    phi.validate(a)?;
    let n = phi.n;
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let (c, d) = phi.block(j, k);
            let tau = a.factors[j].tau_block();
            for r in 0..2 {
                for s in 0..2 {
                    let mut e = if r == s { c.clone() } else { BigInt::zero() };
                    if let Some(t) = &tau {
                        e += d * &t[(r, s)];
                    }
                    m[(2 * j + r, 2 * k + s)] = e;
                }
            }
        }
    }
    Ok(m)
}

/// The `n × n` action on the tangent space, over `ℚ(ζ_m)`.
pub fn analytic_rep(
    phi: &EndoBlockMatrix,
    a: &AbelianVarietyModel,
    field: &Arc<CycloField>,
) -> Result<CycloMatrix> {
    phi.validate(a)?;
    let zeta4 = field.root_of_unity(4, 1)?;
    let zeta6 = field.root_of_unity(6, 1)?;
    Ok(CycloMatrix::from_fn(field, phi.n, |j, k| {
        let (c, d) = phi.block(j, k);
        let base = field.from_int(c.clone());
        let tau: Option<&CycloNumber> = match a.factors[j] {
            EllipticFactor::Zeta4 => Some(&zeta4),
            EllipticFactor::Zeta6 => Some(&zeta6),
            EllipticFactor::Generic(_) => None,
        };
        match tau {
            Some(t) if !d.is_zero() => &base + &t.scale(&BigRational::from_integer(d.clone())),
            _ => base,
        }
    }))
}

/// Whether a saturated sublattice spans an abelian subvariety.
pub fn is_abelian_subvariety(l: &Lattice, a: &AbelianVarietyModel) -> bool {
    a.torus().is_complex_linear(l)
}

/// A translate `L_ℝ/L + t` of a subtorus by a torsion point, with `t` in
/// canonical form so that equal translates compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtorusTranslate {
    lattice: Lattice,
    translate: TorsionPoint,
}

impl SubtorusTranslate {
    /// `lattice` must be saturated of even rank.
    pub fn new(lattice: Lattice, translate: &TorsionPoint) -> Self {
        debug_assert!(
            lattice.rank().is_multiple_of(2),
            "subtorus lattices have even rank"
        );
        let translate = lattice.reduce_point(translate);
        SubtorusTranslate { lattice, translate }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn translate(&self) -> &TorsionPoint {
        &self.translate
    }

    pub fn dim(&self) -> usize {
        self.lattice.complex_dim()
    }

    pub fn ambient_rank(&self) -> usize {
        self.lattice.ambient()
    }

    pub fn codim(&self) -> usize {
        (self.ambient_rank() - self.lattice.rank()) / 2
    }

    pub fn contains(&self, p: &TorsionPoint) -> bool {
        self.lattice.reduce_point(p) == self.translate
    }

    /// Image under `x ↦ m·x + a`.
    pub fn image(&self, m: &IntMatrix, a: &TorsionPoint) -> SubtorusTranslate {
        let imgs: Vec<Vec<BigInt>> = self
            .lattice
            .basis()
            .row_vectors()
            .map(|r| m.mul_vec(r))
            .collect();
        let lattice = if self.lattice.rank() == 0 {
            self.lattice.clone()
        } else {
            crate::linalg::saturate(&Lattice::new(self.ambient_rank(), imgs))
        };
        SubtorusTranslate::new(lattice, &self.translate.apply(m).add(a))
    }

    /// Linear equations `P·x ≡ P·t` cutting out the translate.
    fn equations(&self) -> (IntMatrix, TorsionPoint) {
        let p = self.lattice.quotient_map();
        let rhs = self.translate.apply(&p);
        (p, rhs)
    }
}

impl fmt::Display for SubtorusTranslate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.lattice.basis(), self.translate)
    }
}

/// `(S1 ∩ S2)`: the lattice `D` of the component through 0 of the
/// intersection of the underlying subtori, and the components themselves,
/// each a translate of `D`.
pub fn connected_intersection(
    s1: &SubtorusTranslate,
    s2: &SubtorusTranslate,
) -> (Lattice, Vec<SubtorusTranslate>) {
    let d = intersect_lattices(&s1.lattice, &s2.lattice);
    let (p1, r1) = s1.equations();
    let (p2, r2) = s2.equations();
    let m = p1.vstack(&p2);
    let mut rhs = r1.coords().to_vec();
    rhs.extend(r2.coords().iter().cloned());
    let sol = solve_affine_mod_lattice(&m, &TorsionPoint::new(rhs));
    debug_assert_eq!(sol.kernel, d);
    let comps = sol
        .representatives
        .iter()
        .map(|r| SubtorusTranslate::new(d.clone(), r))
        .collect();
    (d, comps)
}

fn check_codim_one(t: &SubtorusTranslate) -> Result<()> {
    if t.lattice.rank() + 2 == t.ambient_rank() {
        Ok(())
    } else {
        Err(Error::NotCodimensionOne)
    }
}

/// ℚ-linear equivalence of two torsion translates of codimension-1 subtori:
/// equal iff the subtori coincide.
pub fn q_linear_equivalent(t1: &SubtorusTranslate, t2: &SubtorusTranslate) -> Result<bool> {
    check_codim_one(t1)?;
    check_codim_one(t2)?;
    Ok(t1.lattice == t2.lattice)
}

/// Iitaka dimension of `D = Σ m_i T_i` and whether `D` is ample, for a divisor
/// on a torus of lattice rank `ambient_rank`.
pub fn kappa_divisor_on(
    components: &[(BigRational, SubtorusTranslate)],
    ambient_rank: usize,
) -> Result<(usize, bool)> {
    let mut meet = Lattice::full(ambient_rank);
    for (mult, t) in components {
        check_codim_one(t)?;
        if t.ambient_rank() != ambient_rank {
            return Err(Error::DimensionMismatch(
                "component on a different torus".into(),
            ));
        }
        if !mult.is_positive() {
            return Err(Error::DimensionMismatch(
                "divisor multiplicities must be positive".into(),
            ));
        }
        meet = intersect_lattices(&meet, &t.lattice);
    }
    let n = ambient_rank / 2;
    let kappa = if components.is_empty() {
        0
    } else {
        n - meet.complex_dim()
    };
    Ok((kappa, kappa == n))
}

pub fn kappa_divisor(
    components: &[(BigRational, SubtorusTranslate)],
    a: &AbelianVarietyModel,
) -> Result<(usize, bool)> {
    kappa_divisor_on(components, a.lattice_rank())
}

/// An invariant complement to an invariant subtorus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub lattice: Lattice,
    /// `[ℤ^N : B ⊕ C]`, the order of the kernel of `B × C → A`.
    pub ker_mu_order: BigInt,
    /// The averaged form used to define the complement.
    pub form: IntMatrix,
}

/// Complement of `b` orthogonal for the `group`-average of the polarization.
///
/// `group` holds rational representations and must be closed under composition.
pub fn poincare_complement_on(
    b: &Lattice,
    group: &[IntMatrix],
    torus: &TorusModel,
) -> Result<Complement> {
    if !TorusModel::is_invariant(b, group) {
        return Err(Error::SubvarietyNotInvariant);
    }
    let e0 = torus.polarization();
    let mut form = IntMatrix::zeros(torus.rank, torus.rank);
    for g in group {
        form = &form + &(&(&g.transpose() * e0) * g);
    }
    if group.is_empty() {
        form = e0.clone();
    }
    let c = kernel_lattice(&(b.basis() * &form));

    if b.rank() + c.rank() != torus.rank {
        return Err(Error::Certificate(format!(
            "complement has rank {} next to rank {} in rank {}",
            c.rank(),
            b.rank(),
            torus.rank
        )));
    }
    if intersect_lattices(b, &c).rank() != 0 {
        return Err(Error::Certificate(
            "complement meets the subtorus in positive dimension".into(),
        ));
    }
    if !TorusModel::is_invariant(&c, group) {
        return Err(Error::Certificate("complement is not invariant".into()));
    }
    if !torus.is_complex_linear(&c) {
        return Err(Error::Certificate(
            "complement is not complex-linear".into(),
        ));
    }
    let ker_mu_order = b.sum(&c).index().expect("full rank checked above");
    Ok(Complement {
        lattice: c,
        ker_mu_order,
        form,
    })
}

/// [`poincare_complement_on`] for block-form endomorphisms of `a`.
pub fn poincare_complement(
    b: &Lattice,
    n0: &[EndoBlockMatrix],
    a: &AbelianVarietyModel,
) -> Result<(Lattice, BigInt)> {
    let reps = n0
        .iter()
        .map(|phi| rational_rep(phi, a))
        .collect::<Result<Vec<_>>>()?;
    let c = poincare_complement_on(b, &reps, &a.torus())?;
    Ok((c.lattice, c.ker_mu_order))
}
