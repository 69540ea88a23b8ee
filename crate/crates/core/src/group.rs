//! Finite groups of affine automorphisms `g = t_a ∘ φ` of a complex torus.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::{eigen_multiplicity, roots_of_unity_dividing, CycloField};
use crate::error::{Error, Result};
use crate::linalg::{solve_affine_mod_lattice, IntMatrix, Lattice, TorsionPoint};
use crate::variety::{
    analytic_rep, rational_rep, AbelianVarietyModel, EndoBlockMatrix, SubtorusTranslate,
};

/// Default bound on the size of a group closure.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// `x ↦ M·x + a` on `ℝ^N/ℤ^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    matrix: IntMatrix,
    translation: TorsionPoint,
}

impl AffineMap {
    pub fn new(matrix: IntMatrix, translation: TorsionPoint) -> Self {
        assert!(matrix.is_square(), "affine maps need a square matrix");
        assert_eq!(
            matrix.rows(),
            translation.dim(),
            "translation has the wrong length"
        );
        AffineMap {
            matrix,
            translation,
        }
    }

    pub fn identity(n: usize) -> Self {
        AffineMap::new(IntMatrix::identity(n), TorsionPoint::zero(n))
    }

    pub fn linear(matrix: IntMatrix) -> Self {
        let n = matrix.rows();
        AffineMap::new(matrix, TorsionPoint::zero(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The image of the origin.
    pub fn translation(&self) -> &TorsionPoint {
        &self.translation
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity() && self.translation.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            matrix: &self.matrix * &other.matrix,
            translation: self.translation.add(&other.translation.apply(&self.matrix)),
        }
    }

    /// Inverse of an automorphism; `None` when the matrix is not unimodular.
    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = self.matrix.inverse_unimodular()?;
        let translation = self.translation.apply(&inv).neg();
        Some(AffineMap {
            matrix: inv,
            translation,
        })
    }

    pub fn apply(&self, p: &TorsionPoint) -> TorsionPoint {
        p.apply(&self.matrix).add(&self.translation)
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &AffineMap) -> AffineMap {
        h.compose(self)
            .compose(&h.inverse().expect("conjugating by an automorphism"))
    }

    /// `(I − M)·x ≡ a`.
    pub fn fixed_locus(&self) -> FixedLocus {
        let n = self.rank();
        let sol =
            solve_affine_mod_lattice(&(&IntMatrix::identity(n) - &self.matrix), &self.translation);
        let components = sol
            .representatives
            .iter()
            .map(|r| SubtorusTranslate::new(sol.kernel.clone(), r))
            .collect();
        FixedLocus {
            empty: !sol.nonempty,
            dim: sol.kernel.complex_dim(),
            lattice: sol.kernel,
            components,
        }
    }

    pub fn image(&self, t: &SubtorusTranslate) -> SubtorusTranslate {
        t.image(&self.matrix, &self.translation)
    }

    /// Whether every point of `t` is fixed.
    pub fn fixes_pointwise(&self, t: &SubtorusTranslate) -> bool {
        t.lattice()
            .basis()
            .row_vectors()
            .all(|v| self.matrix.mul_vec(v).as_slice() == v)
            && self.apply(t.translate()) == *t.translate()
    }

    /// Multiplicative order of the matrix part.
    pub fn holonomy_order(&self) -> Result<u64> {
        matrix_order(&self.matrix)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{} ∘ {}", self.translation, self.matrix)
    }
}

/// The fixed points of one automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocus {
    pub empty: bool,
    /// Complex dimension of each component (meaningful when nonempty).
    pub dim: usize,
    /// The lattice shared by all components.
    pub lattice: Lattice,
    pub components: Vec<SubtorusTranslate>,
}

impl FixedLocus {
    /// Dimension, or `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        (!self.empty).then_some(self.dim)
    }
}

/// Minimal dimension of a faithful rational representation of `ℤ/m`.
fn min_rational_dim(m: u64) -> u64 {
    if m == 2 {
        return 1;
    }
    let mut total = 0;
    let mut rest = m;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut q = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                q *= p;
            }
            total += q - q / p;
        }
        p += 1;
    }
    if m % 4 == 2 {
        total -= 1;
    }
    total
}

/// Largest order of a finite-order element of `GL_n(ℤ)`.
pub fn max_finite_order(n: usize) -> u64 {
    // The optimum is a product of prime powers q with φ(q) ≤ n + 1.
    let n = n as u64;
    let limit = 2 * n + 2;
    let primes: Vec<u64> = (2..=limit)
        .filter(|&p| (2..p).all(|d| p % d != 0))
        .collect();
    fn walk(primes: &[u64], m: u64, n: u64, best: &mut u64) {
        let Some((&p, rest)) = primes.split_first() else {
            if min_rational_dim(m) <= n {
                *best = (*best).max(m);
            }
            return;
        };
        let mut q = 1;
        loop {
            walk(rest, m * q, n, best);
            q *= p;
            if q - q / p > n + 1 {
                break;
            }
        }
    }
    let mut best = 1;
    walk(&primes, 1, n, &mut best);
    best
}

/// Multiplicative order of an integer matrix; `InfiniteOrder` if it has none.
pub fn matrix_order(m: &IntMatrix) -> Result<u64> {
    let bound = max_finite_order(m.rows());
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Ok(k);
        }
        p = &p * m;
    }
    Err(Error::InfiniteOrder)
}

/// A finite group of affine maps of `ℝ^N/ℤ^N`, identity first.
#[derive(Clone, Debug)]
pub struct LatticeGroup {
    rank: usize,
    elements: Vec<AffineMap>,
    index: HashMap<AffineMap, usize>,
    fixed: OnceLock<Vec<FixedLocus>>,
    inverses: OnceLock<Vec<usize>>,
}

impl PartialEq for LatticeGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.elements == other.elements
    }
}

impl Eq for LatticeGroup {}

impl LatticeGroup {
    pub fn trivial(rank: usize) -> Self {
        LatticeGroup::from_elements(rank, vec![AffineMap::identity(rank)])
    }

    pub(crate) fn from_elements(rank: usize, elements: Vec<AffineMap>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        LatticeGroup {
            rank,
            elements,
            index,
            fixed: OnceLock::new(),
            inverses: OnceLock::new(),
        }
    }

    /// Breadth-first closure from the identity, multiplying by generators in order.
    pub fn close(rank: usize, gens: &[AffineMap], cap: usize) -> Result<Self> {
        let elements = bfs_closure(
            AffineMap::identity(rank),
            gens,
            cap,
            |x, g| g.compose(x),
            Clone::clone,
        )?;
        Ok(LatticeGroup::from_elements(rank, elements))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Complex dimension of the torus acted on.
    pub fn dim(&self) -> usize {
        self.rank / 2
    }

    pub fn elements(&self) -> &[AffineMap] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &AffineMap) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &AffineMap) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Distinct matrix parts, in element order.
    pub fn holonomy(&self) -> Vec<IntMatrix> {
        let mut seen = std::collections::HashSet::new();
        self.elements
            .iter()
            .filter(|g| seen.insert(g.matrix.clone()))
            .map(|g| g.matrix.clone())
            .collect()
    }

    /// Identity first and closed under composition. For a finite set of
    /// automorphisms this makes it a group.
    pub fn is_closed(&self) -> bool {
        self.elements.first().is_some_and(AffineMap::is_identity)
            && self.elements.iter().all(|a| {
                a.matrix.is_unimodular()
                    && self.elements.iter().all(|b| self.contains(&a.compose(b)))
            })
    }

    /// Fixed locus of each element, in element order.
    pub fn fixed_loci(&self) -> &[FixedLocus] {
        self.fixed
            .get_or_init(|| self.elements.iter().map(AffineMap::fixed_locus).collect())
    }

    /// Position of the inverse of each element.
    pub fn inverse_positions(&self) -> &[usize] {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|g| {
                    // g^{k-1} for the first k with g^k = 1.
                    let mut prev = AffineMap::identity(self.rank);
                    let mut p = g.clone();
                    while !p.is_identity() {
                        prev = p.clone();
                        p = p.compose(g);
                    }
                    self.position(&prev).expect("closed group")
                })
                .collect()
        })
    }

    /// Whether `self` is normalized by every element of `g`.
    pub fn is_normal_in(&self, g: &LatticeGroup) -> bool {
        let inv = g.inverse_positions();
        g.elements.iter().zip(inv).all(|(h, &hi)| {
            let h_inv = &g.elements[hi];
            self.elements
                .iter()
                .all(|n| self.contains(&h.compose(n).compose(h_inv)))
        })
    }

    /// Indices of the elements fixing `t` pointwise.
    pub fn pointwise_stabilizer(&self, t: &SubtorusTranslate) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].fixes_pointwise(t))
            .collect()
    }
}

/// Breadth-first closure keyed by a lattice-level representative.
fn bfs_closure<T: Clone>(
    identity: T,
    gens: &[T],
    cap: usize,
    mul: impl Fn(&T, &T) -> T,
    key: impl Fn(&T) -> AffineMap,
) -> Result<Vec<T>> {
    let mut seen: HashMap<AffineMap, ()> = HashMap::new();
    seen.insert(key(&identity), ());
    let mut out = vec![identity.clone()];
    if out.len() > cap {
        return Err(Error::GroupOrderExceedsCap(cap));
    }
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            let k = key(&y);
            if seen.contains_key(&k) {
                continue;
            }
            seen.insert(k, ());
            out.push(y.clone());
            if out.len() > cap {
                return Err(Error::GroupOrderExceedsCap(cap));
            }
            queue.push_back(y);
        }
    }
    Ok(out)
}

/// `t_a ∘ φ` with `φ` given in block form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAutomorphism {
    holonomy: EndoBlockMatrix,
    map: AffineMap,
}

impl AffineAutomorphism {
    pub fn new(
        holonomy: EndoBlockMatrix,
        translation: TorsionPoint,
        a: &AbelianVarietyModel,
    ) -> Result<Self> {
        let m = rational_rep(&holonomy, a)?;
        if translation.dim() != m.rows() {
            return Err(Error::DimensionMismatch(format!(
                "translation has {} coordinates, expected {}",
                translation.dim(),
                m.rows()
            )));
        }
        if !m.is_unimodular() {
            return Err(Error::NotAnEndomorphism(
                "holonomy is not invertible on the lattice".into(),
            ));
        }
        matrix_order(&m)?;
        Ok(AffineAutomorphism {
            holonomy,
            map: AffineMap::new(m, translation),
        })
    }

    pub fn identity(a: &AbelianVarietyModel) -> Self {
        AffineAutomorphism {
            holonomy: EndoBlockMatrix::identity(a.dim()),
            map: AffineMap::identity(a.lattice_rank()),
        }
    }

    pub fn holonomy(&self) -> &EndoBlockMatrix {
        &self.holonomy
    }

    pub fn translation(&self) -> &TorsionPoint {
        self.map.translation()
    }

    pub fn rational_rep(&self) -> &IntMatrix {
        self.map.matrix()
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }

    /// `(t_a∘φ)(t_b∘ψ) = t_{a+φ(b)} ∘ φψ`.
    pub fn compose(&self, other: &AffineAutomorphism, a: &AbelianVarietyModel) -> Self {
        AffineAutomorphism {
            holonomy: self.holonomy.compose(&other.holonomy, a),
            map: self.map.compose(&other.map),
        }
    }

    pub fn holonomy_order(&self) -> u64 {
        self.map
            .holonomy_order()
            .expect("validated at construction")
    }

    /// Same holonomy, translated by `a + φ(p) − p` (that is, `t_{-p} ∘ g ∘ t_p`).
    fn conjugate_by_translation(&self, p: &TorsionPoint) -> Self {
        let translation = self.translation().add(&p.apply(self.rational_rep())).sub(p);
        AffineAutomorphism {
            holonomy: self.holonomy.clone(),
            map: AffineMap::new(self.rational_rep().clone(), translation),
        }
    }
}

impl fmt::Display for AffineAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{} ∘ {}", self.translation(), self.holonomy)
    }
}

/// A finite group `G` acting on `A`, with its elements enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupAction {
    variety: AbelianVarietyModel,
    generators: Vec<AffineAutomorphism>,
    elements: Vec<AffineAutomorphism>,
    lattice_group: LatticeGroup,
    holonomy_group: Vec<EndoBlockMatrix>,
}

/// Closes `gens` under composition.
///
/// Elements are listed breadth-first from the identity, multiplying by the
/// generators in the order given.
pub fn close_group(
    variety: &AbelianVarietyModel,
    gens: &[AffineAutomorphism],
    cap: usize,
) -> Result<FiniteGroupAction> {
    let identity = AffineAutomorphism::identity(variety);
    let elements = bfs_closure(
        identity,
        gens,
        cap,
        |x, g| g.compose(x, variety),
        |x| x.map.clone(),
    )?;
    let lattice_group = LatticeGroup::from_elements(
        variety.lattice_rank(),
        elements.iter().map(|g| g.map.clone()).collect(),
    );
    let mut holonomy_group: Vec<EndoBlockMatrix> = Vec::new();
    for g in &elements {
        if !holonomy_group.contains(&g.holonomy) {
            holonomy_group.push(g.holonomy.clone());
        }
    }
    Ok(FiniteGroupAction {
        variety: variety.clone(),
        generators: gens.to_vec(),
        elements,
        lattice_group,
        holonomy_group,
    })
}

impl FiniteGroupAction {
    pub fn variety(&self) -> &AbelianVarietyModel {
        &self.variety
    }

    pub fn generators(&self) -> &[AffineAutomorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[AffineAutomorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The holonomy part `G₀`.
    pub fn holonomy_group(&self) -> &[EndoBlockMatrix] {
        &self.holonomy_group
    }

    /// The same group as affine maps of the lattice torus, in the same order.
    pub fn lattice_group(&self) -> &LatticeGroup {
        &self.lattice_group
    }

    /// `n`.
    pub fn dim(&self) -> usize {
        self.variety.dim()
    }

    /// Inverse of the element at `i`, by lookup.
    pub fn inverse_of(&self, i: usize) -> &AffineAutomorphism {
        &self.elements[self.lattice_group.inverse_positions()[i]]
    }

    /// `lcm(12, exponent of G₀)`: the smallest admissible field containing every eigenvalue.
    pub fn natural_conductor(&self) -> u64 {
        self.elements
            .iter()
            .map(AffineAutomorphism::holonomy_order)
            .fold(12u64, |acc, o| acc.lcm(&o))
    }
}

/// The fixed locus of `g`.
pub fn fixed_locus(g: &AffineAutomorphism) -> FixedLocus {
    g.map.fixed_locus()
}

/// Elements of `g` fixing `t` pointwise, and their number.
pub fn pointwise_stabilizer(
    t: &SubtorusTranslate,
    g: &FiniteGroupAction,
) -> (Vec<AffineAutomorphism>, usize) {
    let idx = g.lattice_group.pointwise_stabilizer(t);
    let n = idx.len();
    (idx.into_iter().map(|i| g.elements[i].clone()).collect(), n)
}

/// `p = Σ_g a_g / |G|` and the conjugate group `t_p⁻¹ ∘ G ∘ t_p`.
pub fn normalize_translations(g: &FiniteGroupAction) -> (TorsionPoint, FiniteGroupAction) {
    let n = BigInt::from(g.order());
    let rank = g.variety.lattice_rank();
    let p = g.elements.iter().fold(TorsionPoint::zero(rank), |acc, x| {
        acc.add(&x.translation().divide(&n))
    });
    let conj = |x: &AffineAutomorphism| x.conjugate_by_translation(&p);
    let elements: Vec<AffineAutomorphism> = g.elements.iter().map(conj).collect();
    let lattice_group =
        LatticeGroup::from_elements(rank, elements.iter().map(|x| x.map.clone()).collect());
    let out = FiniteGroupAction {
        variety: g.variety.clone(),
        generators: g.generators.iter().map(conj).collect(),
        elements,
        lattice_group,
        holonomy_group: g.holonomy_group.clone(),
    };
    (p, out)
}

/// `Σ r_j` over the eigenvalues `e^{2πi r_j}`, `r_j ∈ [0,1)`, of the analytic representation.
pub fn age(
    g: &AffineAutomorphism,
    a: &AbelianVarietyModel,
    field: &Arc<CycloField>,
) -> Result<BigRational> {
    let ord = g.holonomy_order();
    if !field.conductor().is_multiple_of(ord) {
        return Err(Error::FieldTooSmall {
            order: ord,
            conductor: field.conductor(),
        });
    }
    let m = analytic_rep(&g.holonomy, a, field)?;
    let mut total = BigRational::zero();
    for (k, d) in roots_of_unity_dividing(ord) {
        let zeta = field.root_of_unity(d, k)?;
        let mult = eigen_multiplicity(&m, &zeta);
        total += BigRational::new(BigInt::from(k * mult as i64), BigInt::from(d));
    }
    Ok(total)
}

/// Eigenvalue multiplicities of the analytic representation, as `(k, d, mult)`
/// for `ζ = e^{2πi k/d}` with nonzero multiplicity.
pub fn analytic_spectrum(
    g: &AffineAutomorphism,
    a: &AbelianVarietyModel,
    field: &Arc<CycloField>,
) -> Result<Vec<(i64, u64, usize)>> {
    let ord = g.holonomy_order();
    if !field.conductor().is_multiple_of(ord) {
        return Err(Error::FieldTooSmall {
            order: ord,
            conductor: field.conductor(),
        });
    }
    let m = analytic_rep(&g.holonomy, a, field)?;
    let mut out = Vec::new();
    for (k, d) in roots_of_unity_dividing(ord) {
        let mult = eigen_multiplicity(&m, &field.root_of_unity(d, k)?);
        if mult > 0 {
            out.push((k, d, mult));
        }
    }
    Ok(out)
}

/// An integer `m > 1` with `[m] ∘ g = g ∘ [m]` for every `g`, so that
/// multiplication by `m` descends to the quotient.
pub fn descend_multiplication(g: &FiniteGroupAction) -> Result<BigInt> {
    descend_multiplication_on(&g.lattice_group)
}

pub fn descend_multiplication_on(g: &LatticeGroup) -> Result<BigInt> {
    let l = g
        .elements()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.translation().order()));
    let m = l + BigInt::one();
    let mult = AffineMap::linear(IntMatrix::identity(g.rank()).scaled(&m));
    for x in g.elements() {
        if mult.compose(x) != x.compose(&mult) {
            return Err(Error::Certificate(format!(
                "[{m}] does not commute with {x}"
            )));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::EllipticFactor;

    fn ei2() -> AbelianVarietyModel {
        AbelianVarietyModel::new(vec![EllipticFactor::Zeta4, EllipticFactor::Zeta4]).unwrap()
    }

    fn e_ei() -> AbelianVarietyModel {
        AbelianVarietyModel::new(vec![
            EllipticFactor::Generic("E".into()),
            EllipticFactor::Zeta4,
        ])
        .unwrap()
    }

    fn e_e2() -> AbelianVarietyModel {
        AbelianVarietyModel::new(vec![
            EllipticFactor::Generic("E".into()),
            EllipticFactor::Generic("F".into()),
        ])
        .unwrap()
    }

    fn aut(a: &AbelianVarietyModel, diag: &[(i64, i64)], t: &[(i64, i64)]) -> AffineAutomorphism {
        AffineAutomorphism::new(
            EndoBlockMatrix::diagonal(diag),
            TorsionPoint::from_fractions(t),
            a,
        )
        .unwrap()
    }

    fn zero4() -> Vec<(i64, i64)> {
        vec![(0, 1); 4]
    }

    #[test]
    fn finite_order_bounds() {
        assert_eq!(max_finite_order(1), 2);
        assert_eq!(max_finite_order(2), 6);
        assert_eq!(max_finite_order(4), 12);
        assert_eq!(max_finite_order(6), 30);
        let hyperbolic = IntMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(matrix_order(&hyperbolic), Err(Error::InfiniteOrder));
        assert_eq!(
            matrix_order(&IntMatrix::from_i64(2, 2, &[0, -1, 1, 1])),
            Ok(6)
        );
    }

    #[test]
    fn closures() {
        let a = ei2();
        let g = close_group(
            &a,
            &[aut(&a, &[(0, 1), (0, 1)], &zero4())],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.elements()[0].is_identity());
        assert!(g.lattice_group().is_closed());

        let b = e_ei();
        let g = close_group(
            &b,
            &[aut(&b, &[(-1, 0), (0, 1)], &zero4())],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.holonomy_group().len(), 4);

        let c = e_e2();
        let bi = aut(&c, &[(1, 0), (-1, 0)], &[(1, 2), (0, 1), (0, 1), (0, 1)]);
        let g = close_group(&c, &[bi], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let a = ei2();
        let gen = aut(&a, &[(0, 1), (1, 0)], &[(1, 5), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(
            close_group(&a, &[gen], 3).unwrap_err(),
            Error::GroupOrderExceedsCap(3)
        );
    }

    #[test]
    fn rejects_non_automorphisms() {
        let a = ei2();
        let two = AffineAutomorphism::new(EndoBlockMatrix::scalar(2, 2), TorsionPoint::zero(4), &a);
        assert!(matches!(two, Err(Error::NotAnEndomorphism(_))));
        let shear = AffineAutomorphism::new(
            EndoBlockMatrix::from_i64(2, &[(1, 0), (1, 0), (0, 0), (1, 0)]),
            TorsionPoint::zero(4),
            &a,
        );
        assert_eq!(shear, Err(Error::InfiniteOrder));
    }

    #[test]
    fn fixed_loci_of_examples() {
        let a = ei2();
        let f = fixed_locus(&aut(&a, &[(0, 1), (0, 1)], &zero4()));
        assert_eq!(f.dimension(), Some(0));
        assert_eq!(f.components.len(), 4);

        let b = e_ei();
        let f = fixed_locus(&aut(&b, &[(1, 0), (-1, 0)], &zero4()));
        assert_eq!(f.dimension(), Some(1));
        assert_eq!(f.components.len(), 4);
        assert_eq!(f.lattice, b.factor_lattice(0));

        let f = fixed_locus(&aut(
            &b,
            &[(1, 0), (1, 0)],
            &[(1, 3), (0, 1), (0, 1), (0, 1)],
        ));
        assert!(f.empty);
        assert_eq!(f.dimension(), None);
    }

    #[test]
    fn stabilizer_of_fixed_curve() {
        let b = e_ei();
        let g = close_group(
            &b,
            &[aut(&b, &[(-1, 0), (0, 1)], &zero4())],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let t = SubtorusTranslate::new(b.factor_lattice(0), &TorsionPoint::zero(4));
        let (sub, e) = pointwise_stabilizer(&t, &g);
        assert_eq!(e, 2);
        assert_eq!(
            sub[1].holonomy(),
            &EndoBlockMatrix::diagonal(&[(1, 0), (-1, 0)])
        );
    }

    #[test]
    fn normalization() {
        let a = AbelianVarietyModel::new(vec![EllipticFactor::Generic("E".into())]).unwrap();
        let g = close_group(
            &a,
            &[aut(&a, &[(-1, 0)], &[(1, 2), (0, 1)])],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let (p, h) = normalize_translations(&g);
        assert_eq!(p, TorsionPoint::from_fractions(&[(1, 4), (0, 1)]));
        for x in g.elements() {
            assert!(p.sub(&x.map().apply(&p)).is_zero());
        }
        assert!(h.elements().iter().all(|x| x.translation().is_zero()));

        let b = e_ei();
        let g = close_group(
            &b,
            &[aut(&b, &[(-1, 0), (0, 1)], &zero4())],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let (p, h) = normalize_translations(&g);
        assert!(p.is_zero());
        assert_eq!(h, g);
    }

    #[test]
    fn ages() {
        let f = CycloField::new(12).unwrap();
        let a = ei2();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            age(&aut(&a, &[(0, 1), (0, 1)], &zero4()), &a, &f).unwrap(),
            half
        );
        assert_eq!(
            age(&aut(&a, &[(-1, 0), (-1, 0)], &zero4()), &a, &f).unwrap(),
            BigRational::one()
        );
        let b = e_ei();
        assert_eq!(
            age(&aut(&b, &[(-1, 0), (0, 1)], &zero4()), &b, &f).unwrap(),
            BigRational::new(3.into(), 4.into())
        );
        assert!(age(&AffineAutomorphism::identity(&b), &b, &f)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn field_too_small() {
        let a =
            AbelianVarietyModel::new(vec![EllipticFactor::Zeta6, EllipticFactor::Zeta4]).unwrap();
        let g = aut(&a, &[(0, 1), (0, 1)], &zero4());
        assert_eq!(g.holonomy_order(), 12);
        assert!(age(&g, &a, &CycloField::new(12).unwrap()).is_ok());

        let e = AbelianVarietyModel::new(vec![EllipticFactor::Generic("E".into()); 4]).unwrap();
        let companion = EndoBlockMatrix::from_i64(
            4,
            &[
                (0, 0),
                (0, 0),
                (0, 0),
                (-1, 0),
                (1, 0),
                (0, 0),
                (0, 0),
                (-1, 0),
                (0, 0),
                (1, 0),
                (0, 0),
                (-1, 0),
                (0, 0),
                (0, 0),
                (1, 0),
                (-1, 0),
            ],
        );
        let five = AffineAutomorphism::new(companion, TorsionPoint::zero(8), &e).unwrap();
        assert_eq!(five.holonomy_order(), 5);
        assert_eq!(
            age(&five, &e, &CycloField::new(12).unwrap()),
            Err(Error::FieldTooSmall {
                order: 5,
                conductor: 12
            })
        );
        assert_eq!(
            age(&five, &e, &CycloField::new(60).unwrap()).unwrap(),
            BigRational::from_integer(2.into())
        );
    }

    #[test]
    fn descending_multiplication() {
        let a = ei2();
        let g = close_group(
            &a,
            &[aut(&a, &[(0, 1), (0, 1)], &zero4())],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        assert_eq!(descend_multiplication(&g).unwrap(), BigInt::from(2));

        let c = e_e2();
        let bi = aut(&c, &[(1, 0), (-1, 0)], &[(1, 2), (0, 1), (0, 1), (0, 1)]);
        let g = close_group(&c, &[bi], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(descend_multiplication(&g).unwrap(), BigInt::from(3));
    }

    #[test]
    fn conductor_of_mixed_group() {
        let a =
            AbelianVarietyModel::new(vec![EllipticFactor::Zeta6, EllipticFactor::Zeta4]).unwrap();
        let g = close_group(
            &a,
            &[aut(&a, &[(0, 1), (0, 1)], &zero4())],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.natural_conductor(), 12);
    }
}
