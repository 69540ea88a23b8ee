//! Splitting `X = A/G` into an abelian factor and a ℚ-Fano remainder.
//!
//! Each stage takes the subgroup `N` generated by elements fixing a divisor,
//! its fixed torus `B`, and an invariant complement `C`. Then
//! `B × (C/N_C) → A/N → A/G` is quasi-étale, and the process recurses on
//! `(C, N_C)` until the ramification subgroup is trivial (the rest is abelian)
//! or has no fixed torus (the rest is ℚ-Fano).

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::classify::{is_divisorial, is_quasietale_on, kappa_anticanonical_on};
use crate::error::{Error, Result};
use crate::group::{AffineAutomorphism, AffineMap, FiniteGroupAction, LatticeGroup};
use crate::linalg::{kernel_lattice, saturate, IntMatrix, Lattice, RatMatrix, TorsionPoint};
use crate::variety::{poincare_complement_on, TorusModel};

/// A finite group acting on a subtorus of the original `A`.
///
/// `lattice` is the subtorus inside the original `ℤ^{2n}`; the group and the
/// torus data are expressed in the coordinates of its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeAction {
    pub lattice: Lattice,
    pub group: LatticeGroup,
    pub torus: TorusModel,
}

impl SublatticeAction {
    /// The whole of `A` with the whole group.
    pub fn from_action(g: &FiniteGroupAction) -> Self {
        SublatticeAction {
            lattice: Lattice::full(g.variety().lattice_rank()),
            group: g.lattice_group().clone(),
            torus: g.variety().torus(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lattice.complex_dim()
    }

    /// The point of the original torus with coordinates `y` in this basis.
    pub fn embed_point(&self, y: &TorsionPoint) -> TorsionPoint {
        TorsionPoint::new(self.lattice.basis().transpose().mul_rat_vec(y.coords()))
    }

    /// A sublattice given in local coordinates, as a sublattice of the original lattice.
    pub fn embed_lattice(&self, l: &Lattice) -> Lattice {
        saturate(&Lattice::from_matrix(&(l.basis() * self.lattice.basis())))
    }

    fn zero(ambient: usize) -> Self {
        SublatticeAction {
            lattice: Lattice::zero(ambient),
            group: LatticeGroup::trivial(0),
            torus: TorusModel::point(),
        }
    }
}

/// Certificates recorded while splitting off one abelian factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCertificate {
    pub abelian_dim: usize,
    /// Order of the ramification subgroup.
    pub n_order: usize,
    /// `[ℤ^N : B ⊕ C]`.
    pub ker_mu_order: BigInt,
    /// Order of the lifted group acting on `B × C` (`0` when nothing was split).
    pub n_tilde_order: usize,
    /// Order of the restricted group passed to the next stage.
    pub n_c_order: usize,
    pub quasietale_outside_check: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// The abelian factor split off at each stage, in the original lattice.
    pub abelian_factors: Vec<Lattice>,
    pub total_abelian_dim: usize,
    pub fano_part: SublatticeAction,
    pub stages: Vec<StageCertificate>,
    /// `κ(−K)` of the ℚ-Fano part.
    pub fano_kappa: usize,
    /// `κ(−K)` equals the dimension of the ℚ-Fano part.
    pub fano_kappa_check: bool,
}

/// The subgroup generated by the elements fixing a divisor, checked normal.
pub fn ramification_subgroup_on(g: &LatticeGroup) -> Result<LatticeGroup> {
    let n = g.dim();
    let gens: Vec<AffineMap> = g
        .elements()
        .iter()
        .zip(g.fixed_loci())
        .filter(|(_, f)| is_divisorial(f, n))
        .map(|(x, _)| x.clone())
        .collect();
    let sub = LatticeGroup::close(g.rank(), &gens, g.order())
        .map_err(|_| Error::Certificate("ramification subgroup escapes the group".into()))?;
    if !sub.elements().iter().all(|x| g.contains(x)) {
        return Err(Error::Certificate(
            "ramification subgroup escapes the group".into(),
        ));
    }
    if !sub.is_normal_in(g) {
        return Err(Error::Certificate(
            "ramification subgroup is not normal".into(),
        ));
    }
    Ok(sub)
}

pub fn ramification_subgroup(g: &FiniteGroupAction) -> Result<FiniteGroupAction> {
    let sub = ramification_subgroup_on(g.lattice_group())?;
    let gens: Vec<AffineAutomorphism> = sub
        .elements()
        .iter()
        .skip(1)
        .map(|m| {
            let i = g.lattice_group().position(m).expect("subgroup of g");
            g.elements()[i].clone()
        })
        .collect();
    crate::group::close_group(g.variety(), &gens, g.order())
}

/// For every `g ∉ N` and `h ∈ N`, `Fix(h∘g)` has codimension at least 2.
pub fn quasietale_outside_on(g: &LatticeGroup, n: &LatticeGroup) -> bool {
    let dim = g.dim();
    let fixed = g.fixed_loci();
    g.elements().iter().filter(|x| !n.contains(x)).all(|x| {
        n.elements().iter().all(|h| {
            let hx = h.compose(x);
            let f = match g.position(&hx) {
                Some(i) => fixed[i].clone(),
                None => hx.fixed_locus(),
            };
            f.empty || f.dim + 2 <= dim
        })
    })
}

pub fn quasietale_outside(g: &FiniteGroupAction, n: &FiniteGroupAction) -> bool {
    quasietale_outside_on(g.lattice_group(), n.lattice_group())
}

/// Saturated common kernel of `I − φ` over the holonomy of `n`.
pub fn invariant_fixed_torus_on(n: &LatticeGroup) -> Lattice {
    let r = n.rank();
    let id = IntMatrix::identity(r);
    let stacked = n
        .holonomy()
        .iter()
        .fold(IntMatrix::zeros(0, r), |acc, m| acc.vstack(&(&id - m)));
    kernel_lattice(&stacked)
}

pub fn invariant_fixed_torus(n: &FiniteGroupAction) -> Lattice {
    invariant_fixed_torus_on(n.lattice_group())
}

/// The lift of `N` to `B × C` and its part acting trivially on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAction {
    /// `Ñ`, acting on `ℝ^{b+c}/ℤ^{b+c}` in the coordinates of the bases of `B` and `C`.
    pub n_tilde: LatticeGroup,
    /// `N_C`, in the coordinates of the basis of `C`.
    pub n_c: LatticeGroup,
    /// `[ℤ^N : B ⊕ C]`.
    pub ker_mu_order: BigInt,
}

fn rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Matrix of `m` restricted to the invariant lattice `l`, in `l`'s basis.
fn restrict_matrix(m: &IntMatrix, l: &Lattice) -> Result<IntMatrix> {
    let k = l.rank();
    let cols = l
        .basis()
        .row_vectors()
        .map(|w| {
            l.coordinates(&rat_vec(&m.mul_vec(w))).ok_or_else(|| {
                Error::Certificate("holonomy does not preserve the sublattice".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(k, cols)
        .transpose()
        .to_integer()
        .ok_or_else(|| Error::Certificate("restricted holonomy is not integral".into()))
}

/// Lifts each `t_a ∘ φ ∈ N` to `B × C` through the isogeny `B × C → A`.
pub fn split_action(n: &LatticeGroup, b: &Lattice, c: &Lattice) -> Result<SplitAction> {
    let (kb, kc) = (b.rank(), c.rank());
    let sum = b.sum(c);
    let ker_mu_order = sum
        .index()
        .ok_or_else(|| Error::Certificate("B ⊕ C does not have full rank".into()))?;
    let stacked = b.basis().vstack(c.basis()).to_rational();
    let split = |v: &[BigRational]| -> Result<(Vec<BigRational>, Vec<BigRational>)> {
        let y = stacked
            .solve_left(v)
            .ok_or_else(|| Error::Certificate("rational split along B ⊕ C failed".into()))?;
        Ok((y[..kb].to_vec(), y[kb..].to_vec()))
    };
    let cosets: Vec<(Vec<BigRational>, Vec<BigRational>)> = sum
        .coset_representatives()
        .iter()
        .map(|z| split(&rat_vec(z)))
        .collect::<Result<_>>()?;

    let mut lifted: Vec<AffineMap> = Vec::new();
    let mut seen = HashSet::new();
    for g in n.elements() {
        let mb = restrict_matrix(g.matrix(), b)?;
        if !mb.is_identity() {
            return Err(Error::Certificate("N does not fix B pointwise".into()));
        }
        let mc = restrict_matrix(g.matrix(), c)?;
        let matrix = IntMatrix::block_diag(&[mb, mc]);
        let (bt, ct) = split(g.translation().coords())?;
        for (zb, zc) in &cosets {
            let mut coords: Vec<BigRational> = bt.iter().zip(zb).map(|(x, y)| x + y).collect();
            coords.extend(ct.iter().zip(zc).map(|(x, y)| x + y));
            let h = AffineMap::new(matrix.clone(), TorsionPoint::new(coords));
            if seen.insert(h.clone()) {
                lifted.push(h);
            }
        }
    }
    let n_tilde = LatticeGroup::from_elements(kb + kc, lifted);
    let expected = BigInt::from(n.order()) * &ker_mu_order;
    if BigInt::from(n_tilde.order()) != expected {
        return Err(Error::Certificate(format!(
            "|Ñ| = {} but |N|·|ker μ| = {expected}",
            n_tilde.order()
        )));
    }
    if !n_tilde.is_closed() {
        return Err(Error::Certificate(
            "Ñ is not closed under composition".into(),
        ));
    }

    let n_c_elems: Vec<AffineMap> = n_tilde
        .elements()
        .iter()
        .filter(|h| h.translation().coords()[..kb].iter().all(Zero::is_zero))
        .map(|h| {
            let idx: Vec<usize> = (kb..kb + kc).collect();
            AffineMap::new(
                h.matrix()
                    .select_rows(idx.iter().copied())
                    .select_cols(&idx),
                TorsionPoint::new(h.translation().coords()[kb..].to_vec()),
            )
        })
        .collect();
    let n_c = LatticeGroup::from_elements(kc, n_c_elems);
    if !n_c.is_closed() {
        return Err(Error::Certificate(
            "N_C is not closed under composition".into(),
        ));
    }
    Ok(SplitAction {
        n_tilde,
        n_c,
        ker_mu_order,
    })
}

/// Runs the splitting to completion on `g`.
pub fn decompose(g: &FiniteGroupAction) -> Result<DecompositionResult> {
    decompose_action(&SublatticeAction::from_action(g))
}

pub fn decompose_action(start: &SublatticeAction) -> Result<DecompositionResult> {
    let ambient = start.lattice.ambient();
    let mut current = start.clone();
    let mut abelian_factors = Vec::new();
    let mut stages = Vec::new();

    loop {
        let g = &current.group;
        let n = ramification_subgroup_on(g)?;
        let outside = quasietale_outside_on(g, &n);
        if !outside {
            return Err(Error::Certificate(format!(
                "an element outside N fixes a divisor at stage {}",
                stages.len()
            )));
        }

        if n.is_trivial() {
            if current.lattice.rank() > 0 {
                abelian_factors.push(current.lattice.clone());
            }
            current = SublatticeAction::zero(ambient);
            break;
        }

        let b = invariant_fixed_torus_on(&n);
        if !current.torus.is_complex_linear(&b) {
            return Err(Error::Certificate(
                "fixed torus is not complex-linear".into(),
            ));
        }
        if b.rank() == 0 {
            current.group = n;
            break;
        }

        let holonomy = n.holonomy();
        let comp = poincare_complement_on(&b, &holonomy, &current.torus)?;
        let c = comp.lattice;
        let split = split_action(&n, &b, &c)?;
        if split.ker_mu_order != comp.ker_mu_order {
            return Err(Error::Certificate("ker μ orders disagree".into()));
        }
        abelian_factors.push(current.embed_lattice(&b));
        stages.push(StageCertificate {
            abelian_dim: b.complex_dim(),
            n_order: n.order(),
            ker_mu_order: split.ker_mu_order.clone(),
            n_tilde_order: split.n_tilde.order(),
            n_c_order: split.n_c.order(),
            quasietale_outside_check: outside,
        });
        let torus = current.torus.restrict(&c)?;
        current = SublatticeAction {
            lattice: current.embed_lattice(&c),
            group: split.n_c,
            torus,
        };
    }

    let dim = current.dim();
    let (fano_kappa, _) = kappa_anticanonical_on(&current.group)?;
    let fano_kappa_check = fano_kappa == dim;
    if !fano_kappa_check {
        return Err(Error::Certificate(format!(
            "ℚ-Fano part of dimension {dim} has κ(−K) = {fano_kappa}"
        )));
    }
    if dim > 0 && is_quasietale_on(&current.group) {
        return Err(Error::Certificate("ℚ-Fano part is quasi-étale".into()));
    }
    let total_abelian_dim = abelian_factors.iter().map(Lattice::complex_dim).sum();
    Ok(DecompositionResult {
        abelian_factors,
        total_abelian_dim,
        fano_part: current,
        stages,
        fano_kappa,
        fano_kappa_check,
    })
}
