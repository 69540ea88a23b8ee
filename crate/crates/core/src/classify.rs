//! Invariants of the quotient `X = A/G`: ramification, `κ(−K_X)`, the
//! Reid–Tai condition, irregularity and the combined report.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cyclotomic::CycloField;
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::group::{
    age, descend_multiplication, AffineAutomorphism, FiniteGroupAction, FixedLocus, LatticeGroup,
};
use crate::linalg::{intersect_lattices, kernel_lattice, IntMatrix, Lattice};
use crate::variety::{kappa_divisor_on, SubtorusTranslate};

/// Whether a fixed locus on an `n`-dimensional torus is a divisor.
pub(crate) fn is_divisorial(f: &FixedLocus, n: usize) -> bool {
    !f.empty && f.dim + 1 == n
}

/// No `g ≠ 1` fixes a divisor.
pub fn is_quasietale_on(g: &LatticeGroup) -> bool {
    let n = g.dim();
    g.fixed_loci().iter().all(|f| !is_divisorial(f, n))
}

pub fn is_quasietale(g: &FiniteGroupAction) -> bool {
    is_quasietale_on(g.lattice_group())
}

/// Divisorial part of the branch data of `A → A/G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    /// Distinct divisorial fixed components, sorted.
    pub components: Vec<SubtorusTranslate>,
    /// Order of the pointwise stabilizer of each component.
    pub indices: Vec<usize>,
    /// Partition of component indices into `G`-orbits, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// `1 − 1/e` per orbit.
    pub boundary_coeffs: Vec<BigRational>,
    /// Complex dimension of the intersection of the component lattices (`n` if none).
    pub intersection_dim: usize,
}

impl RamificationData {
    /// The divisor `Σ (e − 1)·T` pulling back `−K_X`.
    pub fn ramification_divisor(&self) -> Vec<(BigRational, SubtorusTranslate)> {
        self.components
            .iter()
            .zip(&self.indices)
            .map(|(t, &e)| (BigRational::from_integer(BigInt::from(e - 1)), t.clone()))
            .collect()
    }
}

pub fn ramification_data_on(g: &LatticeGroup) -> RamificationData {
    let n = g.dim();
    let mut components: Vec<SubtorusTranslate> = g
        .fixed_loci()
        .iter()
        .filter(|f| is_divisorial(f, n))
        .flat_map(|f| f.components.iter().cloned())
        .collect();
    components.sort();
    components.dedup();

    let indices: Vec<usize> = components
        .iter()
        .map(|t| g.pointwise_stabilizer(t).len())
        .collect();

    let mut orbit_of = vec![usize::MAX; components.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..components.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = g
            .elements()
            .iter()
            .map(|x| {
                let img = x.image(&components[i]);
                components
                    .binary_search(&img)
                    .expect("images of fixed divisors are fixed divisors")
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            orbit_of[j] = orbits.len();
        }
        orbits.push(orbit);
    }
    let boundary_coeffs = orbits
        .iter()
        .map(|o| {
            let e = BigInt::from(indices[o[0]]);
            BigRational::one() - BigRational::new(BigInt::one(), e)
        })
        .collect();

    let intersection_dim = if components.is_empty() {
        n
    } else {
        components
            .iter()
            .fold(Lattice::full(g.rank()), |acc, t| {
                intersect_lattices(&acc, t.lattice())
            })
            .complex_dim()
    };

    RamificationData {
        components,
        indices,
        orbits,
        boundary_coeffs,
        intersection_dim,
    }
}

pub fn ramification_data(g: &FiniteGroupAction) -> RamificationData {
    ramification_data_on(g.lattice_group())
}

/// `κ(−K_X) = n − dim ⋂ A_i` and whether `X` is ℚ-Fano (`κ = n`).
///
/// Computed from the Iitaka dimension of the ramification divisor, and
/// cross-checked against the intersection dimension.
pub fn kappa_anticanonical_on(g: &LatticeGroup) -> Result<(usize, bool)> {
    let data = ramification_data_on(g);
    let (kappa, ample) = kappa_divisor_on(&data.ramification_divisor(), g.rank())?;
    let n = g.dim();
    if kappa != n - data.intersection_dim {
        return Err(Error::Certificate(format!(
            "κ(−K) = {kappa} disagrees with n − dim ⋂ A_i = {}",
            n - data.intersection_dim
        )));
    }
    Ok((kappa, ample))
}

pub fn kappa_anticanonical(g: &FiniteGroupAction) -> Result<(usize, bool)> {
    kappa_anticanonical_on(g.lattice_group())
}

/// A failure of the Reid–Tai condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidTaiWitness {
    pub element: AffineAutomorphism,
    pub age: BigRational,
}

/// Whether every `g ≠ 1` with a fixed point and nontrivial holonomy has age ≥ 1.
pub fn reid_tai(
    g: &FiniteGroupAction,
    field: &Arc<CycloField>,
) -> Result<(bool, Option<ReidTaiWitness>)> {
    let fixed = g.lattice_group().fixed_loci();
    for (x, f) in g.elements().iter().zip(fixed) {
        if x.holonomy().is_identity() || f.empty {
            continue;
        }
        let a = age(x, g.variety(), field)?;
        if a < BigRational::one() {
            return Ok((
                false,
                Some(ReidTaiWitness {
                    element: x.clone(),
                    age: a,
                }),
            ));
        }
    }
    Ok((true, None))
}

/// `q(X)`: half the rank of the lattice fixed by all of `G₀`.
pub fn irregularity_on(g: &LatticeGroup) -> usize {
    let n = g.rank();
    let id = IntMatrix::identity(n);
    let stacked = g
        .holonomy()
        .iter()
        .fold(IntMatrix::zeros(0, n), |acc, m| acc.vstack(&(&id - m)));
    kernel_lattice(&stacked).complex_dim()
}

pub fn irregularity(g: &FiniteGroupAction) -> usize {
    irregularity_on(g.lattice_group())
}

/// A yes/no/undetermined answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::True => "true",
            TriState::False => "false",
            TriState::Unknown => "unknown",
        })
    }
}

/// A flag with the reason it was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedFlag {
    pub value: TriState,
    pub provenance: &'static str,
}

pub const PROV_NON_QUASIETALE: &str =
    "a quotient with divisorial ramification has κ = −∞ and is uniruled";
pub const PROV_REID_TAI: &str =
    "quasi-étale quotient: canonical and K ~ 0 exactly when Reid–Tai holds, uniruled otherwise";
pub const PROV_NOT_DECIDED: &str = "no applicable criterion";

/// Everything the toolkit decides about `X = A/G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n: usize,
    pub group_order: usize,
    pub conductor: u64,
    pub quasietale: bool,
    pub kappa_anticanonical: usize,
    pub q_fano: bool,
    pub fano_type: bool,
    pub q_abelian: bool,
    pub q_x: usize,
    pub q_circle: usize,
    pub reid_tai_holds: bool,
    pub reid_tai_witness: Option<ReidTaiWitness>,
    pub uniruled: DerivedFlag,
    pub canonical: DerivedFlag,
    pub kappa_zero: DerivedFlag,
    pub polarized_endo_m: BigInt,
    /// `κ(−K_X) + q°(X) > n`.
    pub noteworthy: bool,
}

/// The full report; `field` defaults to the smallest admissible cyclotomic field.
pub fn classification_report(
    g: &FiniteGroupAction,
    field: Option<&Arc<CycloField>>,
) -> Result<ClassificationReport> {
    let n = g.dim();
    let field = match field {
        Some(f) => f.clone(),
        None => CycloField::new(g.natural_conductor())?,
    };
    let quasietale = is_quasietale(g);
    let (kappa, q_fano) = kappa_anticanonical(g)?;
    let q_x = irregularity(g);
    let (reid_tai_holds, reid_tai_witness) = reid_tai(g, &field)?;
    let dec = decompose(g)?;
    let q_circle = dec.total_abelian_dim;
    let polarized_endo_m = descend_multiplication(g)?;

    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Certificate(what.to_string()))
        }
    };
    check(q_circle <= n, "q° exceeds n")?;
    check(
        quasietale == (q_circle == n),
        "quasi-étale disagrees with q° = n",
    )?;
    check(
        quasietale == (dec.fano_part.dim() == 0),
        "quasi-étale disagrees with a trivial Fano part",
    )?;
    check(q_fano == (q_circle == 0), "ℚ-Fano disagrees with q° = 0")?;
    check(kappa + q_circle >= n, "κ(−K) + q° < n")?;
    check(q_x <= q_circle, "q(X) exceeds q°")?;

    let (uniruled, canonical, kappa_zero) = if quasietale {
        (
            DerivedFlag {
                value: (!reid_tai_holds).into(),
                provenance: PROV_REID_TAI,
            },
            DerivedFlag {
                value: reid_tai_holds.into(),
                provenance: PROV_REID_TAI,
            },
            DerivedFlag {
                value: reid_tai_holds.into(),
                provenance: PROV_REID_TAI,
            },
        )
    } else {
        (
            DerivedFlag {
                value: TriState::True,
                provenance: PROV_NON_QUASIETALE,
            },
            DerivedFlag {
                value: TriState::Unknown,
                provenance: PROV_NOT_DECIDED,
            },
            DerivedFlag {
                value: TriState::False,
                provenance: PROV_NON_QUASIETALE,
            },
        )
    };

    Ok(ClassificationReport {
        n,
        group_order: g.order(),
        conductor: field.conductor(),
        quasietale,
        kappa_anticanonical: kappa,
        q_fano,
        fano_type: q_circle == 0,
        q_abelian: quasietale,
        q_x,
        q_circle,
        reid_tai_holds,
        reid_tai_witness,
        uniruled,
        canonical,
        kappa_zero,
        polarized_endo_m,
        noteworthy: kappa + q_circle > n,
    })
}
