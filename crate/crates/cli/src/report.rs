//! The serialized report and its construction from core results.

use std::collections::BTreeMap;

use fqav_core::{
    AffineAutomorphism, ClassificationReport, DecompositionResult, Error, FiniteGroupAction,
    Lattice, RamificationData, ReidTaiWitness, TorsionPoint, TriState,
};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::input::{ActionInput, GeneratorInput, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub input: ActionInput,
    pub group: GroupSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramification: Option<RamificationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reid_tai: Option<ReidTaiSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
}

impl ReportDocument {
    pub fn new(command: &str, input: ActionInput, group: &FiniteGroupAction) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            group: GroupSummary::of(group),
            classification: None,
            ramification: None,
            reid_tai: None,
            decomposition: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSummary {
    pub order: usize,
    pub dim: usize,
    pub lattice_rank: usize,
    pub holonomy_order: usize,
    pub natural_conductor: u64,
}

impl GroupSummary {
    fn of(g: &FiniteGroupAction) -> Self {
        GroupSummary {
            order: g.order(),
            dim: g.dim(),
            lattice_rank: g.variety().lattice_rank(),
            holonomy_order: g.holonomy_group().len(),
            natural_conductor: g.natural_conductor(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl From<TriState> for Truth {
    fn from(t: TriState) -> Self {
        match t {
            TriState::True => Truth::True,
            TriState::False => Truth::False,
            TriState::Unknown => Truth::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flag {
    pub value: Truth,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationSection {
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
    pub uniruled: Flag,
    pub canonical: Flag,
    pub kappa_zero: Flag,
    pub polarized_endo_m: String,
    pub noteworthy: bool,
    /// Why each numeric or boolean field has its value.
    pub provenance: BTreeMap<String, String>,
}

const FIELD_PROVENANCE: &[(&str, &str)] = &[
    (
        "quasietale",
        "no nontrivial element fixes a divisor pointwise",
    ),
    (
        "kappa_anticanonical",
        "n minus the dimension of the common tangent lattice of the ramification divisor",
    ),
    ("q_fano", "ℚ-Fano exactly when κ(−K_X) = n"),
    (
        "fano_type",
        "no abelian factor survives in the structure decomposition",
    ),
    (
        "q_abelian",
        "ℚ-abelian exactly when the quotient is quasi-étale",
    ),
    (
        "q_x",
        "half the rank of the lattice fixed by the holonomy group",
    ),
    (
        "q_circle",
        "dimension of the abelian factor of the structure decomposition",
    ),
    (
        "reid_tai_holds",
        "every element with a fixed point and nontrivial holonomy has age at least 1",
    ),
    (
        "polarized_endo_m",
        "least m > 1 with [m] commuting with every element",
    ),
    ("noteworthy", "κ(−K_X) + q°(X) exceeds n"),
];

impl ClassificationSection {
    pub fn of(r: &ClassificationReport) -> Self {
        let flag = |f: &fqav_core::DerivedFlag| Flag {
            value: f.value.into(),
            provenance: f.provenance.to_string(),
        };
        ClassificationSection {
            n: r.n,
            group_order: r.group_order,
            conductor: r.conductor,
            quasietale: r.quasietale,
            kappa_anticanonical: r.kappa_anticanonical,
            q_fano: r.q_fano,
            fano_type: r.fano_type,
            q_abelian: r.q_abelian,
            q_x: r.q_x,
            q_circle: r.q_circle,
            reid_tai_holds: r.reid_tai_holds,
            uniruled: flag(&r.uniruled),
            canonical: flag(&r.canonical),
            kappa_zero: flag(&r.kappa_zero),
            polarized_endo_m: r.polarized_endo_m.to_string(),
            noteworthy: r.noteworthy,
            provenance: FIELD_PROVENANCE
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub dim: usize,
    pub lattice: Vec<Vec<String>>,
    pub translate: Vec<String>,
    pub inertia_order: usize,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamificationSection {
    pub quasietale: bool,
    pub components: Vec<ComponentDoc>,
    pub orbits: Vec<Vec<usize>>,
    pub boundary_coeffs: Vec<String>,
    pub intersection_dim: usize,
}

impl RamificationSection {
    pub fn of(d: &RamificationData) -> Self {
        let orbit_of = |i: usize| {
            d.orbits
                .iter()
                .position(|o| o.contains(&i))
                .expect("orbits partition")
        };
        RamificationSection {
            quasietale: d.components.is_empty(),
            components: d
                .components
                .iter()
                .zip(&d.indices)
                .enumerate()
                .map(|(i, (t, &e))| ComponentDoc {
                    dim: t.dim(),
                    lattice: lattice_rows(t.lattice()),
                    translate: point(t.translate()),
                    inertia_order: e,
                    orbit: orbit_of(i),
                })
                .collect(),
            orbits: d.orbits.clone(),
            boundary_coeffs: d.boundary_coeffs.iter().map(|c| c.to_string()).collect(),
            intersection_dim: d.intersection_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub element: GeneratorInput,
    pub age: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReidTaiSection {
    pub conductor: u64,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

impl ReidTaiSection {
    pub fn of(conductor: u64, holds: bool, w: Option<&ReidTaiWitness>) -> Result<Self, Error> {
        Ok(ReidTaiSection {
            conductor,
            holds,
            witness: w
                .map(|w| {
                    Ok::<_, Error>(WitnessDoc {
                        element: element(&w.element)?,
                        age: w.age.to_string(),
                    })
                })
                .transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SublatticeDoc {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanoPartDoc {
    pub dim: usize,
    pub group_order: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageDoc {
    pub abelian_dim: usize,
    pub n_order: usize,
    pub ker_mu_order: String,
    pub n_tilde_order: usize,
    pub n_c_order: usize,
    pub quasietale_outside_check: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    QAbelian,
    QFano,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionSection {
    pub verdict: Verdict,
    pub abelian_factors: Vec<SublatticeDoc>,
    pub total_abelian_dim: usize,
    pub fano_part: FanoPartDoc,
    pub stages: Vec<StageDoc>,
    pub fano_kappa: usize,
    pub fano_kappa_check: bool,
}

impl DecompositionSection {
    pub fn of(d: &DecompositionResult) -> Self {
        let fano_dim = d.fano_part.dim();
        DecompositionSection {
            verdict: match (d.total_abelian_dim, fano_dim) {
                (_, 0) => Verdict::QAbelian,
                (0, _) => Verdict::QFano,
                _ => Verdict::Mixed,
            },
            abelian_factors: d
                .abelian_factors
                .iter()
                .map(|l| SublatticeDoc {
                    dim: l.complex_dim(),
                    basis: lattice_rows(l),
                })
                .collect(),
            total_abelian_dim: d.total_abelian_dim,
            fano_part: FanoPartDoc {
                dim: fano_dim,
                group_order: d.fano_part.group.order(),
                basis: lattice_rows(&d.fano_part.lattice),
            },
            stages: d
                .stages
                .iter()
                .map(|s| StageDoc {
                    abelian_dim: s.abelian_dim,
                    n_order: s.n_order,
                    ker_mu_order: s.ker_mu_order.to_string(),
                    n_tilde_order: s.n_tilde_order,
                    n_c_order: s.n_c_order,
                    quasietale_outside_check: s.quasietale_outside_check,
                })
                .collect(),
            fano_kappa: d.fano_kappa,
            fano_kappa_check: d.fano_kappa_check,
        }
    }
}

fn lattice_rows(l: &Lattice) -> Vec<Vec<String>> {
    l.basis()
        .row_vectors()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn point(p: &TorsionPoint) -> Vec<String> {
    p.coords().iter().map(|c| c.to_string()).collect()
}

fn element(g: &AffineAutomorphism) -> Result<GeneratorInput, Error> {
    let h = g.holonomy();
    let n = h.size();
    let small = |x: &num_bigint::BigInt| {
        x.to_i64().ok_or_else(|| {
            Error::Certificate(format!(
                "holonomy entry {x} of a finite-order element overflows"
            ))
        })
    };
    let holonomy = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let (c, d) = h.block(j, k);
                    Ok([small(c)?, small(d)?])
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(GeneratorInput {
        holonomy,
        translation: point(g.translation()),
    })
}
