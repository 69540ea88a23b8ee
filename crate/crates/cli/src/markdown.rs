use std::fmt::Write;

use crate::report::{Flag, ReportDocument, Truth};

fn truth(t: Truth) -> &'static str {
    match t {
        Truth::True => "yes",
        Truth::False => "no",
        Truth::Unknown => "unknown",
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn flag(out: &mut String, name: &str, f: &Flag) {
    let _ = writeln!(out, "| {name} | {} | {} |", truth(f.value), f.provenance);
}

/// Human-readable rendering of a report.
pub fn render(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let factors: Vec<String> = doc
        .input
        .factors
        .iter()
        .map(|f| match (&f.cm, &f.label) {
            (crate::input::Cm::Zeta4, _) => "E_i".to_string(),
            (crate::input::Cm::Zeta6, _) => "E_ω".to_string(),
            (crate::input::Cm::Generic, l) => l.clone().unwrap_or_else(|| "E".into()),
        })
        .collect();
    let _ = writeln!(out, "# fqav {}: {}", doc.command, factors.join(" × "));
    let _ = writeln!(out);
    let g = &doc.group;
    let _ = writeln!(
        out,
        "Group of order {} acting on a {}-dimensional variety (holonomy order {}, conductor {}).",
        g.order, g.dim, g.holonomy_order, g.natural_conductor
    );

    if let Some(c) = &doc.classification {
        let _ = writeln!(out, "\n## Classification\n");
        let _ = writeln!(out, "| invariant | value |\n|---|---|");
        let _ = writeln!(out, "| quasi-étale | {} |", yes(c.quasietale));
        let _ = writeln!(out, "| κ(−K_X) | {} |", c.kappa_anticanonical);
        let _ = writeln!(out, "| ℚ-Fano | {} |", yes(c.q_fano));
        let _ = writeln!(out, "| ℚ-abelian | {} |", yes(c.q_abelian));
        let _ = writeln!(out, "| q(X) | {} |", c.q_x);
        let _ = writeln!(out, "| q°(X) | {} |", c.q_circle);
        let _ = writeln!(out, "| Reid–Tai | {} |", yes(c.reid_tai_holds));
        let _ = writeln!(out, "| descending [m] | {} |", c.polarized_endo_m);
        let _ = writeln!(out, "\n| derived | value | reason |\n|---|---|---|");
        flag(&mut out, "uniruled", &c.uniruled);
        flag(&mut out, "canonical", &c.canonical);
        flag(&mut out, "K_X ~ℚ 0", &c.kappa_zero);
        if c.noteworthy {
            let _ = writeln!(out, "\nκ(−K_X) + q°(X) > n.");
        }
    }

    if let Some(r) = &doc.ramification {
        let _ = writeln!(out, "\n## Ramification\n");
        if r.components.is_empty() {
            let _ = writeln!(out, "No divisorial fixed locus.");
        } else {
            let _ = writeln!(
                out,
                "| # | translate | inertia | orbit |\n|---|---|---|---|"
            );
            for (i, c) in r.components.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "| {i} | ({}) | {} | {} |",
                    c.translate.join(", "),
                    c.inertia_order,
                    c.orbit
                );
            }
            let _ = writeln!(
                out,
                "\nBoundary coefficients: {}.",
                r.boundary_coeffs.join(", ")
            );
        }
    }

    if let Some(rt) = &doc.reid_tai {
        let _ = writeln!(out, "\n## Reid–Tai\n");
        let _ = writeln!(
            out,
            "Holds: {} (computed in ℚ(ζ_{})).",
            yes(rt.holds),
            rt.conductor
        );
        if let Some(w) = &rt.witness {
            let _ = writeln!(
                out,
                "Witness of age {}: holonomy {:?}.",
                w.age, w.element.holonomy
            );
        }
    }

    if let Some(d) = &doc.decomposition {
        let _ = writeln!(out, "\n## Decomposition\n");
        let _ = writeln!(
            out,
            "Abelian part of dimension {} in {} stage(s); Fano part of dimension {} with a group of order {} and κ = {}.",
            d.total_abelian_dim,
            d.stages.len(),
            d.fano_part.dim,
            d.fano_part.group_order,
            d.fano_kappa
        );
        if !d.stages.is_empty() {
            let _ = writeln!(
                out,
                "\n| stage | dim B | #N | #ker μ | #Ñ | #N_C |\n|---|---|---|---|---|---|"
            );
            for (i, s) in d.stages.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "| {i} | {} | {} | {} | {} | {} |",
                    s.abelian_dim, s.n_order, s.ker_mu_order, s.n_tilde_order, s.n_c_order
                );
            }
        }
    }
    out
}
