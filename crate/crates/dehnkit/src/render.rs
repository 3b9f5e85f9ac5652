//! Text, JSON and LaTeX rendering of diagrams, presentations and matrices.

use crate::diagram::analysis::{Analyzed, SpecialLabels};
use crate::matrices::{IntMatrix, LaurentMatrix};
use crate::presentation::Presentation;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn int_matrix_json(m: &IntMatrix) -> Value {
    json!({
        "rows": m.row_tags,
        "cols": m.col_tags,
        "entries": (0..m.rows).map(|i| {
            (0..m.cols).map(|j| big_to_json(m.at(i, j))).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

fn big_to_json(v: &num_bigint::BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn laurent_matrix_json(m: &LaurentMatrix) -> Value {
    json!({
        "rows": m.row_tags,
        "cols": m.col_tags,
        "entries": (0..m.rows).map(|i| {
            (0..m.cols).map(|j| m.at(i, j).render()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn presentation_json(p: &Presentation) -> Value {
    json!({
        "kind": format!("{:?}", p.kind),
        "generators": p.generators.iter().map(|g| json!({
            "name": g.name,
            "provenance": format!("{:?}", g.provenance),
        })).collect::<Vec<_>>(),
        "relators": p.relators.iter().map(|r| json!({
            "word": r.word.letters.iter().map(|l| json!([l.gen.name, l.exp])).collect::<Vec<_>>(),
            "text": r.word.to_string(),
            "region": r.region,
            "crossing": r.crossing,
        })).collect::<Vec<_>>(),
    })
}

pub fn presentation_latex(p: &Presentation) -> String {
    let gens: Vec<String> = p.generators.iter().map(|g| latex_name(&g.name)).collect();
    let rels: Vec<String> = p
        .relators
        .iter()
        .map(|r| {
            r.word
                .letters
                .iter()
                .map(|l| {
                    if l.exp == 1 {
                        latex_name(&l.gen.name)
                    } else {
                        format!("\\overline{{{}}}", latex_name(&l.gen.name))
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!(
        "\\langle {} \\mid {} \\rangle",
        gens.join(", "),
        rels.join(",\\ ")
    )
}

fn latex_name(name: &str) -> String {
    // U12 -> U_{12}
    let split = name.find(|c: char| c.is_ascii_digit());
    match split {
        Some(i) => format!("{}_{{{}}}", &name[..i], &name[i..]),
        None => name.to_string(),
    }
}

pub fn diagram_json(an: &Analyzed) -> Value {
    let d = &an.diagram;
    json!({
        "pd": d.source,
        "crossings": d.crossings.iter().map(|c| c.slots).collect::<Vec<_>>(),
        "edges": d.edges.iter().map(|e| json!({
            "label": e.label,
            "tail": [e.tail.0, e.tail.1],
            "head": [e.head.0, e.head.1],
            "component": e.component,
        })).collect::<Vec<_>>(),
        "components": d.components.iter().map(|c| json!({
            "edges": c.edges,
            "piece": c.piece,
        })).collect::<Vec<_>>(),
        "nesting": d.nesting,
        "faces": an.faces.iter().map(|f| json!({
            "id": f.id,
            "corners": f.cycles.iter().flatten().collect::<Vec<_>>(),
            "unbounded": f.is_unbounded,
            "shaded": an.shading.is_shaded(f.id),
        })).collect::<Vec<_>>(),
        "outer": an.shading.outer,
        "u_regions": an.shading.u_regions,
        "s_regions": an.shading.s_regions,
        "eta": (0..d.crossing_count()).map(|c| an.eta(c)).collect::<Vec<_>>(),
        "beta": an.gamma.beta,
        "split": d.is_split(),
        "special": matches!(an.special, SpecialLabels::Consistent(_)),
    })
}
