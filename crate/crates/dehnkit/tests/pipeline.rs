//! End-to-end checks of the diagram pipeline on small hand-verified inputs.

use dehnkit::algebra::is_cyclic_permutation;
use dehnkit::diagram::LinkDiagram;
use dehnkit::matrices::invariants::{
    alexander_polynomial, goeritz_direct, goeritz_via_jacobian, link_determinant,
    normalize_alexander, specialize_jacobian_tau,
};
use dehnkit::matrices::{jacobian, IntMatrix};
use dehnkit::presentation::{
    dehn_presentation, theorem_main_presentation, wirtinger::wirtinger_presentation, BasePolicy,
};
use dehnkit::Analyzed;
use num_bigint::BigInt;

pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
pub const KINK: &str = "X[1,2,2,1]";

#[test]
fn trefoil_counts() {
    let d = LinkDiagram::parse(TREFOIL).unwrap();
    assert_eq!(d.crossing_count(), 3);
    assert_eq!(d.edges.len(), 6);
    assert_eq!(d.component_count(), 1);
    let faces = d.faces(None).unwrap();
    assert_eq!(faces.len(), 5);
    assert!(!d.is_split());
}

#[test]
fn trefoil_rooted_at_lobe_is_special_theta() {
    // Rooted at a two-corner lobe the shaded class is the two big regions:
    // the checkerboard graph is a theta (2 vertices, 3 parallel bands).
    let an = Analyzed::new(TREFOIL, Some(0)).unwrap();
    assert_eq!(an.shading.u_regions.len(), 2);
    assert_eq!(an.shading.s_regions.len(), 2);
    assert_eq!(an.gamma.beta, 1);
    assert_eq!(an.gamma.bands.len(), 3);
    assert!(an.is_special());
    // All three crossings carry the same Goeritz index (alternating).
    let etas: Vec<i8> = (0..3).map(|c| an.eta(c)).collect();
    assert!(etas.iter().all(|&e| e == etas[0]));
    // G is 2x2 with |det| = 3.
    let g = goeritz_direct(&an);
    assert_eq!(g.rows, 2);
    assert!(g.is_symmetric());
    assert_eq!(g.determinant().magnitude().to_string(), "3");
}

#[test]
fn trefoil_default_root_still_det_3() {
    // The max-corner default picks the other projection: n = 1, triangle
    // graph, same determinant.
    let an = Analyzed::new(TREFOIL, None).unwrap();
    assert_eq!(link_determinant(&an), BigInt::from(3));
}

#[test]
fn kink_faces_and_projections() {
    let d = LinkDiagram::parse(KINK).unwrap();
    assert_eq!(d.faces(None).unwrap().len(), 3);
    // Default outer is the two-corner face: no bounded unshaded regions.
    let an = Analyzed::new(KINK, None).unwrap();
    assert_eq!(an.shading.u_regions.len(), 0);
    assert_eq!(an.shading.s_regions.len(), 2);
    // Rooted at a lobe: one shaded, two unshaded.
    let an = Analyzed::new(KINK, Some(1)).unwrap();
    assert_eq!(an.shading.u_regions.len(), 1);
    assert_eq!(an.shading.s_regions.len(), 1);
    assert_eq!(link_determinant(&an), BigInt::from(1));
}

#[test]
fn hopf_link_goeritz_and_group() {
    // Two circles clasped: X[1,3,2,4] X[3,1,4,2] is the 2-crossing clasp.
    let an = Analyzed::new("X[1,3,2,4] X[3,1,4,2]", None).unwrap();
    assert_eq!(an.diagram.component_count(), 2);
    assert_eq!(an.faces.len(), 4);
    let g = goeritz_direct(&an);
    assert_eq!(g.rows, 1);
    assert_eq!(g.determinant().magnitude().to_string(), "2");
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    assert_eq!(main.presentation.generator_count(), 2);
    assert_eq!(main.presentation.relator_count(), 1);
    let (gj, _full) = goeritz_via_jacobian(&an, &main).unwrap();
    assert_eq!(gj.data, goeritz_direct(&an).data);
}

#[test]
fn trefoil_main_presentation_matches_goeritz() {
    let an = Analyzed::new(TREFOIL, Some(0)).unwrap();
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    assert_eq!(main.presentation.generator_count(), 3); // U1 U2 S0
    assert_eq!(main.presentation.relator_count(), 2);
    let (gj, full) = goeritz_via_jacobian(&an, &main).unwrap();
    let gd = goeritz_direct(&an);
    assert_eq!(gj.data, gd.data, "J^nu leading block equals G");
    assert_eq!(full.cols, 3);
}

#[test]
fn trefoil_alexander_both_routes() {
    let an = Analyzed::new(TREFOIL, Some(0)).unwrap();
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    let j = jacobian(&main.presentation);
    let jt = specialize_jacobian_tau(&an, &j, &main.presentation).unwrap();
    let a1 = normalize_alexander(&alexander_polynomial(&jt));
    assert_eq!(a1.render(), "t^2 - t + 1");

    let w = wirtinger_presentation(&an).unwrap();
    assert_eq!(w.generator_count(), 3);
    assert_eq!(w.relator_count(), 3);
    let jw = jacobian(&w);
    let jwt = specialize_jacobian_tau(&an, &jw, &w).unwrap();
    let a2 = normalize_alexander(&alexander_polynomial(&jwt));
    assert_eq!(a2.render(), "t^2 - t + 1");
}

#[test]
fn dehn_presentation_counts_and_u0() {
    let an = Analyzed::new(TREFOIL, Some(0)).unwrap();
    let p = dehn_presentation(&an, true).unwrap();
    assert_eq!(p.generator_count(), 5);
    assert_eq!(p.relator_count(), 4); // 3 crossings + U0
    let p_hat = dehn_presentation(&an, false).unwrap();
    assert_eq!(p_hat.relator_count(), 3);

    let an = Analyzed::new(KINK, Some(1)).unwrap();
    let p = dehn_presentation(&an, true).unwrap();
    assert_eq!(p.generator_count(), 3);
    assert_eq!(p.relator_count(), 2);
}

#[test]
fn reverse_relator_parity() {
    use dehnkit::presentation::{boundary_relator, dehn_region_names, reverse_relator};
    let an = Analyzed::new(TREFOIL, Some(0)).unwrap();
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    let names = dehn_region_names(&an);
    for rel in &main.presentation.relators {
        let part = &rel.parts[0];
        let r = boundary_relator(&part.seq, &names, &part.base);
        let rstar = reverse_relator(&part.seq, &names, &part.base);
        let odd = part.seq.entries.len() % 2 == 1;
        if odd {
            assert!(is_cyclic_permutation(&r, &rstar));
        } else {
            assert!(is_cyclic_permutation(&r.inverse(), &rstar));
        }
    }
}

#[test]
fn empty_and_bad_inputs() {
    assert!(LinkDiagram::parse("").is_err());
    assert!(LinkDiagram::parse("X[1,2,3]").is_err());
    assert!(LinkDiagram::parse("X[1,2,3,4]").is_err()); // labels appear once
    // Opposite slots sharing an edge force a non-planar rotation system.
    assert!(matches!(
        LinkDiagram::parse("X[1,2,1,2]"),
        Err(dehnkit::PdError::NotPlanar { .. })
    ));
    // Two separate kinks are fine and split.
    let d = LinkDiagram::parse("X[1,1,2,2] X[3,3,4,4]").unwrap();
    assert!(d.is_split());
}

#[test]
fn unknot_diagrams() {
    // One bare circle: two faces, disk shaded, group Z.
    let an = Analyzed::new("O", None).unwrap();
    assert_eq!(an.faces.len(), 2);
    assert_eq!(an.shading.s_regions.len(), 1);
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    assert_eq!(main.presentation.generator_count(), 1);
    assert_eq!(main.presentation.relator_count(), 0);

    // Two side-by-side circles: three faces, free group of rank 2.
    let an = Analyzed::new("O O", None).unwrap();
    assert_eq!(an.faces.len(), 3);
    assert!(an.diagram.is_split());
    assert_eq!(an.gamma.beta, 2);
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    assert_eq!(main.presentation.generator_count(), 2);
    assert_eq!(main.presentation.relator_count(), 0);

    // Nested circles: annulus plus disk, one bounded unshaded region.
    let an = Analyzed::new("O O IN(1,1)", Some(0)).unwrap();
    assert_eq!(an.faces.len(), 3);
    assert_eq!(an.shading.u_regions.len(), 1);
    assert_eq!(an.gamma.beta, 1);
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    assert_eq!(main.presentation.generator_count(), 2);
    assert_eq!(main.presentation.relator_count(), 1);
    // The relator is freely trivial.
    assert!(main.presentation.relators[0].word.reduce().is_empty());
    let g = goeritz_direct(&an);
    assert_eq!(g.rows, 1);
    assert!(g.is_zero());
}

#[test]
fn kink_alexander_is_one() {
    let an = Analyzed::new(KINK, Some(1)).unwrap();
    let main = theorem_main_presentation(&an, BasePolicy::Theorem).unwrap();
    let j = jacobian(&main.presentation);
    let jt = specialize_jacobian_tau(&an, &j, &main.presentation).unwrap();
    let a = normalize_alexander(&alexander_polynomial(&jt));
    assert_eq!(a.render(), "1");
}

#[test]
fn figure_eight_candidate_pd() {
    let pd = "X[1,7,2,6] X[5,3,6,2] X[7,4,8,5] X[3,8,4,1]";
    let an = Analyzed::new(pd, None).unwrap();
    assert_eq!(an.diagram.component_count(), 1);
    assert_eq!(an.faces.len(), 6);
    assert_eq!(link_determinant(&an), BigInt::from(5));
    let w = wirtinger_presentation(&an).unwrap();
    let jw = jacobian(&w);
    let jwt = specialize_jacobian_tau(&an, &jw, &w).unwrap();
    let a = normalize_alexander(&alexander_polynomial(&jwt));
    assert_eq!(a.render(), "t^2 - 3t + 1");
}

fn _unused(_: IntMatrix) {}
