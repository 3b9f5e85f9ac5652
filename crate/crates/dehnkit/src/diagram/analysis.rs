//! One-stop analysis of a diagram: faces, shading, checkerboard graph,
//! orientation labels and the abelianization of region classes.

use super::{CheckerboardGraph, CornerCycles, Face, LinkDiagram, Shading};
use crate::algebra::LaurentPoly;
use crate::error::{ComputeError, Error};
use std::collections::VecDeque;

/// Result of the right-hand-rule labeling of shaded regions.
#[derive(Debug, Clone)]
pub enum SpecialLabels {
    /// Per region: +1 or -1 for shaded regions, 0 for unshaded.
    Consistent(Vec<i8>),
    /// A shaded region whose incident arcs disagree.
    Conflict(usize),
}

#[derive(Debug, Clone)]
pub struct Analyzed {
    pub diagram: LinkDiagram,
    pub faces: Vec<Face>,
    pub shading: Shading,
    pub gamma: CheckerboardGraph,
    pub corner_region: Vec<usize>,
    pub special: SpecialLabels,
    /// alpha image of every region: a monomial in t_1..t_mu.
    pub alpha: Vec<LaurentPoly>,
}

impl Analyzed {
    pub fn new(text: &str, outer: Option<usize>) -> Result<Analyzed, Error> {
        let diagram = LinkDiagram::parse(text)?;
        Self::from_diagram(diagram, outer)
    }

    pub fn from_diagram(diagram: LinkDiagram, outer: Option<usize>) -> Result<Analyzed, Error> {
        let faces = diagram.faces(outer)?;
        let shading = diagram.shade(&faces)?;
        let gamma = diagram.checkerboard_graph(&faces, &shading)?;
        let corner_region = diagram.corner_regions();
        let special = special_labels(&diagram, &shading, &corner_region);
        let alpha = propagate_alpha(&diagram, &shading, &corner_region)?;
        Ok(Analyzed {
            diagram,
            faces,
            shading,
            gamma,
            corner_region,
            special,
            alpha,
        })
    }

    pub fn cycles(&self) -> CornerCycles {
        CornerCycles::new(&self.faces)
    }

    pub fn is_special(&self) -> bool {
        matches!(self.special, SpecialLabels::Consistent(_))
    }

    pub fn special_label(&self, region: usize) -> Option<i8> {
        match &self.special {
            SpecialLabels::Consistent(l) => Some(l[region]),
            SpecialLabels::Conflict(_) => None,
        }
    }

    /// nu of a region generator: -1 for shaded, +1 for unshaded.
    pub fn nu_region(&self, region: usize) -> i8 {
        if self.shading.is_shaded(region) {
            -1
        } else {
            1
        }
    }

    /// tau of a region: the alpha monomial with every variable sent to t.
    pub fn tau_region(&self, region: usize) -> LaurentPoly {
        self.alpha[region].collapse_to_single()
    }

    pub fn n_bounded_unshaded(&self) -> usize {
        self.shading.u_regions.len()
    }

    pub fn beta(&self) -> usize {
        self.gamma.beta
    }

    /// |C_{i,j}| bookkeeping for the reduced Goeritz matrix lives in the
    /// matrices module; here we only expose the per-crossing data.
    pub fn unshaded_corner_regions(&self, crossing: usize) -> (usize, usize) {
        let r1 = self.corner_region[crossing * 4 + 1];
        if self.shading.is_shaded(r1) {
            (
                self.corner_region[crossing * 4],
                self.corner_region[crossing * 4 + 2],
            )
        } else {
            (r1, self.corner_region[crossing * 4 + 3])
        }
    }

    pub fn eta(&self, crossing: usize) -> i8 {
        self.diagram
            .goeritz_index(&self.shading, &self.corner_region, crossing)
    }

    /// The component of the strand passing over at a crossing, and whether
    /// it is oriented from slot 1 to slot 3.
    pub fn over_strand(&self, crossing: usize) -> (usize, bool) {
        let d = &self.diagram;
        let e1 = d.crossings[crossing].slots[1];
        let edge = &d.edges[e1 - 1];
        // Over strand runs slot1 -> slot3 exactly when the slot-1 edge
        // arrives here (its head is this end).
        let upward = edge.head == (crossing, 1);
        (edge.component, upward)
    }
}

/// Right-hand-rule labels: a shaded region is "+" when every incident arc
/// keeps it on the left, "-" when every arc keeps it on the right.
fn special_labels(
    diagram: &LinkDiagram,
    shading: &Shading,
    corner_region: &[usize],
) -> SpecialLabels {
    let mut label: Vec<i8> = vec![0; diagram.region_count];
    let mut decided: Vec<bool> = vec![false; diagram.region_count];
    let apply = |region: usize, l: i8, label: &mut Vec<i8>, decided: &mut Vec<bool>| -> bool {
        if decided[region] && label[region] != l {
            return false;
        }
        decided[region] = true;
        label[region] = l;
        true
    };
    for (left, right, _comp) in diagram.dual_arcs(corner_region) {
        let (shaded, l) = if shading.is_shaded(left) {
            (left, 1)
        } else {
            (right, -1)
        };
        if !apply(shaded, l, &mut label, &mut decided) {
            return SpecialLabels::Conflict(shaded);
        }
    }
    SpecialLabels::Consistent(label)
}

/// The abelianization of the region generators: alpha(outer) = 1 and, across
/// any arc of component j, alpha(left) = t_j * alpha(right). The meridian
/// convention makes every relator's alpha image trivial; inconsistent
/// propagation means the diagram data is corrupted.
fn propagate_alpha(
    diagram: &LinkDiagram,
    shading: &Shading,
    corner_region: &[usize],
) -> Result<Vec<LaurentPoly>, ComputeError> {
    let mu = diagram.components.len();
    let arcs = diagram.dual_arcs(corner_region);
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); diagram.region_count];
    for &(left, right, comp) in &arcs {
        adj[left].push((right, comp, false)); // alpha(right) = t^-1 alpha(left)
        adj[right].push((left, comp, true)); // alpha(left) = t * alpha(right)
    }
    let mut alpha: Vec<Option<LaurentPoly>> = vec![None; diagram.region_count];
    alpha[shading.outer] = Some(LaurentPoly::one(mu));
    let mut queue = VecDeque::from([shading.outer]);
    while let Some(r) = queue.pop_front() {
        let cur = alpha[r].clone().unwrap();
        for &(n, comp, up) in &adj[r] {
            let t = LaurentPoly::var(mu, comp);
            let img = if up {
                &cur * &t
            } else {
                &cur * &t.unit_inverse().unwrap()
            };
            match &alpha[n] {
                None => {
                    alpha[n] = Some(img);
                    queue.push_back(n);
                }
                Some(existing) => {
                    if existing != &img {
                        return Err(ComputeError::AlphaInconsistent { edge: 0 });
                    }
                }
            }
        }
    }
    Ok(alpha
        .into_iter()
        .map(|a| a.expect("dual graph is connected"))
        .collect())
}
