//! Region presentations of the link group: the Dehn presentation, the
//! spanning-tree boundary-relator presentation it reduces to, and the
//! Wirtinger presentation used as an independent oracle.

pub mod wirtinger;

use crate::algebra::{FreeWord, Generator, Letter};
use crate::diagram::analysis::Analyzed;
use crate::diagram::{GammaComponent, GammaStep, TreeEdge};
use crate::error::ComputeError;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PresentationKind {
    Dehn,
    Main,
    Wirtinger,
}

/// One formal fraction a/b recorded while traversing a band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FractionEntry {
    pub crossing: usize,
    pub numerator: usize,
    pub denominator: usize,
}

/// The fraction sequence of a based loop in the checkerboard graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionSequence {
    pub entries: Vec<FractionEntry>,
    /// Index of the checkerboard-graph component the loop lives in.
    pub component: usize,
    /// Region id of the base vertex.
    pub base_region: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Odd,
    Even,
}

impl FractionSequence {
    pub fn parity(&self) -> Parity {
        if self.entries.len() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// The clockwise traversal: order reversed, numerators and denominators
    /// interchanged.
    pub fn reversed(&self) -> FractionSequence {
        FractionSequence {
            entries: self
                .entries
                .iter()
                .rev()
                .map(|e| FractionEntry {
                    crossing: e.crossing,
                    numerator: e.denominator,
                    denominator: e.numerator,
                })
                .collect(),
            component: self.component,
            base_region: self.base_region,
        }
    }
}

/// One based-loop constituent of a relator.
#[derive(Debug, Clone, Serialize)]
pub struct RelatorPart {
    pub seq: FractionSequence,
    pub base: Generator,
    /// Return value W of the loop, spelled per the zig-zag formulas.
    pub w: FreeWord,
}

#[derive(Debug, Clone, Serialize)]
pub struct Relator {
    /// The word as presented (unbounded-region letters deleted).
    pub word: FreeWord,
    /// The word before deleting unbounded-region letters.
    pub raw: FreeWord,
    /// Region this relator belongs to (a bounded unshaded region for main
    /// presentations, the crossing's id is stored instead for Dehn).
    pub region: Option<usize>,
    pub crossing: Option<usize>,
    pub parts: Vec<RelatorPart>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Presentation {
    pub kind: PresentationKind,
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Human-readable text, one relator per line.
    pub fn render_text(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut out = format!("generators: {}\n", gens.join(" "));
        for r in &self.relators {
            out.push_str(&format!("relator: {}\n", r.word));
        }
        out
    }

    /// GAP/Magma style export for external cross-checks.
    pub fn render_gap(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut rels: Vec<String> = Vec::new();
        for r in &self.relators {
            let mut term = String::new();
            for (i, l) in r.word.letters.iter().enumerate() {
                if i > 0 {
                    term.push('*');
                }
                if l.exp == 1 {
                    term.push_str(&l.gen.name);
                } else {
                    term.push_str(&format!("{}^-1", l.gen.name));
                }
            }
            if term.is_empty() {
                term.push_str("One(F)");
            }
            rels.push(term);
        }
        format!(
            "F := FreeGroup({});\nrels := [ {} ];\nG := F / rels;\n",
            gens.iter()
                .map(|g| format!("\"{}\"", g))
                .collect::<Vec<_>>()
                .join(", "),
            rels.join(", ")
        )
    }
}

/// Naming of region generators shared by the Dehn and main presentations.
#[derive(Debug, Clone)]
pub struct RegionNames {
    /// Per region id.
    pub names: Vec<Option<Generator>>,
}

impl RegionNames {
    pub fn get(&self, region: usize) -> &Generator {
        self.names[region].as_ref().expect("region is named")
    }
}

/// Policy for choosing base vertices and base-path endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasePolicy {
    /// Deterministic smallest-id choices; the distinguished component's base
    /// is adjacent to the unbounded region.
    Theorem,
    /// Additionally requires every base vertex and base-path endpoint to be
    /// labeled "+" (special diagrams).
    SpecialPlus,
}

/// Compute the return value of a based loop from its fraction sequence:
/// start with the base generator and apply w -> a * w^-1 * b per entry,
/// spelled formally (no free reduction). This reproduces the zig-zag
/// alternating products exactly.
pub fn return_value(seq: &FractionSequence, names: &RegionNames, base: &Generator) -> FreeWord {
    let mut w = FreeWord::gen(base.clone());
    for e in &seq.entries {
        let a = FreeWord::gen(names.get(e.numerator).clone());
        let b = FreeWord::gen(names.get(e.denominator).clone());
        w = a.concat(&w.inverse()).concat(&b);
    }
    w
}

/// The boundary relator of the loop: W * S^-1.
pub fn boundary_relator(seq: &FractionSequence, names: &RegionNames, base: &Generator) -> FreeWord {
    return_value(seq, names, base).concat(&FreeWord::gen_inv(base.clone()))
}

/// The clockwise-traversal relator r*: recompute from the reversed sequence.
pub fn reverse_relator(seq: &FractionSequence, names: &RegionNames, base: &Generator) -> FreeWord {
    boundary_relator(&seq.reversed(), names, base)
}

/// Fractions of one band step: with positive weight the numerator is the
/// region on the left of the traversal, with negative weight the right.
pub fn step_fraction(an: &Analyzed, step: &GammaStep) -> FractionEntry {
    let c = step.crossing;
    let j = step.from.1;
    let left = an.corner_region[c * 4 + (j + 3) % 4];
    let right = an.corner_region[c * 4 + (j + 1) % 4];
    let (numerator, denominator) = if an.eta(c) == 1 {
        (left, right)
    } else {
        (right, left)
    };
    FractionEntry {
        crossing: c,
        numerator,
        denominator,
    }
}

pub fn walk_fractions(
    an: &Analyzed,
    steps: &[GammaStep],
    component: usize,
    base_region: usize,
) -> FractionSequence {
    FractionSequence {
        entries: steps.iter().map(|s| step_fraction(an, s)).collect(),
        component,
        base_region,
    }
}

/// Path in the component's spanning tree from `from` to `to`, as walk steps.
fn tree_path(
    an: &Analyzed,
    comp: &GammaComponent,
    from: usize,
    to: usize,
) -> Vec<GammaStep> {
    if from == to {
        return Vec::new();
    }
    let ancestors = |mut v: usize| -> Vec<usize> {
        let mut chain = vec![v];
        while let Some(e) = comp.tree.get(&v) {
            let parent = an.corner_region[e.crossing * 4 + e.parent_corner.1];
            v = parent;
            chain.push(v);
        }
        chain
    };
    let up_from = ancestors(from);
    let up_to = ancestors(to);
    // Lowest common ancestor: first vertex of up_from found in up_to.
    let to_set: BTreeMap<usize, usize> = up_to.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let (split_i, lca) = up_from
        .iter()
        .enumerate()
        .find_map(|(i, v)| to_set.get(v).map(|_| (i, *v)))
        .expect("tree connects the component");
    let mut steps = Vec::new();
    // Climb from -> lca: each step crosses the child's parent edge upwards.
    for &v in &up_from[..split_i] {
        let e: &TreeEdge = &comp.tree[&v];
        steps.push(GammaStep {
            crossing: e.crossing,
            from: e.child_corner,
        });
    }
    // Descend lca -> to: parent-to-child steps in reverse chain order.
    let j = to_set[&lca];
    for &v in up_to[..j].iter().rev() {
        let e: &TreeEdge = &comp.tree[&v];
        steps.push(GammaStep {
            crossing: e.crossing,
            from: e.parent_corner,
        });
    }
    steps
}

/// A based loop: tree path to `start_vertex`, the cyclic walk rotated to
/// start there, then the reverse path.
fn based_loop(
    an: &Analyzed,
    comp: &GammaComponent,
    base: usize,
    walk_steps: &[GammaStep],
    start_vertex: usize,
) -> Vec<GammaStep> {
    let rot = walk_steps
        .iter()
        .position(|s| an.corner_region[s.crossing * 4 + s.from.1] == start_vertex)
        .expect("start vertex lies on the walk");
    let mut steps = tree_path(an, comp, base, start_vertex);
    steps.extend(walk_steps[rot..].iter().copied());
    steps.extend(walk_steps[..rot].iter().copied());
    let back = tree_path(an, comp, start_vertex, base);
    steps.extend(back);
    steps
}

/// Region generator names for Dehn-style presentations: U0 for the
/// unbounded region, U1..Un for bounded unshaded, S0.. for shaded regions.
pub fn dehn_region_names(an: &Analyzed) -> RegionNames {
    let mut names: Vec<Option<Generator>> = vec![None; an.diagram.region_count];
    names[an.shading.outer] = Some(Generator::region("U0", an.shading.outer));
    for (i, &r) in an.shading.u_regions.iter().enumerate() {
        names[r] = Some(Generator::region(format!("U{}", i + 1), r));
    }
    for (k, &r) in an.shading.s_regions.iter().enumerate() {
        names[r] = Some(Generator::region(format!("S{}", k), r));
    }
    RegionNames { names }
}

/// The Dehn presentation: one generator per region, one relator
/// R1 R2^-1 R3 R4^-1 per crossing, plus the relator U0 when requested.
/// Omitting the U0 relator presents pi_L * Z.
pub fn dehn_presentation(an: &Analyzed, include_u0: bool) -> Result<Presentation, ComputeError> {
    let names = dehn_region_names(an);
    let mut relators = Vec::new();
    for c in 0..an.diagram.crossing_count() {
        let corners = dehn_relator_corners(an, c);
        let regions: Vec<usize> = corners
            .iter()
            .map(|&k| an.corner_region[c * 4 + k])
            .collect();
        // Self-check: alpha(R1) = t_j * alpha(R2) for the over component.
        let (over_comp, _) = an.over_strand(c);
        let mu = an.diagram.components.len();
        let t = crate::algebra::LaurentPoly::var(mu, over_comp);
        let expect = &an.alpha[regions[1]] * &t;
        if an.alpha[regions[0]] != expect {
            return Err(ComputeError::CheckFailed(format!(
                "Dehn relator calibration failed at crossing {}",
                c
            )));
        }
        let word = FreeWord::from_letters(vec![
            Letter { gen: names.get(regions[0]).clone(), exp: 1 },
            Letter { gen: names.get(regions[1]).clone(), exp: -1 },
            Letter { gen: names.get(regions[2]).clone(), exp: 1 },
            Letter { gen: names.get(regions[3]).clone(), exp: -1 },
        ]);
        relators.push(Relator {
            word: word.clone(),
            raw: word,
            region: None,
            crossing: Some(c),
            parts: Vec::new(),
        });
    }
    if include_u0 {
        let u0 = FreeWord::gen(names.get(an.shading.outer).clone());
        relators.push(Relator {
            word: u0.clone(),
            raw: u0,
            region: Some(an.shading.outer),
            crossing: None,
            parts: Vec::new(),
        });
    }
    let mut generators: Vec<Generator> = Vec::new();
    generators.push(names.get(an.shading.outer).clone());
    for &r in &an.shading.u_regions {
        generators.push(names.get(r).clone());
    }
    for &r in &an.shading.s_regions {
        generators.push(names.get(r).clone());
    }
    Ok(Presentation {
        kind: PresentationKind::Dehn,
        generators,
        relators,
    })
}

/// Corner indices (in ccw order 0..3) of R1, R2, R3, R4 at a crossing.
/// With the over strand entering at slot 1 the quadrants are read starting
/// between slots 3 and 0; entering at slot 3 shifts by two.
pub fn dehn_relator_corners(an: &Analyzed, crossing: usize) -> [usize; 4] {
    let (_, upward) = an.over_strand(crossing);
    if upward {
        [3, 2, 1, 0]
    } else {
        [2, 3, 0, 1]
    }
}

/// Data of the main presentation beyond the bare generator/relator lists.
#[derive(Debug, Clone)]
pub struct MainPresentation {
    pub presentation: Presentation,
    /// Generator index ranges: U generators come first, then S generators.
    pub u_count: usize,
    pub s_count: usize,
    /// For each S generator (by position), the component index and region.
    pub s_info: Vec<(usize, usize)>,
    /// Component order used to name S generators.
    pub component_order: Vec<usize>,
}

/// Build the boundary-relator presentation: generators U1..Un and one S per
/// checkerboard-graph component (the one adjacent to the unbounded region
/// last); one relator per bounded unshaded region, with clockwise outer
/// boundaries of nested components appended to their host region's relator.
pub fn theorem_main_presentation(
    an: &Analyzed,
    policy: BasePolicy,
) -> Result<MainPresentation, ComputeError> {
    let names = dehn_region_names(an);
    let comps = &an.gamma.components;

    // Component order: non-distinguished by smallest vertex, distinguished
    // (touching the unbounded region) last.
    let mut order: Vec<usize> = (0..comps.len()).collect();
    let distinguished = order
        .iter()
        .copied()
        .find(|&ci| comps[ci].touches_outer)
        .ok_or_else(|| ComputeError::CheckFailed("no component touches the outer region".into()))?;
    order.retain(|&ci| ci != distinguished);
    order.push(distinguished);

    // Base vertex per component.
    let mut base_of: Vec<usize> = vec![0; comps.len()];
    for (ci, comp) in comps.iter().enumerate() {
        base_of[ci] = choose_base_vertex(an, comp, ci == distinguished, policy)?;
    }

    // S generator per component, named by position in the order.
    let mut s_gen: Vec<Option<Generator>> = vec![None; comps.len()];
    let mut s_info = Vec::new();
    for (pos, &ci) in order.iter().enumerate() {
        let g = Generator::region(format!("S{}", pos), base_of[ci]);
        s_gen[ci] = Some(g.clone());
        s_info.push((ci, base_of[ci]));
    }

    // Region naming for loops: U names from the shared table, S names from
    // the per-component base generators.
    let mut loop_names = names.clone();
    for (ci, g) in s_gen.iter().enumerate() {
        let g = g.clone().unwrap();
        let region = base_of[ci];
        loop_names.names[region] = Some(g);
    }

    let u0_gen = names.get(an.shading.outer).clone();
    let mut relators = Vec::new();
    for &u in &an.shading.u_regions {
        let mut parts: Vec<RelatorPart> = Vec::new();

        // The region's own boundary loop.
        if let Some((ci, wi)) = find_own_walk(an, u)? {
            let comp = &comps[ci];
            let walk = &comp.walks[wi];
            let start = choose_walk_start(an, walk, policy)?;
            let steps = based_loop(an, comp, base_of[ci], &walk.steps, start);
            let seq = walk_fractions(an, &steps, ci, base_of[ci]);
            let base = s_gen[ci].clone().unwrap();
            let w = return_value(&seq, &loop_names, &base);
            parts.push(RelatorPart { seq, base, w });
        } else {
            // Outer boundary of the region is a bare circle: the loop stays
            // at the surrounding component's base and contributes S S^-1.
            let host = bare_circle_host(an, u)?;
            let ci = comps
                .iter()
                .position(|c| c.vertices.contains(&host))
                .expect("host region is a gamma vertex");
            let base = s_gen[ci].clone().unwrap();
            let seq = FractionSequence {
                entries: Vec::new(),
                component: ci,
                base_region: base_of[ci],
            };
            let w = return_value(&seq, &loop_names, &base);
            parts.push(RelatorPart { seq, base, w });
        }

        // Clockwise outermost boundaries of components nested inside u.
        for (ci, comp) in comps.iter().enumerate() {
            let Some(amb) = comp.ambient else { continue };
            if comp.walks[amb].hugger != u {
                continue;
            }
            let walk = &comp.walks[amb];
            let start = choose_walk_start(an, walk, policy)?;
            let steps = based_loop(an, comp, base_of[ci], &walk.steps, start);
            let seq = walk_fractions(an, &steps, ci, base_of[ci]);
            let base = s_gen[ci].clone().unwrap();
            let w = return_value(&seq, &loop_names, &base);
            parts.push(RelatorPart { seq, base, w });
        }

        let mut raw = FreeWord::identity();
        for p in &parts {
            raw = raw
                .concat(&p.w)
                .concat(&FreeWord::gen_inv(p.base.clone()));
        }
        let word = raw.delete_generator(&u0_gen);
        relators.push(Relator {
            word,
            raw,
            region: Some(u),
            crossing: None,
            parts,
        });
    }

    let mut generators: Vec<Generator> = an
        .shading
        .u_regions
        .iter()
        .map(|&r| names.get(r).clone())
        .collect();
    for &ci in &order {
        generators.push(s_gen[ci].clone().unwrap());
    }

    Ok(MainPresentation {
        presentation: Presentation {
            kind: PresentationKind::Main,
            generators,
            relators,
        },
        u_count: an.shading.u_regions.len(),
        s_count: comps.len(),
        s_info,
        component_order: order,
    })
}

fn choose_base_vertex(
    an: &Analyzed,
    comp: &GammaComponent,
    distinguished: bool,
    policy: BasePolicy,
) -> Result<usize, ComputeError> {
    let outer_adjacent = |v: usize| -> bool {
        let corner_region = &an.corner_region;
        let arcs = an.diagram.dual_arcs(corner_region);
        arcs.iter().any(|&(a, b, _)| {
            (a == v && b == an.shading.outer) || (b == v && a == an.shading.outer)
        })
    };
    let plus = |v: usize| an.special_label(v) == Some(1);
    let mut candidates: Vec<usize> = comp.vertices.clone();
    candidates.sort_unstable();
    if policy == BasePolicy::SpecialPlus {
        let plus_candidates: Vec<usize> = candidates.iter().copied().filter(|&v| plus(v)).collect();
        if plus_candidates.is_empty() {
            return Err(ComputeError::CheckFailed(
                "no +-labeled vertex available for a base".into(),
            ));
        }
        if let Some(&v) = plus_candidates.iter().find(|&&v| outer_adjacent(v)) {
            return Ok(v);
        }
        return Ok(plus_candidates[0]);
    }
    if distinguished {
        if let Some(&v) = candidates.iter().find(|&&v| outer_adjacent(v)) {
            return Ok(v);
        }
    }
    Ok(candidates[0])
}

fn choose_walk_start(
    an: &Analyzed,
    walk: &crate::diagram::GammaWalk,
    policy: BasePolicy,
) -> Result<usize, ComputeError> {
    let mut verts: Vec<usize> = walk
        .steps
        .iter()
        .map(|s| an.corner_region[s.crossing * 4 + s.from.1])
        .collect();
    verts.sort_unstable();
    verts.dedup();
    match policy {
        BasePolicy::Theorem => Ok(verts[0]),
        BasePolicy::SpecialPlus => verts
            .into_iter()
            .find(|&v| an.special_label(v) == Some(1))
            .ok_or_else(|| {
                ComputeError::CheckFailed("no +-labeled vertex on a boundary walk".into())
            }),
    }
}

/// The bounded walk (component, walk index) whose hugger is `u`, if any.
fn find_own_walk(an: &Analyzed, u: usize) -> Result<Option<(usize, usize)>, ComputeError> {
    let mut found = None;
    for (ci, comp) in an.gamma.components.iter().enumerate() {
        for (wi, w) in comp.walks.iter().enumerate() {
            if w.hugger == u && comp.ambient != Some(wi) {
                if found.is_some() {
                    return Err(ComputeError::CheckFailed(format!(
                        "region {} hugs two bounded walks",
                        u
                    )));
                }
                found = Some((ci, wi));
            }
        }
    }
    Ok(found)
}

/// The shaded region just outside a bounded unshaded region whose outer
/// boundary is a crossing-free circle.
fn bare_circle_host(an: &Analyzed, u: usize) -> Result<usize, ComputeError> {
    for (pi, p) in an.diagram.pieces.iter().enumerate() {
        if matches!(p.kind, crate::diagram::PieceKind::Unknot) {
            let (inside, outside) = an.diagram.unknot_sides(pi);
            if inside == u {
                return Ok(outside);
            }
        }
    }
    Err(ComputeError::CheckFailed(format!(
        "region {} has neither a boundary walk nor a bare circle boundary",
        u
    )))
}

/// Certify that the boundary relator of a based loop is a consequence of
/// the Dehn relators along it: rebuild the relator as an explicit product
/// of conjugated one-band relations and compare free reductions. Also
/// checks each one-band relation against the crossing's Dehn relator up to
/// cyclic permutation and inversion. Everything is spelled in the Dehn
/// naming, where every region has a generator.
pub fn verify_consequence(an: &Analyzed, steps: &[GammaStep]) -> bool {
    if steps.is_empty() {
        return true;
    }
    let names = dehn_region_names(an);
    let base_region = an.corner_region[steps[0].crossing * 4 + steps[0].from.1];
    let gen_of = |r: usize| FreeWord::gen(names.get(r).clone());

    let mut w = gen_of(base_region);
    let mut x = FreeWord::identity();
    let mut prev_region = base_region;
    for step in steps {
        let f = step_fraction(an, step);
        let a = gen_of(f.numerator);
        let b = gen_of(f.denominator);
        let next_region = an.corner_region[step.crossing * 4 + (step.from.1 + 2) % 4];
        // One-band relation: next = a * prev^-1 * b.
        let d = a
            .concat(&gen_of(prev_region).inverse())
            .concat(&b)
            .concat(&gen_of(next_region).inverse());
        if !dehn_relator_matches(an, step.crossing, &d, &names) {
            return false;
        }
        let conj = a.concat(&gen_of(prev_region).inverse());
        x = conj.concat(&x.inverse()).concat(&conj.inverse()).concat(&d);
        w = a.concat(&w.inverse()).concat(&b);
        prev_region = next_region;
    }
    if prev_region != base_region {
        return false;
    }
    let relator = w.concat(&gen_of(base_region).inverse());
    x.reduce() == relator.reduce()
}

/// A 4-letter word matches the Dehn relator of the crossing up to cyclic
/// permutation and inversion.
fn dehn_relator_matches(
    an: &Analyzed,
    crossing: usize,
    d: &FreeWord,
    names: &RegionNames,
) -> bool {
    let corners = dehn_relator_corners(an, crossing);
    let regions: Vec<usize> = corners
        .iter()
        .map(|&k| an.corner_region[crossing * 4 + k])
        .collect();
    let relator = FreeWord::from_letters(vec![
        Letter { gen: names.get(regions[0]).clone(), exp: 1 },
        Letter { gen: names.get(regions[1]).clone(), exp: -1 },
        Letter { gen: names.get(regions[2]).clone(), exp: 1 },
        Letter { gen: names.get(regions[3]).clone(), exp: -1 },
    ]);
    crate::algebra::is_cyclic_permutation(&relator, d)
        || crate::algebra::is_cyclic_permutation(&relator.inverse(), d)
}
