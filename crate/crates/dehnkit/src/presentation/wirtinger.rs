//! The standard arc-generator presentation, used as an independent oracle
//! against the region presentations.

use super::{Presentation, PresentationKind, Relator};
use crate::algebra::{FreeWord, Generator, Letter};
use crate::diagram::analysis::Analyzed;
use crate::error::ComputeError;

/// Arcs of the diagram: maximal runs of edges joined by over-passes.
/// Returns (arc id per edge label, arc count, component per arc).
pub fn arcs(an: &Analyzed) -> Result<(Vec<usize>, usize, Vec<usize>), ComputeError> {
    let d = &an.diagram;
    for (ci, comp) in d.components.iter().enumerate() {
        if comp.edges.is_empty() {
            return Err(ComputeError::NoCrossings(ci));
        }
    }
    let n = d.edges.len();
    let mut dsu: Vec<usize> = (0..=n).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    for c in 0..d.crossing_count() {
        let a = d.crossings[c].slots[1];
        let b = d.crossings[c].slots[3];
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        if ra != rb {
            dsu[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut arc_of = vec![usize::MAX; n + 1];
    let mut arc_comp = Vec::new();
    let mut count = 0;
    for label in 1..=n {
        let root = find(&mut dsu, label);
        if arc_of[root] == usize::MAX {
            arc_of[root] = count;
            arc_comp.push(d.edges[label - 1].component);
            count += 1;
        }
        arc_of[label] = arc_of[root];
    }
    Ok((arc_of, count, arc_comp))
}

/// One generator per arc, one conjugation relator per crossing.
pub fn wirtinger_presentation(an: &Analyzed) -> Result<Presentation, ComputeError> {
    let (arc_of, count, arc_comp) = arcs(an)?;
    let d = &an.diagram;
    let generators: Vec<Generator> = (0..count)
        .map(|i| Generator::arc(format!("a{}", i + 1), i, arc_comp[i]))
        .collect();
    let mut relators = Vec::new();
    for c in 0..d.crossing_count() {
        let u_in = arc_of[d.crossings[c].slots[0]];
        let u_out = arc_of[d.crossings[c].slots[2]];
        let over = arc_of[d.crossings[c].slots[1]];
        let (_, upward) = an.over_strand(c);
        let e: i8 = if upward { 1 } else { -1 };
        // u_out = o^e u_in o^-e, written as a relator.
        let word = FreeWord::from_letters(vec![
            Letter { gen: generators[u_out].clone(), exp: -1 },
            Letter { gen: generators[over].clone(), exp: e },
            Letter { gen: generators[u_in].clone(), exp: 1 },
            Letter { gen: generators[over].clone(), exp: -e },
        ]);
        relators.push(Relator {
            word: word.clone(),
            raw: word,
            region: None,
            crossing: Some(c),
            parts: Vec::new(),
        });
    }
    Ok(Presentation {
        kind: PresentationKind::Wirtinger,
        generators,
        relators,
    })
}
