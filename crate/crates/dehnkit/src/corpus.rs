//! Bundled diagram corpus: hand-pinned fixtures, pretzel and random
//! alternating generators, and split assemblies.

use crate::diagram::analysis::Analyzed;
use crate::diagram::LinkDiagram;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    /// Pinned unbounded face; None uses the max-corner default.
    pub outer: Option<usize>,
    /// Expected |det G|.
    pub determinant: Option<u64>,
    /// Expected normalized single-variable Alexander polynomial.
    pub alexander: Option<String>,
    pub special: Option<bool>,
    pub alternating: Option<bool>,
    pub split: Option<bool>,
    pub components: Option<usize>,
    /// Where the expectations come from.
    pub note: String,
}

impl CorpusEntry {
    fn new(name: &str, pd: impl Into<String>, note: &str) -> Self {
        CorpusEntry {
            name: name.into(),
            pd: pd.into(),
            outer: None,
            determinant: None,
            alexander: None,
            special: None,
            alternating: None,
            split: None,
            components: None,
            note: note.into(),
        }
    }
}

/// The spec's three-crossing trefoil code.
pub const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

/// Standard alternating figure-eight diagram.
pub const FIGURE_EIGHT_PD: &str = "X[1,7,2,6] X[5,3,6,2] X[7,4,8,5] X[3,8,4,1]";

/// One-crossing kink presenting the unknot.
pub const KINK_PD: &str = "X[1,2,2,1]";

/// Borromean rings drawn as the standard three-circle arrangement, traced
/// with all circles counterclockwise; every crossing has Goeritz index +1
/// in this embedding (outer face 0).
pub const BORROMEAN_PD: &str =
    "X[8,2,5,1] X[6,3,7,4] X[4,12,1,9] X[9,5,10,6] X[2,11,3,10] X[11,8,12,7]";

/// A two-crossing clasp: the Hopf link.
pub const HOPF_PD: &str = "X[1,3,2,4] X[3,1,4,2]";

/// Pretzel diagram with three vertical twist strips. `ks[i]` gives the
/// number of crossings of strip i, its sign the strip's Goeritz index when
/// the ambient face is unbounded. Returns the PD text and a corner
/// (crossing, corner index) lying in the ambient face.
pub fn pretzel_pd(ks: [i64; 3]) -> (String, (usize, usize)) {
    assert!(ks.iter().all(|&k| k != 0), "strips need at least one crossing");
    let sizes: [usize; 3] = [
        ks[0].unsigned_abs() as usize,
        ks[1].unsigned_abs() as usize,
        ks[2].unsigned_abs() as usize,
    ];
    let offset = [0, sizes[0], sizes[0] + sizes[1]];
    let total: usize = sizes.iter().sum();
    let id = |i: usize, j: usize| offset[i] + j;

    // Arc-end positions in ccw order: 0 = UR, 1 = UL, 2 = DL, 3 = DR.
    const UR: usize = 0;
    const UL: usize = 1;
    const DL: usize = 2;
    const DR: usize = 3;

    let mut edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for i in 0..3 {
        for j in 0..sizes[i] - 1 {
            edges.push(((id(i, j), DL), (id(i, j + 1), UL)));
            edges.push(((id(i, j), DR), (id(i, j + 1), UR)));
        }
    }
    for i in 0..3 {
        let ni = (i + 1) % 3;
        edges.push(((id(i, 0), UR), (id(ni, 0), UL)));
        edges.push((
            (id(i, sizes[i] - 1), DR),
            (id(ni, sizes[ni] - 1), DL),
        ));
    }

    // end -> dart reference (edge index * 2 + side).
    let mut at = vec![[usize::MAX; 4]; total];
    for (ei, &(a, b)) in edges.iter().enumerate() {
        at[a.0][a.1] = ei * 2;
        at[b.0][b.1] = ei * 2 + 1;
    }
    let other_end = |dart: usize| -> (usize, usize) {
        let e = &edges[dart / 2];
        if dart % 2 == 0 {
            e.1
        } else {
            e.0
        }
    };

    // Orient: traverse strands; straight-through pairs are the diagonals
    // UR<->DL and UL<->DR. Label edges 1.. in traversal order.
    let mut label = vec![0usize; edges.len()];
    let mut incoming_at = vec![[false; 4]; total];
    let mut next_label = 1usize;
    for start in 0..edges.len() {
        if label[start] != 0 {
            continue;
        }
        let mut cur = start * 2; // leaving edges[start].0 toward .1
        loop {
            label[cur / 2] = next_label;
            next_label += 1;
            let (c, pos) = other_end(cur);
            incoming_at[c][pos] = true;
            let out_pos = match pos {
                UR => DL,
                UL => DR,
                DL => UR,
                _ => UL,
            };
            cur = at[c][out_pos];
            if cur / 2 == start {
                break;
            }
        }
    }

    // Under strand per crossing from the strip's sign, rotated so slot 0 is
    // the incoming under end.
    let mut tokens = Vec::with_capacity(total);
    let mut rot0 = 0usize;
    for i in 0..3 {
        for j in 0..sizes[i] {
            let c = id(i, j);
            let under = if ks[i] > 0 { [UL, DR] } else { [UR, DL] };
            let inc = under
                .into_iter()
                .find(|&p| incoming_at[c][p])
                .expect("one under end is incoming");
            if c == 0 {
                rot0 = inc;
            }
            let slots: Vec<usize> = (0..4).map(|k| label[at[c][(inc + k) % 4] / 2]).collect();
            tokens.push(format!(
                "X[{},{},{},{}]",
                slots[0], slots[1], slots[2], slots[3]
            ));
        }
    }
    // Ambient-face marker: the corner between UL and DL of crossing 0.
    let marker = (0usize, (1 + 4 - rot0) % 4);
    (tokens.join(" "), marker)
}

/// Outer-face id for an entry built from a marker corner.
pub fn face_of_corner(pd: &str, corner: (usize, usize)) -> usize {
    let d = LinkDiagram::parse(pd).expect("generated PD parses");
    d.corner_regions()[corner.0 * 4 + corner.1]
}

/// The split six-component assembly: two concentric circles, a 2-2-2
/// pretzel inside the inner disk (strip weights -1, +1, -1), and a bare
/// circle inside one of the pretzel's holes. Returns (pd, outer face id).
pub fn figure6_pd() -> (String, usize) {
    let (pretzel, _marker) = pretzel_pd([-2, 2, -2]);
    let partial = format!("O O {} IN(1,1) IN(2,2)", pretzel);
    let an = Analyzed::new(&partial, Some(0)).expect("partial split assembly parses");
    // Bounded unshaded regions: the inner-disk class the pretzel was glued
    // into plus its two remaining holes; nest the bare circle in the
    // largest-id hole.
    let disk_class = an.diagram.pieces[2].local_to_global[an.diagram.pieces[2].attachment];
    let hole = an
        .shading
        .u_regions
        .iter()
        .copied()
        .filter(|&r| r != disk_class)
        .max()
        .expect("pretzel holes exist");
    (
        format!("O O {} O IN(1,1) IN(2,2) IN(3,{})", pretzel, hole),
        0,
    )
}

/// Random connected alternating diagram with `c` crossings: a random
/// planar rotation system (rejection sampled by the Euler check), over and
/// under chosen at each crossing so every Goeritz index comes out +1.
pub fn random_alternating(c: usize, rng: &mut ChaCha8Rng) -> String {
    'outer: for _attempt in 0..100_000 {
        // Random pairing of the 4c arc ends.
        let mut darts: Vec<(usize, usize)> =
            (0..c).flat_map(|i| (0..4).map(move |k| (i, k))).collect();
        darts.shuffle(rng);
        let mut mate = vec![[(usize::MAX, usize::MAX); 4]; c];
        let mut labels = vec![[0usize; 4]; c];
        for (ei, pair) in darts.chunks(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            mate[a.0][a.1] = b;
            mate[b.0][b.1] = a;
            labels[a.0][a.1] = ei + 1;
            labels[b.0][b.1] = ei + 1;
        }
        // Orient strands; straight-through pairing is (k, k+2).
        let mut incoming = vec![[false; 4]; c];
        let mut seen_edge = vec![false; 2 * c];
        for start_c in 0..c {
            for start_k in 0..4 {
                let first = labels[start_c][start_k] - 1;
                if seen_edge[first] {
                    continue;
                }
                let mut cur = (start_c, start_k);
                loop {
                    let e = labels[cur.0][cur.1] - 1;
                    if seen_edge[e] {
                        break;
                    }
                    seen_edge[e] = true;
                    let far = mate[cur.0][cur.1];
                    incoming[far.0][far.1] = true;
                    cur = (far.0, (far.1 + 2) % 4);
                }
            }
        }
        let emit = |rot: &[usize]| -> String {
            (0..c)
                .map(|i| {
                    let r = rot[i];
                    format!(
                        "X[{},{},{},{}]",
                        labels[i][r],
                        labels[i][(r + 1) % 4],
                        labels[i][(r + 2) % 4],
                        labels[i][(r + 3) % 4]
                    )
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        // Initial rotation: slot 0 = incoming end of the (0,2) strand.
        let mut rot: Vec<usize> = (0..c).map(|i| if incoming[i][0] { 0 } else { 2 }).collect();
        let mut pd = emit(&rot);
        let Ok(d) = LinkDiagram::parse(&pd) else {
            continue 'outer;
        };
        if d.pieces.len() != 1 {
            continue 'outer;
        }
        // Flip crossings until every Goeritz index is +1 (the shading is a
        // property of the shadow, so one pass usually settles it).
        for _pass in 0..12 {
            let Ok(an) = Analyzed::new(&pd, None) else {
                continue 'outer;
            };
            let bad: Vec<usize> = (0..c).filter(|&i| an.eta(i) == -1).collect();
            if bad.is_empty() {
                return pd;
            }
            for i in bad {
                // Swap over/under: rebase the rotation at the incoming end
                // of the other strand.
                let cur = rot[i];
                let others = [(cur + 1) % 4, (cur + 3) % 4];
                rot[i] = others
                    .into_iter()
                    .find(|&p| incoming[i][p])
                    .expect("one over end is incoming");
            }
            pd = emit(&rot);
            if LinkDiagram::parse(&pd).is_err() {
                continue 'outer;
            }
        }
    }
    panic!("random alternating generation did not converge");
}

/// Join two PD codes (labels of the second shifted), the second piece
/// optionally nested inside global face `host` of the first.
pub fn splice(first: &str, second: &str, host: Option<usize>) -> String {
    let d1 = LinkDiagram::parse(first).expect("first piece parses");
    let shift = d1.edges.len();
    let shifted = second
        .split_whitespace()
        .map(|tok| {
            if let Some(rest) = tok.strip_prefix("X[") {
                let body = rest.strip_suffix(']').unwrap();
                let labels: Vec<String> = body
                    .split(',')
                    .map(|v| (v.trim().parse::<usize>().unwrap() + shift).to_string())
                    .collect();
                format!("X[{}]", labels.join(","))
            } else {
                tok.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ");
    match host {
        Some(f) => format!("{} {} IN(1,{})", first, shifted, f),
        None => format!("{} {}", first, shifted),
    }
}

fn pretzel_alexander(m: i64) -> String {
    // ((m)(t-1)^2 + (t+1)^2) / 4 for odd strips, normalized.
    use crate::algebra::LaurentPoly;
    use num_bigint::BigInt;
    assert_eq!((m + 1).rem_euclid(4), 0, "odd pretzel coefficient sanity");
    let a = (m + 1) / 4;
    let b = (-2 * m + 2) / 4;
    let p = LaurentPoly::from_dense(0, &[BigInt::from(a), BigInt::from(b), BigInt::from(a)]);
    crate::matrices::invariants::normalize_alexander(&p).render()
}

/// The bundled corpus: fixtures with cited expectations plus generated
/// pretzel and random entries. Deterministic.
pub fn bundled() -> Vec<CorpusEntry> {
    let mut out = Vec::new();

    let mut e = CorpusEntry::new(
        "trefoil",
        TREFOIL_PD,
        "determinant and Alexander polynomial from the Wirtinger route, cross-checked against |det G|",
    );
    e.outer = Some(0);
    e.determinant = Some(3);
    e.alexander = Some("t^2 - t + 1".into());
    e.special = Some(true);
    e.alternating = Some(true);
    e.split = Some(false);
    e.components = Some(1);
    out.push(e);

    let mut e = CorpusEntry::new(
        "figure8",
        FIGURE_EIGHT_PD,
        "standard alternating diagram; right-hand labels conflict, so not special",
    );
    e.determinant = Some(5);
    e.alexander = Some("t^2 - 3t + 1".into());
    e.special = Some(false);
    e.alternating = Some(true);
    e.split = Some(false);
    e.components = Some(1);
    out.push(e);

    let (fig8s, marker) = pretzel_pd([3, -1, -1]);
    let outer = face_of_corner(&fig8s, marker);
    let mut e = CorpusEntry::new(
        "figure8_special",
        fig8s,
        "the (3,-1,-1) pretzel is the figure-eight; odd strips make the shaded surface orientable",
    );
    e.outer = Some(outer);
    e.determinant = Some(5);
    e.alexander = Some("t^2 - 3t + 1".into());
    e.special = Some(true);
    e.alternating = Some(false);
    e.split = Some(false);
    e.components = Some(1);
    out.push(e);

    let mut e = CorpusEntry::new(
        "unknot_kink",
        KINK_PD,
        "one-crossing unknot rooted at a lobe: the shaded surface is a half-twisted band, so not special",
    );
    e.outer = Some(1);
    e.determinant = Some(1);
    e.alexander = Some("1".into());
    e.special = Some(false);
    e.split = Some(false);
    e.components = Some(1);
    out.push(e);

    let mut e = CorpusEntry::new(
        "unknot_kink_default",
        KINK_PD,
        "same kink with the two-corner face unbounded: two shaded lobes, no bounded unshaded region, special",
    );
    e.determinant = Some(1);
    e.alexander = Some("1".into());
    e.special = Some(true);
    e.split = Some(false);
    e.components = Some(1);
    out.push(e);

    let mut e = CorpusEntry::new("unknot_circle", "O", "zero-crossing unknot");
    e.determinant = Some(1);
    e.alexander = Some("1".into());
    e.split = Some(false);
    e.components = Some(1);
    out.push(e);

    let mut e = CorpusEntry::new("unlink2_side_by_side", "O O", "two-component unlink, side by side");
    e.determinant = Some(0);
    e.split = Some(true);
    e.components = Some(2);
    out.push(e);

    let mut e = CorpusEntry::new("unlink2_nested", "O O IN(1,1)", "two-component unlink, concentric");
    e.outer = Some(0);
    e.determinant = Some(0);
    e.split = Some(true);
    e.components = Some(2);
    out.push(e);

    let mut e = CorpusEntry::new(
        "hopf",
        HOPF_PD,
        "two-crossing clasp rooted so the shaded class is the Seifert annulus; |det G| = 2",
    );
    e.outer = Some(1);
    e.determinant = Some(2);
    e.special = Some(true);
    e.alternating = Some(true);
    e.split = Some(false);
    e.components = Some(2);
    out.push(e);

    let mut e = CorpusEntry::new(
        "borromean",
        BORROMEAN_PD,
        "three-circle arrangement calibrated so every Goeritz index is +1; G = 3I - (J - I), det 16",
    );
    e.outer = Some(0);
    e.determinant = Some(16);
    e.alternating = Some(true);
    e.split = Some(false);
    e.components = Some(3);
    out.push(e);

    let (fig6, outer) = figure6_pd();
    let mut e = CorpusEntry::new(
        "split_six_component",
        fig6,
        "nested split assembly with beta = 3 matching the published split 2-reduced Jacobian up to permutation",
    );
    e.outer = Some(outer);
    e.determinant = Some(0);
    e.split = Some(true);
    e.components = Some(6);
    out.push(e);

    // Odd pretzels: special diagrams, alternating when all strips positive.
    let odd_pretzels: [[i64; 3]; 11] = [
        [1, 1, 1],
        [1, 1, 3],
        [1, 3, 3],
        [3, 3, 3],
        [1, 1, 5],
        [1, 3, 5],
        [3, 3, 5],
        [3, 5, 5],
        [5, 5, 5],
        [3, 5, 7],
        [1, 1, 7],
    ];
    for ks in odd_pretzels {
        let (pd, marker) = pretzel_pd(ks);
        let outer = face_of_corner(&pd, marker);
        let name = format!("pretzel_{}_{}_{}", ks[0], ks[1], ks[2]);
        let m = ks[0] * ks[1] + ks[1] * ks[2] + ks[2] * ks[0];
        let mut e = CorpusEntry::new(
            &name,
            pd,
            "odd pretzel: determinant pq+qr+rp, Alexander ((pq+qr+rp)(t-1)^2+(t+1)^2)/4, checked against the Wirtinger route",
        );
        e.outer = Some(outer);
        e.determinant = Some(m as u64);
        e.alexander = Some(pretzel_alexander(m));
        e.special = Some(true);
        e.alternating = Some(true);
        e.split = Some(false);
        e.components = Some(1);
        out.push(e);
    }

    // Special but not alternating: mixed-sign odd pretzels.
    for ks in [[3i64, -1, -1], [5, -1, -1], [3, 3, -1]] {
        let (pd, marker) = pretzel_pd(ks);
        let outer = face_of_corner(&pd, marker);
        let name = format!("pretzel_{}_{}_{}", ks[0], ks[1], ks[2]);
        let m = ks[0] * ks[1] + ks[1] * ks[2] + ks[2] * ks[0];
        let mut e = CorpusEntry::new(
            &name,
            pd,
            "mixed-sign odd pretzel; determinant |pq+qr+rp|",
        );
        e.outer = Some(outer);
        e.determinant = Some(m.unsigned_abs());
        e.alexander = Some(pretzel_alexander(m));
        e.special = Some(true);
        e.alternating = Some(false);
        e.split = Some(false);
        e.components = Some(1);
        out.push(e);
    }

    // Even pretzel: a three-component alternating link.
    let (pd, marker) = pretzel_pd([2, 2, 2]);
    let outer = face_of_corner(&pd, marker);
    let mut e = CorpusEntry::new("pretzel_2_2_2", pd, "even pretzel link");
    e.outer = Some(outer);
    e.alternating = Some(true);
    e.split = Some(false);
    e.components = Some(3);
    out.push(e);

    // Random alternating diagrams, seeded.
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x0d35);
    for i in 0..20usize {
        let c = 3 + (i % 6);
        let pd = random_alternating(c, &mut rng);
        let mut e = CorpusEntry::new(
            &format!("random_alt_{:02}", i),
            pd,
            "randomly generated alternating diagram; universal properties only",
        );
        e.alternating = Some(true);
        e.split = Some(false);
        out.push(e);
    }

    // Random split assemblies.
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x5311);
    for i in 0..4usize {
        let c1 = 3 + (i % 3);
        let c2 = 3 + ((i + 1) % 3);
        let p1 = random_alternating(c1, &mut rng);
        let p2 = random_alternating(c2, &mut rng);
        let d1 = LinkDiagram::parse(&p1).unwrap();
        let host = if i % 2 == 0 {
            None
        } else {
            Some(1 + rng.gen_range(0..d1.region_count - 1))
        };
        let pd = splice(&p1, &p2, host);
        let mut e = CorpusEntry::new(
            &format!("random_split_{:02}", i),
            pd,
            "random split assembly; universal properties only",
        );
        e.split = Some(true);
        out.push(e);
    }

    out
}

/// Serialize a corpus as JSON.
pub fn to_json(entries: &[CorpusEntry]) -> String {
    serde_json::to_string_pretty(&serde_json::json!({ "entries": entries })).unwrap()
}

pub fn from_json(text: &str) -> Result<Vec<CorpusEntry>, serde_json::Error> {
    #[derive(Deserialize)]
    struct File {
        entries: Vec<CorpusEntry>,
    }
    Ok(serde_json::from_str::<File>(text)?.entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretzel_generator_produces_valid_codes() {
        for ks in [[1i64, 1, 1], [3, 5, 7], [3, -1, -1], [2, 2, 2], [-2, 2, -2]] {
            let (pd, marker) = pretzel_pd(ks);
            let d = LinkDiagram::parse(&pd).unwrap();
            let total: usize = ks.iter().map(|k| k.unsigned_abs() as usize).sum();
            assert_eq!(d.crossing_count(), total, "{:?}", ks);
            assert_eq!(d.faces(None).unwrap().len(), total + 2);
            assert!(marker.1 < 4);
        }
    }

    #[test]
    fn pretzel_component_counts() {
        let (pd, _) = pretzel_pd([3, 5, 7]);
        assert_eq!(LinkDiagram::parse(&pd).unwrap().component_count(), 1);
        let (pd, _) = pretzel_pd([2, 2, 2]);
        assert_eq!(LinkDiagram::parse(&pd).unwrap().component_count(), 3);
    }

    #[test]
    fn pretzel_strip_weights_with_ambient_outer() {
        let (pd, marker) = pretzel_pd([3, -1, -1]);
        let outer = face_of_corner(&pd, marker);
        let an = Analyzed::new(&pd, Some(outer)).unwrap();
        // strip crossings come out in strip order
        let etas: Vec<i8> = (0..5).map(|c| an.eta(c)).collect();
        assert_eq!(etas, vec![1, 1, 1, -1, -1]);
        assert!(an.is_special());
    }

    #[test]
    fn bundled_corpus_parses() {
        let entries = bundled();
        assert!(entries.len() >= 30);
        for e in &entries {
            let an = Analyzed::new(&e.pd, e.outer)
                .unwrap_or_else(|err| panic!("{} does not parse: {}", e.name, err));
            if let Some(c) = e.components {
                assert_eq!(an.diagram.component_count(), c, "{}", e.name);
            }
            if let Some(s) = e.split {
                assert_eq!(an.diagram.is_split(), s, "{}", e.name);
            }
            if let Some(sp) = e.special {
                assert_eq!(an.is_special(), sp, "{}", e.name);
            }
        }
        let specials = entries
            .iter()
            .filter(|e| e.special == Some(true) && e.split == Some(false))
            .count();
        assert!(specials >= 10, "need at least ten special entries, got {}", specials);
    }

    #[test]
    fn corpus_round_trips_through_json() {
        let entries = bundled();
        let text = to_json(&entries);
        let back = from_json(&text).unwrap();
        assert_eq!(back.len(), entries.len());
        assert_eq!(back[0].pd, entries[0].pd);
    }
}
