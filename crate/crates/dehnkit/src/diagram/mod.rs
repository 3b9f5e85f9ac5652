//! Link diagrams from PD codes: planar face structure, checkerboard
//! shading, Goeritz indices and the checkerboard graph.

pub mod analysis;
pub mod pd;

use crate::error::PdError;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub const NO_FACE: usize = usize::MAX;

/// One crossing; `slots[k]` is the edge label at counterclockwise slot `k`,
/// slot 0 being the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub slots: [usize; 4],
}

/// An edge endpoint: (crossing, slot).
pub type End = (usize, usize);

#[derive(Debug, Clone, Serialize)]
pub struct Edge {
    pub label: usize,
    /// Outgoing end: the edge leaves this crossing.
    pub tail: End,
    /// Incoming end: the edge arrives at this crossing.
    pub head: End,
    pub component: usize,
}

#[derive(Debug, Clone, Serialize)]
pub enum PieceKind {
    /// Indices into `LinkDiagram::crossings`.
    Crossings(Vec<usize>),
    /// A zero-crossing unknot component (oriented counterclockwise).
    Unknot,
}

#[derive(Debug, Clone, Serialize)]
pub struct Piece {
    pub kind: PieceKind,
    /// Corner walks of the sphere faces of this piece alone. A corner is
    /// (crossing, k) for the quadrant between slots k and k+1. Unknot
    /// pieces have two faces with no corners: 0 = outside, 1 = disk.
    pub local_faces: Vec<Vec<(usize, usize)>>,
    /// Local face glued into the host region (the piece's own default outer).
    pub attachment: usize,
    pub local_to_global: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    /// Edge labels in traversal order; empty for zero-crossing components.
    pub edges: Vec<usize>,
    pub piece: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    pub components: Vec<Component>,
    pub pieces: Vec<Piece>,
    /// Per piece: the global face its attachment is glued into (None = root).
    pub nesting: Vec<Option<usize>>,
    /// Number of global regions after gluing.
    pub region_count: usize,
    /// Canonical source text (normalized labels, nesting directives included).
    pub source: String,
}

/// A region of the assembled diagram (a merged class of piece faces).
#[derive(Debug, Clone, Serialize)]
pub struct Face {
    pub id: usize,
    /// All corners, grouped by boundary cycle (one cycle per member face
    /// that has corners).
    pub cycles: Vec<Vec<(usize, usize)>>,
    pub is_unbounded: bool,
}

impl Face {
    pub fn corners(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cycles.iter().flatten().copied()
    }

    pub fn corner_count(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Color {
    Shaded,
    Unshaded,
}

#[derive(Debug, Clone, Serialize)]
pub struct Shading {
    /// Color per region id.
    pub color: Vec<Color>,
    /// The unbounded region (U0).
    pub outer: usize,
    /// Bounded unshaded regions in deterministic order; index i is U_{i+1}.
    pub u_regions: Vec<usize>,
    /// Shaded regions in deterministic order.
    pub s_regions: Vec<usize>,
}

impl Shading {
    pub fn is_shaded(&self, region: usize) -> bool {
        self.color[region] == Color::Shaded
    }

    pub fn u_index(&self, region: usize) -> Option<usize> {
        self.u_regions.iter().position(|&r| r == region)
    }
}

/// One step of a walk in the checkerboard graph: the band of `crossing`
/// traversed from shaded corner `from` to the opposite corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaStep {
    pub crossing: usize,
    pub from: (usize, usize),
}

/// A closed boundary walk of one face of a checkerboard-graph component,
/// traversed with the face on the left.
#[derive(Debug, Clone, Serialize)]
pub struct GammaWalk {
    pub steps: Vec<GammaStep>,
    /// The unshaded region hugging this face from inside.
    pub hugger: usize,
    pub component: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeEdge {
    pub crossing: usize,
    pub parent_corner: (usize, usize),
    pub child_corner: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaComponent {
    pub vertices: Vec<usize>,
    /// Crossing ids of the bands in this component.
    pub bands: Vec<usize>,
    /// Spanning tree: for each vertex except the base, the tree edge to its
    /// BFS parent, keyed by region id.
    pub tree: BTreeMap<usize, TreeEdge>,
    /// Face walks of this component; `ambient` indexes the one whose hugger
    /// lies outside the component.
    pub walks: Vec<GammaWalk>,
    pub ambient: Option<usize>,
    /// True when this component has a vertex adjacent to the unbounded region.
    pub touches_outer: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckerboardGraph {
    /// Shaded region ids (the vertices).
    pub vertices: Vec<usize>,
    /// Per crossing: the two shaded corner regions and the Goeritz weight.
    pub bands: Vec<GammaBand>,
    pub components: Vec<GammaComponent>,
    pub beta: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaBand {
    pub crossing: usize,
    pub endpoints: (usize, usize),
    pub weight: i8,
}

impl LinkDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// The universe is disconnected: some circle separates the diagram.
    pub fn is_split(&self) -> bool {
        self.pieces.len() > 1
    }

    /// The end of `edge` that is not `end`.
    pub fn other_end(&self, edge: usize, end: End) -> End {
        let e = &self.edges[edge - 1];
        if e.tail == end {
            e.head
        } else {
            debug_assert_eq!(e.head, end);
            e.tail
        }
    }

    pub fn edge_at(&self, end: End) -> usize {
        self.crossings[end.0].slots[end.1]
    }

    /// Parse PD text and assemble the diagram.
    pub fn parse(text: &str) -> Result<LinkDiagram, PdError> {
        let tokens = pd::tokenize(text)?;
        if tokens.is_empty() {
            return Err(PdError::EmptyInput);
        }

        // Split tokens into crossings, unknots and nesting directives.
        let mut raw_crossings: Vec<[i64; 4]> = Vec::new();
        let mut term_kinds: Vec<TermKind> = Vec::new();
        let mut nest_directives: Vec<(usize, usize)> = Vec::new();
        for t in tokens.iter() {
            match t {
                pd::Token::Crossing(slots) => {
                    for k in 0..4 {
                        if slots.iter().filter(|&&s| s == slots[k]).count() > 2 {
                            return Err(PdError::EdgeMultiplicity {
                                label: slots[k],
                                count: 3,
                            });
                        }
                    }
                    term_kinds.push(TermKind::Crossing(raw_crossings.len()));
                    raw_crossings.push(*slots);
                }
                pd::Token::Unknot => term_kinds.push(TermKind::Unknot),
                pd::Token::Nest { piece, face } => nest_directives.push((*piece, *face)),
            }
        }

        // Edge multiplicity check and dense relabeling to 1..2c.
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for slots in &raw_crossings {
            for &s in slots {
                *counts.entry(s).or_insert(0) += 1;
            }
        }
        for (&label, &count) in &counts {
            if count != 2 {
                return Err(PdError::EdgeMultiplicity { label, count });
            }
        }
        let relabel: BTreeMap<i64, usize> = counts
            .keys()
            .enumerate()
            .map(|(i, &l)| (l, i + 1))
            .collect();
        let crossings: Vec<Crossing> = raw_crossings
            .iter()
            .map(|slots| Crossing {
                slots: [
                    relabel[&slots[0]],
                    relabel[&slots[1]],
                    relabel[&slots[2]],
                    relabel[&slots[3]],
                ],
            })
            .collect();
        let edge_count = crossings.len() * 2;

        // Endpoints per edge label.
        let mut ends: Vec<Vec<End>> = vec![Vec::new(); edge_count + 1];
        for (c, cr) in crossings.iter().enumerate() {
            for (k, &l) in cr.slots.iter().enumerate() {
                ends[l].push((c, k));
            }
        }

        // Pieces: connected components of crossings under shared edge labels,
        // ordered by first token. Unknot tokens are their own pieces.
        let mut dsu = Dsu::new(crossings.len());
        for e in ends.iter().skip(1) {
            dsu.union(e[0].0, e[1].0);
        }
        let mut piece_of_crossing: BTreeMap<usize, usize> = BTreeMap::new();
        let mut pieces_raw: Vec<PieceRaw> = Vec::new();
        for kind in &term_kinds {
            match *kind {
                TermKind::Crossing(ci) => {
                    let root = dsu.find(ci);
                    if let std::collections::btree_map::Entry::Vacant(e) =
                        piece_of_crossing.entry(root)
                    {
                        e.insert(pieces_raw.len());
                        pieces_raw.push(PieceRaw::Crossings(Vec::new()));
                    }
                }
                TermKind::Unknot => pieces_raw.push(PieceRaw::Unknot),
            }
        }
        for (c, _) in crossings.iter().enumerate() {
            let p = piece_of_crossing[&dsu.find(c)];
            if let PieceRaw::Crossings(v) = &mut pieces_raw[p] {
                v.push(c);
            }
        }

        // Orientation: slot 0 is always a head (incoming) and slot 2 a tail.
        let orientation = orient(&crossings, &ends)?;

        // Components by traversal.
        let mut crossing_piece = vec![0usize; crossings.len()];
        for (c, cp) in crossing_piece.iter_mut().enumerate() {
            *cp = piece_of_crossing[&dsu.find(c)];
        }
        let (components, edge_component) =
            trace_components(&crossings, &ends, &orientation, &pieces_raw, &crossing_piece)?;

        let mut edges: Vec<Edge> = Vec::with_capacity(edge_count);
        for l in 1..=edge_count {
            let (a, b) = (ends[l][0], ends[l][1]);
            let (tail, head) = if orientation[a.0][a.1] == Some(Role::Tail) {
                (a, b)
            } else {
                (b, a)
            };
            edges.push(Edge {
                label: l,
                tail,
                head,
                component: edge_component[l],
            });
        }

        // Per-piece sphere faces with Euler check, then the gluing.
        let mut pieces: Vec<Piece> = Vec::new();
        for (pi, pr) in pieces_raw.iter().enumerate() {
            match pr {
                PieceRaw::Crossings(cs) => {
                    let faces = piece_faces(&crossings, &ends, cs);
                    if faces.len() != cs.len() + 2 {
                        return Err(PdError::NotPlanar {
                            piece: pi,
                            faces: faces.len(),
                            expected: cs.len() + 2,
                        });
                    }
                    let attachment = default_outer_local(&faces);
                    pieces.push(Piece {
                        kind: PieceKind::Crossings(cs.clone()),
                        local_faces: faces,
                        attachment,
                        local_to_global: Vec::new(),
                    });
                }
                PieceRaw::Unknot => pieces.push(Piece {
                    kind: PieceKind::Unknot,
                    local_faces: vec![Vec::new(), Vec::new()],
                    attachment: 0,
                    local_to_global: Vec::new(),
                }),
            }
        }

        // Nesting directives.
        let mut nesting: Vec<Option<usize>> = vec![None; pieces.len()];
        for &(p, f) in &nest_directives {
            if p == 0 || p >= pieces.len() {
                return Err(PdError::BadNesting {
                    piece: p,
                    face: f,
                    msg: "piece index out of range (piece 0 is the root)".into(),
                });
            }
            if nesting[p].is_some() {
                return Err(PdError::BadNesting {
                    piece: p,
                    face: f,
                    msg: "duplicate directive".into(),
                });
            }
            nesting[p] = Some(f);
        }

        // Glue: assign global region ids piece by piece.
        let mut region_count = 0usize;
        let root_class = pieces[0].attachment;
        for pi in 0..pieces.len() {
            let nfaces = pieces[pi].local_faces.len();
            let mut map = vec![NO_FACE; nfaces];
            if pi == 0 {
                for (lf, m) in map.iter_mut().enumerate() {
                    *m = region_count + lf;
                }
                region_count += nfaces;
            } else {
                let host = match nesting[pi] {
                    None => root_class,
                    Some(f) => {
                        if f >= region_count {
                            return Err(PdError::BadNesting {
                                piece: pi,
                                face: f,
                                msg: format!(
                                    "face must belong to an earlier piece (only {} faces so far)",
                                    region_count
                                ),
                            });
                        }
                        f
                    }
                };
                let att = pieces[pi].attachment;
                for (lf, m) in map.iter_mut().enumerate() {
                    if lf == att {
                        *m = host;
                    } else {
                        *m = region_count;
                        region_count += 1;
                    }
                }
            }
            pieces[pi].local_to_global = map;
        }

        let source = canonical_source(&crossings, &pieces_raw, &nesting);

        Ok(LinkDiagram {
            crossings,
            edges,
            components,
            pieces,
            nesting,
            region_count,
            source,
        })
    }

    /// Global regions. `outer` overrides the unbounded-region choice; the
    /// default is the region of maximal corner count (smallest id on ties).
    pub fn faces(&self, outer: Option<usize>) -> Result<Vec<Face>, PdError> {
        let mut cycles: Vec<Vec<Vec<(usize, usize)>>> = vec![Vec::new(); self.region_count];
        for piece in &self.pieces {
            for (lf, walk) in piece.local_faces.iter().enumerate() {
                if !walk.is_empty() {
                    cycles[piece.local_to_global[lf]].push(walk.clone());
                }
            }
        }
        let outer = match outer {
            Some(f) => {
                if f >= self.region_count {
                    return Err(PdError::NoSuchFace {
                        face: f,
                        count: self.region_count,
                    });
                }
                f
            }
            None => {
                let mut best = 0usize;
                let mut best_count = 0usize;
                for (id, cy) in cycles.iter().enumerate() {
                    let n: usize = cy.iter().map(|c| c.len()).sum();
                    if n > best_count {
                        best = id;
                        best_count = n;
                    }
                }
                best
            }
        };
        Ok(cycles
            .into_iter()
            .enumerate()
            .map(|(id, cycles)| Face {
                id,
                cycles,
                is_unbounded: id == outer,
            })
            .collect())
    }

    /// The region containing corner (crossing, k).
    pub fn region_of_corner(&self, corner_region: &[usize], corner: (usize, usize)) -> usize {
        corner_region[corner.0 * 4 + corner.1]
    }

    /// Lookup table corner -> region id.
    pub fn corner_regions(&self) -> Vec<usize> {
        let mut out = vec![NO_FACE; self.crossings.len() * 4];
        for piece in &self.pieces {
            for (lf, walk) in piece.local_faces.iter().enumerate() {
                for &(c, k) in walk {
                    out[c * 4 + k] = piece.local_to_global[lf];
                }
            }
        }
        out
    }

    /// The two regions flanking an edge: (left, right) seen along tail->head.
    pub fn edge_sides(&self, corner_region: &[usize], label: usize) -> (usize, usize) {
        let e = &self.edges[label - 1];
        let (c, s) = e.tail;
        let left = corner_region[c * 4 + s];
        let right = corner_region[c * 4 + (s + 3) % 4];
        debug_assert_eq!(left, {
            let (hc, hs) = e.head;
            corner_region[hc * 4 + (hs + 3) % 4]
        });
        debug_assert_eq!(right, {
            let (hc, hs) = e.head;
            corner_region[hc * 4 + hs]
        });
        (left, right)
    }

    /// The (inside, outside) regions of a zero-crossing unknot piece.
    pub fn unknot_sides(&self, piece: usize) -> (usize, usize) {
        let p = &self.pieces[piece];
        debug_assert!(matches!(p.kind, PieceKind::Unknot));
        (p.local_to_global[1], p.local_to_global[0])
    }

    /// Dual adjacencies: (left region, right region, component) per arc.
    /// For edges, left/right along the orientation; for unknot circles the
    /// inside counts as left (counterclockwise convention).
    pub fn dual_arcs(&self, corner_region: &[usize]) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let (l, r) = self.edge_sides(corner_region, e.label);
            out.push((l, r, e.component));
        }
        for (pi, p) in self.pieces.iter().enumerate() {
            if matches!(p.kind, PieceKind::Unknot) {
                let (inside, outside) = self.unknot_sides(pi);
                let comp = self
                    .components
                    .iter()
                    .position(|c| c.piece == pi)
                    .expect("unknot piece has a component");
                out.push((inside, outside, comp));
            }
        }
        out
    }

    /// Checkerboard 2-coloring with the unbounded face unshaded.
    pub fn shade(&self, faces: &[Face]) -> Result<Shading, PdError> {
        let outer = faces
            .iter()
            .find(|f| f.is_unbounded)
            .expect("faces carry an unbounded flag")
            .id;
        let corner_region = self.corner_regions();
        let arcs = self.dual_arcs(&corner_region);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.region_count];
        for &(a, b, _) in &arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut color: Vec<Option<Color>> = vec![None; self.region_count];
        color[outer] = Some(Color::Unshaded);
        let mut queue = VecDeque::from([outer]);
        while let Some(r) = queue.pop_front() {
            let next = match color[r].unwrap() {
                Color::Shaded => Color::Unshaded,
                Color::Unshaded => Color::Shaded,
            };
            for &n in &adj[r] {
                match color[n] {
                    None => {
                        color[n] = Some(next);
                        queue.push_back(n);
                    }
                    Some(c) if c != next => {
                        return Err(PdError::Syntax {
                            pos: 0,
                            msg: "face adjacency is not bipartite (corrupted diagram)".into(),
                        })
                    }
                    _ => {}
                }
            }
        }
        let color: Vec<Color> = color
            .into_iter()
            .map(|c| c.expect("dual graph is connected"))
            .collect();

        // Deterministic labels: order regions by smallest incident edge
        // label, regions without edges afterwards by id.
        let min_edge = self.region_min_edge(&corner_region);
        let mut u_regions: Vec<usize> = (0..self.region_count)
            .filter(|&r| r != outer && color[r] == Color::Unshaded)
            .collect();
        u_regions.sort_by_key(|&r| (min_edge[r], r));
        let mut s_regions: Vec<usize> = (0..self.region_count)
            .filter(|&r| color[r] == Color::Shaded)
            .collect();
        s_regions.sort_by_key(|&r| (min_edge[r], r));

        Ok(Shading {
            color,
            outer,
            u_regions,
            s_regions,
        })
    }

    fn region_min_edge(&self, corner_region: &[usize]) -> Vec<usize> {
        let mut min_edge = vec![usize::MAX; self.region_count];
        for e in &self.edges {
            let (l, r) = self.edge_sides(corner_region, e.label);
            min_edge[l] = min_edge[l].min(e.label);
            min_edge[r] = min_edge[r].min(e.label);
        }
        // A bare circle also bounds its two regions; those sort after all
        // real edge labels, in piece order.
        for (pi, p) in self.pieces.iter().enumerate() {
            if matches!(p.kind, PieceKind::Unknot) {
                let (inside, outside) = self.unknot_sides(pi);
                let key = self.edges.len() + 1 + pi;
                min_edge[inside] = min_edge[inside].min(key);
                min_edge[outside] = min_edge[outside].min(key);
            }
        }
        min_edge
    }

    /// Goeritz index of a crossing: +1 when the shaded corners are the pair
    /// between slots 1-2 and 3-0, -1 for the other diagonal. This is the
    /// convention forced by requiring the positive-weight band relation to
    /// read terminal = left * initial^-1 * right.
    pub fn goeritz_index(&self, shading: &Shading, corner_region: &[usize], crossing: usize) -> i8 {
        let r1 = corner_region[crossing * 4 + 1];
        let r3 = corner_region[crossing * 4 + 3];
        if shading.is_shaded(r1) {
            debug_assert!(shading.is_shaded(r3));
            1
        } else {
            debug_assert!(shading.is_shaded(corner_region[crossing * 4]));
            debug_assert!(shading.is_shaded(corner_region[crossing * 4 + 2]));
            -1
        }
    }

    /// Build the checkerboard graph: one vertex per shaded region, one
    /// weighted band per crossing, components with spanning trees and face
    /// walks.
    pub fn checkerboard_graph(
        &self,
        faces: &[Face],
        shading: &Shading,
    ) -> Result<CheckerboardGraph, PdError> {
        let corner_region = self.corner_regions();
        let vertices = shading.s_regions.clone();

        let mut bands = Vec::with_capacity(self.crossings.len());
        for c in 0..self.crossings.len() {
            let (sc0, sc1) = self.shaded_corners(shading, &corner_region, c);
            bands.push(GammaBand {
                crossing: c,
                endpoints: (corner_region[c * 4 + sc0.1], corner_region[c * 4 + sc1.1]),
                weight: self.goeritz_index(shading, &corner_region, c),
            });
        }

        // Component partition over shaded regions.
        let mut index_of: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index_of.insert(v, i);
        }
        let mut dsu = Dsu::new(vertices.len());
        for b in &bands {
            dsu.union(index_of[&b.endpoints.0], index_of[&b.endpoints.1]);
        }
        let mut comp_map: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comp_vertices: Vec<Vec<usize>> = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            let root = dsu.find(i);
            let ci = *comp_map.entry(root).or_insert_with(|| {
                comp_vertices.push(Vec::new());
                comp_vertices.len() - 1
            });
            comp_vertices[ci].push(v);
        }
        let beta = comp_vertices.len();

        // Corner cycles per shaded region for the rotation system. Each
        // boundary cycle of a region is one rotation cycle.
        let cycles = CornerCycles::new(faces);

        // Adjacent-to-outer vertices.
        let arcs = self.dual_arcs(&corner_region);
        let mut outer_adjacent: BTreeSet<usize> = BTreeSet::new();
        for &(a, b, _) in &arcs {
            if a == shading.outer {
                outer_adjacent.insert(b);
            }
            if b == shading.outer {
                outer_adjacent.insert(a);
            }
        }

        let mut components = Vec::with_capacity(beta);
        for verts in comp_vertices {
            let vset: BTreeSet<usize> = verts.iter().copied().collect();
            let comp_bands: Vec<usize> = bands
                .iter()
                .filter(|b| vset.contains(&b.endpoints.0))
                .map(|b| b.crossing)
                .collect();
            let touches_outer = verts.iter().any(|v| outer_adjacent.contains(v));
            components.push(GammaComponent {
                vertices: verts,
                bands: comp_bands,
                tree: BTreeMap::new(),
                walks: Vec::new(),
                ambient: None,
                touches_outer,
            });
        }
        components.sort_by_key(|c| c.vertices.iter().min().copied());

        // Face walks per component.
        let comp_of_region: BTreeMap<usize, usize> = components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| c.vertices.iter().map(move |&v| (v, ci)))
            .collect();
        let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
        for c in 0..self.crossings.len() {
            for k in 0..4 {
                let corner = (c, k);
                if !shading.is_shaded(corner_region[c * 4 + k]) || visited.contains(&corner) {
                    continue;
                }
                let walk = gamma_walk(corner, &cycles);
                for st in &walk {
                    visited.insert(st.from);
                }
                let comp = comp_of_region[&corner_region[c * 4 + k]];
                // The hugger is the region on the left of every step.
                let hug = {
                    let st = walk[0];
                    corner_region[st.crossing * 4 + (st.from.1 + 3) % 4]
                };
                for st in &walk {
                    debug_assert_eq!(
                        corner_region[st.crossing * 4 + (st.from.1 + 3) % 4],
                        hug,
                        "gamma face walk has a constant left region"
                    );
                }
                components[comp].walks.push(GammaWalk {
                    steps: walk,
                    hugger: hug,
                    component: comp,
                });
            }
        }

        // Ambient walk: the one whose hugger reaches the outer region in the
        // dual graph without entering this component's shaded vertices.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.region_count];
        for &(a, b, _) in &arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        for comp in components.iter_mut() {
            if comp.walks.is_empty() {
                continue;
            }
            let blocked: BTreeSet<usize> = comp.vertices.iter().copied().collect();
            let mut seen = vec![false; self.region_count];
            seen[shading.outer] = true;
            let mut queue = VecDeque::from([shading.outer]);
            while let Some(r) = queue.pop_front() {
                for &n in &adj[r] {
                    if !seen[n] && !blocked.contains(&n) {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
            let ambient: Vec<usize> = comp
                .walks
                .iter()
                .enumerate()
                .filter(|(_, w)| seen[w.hugger])
                .map(|(i, _)| i)
                .collect();
            if ambient.len() != 1 {
                return Err(PdError::Syntax {
                    pos: 0,
                    msg: format!(
                        "component has {} ambient walks (corrupted assembly)",
                        ambient.len()
                    ),
                });
            }
            comp.ambient = Some(ambient[0]);
        }

        // Spanning trees by lexicographic BFS from the smallest vertex.
        // Base vertices are re-chosen by the presentation layer; the tree
        // here is rooted deterministically and reused via re-rooting.
        let band_of_crossing: Vec<&GammaBand> = bands.iter().collect();
        for comp in components.iter_mut() {
            let base = *comp.vertices.iter().min().unwrap();
            let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new(); // v -> (neighbor, crossing)
            for &bc in &comp.bands {
                let b = band_of_crossing[bc];
                adj.entry(b.endpoints.0).or_default().push((b.endpoints.1, bc));
                adj.entry(b.endpoints.1).or_default().push((b.endpoints.0, bc));
            }
            for l in adj.values_mut() {
                l.sort();
            }
            let mut seen: BTreeSet<usize> = BTreeSet::from([base]);
            let mut queue = VecDeque::from([base]);
            while let Some(v) = queue.pop_front() {
                if let Some(neigh) = adj.get(&v) {
                    for &(n, bc) in neigh {
                        if seen.insert(n) {
                            let (pc, cc) = self.band_corners_oriented(&corner_region, bc, v);
                            comp.tree.insert(
                                n,
                                TreeEdge {
                                    crossing: bc,
                                    parent_corner: pc,
                                    child_corner: cc,
                                },
                            );
                            queue.push_back(n);
                        }
                    }
                }
            }
        }

        Ok(CheckerboardGraph {
            vertices,
            bands,
            components,
            beta,
        })
    }

    /// The two shaded corners of a crossing.
    fn shaded_corners(
        &self,
        shading: &Shading,
        corner_region: &[usize],
        crossing: usize,
    ) -> ((usize, usize), (usize, usize)) {
        if shading.is_shaded(corner_region[crossing * 4 + 1]) {
            ((crossing, 1), (crossing, 3))
        } else {
            ((crossing, 0), (crossing, 2))
        }
    }

    /// Corners of a band with the one in region `from_region` first.
    fn band_corners_oriented(
        &self,
        corner_region: &[usize],
        crossing: usize,
        from_region: usize,
    ) -> ((usize, usize), (usize, usize)) {
        for k in 0..4 {
            if corner_region[crossing * 4 + k] == from_region {
                return ((crossing, k), (crossing, (k + 2) % 4));
            }
        }
        unreachable!("from_region is an endpoint of the band");
    }

}

/// The rotation system of the checkerboard graph: every region's boundary
/// cycles, with a corner -> (cycle, position) index.
pub struct CornerCycles {
    pub cycles: Vec<Vec<(usize, usize)>>,
    pub position: BTreeMap<(usize, usize), (usize, usize)>,
}

impl CornerCycles {
    pub fn new(faces: &[Face]) -> Self {
        let mut cycles = Vec::new();
        let mut position = BTreeMap::new();
        for f in faces {
            for cyc in &f.cycles {
                let ci = cycles.len();
                for (pos, &corner) in cyc.iter().enumerate() {
                    position.insert(corner, (ci, pos));
                }
                cycles.push(cyc.clone());
            }
        }
        CornerCycles { cycles, position }
    }

    /// The corner preceding `corner` in its rotation cycle.
    pub fn rotate_back(&self, corner: (usize, usize)) -> (usize, usize) {
        let (ci, pos) = self.position[&corner];
        let cyc = &self.cycles[ci];
        cyc[(pos + cyc.len() - 1) % cyc.len()]
    }
}

/// Walk the checkerboard-graph face containing the departure corner
/// `start`, with the face on the left: cross the band to the opposite
/// corner, then rotate one step backwards around the arrival vertex.
pub fn gamma_walk(start: (usize, usize), cycles: &CornerCycles) -> Vec<GammaStep> {
    let mut steps = Vec::new();
    let mut cur = start;
    loop {
        steps.push(GammaStep {
            crossing: cur.0,
            from: cur,
        });
        let opposite = (cur.0, (cur.1 + 2) % 4);
        cur = cycles.rotate_back(opposite);
        if cur == start {
            break;
        }
    }
    steps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Head,
    Tail,
}

#[derive(Debug, Clone)]
enum TermKind {
    Crossing(usize),
    Unknot,
}

#[derive(Debug, Clone)]
enum PieceRaw {
    Crossings(Vec<usize>),
    Unknot,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Decide head/tail for every edge end. Under-strand ends are fixed by the
/// PD convention; over-strand ends are propagated, with sequential edge
/// numbering as the tie-breaker for components that never pass under.
fn orient(crossings: &[Crossing], ends: &[Vec<End>]) -> Result<Vec<[Option<Role>; 4]>, PdError> {
    fn set(
        role: &mut [[Option<Role>; 4]],
        queue: &mut VecDeque<End>,
        (cr, s): End,
        r: Role,
    ) -> Result<(), PdError> {
        match role[cr][s] {
            None => {
                role[cr][s] = Some(r);
                queue.push_back((cr, s));
                Ok(())
            }
            Some(prev) if prev == r => Ok(()),
            Some(_) => Err(PdError::Orientation { crossing: cr }),
        }
    }

    fn process(
        crossings: &[Crossing],
        ends: &[Vec<End>],
        role: &mut [[Option<Role>; 4]],
        queue: &mut VecDeque<End>,
    ) -> Result<(), PdError> {
        while let Some((cr, s)) = queue.pop_front() {
            let r = role[cr][s].unwrap();
            let flip = match r {
                Role::Head => Role::Tail,
                Role::Tail => Role::Head,
            };
            // The other end of this edge has the opposite role.
            let label = crossings[cr].slots[s];
            let other = if ends[label][0] == (cr, s) {
                ends[label][1]
            } else {
                ends[label][0]
            };
            set(role, queue, other, flip)?;
            // Over-strand slots 1 and 3 carry opposite roles.
            if s == 1 || s == 3 {
                set(role, queue, (cr, 4 - s), flip)?;
            }
        }
        Ok(())
    }

    let c = crossings.len();
    let mut role: Vec<[Option<Role>; 4]> = vec![[None; 4]; c];
    let mut queue: VecDeque<End> = VecDeque::new();
    for cr in 0..c {
        set(&mut role, &mut queue, (cr, 0), Role::Head)?;
        set(&mut role, &mut queue, (cr, 2), Role::Tail)?;
    }
    process(crossings, ends, &mut role, &mut queue)?;

    // Components that never pass under: orient along ascending labels.
    loop {
        let mut pending: Option<End> = None;
        for cr in 0..c {
            for s in [1usize, 3] {
                if role[cr][s].is_none()
                    && pending
                        .map_or(true, |(pc, ps)| crossings[cr].slots[s] < crossings[pc].slots[ps])
                {
                    pending = Some((cr, s));
                }
            }
        }
        let Some((cr, s)) = pending else { break };
        // Treat the over edge here as incoming if its partner continues the
        // numbering, otherwise outgoing.
        let l1 = crossings[cr].slots[s];
        let l3 = crossings[cr].slots[4 - s];
        let r = if l3 == l1 + 1 { Role::Head } else { Role::Tail };
        set(&mut role, &mut queue, (cr, s), r)?;
        process(crossings, ends, &mut role, &mut queue)?;
    }
    Ok(role)
}

fn trace_components(
    crossings: &[Crossing],
    ends: &[Vec<End>],
    role: &[[Option<Role>; 4]],
    pieces_raw: &[PieceRaw],
    crossing_piece: &[usize],
) -> Result<(Vec<Component>, Vec<usize>), PdError> {
    let edge_count = crossings.len() * 2;
    let mut edge_component = vec![usize::MAX; edge_count + 1];
    let mut components: Vec<Component> = Vec::new();
    for start in 1..=edge_count {
        if edge_component[start] != usize::MAX {
            continue;
        }
        let idx = components.len();
        let mut edges = Vec::new();
        let mut label = start;
        loop {
            edge_component[label] = idx;
            edges.push(label);
            // Advance through the crossing at this edge's head.
            let (a, b) = (ends[label][0], ends[label][1]);
            let head = if role[a.0][a.1] == Some(Role::Head) { a } else { b };
            debug_assert_eq!(role[head.0][head.1], Some(Role::Head));
            let next_end = (head.0, (head.1 + 2) % 4);
            if role[next_end.0][next_end.1] != Some(Role::Tail) {
                return Err(PdError::Orientation { crossing: head.0 });
            }
            label = crossings[next_end.0].slots[next_end.1];
            if label == start {
                break;
            }
            if edge_component[label] != usize::MAX {
                return Err(PdError::Orientation { crossing: next_end.0 });
            }
        }
        components.push(Component {
            edges,
            piece: crossing_piece[ends[start][0].0],
        });
    }
    // Zero-crossing components, in piece order.
    for (pi, pr) in pieces_raw.iter().enumerate() {
        if matches!(pr, PieceRaw::Unknot) {
            components.push(Component {
                edges: Vec::new(),
                piece: pi,
            });
        }
    }
    Ok((components, edge_component))
}

/// Sphere faces of one crossing-piece: orbits of the corner-walk map.
/// From corner (c, k) cross the edge at slot k; arriving at (c', s') the
/// next corner is (c', s' - 1 mod 4).
fn piece_faces(crossings: &[Crossing], ends: &[Vec<End>], piece: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let in_piece: BTreeSet<usize> = piece.iter().copied().collect();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for &c in piece {
        for k in 0..4 {
            if seen.contains(&(c, k)) {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = (c, k);
            loop {
                walk.push(cur);
                seen.insert(cur);
                let label = crossings[cur.0].slots[cur.1];
                let (a, b) = (ends[label][0], ends[label][1]);
                let other = if a == cur { b } else { a };
                debug_assert!(in_piece.contains(&other.0));
                cur = (other.0, (other.1 + 3) % 4);
                if cur == (c, k) {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    faces
}

fn default_outer_local(faces: &[Vec<(usize, usize)>]) -> usize {
    let mut best = 0;
    let mut best_len = 0;
    for (i, f) in faces.iter().enumerate() {
        if f.len() > best_len {
            best = i;
            best_len = f.len();
        }
    }
    best
}

fn canonical_source(
    crossings: &[Crossing],
    pieces_raw: &[PieceRaw],
    nesting: &[Option<usize>],
) -> String {
    let mut terms: Vec<String> = crossings
        .iter()
        .map(|c| format!("X[{},{},{},{}]", c.slots[0], c.slots[1], c.slots[2], c.slots[3]))
        .collect();
    for pr in pieces_raw {
        if matches!(pr, PieceRaw::Unknot) {
            terms.push("O".to_string());
        }
    }
    for (p, host) in nesting.iter().enumerate() {
        if let Some(f) = host {
            terms.push(format!("IN({},{})", p, f));
        }
    }
    terms.join(" ")
}
