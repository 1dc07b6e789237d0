//! Graph manifolds as plumbing graphs of Seifert pieces.
//!
//! Nodes are Seifert pieces; an edge glues boundary torus `i` of node `v` to
//! boundary torus `j` of node `w`. Each boundary torus has the basis
//! `(dᵢ, h)` (section curve, fiber), and the gluing matrix `A` acts as
//!
//! ```text
//! d_w,j = A₁₁·d_v,i + A₁₂·h_v
//! h_w   = A₂₁·d_v,i + A₂₂·h_v
//! ```
//!
//! `H₁` of the glued manifold is the quotient of the pieces' groups by these
//! identifications, plus one free generator `loopₑ` for every edge outside a
//! spanning tree (the circle dual to that gluing torus).

use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianPresentation, IntMatrix, Order};
use crate::error::{Error, Result};
use crate::norm::{thurston_norm_sfs, CohomologyClass, FiberHypothesis, NormResult};
use crate::rational::{int, Rat};
use crate::s1cw::{check_gluing_formula, S1CWComplex};
use crate::seifert::{ExceptionalFiber, SeifertInvariants};
use crate::torsion::TorsionFunction;

/// Unimodular 2×2 matrix acting on `(d, h)` boundary bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GluingMatrix(pub [[i64; 2]; 2]);

impl GluingMatrix {
    pub const IDENTITY: GluingMatrix = GluingMatrix([[1, 0], [0, 1]]);
    /// `diag(1, −1)`: sections matched, fiber reversed.
    pub const REFLECT_FIBER: GluingMatrix = GluingMatrix([[1, 0], [0, -1]]);

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Sends the fiber of one side to `±` the fiber of the other.
    pub fn preserves_fiber(&self) -> bool {
        self.0[1][0] == 0
    }
}

/// Boundary torus `slot` of node `node`; serialized as `[node, slot]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Slot {
    pub node: usize,
    pub slot: usize,
}

impl From<(usize, usize)> for Slot {
    fn from((node, slot): (usize, usize)) -> Self {
        Slot { node, slot }
    }
}

impl From<Slot> for (usize, usize) {
    fn from(s: Slot) -> Self {
        (s.node, s.slot)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: Slot,
    pub to: Slot,
    pub matrix: GluingMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlumbingGraph {
    pub nodes: Vec<SeifertInvariants>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

/// `H₁` of a plumbing graph together with the bookkeeping to move classes
/// between the glued manifold and its pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssembledManifold {
    graph: PlumbingGraph,
    presentation: AbelianPresentation,
    node_offsets: Vec<usize>,
    /// Global index of the loop generator of each non-tree edge.
    loop_generators: Vec<(usize, usize)>,
    warnings: Vec<String>,
}

/// Norm of a class on a graph manifold, piece by piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNorm {
    /// Per node; `hypothesis_fiber_infinite_order` refers to the glued manifold.
    pub pieces: Vec<NormResult>,
    pub total: Rat,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl PlumbingGraph {
    pub fn new(nodes: Vec<SeifertInvariants>, edges: Vec<Edge>) -> Result<Self> {
        let g = PlumbingGraph { nodes, edges };
        g.validate()?;
        Ok(g)
    }

    /// A graph with one node and no edges.
    pub fn single(node: SeifertInvariants) -> Self {
        PlumbingGraph {
            nodes: vec![node],
            edges: vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGraph(msg));
        if self.nodes.is_empty() {
            return bad("graph has no nodes".into());
        }
        for (v, node) in self.nodes.iter().enumerate() {
            node.validate().map_err(|e| e.at_node(v))?;
        }
        let mut used = HashSet::new();
        for (e, edge) in self.edges.iter().enumerate() {
            for end in [edge.from, edge.to] {
                let Some(node) = self.nodes.get(end.node) else {
                    return bad(format!("edge {e} refers to missing node {}", end.node));
                };
                if end.slot >= node.boundary_count as usize {
                    return bad(format!(
                        "edge {e}: node {} has {} boundary tori, slot {} does not exist",
                        end.node, node.boundary_count, end.slot
                    ));
                }
                if !used.insert(end) {
                    return bad(format!(
                        "edge {e}: slot {} of node {} is already glued",
                        end.slot, end.node
                    ));
                }
            }
            if edge.matrix.det().abs() != 1 {
                return bad(format!("edge {e}: gluing matrix has determinant {}", edge.matrix.det()));
            }
        }
        let mut uf = UnionFind::new(self.nodes.len());
        for edge in &self.edges {
            uf.union(edge.from.node, edge.to.node);
        }
        let root = uf.find(0);
        if (1..self.nodes.len()).any(|v| uf.find(v) != root) {
            return bad("graph is not connected".into());
        }
        Ok(())
    }

    /// Edges not in the spanning tree obtained by scanning edges in order.
    fn cycle_edges(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.nodes.len());
        (0..self.edges.len())
            .filter(|&e| !uf.union(self.edges[e].from.node, self.edges[e].to.node))
            .collect()
    }

    pub fn assemble(&self) -> Result<AssembledManifold> {
        self.validate()?;
        for (v, node) in self.nodes.iter().enumerate() {
            if let Some(ex) = node.exclusion() {
                return Err(Error::Excluded(ex).at_node(v));
            }
        }

        let mut names = Vec::new();
        let mut node_offsets = Vec::with_capacity(self.nodes.len());
        let mut blocks = Vec::with_capacity(self.nodes.len());
        for (v, node) in self.nodes.iter().enumerate() {
            node_offsets.push(names.len());
            let p = node.abelianized_presentation().map_err(|e| e.at_node(v))?;
            names.extend(p.generators().iter().map(|g| format!("n{v}.{g}")));
            blocks.push(p);
        }
        let loop_generators: Vec<(usize, usize)> = self
            .cycle_edges()
            .into_iter()
            .map(|e| {
                names.push(format!("loop{e}"));
                (e, names.len() - 1)
            })
            .collect();

        let n = names.len();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut big_rows = Vec::new();
        for (v, p) in blocks.iter().enumerate() {
            let rel = p.relations();
            for r in 0..rel.rows() {
                let mut row = vec![num_bigint::BigInt::zero(); n];
                for (c, x) in rel.row(r).iter().enumerate() {
                    row[node_offsets[v] + c] = x.clone();
                }
                big_rows.push(row);
            }
        }

        let mut warnings = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            let [[a11, a12], [a21, a22]] = edge.matrix.0;
            let (v, w) = (edge.from.node, edge.to.node);
            let dv = node_offsets[v] + self.nodes[v].boundary_generator_index(edge.from.slot);
            let hv = node_offsets[v] + self.nodes[v].fiber_generator_index();
            let dw = node_offsets[w] + self.nodes[w].boundary_generator_index(edge.to.slot);
            let hw = node_offsets[w] + self.nodes[w].fiber_generator_index();

            let mut r = vec![0i64; n];
            r[dw] += 1;
            r[dv] -= a11;
            r[hv] -= a12;
            rows.push(r);
            let mut r = vec![0i64; n];
            r[hw] += 1;
            r[dv] -= a21;
            r[hv] -= a22;
            rows.push(r);

            if edge.matrix.preserves_fiber() {
                warnings.push(format!(
                    "edge {e} matches fiber to fiber; the Seifert fibrations extend across this torus, so it is not a JSJ torus"
                ));
            }
        }

        let mut entries: Vec<num_bigint::BigInt> = big_rows.into_iter().flatten().collect();
        entries.extend(rows.iter().flatten().map(|&x| num_bigint::BigInt::from(x)));
        let relation_count = entries.len() / n.max(1);
        let relations = if n == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::new(relation_count, n, entries)?
        };
        let presentation = AbelianPresentation::new(names, relations)?;

        Ok(AssembledManifold {
            graph: self.clone(),
            presentation,
            node_offsets,
            loop_generators,
            warnings,
        })
    }
}

impl AssembledManifold {
    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn presentation(&self) -> &AbelianPresentation {
        &self.presentation
    }

    pub fn node_offsets(&self) -> &[usize] {
        &self.node_offsets
    }

    pub fn loop_generators(&self) -> &[(usize, usize)] {
        &self.loop_generators
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Global index of node `v`'s fiber generator.
    pub fn fiber_index(&self, v: usize) -> usize {
        self.node_offsets[v] + self.graph.nodes[v].fiber_generator_index()
    }

    /// Order of node `v`'s regular fiber in `H₁` of the glued manifold.
    pub fn fiber_order(&self, v: usize) -> Result<Order> {
        self.presentation.generator_order(self.fiber_index(v))
    }

    pub fn class(&self, values: Vec<Rat>) -> Result<CohomologyClass> {
        CohomologyClass::new(&self.presentation, values)
    }

    /// Pulls `phi` back to node `v`.
    pub fn restrict(&self, phi: &CohomologyClass, v: usize) -> Result<CohomologyClass> {
        self.check_class(phi)?;
        let node = self
            .graph
            .nodes
            .get(v)
            .ok_or_else(|| Error::InvalidArgument(format!("no node {v}")))?;
        let p = node.abelianized_presentation()?;
        let values = phi.slice(self.node_offsets[v], p.generators().len());
        CohomologyClass::new(&p, values).map_err(|e| e.at_node(v))
    }

    fn check_class(&self, phi: &CohomologyClass) -> Result<()> {
        let violated = self.presentation.violated_relations(phi.values())?;
        if violated.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidClass { violated })
        }
    }

    /// Sum of the pieces' norms.
    pub fn norm(&self, phi: &CohomologyClass) -> Result<GraphNorm> {
        self.check_class(phi)?;
        let mut pieces = Vec::with_capacity(self.graph.nodes.len());
        for (v, node) in self.graph.nodes.iter().enumerate() {
            let local = self.restrict(phi, v)?;
            let mut r = thurston_norm_sfs(node, &local).map_err(|e| e.at_node(v))?;
            r.hypothesis_fiber_infinite_order = self.fiber_order(v)?.is_infinite();
            pieces.push(r);
        }
        let total = pieces.iter().map(|p| &p.norm).sum();
        Ok(GraphNorm { pieces, total })
    }

    /// Product of `max{1, t^{x_v}}` over the pieces.
    pub fn torsion(&self, phi: &CohomologyClass, hypothesis: FiberHypothesis) -> Result<TorsionFunction> {
        let norm = self.norm(phi)?;
        if hypothesis == FiberHypothesis::Verify {
            if let Some(v) = norm.pieces.iter().position(|p| !p.hypothesis_fiber_infinite_order) {
                return Err(Error::FiberFiniteOrder {
                    order: self.fiber_order(v)?,
                }
                .at_node(v));
            }
        }
        Ok(norm
            .pieces
            .iter()
            .map(|p| TorsionFunction::from_exponent(&p.norm, 1))
            .product())
    }
}

pub fn graph_norm(graph: &PlumbingGraph, phi: &CohomologyClass) -> Result<Rat> {
    Ok(graph.assemble()?.norm(phi)?.total)
}

pub fn graph_torsion(
    graph: &PlumbingGraph,
    phi: &CohomologyClass,
    hypothesis: FiberHypothesis,
) -> Result<TorsionFunction> {
    graph.assemble()?.torsion(phi, hypothesis)
}

/// Glues `s` to its mirror image along every boundary torus by
/// `diag(1, −1)`.
pub fn double(s: &SeifertInvariants) -> Result<PlumbingGraph> {
    s.validate()?;
    if s.boundary_count == 0 {
        return Err(Error::InvalidArgument("cannot double a closed manifold".into()));
    }
    let edges = (0..s.boundary_count as usize)
        .map(|i| Edge {
            from: Slot { node: 0, slot: i },
            to: Slot { node: 1, slot: i },
            matrix: GluingMatrix::REFLECT_FIBER,
        })
        .collect();
    PlumbingGraph::new(vec![s.clone(), s.mirror()], edges)
}

/// The class on the double of `s` that restricts to `phi` on both halves
/// (the mirror half sees the fiber with reversed orientation).
pub fn doubled_class(s: &SeifertInvariants, phi: &CohomologyClass) -> Result<(AssembledManifold, CohomologyClass)> {
    let assembled = double(s)?.assemble()?;
    let mut values = phi.values().to_vec();
    let mut mirrored = phi.values().to_vec();
    let h = s.fiber_generator_index();
    mirrored[h] = -&mirrored[h];
    values.extend(mirrored);
    values.extend(std::iter::repeat_n(Rat::zero(), assembled.loop_generators.len()));
    let class = assembled.class(values)?;
    Ok((assembled, class))
}

/// Which part of an orientable-base piece goes to the first side of a
/// separating vertical torus. The rest goes to the second side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutSide {
    pub genus: u32,
    pub boundary: u32,
    /// The first `exceptional` fibers.
    pub exceptional: usize,
}

/// A piece cut along a separating vertical torus, as a two-node graph.
#[derive(Clone, Debug)]
pub struct VerticalCut {
    pub original: SeifertInvariants,
    pub side: CutSide,
    pub graph: PlumbingGraph,
}

/// Cuts an orientable-base piece along a separating vertical torus. The
/// new boundary torus is the last slot of both sides; they are glued by
/// `[[−1, e₀], [0, 1]]` so that the closed-case Euler obstruction survives.
pub fn cut_vertical(s: &SeifertInvariants, side: CutSide) -> Result<VerticalCut> {
    s.validate()?;
    if !s.base_orientable {
        return Err(Error::NonOrientableBase);
    }
    if side.genus > s.genus || side.boundary > s.boundary_count || side.exceptional > s.exceptional.len() {
        return Err(Error::InvalidArgument(format!("cut side {side:?} exceeds the piece")));
    }
    let e0 = s.euler_obstruction.unwrap_or(0);
    let left = SeifertInvariants::orientable(
        side.genus,
        side.boundary + 1,
        s.exceptional[..side.exceptional].to_vec(),
        None,
    )?;
    let right = SeifertInvariants::orientable(
        s.genus - side.genus,
        s.boundary_count - side.boundary + 1,
        s.exceptional[side.exceptional..].to_vec(),
        None,
    )?;
    let edge = Edge {
        from: Slot {
            node: 0,
            slot: side.boundary as usize,
        },
        to: Slot {
            node: 1,
            slot: (s.boundary_count - side.boundary) as usize,
        },
        matrix: GluingMatrix([[-1, e0], [0, 1]]),
    };
    let graph = PlumbingGraph::new(vec![left, right], vec![edge])?;
    Ok(VerticalCut {
        original: s.clone(),
        side,
        graph,
    })
}

impl VerticalCut {
    /// Moves a class on the original piece to the glued two-node graph.
    pub fn transfer_class(&self, assembled: &AssembledManifold, phi: &CohomologyClass) -> Result<CohomologyClass> {
        let s = &self.original;
        let v = phi.values();
        if v.len() != s.generator_names().len() {
            return Err(Error::DimensionMismatch {
                expected: s.generator_names().len(),
                found: v.len(),
            });
        }
        let g_left = 2 * self.side.genus as usize;
        let g_all = 2 * s.genus as usize;
        let n_left = self.side.exceptional;
        let n_all = s.exceptional.len();
        let b_left = self.side.boundary as usize;
        let b_all = s.boundary_count as usize;
        let (xs, rest) = v.split_at(g_all);
        let (qs, rest) = rest.split_at(n_all);
        let (ds, hs) = rest.split_at(b_all);
        let h = &hs[0];
        let e0 = int(s.euler_obstruction.unwrap_or(0));

        let c_left: Rat = -(qs[..n_left].iter().chain(&ds[..b_left]).sum::<Rat>());
        let c_right = -&c_left + &e0 * h;

        let mut out = Vec::new();
        out.extend_from_slice(&xs[..g_left]);
        out.extend_from_slice(&qs[..n_left]);
        out.extend_from_slice(&ds[..b_left]);
        out.push(c_left);
        out.push(h.clone());
        out.extend_from_slice(&xs[g_left..]);
        out.extend_from_slice(&qs[n_left..]);
        out.extend_from_slice(&ds[b_left..]);
        out.push(c_right);
        out.push(h.clone());
        assembled.class(out)
    }
}

/// Result of cutting a Klein-bottle-base piece into two orientable pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinCutReport {
    pub whole: SeifertInvariants,
    pub pieces: PlumbingGraph,
    pub whole_chi_orb: Rat,
    pub piece_chi_orb: [Rat; 2],
    pub homology_matches: bool,
    /// Norms of the whole over a basis of its classes.
    pub whole_norms: Vec<Rat>,
    /// Glued norms over a basis of the reassembled manifold's classes.
    pub glued_norms: Vec<Rat>,
    pub norm_additive: bool,
    pub torsion_multiplicative: bool,
}

impl KleinCutReport {
    pub fn chi_additive(&self) -> bool {
        self.whole_chi_orb == &self.piece_chi_orb[0] + &self.piece_chi_orb[1]
    }

    pub fn passes(&self) -> bool {
        self.chi_additive() && self.homology_matches && self.norm_additive && self.torsion_multiplicative
    }
}

/// The Klein bottle with two holes and the given cone points, and its cut
/// along two vertical tori: a planar piece with four boundary tori carrying
/// every cone point, and an annulus piece `T²×I`. Gluing one pair of tori
/// by the identity and the other by `diag(1, −1)` restores the
/// non-orientable base.
pub fn klein_cut(exceptional: &[ExceptionalFiber]) -> Result<(SeifertInvariants, PlumbingGraph)> {
    let whole = SeifertInvariants::non_orientable(2, 2, exceptional.to_vec(), None)?;
    let planar = SeifertInvariants::orientable(0, 4, exceptional.to_vec(), None)?;
    let annulus = SeifertInvariants::orientable(0, 2, vec![], None)?;
    let edges = vec![
        Edge {
            from: Slot { node: 0, slot: 2 },
            to: Slot { node: 1, slot: 0 },
            matrix: GluingMatrix::IDENTITY,
        },
        Edge {
            from: Slot { node: 0, slot: 3 },
            to: Slot { node: 1, slot: 1 },
            matrix: GluingMatrix::REFLECT_FIBER,
        },
    ];
    Ok((whole, PlumbingGraph::new(vec![planar, annulus], edges)?))
}

fn basis_classes(p: &AbelianPresentation) -> Result<Vec<CohomologyClass>> {
    p.class_basis()
        .into_iter()
        .map(|b| CohomologyClass::new(p, b.into_iter().map(Rat::from_integer).collect()))
        .collect()
}

/// Compares the Klein-bottle-base piece with its two orientable pieces:
/// `χ_orb` additivity, equal `H₁`, norm additivity over class bases, and
/// torsion multiplicativity with unit torus factors.
///
/// The fiber has order two in `H₁` here, so the infinite-order hypothesis
/// is asserted (it holds in `π₁`).
pub fn cut_check_klein(exceptional: &[ExceptionalFiber]) -> Result<KleinCutReport> {
    let (whole, graph) = klein_cut(exceptional)?;
    let assembled = graph.assemble()?;
    let whole_p = whole.abelianized_presentation()?;

    let mut whole_norms = Vec::new();
    let mut glued_norms = Vec::new();
    let mut norm_additive = true;
    let mut torsion_multiplicative = true;

    let mut whole_torsions = Vec::new();
    let mut glued_torsions = Vec::new();
    for phi in basis_classes(&whole_p)? {
        let r = thurston_norm_sfs(&whole, &phi)?;
        whole_torsions.push(crate::norm::sfs_torsion(&whole, &phi, FiberHypothesis::Assert)?);
        whole_norms.push(r.norm);
    }
    for phi in basis_classes(assembled.presentation())? {
        let gn = assembled.norm(&phi)?;
        let sum: Rat = gn.pieces.iter().map(|p| &p.norm).sum();
        norm_additive &= sum == gn.total;
        let tau_pieces: Vec<TorsionFunction> = gn
            .pieces
            .iter()
            .map(|p| TorsionFunction::from_exponent(&p.norm, 1))
            .collect();
        let k = &gn.pieces[0].k_phi;
        let tori = S1CWComplex::torus().torsion(k) * S1CWComplex::torus().torsion(k);
        let glued = assembled.torsion(&phi, FiberHypothesis::Assert)?;
        torsion_multiplicative &= check_gluing_formula(&tori, &tau_pieces[0], &tau_pieces[1], &glued);
        glued_norms.push(gn.total);
        glued_torsions.push(glued);
    }
    // Same group on both sides, so a norm (torsion) that is trivial on one
    // basis must be trivial on the other.
    let all_zero = |v: &[Rat]| v.iter().all(Zero::is_zero);
    let all_unit = |v: &[TorsionFunction]| v.iter().all(TorsionFunction::is_unit);
    norm_additive &= all_zero(&whole_norms) == all_zero(&glued_norms);
    torsion_multiplicative &= all_unit(&whole_torsions) == all_unit(&glued_torsions);

    Ok(KleinCutReport {
        whole_chi_orb: whole.chi_orb(),
        piece_chi_orb: [graph.nodes[0].chi_orb(), graph.nodes[1].chi_orb()],
        homology_matches: whole_p.cokernel() == assembled.presentation().cokernel(),
        whole,
        pieces: graph,
        whole_norms,
        glued_norms,
        norm_additive,
        torsion_multiplicative,
    })
}
