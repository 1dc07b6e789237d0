//! Built-in manifests.

use fibertorsion::graph::{doubled_class, klein_cut};
use fibertorsion::rational::{int, Rat};
use fibertorsion::{CohomologyClass, ExceptionalFiber, PlumbingGraph, S1CWComplex, SeifertInvariants};
use num_integer::Integer;

use crate::error::{CliError, Result};
use crate::manifest::{Manifest, Model};

/// The `(p, q)` torus-knot exterior: a disk with cone points `(p, p′)` and
/// `(q, q′)`, where `0 < p′ < p` and `p·q′ + q·p′ = 1`.
pub fn torus_knot_invariants(p: i64, q: i64) -> Result<SeifertInvariants> {
    if !(2 <= p && p < q) {
        return Err(CliError::Usage(format!("torus knot needs 2 <= p < q, got ({p}, {q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(CliError::Usage(format!(
            "torus knot needs coprime p and q, got ({p}, {q})"
        )));
    }
    let p1 = q.extended_gcd(&p).x.rem_euclid(p);
    let q1 = (1 - q * p1) / p;
    Ok(SeifertInvariants::orientable(
        0,
        1,
        vec![ExceptionalFiber::new(p, p1), ExceptionalFiber::new(q, q1)],
        None,
    )?)
}

/// The torus-knot manifest with its `primitive` class: `φ(d₁) = 1`,
/// `φ(h) = pq`.
pub fn torus_knot(p: i64, q: i64) -> Result<Manifest> {
    let s = torus_knot_invariants(p, q)?;
    let (p1, q1) = (s.exceptional[0].slope, s.exceptional[1].slope);
    let values = [-p1 * q, -q1 * p, 1, p * q].map(int);
    Ok(Manifest::new(Model::Seifert(s)).with_class("primitive", values))
}

pub fn trefoil() -> Manifest {
    torus_knot(2, 3).expect("(2, 3) is a torus knot")
}

/// `S¹×D²` as one free cell in each dimension 0, 1, 2; `primitive` has `k = 1`.
pub fn unknot() -> Manifest {
    Manifest::new(Model::S1cw(S1CWComplex::solid_torus())).with_class("primitive", [int(1)])
}

/// A single free orbit, `k = 1`.
pub fn circle() -> Manifest {
    Manifest::new(Model::S1cw(S1CWComplex::circle())).with_class("primitive", [int(1)])
}

/// `S¹×Σ_g` with the class dual to the base (`fiber`, `φ(h) = 1`) and, for
/// `g ≥ 1`, the class `x1` that is 1 on the first handle.
pub fn product(genus: u32) -> Manifest {
    let s = SeifertInvariants::product(genus);
    let n = s.generator_names().len();
    let unit_at = |i: usize| (0..n).map(move |j| int(i64::from(i == j)));
    let mut m = Manifest::new(Model::Seifert(s.clone())).with_class("fiber", unit_at(s.fiber_generator_index()));
    if genus >= 1 {
        m = m.with_class("x1", unit_at(0));
    }
    m
}

/// The trefoil exterior glued to its mirror image along the boundary.
pub fn double_trefoil() -> Manifest {
    let t = torus_knot_invariants(2, 3).expect("(2, 3) is a torus knot");
    let p = t.abelianized_presentation().expect("valid invariants");
    let phi = CohomologyClass::from_integers(&p, &[-3, 2, 1, 6]).expect("primitive class");
    let (assembled, class) = doubled_class(&t, &phi).expect("trefoil has boundary");
    Manifest::new(Model::Graph(assembled.graph().clone())).with_class("primitive", class.values().to_vec())
}

/// A Klein-bottle base with two holes cut into a planar piece and `T²×I`.
/// Classes `b0, b1, …` are a basis of the integral classes. The fiber has
/// order two in `H₁`, so the manifest asserts the hypothesis.
pub fn klein_cut_graph(exceptional: &[ExceptionalFiber]) -> Result<Manifest> {
    let (_, graph) = klein_cut(exceptional)?;
    let mut m = graph_with_basis(graph)?;
    m.options.assert_hypothesis = true;
    Ok(m)
}

fn graph_with_basis(graph: PlumbingGraph) -> Result<Manifest> {
    let assembled = graph.assemble()?;
    let mut m = Manifest::new(Model::Graph(graph));
    for (i, b) in assembled.presentation().class_basis().into_iter().enumerate() {
        m = m.with_class(&format!("b{i}"), b.into_iter().map(Rat::from_integer));
    }
    Ok(m)
}

/// Every preset with default parameters, keyed by its CLI name. All are
/// admissible (`product 0` is S1xS2 and is left out).
pub fn all() -> Vec<(String, Manifest)> {
    let mut out = vec![
        ("trefoil".to_string(), trefoil()),
        ("unknot".to_string(), unknot()),
        ("circle".to_string(), circle()),
        ("double-trefoil".to_string(), double_trefoil()),
        (
            "klein-cut".to_string(),
            klein_cut_graph(&[ExceptionalFiber::new(2, 1)]).expect("valid cut"),
        ),
    ];
    for g in 1..=3 {
        out.push((format!("product {g}"), product(g)));
    }
    for q in 3..=9 {
        for p in 2..q {
            if let Ok(m) = torus_knot(p, q) {
                out.push((format!("torus-knot {p} {q}"), m));
            }
        }
    }
    out
}
