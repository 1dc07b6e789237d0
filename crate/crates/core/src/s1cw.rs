//! S¹-CW-complexes with finite isotropy.
//!
//! Each orbit cell `S¹/H × Dⁿ` is recorded by its dimension `n` and the order
//! of its cyclic isotropy group `H`. Attaching maps are not modeled: the
//! orbifold Euler characteristic and the torsion only see these numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::seifert::SeifertInvariants;
use crate::torsion::TorsionFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitCell {
    pub dim: usize,
    pub isotropy: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct S1CWComplex {
    cells: Vec<OrbitCell>,
}

impl S1CWComplex {
    pub fn new(cells: Vec<OrbitCell>) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| c.isotropy == 0) {
            return Err(Error::InvalidArgument(format!(
                "cell of dimension {} has isotropy order 0",
                c.dim
            )));
        }
        Ok(S1CWComplex { cells })
    }

    /// `by_dimension[n]` lists the isotropy orders of the `n`-cells.
    pub fn from_dimension_lists(by_dimension: &[Vec<u64>]) -> Result<Self> {
        let cells = by_dimension
            .iter()
            .enumerate()
            .flat_map(|(dim, orders)| orders.iter().map(move |&isotropy| OrbitCell { dim, isotropy }))
            .collect();
        Self::new(cells)
    }

    pub fn to_dimension_lists(&self) -> Vec<Vec<u64>> {
        let top = self.cells.iter().map(|c| c.dim + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); top];
        for c in &self.cells {
            out[c.dim].push(c.isotropy);
        }
        out
    }

    /// A single free orbit: the circle.
    pub fn circle() -> Self {
        S1CWComplex {
            cells: vec![OrbitCell { dim: 0, isotropy: 1 }],
        }
    }

    /// `S¹×S¹`: one free 0-cell and one free 1-cell.
    pub fn torus() -> Self {
        S1CWComplex {
            cells: vec![OrbitCell { dim: 0, isotropy: 1 }, OrbitCell { dim: 1, isotropy: 1 }],
        }
    }

    /// `S¹×D²` over a disk with one vertex, one edge and one face.
    pub fn solid_torus() -> Self {
        S1CWComplex {
            cells: (0..3).map(|dim| OrbitCell { dim, isotropy: 1 }).collect(),
        }
    }

    pub fn cells(&self) -> &[OrbitCell] {
        &self.cells
    }

    /// Returns the complex with one more orbit cell.
    pub fn attach(&self, dim: usize, isotropy: u64) -> Result<Self> {
        let mut cells = self.cells.clone();
        cells.push(OrbitCell { dim, isotropy });
        Self::new(cells)
    }

    pub fn disjoint_union(&self, other: &S1CWComplex) -> Self {
        S1CWComplex {
            cells: self.cells.iter().chain(&other.cells).copied().collect(),
        }
    }

    /// `Σₙ (−1)ⁿ Σ_{cells of dim n} 1/|H|`.
    pub fn chi_orb(&self) -> Rat {
        self.cells.iter().fold(Rat::zero(), |acc, c| {
            let w = Rat::new(BigInt::one(), BigInt::from(c.isotropy));
            if c.dim % 2 == 0 {
                acc + w
            } else {
                acc - w
            }
        })
    }

    /// `max{1, t^k}^{−χ_orb}` where `k` is the value of `φ` on an orbit.
    ///
    /// Valid when `γ` is injective on the orbit's fundamental group; that
    /// cannot be seen from cell data and is the caller's assertion.
    pub fn torsion(&self, k: &Rat) -> TorsionFunction {
        TorsionFunction::rational_pow(k, &-self.chi_orb())
    }

    /// S¹-CW structure of a Seifert space over an orientable base.
    ///
    /// The base `Σ_{g,b}` gets one free vertex with `2g` loops and a face;
    /// each boundary circle adds a vertex, its loop and a connecting edge;
    /// each cone point adds a vertex with isotropy `a` and a slit edge.
    pub fn from_seifert(s: &SeifertInvariants) -> Result<Self> {
        s.validate()?;
        if !s.base_orientable {
            return Err(Error::NonOrientableBase);
        }
        let g = s.genus as usize;
        let b = s.boundary_count as usize;
        let n = s.exceptional.len();
        let free = |dim| OrbitCell { dim, isotropy: 1 };

        let mut cells = Vec::new();
        cells.extend(std::iter::repeat_n(free(0), 1 + b));
        cells.extend(s.exceptional.iter().map(|f| OrbitCell {
            dim: 0,
            isotropy: f.index as u64,
        }));
        cells.extend(std::iter::repeat_n(free(1), 2 * g + 2 * b + n));
        cells.push(free(2));
        Self::new(cells)
    }
}

/// `τ(Y)·τ(X,Y) ≐ τ(X)` for a subcomplex `Y ⊂ X`.
pub fn check_product_formula(tau_x: &TorsionFunction, tau_y: &TorsionFunction, tau_pair: &TorsionFunction) -> bool {
    &(tau_y * tau_pair) == tau_x
}

/// `τ(X₃)·τ(X₀) ≐ τ(X₂)·τ(X₁)` for a pushout `X₃ = X₁ ∪_{X₀} X₂`.
pub fn check_gluing_formula(
    tau_x0: &TorsionFunction,
    tau_x1: &TorsionFunction,
    tau_x2: &TorsionFunction,
    tau_x3: &TorsionFunction,
) -> bool {
    tau_x3 * tau_x0 == tau_x2 * tau_x1
}
