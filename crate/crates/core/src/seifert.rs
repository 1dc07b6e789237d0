//! Seifert invariants, the abelianized fundamental group, and the orbifold
//! Euler characteristic of the base.
//!
//! Generator order of the presentation is fixed: surface generators
//! (`x1 y1 … xg yg` for an orientable base, `z1 … zk` otherwise), then the
//! exceptional fiber classes `q1 … qn`, then the boundary sections
//! `d1 … db`, and finally the regular fiber `h`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AbelianPresentation, IntMatrix, Order};
use crate::error::{Error, Result};
use crate::rational::{int, Rat};

/// Index `a ≥ 2` and slope `b` of an exceptional fiber, with `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct ExceptionalFiber {
    pub index: i64,
    pub slope: i64,
}

impl ExceptionalFiber {
    pub fn new(index: i64, slope: i64) -> Self {
        ExceptionalFiber { index, slope }
    }
}

impl From<(i64, i64)> for ExceptionalFiber {
    fn from((index, slope): (i64, i64)) -> Self {
        ExceptionalFiber { index, slope }
    }
}

impl From<ExceptionalFiber> for (i64, i64) {
    fn from(f: ExceptionalFiber) -> Self {
        (f.index, f.slope)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertInvariants {
    pub base_orientable: bool,
    /// Orientable genus, or the number of crosscaps for a non-orientable base.
    pub genus: u32,
    pub boundary_count: u32,
    #[serde(default)]
    pub exceptional: Vec<ExceptionalFiber>,
    /// Present exactly when the manifold is closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_obstruction: Option<i64>,
}

/// Manifolds to which the torsion formula does not apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exclusion {
    #[serde(rename = "S1xS2")]
    S1xS2,
    #[serde(rename = "S1xD2")]
    S1xD2,
    #[serde(rename = "RP2-base")]
    ProjectivePlaneBase,
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exclusion::S1xS2 => "S1xS2",
            Exclusion::S1xD2 => "S1xD2",
            Exclusion::ProjectivePlaneBase => "RP2-base",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedManifoldReport {
    pub chi_base: Rat,
    pub chi_orb: Rat,
    pub excluded: Option<Exclusion>,
    /// `χ_orb < 0`, the aspherical range.
    pub chi_orb_negative: bool,
}

impl SeifertInvariants {
    /// Seifert space over an orientable surface.
    pub fn orientable(
        genus: u32,
        boundary_count: u32,
        exceptional: Vec<ExceptionalFiber>,
        euler_obstruction: Option<i64>,
    ) -> Result<Self> {
        let s = SeifertInvariants {
            base_orientable: true,
            genus,
            boundary_count,
            exceptional,
            euler_obstruction,
        };
        s.validate()?;
        Ok(s)
    }

    /// Seifert space over a non-orientable surface with `crosscaps ≥ 1`.
    pub fn non_orientable(
        crosscaps: u32,
        boundary_count: u32,
        exceptional: Vec<ExceptionalFiber>,
        euler_obstruction: Option<i64>,
    ) -> Result<Self> {
        let s = SeifertInvariants {
            base_orientable: false,
            genus: crosscaps,
            boundary_count,
            exceptional,
            euler_obstruction,
        };
        s.validate()?;
        Ok(s)
    }

    /// `S¹ × Σ` for a closed orientable surface of the given genus.
    pub fn product(genus: u32) -> Self {
        SeifertInvariants {
            base_orientable: true,
            genus,
            boundary_count: 0,
            exceptional: vec![],
            euler_obstruction: Some(0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInvariants(msg));
        if !self.base_orientable && self.genus == 0 {
            return bad("non-orientable base needs at least one crosscap".into());
        }
        match (self.boundary_count, self.euler_obstruction) {
            (0, None) => return bad("closed manifold needs an euler_obstruction".into()),
            (b, Some(_)) if b > 0 => return bad("euler_obstruction is only defined for closed manifolds".into()),
            _ => {}
        }
        for (i, f) in self.exceptional.iter().enumerate() {
            if f.index < 2 {
                return bad(format!("exceptional fiber {i} has index {} < 2", f.index));
            }
            if f.index.gcd(&f.slope) != 1 {
                return bad(format!("exceptional fiber {i}: gcd({}, {}) != 1", f.index, f.slope));
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }

    /// Euler characteristic of the base surface.
    pub fn chi_base(&self) -> Rat {
        let g = i64::from(self.genus);
        let b = i64::from(self.boundary_count);
        if self.base_orientable {
            int(2 - 2 * g - b)
        } else {
            int(2 - g - b)
        }
    }

    /// Orbifold Euler characteristic `χ(base) − Σ (1 − 1/aᵢ)`.
    pub fn chi_orb(&self) -> Rat {
        self.exceptional.iter().fold(self.chi_base(), |acc, f| {
            acc - (Rat::one() - Rat::new(1.into(), f.index.into()))
        })
    }

    /// Rational Euler number `e₀ + Σ bᵢ/aᵢ` of a closed manifold.
    pub fn euler_number(&self) -> Option<Rat> {
        self.euler_obstruction.map(|e0| {
            self.exceptional
                .iter()
                .fold(int(e0), |acc, f| acc + Rat::new(f.slope.into(), f.index.into()))
        })
    }

    pub fn generator_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        if self.base_orientable {
            for i in 1..=self.genus {
                names.push(format!("x{i}"));
                names.push(format!("y{i}"));
            }
        } else {
            names.extend((1..=self.genus).map(|i| format!("z{i}")));
        }
        names.extend((1..=self.exceptional.len()).map(|i| format!("q{i}")));
        names.extend((1..=self.boundary_count).map(|i| format!("d{i}")));
        names.push("h".into());
        names
    }

    fn surface_generator_count(&self) -> usize {
        if self.base_orientable {
            2 * self.genus as usize
        } else {
            self.genus as usize
        }
    }

    /// Index of the `j`-th boundary section `d_{j+1}`.
    pub fn boundary_generator_index(&self, slot: usize) -> usize {
        self.surface_generator_count() + self.exceptional.len() + slot
    }

    /// Index of the regular fiber `h`; always the last generator.
    pub fn fiber_generator_index(&self) -> usize {
        self.surface_generator_count() + self.exceptional.len() + self.boundary_count as usize
    }

    /// Abelianization of the standard Seifert presentation of `π₁`.
    pub fn abelianized_presentation(&self) -> Result<AbelianPresentation> {
        self.validate()?;
        let names = self.generator_names();
        let n = names.len();
        let surf = self.surface_generator_count();
        let q0 = surf;
        let d0 = q0 + self.exceptional.len();
        let h = n - 1;

        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (i, f) in self.exceptional.iter().enumerate() {
            let mut r = vec![0; n];
            r[q0 + i] = f.index;
            r[h] = f.slope;
            rows.push(r);
        }

        // Product relation: Σq + Σd (+ e₀h) (+ 2Σz).
        let mut r = vec![0; n];
        for x in &mut r[q0..h] {
            *x = 1;
        }
        if let Some(e0) = self.euler_obstruction {
            r[h] = e0;
        }
        if !self.base_orientable {
            for x in &mut r[..surf] {
                *x = 2;
            }
        }
        rows.push(r);

        if !self.base_orientable {
            // Crosscap loops reverse the fiber.
            let mut r = vec![0; n];
            r[h] = 2;
            rows.push(r);
        }

        debug_assert_eq!(d0 + self.boundary_count as usize, h);
        AbelianPresentation::new(names, IntMatrix::from_rows(n, &rows)?)
    }

    pub fn exclusion(&self) -> Option<Exclusion> {
        let n = self.exceptional.len();
        if self.base_orientable && self.genus == 0 {
            // A fibered solid torus has at most one exceptional fiber (its core).
            if self.boundary_count == 1 && n <= 1 {
                return Some(Exclusion::S1xD2);
            }
            // Over S² with at most two cone points and vanishing Euler number
            // the lens space degenerates to S¹×S².
            if self.boundary_count == 0 && n <= 2 && self.euler_number().is_some_and(|e| e.is_zero()) {
                return Some(Exclusion::S1xS2);
            }
        }
        if !self.base_orientable && self.genus == 1 && self.boundary_count == 0 {
            return Some(Exclusion::ProjectivePlaneBase);
        }
        None
    }

    pub fn exclusion_report(&self) -> FiberedManifoldReport {
        let chi_orb = self.chi_orb();
        FiberedManifoldReport {
            chi_base: self.chi_base(),
            chi_orb_negative: chi_orb.is_negative(),
            chi_orb,
            excluded: self.exclusion(),
        }
    }

    /// Sufficient criterion for an infinite fundamental group: nonempty
    /// boundary, or a closed manifold with `χ_orb ≤ 0`.
    pub fn has_infinite_fundamental_group(&self) -> bool {
        self.boundary_count > 0 || !self.chi_orb().is_positive()
    }

    /// Order of the regular fiber in `H₁`.
    pub fn fiber_order(&self) -> Result<Order> {
        self.abelianized_presentation()?
            .generator_order(self.fiber_generator_index())
    }

    /// The same manifold with reversed orientation: slopes and Euler
    /// obstruction change sign.
    pub fn mirror(&self) -> Self {
        SeifertInvariants {
            exceptional: self
                .exceptional
                .iter()
                .map(|f| ExceptionalFiber::new(f.index, -f.slope))
                .collect(),
            euler_obstruction: self.euler_obstruction.map(|e| -e),
            ..self.clone()
        }
    }
}
