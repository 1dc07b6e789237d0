#![allow(dead_code)]

use fibertorsion::{ExceptionalFiber, IntMatrix, SeifertInvariants};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Bareiss fraction-free determinant.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors from gcds of k×k minors.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let rows = to_rows(m);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

pub fn fiber() -> impl Strategy<Value = ExceptionalFiber> {
    (2i64..=7).prop_flat_map(|a| {
        (-(3 * a)..=3 * a)
            .prop_filter("coprime", move |b| b.gcd(&a) == 1)
            .prop_map(move |b| ExceptionalFiber::new(a, b))
    })
}

/// Orientable-base pieces with at least one boundary torus that are not
/// solid tori.
pub fn bounded_piece() -> impl Strategy<Value = SeifertInvariants> {
    (0u32..=2, 1u32..=3, prop::collection::vec(fiber(), 0..=4)).prop_filter_map("solid torus", |(g, b, e)| {
        let s = SeifertInvariants::orientable(g, b, e, None).ok()?;
        s.exclusion().is_none().then_some(s)
    })
}

/// Any valid, non-excluded Seifert piece.
pub fn any_piece() -> impl Strategy<Value = SeifertInvariants> {
    (
        any::<bool>(),
        0u32..=2,
        0u32..=2,
        prop::collection::vec(fiber(), 0..=4),
        -3i64..=3,
    )
        .prop_filter_map("invalid or excluded", |(orientable, g, b, e, e0)| {
            let e0 = (b == 0).then_some(e0);
            let s = if orientable {
                SeifertInvariants::orientable(g, b, e, e0)
            } else {
                SeifertInvariants::non_orientable(g + 1, b, e, e0)
            }
            .ok()?;
            s.exclusion().is_none().then_some(s)
        })
}
