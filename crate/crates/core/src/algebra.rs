//! Integer matrices, Smith normal form and finitely presented abelian groups.
//!
//! A presentation has one row per relation and one column per generator; the
//! group it presents is `ℤ^cols / rowspace`. All arithmetic is on
//! arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows of machine integers. `cols` is needed so
    /// that a matrix without rows still knows its width.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += k * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for c in 0..self.cols {
            let delta = k * self.get(source, c);
            self.entries[target * self.cols + c] += delta;
        }
    }

    /// col[target] += k * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for r in 0..self.rows {
            let delta = k * self.get(r, source);
            self.entries[r * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.entries[idx] = -&self.entries[idx];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        (0..self.s.rows.min(self.s.cols))
            .take_while(|&i| !self.s.get(i, i).is_zero())
            .count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Smallest nonzero |entry| in the lower-right block starting at `(t, t)`,
/// ties broken by lowest `(row, col)`.
fn smallest_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..s.rows {
        for c in t..s.cols {
            let x = s.get(r, c);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if s.get(br, bc).abs() <= x.abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

/// Computes the Smith normal form with transformation matrices.
///
/// Pivots are chosen as the smallest nonzero absolute value, ties broken by
/// lowest `(row, col)`, so the output is deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pr, pc)) = smallest_pivot(&s, t) else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let pivot = s.get(t, t).clone();
            let mut dirty = false;
            for r in t + 1..m {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let q = -s.get(r, t).div_floor(&pivot);
                s.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                dirty |= !s.get(r, t).is_zero();
            }
            for c in t + 1..n {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let q = -s.get(t, c).div_floor(&pivot);
                s.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                dirty |= !s.get(t, c).is_zero();
            }

            if dirty {
                // A remainder smaller than the pivot survived; move the
                // smallest entry of row/column t onto the diagonal.
                let mut best = (t, t);
                for r in t + 1..m {
                    let x = s.get(r, t);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (r, t);
                    }
                }
                for c in t + 1..n {
                    let x = s.get(t, c);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (t, c);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }

            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..m).find(|&r| (t + 1..n).any(|c| !s.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { u, s, v }
}

/// Structure of `ℤ^cols / rowspace(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelStructure {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for CokernelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn cokernel_structure(a: &IntMatrix) -> CokernelStructure {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    CokernelStructure {
        free_rank: a.cols - rank,
        torsion: snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Finitely generated abelian group with named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    generators: Vec<String>,
    relations: IntMatrix,
}

impl AbelianPresentation {
    pub fn new(generators: Vec<String>, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generators.len() {
            return Err(Error::DimensionMismatch {
                expected: generators.len(),
                found: relations.cols(),
            });
        }
        Ok(AbelianPresentation { generators, relations })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn smith(&self) -> SmithForm {
        smith_normal_form(&self.relations)
    }

    pub fn cokernel(&self) -> CokernelStructure {
        cokernel_structure(&self.relations)
    }

    /// Indices of relations on which `values` does not vanish.
    pub fn violated_relations(&self, values: &[Rat]) -> Result<Vec<usize>> {
        if values.len() != self.generators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.len(),
                found: values.len(),
            });
        }
        Ok((0..self.relations.rows())
            .filter(|&r| {
                let sum: Rat = self
                    .relations
                    .row(r)
                    .iter()
                    .zip(values)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, x)| x * Rat::from_integer(a.clone()))
                    .sum();
                !sum.is_zero()
            })
            .collect())
    }

    /// Whether `values` defines a homomorphism to ℚ, i.e. kills every relation.
    pub fn is_valid_class(&self, values: &[Rat]) -> Result<bool> {
        Ok(self.violated_relations(values)?.is_empty())
    }

    /// Order of the image of generator `g`.
    pub fn generator_order(&self, g: usize) -> Result<Order> {
        let mut e = vec![BigInt::zero(); self.generators.len()];
        if g >= e.len() {
            return Err(Error::InvalidArgument(format!(
                "generator index {g} out of range for {} generators",
                e.len()
            )));
        }
        e[g] = BigInt::one();
        self.element_order(&e)
    }

    /// Order of the image of the integer vector `x` (coefficients on the
    /// generators).
    pub fn element_order(&self, x: &[BigInt]) -> Result<Order> {
        let n = self.generators.len();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let snf = self.smith();
        let rank = snf.rank();
        // In the basis given by the rows of V, x has coordinates x·V.
        let coords: Vec<BigInt> = (0..n)
            .map(|j| x.iter().enumerate().map(|(i, xi)| xi * snf.v.get(i, j)).sum())
            .collect();
        if coords[rank..].iter().any(|c| !c.is_zero()) {
            return Ok(Order::Infinite);
        }
        let order = coords[..rank]
            .iter()
            .zip(snf.invariant_factors())
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(&d / c.gcd(&d))));
        Ok(Order::Finite(order))
    }

    /// A ℤ-basis of `Hom(G, ℤ)`, as integer vectors on the generators. Over ℚ
    /// these span every valid class.
    pub fn class_basis(&self) -> Vec<Vec<BigInt>> {
        let snf = self.smith();
        (snf.rank()..self.generators.len()).map(|j| snf.v.column(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    fn diag(s: &IntMatrix) -> Vec<i64> {
        (0..s.rows().min(s.cols()))
            .map(|i| i64::try_from(s.get(i, i)).unwrap())
            .collect()
    }

    fn check(a: &IntMatrix, snf: &SmithForm) {
        let uav = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(uav, snf.s);
    }

    #[test]
    fn one_by_one() {
        let a = m(1, &[&[2]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, a);
        assert_eq!(snf.u, IntMatrix::identity(1));
        assert_eq!(snf.v, IntMatrix::identity(1));
    }

    #[test]
    fn two_by_two() {
        let a = m(2, &[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        check(&a, &snf);
        assert_eq!(diag(&snf.s), vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, IntMatrix::zeros(2, 3));
        check(&a, &snf);
    }

    #[test]
    fn negative_pivot_is_normalized() {
        let a = m(2, &[&[-3, 0], &[0, -5]]);
        let snf = smith_normal_form(&a);
        check(&a, &snf);
        assert_eq!(diag(&snf.s), vec![1, 15]);
    }

    #[test]
    fn deterministic() {
        let a = m(3, &[&[4, 6, 10], &[2, -3, 7]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    #[test]
    fn cokernels() {
        assert_eq!(
            cokernel_structure(&m(1, &[&[2]])),
            CokernelStructure {
                free_rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        let trefoil = m(4, &[&[2, 0, 0, 1], &[0, 3, 0, 1], &[1, 1, 1, 0]]);
        assert_eq!(
            cokernel_structure(&trefoil),
            CokernelStructure {
                free_rank: 1,
                torsion: vec![]
            }
        );
        let empty = IntMatrix::zeros(0, 3);
        assert_eq!(
            cokernel_structure(&empty),
            CokernelStructure {
                free_rank: 3,
                torsion: vec![]
            }
        );
    }

    fn trefoil() -> AbelianPresentation {
        AbelianPresentation::new(
            ["q1", "q2", "d1", "h"].map(String::from).to_vec(),
            m(4, &[&[2, 0, 0, 1], &[0, 3, 0, 1], &[1, 1, 1, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn class_validity() {
        let p = trefoil();
        let v: Vec<Rat> = [-3, -2, 5, 6].map(int).to_vec();
        assert!(p.is_valid_class(&v).unwrap());
        let w: Vec<Rat> = [0, 0, 0, 1].map(int).to_vec();
        assert!(!p.is_valid_class(&w).unwrap());
        assert_eq!(p.violated_relations(&w).unwrap(), vec![0, 1]);
        assert!(p.is_valid_class(&vec![int(0); 4]).unwrap());
        assert!(matches!(
            p.is_valid_class(&[int(1)]),
            Err(Error::DimensionMismatch { expected: 4, found: 1 })
        ));
    }

    #[test]
    fn orders() {
        let p = trefoil();
        assert_eq!(p.generator_order(3).unwrap(), Order::Infinite);
        let two_h = AbelianPresentation::new(vec!["h".into()], m(1, &[&[2]])).unwrap();
        assert_eq!(two_h.generator_order(0).unwrap(), Order::Finite(BigInt::from(2)));
        let free = AbelianPresentation::new(vec!["a".into(), "b".into()], IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(free.generator_order(1).unwrap(), Order::Infinite);
        // Z/4 + Z/6 on (a, b): 2a has order 2, 3b order 2, a+b order 12.
        let p = AbelianPresentation::new(vec!["a".into(), "b".into()], m(2, &[&[4, 0], &[0, 6]])).unwrap();
        let o = |x: [i64; 2]| p.element_order(&x.map(BigInt::from)).unwrap();
        assert_eq!(o([2, 0]), Order::Finite(BigInt::from(2)));
        assert_eq!(o([0, 3]), Order::Finite(BigInt::from(2)));
        assert_eq!(o([1, 1]), Order::Finite(BigInt::from(12)));
        assert_eq!(o([0, 0]), Order::Finite(BigInt::from(1)));
    }

    #[test]
    fn class_basis_spans_kernel() {
        let p = trefoil();
        let basis = p.class_basis();
        assert_eq!(basis.len(), 1);
        let v: Vec<Rat> = basis[0].iter().cloned().map(Rat::from_integer).collect();
        assert!(p.is_valid_class(&v).unwrap());
        // Primitive: ±(-3,-2,5,6).
        let b: Vec<i64> = basis[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(b == vec![-3, -2, 5, 6] || b == vec![3, 2, -5, -6], "{b:?}");
    }

    #[test]
    fn display() {
        let c = CokernelStructure {
            free_rank: 2,
            torsion: vec![BigInt::from(2)],
        };
        assert_eq!(c.to_string(), "Z^2 + Z/2");
        assert_eq!(
            CokernelStructure {
                free_rank: 0,
                torsion: vec![]
            }
            .to_string(),
            "0"
        );
    }
}
