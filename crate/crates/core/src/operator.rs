//! Dense exact operators on V, V⊗V and V⊗V⊗V.
//!
//! An [`Operator`] of arity `k` over a space of dimension `n` is an
//! `n^k × n^k` matrix of [`Rational`]s. Rows and columns are addressed by
//! 1-based multi-indices `(i₁,…,i_k)` laid out lexicographically with the
//! leftmost tensor factor most significant, so row `(i,j)` of an arity-2
//! operator sits at linear offset `(i−1)·n + (j−1)`. Row indices are the
//! upper indices of `R̂^{ij}_{kl}`, column indices the lower ones.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arity {
    One,
    Two,
    Three,
}

impl Arity {
    pub fn new(k: usize) -> Result<Self> {
        match k {
            1 => Ok(Arity::One),
            2 => Ok(Arity::Two),
            3 => Ok(Arity::Three),
            other if other > 3 => Err(Error::ArityOverflow(other)),
            other => Err(Error::InvalidArity(other)),
        }
    }

    pub fn get(self) -> usize {
        match self {
            Arity::One => 1,
            Arity::Two => 2,
            Arity::Three => 3,
        }
    }
}

/// Tensor legs an arity-2 operator can occupy inside V⊗V⊗V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    L12,
    L13,
    L23,
}

impl std::str::FromStr for Leg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Leg::L12),
            "13" => Ok(Leg::L13),
            "23" => Ok(Leg::L23),
            other => Err(Error::InvalidLeg(other.to_string())),
        }
    }
}

/// Location and value of a nonzero entry, with 1-based multi-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryWitness {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub value: Rational,
}

impl fmt::Display for EntryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "row ({}) col ({}) value {}",
            join(&self.row),
            join(&self.col),
            self.value
        )
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Operator {
    n: usize,
    arity: Arity,
    dim: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator(n={}, arity={}) [", self.n, self.arity.get())?;
        for row in 0..self.dim {
            let cells: Vec<String> = (0..self.dim)
                .map(|col| self.entry(row, col).to_string())
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Operator {
    pub fn zeros(n: usize, arity: Arity) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        let dim = n.pow(arity.get() as u32);
        Operator {
            n,
            arity,
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(n: usize, arity: Arity) -> Self {
        let mut op = Self::zeros(n, arity);
        for d in 0..op.dim {
            op.entries[d * op.dim + d] = Rational::one();
        }
        op
    }

    /// Builds an operator entrywise from 1-based `(row, col)` multi-indices.
    pub fn from_fn<F>(n: usize, arity: Arity, mut f: F) -> Self
    where
        F: FnMut(&[usize], &[usize]) -> Rational,
    {
        let mut op = Self::zeros(n, arity);
        let multis: Vec<Vec<usize>> = (0..op.dim).map(|l| op.multi_index(l)).collect();
        for (r, row) in multis.iter().enumerate() {
            for (c, col) in multis.iter().enumerate() {
                op.entries[r * op.dim + c] = f(row, col);
            }
        }
        op
    }

    pub fn from_rows(n: usize, arity: Arity, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = n.pow(arity.get() as u32);
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: format!("{dim}x{dim}"),
                right: format!(
                    "{} rows of lengths {:?}",
                    rows.len(),
                    rows.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        Ok(Operator {
            n,
            arity,
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and examples: integer rows.
    pub fn from_int_rows(n: usize, arity: Arity, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            n,
            arity,
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    /// Side length `n^arity`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Entry at 0-based linear row and column.
    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    pub fn get(&self, row: &[usize], col: &[usize]) -> Result<&Rational> {
        let r = self.linear_index(row)?;
        let c = self.linear_index(col)?;
        Ok(self.entry(r, c))
    }

    /// Returns a copy with one entry replaced.
    pub fn with_entry(&self, row: &[usize], col: &[usize], value: Rational) -> Result<Self> {
        let r = self.linear_index(row)?;
        let c = self.linear_index(col)?;
        let mut out = self.clone();
        out.entries[r * self.dim + c] = value;
        Ok(out)
    }

    /// 0-based linear offset of a 1-based multi-index.
    pub fn linear_index(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.arity.get() {
            return Err(Error::ArityMismatch {
                expected: self.arity.get(),
                found: multi.len(),
            });
        }
        let mut offset = 0;
        for &i in multi {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.n,
                });
            }
            offset = offset * self.n + (i - 1);
        }
        Ok(offset)
    }

    /// 1-based multi-index of a 0-based linear offset.
    pub fn multi_index(&self, mut linear: usize) -> Vec<usize> {
        let k = self.arity.get();
        let mut out = vec![0; k];
        for slot in (0..k).rev() {
            out[slot] = linear % self.n + 1;
            linear /= self.n;
        }
        out
    }

    fn ensure_same_shape(&self, other: &Operator) -> Result<()> {
        if self.n != other.n || self.arity != other.arity {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn shape(&self) -> String {
        format!("n={} arity={}", self.n, self.arity.get())
    }

    pub fn expect_arity(&self, arity: Arity) -> Result<()> {
        if self.arity != arity {
            return Err(Error::ArityMismatch {
                expected: arity.get(),
                found: self.arity.get(),
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Operator,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self> {
        self.ensure_same_shape(other)?;
        Ok(Operator {
            n: self.n,
            arity: self.arity,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &Operator) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Operator) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Operator {
            entries: self.entries.iter().map(|e| e * factor).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        Operator {
            n: self.n,
            arity: self.arity,
            dim: self.dim,
            entries: Vec::new(),
        }
    }

    /// Nonzero entries of each row as `(column, value)` pairs.
    fn sparse_rows(&self) -> Vec<Vec<(usize, &Rational)>> {
        self.rows()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    /// Exact matrix product. Zero entries are skipped on both sides, which
    /// keeps products of the (sparse) leg embeddings cheap.
    pub fn checked_mul(&self, other: &Operator) -> Result<Self> {
        self.ensure_same_shape(other)?;
        let dim = self.dim;
        let right = other.sparse_rows();
        let mut entries = vec![Rational::zero(); dim * dim];
        for (r, row) in self.rows().enumerate() {
            let out = &mut entries[r * dim..(r + 1) * dim];
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(c, b) in &right[k] {
                    out[c] += a * b;
                }
            }
        }
        Ok(Operator {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn commutator(&self, other: &Operator) -> Result<Self> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|d| self.entry(d, d).clone()).sum()
    }

    pub fn transpose(&self) -> Self {
        let dim = self.dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(self.entry(c, r).clone());
            }
        }
        Operator {
            entries,
            ..self.clone_shape()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// First nonzero entry in row-major (lexicographic) order.
    pub fn first_nonzero(&self) -> Option<EntryWitness> {
        let pos = self.entries.iter().position(|e| !e.is_zero())?;
        Some(EntryWitness {
            row: self.multi_index(pos / self.dim),
            col: self.multi_index(pos % self.dim),
            value: self.entries[pos].clone(),
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// integer matrix obtained by clearing each row's denominators.
    pub fn determinant(&self) -> Rational {
        let dim = self.dim;
        let mut scale = BigInt::one();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
        for row in self.rows() {
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            rows.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
            scale *= lcm;
        }
        let det = bareiss_determinant(rows);
        Rational::new(det, scale)
    }

    /// Characteristic polynomial `det(λI − A)`, coefficients in ascending
    /// degree (monic, length `dim + 1`), by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<Rational> {
        let dim = self.dim;
        let mut coeffs = vec![Rational::zero(); dim + 1];
        coeffs[dim] = Rational::one();
        let identity = Operator::identity(self.n, self.arity);
        let mut m = Operator::zeros(self.n, self.arity);
        for k in 1..=dim {
            m = &(self * &m) + &identity.scale(&coeffs[dim - k + 1]);
            let am = self * &m;
            coeffs[dim - k] = -am.trace() / rational::int(k as i64);
        }
        coeffs
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let dim = a.len();
    if dim == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..dim {
        if a[k][k].is_zero() {
            match (k + 1..dim).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[dim - 1][dim - 1]
}

impl Add for &Operator {
    type Output = Operator;

    /// Panics on shape mismatch; use [`Operator::checked_add`] otherwise.
    fn add(self, rhs: &Operator) -> Operator {
        self.checked_add(rhs).expect("operator shapes differ")
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        self.checked_sub(rhs).expect("operator shapes differ")
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.checked_mul(rhs).expect("operator shapes differ")
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        Operator {
            entries: self.entries.iter().map(|e| -e).collect(),
            ..self.clone_shape()
        }
    }
}

/// The matrix unit `e^i_j`: a single 1 at row `i`, column `j`.
pub fn matrix_unit(i: usize, j: usize, n: usize) -> Result<Operator> {
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    let mut op = Operator::zeros(n, Arity::One);
    op.entries[(i - 1) * n + (j - 1)] = Rational::one();
    Ok(op)
}

/// The flip `P x⊗y = y⊗x`, i.e. `P^{ij}_{kl} = δ^i_l δ^j_k`.
pub fn permutation(n: usize) -> Operator {
    let one = Rational::one();
    Operator::from_fn(n, Arity::Two, |row, col| {
        if row[0] == col[1] && row[1] == col[0] {
            one.clone()
        } else {
            Rational::zero()
        }
    })
}

/// Kronecker product `(A⊗B)^{IJ}_{KL} = A^I_K B^J_L`.
pub fn kron(a: &Operator, b: &Operator) -> Result<Operator> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    let arity = Arity::new(a.arity.get() + b.arity.get())?;
    let (da, db) = (a.dim, b.dim);
    let dim = da * db;
    let mut entries = vec![Rational::zero(); dim * dim];
    for ra in 0..da {
        for ca in 0..da {
            let x = a.entry(ra, ca);
            if x.is_zero() {
                continue;
            }
            for rb in 0..db {
                for cb in 0..db {
                    let y = b.entry(rb, cb);
                    if !y.is_zero() {
                        entries[(ra * db + rb) * dim + ca * db + cb] = x * y;
                    }
                }
            }
        }
    }
    Ok(Operator {
        n: a.n,
        arity,
        dim,
        entries,
    })
}

/// Places an arity-2 operator on the given pair of legs of V⊗V⊗V.
pub fn embed(r: &Operator, legs: Leg) -> Result<Operator> {
    r.expect_arity(Arity::Two)?;
    let n = r.n;
    let id = Operator::identity(n, Arity::One);
    match legs {
        Leg::L12 => kron(r, &id),
        Leg::L23 => kron(&id, r),
        Leg::L13 => {
            // (r₁₃)^{abc}_{def} = r^{ac}_{df} δ^b_e
            let mut out = Operator::zeros(n, Arity::Three);
            let dim = out.dim;
            for rr in 0..r.dim {
                for rc in 0..r.dim {
                    let v = r.entry(rr, rc);
                    if v.is_zero() {
                        continue;
                    }
                    let (a, c) = (rr / n, rr % n);
                    let (d, f) = (rc / n, rc % n);
                    for mid in 0..n {
                        let row = (a * n + mid) * n + c;
                        let col = (d * n + mid) * n + f;
                        out.entries[row * dim + col] = v.clone();
                    }
                }
            }
            Ok(out)
        }
    }
}

/// `r₂₁ = P r P`.
pub fn flip21(r: &Operator) -> Result<Operator> {
    r.expect_arity(Arity::Two)?;
    let p = permutation(r.n);
    Ok(&(&p * r) * &p)
}

/// `(X⊗X) A (X⁻¹⊗X⁻¹)`.
pub fn conjugate_pair(a: &Operator, x: &Operator) -> Result<Operator> {
    a.expect_arity(Arity::Two)?;
    x.expect_arity(Arity::One)?;
    let x_inv = inverse(x)?;
    let xx = kron(x, x)?;
    let xx_inv = kron(&x_inv, &x_inv)?;
    xx.checked_mul(a)?.checked_mul(&xx_inv)
}

/// `x∧y = x⊗y − y⊗x`.
pub fn wedge(x: &Operator, y: &Operator) -> Result<Operator> {
    x.expect_arity(Arity::One)?;
    y.expect_arity(Arity::One)?;
    kron(x, y)?.checked_sub(&kron(y, x)?)
}

/// Exact inverse of an arity-1 operator by Gauss–Jordan elimination.
pub fn inverse(x: &Operator) -> Result<Operator> {
    x.expect_arity(Arity::One)?;
    let dim = x.dim;
    let mut a: Vec<Vec<Rational>> = x.rows().map(<[Rational]>::to_vec).collect();
    let mut inv: Vec<Vec<Rational>> = Operator::identity(x.n, Arity::One)
        .rows()
        .map(<[Rational]>::to_vec)
        .collect();
    for col in 0..dim {
        let pivot = (col..dim)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].recip();
        for j in 0..dim {
            a[col][j] *= &scale;
            inv[col][j] *= &scale;
        }
        for r in 0..dim {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..dim {
                let t = &factor * &a[col][j];
                a[r][j] -= t;
                let t = &factor * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Operator::from_rows(x.n, Arity::One, inv)
}

/// Coefficients (ascending) of `∏ (λ − root)^mult`.
pub fn poly_from_roots(roots: &[(Rational, usize)]) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for (root, mult) in roots {
        for _ in 0..*mult {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * root;
            }
            poly = next;
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn unit(i: usize, j: usize, n: usize) -> Operator {
        matrix_unit(i, j, n).unwrap()
    }

    #[test]
    fn matrix_unit_examples() {
        assert_eq!(
            unit(1, 1, 2),
            Operator::from_int_rows(2, Arity::One, &[&[1, 0], &[0, 0]]).unwrap()
        );
        assert_eq!(
            unit(1, 2, 2),
            Operator::from_int_rows(2, Arity::One, &[&[0, 1], &[0, 0]]).unwrap()
        );
        assert!(matches!(
            matrix_unit(3, 1, 2),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
        assert!(matrix_unit(0, 1, 2).is_err());
    }

    #[test]
    fn matrix_unit_multiplication_rule() {
        let n = 3;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let prod = &unit(i, j, n) * &unit(k, l, n);
                        let expected = if j == k {
                            unit(i, l, n)
                        } else {
                            Operator::zeros(n, Arity::One)
                        };
                        assert_eq!(prod, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_examples() {
        let p = permutation(2);
        let expected = Operator::from_int_rows(
            2,
            Arity::Two,
            &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(p, expected);
        for n in 2..=5 {
            let p = permutation(n);
            assert_eq!(&p * &p, Operator::identity(n, Arity::Two));
        }
        let x = kron(&unit(1, 1, 2), &unit(2, 2, 2)).unwrap();
        let y = kron(&unit(2, 2, 2), &unit(1, 1, 2)).unwrap();
        assert_eq!(&(&p * &x) * &p, y);
    }

    #[test]
    fn linear_index_convention() {
        let op = Operator::zeros(3, Arity::Three);
        assert_eq!(op.linear_index(&[1, 1, 1]).unwrap(), 0);
        assert_eq!(op.linear_index(&[2, 3, 1]).unwrap(), 9 + 6);
        assert_eq!(op.multi_index(15), vec![2, 3, 1]);
        assert!(op.linear_index(&[1, 4, 1]).is_err());
        assert!(op.linear_index(&[1, 1]).is_err());
    }

    #[test]
    fn kron_examples() {
        let id1 = Operator::identity(2, Arity::One);
        assert_eq!(kron(&id1, &id1).unwrap(), Operator::identity(2, Arity::Two));
        let k = kron(&unit(1, 2, 2), &unit(2, 1, 2)).unwrap();
        assert_eq!(k.nonzero_count(), 1);
        assert_eq!(k.get(&[1, 2], &[2, 1]).unwrap(), &int(1));
    }

    #[test]
    fn kron_errors() {
        let a = Operator::identity(2, Arity::One);
        let b = Operator::identity(3, Arity::One);
        assert!(matches!(kron(&a, &b), Err(Error::DimensionMismatch { .. })));
        let c = Operator::identity(2, Arity::Two);
        assert_eq!(kron(&c, &c), Err(Error::ArityOverflow(4)));
    }

    #[test]
    fn embed_examples() {
        let p = permutation(2);
        let id = Operator::identity(2, Arity::One);
        assert_eq!(embed(&p, Leg::L12).unwrap(), kron(&p, &id).unwrap());
        let r = kron(&unit(1, 2, 2), &unit(2, 1, 2)).unwrap();
        let r13 = embed(&r, Leg::L13).unwrap();
        assert_eq!(r13.nonzero_count(), 2);
        for mid in 1..=2 {
            assert_eq!(r13.get(&[1, mid, 2], &[2, mid, 1]).unwrap(), &int(1));
        }
        assert_eq!("31".parse::<Leg>(), Err(Error::InvalidLeg("31".into())));
        assert!(embed(&id, Leg::L12).is_err());
    }

    #[test]
    fn embedded_diagonals_commute_and_generic_do_not() {
        let diag_a = Operator::from_fn(2, Arity::Two, |r, c| {
            if r == c {
                int((r[0] * 3 + r[1]) as i64)
            } else {
                Rational::zero()
            }
        });
        let diag_b = Operator::from_fn(2, Arity::Two, |r, c| {
            if r == c {
                int((r[0] + 5 * r[1]) as i64 - 4)
            } else {
                Rational::zero()
            }
        });
        let a12 = embed(&diag_a, Leg::L12).unwrap();
        let b23 = embed(&diag_b, Leg::L23).unwrap();
        assert_eq!(&a12 * &b23, &b23 * &a12);
        let generic = Operator::from_fn(2, Arity::Two, |r, c| {
            int((r[0] * 7 + r[1] * 3 + c[0] * 2 + c[1]) as i64 % 5 - 2)
        });
        let g12 = embed(&generic, Leg::L12).unwrap();
        let g23 = embed(&generic, Leg::L23).unwrap();
        assert_ne!(&g12 * &g23, &g23 * &g12);
    }

    #[test]
    fn flip21_examples() {
        let p = permutation(2);
        assert_eq!(flip21(&p).unwrap(), p);
        let x = kron(&unit(1, 1, 2), &unit(2, 2, 2)).unwrap();
        let y = kron(&unit(2, 2, 2), &unit(1, 1, 2)).unwrap();
        assert_eq!(flip21(&x).unwrap(), y);
    }

    #[test]
    fn wedge_examples() {
        let x = unit(2, 1, 2);
        let y = unit(2, 2, 2);
        assert!(wedge(&x, &x).unwrap().is_zero());
        assert_eq!(wedge(&x, &y).unwrap(), -&wedge(&y, &x).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let id = Operator::identity(3, Arity::One);
        assert_eq!(inverse(&id).unwrap(), id);
        let x = Operator::from_int_rows(2, Arity::One, &[&[1, 1], &[1, 2]]).unwrap();
        let expected = Operator::from_int_rows(2, Arity::One, &[&[2, -1], &[-1, 1]]).unwrap();
        assert_eq!(inverse(&x).unwrap(), expected);
        let singular = Operator::from_int_rows(2, Arity::One, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(inverse(&singular), Err(Error::Singular));
        assert_eq!(
            conjugate_pair(&permutation(2), &singular),
            Err(Error::Singular)
        );
    }

    #[test]
    fn determinant_matches_small_cases() {
        let x = Operator::from_rows(
            2,
            Arity::One,
            vec![
                vec![ratio(1, 2).unwrap(), int(3)],
                vec![ratio(-2, 3).unwrap(), int(4)],
            ],
        )
        .unwrap();
        // 1/2·4 − 3·(−2/3) = 4
        assert_eq!(x.determinant(), int(4));
        let singular = Operator::from_int_rows(2, Arity::One, &[&[0, 2], &[0, 4]]).unwrap();
        assert_eq!(singular.determinant(), int(0));
        let swap = Operator::from_int_rows(2, Arity::One, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.determinant(), int(-1));
    }

    #[test]
    fn charpoly_of_permutation() {
        // P on V⊗V at n=2: eigenvalue 1 thrice, −1 once.
        let expected = poly_from_roots(&[(int(1), 3), (int(-1), 1)]);
        assert_eq!(permutation(2).charpoly(), expected);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=3).prop_map(|(a, b)| ratio(a, b).unwrap())
    }

    fn operator(n: usize, arity: Arity) -> impl Strategy<Value = Operator> {
        let dim = n.pow(arity.get() as u32);
        proptest::collection::vec(small_rational(), dim * dim).prop_map(move |v| {
            Operator::from_rows(n, arity, v.chunks(dim).map(<[_]>::to_vec).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mixed_product(a in operator(2, Arity::One), b in operator(2, Arity::One),
                         c in operator(2, Arity::One), d in operator(2, Arity::One)) {
            let lhs = &kron(&a, &b).unwrap() * &kron(&c, &d).unwrap();
            let rhs = kron(&(&a * &c), &(&b * &d)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kron_grouping_is_associative(a in operator(2, Arity::One), b in operator(2, Arity::One),
                                        c in operator(2, Arity::One)) {
            let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
            let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn embedded_products_agree_across_groupings(r in operator(2, Arity::Two), s in operator(2, Arity::Two)) {
            let id = Operator::identity(2, Arity::One);
            let via_embed = &embed(&r, Leg::L12).unwrap() * &embed(&s, Leg::L23).unwrap();
            let via_kron = &kron(&r, &id).unwrap() * &kron(&id, &s).unwrap();
            prop_assert_eq!(via_embed, via_kron);
        }

        #[test]
        fn flip_is_an_involution(r in operator(3, Arity::Two)) {
            prop_assert_eq!(flip21(&flip21(&r).unwrap()).unwrap(), r);
        }

        #[test]
        fn leg13_is_conjugated_leg23(r in operator(2, Arity::Two)) {
            let p1 = embed(&permutation(2), Leg::L12).unwrap();
            let expected = &(&p1 * &embed(&r, Leg::L23).unwrap()) * &p1;
            prop_assert_eq!(embed(&r, Leg::L13).unwrap(), expected);
        }

        #[test]
        fn trace_is_cyclic(a in operator(2, Arity::Two), b in operator(2, Arity::Two)) {
            prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
        }

        #[test]
        fn conjugation_preserves_spectrum(a in operator(2, Arity::Two), x in operator(2, Arity::One)) {
            prop_assume!(!x.determinant().is_zero());
            let c = conjugate_pair(&a, &x).unwrap();
            prop_assert_eq!(c.charpoly(), a.charpoly());
            prop_assert_eq!(conjugate_pair(&a, &Operator::identity(2, Arity::One)).unwrap(), a);
        }

        #[test]
        fn inverse_round_trip(x in operator(3, Arity::One)) {
            prop_assume!(!x.determinant().is_zero());
            let inv = inverse(&x).unwrap();
            prop_assert_eq!(&inv * &x, Operator::identity(3, Arity::One));
            prop_assert_eq!(&x * &inv, Operator::identity(3, Arity::One));
        }

        #[test]
        fn determinant_is_multiplicative(a in operator(3, Arity::One), b in operator(3, Arity::One)) {
            prop_assert_eq!((&a * &b).determinant(), a.determinant() * b.determinant());
        }
    }
}
