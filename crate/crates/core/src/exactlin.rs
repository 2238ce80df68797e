//! Exact dense linear algebra over Z, Q and Z/2^t.
//!
//! Everything here uses arbitrary-precision integers; 16x16 elimination over
//! the rationals overflows fixed-width types long before it finishes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::modmath::{inverse_u64, PowerOfTwoModulus};
use crate::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator (zero is `0/1`).
pub type BigFraction = BigRational;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<BigFraction>;

impl<T> Matrix<T> {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<T>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if entries.len() != n_rows * n_cols {
            return Err(Error::domain(format!(
                "expected {} entries for a {n_rows}x{n_cols} matrix, got {}",
                n_rows * n_cols,
                entries.len()
            )));
        }
        Ok(Self {
            n_rows,
            n_cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::domain("ragged rows"));
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(
            n_rows > 0 && n_cols > 0,
            "matrix dimensions must be positive"
        );
        let entries = (0..n_rows)
            .flat_map(|r| (0..n_cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self {
            n_rows,
            n_cols,
            entries,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.n_cols + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.entries[row * self.n_cols..(row + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n_cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{op} requires a square matrix, got {}x{}",
                self.n_rows, self.n_cols
            )))
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |r, c| self.get(c, r).clone())
    }
}

/// Entry types that embed exactly into the rationals.
pub trait Exact: Clone + fmt::Display {
    fn to_fraction(&self) -> BigFraction;
}

impl Exact for BigInt {
    fn to_fraction(&self) -> BigFraction {
        BigFraction::from_integer(self.clone())
    }
}

impl Exact for BigFraction {
    fn to_fraction(&self) -> BigFraction {
        self.clone()
    }
}

impl<T: Exact> Matrix<T> {
    pub fn to_rational(&self) -> RationalMatrix {
        self.map(Exact::to_fraction)
    }
}

impl IntMatrix {
    pub fn from_i64_rows<const N: usize>(rows: &[[i64; N]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(BigInt::from).collect())
                .collect(),
        )
    }
}

/// Exact `A x`.
pub fn mat_vec<T: Exact>(a: &Matrix<T>, x: &[BigFraction]) -> Result<Vec<BigFraction>> {
    if x.len() != a.n_cols {
        return Err(Error::domain(format!(
            "vector length {} does not match {} columns",
            x.len(),
            a.n_cols
        )));
    }
    Ok(a.rows()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(BigFraction::zero(), |acc, (aij, xj)| {
                    let aij = aij.to_fraction();
                    if aij.is_zero() {
                        acc
                    } else {
                        acc + aij * xj
                    }
                })
        })
        .collect())
}

/// Integer `A x` without passing through the rationals.
pub fn int_mat_vec(a: &IntMatrix, x: &[BigInt]) -> Result<Vec<BigInt>> {
    if x.len() != a.n_cols {
        return Err(Error::domain(format!(
            "vector length {} does not match {} columns",
            x.len(),
            a.n_cols
        )));
    }
    Ok(a.rows()
        .map(|row| row.iter().zip(x).map(|(aij, xj)| aij * xj).sum())
        .collect())
}

/// Exact product `A B`.
pub fn mat_mul<L: Exact, R: Exact>(a: &Matrix<L>, b: &Matrix<R>) -> Result<RationalMatrix> {
    if a.n_cols != b.n_rows {
        return Err(Error::domain(format!(
            "cannot multiply {}x{} by {}x{}",
            a.n_rows, a.n_cols, b.n_rows, b.n_cols
        )));
    }
    let a = a.to_rational();
    let b = b.to_rational();
    Ok(Matrix::from_fn(a.n_rows, b.n_cols, |r, c| {
        (0..a.n_cols)
            .map(|k| a.get(r, k) * b.get(k, c))
            .fold(BigFraction::zero(), |acc, v| acc + v)
    }))
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant<T: Exact>(a: &Matrix<T>) -> Result<BigFraction> {
    a.require_square("determinant")?;
    let n = a.n_rows;
    let mut m = a.to_rational();
    let mut det = BigFraction::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
            return Ok(BigFraction::zero());
        };
        if pivot != col {
            swap_rows(&mut m, pivot, col);
            det = -det;
        }
        let p = m.get(col, col).clone();
        det *= &p;
        for r in col + 1..n {
            let factor = m.get(r, col) / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = m.get(col, c) * &factor;
                m.entries[r * n + c] -= v;
            }
        }
    }
    Ok(det)
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
/// Every intermediate division is exact.
pub fn determinant_bareiss(a: &IntMatrix) -> Result<BigInt> {
    a.require_square("determinant")?;
    let n = a.n_rows;
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m.get(k, k).is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            swap_rows(&mut m, pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                debug_assert!((&num % &prev).is_zero());
                m.entries[i * n + j] = num / &prev;
            }
        }
        prev = m.get(k, k).clone();
    }
    Ok(sign * m.get(n - 1, n - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(v: &BigInt) -> Self {
        if v.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity of `det(A)` computed by elimination over GF(2), without forming
/// the determinant.
pub fn det_parity_mod2(a: &IntMatrix) -> Result<Parity> {
    a.require_square("determinant parity")?;
    let n = a.n_rows;
    let words = n.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = a
        .rows()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for (c, v) in row.iter().enumerate() {
                if v.is_odd() {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    for col in 0..n {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (col..n).find(|&r| rows[r][w] & b != 0) else {
            return Ok(Parity::Even);
        };
        rows.swap(pivot, col);
        let pivot_row = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            if row[w] & b != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x ^= p);
            }
        }
    }
    Ok(Parity::Odd)
}

/// Exact inverse over the rationals by Gauss-Jordan elimination.
pub fn rational_inverse<T: Exact>(a: &Matrix<T>) -> Result<RationalMatrix> {
    a.require_square("inverse")?;
    let n = a.n_rows;
    let mut m = a.to_rational();
    let mut inv = RationalMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m.get(r, col).is_zero())
            .ok_or(Error::Singular)?;
        swap_rows(&mut m, pivot, col);
        swap_rows(&mut inv, pivot, col);
        let p = m.get(col, col).recip();
        scale_row(&mut m, col, &p);
        scale_row(&mut inv, col, &p);
        for r in (0..n).filter(|&r| r != col) {
            let factor = m.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            axpy_row(&mut m, r, col, &factor);
            axpy_row(&mut inv, r, col, &factor);
        }
    }
    Ok(inv)
}

/// Inverse over Z/2^t. Pivots only on odd (unit) entries, searching each
/// column top to bottom from the diagonal; the first odd entry wins.
/// Returns [`Error::NonInvertible`] exactly when `det(A)` is even.
pub fn mod_matrix_inverse(a: &IntMatrix, m: PowerOfTwoModulus) -> Result<IntMatrix> {
    a.require_square("modular inverse")?;
    let n = a.n_rows;
    let mut work = reduce_matrix(a, m);
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|r| (0..n).map(|c| u64::from(r == c)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| work[r][col] & 1 == 1)
            .ok_or(Error::NonInvertible {
                modulus: m.value(),
                column: col,
            })?;
        work.swap(pivot, col);
        inv.swap(pivot, col);
        let p_inv = inverse_u64(work[col][col], m);
        for v in work[col].iter_mut().chain(inv[col].iter_mut()) {
            *v = m.mul(*v, p_inv);
        }
        for r in (0..n).filter(|&r| r != col) {
            let factor = work[r][col];
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                work[r][c] = m.sub(work[r][c], m.mul(factor, work[col][c]));
                inv[r][c] = m.sub(inv[r][c], m.mul(factor, inv[col][c]));
            }
        }
    }
    Ok(Matrix::from_fn(n, n, |r, c| BigInt::from(inv[r][c])))
}

/// Canonical residue of an arbitrary integer in `[0, M)`.
pub fn residue_of(v: &BigInt, m: PowerOfTwoModulus) -> u64 {
    v.mod_floor(&BigInt::from(m.value()))
        .to_u64()
        .expect("residue below 2^63 fits in u64")
}

/// `A mod M` as nested rows of residues.
pub fn reduce_matrix(a: &IntMatrix, m: PowerOfTwoModulus) -> Vec<Vec<u64>> {
    a.rows()
        .map(|row| row.iter().map(|v| residue_of(v, m)).collect())
        .collect()
}

fn swap_rows<T>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    let n = m.n_cols;
    for c in 0..n {
        m.entries.swap(a * n + c, b * n + c);
    }
}

fn scale_row(m: &mut RationalMatrix, row: usize, s: &BigFraction) {
    let n = m.n_cols;
    for v in &mut m.entries[row * n..(row + 1) * n] {
        if !v.is_zero() {
            *v *= s;
        }
    }
}

/// `row[target] -= factor * row[source]`
fn axpy_row(m: &mut RationalMatrix, target: usize, source: usize, factor: &BigFraction) {
    let n = m.n_cols;
    for c in 0..n {
        let s = &m.entries[source * n + c];
        if s.is_zero() {
            continue;
        }
        let delta = s * factor;
        m.entries[target * n + c] -= delta;
    }
}

/// Writes the matrix as CSV: one row per line, comma separated, rationals as
/// `p/q` with `q` omitted when it is 1, LF endings.
pub fn to_csv<T: fmt::Display>(a: &Matrix<T>) -> String {
    let mut out = String::new();
    for row in a.rows() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses the CSV produced by [`to_csv`]. Blank lines are ignored.
pub fn from_csv<T: FromStr>(text: &str) -> Result<Matrix<T>>
where
    T::Err: fmt::Display,
{
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split(',')
                .map(|tok| {
                    tok.trim().parse::<T>().map_err(|e| {
                        Error::domain(format!("line {}: bad entry {tok:?}: {e}", i + 1))
                    })
                })
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// `max |x_i - y_i|` over two rational vectors of equal length.
pub fn max_abs_diff(x: &[BigFraction], y: &[BigFraction]) -> BigFraction {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or_else(BigFraction::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigFraction {
        BigFraction::new(n.into(), d.into())
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn m16() -> PowerOfTwoModulus {
        PowerOfTwoModulus::from_value(16).unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert!(IntMatrix::new(2, 2, vec![BigInt::one(); 3]).is_err());
        assert!(IntMatrix::new(0, 2, vec![]).is_err());
        assert!(IntMatrix::from_rows(vec![vec![1.into()], vec![1.into(), 2.into()]]).is_err());
    }

    #[test]
    fn mat_vec_identity_and_zero() {
        let x: Vec<_> = (0..16).map(|i| q(i, 3)).collect();
        assert_eq!(mat_vec(&IntMatrix::identity(16), &x).unwrap(), x);
        let a = m(&[&[1, 2], &[3, 4]]);
        let zero = vec![BigFraction::zero(); 2];
        assert_eq!(mat_vec(&a, &zero).unwrap(), zero);
    }

    #[test]
    fn mat_vec_dimension_mismatch() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert!(matches!(mat_vec(&a, &[q(1, 1)]), Err(Error::Domain(_))));
        assert!(int_mat_vec(&a, &[BigInt::one()]).is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(5)).unwrap(), q(1, 1));
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(determinant(&a).unwrap(), q(-2, 1));
        assert_eq!(determinant_bareiss(&a).unwrap(), BigInt::from(-2));
        assert!(determinant(&m(&[&[1, 2, 3]])).is_err());
        assert!(determinant_bareiss(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn determinant_needs_row_swap() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(determinant(&a).unwrap(), q(-1, 1));
        assert_eq!(determinant_bareiss(&a).unwrap(), BigInt::from(-1));
        let z = m(&[&[0, 0], &[0, 1]]);
        assert_eq!(determinant_bareiss(&z).unwrap(), BigInt::zero());
    }

    #[test]
    fn rational_inverse_examples() {
        assert_eq!(
            rational_inverse(&IntMatrix::identity(4)).unwrap(),
            RationalMatrix::identity(4)
        );
        let inv = rational_inverse(&m(&[&[2]])).unwrap();
        assert_eq!(inv.get(0, 0), &q(1, 2));
        assert_eq!(
            rational_inverse(&m(&[&[1, 1], &[1, 1]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(
            mod_matrix_inverse(&IntMatrix::identity(3), m16()).unwrap(),
            IntMatrix::identity(3)
        );
        assert_eq!(mod_matrix_inverse(&m(&[&[3]]), m16()).unwrap(), m(&[&[11]]));
        assert_eq!(
            mod_matrix_inverse(&m(&[&[1, 0], &[0, 2]]), m16()),
            Err(Error::NonInvertible {
                modulus: 16,
                column: 1
            })
        );
    }

    #[test]
    fn mod_inverse_handles_negative_entries_and_swaps() {
        let a = m(&[&[2, -1], &[1, 4]]);
        let q = mod_matrix_inverse(&a, m16()).unwrap();
        let prod = int_mat_mul_mod(&q, &a, m16());
        assert_eq!(prod, IntMatrix::identity(2));
    }

    fn int_mat_mul_mod(a: &IntMatrix, b: &IntMatrix, md: PowerOfTwoModulus) -> IntMatrix {
        let p = mat_mul(a, b).unwrap();
        p.map(|v| BigInt::from(residue_of(v.numer(), md)))
    }

    #[test]
    fn parity_mod2_examples() {
        assert_eq!(
            det_parity_mod2(&IntMatrix::identity(70)).unwrap(),
            Parity::Odd
        );
        assert_eq!(
            det_parity_mod2(&m(&[&[1, 2], &[3, 4]])).unwrap(),
            Parity::Even
        );
        assert_eq!(
            det_parity_mod2(&m(&[&[2, 1], &[1, 1]])).unwrap(),
            Parity::Odd
        );
    }

    #[test]
    fn csv_format() {
        let a = m(&[&[1, -2], &[0, 15]]);
        assert_eq!(to_csv(&a), "1,-2\n0,15\n");
        let r = RationalMatrix::from_rows(vec![vec![q(1, 2), q(-3, 1)]]).unwrap();
        assert_eq!(to_csv(&r), "1/2,-3\n");
        assert_eq!(from_csv::<BigFraction>(&to_csv(&r)).unwrap(), r);
        assert_eq!(from_csv::<BigInt>("1,-2\n0,15\n").unwrap(), a);
        assert!(from_csv::<BigInt>("1,x\n").is_err());
    }

    #[test]
    fn fraction_normalisation() {
        let f = q(6, -4);
        assert_eq!(f.numer(), &BigInt::from(-3));
        assert_eq!(f.denom(), &BigInt::from(2));
        assert_eq!(q(0, 7), BigFraction::zero());
        assert_eq!(BigFraction::zero().denom(), &BigInt::one());
    }
}
