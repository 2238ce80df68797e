//! The number-theoretic DHT matrix: construction, the published 16-point
//! tables, and structural checks against them.
//!
//! Two placement rules are provided:
//!
//! * [`Variant::PaperRule`] reproduces the published 16-point table. Entries
//!   sit on *even* index differences, with denominator `n-k+1` on and above
//!   the diagonal and `n-k-1` below it. The table itself never states this
//!   rule; it was reconstructed from the entries and is checked against all
//!   256 of them in the tests.
//! * [`Variant::OddDifference`] is the entrywise image of the classical DHT
//!   matrix: `(k-n)^-1 mod M` on odd differences.

pub mod tables;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactlin::{BigFraction, IntMatrix, RationalMatrix};
use crate::modmath::{mod_inverse, PowerOfTwoModulus};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "paper")]
    PaperRule,
    #[serde(rename = "odd-diff")]
    OddDifference,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::PaperRule, Variant::OddDifference];

    pub fn name(self) -> &'static str {
        match self {
            Variant::PaperRule => "paper",
            Variant::OddDifference => "odd-diff",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Variant::PaperRule),
            "odd-diff" => Ok(Variant::OddDifference),
            other => Err(Error::domain(format!(
                "unknown variant {other:?} (expected paper or odd-diff)"
            ))),
        }
    }
}

/// Size, modulus and placement rule of a number-theoretic DHT matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NtMatrixSpec {
    size: usize,
    modulus: PowerOfTwoModulus,
    variant: Variant,
}

impl NtMatrixSpec {
    pub fn new(size: usize, modulus: PowerOfTwoModulus, variant: Variant) -> Result<Self> {
        if size < 2 || !size.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "matrix size must be even and >= 2, got {size}"
            )));
        }
        Ok(Self {
            size,
            modulus,
            variant,
        })
    }

    /// The published configuration: N = 16, M = 16, PaperRule.
    pub fn paper16() -> Self {
        Self {
            size: 16,
            modulus: PowerOfTwoModulus::from_exponent(4).expect("16 = 2^4"),
            variant: Variant::PaperRule,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> PowerOfTwoModulus {
        self.modulus
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

impl fmt::Display for NtMatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.size, self.modulus, self.variant)
    }
}

impl std::str::FromStr for NtMatrixSpec {
    type Err = Error;

    /// Parses `n,modulus,variant`, e.g. `16,16,paper`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [n, m, v] = parts.as_slice() else {
            return Err(Error::domain(format!(
                "spec must be n,modulus,variant, got {s:?}"
            )));
        };
        let n = n
            .parse::<usize>()
            .map_err(|e| Error::domain(format!("bad size {n:?}: {e}")))?;
        let m = m
            .parse::<u64>()
            .map_err(|e| Error::domain(format!("bad modulus {m:?}: {e}")))?;
        Self::new(n, PowerOfTwoModulus::from_value(m)?, v.parse()?)
    }
}

/// Signed odd denominator behind the published entry at `(k, n)`, or `None`
/// where the table holds a structural zero (odd `n - k`).
pub fn paper_denominator(k: usize, n: usize) -> Option<i64> {
    let diff = n as i64 - k as i64;
    if diff.rem_euclid(2) == 1 {
        None
    } else if diff >= 0 {
        Some(diff + 1)
    } else {
        Some(diff - 1)
    }
}

fn odd_difference_denominator(k: usize, n: usize) -> Option<i64> {
    let diff = k as i64 - n as i64;
    (diff.rem_euclid(2) == 1).then_some(diff)
}

/// Builds the matrix for `spec`; every entry is a residue in `[0, M)`.
pub fn build_nt_matrix(spec: &NtMatrixSpec) -> IntMatrix {
    let m = spec.modulus;
    let rule = match spec.variant {
        Variant::PaperRule => paper_denominator,
        Variant::OddDifference => odd_difference_denominator,
    };
    IntMatrix::from_fn(spec.size, spec.size, |k, n| match rule(k, n) {
        Some(d) => BigInt::from(
            mod_inverse(d, m)
                .expect("denominators produced by both rules are odd")
                .value(),
        ),
        None => BigInt::zero(),
    })
}

/// The published forward table.
pub fn embedded_forward16() -> IntMatrix {
    IntMatrix::from_fn(16, 16, |r, c| BigInt::from(tables::FORWARD16[r][c]))
}

/// One line of the printed inverse table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrintedRow {
    pub index: usize,
    pub text: &'static str,
    pub token_count: usize,
    /// Parsed values; only meaningful when `well_formed`.
    pub values: Vec<f64>,
    /// Exactly 16 parseable tokens.
    pub well_formed: bool,
}

pub struct PrintedTables {
    pub forward16: IntMatrix,
    pub inverse16_printed: Vec<PrintedRow>,
}

pub fn embedded_inverse16_printed() -> Vec<PrintedRow> {
    tables::INVERSE16_PRINTED
        .iter()
        .enumerate()
        .map(|(index, &text)| {
            let tokens: Vec<&str> = text.split_whitespace().collect();
            let parsed: Option<Vec<f64>> = tokens.iter().map(|t| t.parse().ok()).collect();
            let well_formed = tokens.len() == 16 && parsed.is_some();
            PrintedRow {
                index,
                text,
                token_count: tokens.len(),
                values: parsed.unwrap_or_default(),
                well_formed,
            }
        })
        .collect()
}

pub fn printed_tables() -> PrintedTables {
    PrintedTables {
        forward16: embedded_forward16(),
        inverse16_printed: embedded_inverse16_printed(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "crate::serde_display::one")]
    pub expected: BigInt,
    #[serde(serialize_with = "crate::serde_display::one")]
    pub found: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantVerdict {
    pub is_circulant: bool,
    pub witness: Option<Witness>,
}

/// Checks that row `r` is row 0 cyclically shifted right by `r`; reports the
/// first violation in row-major order.
pub fn check_circulant(a: &IntMatrix) -> Result<CirculantVerdict> {
    require_square(a)?;
    let n = a.n_rows();
    let witness = (1..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find_map(|(r, c)| {
            let expected = a.get(0, (c + n - r) % n);
            let found = a.get(r, c);
            (expected != found).then(|| Witness {
                row: r,
                col: c,
                expected: expected.clone(),
                found: found.clone(),
            })
        });
    Ok(CirculantVerdict {
        is_circulant: witness.is_none(),
        witness,
    })
}

/// Checks that entries are constant along diagonals; same witness format as
/// [`check_circulant`], with `expected` taken from the first row or column.
pub fn check_toeplitz(a: &IntMatrix) -> Result<CirculantVerdict> {
    require_square(a)?;
    let n = a.n_rows();
    let witness = (1..n)
        .flat_map(|r| (1..n).map(move |c| (r, c)))
        .find_map(|(r, c)| {
            let s = r.min(c);
            let expected = a.get(r - s, c - s);
            let found = a.get(r, c);
            (expected != found).then(|| Witness {
                row: r,
                col: c,
                expected: expected.clone(),
                found: found.clone(),
            })
        });
    Ok(CirculantVerdict {
        is_circulant: witness.is_none(),
        witness,
    })
}

/// Splits a parity-preserving matrix into its (even, even) and (odd, odd)
/// blocks. Fails if any entry with odd `row - col` is nonzero.
pub fn parity_blocks(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    require_square(a)?;
    let n = a.n_rows();
    if !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "parity blocks need an even size, got {n}"
        )));
    }
    for r in 0..n {
        for c in 0..n {
            if (r + c) % 2 == 1 && !a.get(r, c).is_zero() {
                return Err(Error::domain(format!(
                    "entry ({r},{c}) is nonzero but row-col is odd"
                )));
            }
        }
    }
    let h = n / 2;
    let even = IntMatrix::from_fn(h, h, |i, j| a.get(2 * i, 2 * j).clone());
    let odd = IntMatrix::from_fn(h, h, |i, j| a.get(2 * i + 1, 2 * j + 1).clone());
    Ok((even, odd))
}

/// Two index pairs on the common support of `forward` and `inverse` with
/// `a1 * b2 != a2 * b1`. Such a pair rules out `inverse = c * forward` for
/// every scalar `c`.
pub fn cross_ratio_witness(
    forward: &IntMatrix,
    inverse: &RationalMatrix,
) -> Option<((usize, usize), (usize, usize))> {
    let n = forward.n_rows();
    let support: Vec<(usize, usize, BigFraction, BigFraction)> = (0..n)
        .flat_map(|r| (0..forward.n_cols()).map(move |c| (r, c)))
        .filter_map(|(r, c)| {
            let a = forward.get(r, c);
            let b = inverse.get(r, c);
            (!a.is_zero() && !b.is_zero())
                .then(|| (r, c, BigFraction::from_integer(a.clone()), b.clone()))
        })
        .collect();
    let (r1, c1, a1, b1) = support.first()?;
    support
        .iter()
        .find(|(_, _, a2, b2)| a1 * b2 != a2 * b1)
        .map(|(r2, c2, _, _)| ((*r1, *c1), (*r2, *c2)))
}

/// Half a unit in the third decimal place.
pub const PRINTED_TOLERANCE: f64 = 5e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub printed: f64,
    pub exact: String,
    pub exact_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErratumRow {
    pub row: usize,
    pub token_count: usize,
    pub text: &'static str,
}

/// Outcome of comparing the printed inverse against an exact inverse.
/// Mismatches are informational.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub tolerance: f64,
    pub total_compared: usize,
    pub matches: usize,
    pub mismatches: Vec<EntryMismatch>,
    pub erratum_rows: Vec<ErratumRow>,
}

pub fn compare_printed_inverse(exact_inv: &RationalMatrix) -> Result<ComparisonReport> {
    if exact_inv.n_rows() != 16 || exact_inv.n_cols() != 16 {
        return Err(Error::domain(format!(
            "printed inverse is 16x16, got {}x{}",
            exact_inv.n_rows(),
            exact_inv.n_cols()
        )));
    }
    let mut report = ComparisonReport {
        tolerance: PRINTED_TOLERANCE,
        total_compared: 0,
        matches: 0,
        mismatches: Vec::new(),
        erratum_rows: Vec::new(),
    };
    for row in embedded_inverse16_printed() {
        if !row.well_formed {
            report.erratum_rows.push(ErratumRow {
                row: row.index,
                token_count: row.token_count,
                text: row.text,
            });
            continue;
        }
        for (col, &printed) in row.values.iter().enumerate() {
            let exact = exact_inv.get(row.index, col);
            let exact_value = exact.to_f64().unwrap_or(f64::NAN);
            report.total_compared += 1;
            if (printed - exact_value).abs() <= PRINTED_TOLERANCE {
                report.matches += 1;
            } else {
                report.mismatches.push(EntryMismatch {
                    row: row.index,
                    col,
                    printed,
                    exact: exact.to_string(),
                    exact_value,
                });
            }
        }
    }
    Ok(report)
}

fn require_square(a: &IntMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "expected a square matrix, got {}x{}",
            a.n_rows(),
            a.n_cols()
        )))
    }
}
