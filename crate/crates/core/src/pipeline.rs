//! Forward and inverse number-theoretic transforms on integer signals, exact
//! round trips, and the search for matrices with an inverse modulo M.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactlin::{
    self, det_parity_mod2, int_mat_vec, max_abs_diff, mod_matrix_inverse, rational_inverse,
    reduce_matrix, residue_of, BigFraction, IntMatrix, Parity, RationalMatrix,
};
use crate::modmath::PowerOfTwoModulus;
use crate::ntdht::{build_nt_matrix, NtMatrixSpec, Variant};
use crate::{Error, Result};

/// Seed used by the random suites unless overridden.
pub const DEFAULT_SEED: u64 = 0x4854_2010;

/// Number of random inputs tried when an exhaustive sweep is too large.
pub const RANDOM_TRIALS: usize = 1000;

/// Exhaustive sweeps are used while `N * log2(M)` stays at or below this.
pub const EXHAUSTIVE_BITS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionMode {
    /// Exact integer product, unreduced.
    #[default]
    Plain,
    /// Product reduced entrywise into `[0, M)`.
    ModM,
}

/// A forward transform with its matrix, ready for repeated use.
#[derive(Debug, Clone)]
pub struct NtTransform {
    spec: NtMatrixSpec,
    matrix: IntMatrix,
    inverse: Option<RationalMatrix>,
}

impl NtTransform {
    pub fn new(spec: NtMatrixSpec) -> Self {
        Self {
            matrix: build_nt_matrix(&spec),
            spec,
            inverse: None,
        }
    }

    pub fn spec(&self) -> &NtMatrixSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Computes and caches the rational inverse.
    pub fn with_inverse(mut self) -> Result<Self> {
        self.inverse = Some(rational_inverse(&self.matrix)?);
        Ok(self)
    }

    pub fn forward(&self, x: &[i64], mode: ReductionMode) -> Result<Vec<BigInt>> {
        if x.len() != self.spec.size() {
            return Err(Error::domain(format!(
                "signal has {} samples, transform expects {}",
                x.len(),
                self.spec.size()
            )));
        }
        let x: Vec<BigInt> = x.iter().copied().map(BigInt::from).collect();
        let y = int_mat_vec(&self.matrix, &x)?;
        Ok(match mode {
            ReductionMode::Plain => y,
            ReductionMode::ModM => y
                .iter()
                .map(|v| BigInt::from(residue_of(v, self.spec.modulus())))
                .collect(),
        })
    }

    pub fn inverse_exact(&self, y: &[BigInt]) -> Result<Vec<BigFraction>> {
        if y.len() != self.spec.size() {
            return Err(Error::domain(format!(
                "vector has {} entries, transform expects {}",
                y.len(),
                self.spec.size()
            )));
        }
        let owned;
        let inv = match &self.inverse {
            Some(inv) => inv,
            None => {
                owned = rational_inverse(&self.matrix)?;
                &owned
            }
        };
        let y: Vec<BigFraction> = y.iter().cloned().map(BigFraction::from_integer).collect();
        exactlin::mat_vec(inv, &y)
    }

    pub fn roundtrip(&self, x: &[i64], mode: ReductionMode) -> Result<RoundTripReport> {
        let transformed = self.forward(x, mode)?;
        let recovered = self.inverse_exact(&transformed)?;
        let original: Vec<BigFraction> = x
            .iter()
            .map(|&v| BigFraction::from_integer(v.into()))
            .collect();
        let residual = max_abs_diff(&recovered, &original);
        Ok(RoundTripReport {
            mode,
            transformed,
            recovered,
            residual,
        })
    }
}

/// `A x` for the matrix described by `spec`.
pub fn nt_forward(x: &[i64], spec: &NtMatrixSpec, mode: ReductionMode) -> Result<Vec<BigInt>> {
    NtTransform::new(*spec).forward(x, mode)
}

/// `A^-1 y` over the rationals.
pub fn nt_inverse_exact(y: &[BigInt], spec: &NtMatrixSpec) -> Result<Vec<BigFraction>> {
    NtTransform::new(*spec).inverse_exact(y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripReport {
    pub mode: ReductionMode,
    pub transformed: Vec<BigInt>,
    pub recovered: Vec<BigFraction>,
    /// `max |recovered - x|`, exact.
    pub residual: BigFraction,
}

impl RoundTripReport {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn roundtrip(x: &[i64], spec: &NtMatrixSpec, mode: ReductionMode) -> Result<RoundTripReport> {
    NtTransform::new(*spec).roundtrip(x, mode)
}

/// Seeded random signals with entries in `[0, bound)`.
pub fn random_signals(seed: u64, count: usize, len: usize, bound: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| rng.random_range(0..bound) as i64)
                .collect()
        })
        .collect()
}

/// Summary of a seeded Plain-mode round-trip suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripSuite {
    pub trials: usize,
    pub exact: usize,
    /// First input whose residual was nonzero, with that residual.
    pub first_failure: Option<(Vec<i64>, BigFraction)>,
}

pub fn roundtrip_suite(spec: &NtMatrixSpec, trials: usize, seed: u64) -> Result<RoundTripSuite> {
    let t = NtTransform::new(*spec).with_inverse()?;
    let bound = spec.modulus().value();
    let mut suite = RoundTripSuite {
        trials,
        exact: 0,
        first_failure: None,
    };
    for x in random_signals(seed, trials, spec.size(), bound) {
        let report = t.roundtrip(&x, ReductionMode::Plain)?;
        if report.is_exact() {
            suite.exact += 1;
        } else if suite.first_failure.is_none() {
            suite.first_failure = Some((x, report.residual));
        }
    }
    Ok(suite)
}

/// How the mod-M round trip was exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Sweep {
    Exhaustive { inputs: u64 },
    Random { inputs: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModInverseSearchResult {
    pub spec: NtMatrixSpec,
    pub det_parity: Parity,
    pub inverse_found: bool,
    /// Row-major residues of `Q`, present iff `det_parity` is odd.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mod_inverse_matrix: Option<Vec<Vec<u64>>>,
    /// `(Q A) mod M == I`, checked entrywise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qa_identity_ok: Option<bool>,
    #[serde(rename = "roundtrip_ok", skip_serializing_if = "Option::is_none")]
    pub roundtrip_ok_mod_m: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<u64>>,
}

impl ModInverseSearchResult {
    /// False only when a found inverse failed one of its checks.
    pub fn is_coherent(&self) -> bool {
        match self.det_parity {
            Parity::Even => !self.inverse_found && self.mod_inverse_matrix.is_none(),
            Parity::Odd => {
                self.inverse_found
                    && self.qa_identity_ok == Some(true)
                    && self.roundtrip_ok_mod_m == Some(true)
            }
        }
    }
}

/// Specs covered by the default search: N in {2,4,8,16,32}, M = 2^t for
/// t in 1..=8, both variants.
pub fn default_search_space() -> Vec<NtMatrixSpec> {
    search_space(&[2, 4, 8, 16, 32], 1..=8, &Variant::ALL).expect("default search space is valid")
}

pub fn search_space(
    sizes: &[usize],
    exponents: std::ops::RangeInclusive<u32>,
    variants: &[Variant],
) -> Result<Vec<NtMatrixSpec>> {
    let mut specs = Vec::new();
    for &n in sizes {
        for t in exponents.clone() {
            let m = PowerOfTwoModulus::from_exponent(t)?;
            for &v in variants {
                specs.push(NtMatrixSpec::new(n, m, v)?);
            }
        }
    }
    Ok(specs)
}

/// Looks for `Q` with `Q A = I (mod M)` for each spec and verifies it. Specs
/// are evaluated in parallel; results keep the order of `specs`.
pub fn search_mod_inverse(specs: &[NtMatrixSpec], seed: u64) -> Vec<ModInverseSearchResult> {
    specs.par_iter().map(|s| probe_spec(s, seed)).collect()
}

fn probe_spec(spec: &NtMatrixSpec, seed: u64) -> ModInverseSearchResult {
    let a = build_nt_matrix(spec);
    let det_parity = det_parity_mod2(&a).expect("square by construction");
    let mut result = ModInverseSearchResult {
        spec: *spec,
        det_parity,
        inverse_found: false,
        mod_inverse_matrix: None,
        qa_identity_ok: None,
        roundtrip_ok_mod_m: None,
        sweep: None,
        counterexample: None,
    };
    if det_parity == Parity::Even {
        return result;
    }
    let m = spec.modulus();
    let q = match mod_matrix_inverse(&a, m) {
        Ok(q) => reduce_matrix(&q, m),
        Err(_) => return result,
    };
    let a = reduce_matrix(&a, m);
    result.inverse_found = true;
    result.qa_identity_ok = Some(is_identity(&mul_mod(&q, &a, m)));

    let n = spec.size();
    let bits = n as u32 * m.exponent();
    let check = |x: &[u64]| mat_vec_mod(&q, &mat_vec_mod(&a, x, m), m) == x;
    let (sweep, counterexample) = if bits <= EXHAUSTIVE_BITS {
        let inputs = 1u64 << bits;
        let cx = (0..inputs)
            .map(|code| decode_input(code, n, m))
            .find(|x| !check(x));
        (Sweep::Exhaustive { inputs }, cx)
    } else {
        let cx = random_signals(seed, RANDOM_TRIALS, n, m.value())
            .into_iter()
            .map(|x| x.into_iter().map(|v| v as u64).collect::<Vec<_>>())
            .find(|x| !check(x));
        (
            Sweep::Random {
                inputs: RANDOM_TRIALS as u64,
                seed,
            },
            cx,
        )
    };
    result.roundtrip_ok_mod_m = Some(counterexample.is_none());
    result.sweep = Some(sweep);
    result.counterexample = counterexample;
    result.mod_inverse_matrix = Some(q);
    result
}

/// Base-M digits of `code`, least significant first.
fn decode_input(mut code: u64, n: usize, m: PowerOfTwoModulus) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = m.reduce_u64(code);
            code >>= m.exponent();
            d
        })
        .collect()
}

fn mat_vec_mod(a: &[Vec<u64>], x: &[u64], m: PowerOfTwoModulus) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(0, |acc, (&aij, &xj)| m.add(acc, m.mul(aij, xj)))
        })
        .collect()
}

pub(crate) fn mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], m: PowerOfTwoModulus) -> Vec<Vec<u64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&aik, bk)| m.add(acc, m.mul(aik, bk[c])))
                })
                .collect()
        })
        .collect()
}

fn is_identity(p: &[Vec<u64>]) -> bool {
    p.iter()
        .enumerate()
        .all(|(r, row)| row.iter().enumerate().all(|(c, &v)| v == u64::from(r == c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntdht::embedded_forward16;

    fn spec(n: usize, m: u64, v: Variant) -> NtMatrixSpec {
        NtMatrixSpec::new(n, PowerOfTwoModulus::from_value(m).unwrap(), v).unwrap()
    }

    const FIG2: [i64; 16] = [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0];

    #[test]
    fn forward_examples() {
        let s = NtMatrixSpec::paper16();
        let y = nt_forward(&[0; 16], &s, ReductionMode::Plain).unwrap();
        assert!(y.iter().all(Zero::is_zero));

        let mut delta = [0i64; 16];
        delta[0] = 1;
        let y = nt_forward(&delta, &s, ReductionMode::Plain).unwrap();
        let a = embedded_forward16();
        let col0: Vec<BigInt> = (0..16).map(|r| a.get(r, 0).clone()).collect();
        assert_eq!(y, col0);

        let y = nt_forward(&FIG2, &s, ReductionMode::Plain).unwrap();
        assert_eq!(y[0], BigInt::from(1 + 11 + 13 + 7));
    }

    #[test]
    fn forward_length_mismatch() {
        assert!(matches!(
            nt_forward(&[1, 2, 3], &NtMatrixSpec::paper16(), ReductionMode::Plain),
            Err(Error::Domain(_))
        ));
        assert!(nt_inverse_exact(&[BigInt::zero()], &NtMatrixSpec::paper16()).is_err());
    }

    #[test]
    fn mod_m_is_plain_reduced() {
        let s = NtMatrixSpec::paper16();
        let plain = nt_forward(&FIG2, &s, ReductionMode::Plain).unwrap();
        let reduced = nt_forward(&FIG2, &s, ReductionMode::ModM).unwrap();
        for (p, r) in plain.iter().zip(&reduced) {
            assert_eq!(BigInt::from(residue_of(p, s.modulus())), *r);
            assert!(*r >= BigInt::zero() && *r < BigInt::from(16));
        }
    }

    #[test]
    fn inverse_examples() {
        let s = NtMatrixSpec::paper16();
        let y = nt_inverse_exact(&vec![BigInt::zero(); 16], &s).unwrap();
        assert!(y.iter().all(Zero::is_zero));

        let a = embedded_forward16();
        let col0: Vec<BigInt> = (0..16).map(|r| a.get(r, 0).clone()).collect();
        let x = nt_inverse_exact(&col0, &s).unwrap();
        for (i, v) in x.iter().enumerate() {
            assert_eq!(
                *v,
                BigFraction::from_integer(BigInt::from(u8::from(i == 0)))
            );
        }
    }

    #[test]
    fn plain_roundtrip_is_exact() {
        let r = roundtrip(&FIG2, &NtMatrixSpec::paper16(), ReductionMode::Plain).unwrap();
        assert!(r.is_exact());
        assert!(r.recovered.iter().all(|v| v.is_integer()));
    }

    #[test]
    fn mod_m_roundtrip_loses_information() {
        let x = [15i64; 16];
        let r = roundtrip(&x, &NtMatrixSpec::paper16(), ReductionMode::ModM).unwrap();
        assert!(!r.is_exact());
    }

    #[test]
    fn exhaustive_n2_roundtrips() {
        for v in Variant::ALL {
            for m in [2u64, 4, 8] {
                let s = spec(2, m, v);
                let t = NtTransform::new(s).with_inverse().unwrap();
                for a in -8..8 {
                    for b in -8..8 {
                        assert!(t
                            .roundtrip(&[a, b], ReductionMode::Plain)
                            .unwrap()
                            .is_exact());
                    }
                }
            }
        }
    }

    #[test]
    fn singular_matrix_propagates() {
        // M = 2 makes every odd-difference entry 1: rank collapses at N = 4.
        let s = spec(4, 2, Variant::OddDifference);
        assert_eq!(
            nt_inverse_exact(&vec![BigInt::zero(); 4], &s),
            Err(Error::Singular)
        );
    }

    #[test]
    fn search_examples() {
        let specs = [
            spec(2, 2, Variant::PaperRule),
            spec(4, 4, Variant::PaperRule),
            NtMatrixSpec::paper16(),
        ];
        let results = search_mod_inverse(&specs, DEFAULT_SEED);
        assert_eq!(results.len(), 3);
        assert_eq!(results[0].det_parity, Parity::Odd);
        assert_eq!(
            results[0].mod_inverse_matrix,
            Some(vec![vec![1, 0], vec![0, 1]])
        );
        assert_eq!(results[0].roundtrip_ok_mod_m, Some(true));
        assert_eq!(results[0].sweep, Some(Sweep::Exhaustive { inputs: 4 }));
        assert_eq!(results[1].det_parity, Parity::Even);
        assert!(!results[1].inverse_found);
        for (r, s) in results.iter().zip(&specs) {
            assert_eq!(r.spec, *s);
            assert!(r.is_coherent());
        }
    }

    #[test]
    fn large_specs_use_the_random_sweep() {
        // 2 * 9 bits exceeds the exhaustive budget
        let s = spec(2, 512, Variant::OddDifference);
        let r = &search_mod_inverse(&[s], 99)[0];
        assert_eq!(
            r.sweep,
            Some(Sweep::Random {
                inputs: RANDOM_TRIALS as u64,
                seed: 99
            })
        );
        assert_eq!(r.roundtrip_ok_mod_m, Some(true));
        assert!(r.is_coherent());
    }

    #[test]
    fn decode_covers_all_digits() {
        let m = PowerOfTwoModulus::from_value(4).unwrap();
        assert_eq!(decode_input(0b11_10_01, 3, m), [1, 2, 3]);
    }

    #[test]
    fn random_signals_are_reproducible() {
        let a = random_signals(7, 5, 16, 16);
        assert_eq!(a, random_signals(7, 5, 16, 16));
        assert_ne!(a, random_signals(8, 5, 16, 16));
        assert!(a.iter().flatten().all(|&v| (0..16).contains(&v)));
    }
}
