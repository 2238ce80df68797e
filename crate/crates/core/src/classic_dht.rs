//! Kak's discrete Hilbert transform on finite windows.
//!
//! All sums are accumulated exactly over the rationals. The `2/pi`
//! prefactor is irrational, so it is kept out of the exact values and only
//! applied by the `render_*` helpers that produce `f64`.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::exactlin::{BigFraction, RationalMatrix};
use crate::{Error, Result};

/// The `2/pi` prefactor of the forward and inverse transforms.
pub const SCALE: f64 = 2.0 / PI;

/// A finite exact sequence indexed from `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signal {
    origin: i64,
    samples: Vec<BigFraction>,
}

impl Signal {
    pub fn new(origin: i64, samples: Vec<BigFraction>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("signal must be non-empty"));
        }
        Ok(Self { origin, samples })
    }

    pub fn from_integers(origin: i64, samples: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::new(
            origin,
            samples
                .into_iter()
                .map(|v| BigFraction::from_integer(v.into()))
                .collect(),
        )
    }

    /// Unit impulse at index `at`.
    pub fn delta(at: i64) -> Self {
        Self {
            origin: at,
            samples: vec![BigFraction::from_integer(1.into())],
        }
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn samples(&self) -> &[BigFraction] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Last index of the support.
    pub fn end(&self) -> i64 {
        self.origin + self.samples.len() as i64 - 1
    }

    pub fn indices(&self) -> RangeInclusive<i64> {
        self.origin..=self.end()
    }

    /// Sample at absolute index `n`; zero outside the support.
    pub fn at(&self, n: i64) -> BigFraction {
        if self.indices().contains(&n) {
            self.samples[(n - self.origin) as usize].clone()
        } else {
            BigFraction::zero()
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigFraction)> {
        (self.origin..).zip(&self.samples)
    }
}

/// Truncation window: sums only see indices in `[-W, W]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DhtWindowSpec {
    half_width: u32,
}

impl DhtWindowSpec {
    pub fn new(half_width: u32) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::domain("window half-width must be >= 1"));
        }
        Ok(Self { half_width })
    }

    pub fn half_width(self) -> u32 {
        self.half_width
    }

    /// Smallest window that covers the whole support of `s`.
    pub fn covering(s: &Signal) -> Self {
        let w = s.origin().unsigned_abs().max(s.end().unsigned_abs()).max(1);
        Self {
            half_width: u32::try_from(w).unwrap_or(u32::MAX),
        }
    }

    fn contains(self, n: i64) -> bool {
        n.unsigned_abs() <= u64::from(self.half_width)
    }

    pub fn scale(self) -> f64 {
        SCALE
    }
}

fn check_range(r: &RangeInclusive<i64>) -> Result<()> {
    if r.start() > r.end() {
        return Err(Error::domain(format!(
            "empty index range {}..={}",
            r.start(),
            r.end()
        )));
    }
    Ok(())
}

fn recip(d: i64) -> BigFraction {
    BigRational::new(BigInt::from(1), BigInt::from(d))
}

/// `sum over j in window with (j - i) odd of s(j) / (i - j)`; shared by both
/// directions, which differ only in sign.
fn odd_kernel_sum(s: &Signal, i: i64, w: DhtWindowSpec) -> BigFraction {
    s.iter()
        .filter(|(j, v)| w.contains(*j) && (i - j).rem_euclid(2) == 1 && !v.is_zero())
        .fold(BigFraction::zero(), |acc, (j, v)| acc + v * recip(i - j))
}

/// Forward transform before the `2/pi` factor: for even `k` the sum runs
/// over odd `n`, for odd `k` over even `n`, of `f(n) / (k - n)`.
pub fn dht_forward(f: &Signal, k_range: RangeInclusive<i64>, w: DhtWindowSpec) -> Result<Signal> {
    check_range(&k_range)?;
    let origin = *k_range.start();
    Signal::new(origin, k_range.map(|k| odd_kernel_sum(f, k, w)).collect())
}

/// Inverse transform before the `2/pi` factor:
/// `f(n) = -sum g(k) / (n - k)` over `k` of opposite parity to `n`.
pub fn dht_inverse(g: &Signal, n_range: RangeInclusive<i64>, w: DhtWindowSpec) -> Result<Signal> {
    check_range(&n_range)?;
    let origin = *n_range.start();
    Signal::new(origin, n_range.map(|n| -odd_kernel_sum(g, n, w)).collect())
}

/// Applies the `2/pi` prefactor once, producing floats.
pub fn render_scaled(s: &Signal) -> Vec<f64> {
    s.samples().iter().map(|v| SCALE * to_f64(v)).collect()
}

pub fn to_f64(v: &BigFraction) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Real-valued DHT matrix with the `2/pi` factor carried separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhtMatrix {
    pub entries: RationalMatrix,
}

impl DhtMatrix {
    pub fn scale(&self) -> f64 {
        SCALE
    }

    pub fn size(&self) -> usize {
        self.entries.n_rows()
    }
}

/// `entry[k][n] = 1/(k-n)` when `k - n` is odd, else 0.
pub fn dht_matrix(n: usize) -> Result<DhtMatrix> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "DHT matrix size must be even and >= 2, got {n}"
        )));
    }
    let entries = RationalMatrix::from_fn(n, n, |k, col| {
        let d = k as i64 - col as i64;
        if d.rem_euclid(2) == 1 {
            recip(d)
        } else {
            BigFraction::zero()
        }
    });
    Ok(DhtMatrix { entries })
}

/// Float error statistics for a windowed forward/inverse round trip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripError {
    pub max_abs: f64,
    pub rms: f64,
}

/// Runs `inverse(forward(f))` with both transforms confined to `w`, renders
/// the result with the `(2/pi)^2` prefactor the two passes contribute, and
/// compares against `f` over `n_range`.
pub fn dht_round_trip_error(
    f: &Signal,
    n_range: RangeInclusive<i64>,
    w: DhtWindowSpec,
) -> Result<RoundTripError> {
    check_range(&n_range)?;
    let half = i64::from(w.half_width());
    let g = dht_forward(f, -half..=half, w)?;
    let rec = dht_inverse(&g, n_range.clone(), w)?;
    let diffs: Vec<f64> = rec
        .iter()
        .map(|(n, v)| SCALE * SCALE * to_f64(v) - to_f64(&f.at(n)))
        .collect();
    let max_abs = diffs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let rms = (diffs.iter().map(|d| d * d).sum::<f64>() / diffs.len() as f64).sqrt();
    Ok(RoundTripError { max_abs, rms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::mat_vec;

    fn q(n: i64, d: i64) -> BigFraction {
        BigFraction::new(n.into(), d.into())
    }

    fn w(h: u32) -> DhtWindowSpec {
        DhtWindowSpec::new(h).unwrap()
    }

    #[test]
    fn forward_of_delta() {
        let g = dht_forward(&Signal::delta(0), -9..=9, w(1)).unwrap();
        for (k, v) in g.iter() {
            if k % 2 == 0 {
                assert!(v.is_zero());
            } else {
                assert_eq!(v, &q(1, k));
            }
        }
    }

    #[test]
    fn forward_of_even_support_vanishes_at_even_k() {
        let f = Signal::from_integers(-4, [3, 0, 7, 0, -2, 0, 5, 0, 1]).unwrap();
        let g = dht_forward(&f, -12..=12, w(20)).unwrap();
        for (k, v) in g.iter() {
            if k % 2 == 0 {
                assert!(v.is_zero(), "k={k}");
            }
        }
    }

    #[test]
    fn forward_two_term_example() {
        let f = Signal::from_integers(0, [1, 1, 1, 1]).unwrap();
        let g = dht_forward(&f, 0..=0, w(3)).unwrap();
        // 1/(0-1) + 1/(0-3)
        assert_eq!(g.samples()[0], q(-1, 1) + q(-1, 3));
        assert_eq!(g.samples()[0], q(-4, 3));
    }

    #[test]
    fn window_clips_absolute_indices() {
        let f = Signal::from_integers(0, [1, 1, 1, 1]).unwrap();
        // W = 1 drops n = 3
        let g = dht_forward(&f, 0..=0, w(1)).unwrap();
        assert_eq!(g.samples()[0], q(-1, 1));
    }

    #[test]
    fn inverse_examples() {
        let zero = Signal::from_integers(-3, [0; 7]).unwrap();
        let r = dht_inverse(&zero, -5..=5, w(5)).unwrap();
        assert!(r.samples().iter().all(Zero::is_zero));

        let r = dht_inverse(&Signal::delta(1), -6..=6, w(2)).unwrap();
        for (n, v) in r.iter() {
            if n % 2 == 0 {
                assert_eq!(v, &-q(1, n - 1));
            } else {
                assert!(v.is_zero());
            }
        }
    }

    /// Brute-force windowed double sum for the delta round trip at `n = 0`:
    /// `-(sum over odd k in [-W,W] of (1/k) / (0 - k)) = sum 1/k^2`.
    fn brute_delta_round_trip(half: i64) -> BigFraction {
        let mut acc = BigFraction::zero();
        for k in -half..=half {
            if k.rem_euclid(2) == 1 {
                let g = q(1, k);
                acc -= g / BigFraction::from_integer((0 - k).into());
            }
        }
        acc
    }

    #[test]
    fn round_trip_of_delta_matches_brute_force_and_improves_with_window() {
        let mut prev = f64::INFINITY;
        for half in [1u32, 3, 7, 15, 31, 63] {
            let g = dht_forward(&Signal::delta(0), -(half as i64)..=half as i64, w(half)).unwrap();
            let r = dht_inverse(&g, 0..=0, w(half)).unwrap();
            assert_eq!(r.samples()[0], brute_delta_round_trip(half as i64));
            let err = dht_round_trip_error(&Signal::delta(0), 0..=0, w(half)).unwrap();
            assert!(err.max_abs < prev, "W={half}");
            prev = err.max_abs;
        }
        // sum over odd k of 1/k^2 = pi^2/4, so the tail after |k| <= 63 is ~ 4/(pi^2 * 63)
        assert!(prev < 0.01);
    }

    #[test]
    fn matrix_entries() {
        let m = dht_matrix(8).unwrap();
        assert_eq!(m.entries.get(1, 0), &q(1, 1));
        assert_eq!(m.entries.get(0, 1), &q(-1, 1));
        for k in 0..8 {
            assert!(m.entries.get(k, k).is_zero());
        }
        assert!((m.scale() - 0.636_619_772_367_581_3).abs() < 1e-15);
        assert!(dht_matrix(3).is_err());
        assert!(dht_matrix(0).is_err());
    }

    #[test]
    fn forward_matches_matrix_on_support() {
        let n = 10;
        let f = Signal::from_integers(0, [4, -1, 7, 2, 0, 9, -3, 5, 1, 8]).unwrap();
        let g = dht_forward(&f, 0..=(n as i64 - 1), w(n as u32)).unwrap();
        let m = dht_matrix(n).unwrap();
        assert_eq!(g.samples(), mat_vec(&m.entries, f.samples()).unwrap());
    }

    #[test]
    fn malformed_ranges_and_signals() {
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert!(dht_forward(&Signal::delta(0), empty.clone(), w(1)).is_err());
        assert!(dht_inverse(&Signal::delta(0), empty, w(1)).is_err());
        assert!(Signal::new(0, vec![]).is_err());
        assert!(DhtWindowSpec::new(0).is_err());
    }

    #[test]
    fn covering_window() {
        let f = Signal::from_integers(-5, [1, 2, 3]).unwrap();
        assert_eq!(DhtWindowSpec::covering(&f).half_width(), 5);
        assert_eq!(DhtWindowSpec::covering(&Signal::delta(0)).half_width(), 1);
    }
}
