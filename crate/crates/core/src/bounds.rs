//! Closed-form parameters and distance bounds.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

/// Up to this length the GV bound is evaluated with exact big integers.
pub const GV_EXACT_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("Delsarte-Goethals parameters need even m >= 4 and 1 <= d <= m/2, got m={m}, d={d}")]
    BadParameters { m: u32, d: u32 },
    #[error("length {0} is not a power of four")]
    BadShape(u64),
    #[error("exponent {0} is outside (0, 1/2]")]
    BadExponent(String),
    #[error("need 1 <= k <= n, got n={n}, k={k}")]
    BadDimension { n: usize, k: usize },
}

/// Length, log2 of the codeword count, and minimum distance of `DG(m, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DgParams {
    pub length: u64,
    pub log2_codewords: u64,
    pub dmin: u64,
}

/// `DG(m, d)` with `m = 2t + 2`.
pub fn dg_params(m: u32, d: u32) -> Result<DgParams, BoundsError> {
    if m < 4 || !m.is_multiple_of(2) || d < 1 || d > m / 2 || m > 62 {
        return Err(BoundsError::BadParameters { m, d });
    }
    let t = (m - 2) as u64 / 2;
    let d = d as u64;
    Ok(DgParams {
        length: 1 << (2 * t + 2),
        log2_codewords: (2 * t + 1) * (t + 2 - d) + 2 * t + 3,
        dmin: (1 << (2 * t + 1)) - (1 << (2 * t + 1 - d)),
    })
}

/// `RM(r, m)` dimension `sum_{i<=r} C(m, i)`.
pub fn rm_dimension(r: u32, m: u32) -> u64 {
    (0..=r.min(m)).map(|i| binomial(m as u64, i as u64)).sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Result of the Gilbert-Varshamov computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GvBound {
    pub d: usize,
    /// Set when the log-domain approximation was used.
    pub approximate: bool,
}

/// Largest `d` with `sum_{i=0}^{d-2} C(n-1, i) < 2^(n-k)`, which guarantees a
/// linear `[n, k, d]` code.
pub fn gv_min_distance(n: usize, k: usize) -> Result<GvBound, BoundsError> {
    if k == 0 || k > n {
        return Err(BoundsError::BadDimension { n, k });
    }
    if n <= GV_EXACT_LIMIT {
        Ok(GvBound {
            d: GvTable::new(n).min_distance(k),
            approximate: false,
        })
    } else {
        Ok(GvBound {
            d: gv_log_domain(n, k),
            approximate: true,
        })
    }
}

/// Exact prefix sums of `C(n-1, i)` for one length, shared across dimensions.
pub struct GvTable {
    n: usize,
    prefix: Vec<BigUint>,
}

impl GvTable {
    pub fn new(n: usize) -> GvTable {
        let mut prefix = Vec::with_capacity(n);
        let mut term = BigUint::one();
        let mut acc = BigUint::zero();
        for i in 0..n {
            acc += &term;
            prefix.push(acc.clone());
            // C(n-1, i+1) = C(n-1, i) * (n-1-i) / (i+1)
            term = term * BigUint::from((n - 1 - i) as u64) / BigUint::from(i as u64 + 1);
        }
        GvTable { n, prefix }
    }

    pub fn min_distance(&self, k: usize) -> usize {
        let budget = BigUint::one() << (self.n - k);
        // prefix[d-2] < budget; d = 1 always qualifies (empty sum)
        let count = self.prefix.partition_point(|s| *s < budget);
        count + 1
    }
}

fn gv_log_domain(n: usize, k: usize) -> usize {
    let target = (n - k) as f64 * std::f64::consts::LN_2;
    let nn = (n - 1) as f64;
    // ln C(n-1, j) and ln sum_{i<=j} C(n-1, i)
    let mut log_term = 0.0f64;
    let mut log_sum = f64::NEG_INFINITY;
    let mut d = 1;
    for j in 0..n {
        log_sum = log_add(log_sum, log_term);
        if log_sum >= target {
            break;
        }
        d = j + 2;
        if j + 1 < n {
            log_term += ((nn - j as f64) / (j as f64 + 1.0)).ln();
        }
    }
    d
}

fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// Degree-at-most-one bound `(n-k+1)/2 - (sqrt(n+k-1)/2)(k-2)`.
pub fn shadow_lb_deg1(n: f64, k: f64) -> f64 {
    (n - k + 1.0) / 2.0 - (n + k - 1.0).sqrt() / 2.0 * (k - 2.0)
}

/// Degree-2 bound `n/2 - (sqrt(n)/2)(2k-1)`.
pub fn shadow_lb_deg2(n: f64, k: f64) -> f64 {
    n / 2.0 - n.sqrt() / 2.0 * (2.0 * k - 1.0)
}

/// `S(n, k) = k^3 + (n-6)k^2 + (10-2n)k + (2n - 5 - n^2)`; negative exactly when
/// the degree-at-most-one bound is positive (for `k >= 2`).
pub fn cubic_s(n: f64, k: f64) -> f64 {
    k * k * k + (n - 6.0) * k * k + (10.0 - 2.0 * n) * k + (2.0 * n - 5.0 - n * n)
}

/// `S(n, k)` in exact integer arithmetic.
pub fn cubic_s_exact(n: i128, k: i128) -> i128 {
    k * k * k + (n - 6) * k * k + (10 - 2 * n) * k + (2 * n - 5 - n * n)
}

/// The cubic threshold and the pieces of its Cardano form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicRecord {
    pub n: f64,
    pub xi: f64,
    /// `-12n^3 + 177n^2 - 174n - 15`, signed
    pub omega_sq: f64,
    /// root by bisection
    pub k0: f64,
    /// root by the Cardano closed form
    pub k0_cardano: f64,
}

pub fn xi(n: f64) -> f64 {
    (-2.0 * n.powi(3) + 45.0 * n * n - 72.0 * n + 27.0) / 54.0
}

pub fn omega_radicand(n: f64) -> f64 {
    -12.0 * n.powi(3) + 177.0 * n * n - 174.0 * n - 15.0
}

/// Root of `S(n, .)` in `(0, n)` by bisection to `1e-9`.
pub fn k0_bisection(n: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, n);
    for _ in 0..200 {
        if hi - lo <= 1e-9 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if cubic_s(n, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `cbrt(xi + omega) + cbrt(xi - omega) - (n - 6)/3` with
/// `omega = (n - 1) sqrt(radicand) / 18`, taken over the complex numbers when the
/// radicand is negative (principal cube roots; the two terms are conjugate).
pub fn k0_cardano(n: f64) -> f64 {
    let x = xi(n);
    let rad = omega_radicand(n);
    let shift = (n - 6.0) / 3.0;
    if rad >= 0.0 {
        let w = (n - 1.0) * rad.sqrt() / 18.0;
        (x + w).cbrt() + (x - w).cbrt() - shift
    } else {
        let w = Complex64::new(0.0, (n - 1.0) * (-rad).sqrt() / 18.0);
        let plus = (Complex64::new(x, 0.0) + w).cbrt();
        let minus = (Complex64::new(x, 0.0) - w).cbrt();
        (plus + minus).re - shift
    }
}

pub fn k0(n: u64) -> CubicRecord {
    let nf = n as f64;
    CubicRecord {
        n: nf,
        xi: xi(nf),
        omega_sq: omega_radicand(nf),
        k0: k0_bisection(nf),
        k0_cardano: k0_cardano(nf),
    }
}

/// Relative distance of the `N = 2^m` RS-RM code at length `n = 4^m` and dimension `k`:
/// `1/2 - (k - log2 sqrt(n) - 1) / (sqrt(n)(log2 n + 2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaCon {
    pub value: f64,
    /// Set when `k` is not a multiple of `m + 1`, so no code has exactly this dimension.
    pub approximate: bool,
}

pub fn deltacon(n: u64, k: f64) -> Result<DeltaCon, BoundsError> {
    let m = power_of_four(n).ok_or(BoundsError::BadShape(n))?;
    let sqrt_n = (1u64 << m) as f64;
    let log2n = 2.0 * m as f64;
    let value = 0.5 - (k - m as f64 - 1.0) / (sqrt_n * (log2n + 2.0));
    let approximate = k.fract() != 0.0 || !(k as u64).is_multiple_of(m as u64 + 1);
    Ok(DeltaCon { value, approximate })
}

fn power_of_four(n: u64) -> Option<u32> {
    (n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2)).then(|| n.trailing_zeros() / 2)
}

/// Relative degree-at-most-one bound at `k = floor(n^a)`.
pub fn deltash_family(n: u64, a: f64) -> Result<(u64, f64), BoundsError> {
    if !(a > 0.0 && a <= 0.5) {
        return Err(BoundsError::BadExponent(a.to_string()));
    }
    let k = (n as f64).powf(a).floor() as u64;
    Ok((k, shadow_lb_deg1(n as f64, k as f64) / n as f64))
}

/// Relative-distance guarantee of the RS-RM code in terms of the outer rate: `(1 - R)/2`.
pub fn rsrm_relative_bound(r_rs: f64) -> f64 {
    (1.0 - r_rs) / 2.0
}

/// Simplified degree-at-most-one guarantee at the same rate: `(1 - R(m+1))/2`.
pub fn shadow_relative_bound(r_rs: f64, m: u32) -> f64 {
    (1.0 - r_rs * (m as f64 + 1.0)) / 2.0
}
