//! Brute-force reference computations shared by the integration tests. None of
//! these call the routine they are used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Residue-polynomial model of `GF(p^m)`: elements are base-`p` digit vectors,
/// multiplication is schoolbook followed by reduction modulo a monic modulus.
pub struct PolyField {
    pub p: u32,
    pub m: u32,
    /// monic, low degree first, length m + 1
    pub modulus: Vec<u32>,
}

impl PolyField {
    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }

    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn index(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                let sub = c * mc as u64 % p;
                prod[deg - m + i] = (prod[deg - m + i] + p - sub) % p;
            }
        }
        self.index(&prod[..m].iter().map(|&v| v as u32).collect::<Vec<_>>())
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }
}

/// Nonzero squares of a field given by its multiplication.
pub fn nonzero_squares(q: u32, mul: impl Fn(u32, u32) -> u32) -> HashSet<u32> {
    (1..q).map(|x| mul(x, x)).collect()
}

/// Multiplicative order by repeated multiplication.
pub fn brute_order(a: u32, mul: impl Fn(u32, u32) -> u32) -> u64 {
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul(x, a);
        k += 1;
    }
    k
}

/// Every nonzero codeword weight, by re-encoding each message from scratch.
pub fn brute_min_distance(rows: &[Vec<bool>]) -> usize {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    (1u64..1 << k)
        .map(|msg| {
            (0..n)
                .filter(|&j| (0..k).filter(|&i| msg >> i & 1 == 1 && rows[i][j]).count() % 2 == 1)
                .count()
        })
        .min()
        .unwrap_or(0)
}

pub fn brute_weights(rows: &[Vec<bool>]) -> Vec<u64> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut hist = vec![0u64; n + 1];
    for msg in 0u64..1 << k {
        let w = (0..n)
            .filter(|&j| (0..k).filter(|&i| msg >> i & 1 == 1 && rows[i][j]).count() % 2 == 1)
            .count();
        hist[w] += 1;
    }
    hist
}

/// `sum_{i<=d-2} C(n-1, i) < 2^(n-k)`, scanning `d` upward.
pub fn brute_gv(n: usize, k: usize) -> usize {
    let target = BigUint::one() << (n - k);
    let mut binom = BigUint::one();
    let mut sum = BigUint::zero();
    let mut d = 1;
    // invariant: sum = sum_{i<=d-2} C(n-1, i), binom = C(n-1, d-1)
    loop {
        let next = &sum + &binom;
        if next >= target || d > n {
            return d;
        }
        sum = next;
        let i = d as u64 - 1;
        binom = binom * BigUint::from(n as u64 - 1 - i) / BigUint::from(i + 1);
        d += 1;
    }
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(1/d) sum_{e | d} mu(e) q^(d/e)`.
pub fn necklace(q: u64, d: u64) -> u64 {
    let s: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(e) as i128 * (q as i128).pow((d / e) as u32))
        .sum();
    (s / d as i128) as u64
}

/// Root of `S(n, .)` by plain bisection on the expanded cubic.
pub fn bisect_cubic(n: f64) -> f64 {
    let s = |k: f64| ((k + n - 6.0) * k + 10.0 - 2.0 * n) * k + 2.0 * n - 5.0 - n * n;
    let (mut lo, mut hi) = (0.0, n);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if s(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

/// `(a + b sqrt(q)) / 2` rounded up, in floating point, with a guard that the value
/// is not within `1e-6` of an integer unless it is exactly one.
pub fn ceil_half_float(a: i64, b: i64, q: u64) -> i64 {
    let v = (a as f64 + b as f64 * (q as f64).sqrt()) / 2.0;
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        r as i64
    } else {
        assert!((v - r).abs() > 1e-6, "ambiguous ceiling for {v}");
        v.ceil() as i64
    }
}
