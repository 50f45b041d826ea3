//! Exact sign and rounding of numbers of the form `(a + b*sqrt(q)) / 2`.

use std::cmp::Ordering;

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Exact square root, if `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n as u128) as u64;
    (r * r == n).then_some(r)
}

/// Sign of `a + b*sqrt(q)`.
pub fn sign(a: i128, b: i128, q: u128) -> Ordering {
    let root = if q == 0 { 0 } else { b };
    match (a.cmp(&0), root.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (a * a).cmp(&(b * b * q as i128)),
        (Ordering::Less, Ordering::Greater) => (b * b * q as i128).cmp(&(a * a)),
    }
}

/// `a <= b*sqrt(q)`, exactly.
pub fn le_sqrt(a: i128, b: i128, q: u128) -> bool {
    sign(-a, b, q) != Ordering::Less
}

/// `ceil((a + b*sqrt(q)) / 2)`, exactly.
pub fn ceil_half(a: i128, b: i128, q: u128) -> i128 {
    let b2q = (b * b) as u128 * q;
    let r = isqrt(b2q) as i128;
    if (r as u128) * (r as u128) == b2q {
        let s = if b >= 0 { r } else { -r };
        return (a + s).div_euclid(2) + (a + s).rem_euclid(2);
    }
    // irrational: the value lies strictly inside an interval of width 1/2
    let low = if b >= 0 { a + r } else { a - r - 1 };
    low.div_euclid(2) + 1
}
