//! Batch checks of the distance and point-count guarantees. Each suite returns a
//! report; failures carry a JSON counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{cubic_s, k0_bisection, k0_cardano};
use crate::concat::ConcatSpec;
use crate::field::{find_odd_prime_power, Field, FieldElement};
use crate::figures::log_grid;
use crate::poly::random_monic_irreducibles;
use crate::shadow::{degree_one_code, degree_two_code, Delta, Selection, ShadowCode};
use crate::weil::{CurveSpec, POINT_BUDGET_Q};

/// Codes above this dimension are skipped by the distance suites.
pub const SUITE_DIM_MAX: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: u64,
    pub skipped: u64,
    pub failures: Vec<Value>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> SuiteReport {
        SuiteReport {
            suite,
            checks: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.checks += 1,
            Outcome::Skip => self.skipped += 1,
            Outcome::Fail(v) => {
                self.checks += 1;
                self.failures.push(v);
            }
        }
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(Value),
}

/// Odd prime powers in `[lo, hi]`.
pub fn odd_prime_powers(lo: u32, hi: u32) -> Vec<u32> {
    (lo.max(3)..=hi)
        .filter(|&q| find_odd_prime_power(q as u64).is_some())
        .collect()
}

fn field_of(q: u32) -> Field {
    let (p, m) = find_odd_prime_power(q as u64).expect("odd prime power");
    Field::new(p, m, None).expect("valid field")
}

/// A random curve with `1..=max_factors` distinct monic irreducibles of degree `1..=3`.
pub fn random_curve(field: &Field, max_factors: usize, rng: &mut ChaCha8Rng) -> CurveSpec {
    let q = field.order();
    let count = rng.gen_range(1..=max_factors.max(1));
    let mut factors = Vec::new();
    while factors.len() < count {
        let d = rng.gen_range(1..=3);
        let p = random_monic_irreducibles(field, d, 1, rng.gen())
            .expect("degree 1..3 supply is never empty")
            .remove(0);
        if !factors.contains(&p) {
            factors.push(p);
        }
    }
    let gamma = FieldElement::from_index(rng.gen_range(1..q));
    CurveSpec::new(field, gamma, factors).expect("distinct monic irreducibles")
}

/// `curves` random curves for every odd prime power `q <= q_max`.
pub fn weil_suite(q_max: u32, curves: usize, max_factors: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("weil");
    for q in odd_prime_powers(3, q_max.min(POINT_BUDGET_Q)) {
        let field = field_of(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (q as u64) << 32);
        let specs: Vec<CurveSpec> = (0..curves)
            .map(|_| random_curve(&field, max_factors, &mut rng))
            .collect();
        let outcomes: Vec<Outcome> = specs
            .par_iter()
            .map(|c| {
                let r = c
                    .check_point_bound()
                    .expect("factors present, within budget");
                if r.ok {
                    Outcome::Pass
                } else {
                    Outcome::Fail(json!({
                        "q": q,
                        "gamma": c.gamma().index(),
                        "factors": c.factors().iter().map(|p| p.to_text()).collect::<Vec<_>>(),
                        "count": r.count,
                        "d": r.d,
                    }))
                }
            })
            .collect();
        outcomes.into_iter().for_each(|o| report.absorb(o));
    }
    report
}

fn check_code(code: &ShadowCode, label: &str) -> Outcome {
    let delta = code.delta();
    if !delta.is_positive() || code.claimed_dim() > SUITE_DIM_MAX {
        return Outcome::Skip;
    }
    let rank = code.rank();
    let dmin = code
        .binary_code()
        .exact_min_distance()
        .expect("dimension within cap");
    if rank == code.claimed_dim() && dmin as i64 >= delta.ceil() {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({
            "construction": label,
            "q": code.field().order(),
            "n": code.length(),
            "B": code.basic_set().polys().iter().map(|p| p.to_text()).collect::<Vec<_>>(),
            "rank": rank,
            "delta": delta.exact_string(),
            "dmin": dmin,
        }))
    }
}

/// Rank and distance of degree-at-most-one codes (`k = 2..=k_max`) and degree-2 codes
/// for every odd prime power `q <= q_max`, where the bound is positive.
pub fn shadow_distance_suite(q_max: u32, k_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new("shadow_distance");
    let mut jobs: Vec<(u32, usize, bool)> = Vec::new();
    for q in odd_prime_powers(3, q_max) {
        for k in (2..=k_max.min(SUITE_DIM_MAX)).filter(|&k| k < q as usize) {
            let n = q as usize + 1 - k;
            if Delta::degree_one(n, k).is_positive() {
                jobs.push((q, k, false));
            }
        }
        for k in 1..=k_max.min(SUITE_DIM_MAX) {
            if Delta::new(q as u64, q as usize, 2 * k).is_positive() {
                jobs.push((q, k, true));
            }
        }
    }
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|&(q, k, quadratic)| {
            let field = field_of(q);
            let built = if quadratic {
                degree_two_code(&field, k, Selection::Lexicographic)
            } else {
                degree_one_code(&field, q as usize + 1 - k)
            };
            match built {
                Ok(code) => check_code(&code, if quadratic { "deg2" } else { "deg1" }),
                Err(e) => Outcome::Fail(
                    json!({"q": q, "k": k, "deg2": quadratic, "error": e.to_string()}),
                ),
            }
        })
        .collect();
    outcomes.into_iter().for_each(|o| report.absorb(o));
    report
}

/// `S(n, sqrt(n) + 1/2) < 0` for `3 <= n <= n_max`, and bisection against Cardano on a
/// `grid`-point log grid to `tol`.
pub fn cubic_threshold_suite(n_max: u64, grid: usize, tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new("cubic_threshold");
    let bad: Vec<Value> = (3..=n_max)
        .into_par_iter()
        .filter_map(|n| {
            let nf = n as f64;
            let s = cubic_s(nf, nf.sqrt() + 0.5);
            (s >= 0.0).then(|| json!({"n": n, "S": s}))
        })
        .collect();
    report.checks += n_max.saturating_sub(2);
    report.failures.extend(bad);
    for n in log_grid(3, n_max.max(3), grid) {
        let nf = n as f64;
        let (b, c) = (k0_bisection(nf), k0_cardano(nf));
        report.absorb(if (b - c).abs() <= tol {
            Outcome::Pass
        } else {
            Outcome::Fail(json!({"n": n, "k0_bisection": b, "k0_cardano": c}))
        });
    }
    report
}

/// Exact distance of every RS-RM code with the given `m`, `N = 2^m` and
/// `K(m+1) <= SUITE_DIM_MAX`, against `(N - K + 1) 2^(m-1)`.
pub fn concat_distance_suite(m: u32) -> SuiteReport {
    let mut report = SuiteReport::new("concat_distance");
    let n_outer = 1usize << m;
    let ks: Vec<usize> = (1..=n_outer)
        .filter(|k| k * (m as usize + 1) <= SUITE_DIM_MAX)
        .collect();
    report.skipped += (n_outer - ks.len()) as u64;
    let outcomes: Vec<Outcome> = ks
        .par_iter()
        .map(|&k| {
            let spec = match ConcatSpec::new(m, n_outer, k) {
                Ok(s) => s,
                Err(e) => return Outcome::Fail(json!({"m": m, "K": k, "error": e.to_string()})),
            };
            let p = spec.params();
            let dmin = spec
                .binary_code()
                .expect("valid spec")
                .exact_min_distance()
                .expect("dimension within cap") as usize;
            let rate_ok =
                (p.rate_num * (n_outer as u64)) << m == (k as u64) * (m as u64 + 1) * p.rate_den;
            if dmin >= p.dmin_lb && rate_ok {
                Outcome::Pass
            } else {
                Outcome::Fail(
                    json!({"m": m, "N": n_outer, "K": k, "dmin": dmin, "dmin_lb": p.dmin_lb}),
                )
            }
        })
        .collect();
    outcomes.into_iter().for_each(|o| report.absorb(o));
    report
}
