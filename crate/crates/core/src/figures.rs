//! Rate / relative-distance tables for the comparison plots.
//!
//! Rows follow the CSV schema `scheme,n,k,rate,delta,kind`, except the `k0`
//! table which is `n,k0,sqrt_n_plus_half`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binary::random_linear_code;
use crate::bounds::{
    deltacon, deltash_family, dg_params, gv_min_distance, k0_bisection, rm_dimension,
    shadow_lb_deg1, shadow_lb_deg2, GvTable, GV_EXACT_LIMIT,
};
use crate::field::find_odd_prime_power;
use crate::shadow::degree_one_code_for;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig1,
    Fig3,
    Fig4,
}

impl FromStr for Figure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            other => Err(format!(
                "unknown figure {other:?} (expected fig1, fig3 or fig4)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    ShadowDeg1,
    ShadowDeg2,
    Rsrm,
    Dg,
    Rm1,
    Rm2,
    Gv,
    Random,
    Exact,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scheme::ShadowDeg1 => "shadow_deg1",
            Scheme::ShadowDeg2 => "shadow_deg2",
            Scheme::Rsrm => "rsrm",
            Scheme::Dg => "dg",
            Scheme::Rm1 => "rm1",
            Scheme::Rm2 => "rm2",
            Scheme::Gv => "gv",
            Scheme::Random => "random",
            Scheme::Exact => "exact",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    LowerBound,
    Exact,
    Existence,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::LowerBound => "lower_bound",
            PointKind::Exact => "exact",
            PointKind::Existence => "existence",
        })
    }
}

/// One (rate, relative distance) point. `k` is `log2 M` for the nonlinear DG codes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub scheme: Scheme,
    pub n: u64,
    pub k: u64,
    pub rate: f64,
    pub delta: f64,
    pub kind: PointKind,
}

impl BoundPoint {
    fn new(scheme: Scheme, n: u64, k: u64, distance: f64, kind: PointKind) -> BoundPoint {
        BoundPoint {
            scheme,
            n,
            k,
            rate: k as f64 / n as f64,
            delta: distance / n as f64,
            kind,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct K0Row {
    pub n: u64,
    pub k0: f64,
    pub sqrt_n_plus_half: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FigureData {
    K0(Vec<K0Row>),
    Points(Vec<BoundPoint>),
}

impl FigureData {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            FigureData::K0(rows) => {
                out.push_str("n,k0,sqrt_n_plus_half\n");
                for r in rows {
                    out.push_str(&format!("{},{},{}\n", r.n, r.k0, r.sqrt_n_plus_half));
                }
            }
            FigureData::Points(rows) => {
                out.push_str("scheme,n,k,rate,delta,kind\n");
                for r in rows {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        r.scheme, r.n, r.k, r.rate, r.delta, r.kind
                    ));
                }
            }
        }
        out
    }

    pub fn points(&self) -> &[BoundPoint] {
        match self {
            FigureData::Points(p) => p,
            FigureData::K0(_) => &[],
        }
    }
}

/// Everything that shapes a figure table. Every randomized path is driven by `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureConfig {
    pub seed: u64,
    pub fig1_n_min: u64,
    pub fig1_n_max: u64,
    pub fig1_points: usize,
    pub fig3_n: Vec<u64>,
    /// Largest dimension enumerated exactly for the `random` and `exact` rows.
    pub exact_k_max: usize,
    /// Random codes drawn per dimension.
    pub random_codes: usize,
    pub random_k: Vec<usize>,
    /// Exact rows are skipped above this length.
    pub exact_n_max: u64,
    pub fig4_a: f64,
    pub fig4_m_min: u32,
    pub fig4_m_max: u32,
    /// Dimensions sampled along the GV curve.
    pub gv_points: usize,
}

impl Default for FigureConfig {
    fn default() -> Self {
        FigureConfig {
            seed: 0x5eed,
            fig1_n_min: 10,
            fig1_n_max: 100_000,
            fig1_points: 50,
            fig3_n: vec![1 << 10],
            exact_k_max: 16,
            random_codes: 3,
            random_k: vec![8, 10, 12, 14, 16],
            exact_n_max: 1 << 13,
            fig4_a: 0.49,
            fig4_m_min: 2,
            fig4_m_max: 15,
            gv_points: 64,
        }
    }
}

pub fn figure_data(figure: Figure, config: &FigureConfig) -> FigureData {
    match figure {
        Figure::Fig1 => FigureData::K0(fig1(config)),
        Figure::Fig3 => FigureData::Points(
            config
                .fig3_n
                .iter()
                .flat_map(|&n| fig3(n, config))
                .collect(),
        ),
        Figure::Fig4 => FigureData::Points(fig4(config)),
    }
}

/// Integer lengths spaced evenly in log scale, deduplicated.
pub fn log_grid(lo: u64, hi: u64, points: usize) -> Vec<u64> {
    if points <= 1 || hi <= lo {
        return vec![lo];
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<u64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as u64)
        .collect();
    out.dedup();
    out
}

fn fig1(config: &FigureConfig) -> Vec<K0Row> {
    log_grid(
        config.fig1_n_min.max(3),
        config.fig1_n_max,
        config.fig1_points,
    )
    .into_iter()
    .map(|n| K0Row {
        n,
        k0: k0_bisection(n as f64),
        sqrt_n_plus_half: (n as f64).sqrt() + 0.5,
    })
    .collect()
}

/// Smallest `m` with `2^m | n` and `n / 2^m <= 2^(m+1)`, for RS-RM at length `n`.
fn rsrm_shape(n: u64) -> Option<(u32, u64)> {
    (1..=n.trailing_zeros())
        .map(|m| (m, n >> m))
        .find(|&(m, outer)| outer <= 1 << (m + 1))
}

fn fig3(n: u64, config: &FigureConfig) -> Vec<BoundPoint> {
    let mut rows = Vec::new();
    let nf = n as f64;

    for k in 1..=n {
        let d = shadow_lb_deg1(nf, k as f64);
        if d <= 0.0 {
            break;
        }
        rows.push(BoundPoint::new(
            Scheme::ShadowDeg1,
            n,
            k,
            d,
            PointKind::LowerBound,
        ));
    }
    for k in 1..=n {
        let d = shadow_lb_deg2(nf, k as f64);
        if d <= 0.0 {
            break;
        }
        rows.push(BoundPoint::new(
            Scheme::ShadowDeg2,
            n,
            k,
            d,
            PointKind::LowerBound,
        ));
    }

    let mut k_max = rows.iter().map(|r| r.k).max().unwrap_or(1);
    if let Some((m, outer)) = rsrm_shape(n) {
        for big_k in 1..=outer {
            let d = ((outer - big_k + 1) << (m - 1)) as f64;
            let k = big_k * (m as u64 + 1);
            k_max = k_max.max(k);
            rows.push(BoundPoint::new(
                Scheme::Rsrm,
                n,
                k,
                d,
                PointKind::LowerBound,
            ));
        }
    }

    if n.is_power_of_two() {
        let m = n.trailing_zeros();
        if m >= 4 && m.is_multiple_of(2) {
            for d in 1..=m / 2 {
                let p = dg_params(m, d).expect("valid DG parameters");
                rows.push(BoundPoint::new(
                    Scheme::Dg,
                    n,
                    p.log2_codewords,
                    p.dmin as f64,
                    PointKind::Exact,
                ));
            }
        }
        if m >= 1 {
            rows.push(BoundPoint::new(
                Scheme::Rm1,
                n,
                rm_dimension(1, m),
                (n / 2) as f64,
                PointKind::Exact,
            ));
        }
        if m >= 2 {
            rows.push(BoundPoint::new(
                Scheme::Rm2,
                n,
                rm_dimension(2, m),
                (n / 4) as f64,
                PointKind::Exact,
            ));
        }
    }

    let gv_k: Vec<u64> = log_grid(1, k_max.min(n), config.gv_points);
    let gv_rows: Vec<BoundPoint> = if n as usize <= GV_EXACT_LIMIT {
        let table = GvTable::new(n as usize);
        gv_k.iter()
            .map(|&k| {
                BoundPoint::new(
                    Scheme::Gv,
                    n,
                    k,
                    table.min_distance(k as usize) as f64,
                    PointKind::Existence,
                )
            })
            .collect()
    } else {
        gv_k.par_iter()
            .map(|&k| {
                let d = gv_min_distance(n as usize, k as usize)
                    .expect("1 <= k <= n")
                    .d;
                BoundPoint::new(Scheme::Gv, n, k, d as f64, PointKind::Existence)
            })
            .collect()
    };
    rows.extend(gv_rows);

    if n <= config.exact_n_max {
        let jobs: Vec<(usize, u64)> = config
            .random_k
            .iter()
            .filter(|&&k| k <= config.exact_k_max && k as u64 <= n)
            .flat_map(|&k| (0..config.random_codes as u64).map(move |i| (k, i)))
            .collect();
        let random: Vec<BoundPoint> = jobs
            .par_iter()
            .map(|&(k, i)| {
                let seed = config.seed ^ (n << 20) ^ ((k as u64) << 8) ^ i;
                let code = random_linear_code(n as usize, k, seed).expect("k <= n");
                let d = code.exact_min_distance().expect("k within cap");
                BoundPoint::new(Scheme::Random, n, k as u64, d as f64, PointKind::Exact)
            })
            .collect();
        rows.extend(random);

        let shadow_k: Vec<usize> = (2..=config.exact_k_max)
            .filter(|&k| {
                let q = n + k as u64 - 1;
                q <= 1 << 20 && find_odd_prime_power(q).is_some()
            })
            .collect();
        let exact: Vec<BoundPoint> = shadow_k
            .par_iter()
            .filter_map(|&k| {
                let code = degree_one_code_for(n as usize, k).ok()?;
                let d = code.binary_code().exact_min_distance().ok()?;
                Some(BoundPoint::new(
                    Scheme::Exact,
                    n,
                    code.claimed_dim() as u64,
                    d as f64,
                    PointKind::Exact,
                ))
            })
            .collect();
        rows.extend(exact);
    }
    rows
}

fn fig4(config: &FigureConfig) -> Vec<BoundPoint> {
    let mut rows = Vec::new();
    for m in config.fig4_m_min..=config.fig4_m_max.min(31) {
        let n = 1u64 << (2 * m);
        let Ok((k, sh)) = deltash_family(n, config.fig4_a) else {
            continue;
        };
        // no RS-RM code with K >= 1 below k = m + 1
        if k < m as u64 + 1 {
            continue;
        }
        let con = deltacon(n, k as f64).expect("n is a power of four");
        let rate = k as f64 / n as f64;
        rows.push(BoundPoint {
            scheme: Scheme::ShadowDeg1,
            n,
            k,
            rate,
            delta: sh,
            kind: PointKind::LowerBound,
        });
        rows.push(BoundPoint {
            scheme: Scheme::Rsrm,
            n,
            k,
            rate,
            delta: con.value,
            kind: PointKind::LowerBound,
        });
    }
    rows
}
