//! Exhaustive CHSH scan over four active-measurement times, followed by a
//! simplex refinement around the best grid point.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::chsh::{chsh_value, kaon_correlation, OutcomeMapping, CLASSICAL_BOUND, QUANTUM_BOUND};
use super::optimize::{nelder_mead, NelderMeadOptions};
use crate::error::{Error, Result};
use crate::kaon::{ActiveQuestion, FlavorState, KaonConstants};
use crate::numfmt::f17;

/// Uniform grid of `points` proper times over `[t_min, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

impl TimeGrid {
    pub const DEFAULT_POINTS: usize = 40;

    pub fn new(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::input("time grid is empty"));
        }
        if !(t_min.is_finite() && t_max.is_finite() && t_min >= 0.0 && t_max >= t_min) {
            return Err(Error::input(format!("bad time grid bounds [{t_min}, {t_max}]")));
        }
        if points > 1 && t_max == t_min {
            return Err(Error::input("multi-point grid needs t_max > t_min"));
        }
        Ok(TimeGrid { t_min, t_max, points })
    }

    /// 40 points over `[0, 4/Γ_S]`, or over one oscillation period
    /// `[0, 2π/Δm]` when `Γ_S = 0`.
    pub fn default_for(c: &KaonConstants) -> Result<Self> {
        let t_max = if c.gamma_s > 0.0 {
            4.0 / c.gamma_s
        } else if c.delta_m() > 0.0 {
            std::f64::consts::TAU / c.delta_m()
        } else {
            return Err(Error::input("no natural time scale: gamma_S = delta_m = 0"));
        };
        Self::new(0.0, t_max, Self::DEFAULT_POINTS)
    }

    pub fn spacing(&self) -> f64 {
        if self.points > 1 {
            (self.t_max - self.t_min) / (self.points - 1) as f64
        } else {
            0.0
        }
    }

    pub fn times(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points).map(|i| self.t_min + h * i as f64).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub refine: bool,
    pub optimizer: NelderMeadOptions,
    pub mapping: OutcomeMapping,
    /// Thread count; `None` uses the global pool. Results do not depend on it.
    pub workers: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            refine: true,
            optimizer: NelderMeadOptions::default(),
            mapping: OutcomeMapping::YesPlus,
            workers: None,
        }
    }
}

/// `S` for every 4-tuple of grid times, in lexicographic `(t1,t2,t3,t4)` order.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanTable {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl ScanTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn row(&self, index: usize) -> ([f64; 4], f64) {
        let p = self.times.len();
        let idx = [index / (p * p * p), index / (p * p) % p, index / p % p, index % p];
        (idx.map(|i| self.times[i]), self.values[index])
    }

    pub fn rows(&self) -> impl Iterator<Item = ([f64; 4], f64)> + '_ {
        (0..self.len()).map(move |i| self.row(i))
    }

    /// CSV with header `t1,t2,t3,t4,S`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t1", "t2", "t3", "t4", "S"])?;
        for (t, s) in self.rows() {
            w.write_record([f17(t[0]), f17(t[1]), f17(t[2]), f17(t[3]), f17(s)])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KaonScanResult {
    /// Largest `|S|` found, grid or refined.
    pub max_abs_s: f64,
    /// Signed `S` at [`argmax`](Self::argmax).
    pub s_value: f64,
    pub argmax: [f64; 4],
    pub coarse_max_abs_s: f64,
    pub coarse_argmax: [f64; 4],
    pub refined: bool,
    /// Grid maximum of `|S|` restricted to tuples where each side's two
    /// settings differ (`n ≠ n′` and `m ≠ m′`); `None` if there are none.
    pub distinct_max_abs_s: Option<f64>,
    pub distinct_argmax: Option<[f64; 4]>,
    pub flavors: [FlavorState; 4],
    pub grid: TimeGrid,
    pub table: ScanTable,
}

/// JSON summary written next to the scan CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    #[serde(rename = "max_S")]
    pub max_s: f64,
    #[serde(rename = "S_at_argmax")]
    pub s_value: f64,
    pub argmax: [f64; 4],
    #[serde(rename = "coarse_max_S")]
    pub coarse_max_s: f64,
    pub coarse_argmax: [f64; 4],
    pub refined: bool,
    #[serde(rename = "distinct_settings_max_S")]
    pub distinct_max_s: Option<f64>,
    pub distinct_settings_argmax: Option<[f64; 4]>,
    pub classical_bound: f64,
    pub quantum_bound: f64,
    pub violates_classical_bound: bool,
    pub flavors: [FlavorState; 4],
    pub grid: TimeGrid,
    pub constants_hash: String,
}

impl KaonScanResult {
    pub fn summary(&self, c: &KaonConstants) -> ScanSummary {
        ScanSummary {
            max_s: self.max_abs_s,
            s_value: self.s_value,
            argmax: self.argmax,
            coarse_max_s: self.coarse_max_abs_s,
            coarse_argmax: self.coarse_argmax,
            refined: self.refined,
            distinct_max_s: self.distinct_max_abs_s,
            distinct_settings_argmax: self.distinct_argmax,
            classical_bound: CLASSICAL_BOUND,
            quantum_bound: QUANTUM_BOUND,
            violates_classical_bound: self.max_abs_s > CLASSICAL_BOUND,
            flavors: self.flavors,
            grid: self.grid,
            constants_hash: c.hash(),
        }
    }
}

fn chsh_at(
    t: [f64; 4],
    flavors: &[FlavorState; 4],
    c: &KaonConstants,
    mapping: OutcomeMapping,
) -> Result<f64> {
    let q = |i: usize| ActiveQuestion::new(flavors[i], t[i]);
    let e = |a: usize, b: usize| kaon_correlation(&q(a)?, &q(b)?, c, mapping);
    chsh_value(e(0, 1)?, e(0, 3)?, e(2, 1)?, e(2, 3)?)
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Scans `S(t1,t2,t3,t4)` for questions `flavors = (n, m, n′, m′)` over all
/// 4-tuples of grid times, then refines the best `|S|` with Nelder–Mead
/// inside the grid box.
///
/// Ties in the grid maximum go to the lexicographically smallest time tuple.
pub fn kaon_chsh_scan(
    c: &KaonConstants,
    flavors: [FlavorState; 4],
    grid: &TimeGrid,
    opts: &ScanOptions,
) -> Result<KaonScanResult> {
    let grid = TimeGrid::new(grid.t_min, grid.t_max, grid.points)?;
    c.validate()?;
    let times = grid.times();
    let p = times.len();

    in_pool(opts.workers, || {
        // E tables for the four (Alice, Bob) setting pairs
        let pair_table = |a: usize, b: usize| -> Result<Vec<f64>> {
            (0..p * p)
                .into_par_iter()
                .map(|k| {
                    let ql = ActiveQuestion::new(flavors[a], times[k / p])?;
                    let qr = ActiveQuestion::new(flavors[b], times[k % p])?;
                    kaon_correlation(&ql, &qr, c, opts.mapping)
                })
                .collect()
        };
        let e_nm = pair_table(0, 1)?;
        let e_nm2 = pair_table(0, 3)?;
        let e_n2m = pair_table(2, 1)?;
        let e_n2m2 = pair_table(2, 3)?;

        let alice_same = |i1: usize, i3: usize| flavors[0] == flavors[2] && i1 == i3;
        let bob_same = |i2: usize, i4: usize| flavors[1] == flavors[3] && i2 == i4;

        // per-block (values, best, best among distinct-setting tuples)
        type Best = (usize, f64);
        let blocks: Vec<(Vec<f64>, Best, Best)> = (0..p)
            .into_par_iter()
            .map(|i1| {
                let base = i1 * p * p * p;
                let mut vals = Vec::with_capacity(p * p * p);
                let mut best = (0usize, f64::NEG_INFINITY);
                let mut distinct = (0usize, f64::NEG_INFINITY);
                for i2 in 0..p {
                    for i3 in 0..p {
                        for i4 in 0..p {
                            let s = e_nm[i1 * p + i2] - e_nm2[i1 * p + i4]
                                + e_n2m[i3 * p + i2]
                                + e_n2m2[i3 * p + i4];
                            let idx = base + vals.len();
                            if s.abs() > best.1 {
                                best = (idx, s.abs());
                            }
                            if s.abs() > distinct.1 && !alice_same(i1, i3) && !bob_same(i2, i4) {
                                distinct = (idx, s.abs());
                            }
                            vals.push(s);
                        }
                    }
                }
                (vals, best, distinct)
            })
            .collect();

        let pick = |acc: Best, b: Best| if b.1 > acc.1 { b } else { acc };
        let start = (0usize, f64::NEG_INFINITY);
        let best = blocks.iter().map(|b| b.1).fold(start, pick);
        let distinct = blocks.iter().map(|b| b.2).fold(start, pick);
        let values: Vec<f64> = blocks.into_iter().flat_map(|(v, _, _)| v).collect();
        let table = ScanTable { times: times.clone(), values };
        let (coarse_argmax, coarse_s) = table.row(best.0);
        let (distinct_max_abs_s, distinct_argmax) = if distinct.1.is_finite() {
            (Some(distinct.1), Some(table.row(distinct.0).0))
        } else {
            (None, None)
        };

        let mut result = KaonScanResult {
            max_abs_s: coarse_s.abs(),
            s_value: coarse_s,
            argmax: coarse_argmax,
            coarse_max_abs_s: coarse_s.abs(),
            coarse_argmax,
            refined: false,
            distinct_max_abs_s,
            distinct_argmax,
            flavors,
            grid,
            table,
        };

        if opts.refine && grid.points > 1 {
            let clamp = |x: &[f64]| -> [f64; 4] {
                [0, 1, 2, 3].map(|i| x[i].clamp(grid.t_min, grid.t_max))
            };
            let objective = |x: &[f64]| match chsh_at(clamp(x), &flavors, c, opts.mapping) {
                Ok(s) => -s.abs(),
                Err(_) => f64::INFINITY,
            };
            let h = grid.spacing();
            let nm = nelder_mead(objective, &coarse_argmax, &[h; 4], &opts.optimizer);
            let t = clamp(&nm.x);
            let s = chsh_at(t, &flavors, c, opts.mapping)?;
            if s.abs() > result.max_abs_s {
                result.max_abs_s = s.abs();
                result.s_value = s;
                result.argmax = t;
                result.refined = true;
            }
        }
        Ok(result)
    })
}
