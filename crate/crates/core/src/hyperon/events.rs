//! Monte Carlo generation of daughter-direction pairs and their CSV form.

use std::io::{BufRead, BufReader, Read, Write};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check_alpha, DecayDirection};
use crate::error::{Error, Result};
use crate::numfmt::f17;
use crate::streams;

/// Sampled `(n_Λ, n_Λ̄)` pairs with the generator parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EventBatch {
    pub events: Vec<(DecayDirection, DecayDirection)>,
    pub seed: u64,
    pub alpha_product: f64,
}

impl EventBatch {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Inverse CDF of the density `(1 − a χ)/2` on `[−1, 1]` at `u ∈ [0, 1]`.
///
/// Root of `a χ² − 2χ − (2 + a − 4u) = 0`, written to stay stable at `a → 0`.
pub(crate) fn linear_cosine_inverse_cdf(a: f64, u: f64) -> f64 {
    let k = 2.0 + a - 4.0 * u;
    let disc = (1.0 + a * k).max(0.0);
    (-k / (1.0 + disc.sqrt())).clamp(-1.0, 1.0)
}

fn isotropic(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi: f64 = std::f64::consts::TAU * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// Unit vector at cosine `chi` to `axis`, azimuth uniform.
fn around(axis: [f64; 3], chi: f64, rng: &mut ChaCha8Rng) -> [f64; 3] {
    // any vector not parallel to axis
    let helper = if axis[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let mut e1 = cross(axis, helper);
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = e1.map(|x| x / n1);
    let e2 = cross(axis, e1);
    let psi: f64 = std::f64::consts::TAU * rng.random::<f64>();
    let s = (1.0 - chi * chi).max(0.0).sqrt();
    let (sp, cp) = psi.sin_cos();
    [0, 1, 2].map(|i| chi * axis[i] + s * (cp * e1[i] + sp * e2[i]))
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::input("event count must be at least 1"));
    }
    Ok(())
}

/// Samples `count` events from `(1 − α_Λ α_Λ̄ n·m)/(4π)²`.
///
/// `n_Λ` is isotropic, the relative cosine `χ = n·m` follows `(1 − αα χ)/2`
/// through its closed-form inverse CDF, and the azimuth of `m` about `n` is
/// uniform. Reproducible for a given seed.
pub fn sample_events(alpha_l: f64, alpha_lbar: f64, count: usize, seed: u64) -> Result<EventBatch> {
    sample_events_with_workers(alpha_l, alpha_lbar, count, seed, None)
}

/// [`sample_events`] on an explicit number of worker threads; the batch
/// is identical for every worker count.
pub fn sample_events_with_workers(
    alpha_l: f64,
    alpha_lbar: f64,
    count: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<EventBatch> {
    check_alpha(alpha_l)?;
    check_alpha(alpha_lbar)?;
    check_count(count)?;
    let a = alpha_l * alpha_lbar;
    let events = streams::generate(count, seed, workers, |rng, _| {
        let n = isotropic(rng);
        let chi = linear_cosine_inverse_cdf(a, rng.random());
        let m = around(n, chi, rng);
        directions(n, m)
    });
    Ok(EventBatch { events: events.into_iter().collect::<Result<_>>()?, seed, alpha_product: a })
}

/// Separable reference model: each pair carries classically anti-aligned
/// spins along a random axis `u` and the two hyperons decay independently.
///
/// The spin correlation is `−u_i u_j` averaged over `u`, the most a mixture
/// of product states can do along all three axes at once.
pub fn sample_separable_events(alpha_l: f64, alpha_lbar: f64, count: usize, seed: u64) -> Result<EventBatch> {
    check_alpha(alpha_l)?;
    check_alpha(alpha_lbar)?;
    check_count(count)?;
    let events = streams::generate(count, seed, None, |rng, _| {
        let u = isotropic(rng);
        // Λ polarized along u: (1 + α_Λ u·n)/4π; Λ̄ along −u: (1 − α_Λ̄ u·m)/4π
        let chi_n = linear_cosine_inverse_cdf(-alpha_l, rng.random());
        let chi_m = linear_cosine_inverse_cdf(alpha_lbar, rng.random());
        let n = around(u, chi_n, rng);
        let m = around(u, chi_m, rng);
        directions(n, m)
    });
    Ok(EventBatch {
        events: events.into_iter().collect::<Result<_>>()?,
        seed,
        alpha_product: alpha_l * alpha_lbar,
    })
}

fn directions(n: [f64; 3], m: [f64; 3]) -> Result<(DecayDirection, DecayDirection)> {
    Ok((DecayDirection::from_vector(n)?, DecayDirection::from_vector(m)?))
}

const HEADER: [&str; 4] = ["theta_L", "phi_L", "theta_Lbar", "phi_Lbar"];

/// Writes `# seed=…,alpha_product=…,count=…` followed by a CSV table with
/// columns `theta_L,phi_L,theta_Lbar,phi_Lbar`.
pub fn write_events_csv<W: Write>(batch: &EventBatch, mut out: W) -> Result<()> {
    writeln!(
        out,
        "# seed={},alpha_product={},count={}",
        batch.seed,
        f17(batch.alpha_product),
        batch.len()
    )?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for (a, b) in &batch.events {
        w.write_record([f17(a.theta), f17(a.phi), f17(b.theta), f17(b.phi)])?;
    }
    w.flush()?;
    Ok(())
}

fn parse_meta(line: &str) -> Result<(u64, f64, usize)> {
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| Error::input("event file must start with a '# seed=…' line"))?;
    let (mut seed, mut alpha, mut count) = (None, None, None);
    for kv in body.split(',') {
        let (k, v) = kv
            .trim()
            .split_once('=')
            .ok_or_else(|| Error::input(format!("bad metadata entry {kv:?}")))?;
        let bad = |_| Error::input(format!("bad metadata value {v:?} for {k}"));
        match k {
            "seed" => seed = Some(v.parse::<u64>().map_err(|e| bad(e.to_string()))?),
            "alpha_product" => alpha = Some(v.parse::<f64>().map_err(|e| bad(e.to_string()))?),
            "count" => count = Some(v.parse::<usize>().map_err(|e| bad(e.to_string()))?),
            _ => {}
        }
    }
    match (seed, alpha, count) {
        (Some(s), Some(a), Some(c)) => Ok((s, a, c)),
        _ => Err(Error::input("event metadata needs seed, alpha_product and count")),
    }
}

pub fn read_events_csv<R: Read>(input: R) -> Result<EventBatch> {
    let mut reader = BufReader::new(input);
    let mut meta = String::new();
    reader.read_line(&mut meta)?;
    let (seed, alpha_product, count) = parse_meta(&meta)?;
    let mut r = csv::Reader::from_reader(reader);
    if r.headers()?.iter().ne(HEADER) {
        return Err(Error::input(format!("event columns must be {}", HEADER.join(","))));
    }
    let mut events = Vec::with_capacity(count);
    for rec in r.records() {
        let rec = rec?;
        let v: Vec<f64> = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::input(format!("bad number {s:?}: {e}"))))
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::input("event rows need 4 columns"));
        }
        events.push((DecayDirection::new(v[0], v[1])?, DecayDirection::new(v[2], v[3])?));
    }
    if events.len() != count {
        return Err(Error::input(format!("header says {count} events, file has {}", events.len())));
    }
    check_count(events.len())?;
    Ok(EventBatch { events, seed, alpha_product })
}
