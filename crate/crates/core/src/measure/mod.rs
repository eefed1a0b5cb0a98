//! Haar measure in Euler coordinates: closed-form volume, exact sampler and
//! parallel Monte Carlo integration.
//!
//! Samples are generated in fixed-size chunks. Chunk `k` draws from its own
//! ChaCha8 stream `(seed, k)`, and partial sums are combined in chunk order,
//! so estimates are bit-identical for any number of worker threads.

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::haar_density_closed_form;
use crate::domain::{ClassicalBox, CoveringBox, FundamentalDomain};
use crate::error::{Error, Result};
use crate::group::{compose, Coord, EulerAngles, GroupElement};

/// Samples per RNG substream.
pub const CHUNK: usize = 8192;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SU3_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HaarSample {
    pub angles: EulerAngles,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrationResult {
    pub estimate: Complex64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl IntegrationResult {
    /// Distance from `expected` in units of the standard error.
    pub fn z_score(&self, expected: Complex64) -> f64 {
        let d = (self.estimate - expected).norm();
        if self.std_error == 0.0 {
            if d == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            d / self.std_error
        }
    }
}

/// ∫dV over the classical range box, (√3/2)π⁵.
pub fn total_volume() -> f64 {
    ClassicalBox.volume()
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

fn chunk_bounds(n: usize) -> impl IndexedParallelIterator<Item = (usize, usize)> {
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(move |k| (k, CHUNK.min(n - k * CHUNK)))
}

/// Runs `op` on a pool sized by `SU3_THREADS` when set.
pub fn with_worker_pool<T: Send>(op: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    match cap {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        },
        None => op(),
    }
}

/// `n` Haar samples from the default (covering) domain.
pub fn sample_haar(seed: u64, n: usize) -> Vec<HaarSample> {
    sample_haar_in(&CoveringBox, seed, n)
}

pub fn sample_haar_in(domain: &dyn FundamentalDomain, seed: u64, n: usize) -> Vec<HaarSample> {
    with_worker_pool(|| {
        chunk_bounds(n)
            .flat_map_iter(|(k, len)| {
                let mut rng = chunk_rng(seed, k);
                (0..len)
                    .map(|_| HaarSample {
                        angles: domain.sample(&mut rng),
                        weight: 1.0,
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    })
}

#[derive(Clone)]
struct Sums {
    re: Vec<f64>,
    im: Vec<f64>,
    sq: Vec<f64>,
}

impl Sums {
    fn new(k: usize) -> Self {
        Self {
            re: vec![0.0; k],
            im: vec![0.0; k],
            sq: vec![0.0; k],
        }
    }

    fn add(&mut self, v: &[Complex64]) {
        for (i, z) in v.iter().enumerate() {
            self.re[i] += z.re;
            self.im[i] += z.im;
            self.sq[i] += z.norm_sqr();
        }
    }

    fn merge(mut self, other: &Sums) -> Self {
        for i in 0..self.re.len() {
            self.re[i] += other.re[i];
            self.im[i] += other.im[i];
            self.sq[i] += other.sq[i];
        }
        self
    }
}

/// Monte Carlo means of `k` functions at once, evaluated on points drawn by
/// `draw` from per-chunk streams.
fn mc_many<D, F>(n: usize, seed: u64, k: usize, draw: D, f: F) -> Vec<IntegrationResult>
where
    D: Fn(&mut ChaCha8Rng) -> EulerAngles + Sync,
    F: Fn(&EulerAngles, &mut [Complex64]) + Sync,
{
    assert!(n >= 1, "at least one sample is required");
    let partials: Vec<Sums> = with_worker_pool(|| {
        chunk_bounds(n)
            .map(|(c, len)| {
                let mut rng = chunk_rng(seed, c);
                let mut sums = Sums::new(k);
                let mut buf = vec![Complex64::new(0.0, 0.0); k];
                for _ in 0..len {
                    let x = draw(&mut rng);
                    f(&x, &mut buf);
                    sums.add(&buf);
                }
                sums
            })
            .collect()
    });
    let total = partials.iter().fold(Sums::new(k), |acc, s| acc.merge(s));
    let nf = n as f64;
    (0..k)
        .map(|i| {
            let mean = Complex64::new(total.re[i], total.im[i]) / nf;
            let var = if n > 1 {
                ((total.sq[i] / nf - mean.norm_sqr()) * nf / (nf - 1.0)).max(0.0)
            } else {
                0.0
            };
            IntegrationResult {
                estimate: mean,
                std_error: (var / nf).sqrt(),
                n_samples: n,
                seed,
            }
        })
        .collect()
}

/// Normalized Haar integral of `f` over the default domain.
pub fn integrate<F>(f: F, n: usize, seed: u64) -> IntegrationResult
where
    F: Fn(&GroupElement) -> Complex64 + Sync,
{
    integrate_in(&CoveringBox, f, n, seed)
}

pub fn integrate_in<F>(
    domain: &dyn FundamentalDomain,
    f: F,
    n: usize,
    seed: u64,
) -> IntegrationResult
where
    F: Fn(&GroupElement) -> Complex64 + Sync,
{
    mc_many(
        n,
        seed,
        1,
        |rng| domain.sample(rng),
        |x, out| out[0] = f(&compose(x)),
    )[0]
}

/// Unnormalized volume of the classical box: uniform box samples weighted
/// by the density.
pub fn volume_mc(n: usize, seed: u64) -> IntegrationResult {
    let r = ClassicalBox.ranges();
    let box_volume: f64 = r.iter().map(|(lo, hi)| hi - lo).product();
    mc_many(
        n,
        seed,
        1,
        |rng| {
            EulerAngles::from_array(std::array::from_fn(|k| {
                r[k].0 + (r[k].1 - r[k].0) * rng.random::<f64>()
            }))
        },
        |x, out| out[0] = Complex64::new(box_volume * haar_density_closed_form(x), 0.0),
    )[0]
}

/// One entry ∫D_ij conj(D_kl) of the orthogonality suite (indices from 0).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrthogonalityEntry {
    pub index: [usize; 4],
    pub expected: f64,
    pub result: IntegrationResult,
    pub residual: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub entries: Vec<OrthogonalityEntry>,
    pub sigma_bound: f64,
}

impl OrthogonalityReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn max_z(&self) -> f64 {
        self.entries.iter().map(|e| e.z).fold(0.0, f64::max)
    }

    pub fn all_within_bound(&self) -> bool {
        self.max_z() <= self.sigma_bound
    }

    /// Entry for 0-based `(i, j, k, l)`.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &OrthogonalityEntry {
        &self.entries[((i * 3 + j) * 3 + k) * 3 + l]
    }
}

/// Default tolerance in standard errors for the orthogonality suite.
pub const ORTHOGONALITY_SIGMA: f64 = 4.0;

/// ∫ D_ij conj(D_kl) dμ for all 81 index combinations, expected δ_ik δ_jl / 3.
pub fn orthogonality_suite(n: usize, seed: u64) -> OrthogonalityReport {
    orthogonality_suite_in(&CoveringBox, n, seed)
}

pub fn orthogonality_suite_in(
    domain: &dyn FundamentalDomain,
    n: usize,
    seed: u64,
) -> OrthogonalityReport {
    let results = mc_many(
        n,
        seed,
        81,
        |rng| domain.sample(rng),
        |x, out| {
            let g = compose(x);
            let d = g.matrix();
            for (idx, slot) in out.iter_mut().enumerate() {
                let (i, j, k, l) = (idx / 27, (idx / 9) % 3, (idx / 3) % 3, idx % 3);
                *slot = d[(i, j)] * d[(k, l)].conj();
            }
        },
    );
    let entries = results
        .into_iter()
        .enumerate()
        .map(|(idx, result)| {
            let index = [idx / 27, (idx / 9) % 3, (idx / 3) % 3, idx % 3];
            let expected = if index[0] == index[2] && index[1] == index[3] {
                1.0 / 3.0
            } else {
                0.0
            };
            let target = Complex64::new(expected, 0.0);
            OrthogonalityEntry {
                index,
                expected,
                residual: (result.estimate - target).norm(),
                z: result.z_score(target),
                result,
            }
        })
        .collect();
    OrthogonalityReport {
        entries,
        sigma_bound: ORTHOGONALITY_SIGMA,
    }
}

/// CSV with header `alpha,...,phi`, 17 significant digits per value.
pub fn write_samples_csv<W: Write>(samples: &[HaarSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(Coord::ALL.iter().map(|c| c.name()))?;
    for s in samples {
        w.write_record(s.angles.to_array().iter().map(|v| format!("{v:.16e}")))?;
    }
    w.flush().map_err(Error::Io)?;
    Ok(())
}
