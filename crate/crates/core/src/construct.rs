//! Frozen-set construction for BPSK over AWGN.
//!
//! Two standard estimators of synthetic-channel reliability are provided:
//! Gaussian-approximation density evolution (the default) and Bhattacharyya
//! parameter evolution. The design SNR is an Eb/N0 in dB; it is converted to
//! Es/N0 with the code rate `K/N`, matching the simulation channel.
//!
//! Channel index bits are consumed MSB first: the most significant bit of `i`
//! selects the worse (`0`) or better (`1`) child at the first polarization
//! step, consistent with the natural-order encoder.

use serde::{Deserialize, Serialize};

use crate::code::{log2_len, PolarCode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionMethod {
    GaussianApproximation,
    Bhattacharyya,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub method: ConstructionMethod,
    pub design_snr_db: f64,
}

impl Construction {
    pub fn ga(design_snr_db: f64) -> Self {
        Construction {
            method: ConstructionMethod::GaussianApproximation,
            design_snr_db,
        }
    }

    pub fn bhattacharyya(design_snr_db: f64) -> Self {
        Construction {
            method: ConstructionMethod::Bhattacharyya,
            design_snr_db,
        }
    }
}

/// GA construction at the given design Eb/N0.
pub fn construct_code(len: usize, k: usize, design_snr_db: f64) -> Result<PolarCode> {
    construct_code_with(len, k, Construction::ga(design_snr_db))
}

pub fn construct_code_with(len: usize, k: usize, construction: Construction) -> Result<PolarCode> {
    log2_len(len)?;
    if k == 0 || k > len {
        return Err(Error::DimensionOutOfRange { n: len, k });
    }
    if !construction.design_snr_db.is_finite() {
        return Err(Error::InvalidArgument("design SNR must be finite".into()));
    }
    let metric = reliabilities(len, k, &construction);
    let mut order: Vec<usize> = (0..len).collect();
    // Least reliable first; equal metrics freeze the lower index first.
    order.sort_by(|&a, &b| metric[a].total_cmp(&metric[b]).then(a.cmp(&b)));
    let mut frozen = vec![false; len];
    for &i in &order[..len - k] {
        frozen[i] = true;
    }
    Ok(PolarCode::from_frozen(frozen)?.with_construction(construction))
}

/// Per-index reliability metric, larger is more reliable. For the GA method
/// this is the mean LLR of each synthetic channel; for the Bhattacharyya
/// method it is `-ln Z`.
pub fn reliabilities(len: usize, k: usize, construction: &Construction) -> Vec<f64> {
    let es_n0 = k as f64 / len as f64 * 10f64.powf(construction.design_snr_db / 10.0);
    match construction.method {
        ConstructionMethod::GaussianApproximation => {
            polarize(len, 4.0 * es_n0, ga_worse, |m| 2.0 * m)
        }
        ConstructionMethod::Bhattacharyya => {
            // Evolve ln Z, report -ln Z.
            let lz = polarize(len, -es_n0, bhatta_worse, |lz| 2.0 * lz);
            lz.into_iter().map(|v| -v).collect()
        }
    }
}

fn polarize(
    len: usize,
    init: f64,
    worse: impl Fn(f64) -> f64,
    better: impl Fn(f64) -> f64,
) -> Vec<f64> {
    let mut cur = vec![init];
    while cur.len() < len {
        let mut next = Vec::with_capacity(2 * cur.len());
        for &v in &cur {
            next.push(worse(v));
            next.push(better(v));
        }
        cur = next;
    }
    cur
}

fn bhatta_worse(lz: f64) -> f64 {
    // ln(2Z - Z^2) = ln Z + ln(2 - Z)
    lz + (2.0 - lz.exp()).ln()
}

/// `ln φ(x)` for the standard two-piece approximation of
/// `φ(x) = 1 - E[tanh(u/2)]`, `u ~ N(x, 2x)`.
fn ln_phi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x < 10.0 {
        -0.4527 * x.powf(0.86) + 0.0218
    } else {
        0.5 * (std::f64::consts::PI / x).ln() - x / 4.0 + (1.0 - 10.0 / (7.0 * x)).ln()
    }
}

fn ln_phi_inv(t: f64) -> f64 {
    if t >= ln_phi(f64::MIN_POSITIVE) {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = (-8.0 * t).max(20.0) + 20.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_phi(mid) > t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Mean of the check-node child: `φ⁻¹(1 - (1 - φ(m))²)`.
fn ga_worse(mean: f64) -> f64 {
    let lp = ln_phi(mean);
    let p = lp.exp();
    ln_phi_inv(lp + (2.0 - p).ln())
}
