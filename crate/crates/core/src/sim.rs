//! BPSK-AWGN Monte-Carlo engine and throughput arithmetic.
//!
//! Randomness comes from ChaCha8 used as a counter-based generator. The
//! 64-bit seed is expanded into the key (`ChaCha8Rng::seed_from_u64`), the
//! index of the Eb/N0 point selects the stream, and frame `f` starts at word
//! position `f << 32`. Every frame is thus a pure function of
//! `(seed, point, frame)`, independent of thread count and batch size, and
//! every decoder sees the same frames under the same seed.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{encode, PolarCode};
use crate::error::{Error, Result};
use crate::fast_ssc::{classify_tree, FastSscDecoder};
use crate::hw::PuTree;
use crate::llr::FloatDomain;
use crate::quant::{quantize_frame, QuantDomain, QuantSpec};
use crate::sc::sc_decode;

pub const CSV_HEADER: [&str; 6] = [
    "ebn0_db",
    "frames",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    /// K/N, used for the Eb/N0 to noise-variance conversion.
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64) -> Result<Self> {
        if !ebn0_db.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Eb/N0 must be finite, got {ebn0_db}"
            )));
        }
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "rate must be in (0, 1], got {rate}"
            )));
        }
        Ok(ChannelConfig {
            ebn0_db,
            rate,
            seed,
        })
    }

    /// `σ² = 1 / (2 R 10^(Eb/N0 / 10))`.
    pub fn noise_variance(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

fn frame_rng(seed: u64, point: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(point);
    rng.set_word_pos((frame as u128) << 32);
    rng
}

fn add_noise(codeword: &[u8], sigma2: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let sigma = sigma2.sqrt();
    codeword
        .iter()
        .map(|&b| {
            let s = if b == 0 { 1.0 } else { -1.0 };
            let n: f64 = rng.sample(StandardNormal);
            2.0 * (s + sigma * n) / sigma2
        })
        .collect()
}

/// Transmits `codeword` over BPSK-AWGN (0 → +1, 1 → −1) and returns the
/// channel LLRs `2y/σ²`. Uses stream 0, frame 0 of `cfg.seed`.
pub fn awgn_llr(codeword: &[u8], cfg: &ChannelConfig) -> Vec<f64> {
    awgn_llr_at(codeword, cfg, 0, 0)
}

/// As [`awgn_llr`], for an explicit `(point, frame)` counter.
pub fn awgn_llr_at(codeword: &[u8], cfg: &ChannelConfig, point: u64, frame: u64) -> Vec<f64> {
    add_noise(
        codeword,
        cfg.noise_variance(),
        &mut frame_rng(cfg.seed, point, frame),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            min_frame_errors: 200,
            max_frames: 10_000_000,
        }
    }
}

impl StopRule {
    fn done(&self, s: &TrialStats) -> bool {
        s.frame_errors >= self.min_frame_errors || s.frames >= self.max_frames
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    /// Information bits per frame.
    pub k: usize,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
}

impl TrialStats {
    pub fn new(k: usize) -> Self {
        TrialStats {
            k,
            frames: 0,
            bit_errors: 0,
            frame_errors: 0,
            ber: 0.0,
            fer: 0.0,
        }
    }

    pub fn record(&mut self, bit_errors: u64) {
        self.frames += 1;
        self.bit_errors += bit_errors;
        self.frame_errors += (bit_errors > 0) as u64;
        self.refresh();
    }

    pub fn merge(&mut self, other: &TrialStats) {
        assert_eq!(self.k, other.k, "merging stats of different codes");
        self.frames += other.frames;
        self.bit_errors += other.bit_errors;
        self.frame_errors += other.frame_errors;
        self.refresh();
    }

    fn refresh(&mut self) {
        if self.frames == 0 {
            self.ber = 0.0;
            self.fer = 0.0;
        } else {
            self.ber = self.bit_errors as f64 / (self.frames as f64 * self.k as f64);
            self.fer = self.frame_errors as f64 / self.frames as f64;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Sc,
    FastSsc,
    /// The cycle-level PU-tree model; needs a quantization spec.
    Hw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub decoder: DecoderKind,
    pub quant: Option<QuantSpec>,
    pub stop: StopRule,
    pub seed: u64,
    /// Worker cap; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Frames decoded per parallel batch.
    pub batch: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            decoder: DecoderKind::FastSsc,
            quant: None,
            stop: StopRule::default(),
            seed: 0,
            threads: None,
            batch: 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub ebn0_db: f64,
    pub stats: TrialStats,
}

enum Worker {
    Sc(Option<QuantDomain>),
    Float(FastSscDecoder<FloatDomain>),
    Quant(FastSscDecoder<QuantDomain>),
    Hw(Box<PuTree>, crate::fast_ssc::DecodeNode),
}

impl Worker {
    fn new(code: &PolarCode, cfg: &SweepConfig) -> Result<Self> {
        Ok(match (cfg.decoder, cfg.quant) {
            (DecoderKind::Sc, q) => Worker::Sc(q.map(QuantDomain::new)),
            (DecoderKind::FastSsc, None) => Worker::Float(FastSscDecoder::new(FloatDomain, code)),
            (DecoderKind::FastSsc, Some(q)) => {
                Worker::Quant(FastSscDecoder::new(QuantDomain::new(q), code))
            }
            (DecoderKind::Hw, Some(q)) => {
                Worker::Hw(Box::new(PuTree::new(code.len(), q)?), classify_tree(code))
            }
            (DecoderKind::Hw, None) => {
                return Err(Error::InvalidArgument(
                    "the hardware model needs a quantization spec".into(),
                ))
            }
        })
    }

    fn decode(
        &mut self,
        code: &PolarCode,
        quant: Option<QuantSpec>,
        llr: &[f64],
    ) -> Result<Vec<u8>> {
        let q = |spec: Option<QuantSpec>| quantize_frame(llr, &spec.expect("quantized worker"));
        let d = match self {
            Worker::Sc(None) => sc_decode(&FloatDomain, code, llr)?.u_hat,
            Worker::Sc(Some(dom)) => sc_decode(dom, code, &q(quant))?.u_hat,
            Worker::Float(dec) => dec.decode(llr)?.u_hat,
            Worker::Quant(dec) => dec.decode(&q(quant))?.u_hat,
            Worker::Hw(tree, nodes) => tree.decode_tree(nodes, &q(quant))?.u_hat,
        };
        Ok(d)
    }
}

/// The random message and channel LLRs of frame `frame` at point `point`.
pub fn random_frame(
    code: &PolarCode,
    ch: &ChannelConfig,
    point: u64,
    frame: u64,
) -> Result<(Vec<u8>, Vec<f64>)> {
    let mut rng = frame_rng(ch.seed, point, frame);
    let message: Vec<u8> = (0..code.dimension())
        .map(|_| rng.random::<bool>() as u8)
        .collect();
    let x = encode(code, &message)?;
    Ok((message, add_noise(&x, ch.noise_variance(), &mut rng)))
}

/// Transmits one random message and returns its number of bit errors.
fn run_frame(
    worker: &mut Worker,
    code: &PolarCode,
    cfg: &SweepConfig,
    ch: &ChannelConfig,
    point: u64,
    frame: u64,
) -> Result<u64> {
    let (message, llr) = random_frame(code, ch, point, frame)?;
    let u_hat = worker.decode(code, cfg.quant, &llr)?;
    Ok(code
        .gather(&u_hat)
        .iter()
        .zip(&message)
        .filter(|(a, b)| a != b)
        .count() as u64)
}

fn run_point(
    code: &PolarCode,
    cfg: &SweepConfig,
    ch: &ChannelConfig,
    point: u64,
) -> Result<TrialStats> {
    let mut stats = TrialStats::new(code.dimension());
    let batch = cfg.batch.max(1) as u64;
    let mut next = 0u64;
    while !cfg.stop.done(&stats) {
        let end = (next + batch).min(cfg.stop.max_frames);
        let errors: Vec<u64> = (next..end)
            .into_par_iter()
            .map_init(
                || Worker::new(code, cfg),
                |w, f| match w {
                    Ok(w) => run_frame(w, code, cfg, ch, point, f),
                    Err(e) => Err(Error::InvalidArgument(e.to_string())),
                },
            )
            .collect::<Result<_>>()?;
        // Apply the stop rule in frame order so the totals equal a serial run.
        for e in errors {
            stats.record(e);
            if cfg.stop.done(&stats) {
                break;
            }
        }
        next = end;
    }
    Ok(stats)
}

/// Runs the Monte-Carlo sweep, one [`SweepPoint`] per Eb/N0 value. Results
/// do not depend on thread count or batch size.
pub fn run_ber_sweep(
    code: &PolarCode,
    ebn0_db: &[f64],
    cfg: &SweepConfig,
) -> Result<Vec<SweepPoint>> {
    Worker::new(code, cfg)?;
    let run = || {
        ebn0_db
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let ch = ChannelConfig::new(e, code.rate(), cfg.seed)?;
                Ok(SweepPoint {
                    ebn0_db: e,
                    stats: run_point(code, cfg, &ch, i as u64)?,
                })
            })
            .collect()
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Writes sweep results as CSV with the header [`CSV_HEADER`].
pub fn write_sweep_csv<W: Write>(points: &[SweepPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in points {
        let s = &p.stats;
        w.write_record([
            p.ebn0_db.to_string(),
            s.frames.to_string(),
            s.bit_errors.to_string(),
            s.frame_errors.to_string(),
            format!("{:e}", s.ber),
            format!("{:e}", s.fer),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Information throughput `K · f / cycles` in Gbps for a clock in GHz.
pub fn throughput_gbps(k: usize, cycles: u64, freq_ghz: f64) -> f64 {
    assert!(cycles > 0, "cycle count must be positive");
    k as f64 * freq_ghz / cycles as f64
}

/// Eb/N0 at which the FER curve crosses `target_fer`, by linear
/// interpolation of `log10(FER)` between the first bracketing pair of points.
/// Points must be sorted by Eb/N0; points without errors are skipped.
pub fn required_ebn0(points: &[SweepPoint], target_fer: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.stats.fer > 0.0)
        .map(|p| (p.ebn0_db, p.stats.fer.log10()))
        .collect();
    let t = target_fer.log10();
    pts.windows(2).find_map(|w| {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if y0 >= t && y1 <= t && y0 != y1 {
            Some(x0 + (t - y0) * (x1 - x0) / (y1 - y0))
        } else if y0 == t {
            Some(x0)
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_code;

    #[test]
    fn throughput_examples() {
        assert!((throughput_gbps(870, 156, 1.04) - 5.80).abs() < 0.005);
        assert!((throughput_gbps(512, 266, 1.04) - 2.002).abs() < 0.0005);
        assert_eq!(throughput_gbps(512, 266, 0.0), 0.0);
    }

    #[test]
    fn noiseless_limit_recovers_codeword() {
        let x: Vec<u8> = (0..64).map(|i| (i * 7 % 3 == 0) as u8).collect();
        let cfg = ChannelConfig::new(80.0, 0.5, 3).unwrap();
        let llr = awgn_llr(&x, &cfg);
        let hd: Vec<u8> = llr.iter().map(|&l| (l < 0.0) as u8).collect();
        assert_eq!(hd, x);
    }

    #[test]
    fn deterministic_under_seed() {
        let x = vec![0u8; 32];
        let cfg = ChannelConfig::new(1.0, 0.5, 9).unwrap();
        assert_eq!(awgn_llr(&x, &cfg), awgn_llr(&x, &cfg));
        let other = ChannelConfig { seed: 10, ..cfg };
        assert_ne!(awgn_llr(&x, &cfg), awgn_llr(&x, &other));
    }

    #[test]
    fn rejects_bad_channel() {
        assert!(ChannelConfig::new(f64::NAN, 0.5, 0).is_err());
        assert!(ChannelConfig::new(1.0, 0.0, 0).is_err());
        assert!(ChannelConfig::new(1.0, 1.5, 0).is_err());
    }

    #[test]
    fn stats_merge_and_ratios() {
        let mut a = TrialStats::new(4);
        a.record(0);
        a.record(2);
        let mut b = TrialStats::new(4);
        b.record(1);
        a.merge(&b);
        assert_eq!((a.frames, a.bit_errors, a.frame_errors), (3, 3, 2));
        assert_eq!(a.ber, 0.25);
        assert!((a.fer - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn batch_size_does_not_change_results() {
        let code = construct_code(64, 32, 2.0).unwrap();
        let stop = StopRule {
            min_frame_errors: 30,
            max_frames: 5_000,
        };
        let base = SweepConfig {
            stop,
            seed: 5,
            batch: 1,
            ..Default::default()
        };
        let a = run_ber_sweep(&code, &[1.0, 2.0], &base).unwrap();
        let b = run_ber_sweep(
            &code,
            &[1.0, 2.0],
            &SweepConfig {
                batch: 97,
                threads: Some(2),
                ..base.clone()
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].stats.frame_errors, 30);
    }

    #[test]
    fn hw_requires_quant() {
        let code = construct_code(8, 4, 2.0).unwrap();
        let cfg = SweepConfig {
            decoder: DecoderKind::Hw,
            ..Default::default()
        };
        assert!(run_ber_sweep(&code, &[1.0], &cfg).is_err());
    }

    #[test]
    fn interpolates_crossing() {
        let pt = |e: f64, fer: f64| SweepPoint {
            ebn0_db: e,
            stats: TrialStats {
                fer,
                ..TrialStats::new(1)
            },
        };
        let pts = [pt(1.0, 1e-1), pt(2.0, 1e-3)];
        assert!((required_ebn0(&pts, 1e-2).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(required_ebn0(&pts, 1e-5), None);
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_sweep_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "ebn0_db,frames,bit_errors,frame_errors,ber,fer\n"
        );
    }
}
