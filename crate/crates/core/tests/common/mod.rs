#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use polar_fastssc::sim::{random_frame, ChannelConfig};
use polar_fastssc::PolarCode;

/// A code of length `n` with a uniformly random dimension and frozen set.
pub fn random_code<R: Rng>(rng: &mut R, n: usize) -> PolarCode {
    let k = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut frozen = vec![false; n];
    for &i in &idx[..n - k] {
        frozen[i] = true;
    }
    PolarCode::from_frozen(frozen).unwrap()
}

/// Channel LLRs of `count` seeded frames at `ebn0_db`.
pub fn noisy_frames(
    code: &PolarCode,
    ebn0_db: f64,
    seed: u64,
    count: u64,
) -> impl Iterator<Item = Vec<f64>> + '_ {
    let ch = ChannelConfig::new(ebn0_db, code.rate(), seed).unwrap();
    (0..count).map(move |f| random_frame(code, &ch, 0, f).unwrap().1)
}
