use polar_fastssc::construct_code;
use polar_fastssc::quant::QuantSpec;
use polar_fastssc::sim::{
    awgn_llr_at, run_ber_sweep, ChannelConfig, DecoderKind, StopRule, SweepConfig, TrialStats,
};

#[test]
fn llr_mean_matches_gaussian_statistics() {
    let cfg = ChannelConfig::new(1.0, 0.5, 42).unwrap();
    let s2 = cfg.noise_variance();
    let zeros = vec![0u8; 1000];
    let samples: Vec<f64> = (0..100)
        .flat_map(|f| awgn_llr_at(&zeros, &cfg, 0, f))
        .collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    // LLR = 2(1 + n)/σ², so its standard deviation is 2/σ.
    let stderr = 2.0 / s2.sqrt() / n.sqrt();
    assert!(
        (mean - 2.0 / s2).abs() < 3.0 * stderr,
        "mean {mean}, expected {}",
        2.0 / s2
    );
}

fn sweep(decoder: DecoderKind, quant: Option<QuantSpec>, stop: StopRule) -> Vec<TrialStats> {
    let code = construct_code(128, 64, 2.0).unwrap();
    let cfg = SweepConfig {
        decoder,
        quant,
        stop,
        seed: 77,
        ..Default::default()
    };
    run_ber_sweep(&code, &[1.0, 2.0, 3.0], &cfg)
        .unwrap()
        .into_iter()
        .map(|p| p.stats)
        .collect()
}

#[test]
fn paired_seeds_give_identical_stats() {
    let stop = StopRule {
        min_frame_errors: 50,
        max_frames: 20_000,
    };
    assert_eq!(
        sweep(DecoderKind::Sc, None, stop),
        sweep(DecoderKind::FastSsc, None, stop)
    );
    let q = Some(QuantSpec::HARDWARE);
    let fast = sweep(DecoderKind::FastSsc, q, stop);
    assert_eq!(sweep(DecoderKind::Sc, q, stop), fast);
    assert_eq!(sweep(DecoderKind::Hw, q, stop), fast);
}

#[test]
fn ber_falls_with_snr() {
    let stats = sweep(
        DecoderKind::FastSsc,
        None,
        StopRule {
            min_frame_errors: 100,
            max_frames: 1_000_000,
        },
    );
    for w in stats.windows(2) {
        assert!(w[1].ber <= w[0].ber, "{stats:?}");
    }
    for s in &stats {
        assert!(s.fer >= s.ber);
        assert!(s.frame_errors >= 100);
    }
}

#[test]
fn merged_partial_stats_equal_totals() {
    let code = construct_code(64, 32, 2.0).unwrap();
    let run = |max_frames, seed| {
        let cfg = SweepConfig {
            stop: StopRule {
                min_frame_errors: u64::MAX,
                max_frames,
            },
            seed,
            ..Default::default()
        };
        run_ber_sweep(&code, &[1.5], &cfg).unwrap().remove(0).stats
    };
    let mut a = run(300, 1);
    let b = run(500, 2);
    a.merge(&b);
    assert_eq!(a.frames, 800);
    assert_eq!(a.bit_errors, run(300, 1).bit_errors + b.bit_errors);
    assert_eq!(a.ber, a.bit_errors as f64 / (800.0 * 32.0));
}
