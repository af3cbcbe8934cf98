import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfbeam.channel import gen_selective_taps
from lfbeam.simulator import (
    BerCurve,
    BerPoint,
    ConfigError,
    OddBitCountError,
    SimConfig,
    TRIALS_PER_BATCH,
    _run_block,
    _trial_rng,
    awgn,
    demodulate,
    modulate,
    run_sweep,
    run_trial,
    snr_at_ber,
    trial_effective_gains,
)

FAST = dict(snr_db_points=(0.0, 6.0), target_errors=60, max_bits=100_000)


# ---------------------------------------------------------------- modulation


def test_bpsk_mapping():
    out = modulate(np.array([0, 1, 1, 0]), "bpsk")
    assert np.array_equal(out, [1.0, -1.0, -1.0, 1.0])


def test_qpsk_mapping():
    out = modulate(np.array([0, 0, 1, 1]), "qpsk")
    s = 1 / np.sqrt(2)
    assert np.allclose(out, [s + 1j * s, -s - 1j * s], atol=1e-15)


def test_qpsk_gray_axes_are_independent():
    # flipping the first bit flips only the real sign
    a = modulate(np.array([0, 1]), "qpsk")[0]
    b = modulate(np.array([1, 1]), "qpsk")[0]
    assert a.real == -b.real and a.imag == b.imag


def test_unit_symbol_energy():
    bits = np.arange(8) % 2
    for scheme in ("bpsk", "qpsk"):
        syms = modulate(bits, scheme)
        assert np.allclose(np.abs(syms) ** 2, 1.0, atol=1e-15)


def test_round_trip_random_bits(rng):
    bits = rng.integers(0, 2, 10_000).astype(np.uint8)
    for scheme in ("bpsk", "qpsk"):
        back = demodulate(modulate(bits, scheme), scheme)
        assert np.array_equal(back, bits)


def test_qpsk_odd_bits_raise():
    with pytest.raises(OddBitCountError):
        modulate(np.array([1, 0, 1]), "qpsk")


def test_unknown_scheme_raises():
    with pytest.raises(ValueError):
        modulate(np.array([0, 1]), "8psk")
    with pytest.raises(ValueError):
        demodulate(np.array([1.0 + 0j]), "8psk")


# ---------------------------------------------------------------------- awgn


def test_awgn_zero_variance_is_identity(rng):
    x = modulate(rng.integers(0, 2, 64), "bpsk")
    y = awgn(x, 0.0, rng)
    assert np.array_equal(x, y)


def test_awgn_statistics():
    rng = np.random.default_rng(404)
    x = np.zeros(1_000_000, dtype=complex)
    y = awgn(x, 2.5, rng)
    var = (np.abs(y) ** 2).mean()
    assert abs(var - 2.5) <= 0.02 * 2.5
    # circular symmetry: real/imag split evenly and uncorrelated
    assert abs(y.real.var() - 1.25) <= 0.05
    assert abs((y.real * y.imag).mean()) <= 0.01


def test_awgn_rejects_negative_variance(rng):
    with pytest.raises(ValueError):
        awgn(np.zeros(4, dtype=complex), -1.0, rng)


# --------------------------------------------------------------- run_trial


def test_trial_is_deterministic():
    cfg = SimConfig(**FAST)
    a = run_trial(cfg, 6.0, 17)
    b = run_trial(cfg, 6.0, 17)
    assert a == b


def test_trial_counts_are_consistent():
    cfg = SimConfig(**FAST)
    r = run_trial(cfg, 0.0, 2)
    assert r.bits_sent == cfg.n_subcarriers * cfg.bits_per_symbol
    assert 0 <= r.bit_errors <= r.bits_sent
    assert r.null_skips == 0


def test_blocks_partition_invariant():
    """Any split of a trial range gives identical totals."""
    cfg = SimConfig(**FAST)
    whole = _run_block(cfg, 6.0, 0, 32, None)
    pieces = [
        _run_block(cfg, 6.0, 0, 5, None),
        _run_block(cfg, 6.0, 5, 11, None),
        _run_block(cfg, 6.0, 16, 16, None),
    ]
    summed = tuple(sum(p[i] for p in pieces) for i in range(3))
    assert whole == summed


def test_block_of_one_equals_run_trial():
    cfg = SimConfig(feedback_bits=2, **FAST)
    for idx in (0, 9):
        assert tuple(run_trial(cfg, 6.0, idx)) == _run_block(
            cfg, 6.0, idx, 1, None
        )


def test_noiseless_trials_have_zero_errors():
    for kw in (dict(), dict(feedback_bits=3), dict(modulation="qpsk", n_r=2)):
        cfg = SimConfig(**FAST, **kw)
        for idx in range(6):
            assert run_trial(cfg, 300.0, idx).bit_errors == 0


def test_draw_order_is_documented_order():
    """Replaying (bits, taps, ...) from the trial stream reproduces the
    channel the simulator used."""
    cfg = SimConfig(**FAST)
    d = trial_effective_gains(cfg, 6.0, 21)
    rng = _trial_rng(cfg.master_seed, 21)
    rng.integers(0, 2, size=cfg.n_subcarriers, dtype=np.uint8)  # data bits
    taps = gen_selective_taps(cfg.n_r, cfg.n_t, cfg.n_taps, rng)
    h = np.fft.fft(taps.taps, n=cfg.n_subcarriers, axis=0)
    assert np.array_equal(h, d["channel"])


def test_post_combining_snr_identity():
    """Perfect-CSI MISO: rho * |a^H H b|^2 == rho * ||h_k||^2 exactly."""
    cfg = SimConfig(**FAST)
    d = trial_effective_gains(cfg, 10.0, 4)
    norms = (np.abs(d["channel"][:, 0, :]) ** 2).sum(axis=1)
    assert np.allclose(np.abs(d["gains"]) ** 2, norms, rtol=1e-10)
    assert d["ok"].all()


def test_quantized_gains_never_beat_perfect():
    perfect = SimConfig(**FAST)
    quant = SimConfig(feedback_bits=1, **FAST)
    for idx in range(10):
        gp = np.abs(trial_effective_gains(perfect, 6.0, idx)["gains"]) ** 2
        gq = np.abs(trial_effective_gains(quant, 6.0, idx)["gains"]) ** 2
        assert (gq <= gp * (1.0 + 1e-9)).all()


def test_more_feedback_bits_never_hurt_gains():
    """Nested codebooks: per subcarrier, B=6 gain >= B=2 gain on the
    same trial."""
    lo = SimConfig(feedback_bits=2, **FAST)
    hi = SimConfig(feedback_bits=6, **FAST)
    for idx in range(10):
        gl = np.abs(trial_effective_gains(lo, 6.0, idx)["gains"]) ** 2
        gh = np.abs(trial_effective_gains(hi, 6.0, idx)["gains"]) ** 2
        assert (gh >= gl * (1.0 - 1e-9)).all()


def test_estimated_mode_tracks_truth_at_high_pilot_power():
    cfg = SimConfig(csi_mode="estimated", pilot_snr_db=60.0, **FAST)
    d = trial_effective_gains(cfg, 6.0, 3)
    err = np.abs(d["rx_channel"] - d["channel"]).max()
    assert 0.0 < err < 0.01


def test_estimated_error_shrinks_with_pilot_power():
    noisy = SimConfig(csi_mode="estimated", pilot_snr_db=0.0, **FAST)
    clean = SimConfig(csi_mode="estimated", pilot_snr_db=20.0, **FAST)
    e0 = e1 = 0.0
    for idx in range(8):
        dn = trial_effective_gains(noisy, 6.0, idx)
        dc = trial_effective_gains(clean, 6.0, idx)
        e0 += (np.abs(dn["rx_channel"] - dn["channel"]) ** 2).mean()
        e1 += (np.abs(dc["rx_channel"] - dc["channel"]) ** 2).mean()
    assert e0 > 10.0 * e1  # 20 dB more pilot power: ~100x smaller MSE


def test_fixed_codebook_mode_shares_one_codebook():
    cfg = SimConfig(feedback_bits=3, fresh_codebook=False, **FAST)
    a = run_trial(cfg, 6.0, 0)
    b = run_trial(cfg, 6.0, 0)
    assert a == b
    fresh = SimConfig(feedback_bits=3, fresh_codebook=True, **FAST)
    diffs = sum(
        run_trial(cfg, 6.0, i) != run_trial(fresh, 6.0, i) for i in range(40)
    )
    assert diffs > 0  # the two modes really simulate different links


# ---------------------------------------------------------------- run_sweep


def test_sweep_csv_shape_and_values():
    cfg = SimConfig(**FAST)
    curve = run_sweep(cfg)
    text = curve.to_csv_text()
    lines = text.strip().split("\n")
    assert lines[0] == "snr_db,bits,errors,ber,ci95"
    assert len(lines) == 1 + len(cfg.snr_db_points)
    for line, point in zip(lines[1:], curve.points):
        snr, bits, errors, ber, ci = line.split(",")
        assert float(snr) == point.snr_db
        assert int(bits) == point.bits_sent
        assert int(errors) == point.bit_errors
        assert abs(float(ber) - point.ber) <= 1e-12
        assert abs(float(ci) - point.half_width_95) <= 1e-12
        assert point.ber == point.bit_errors / point.bits_sent


def test_sweep_worker_count_does_not_change_results():
    cfg = SimConfig(**FAST)
    solo = run_sweep(cfg, n_workers=1)
    duo = run_sweep(cfg, n_workers=2)
    assert solo.to_csv_text() == duo.to_csv_text()


def test_sweep_ber_non_increasing():
    cfg = SimConfig(snr_db_points=(0.0, 4.0, 8.0), target_errors=150,
                    max_bits=300_000)
    curve = run_sweep(cfg)
    bers = [p.ber for p in curve.points]
    assert bers == sorted(bers, reverse=True)


def test_sweep_stops_on_error_target():
    cfg = SimConfig(**FAST)
    point = run_sweep(cfg).points[0]
    assert point.converged
    assert point.bit_errors >= cfg.target_errors
    # one batch granularity: no more than one extra batch of bits
    assert point.bits_sent <= cfg.max_bits + TRIALS_PER_BATCH * 64


def test_sweep_flags_unconverged_points():
    cfg = SimConfig(snr_db_points=(20.0,), target_errors=10_000,
                    max_bits=20_000)
    point = run_sweep(cfg).points[0]
    assert not point.converged
    assert point.bits_sent >= 20_000


def test_sweep_labels():
    assert run_sweep(SimConfig(**FAST)).label == "perfect"
    assert run_sweep(SimConfig(feedback_bits=2, **FAST)).label == "rvq-b2"


def test_channels_shared_across_snr_points():
    """Common random numbers: the same trial uses the same channel at
    every SNR point."""
    cfg = SimConfig(**FAST)
    a = trial_effective_gains(cfg, 0.0, 11)
    b = trial_effective_gains(cfg, 14.0, 11)
    assert np.array_equal(a["channel"], b["channel"])
    assert np.array_equal(a["beams"], b["beams"])


# ------------------------------------------------------------- snr_at_ber


def _curve_from(bers, snrs):
    pts = tuple(
        BerPoint(s, 1000, int(b * 1000), b, 0.0, True, 0)
        for s, b in zip(snrs, bers)
    )
    return BerCurve("x", SimConfig(), pts)


def test_snr_at_ber_interpolates_log_linear():
    curve = _curve_from([1e-2, 1e-4], [0.0, 10.0])
    out = snr_at_ber(curve, 1e-3)
    assert abs(out - 5.0) <= 1e-12


def test_snr_at_ber_exact_point():
    curve = _curve_from([1e-2, 1e-3, 1e-4], [0.0, 5.0, 10.0])
    assert snr_at_ber(curve, 1e-3) == 5.0


def test_snr_at_ber_no_crossing():
    curve = _curve_from([1e-2, 1e-3], [0.0, 5.0])
    assert snr_at_ber(curve, 1e-5) is None
    assert snr_at_ber(curve, 0.5) is None


# ------------------------------------------------------------------- config


def test_config_round_trips_through_dict():
    cfg = SimConfig(feedback_bits=4, modulation="qpsk", n_r=2,
                    snr_db_points=(0.0, 3.0), pilot_snr_db=12.0)
    assert SimConfig.from_dict(cfg.to_dict()) == cfg


def test_config_perfect_sentinel():
    cfg = SimConfig.from_dict({"feedback_bits": "perfect"})
    assert cfg.feedback_bits is None
    assert SimConfig.from_dict({"feedback_bits": 3}).feedback_bits == 3


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        SimConfig.from_dict({"n_t": 2, "bandwidth": 20e6})


@pytest.mark.parametrize("bad", [
    dict(n_t=0),
    dict(modulation="16qam"),
    dict(feedback_bits=21),
    dict(snr_db_points=(4.0, 2.0)),
    dict(snr_db_points=()),
    dict(target_errors=0),
    dict(max_bits=0),
    dict(n_taps=0),
    dict(n_subcarriers=2, n_taps=4),
    dict(csi_mode="genie"),
    dict(csi_mode="estimated", n_pilots=1),
    dict(master_seed=-1),
])
def test_config_validation_rejects(bad):
    with pytest.raises(ConfigError):
        SimConfig(**bad).validate()


@given(st.integers(0, 1000), st.integers(0, 3))
@settings(max_examples=20, deadline=None)
def test_trial_streams_are_reproducible(seed, idx):
    a = _trial_rng(seed, idx).integers(0, 2**32, 4)
    b = _trial_rng(seed, idx).integers(0, 2**32, 4)
    assert np.array_equal(a, b)
