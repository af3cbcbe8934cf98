"""Monte Carlo BER sweeps for beamformed MIMO-OFDM links.

One trial is one OFDM channel realization: draw taps, take the
per-subcarrier DFT view, pick a transmit beam per subcarrier from the
receiver's channel knowledge (dominant eigenvector, or the best
codeword of a random codebook when feedback is limited to B bits),
combine with MRC, and count bit errors on one OFDM data symbol.

Power bookkeeping: noise is unit variance per receive antenna and each
subcarrier's beam carries power ``rho = 10**(snr_db/10)``, so
``snr_db`` is the per-subcarrier transmit SNR and the post-combining
SNR on subcarrier k is ``rho * ||H_k b_k||^2`` for a unit direction
``b_k``.

Reproducibility: trial ``i`` draws everything from
``SeedSequence([master_seed, i])`` in a fixed order (data bits, taps,
codebook seed when a fresh codebook is used, pilot noise when CSI is
estimated, data noise).  Draws do not depend on the SNR point or on
how trials are batched across workers, so sweeps share common random
numbers across SNR points and curves, and results are bit-identical
for any worker count.
"""

from __future__ import annotations

import multiprocessing
import os
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .channel import _complex_normal, ls_estimate, make_phase_shift_training
from .codebook import Codebook, gen_rvq
from .numerics import _phase_fix_rows, dominant_right_eigvec_batch
from .beamforming import apply_power_constraint

__all__ = [
    "ConfigError",
    "OddBitCountError",
    "SimConfig",
    "TrialResult",
    "BerPoint",
    "BerCurve",
    "modulate",
    "demodulate",
    "awgn",
    "run_trial",
    "run_sweep",
    "trial_effective_gains",
    "snr_at_ber",
    "curve_csv_text",
    "write_curve_csv",
    "TRIALS_PER_BATCH",
]

MODULATIONS = ("bpsk", "qpsk")
CSI_MODES = ("perfect", "estimated")
MAX_FEEDBACK_BITS = 20

# Trials are simulated in fixed-size batches; the stopping rule is
# checked between batches.  Fixed batches keep the set of simulated
# trials, and therefore the results, independent of the worker count.
TRIALS_PER_BATCH = 256

# SeedSequence stream key for the shared codebook in fixed-codebook
# mode; far outside any reachable trial index.
_CODEBOOK_STREAM = 2**62 + 11

# Codeword chunk size for beam selection, bounding memory for large B.
_SELECT_CHUNK = 1 << 14
# Element budget for the stacked trials x subcarriers x codewords gain
# tensor used by the fast selection path (~32 MB of complex128).
_SELECT_TRIAL_BUDGET = 1 << 21


class ConfigError(ValueError):
    """Simulation configuration is malformed or out of range."""


class OddBitCountError(ValueError):
    """QPSK needs an even number of bits."""


@dataclass(frozen=True)
class SimConfig:
    """Full description of one simulated link.

    ``feedback_bits is None`` means the transmitter gets the receiver's
    channel knowledge exactly (unquantized beamforming); an integer B
    means the receiver feeds back one index into a 2**B-word random
    codebook.  With ``fresh_codebook`` a new codebook is drawn per
    trial (the ensemble average); otherwise one seeded codebook is
    shared by all trials.

    ``csi_mode`` is "perfect" (receiver knows each subcarrier channel
    exactly) or "estimated" (receiver least-squares-estimates it from
    ``n_pilots`` phase-shift training symbols and uses the estimate for
    beam selection, combining, and feedback).  Pilot symbols carry
    power ``10**(pilot_snr_db/10)`` per antenna, defaulting to an equal
    split of the data power ``rho / n_t`` when ``pilot_snr_db`` is
    None.
    """

    n_t: int = 2
    n_r: int = 1
    n_subcarriers: int = 64
    n_taps: int = 4
    modulation: str = "bpsk"
    feedback_bits: int | None = None
    fresh_codebook: bool = True
    csi_mode: str = "perfect"
    n_pilots: int = 4
    pilot_snr_db: float | None = None
    snr_db_points: tuple[float, ...] = tuple(float(s) for s in range(0, 21, 2))
    target_errors: int = 200
    max_bits: int = 10_000_000
    master_seed: int = 0

    def validate(self) -> None:
        if self.n_t < 1 or self.n_r < 1:
            raise ConfigError(
                f"antenna counts must be >= 1, got n_t={self.n_t} n_r={self.n_r}"
            )
        if self.n_taps < 1:
            raise ConfigError(f"n_taps must be >= 1, got {self.n_taps}")
        if self.n_subcarriers < self.n_taps:
            raise ConfigError(
                f"n_subcarriers={self.n_subcarriers} must be >= "
                f"n_taps={self.n_taps}"
            )
        if self.modulation not in MODULATIONS:
            raise ConfigError(
                f"modulation must be one of {MODULATIONS}, got "
                f"{self.modulation!r}"
            )
        if self.feedback_bits is not None and not (
            0 <= self.feedback_bits <= MAX_FEEDBACK_BITS
        ):
            raise ConfigError(
                f"feedback_bits must be in [0, {MAX_FEEDBACK_BITS}] or "
                f"'perfect', got {self.feedback_bits}"
            )
        if self.csi_mode not in CSI_MODES:
            raise ConfigError(
                f"csi_mode must be one of {CSI_MODES}, got {self.csi_mode!r}"
            )
        if self.csi_mode == "estimated" and self.n_pilots < self.n_t:
            raise ConfigError(
                f"n_pilots={self.n_pilots} must be >= n_t={self.n_t} "
                "for estimated CSI"
            )
        if self.pilot_snr_db is not None and not np.isfinite(self.pilot_snr_db):
            raise ConfigError("pilot_snr_db must be finite")
        if len(self.snr_db_points) == 0:
            raise ConfigError("snr_db_points must not be empty")
        if any(
            b <= a for a, b in zip(self.snr_db_points, self.snr_db_points[1:])
        ):
            raise ConfigError("snr_db_points must be strictly increasing")
        if self.target_errors < 1:
            raise ConfigError(
                f"target_errors must be >= 1, got {self.target_errors}"
            )
        if self.max_bits < 1:
            raise ConfigError(f"max_bits must be >= 1, got {self.max_bits}")
        if self.master_seed < 0:
            raise ConfigError(
                f"master_seed must be >= 0, got {self.master_seed}"
            )

    @property
    def bits_per_symbol(self) -> int:
        return 2 if self.modulation == "qpsk" else 1

    def to_dict(self) -> dict:
        return {
            "n_t": self.n_t,
            "n_r": self.n_r,
            "n_subcarriers": self.n_subcarriers,
            "n_taps": self.n_taps,
            "modulation": self.modulation,
            "feedback_bits": (
                "perfect" if self.feedback_bits is None else self.feedback_bits
            ),
            "fresh_codebook": self.fresh_codebook,
            "csi_mode": self.csi_mode,
            "n_pilots": self.n_pilots,
            "pilot_snr_db": self.pilot_snr_db,
            "snr_db_points": list(self.snr_db_points),
            "target_errors": self.target_errors,
            "max_bits": self.max_bits,
            "master_seed": self.master_seed,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "SimConfig":
        known = {f: True for f in cls.__dataclass_fields__}
        unknown = [k for k in raw if k not in known]
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        kwargs = dict(raw)
        if "feedback_bits" in kwargs:
            kwargs["feedback_bits"] = _parse_feedback_bits(
                kwargs["feedback_bits"]
            )
        if "snr_db_points" in kwargs:
            try:
                kwargs["snr_db_points"] = tuple(
                    float(s) for s in kwargs["snr_db_points"]
                )
            except (TypeError, ValueError) as e:
                raise ConfigError(f"bad snr_db_points: {e}") from e
        for key in ("n_t", "n_r", "n_subcarriers", "n_taps", "n_pilots",
                    "target_errors", "max_bits", "master_seed"):
            if key in kwargs:
                try:
                    kwargs[key] = int(kwargs[key])
                except (TypeError, ValueError) as e:
                    raise ConfigError(f"bad {key}: {e}") from e
        if kwargs.get("pilot_snr_db") is not None and "pilot_snr_db" in kwargs:
            try:
                kwargs["pilot_snr_db"] = float(kwargs["pilot_snr_db"])
            except (TypeError, ValueError) as e:
                raise ConfigError(f"bad pilot_snr_db: {e}") from e
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg


def _parse_feedback_bits(value) -> int | None:
    """Accept 'perfect'/None for unquantized CSI or an integer bit count."""
    if value is None or value == "perfect":
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(
            f"feedback_bits must be an integer or 'perfect', got {value!r}"
        ) from e


class TrialResult(NamedTuple):
    bits_sent: int
    bit_errors: int
    null_skips: int


@dataclass(frozen=True)
class BerPoint:
    """One SNR point of a BER curve.

    ``converged`` records whether the error target was met before the
    bit budget ran out; ``half_width_95`` is the normal-approximation
    95% confidence half-width of ``ber``.
    """

    snr_db: float
    bits_sent: int
    bit_errors: int
    ber: float
    half_width_95: float
    converged: bool
    null_skips: int


@dataclass(frozen=True)
class BerCurve:
    """BER points of one config over its SNR grid, in grid order."""

    label: str
    config: SimConfig
    points: tuple[BerPoint, ...]

    def to_csv_text(self) -> str:
        lines = ["snr_db,bits,errors,ber,ci95"]
        for p in self.points:
            lines.append(
                f"{p.snr_db:.10g},{p.bits_sent},{p.bit_errors},"
                f"{p.ber:.12g},{p.half_width_95:.12g}"
            )
        return "\n".join(lines) + "\n"


def modulate(bits: np.ndarray, scheme: str) -> np.ndarray:
    """Map bits to unit-energy symbols.

    BPSK maps bit b to ``1 - 2b``.  QPSK maps bit pairs Gray-coded per
    quadrature: the first bit sets the sign of the real part, the
    second the sign of the imaginary part, scaled by 1/sqrt(2).
    """
    bits = np.asarray(bits)
    if scheme == "bpsk":
        return (1.0 - 2.0 * bits).astype(np.complex128)
    if scheme == "qpsk":
        if bits.ndim != 1:
            bits = bits.reshape(-1)
        if bits.shape[0] % 2:
            raise OddBitCountError(
                f"qpsk needs an even bit count, got {bits.shape[0]}"
            )
        re = 1.0 - 2.0 * bits[0::2]
        im = 1.0 - 2.0 * bits[1::2]
        return (re + 1j * im) / np.sqrt(2.0)
    raise ValueError(f"unknown modulation {scheme!r}")


def demodulate(symbols: np.ndarray, scheme: str) -> np.ndarray:
    """Hard decisions back to bits; exact inverse of noiseless modulate."""
    symbols = np.asarray(symbols)
    if scheme == "bpsk":
        return (symbols.real < 0.0).astype(np.uint8)
    if scheme == "qpsk":
        flat = symbols.reshape(-1)
        out = np.empty(2 * flat.shape[0], dtype=np.uint8)
        out[0::2] = flat.real < 0.0
        out[1::2] = flat.imag < 0.0
        return out
    raise ValueError(f"unknown modulation {scheme!r}")


def awgn(
    symbols: np.ndarray, noise_var: float, rng: np.random.Generator
) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise of total variance
    ``noise_var`` per symbol.  ``noise_var == 0`` returns the input
    unchanged (and draws nothing from ``rng``)."""
    if noise_var < 0.0:
        raise ValueError(f"noise_var must be >= 0, got {noise_var}")
    symbols = np.asarray(symbols, dtype=np.complex128)
    if noise_var == 0.0:
        return symbols.copy()
    return symbols + _complex_normal(
        rng, symbols.shape, np.sqrt(noise_var / 2.0)
    )


def _trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence([int(master_seed), int(trial_index)])
    )


def _fixed_codebook(config: SimConfig) -> Codebook | None:
    """The shared codebook used when ``fresh_codebook`` is off."""
    if config.feedback_bits is None or config.fresh_codebook:
        return None
    seed = int(
        np.random.SeedSequence(
            [config.master_seed, _CODEBOOK_STREAM]
        ).generate_state(1, dtype=np.uint32)[0]
    )
    return gen_rvq(config.n_t, config.feedback_bits, seed)


def _draw_block(config: SimConfig, start: int, count: int):
    """Per-trial random draws for trials [start, start+count).

    The draw order within a trial is fixed (bits, taps, codebook seed,
    pilot noise, data noise) and never depends on the SNR point.
    """
    n = config.n_subcarriers
    bps = config.bits_per_symbol
    want_seed = config.feedback_bits is not None and config.fresh_codebook
    want_pilot = config.csi_mode == "estimated"
    bits = np.empty((count, n * bps), dtype=np.uint8)
    taps = np.empty(
        (count, config.n_taps, config.n_r, config.n_t), dtype=np.complex128
    )
    cb_seeds = np.empty(count, dtype=np.int64) if want_seed else None
    pilot = (
        np.empty((count, n, config.n_r, config.n_pilots), dtype=np.complex128)
        if want_pilot
        else None
    )
    noise = np.empty((count, n, config.n_r), dtype=np.complex128)
    tap_scale = np.sqrt(0.5 / config.n_taps)
    for i in range(count):
        rng = _trial_rng(config.master_seed, start + i)
        bits[i] = rng.integers(0, 2, size=n * bps, dtype=np.uint8)
        taps[i] = _complex_normal(
            rng, (config.n_taps, config.n_r, config.n_t), tap_scale
        )
        if want_seed:
            cb_seeds[i] = rng.integers(0, 2**32)
        if want_pilot:
            pilot[i] = _complex_normal(
                rng, (n, config.n_r, config.n_pilots), np.sqrt(0.5)
            )
        noise[i] = _complex_normal(rng, (n, config.n_r), np.sqrt(0.5))
    return bits, taps, cb_seeds, pilot, noise


def _select_codewords(hr: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Best codeword index per subcarrier: argmax of sum_i |H w|^2.

    ``hr`` is (n, n_r, n_t), ``vectors`` (K, n_t).  Codewords are
    scanned in chunks so large codebooks stay within memory; within and
    across chunks the first maximizer wins, i.e. ties break low.
    """
    n = hr.shape[0]
    best_gain = np.full(n, -1.0)
    best_idx = np.zeros(n, dtype=np.int64)
    for lo in range(0, vectors.shape[0], _SELECT_CHUNK):
        chunk = vectors[lo : lo + _SELECT_CHUNK]
        g = (np.abs(hr @ chunk.T) ** 2).sum(axis=1)  # (n, chunk)
        idx = np.argmax(g, axis=1)
        gain = g[np.arange(n), idx]
        better = gain > best_gain  # strict: earlier chunks keep ties
        best_gain[better] = gain[better]
        best_idx[better] = idx[better] + lo
    return best_idx


def _beam_directions(
    config: SimConfig,
    hr: np.ndarray,
    cb_seeds: np.ndarray | None,
    fixed_cb: Codebook | None,
) -> np.ndarray:
    """Unit transmit directions per trial and subcarrier from receiver CSI.

    ``hr`` is (T, N, n_r, n_t).  Unquantized mode takes the dominant
    right eigenvector of each subcarrier matrix (for a single receive
    antenna that is conj(h)/||h||, computed directly); B-bit mode takes
    the best codeword of the trial's codebook.
    """
    t, n, n_r, n_t = hr.shape
    if config.feedback_bits is None:
        if n_r == 1:
            rows = hr[:, :, 0, :].reshape(t * n, n_t)
            v = rows.conj()
            norms = np.linalg.norm(v, axis=1)
            zero = norms == 0.0
            v = v / np.where(zero, 1.0, norms)[:, None]
            v[zero] = 0.0
            v[zero, 0] = 1.0
            return _phase_fix_rows(v).reshape(t, n, n_t)
        v, _ = dominant_right_eigvec_batch(hr.reshape(t * n, n_r, n_t))
        return v.reshape(t, n, n_t)
    k = 1 << config.feedback_bits
    beams = np.empty((t, n, n_t), dtype=np.complex128)
    if k > _SELECT_CHUNK:
        # huge codebooks: scan codeword chunks one trial at a time
        for i in range(t):
            cb = fixed_cb or gen_rvq(
                config.n_t, config.feedback_bits, int(cb_seeds[i])
            )
            sel = _select_codewords(hr[i], cb.vectors)
            beams[i] = cb.vectors[sel]
        return beams
    # stack a slice of trials and select with one batched matmul
    step = max(1, _SELECT_TRIAL_BUDGET // (n * k * n_r))
    for lo in range(0, t, step):
        hi = min(lo + step, t)
        rows = hr[lo:hi].reshape(hi - lo, n * n_r, n_t)
        if fixed_cb is not None:
            w = np.broadcast_to(fixed_cb.vectors, (hi - lo, k, n_t))
            amp = rows @ fixed_cb.vectors.T
        else:
            w = np.empty((hi - lo, k, n_t), dtype=np.complex128)
            for i in range(lo, hi):
                w[i - lo] = gen_rvq(
                    config.n_t, config.feedback_bits, int(cb_seeds[i])
                ).vectors
            amp = rows @ w.transpose(0, 2, 1)
        gains = (np.abs(amp) ** 2).reshape(hi - lo, n, n_r, k).sum(axis=2)
        sel = np.argmax(gains, axis=2)  # first maximum: ties break low
        beams[lo:hi] = w[np.arange(hi - lo)[:, None], sel]
    return beams


def _run_block(
    config: SimConfig,
    snr_db: float,
    start: int,
    count: int,
    fixed_cb: Codebook | None,
    collect_gains: bool = False,
):
    """Simulate trials [start, start+count) at one SNR point.

    Returns ``(bits_sent, bit_errors, null_skips)`` summed over the
    block, plus a diagnostics dict when ``collect_gains`` is set.  All
    per-trial math is elementwise over trials, so any partition of a
    trial range into blocks produces identical totals.
    """
    if count <= 0:
        return (0, 0, 0, None) if collect_gains else (0, 0, 0)
    n = config.n_subcarriers
    bps = config.bits_per_symbol
    bits, taps, cb_seeds, pilot, noise = _draw_block(config, start, count)
    h = np.fft.fft(taps, n=n, axis=1)  # (T, N, n_r, n_t)
    rho = 10.0 ** (snr_db / 10.0)
    if config.csi_mode == "estimated":
        training = make_phase_shift_training(config.n_t, config.n_pilots)
        if config.pilot_snr_db is None:
            rho_p = rho / config.n_t
        else:
            rho_p = 10.0 ** (config.pilot_snr_db / 10.0)
        amp = np.sqrt(rho_p)
        y_pilot = amp * (h @ training.symbols) + pilot
        hr = ls_estimate(y_pilot, training) / amp
    else:
        hr = h
    beams = _beam_directions(config, hr, cb_seeds, fixed_cb)
    # uniform split of the block power budget: every row gets norm
    # sqrt(rho), i.e. per-subcarrier power rho
    scaled = apply_power_constraint(
        beams.reshape(count * n, config.n_t), count * n * rho
    ).reshape(count, n, config.n_t)
    # receiver-side combiner from its channel knowledge
    t_eff = np.einsum("tnij,tnj->tni", hr, beams)
    t_norm = np.sqrt((np.abs(t_eff) ** 2).sum(axis=2))
    ok = t_norm > 0.0
    comb = t_eff / np.where(ok, t_norm, 1.0)[:, :, None]
    comb[~ok] = 0.0
    # transmit through the true channel
    x = modulate(bits.reshape(-1), config.modulation).reshape(count, n)
    rx = np.einsum("tnij,tnj->tni", h, scaled) * x[:, :, None] + noise
    x_hat = np.einsum("tni,tni->tn", comb.conj(), rx)
    rx_bits = demodulate(x_hat.reshape(-1), config.modulation).reshape(
        count, n * bps
    )
    ok_bits = np.repeat(ok, bps, axis=1)
    bit_errors = int(((rx_bits != bits) & ok_bits).sum())
    bits_sent = int(ok.sum()) * bps
    null_skips = int((~ok).sum())
    if collect_gains:
        gains = np.einsum(
            "tni,tni->tn",
            comb.conj(),
            np.einsum("tnij,tnj->tni", h, beams),
        )
        diag = {
            "gains": gains,
            "ok": ok,
            "channel": h,
            "rx_channel": hr,
            "beams": beams,
        }
        return bits_sent, bit_errors, null_skips, diag
    return bits_sent, bit_errors, null_skips


def run_trial(config: SimConfig, snr_db: float, trial_index: int) -> TrialResult:
    """Simulate a single trial; deterministic in (config, trial_index).

    ``bits_sent`` excludes subcarriers skipped because the receiver's
    effective channel ``H_k b_k`` was exactly zero; ``null_skips``
    counts them.
    """
    config.validate()
    res = _run_block(
        config, snr_db, trial_index, 1, _fixed_codebook(config)
    )
    return TrialResult(*res)


def trial_effective_gains(
    config: SimConfig, snr_db: float, trial_index: int
) -> dict:
    """Diagnostic view of one trial's beamformed link.

    Returns a dict with the per-subcarrier complex direction gains
    ``a^H H b`` (``gains``), the skip mask (``ok``), the true and
    receiver-side channels, and the unit beam directions.  The
    post-combining SNR on subcarrier k is ``rho * |gains[k]|^2``.
    """
    config.validate()
    *_, diag = _run_block(
        config, snr_db, trial_index, 1, _fixed_codebook(config), True
    )
    return {k: (v[0] if hasattr(v, "shape") else v) for k, v in diag.items()}


def _split_ranges(start: int, count: int, parts: int):
    """Contiguous (start, count) chunks covering [start, start+count)."""
    base, extra = divmod(count, parts)
    out = []
    cursor = start
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        if size:
            out.append((cursor, size))
        cursor += size
    return out


def run_sweep(
    config: SimConfig,
    label: str | None = None,
    n_workers: int = 1,
    on_point: Callable[[BerPoint], None] | None = None,
) -> BerCurve:
    """Run the BER sweep described by ``config`` and return its curve.

    Each SNR point simulates trials in fixed batches of
    ``TRIALS_PER_BATCH`` (trial indices restart at 0 per point, sharing
    channels across points and curves) until ``target_errors`` bit
    errors are counted or ``max_bits`` bits are sent.  ``n_workers``
    distributes batches over processes; 0 picks the CPU count.  The
    result is identical for every worker count.
    """
    config.validate()
    if label is None:
        label = (
            "perfect"
            if config.feedback_bits is None
            else f"rvq-b{config.feedback_bits}"
        )
    if n_workers == 0:
        n_workers = os.cpu_count() or 1
    fixed_cb = _fixed_codebook(config)
    pool = multiprocessing.Pool(n_workers) if n_workers > 1 else None
    points = []
    try:
        for snr_db in config.snr_db_points:
            bits_sent = 0
            bit_errors = 0
            null_skips = 0
            next_trial = 0
            while (
                bit_errors < config.target_errors
                and bits_sent < config.max_bits
            ):
                if pool is not None:
                    tasks = [
                        (config, snr_db, s, c, fixed_cb)
                        for s, c in _split_ranges(
                            next_trial, TRIALS_PER_BATCH, n_workers
                        )
                    ]
                    results = pool.starmap(_run_block, tasks)
                else:
                    results = [
                        _run_block(
                            config, snr_db, next_trial, TRIALS_PER_BATCH,
                            fixed_cb,
                        )
                    ]
                for b, e, s in results:
                    bits_sent += b
                    bit_errors += e
                    null_skips += s
                next_trial += TRIALS_PER_BATCH
            ber = bit_errors / bits_sent if bits_sent else 0.0
            half = (
                1.96 * np.sqrt(ber * (1.0 - ber) / bits_sent)
                if bits_sent
                else 0.0
            )
            point = BerPoint(
                snr_db=float(snr_db),
                bits_sent=bits_sent,
                bit_errors=bit_errors,
                ber=ber,
                half_width_95=float(half),
                converged=bit_errors >= config.target_errors,
                null_skips=null_skips,
            )
            points.append(point)
            if on_point is not None:
                on_point(point)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return BerCurve(label=label, config=config, points=tuple(points))


def snr_at_ber(curve: BerCurve, target: float) -> float | None:
    """SNR (dB) where the curve crosses ``target``, or None.

    Scans adjacent point pairs for the first bracket
    ``ber[i] >= target >= ber[i+1]`` and interpolates the SNR linearly
    in log10(ber).  Pairs containing a zero BER cannot be interpolated
    on a log scale and are skipped.
    """
    pts = curve.points
    for a, b in zip(pts, pts[1:]):
        if a.ber >= target >= b.ber:
            if a.ber == target:
                return a.snr_db
            if b.ber == target:
                return b.snr_db
            if a.ber <= 0.0 or b.ber <= 0.0 or a.ber == b.ber:
                continue
            la, lb, lt = np.log10(a.ber), np.log10(b.ber), np.log10(target)
            return float(a.snr_db + (b.snr_db - a.snr_db) * (lt - la) / (lb - la))
    return None


def curve_csv_text(curve: BerCurve) -> str:
    return curve.to_csv_text()


def write_curve_csv(curve: BerCurve, path) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(curve.to_csv_text())
