"""Rayleigh MIMO channels, OFDM subcarrier views, and LS estimation.

Channels are i.i.d. circularly-symmetric complex Gaussian.  A
frequency-selective channel is a set of time-domain taps whose total
average power is normalized to one per receive/transmit antenna pair,
so each subcarrier of the DFT view is marginally CN(0, 1) per entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ShapeMismatchError",
    "InvalidLengthError",
    "ChannelTaps",
    "ChannelRealization",
    "TrainingSequence",
    "gen_rayleigh_flat",
    "gen_selective_taps",
    "to_subcarriers",
    "make_phase_shift_training",
    "ls_estimate",
]


class ShapeMismatchError(ValueError):
    """Array arguments have incompatible shapes."""


class InvalidLengthError(ValueError):
    """A requested sequence length is out of range."""


@dataclass(frozen=True)
class ChannelTaps:
    """Time-domain taps of a frequency-selective MIMO channel.

    ``taps`` has shape (n_taps, n_r, n_t); tap ``l`` carries average
    power ``1 / n_taps`` per antenna pair.
    """

    taps: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.taps, dtype=np.complex128)
        if t.ndim != 3:
            raise ShapeMismatchError(f"taps must be 3-D, got ndim={t.ndim}")
        if t.shape[0] < 1:
            raise InvalidLengthError("need at least one tap")
        object.__setattr__(self, "taps", t)

    @property
    def n_taps(self) -> int:
        return self.taps.shape[0]

    @property
    def n_rx(self) -> int:
        return self.taps.shape[1]

    @property
    def n_tx(self) -> int:
        return self.taps.shape[2]


@dataclass(frozen=True)
class ChannelRealization:
    """Per-subcarrier channel matrices of one OFDM channel realization.

    ``per_subcarrier[k]`` is the (n_r, n_t) matrix on subcarrier ``k``,
    the length-``n_subcarriers`` DFT of the taps.
    """

    per_subcarrier: np.ndarray
    n_subcarriers: int
    source_taps: ChannelTaps = field(repr=False)


@dataclass(frozen=True)
class TrainingSequence:
    """Known pilot symbols, one row per transmit antenna.

    ``symbols`` has shape (n_t, n_pilots) with unit-modulus entries and
    mutually orthogonal rows: ``symbols @ symbols.conj().T`` equals
    ``n_pilots * I``.
    """

    symbols: np.ndarray

    @property
    def n_pilots(self) -> int:
        return self.symbols.shape[1]


def _complex_normal(rng: np.random.Generator, shape, scale: float) -> np.ndarray:
    """CN(0, 2*scale^2) samples; real block drawn before imaginary."""
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return (re + 1j * im) * scale


def gen_rayleigh_flat(n_r: int, n_t: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an (n_r, n_t) matrix with i.i.d. CN(0, 1) entries."""
    return _complex_normal(rng, (n_r, n_t), np.sqrt(0.5))


def gen_selective_taps(
    n_r: int, n_t: int, n_taps: int, rng: np.random.Generator
) -> ChannelTaps:
    """Draw ``n_taps`` i.i.d. taps with uniform power profile.

    Each tap entry is CN(0, 1/n_taps), so the summed tap power per
    antenna pair averages to one and every DFT bin of the subcarrier
    view is marginally CN(0, 1).
    """
    if n_taps < 1:
        raise InvalidLengthError(f"n_taps must be >= 1, got {n_taps}")
    scale = np.sqrt(0.5 / n_taps)
    return ChannelTaps(_complex_normal(rng, (n_taps, n_r, n_t), scale))


def to_subcarriers(taps: ChannelTaps, n_subcarriers: int) -> ChannelRealization:
    """DFT the taps into per-subcarrier channel matrices.

    Subcarrier ``k`` gets ``sum_l taps[l] * exp(-2j*pi*k*l/N)``, the
    frequency response a cyclic-prefix OFDM system sees on that bin.
    Requires ``n_subcarriers >= n_taps`` so the cyclic prefix assumption
    makes sense.
    """
    if n_subcarriers < taps.n_taps:
        raise InvalidLengthError(
            f"n_subcarriers={n_subcarriers} is less than n_taps={taps.n_taps}"
        )
    h = np.fft.fft(taps.taps, n=n_subcarriers, axis=0)
    return ChannelRealization(h, n_subcarriers, taps)


def make_phase_shift_training(n_t: int, n_pilots: int) -> TrainingSequence:
    """Build unit-modulus training with orthogonal rows.

    Antenna ``r`` transmits ``exp(2j*pi*r*c/n_pilots)`` at pilot slot
    ``c``.  Distinct rows are orthogonal whenever ``n_pilots >= n_t``,
    which is required.
    """
    if n_pilots < n_t:
        raise InvalidLengthError(
            f"n_pilots={n_pilots} must be at least n_t={n_t}"
        )
    r = np.arange(n_t)[:, None]
    c = np.arange(n_pilots)[None, :]
    return TrainingSequence(np.exp(2j * np.pi * r * c / n_pilots))


def ls_estimate(received: np.ndarray, training: TrainingSequence) -> np.ndarray:
    """Least-squares channel estimate from known training.

    With ``received = H @ S + noise`` and orthogonal unit-modulus
    training ``S``, the LS estimate is ``received @ S^H / n_pilots``.
    ``received`` has shape (..., n_r, n_pilots); leading batch axes are
    allowed and broadcast through.  Returns (..., n_r, n_t).
    """
    y = np.asarray(received, dtype=np.complex128)
    s = training.symbols
    if y.ndim < 2 or y.shape[-1] != s.shape[1]:
        raise ShapeMismatchError(
            f"received shape {y.shape} does not match n_pilots={s.shape[1]}"
        )
    return y @ (s.conj().T / s.shape[1])
