"""Transmit beamformers, receive combiners, and zero-forcing precoders."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import SingularMatrixError, mat_inverse

__all__ = [
    "NullEffectiveChannelError",
    "SingularStackError",
    "BeamformPair",
    "PrecoderSet",
    "mrc_receive",
    "mrc_pair",
    "apply_power_constraint",
    "effective_scalar_channel",
    "zfbf_precoders",
    "zfbf_sinr",
]


class NullEffectiveChannelError(ValueError):
    """H @ b is exactly zero; there is nothing to combine."""


class SingularStackError(ValueError):
    """Stacked user directions are linearly dependent (or nearly so)."""


@dataclass(frozen=True)
class BeamformPair:
    """A transmit beam, its matched receive combiner, and the link gain.

    ``gain`` is ``|a^H H b|^2 / ||b||^2``, the post-combining power gain
    per unit transmit power.
    """

    transmit: np.ndarray
    receive: np.ndarray
    gain: float


@dataclass(frozen=True)
class PrecoderSet:
    """Per-user zero-forcing beams; ``vectors[j]`` is user j's column."""

    vectors: np.ndarray
    source_directions: np.ndarray


def mrc_receive(h: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Maximum ratio combiner for channel ``h`` and transmit beam ``b``.

    Returns ``a = h @ b / ||h @ b||``, the unit combiner maximizing
    post-combining SNR; ``a^H (h @ b)`` comes out real and positive.
    """
    t = np.asarray(h, dtype=np.complex128) @ np.asarray(b, dtype=np.complex128)
    n = np.linalg.norm(t)
    if n == 0.0:
        raise NullEffectiveChannelError("effective channel h @ b is zero")
    return t / n


def mrc_pair(h: np.ndarray, b: np.ndarray) -> BeamformPair:
    """Bundle a transmit beam with its MRC combiner and link gain."""
    b = np.asarray(b, dtype=np.complex128)
    a = mrc_receive(h, b)
    g = effective_scalar_channel(h, b, a)
    bp = float(np.vdot(b, b).real)
    return BeamformPair(b, a, float(np.abs(g) ** 2) / bp)


def apply_power_constraint(beams: np.ndarray, total_power: float) -> np.ndarray:
    """Rescale per-subcarrier beams to split a power budget uniformly.

    ``beams`` is (n, dim) with nonzero rows.  Each row is scaled to
    ``||b_k||^2 = total_power / n``, so the rows keep their directions
    and the budget is met with equality.
    """
    beams = np.asarray(beams, dtype=np.complex128)
    if total_power <= 0.0:
        raise ValueError(f"total_power must be positive, got {total_power}")
    norms = np.linalg.norm(beams, axis=1)
    if (norms == 0.0).any():
        raise ValueError("beams must have nonzero norm")
    scale = np.sqrt(total_power / beams.shape[0]) / norms
    return beams * scale[:, None]


def effective_scalar_channel(
    h: np.ndarray, b: np.ndarray, a: np.ndarray
) -> complex:
    """The scalar channel ``a^H H b`` seen after beamforming/combining."""
    h = np.asarray(h, dtype=np.complex128)
    return complex(np.vdot(a, h @ b))


def zfbf_precoders(directions: np.ndarray) -> PrecoderSet:
    """Zero-forcing beams from stacked unit user directions.

    ``directions`` is (n_users, dim) with row ``i`` the fed-back unit
    direction of user ``i`` and ``n_users == dim``.  Stacking the
    conjugated directions as rows and inverting, the normalized j-th
    column of the inverse is user j's beam: it is orthogonal to every
    other user's direction, so users hear no intended-signal crosstalk
    through their quantized directions.
    """
    d = np.asarray(directions, dtype=np.complex128)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(
            f"need a square stack of directions, got shape {d.shape}"
        )
    try:
        inv = mat_inverse(np.conj(d))
    except SingularMatrixError as e:
        raise SingularStackError(f"user directions are dependent: {e}") from e
    cols = inv / np.linalg.norm(inv, axis=0, keepdims=True)
    return PrecoderSet(cols.T.copy(), d.copy())


def zfbf_sinr(
    h: np.ndarray,
    precoders: PrecoderSet,
    user: int,
    total_power: float,
) -> float:
    """Post-precoding SINR of one user under uniform power split.

    With ``n_users`` beams sharing ``total_power`` equally and unit
    noise power, user ``i`` with true channel ``h`` sees

        SINR = (P/M) |h^H v_i|^2 / (1 + sum_{j != i} (P/M) |h^H v_j|^2).

    Residual interference is zero only when the fed-back direction of
    user ``i`` matches the true channel direction exactly.
    """
    v = precoders.vectors
    m = v.shape[0]
    if not 0 <= user < m:
        raise ValueError(f"user index {user} out of range for {m} users")
    if total_power <= 0.0:
        raise ValueError(f"total_power must be positive, got {total_power}")
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    p = np.abs(v @ h.conj()) ** 2  # |h^H v_j|^2 for every beam j
    share = total_power / m
    signal = share * p[user]
    interference = share * (p.sum() - p[user])
    return float(signal / (1.0 + interference))
