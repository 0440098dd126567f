"""Reflection amplitudes of interfaces and of a film on a substrate at imaginary frequency.

Everything is real on the imaginary axis: for a medium with permittivity
``eps`` the normal wavevector component is ``kappa = sqrt(eps xi^2 + Q^2)``.
Frequencies are in OMEGA0 units, wavevectors in OMEGA0/c, lengths in c/OMEGA0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .materials import DielectricModel, epsilon_iw

__all__ = [
    "WaveContext",
    "LayerReflection",
    "fresnel",
    "optical_length",
    "layer_reflection",
    "optical_length_percent_diff",
    "percent_diff_at_k",
    "EXP_CUTOFF",
]

#: e^{-x} is taken as exactly 0 beyond this argument
EXP_CUTOFF = 745.0


@dataclass(frozen=True)
class WaveContext:
    xi: float
    Q: float

    def __post_init__(self):
        if not np.all(np.asarray(self.xi) > 0):
            raise ValueError("xi must be > 0")
        if not np.all(np.asarray(self.Q) >= 0):
            raise ValueError("Q must be >= 0")

    @property
    def k(self):
        return np.sqrt(self.xi**2 + self.Q**2)

    def kappa(self, eps):
        """Normal wavevector component inside a medium of permittivity ``eps``."""
        return _kappa(self.xi, self.Q, eps)


class LayerReflection(NamedTuple):
    r_s: float
    r_p: float


def _kappa(xi, Q, eps):
    rad = eps * xi * xi + Q * Q
    assert np.all(rad >= 0), "negative radicand on the imaginary axis"
    return np.sqrt(rad)


def _exp_neg(x):
    """``exp(-x)`` for ``x >= 0`` with deep-tail values flushed to zero."""
    x = np.asarray(x, dtype=float)
    return np.where(x > EXP_CUTOFF, 0.0, np.exp(-np.minimum(x, EXP_CUTOFF)))


def _interface(kap_i, kap_j, eps_i, eps_j):
    """s and p amplitudes for the i -> j interface given normal wavevectors."""
    if not (np.any(np.isinf(eps_i)) or np.any(np.isinf(eps_j))):
        r_s = (kap_i - kap_j) / (kap_i + kap_j)
        r_p = (eps_j * kap_i - eps_i * kap_j) / (eps_j * kap_i + eps_i * kap_j)
        return r_s, r_p
    # ideal-conductor side: r_s -> -+1, r_p -> +-1
    with np.errstate(invalid="ignore"):
        r_s = (kap_i - kap_j) / (kap_i + kap_j)
        r_p = (eps_j * kap_i - eps_i * kap_j) / (eps_j * kap_i + eps_i * kap_j)
    inf_i = np.isinf(eps_i) & ~np.isinf(eps_j)
    inf_j = np.isinf(eps_j) & ~np.isinf(eps_i)
    both = np.isinf(eps_i) & np.isinf(eps_j)
    r_s = np.where(inf_j, -1.0, np.where(inf_i, 1.0, np.where(both, 0.0, r_s)))
    r_p = np.where(inf_j, 1.0, np.where(inf_i, -1.0, np.where(both, 0.0, r_p)))
    return r_s, r_p


def fresnel(ctx: WaveContext, eps_i, eps_j) -> LayerReflection:
    """Single-interface reflection going from medium ``i`` into medium ``j``.

    ``r_s = (kappa_i - kappa_j) / (kappa_i + kappa_j)`` and
    ``r_p = (eps_j kappa_i - eps_i kappa_j) / (eps_j kappa_i + eps_i kappa_j)``.
    """
    r_s, r_p = _interface(ctx.kappa(eps_i), ctx.kappa(eps_j), eps_i, eps_j)
    return LayerReflection(np.asarray(r_s)[()], np.asarray(r_p)[()])


def optical_length(ctx: WaveContext, eps_film, d):
    """Phase thickness ``delta = d sqrt(xi^2 (eps_film - 1) + k^2)`` of a film."""
    if np.any(np.asarray(d) <= 0):
        raise ValueError("film thickness d must be > 0")
    return _delta(ctx.xi, ctx.k, eps_film, d)


def _delta(xi, k, eps_film, d):
    return d * np.sqrt(xi * xi * (eps_film - 1.0) + k * k)


def _film_on_substrate(r01, r12, expo):
    return (r01 + r12 * expo) / (1.0 + r01 * r12 * expo)


def layer_reflection(ctx: WaveContext, eps_film, d, eps_substrate) -> LayerReflection:
    """Reflection off vacuum | film (thickness ``d``) | substrate.

    ``d = inf`` means a film half-space; ``d = 0`` reduces to the bare substrate.
    """
    if np.any(np.asarray(d) < 0):
        raise ValueError("film thickness d must be >= 0")
    r_s, r_p = _layered(ctx.xi, ctx.Q, eps_film, d, eps_substrate)
    return LayerReflection(np.asarray(r_s)[()], np.asarray(r_p)[()])


def _layered(xi, Q, eps_film, d, eps_substrate):
    kap0 = np.sqrt(xi * xi + Q * Q)
    kap1 = _kappa(xi, Q, eps_film)
    r01_s, r01_p = _interface(kap0, kap1, 1.0, eps_film)
    if np.all(np.isinf(d)):
        return r01_s, r01_p
    kap2 = _kappa(xi, Q, eps_substrate)
    r12_s, r12_p = _interface(kap1, kap2, eps_film, eps_substrate)
    expo = _exp_neg(2.0 * d * kap1)
    out_s = _film_on_substrate(r01_s, r12_s, expo)
    out_p = _film_on_substrate(r01_p, r12_p, expo)
    bare = d == 0
    if np.any(bare):
        # The composition formula is ill-conditioned when |r01| -> 1, so a
        # vanishing film returns the bare substrate interface directly.
        r02_s, r02_p = _interface(kap0, kap2, 1.0, eps_substrate)
        out_s = np.where(bare, r02_s, out_s)
        out_p = np.where(bare, r02_p, out_p)
    return out_s, out_p


def optical_length_percent_diff(ctx: WaveContext, film: DielectricModel, reference: DielectricModel, d):
    """``100 |delta(film) - delta(reference)| / delta(film)`` at a wave context."""
    return percent_diff_at_k(ctx.xi, ctx.k, film, reference, d)


def percent_diff_at_k(xi, k, film: DielectricModel, reference: DielectricModel, d):
    """Same as :func:`optical_length_percent_diff` with ``k`` held as an independent parameter.

    Useful for sweeping ``xi`` at fixed ``k`` past ``xi > k``, where no real
    transverse wavevector exists.
    """
    if np.any(np.asarray(d) <= 0):
        raise ValueError("film thickness d must be > 0")
    d_film = _delta(xi, k, epsilon_iw(film, xi), d)
    d_ref = _delta(xi, k, epsilon_iw(reference, xi), d)
    return 100.0 * np.abs(d_film - d_ref) / d_film
