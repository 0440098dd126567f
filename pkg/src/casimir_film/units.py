"""Unit conventions and conversions at the I/O boundary.

Internally every frequency is measured in units of ``OMEGA0 = 1e16 s^-1`` and
every length in units of ``c / OMEGA0`` (about 29.98 nm).  Wavevectors are
therefore in units of ``OMEGA0 / c``.
"""

from __future__ import annotations

OMEGA0 = 1.0e16  # s^-1
C_LIGHT = 299_792_458.0  # m/s
HBAR = 1.054_571_817e-34  # J s
HBAR_C = HBAR * C_LIGHT  # J m

#: internal length unit c/OMEGA0 expressed in nm
LENGTH_UNIT_NM = C_LIGHT / OMEGA0 * 1e9


def nm_to_internal(length_nm):
    return length_nm / LENGTH_UNIT_NM


def internal_to_nm(length):
    return length * LENGTH_UNIT_NM


def per_s_to_internal(freq_per_s):
    return freq_per_s / OMEGA0


def internal_to_per_s(freq):
    return freq * OMEGA0


def tau_fs_to_gamma(tau_fs: float) -> float:
    """Damping rate 1/tau in OMEGA0 units for a relaxation time given in fs."""
    return 1.0 / (tau_fs * 1e-15 * OMEGA0)
