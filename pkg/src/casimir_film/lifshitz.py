"""Zero-temperature Lifshitz pressure between a half-space and a film-on-substrate.

The pressure is computed in the (xi, Q) plane::

    P = hbar c / (2 pi^2) * int_0^inf dxi int_0^inf dQ  Q k (G_s + G_p)

with ``k = sqrt(xi^2 + Q^2)`` and ``G = r1 r2 e^{-2kL} / (1 - r1 r2 e^{-2kL})``
per polarization.  The same integral written over ``(k, Q)`` with weight
``k^2 / q`` is kept as :func:`casimir_integral_kq` for cross-checking.

Pressures are returned as positive magnitudes; the force is attractive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import quadrature
from .materials import Constant, DielectricModel, bulk_gold, film_record, silicon
from .optics import _exp_neg, _interface, _kappa, _layered
from .units import HBAR_C, LENGTH_UNIT_NM, OMEGA0, C_LIGHT, nm_to_internal

__all__ = [
    "LayeredStack",
    "QuadratureSpec",
    "ForceResult",
    "ConvergenceError",
    "ideal_casimir_pressure",
    "ideal_integral",
    "integrand",
    "casimir_force",
    "casimir_integral_kq",
    "reduction_factor",
    "default_stack",
]

#: (omega0 / c)^4 in m^-4, converts the dimensionless integral to SI
_WAVEVECTOR4 = (OMEGA0 / C_LIGHT) ** 4


class ConvergenceError(ArithmeticError):
    """Quadrature did not reach its tolerance; carries the best estimate."""

    def __init__(self, message, result: "ForceResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class LayeredStack:
    """Half-space ``body1`` facing a film of ``film`` (thickness ``thickness``) on ``substrate``.

    Lengths are in internal units ``c / OMEGA0``; use :meth:`from_nm` to build
    from nanometres.  ``thickness = inf`` makes body 2 a half-space of ``film``.
    """

    body1: DielectricModel
    film: DielectricModel
    thickness: float
    substrate: DielectricModel
    gap: float

    def __post_init__(self):
        if not (self.gap > 0 and math.isfinite(self.gap)):
            raise ValueError(f"gap must be positive and finite, got {self.gap!r}")
        if not self.thickness >= 0:
            raise ValueError(f"film thickness must be >= 0, got {self.thickness!r}")

    @classmethod
    def from_nm(cls, body1, film, thickness_nm, substrate, gap_nm):
        return cls(body1, film, nm_to_internal(thickness_nm), substrate, nm_to_internal(gap_nm))

    @classmethod
    def half_spaces(cls, body1, body2, gap):
        """Two facing half-spaces (no film)."""
        return cls(body1, body2, math.inf, Constant(1.0), gap)

    @property
    def gap_nm(self):
        return self.gap * LENGTH_UNIT_NM

    @property
    def thickness_nm(self):
        return self.thickness * LENGTH_UNIT_NM

    def swapped(self):
        """Exchange the bodies; only meaningful for two half-spaces."""
        if math.isfinite(self.thickness):
            raise ValueError("only half-space/half-space stacks can be swapped")
        return replace(self, body1=self.film, film=self.body1)


def default_stack(film_nm: float, gap_nm: float, *, body1=None, substrate=None) -> LayeredStack:
    """Bulk-gold half-space against a tabulated gold film on silicon."""
    rec = film_record(film_nm)
    return LayeredStack.from_nm(
        bulk_gold() if body1 is None else body1,
        rec.model(),
        rec.thickness_nm,
        silicon() if substrate is None else substrate,
        gap_nm,
    )


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-6
    abs_tol: float = 0.0
    max_refinements: int = 20
    transform: str = "rational"

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-2:
            raise ValueError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol!r}")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")
        if int(self.max_refinements) != self.max_refinements or self.max_refinements < 1:
            raise ValueError("max_refinements must be an integer >= 1")
        if self.transform != "rational":
            raise ValueError(f"unknown transform {self.transform!r}; only 'rational' (x = s t/(1-t)) exists")


@dataclass(frozen=True)
class ForceResult:
    pressure: float  # Pa, magnitude
    eta: float
    est_error: float  # Pa
    evaluations: int
    integral: float = field(repr=False, default=float("nan"))  # dimensionless, (omega0/c)^4 units


def ideal_casimir_pressure(L_m):
    """Perfect-mirror pressure magnitude ``hbar c pi^2 / (240 L^4)`` in Pa, ``L`` in metres."""
    L_m = np.asarray(L_m, dtype=float)
    if np.any(L_m <= 0):
        raise ValueError("separation must be > 0")
    return (HBAR_C * math.pi**2 / (240.0 * L_m**4))[()]


def ideal_integral(gap):
    """Perfect-mirror value of the (xi, Q) integral, ``pi^4 / (120 L^4)`` (internal units)."""
    return math.pi**4 / (120.0 * gap**4)


def _g_sum(stack: LayeredStack, xi, Q):
    """``G_s + G_p`` and ``k`` at imaginary frequency ``xi`` and wavevector ``Q``."""
    k = np.sqrt(xi * xi + Q * Q)
    eps1 = stack.body1.eps_iw(xi)
    r1s, r1p = _interface(k, _kappa(xi, Q, eps1), 1.0, eps1)
    r2s, r2p = _layered(xi, Q, stack.film.eps_iw(xi), stack.thickness, stack.substrate.eps_iw(xi))
    decay = _exp_neg(2.0 * k * stack.gap)
    ps = r1s * r2s * decay
    pp = r1p * r2p * decay
    assert np.all(np.abs(ps) < 1) and np.all(np.abs(pp) < 1), "round-trip amplitude >= 1"
    return ps / (1.0 - ps) + pp / (1.0 - pp), k


def integrand(stack: LayeredStack, xi, Q):
    """``Q k (G_s + G_p)``, the (xi, Q)-plane integrand (broadcasts over arrays)."""
    xi = np.asarray(xi, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if np.any(xi <= 0) or np.any(Q < 0):
        raise ValueError("need xi > 0 and Q >= 0")
    g, k = _g_sum(stack, xi, Q)
    return (Q * k * g)[()]


def _finish(stack, res: quadrature.CubatureResult):
    L_m = stack.gap * LENGTH_UNIT_NM * 1e-9
    to_pa = HBAR_C / (2.0 * math.pi**2) * _WAVEVECTOR4
    pressure = to_pa * res.value
    eta = pressure / ideal_casimir_pressure(L_m)
    return ForceResult(pressure, eta, to_pa * res.error, res.evaluations, res.value)


def casimir_force(stack: LayeredStack, spec: QuadratureSpec = QuadratureSpec()) -> ForceResult:
    """Pressure and reduction factor for ``stack``.

    Raises :class:`ConvergenceError` (with the best estimate attached) when
    the tolerance is not reached within ``spec.max_refinements`` rounds.
    """
    scale = 1.0 / (2.0 * stack.gap)

    def f(xi, Q):
        g, k = _g_sum(stack, xi, Q)
        return Q * k * g

    res = quadrature.integrate_quadrant(
        f, scale, scale, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol, max_refinements=spec.max_refinements
    )
    out = _finish(stack, res)
    if not res.converged:
        raise ConvergenceError(
            f"tolerance {spec.rel_tol:g} not met after {res.rounds} refinements "
            f"(estimate {out.pressure:.6g} Pa, error {out.est_error:.3g} Pa)",
            out,
        )
    return out


def casimir_integral_kq(stack: LayeredStack, spec: QuadratureSpec = QuadratureSpec()) -> ForceResult:
    """The pressure integral in the printed ``(k, Q)`` form, ``int Q dQ int_{k>Q} dk k^2/q (G_s + G_p)``.

    The ``1/q`` edge singularity at ``k = Q`` is removed with ``k = Q + u^2``,
    giving ``dk k^2 / q = 2 k^2 / sqrt(2Q + u^2) du``.
    """
    scale_q = 1.0 / (2.0 * stack.gap)

    def f(Q, u):
        root = np.sqrt(2.0 * Q + u * u)
        k = Q + u * u
        xi = u * root
        g, _ = _g_sum(stack, xi, Q)
        return Q * 2.0 * k * k / root * g

    res = quadrature.integrate_quadrant(
        f, scale_q, math.sqrt(scale_q), rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
        max_refinements=spec.max_refinements,
    )
    out = _finish(stack, res)
    if not res.converged:
        raise ConvergenceError(f"(k, Q) integral did not converge (error {out.est_error:.3g} Pa)", out)
    return out


def reduction_factor(stack: LayeredStack, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """``eta = F / F_ideal`` at the stack's separation."""
    return casimir_force(stack, spec).eta
