"""Dielectric models on the imaginary frequency axis and the gold-film registry.

All frequencies are in units of ``OMEGA0 = 1e16 s^-1``.  Models are immutable
and validated at construction, so evaluation never raises on parameters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path
from typing import Union

import numpy as np

from .units import OMEGA0, tau_fs_to_gamma

__all__ = [
    "Drude",
    "Plasma",
    "LorentzOscillator",
    "DrudeSmith",
    "DrudeSmithParams",
    "Constant",
    "PerfectConductor",
    "DielectricModel",
    "FilmRecord",
    "RegistryError",
    "epsilon_iw",
    "conductivity_drude_smith",
    "dc_conductivity_ratio",
    "table1_registry",
    "film_record",
    "bulk_gold",
    "silicon",
    "load_materials",
    "default_materials",
    "model_from_dict",
    "model_to_dict",
]


class RegistryError(LookupError):
    """Requested film or material is not in the registry."""


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class DrudeSmithParams:
    omega_p: float
    gamma: float
    c1: float = 0.0

    def __post_init__(self):
        _positive("omega_p", self.omega_p)
        _positive("gamma", self.gamma)
        if not -1.0 <= self.c1 <= 0.0:
            raise ValueError(f"c1 must lie in [-1, 0], got {self.c1!r}")


@dataclass(frozen=True)
class Drude:
    omega_p: float
    gamma: float

    def __post_init__(self):
        _positive("omega_p", self.omega_p)
        _positive("gamma", self.gamma)

    def eps_iw(self, xi):
        return 1.0 + self.omega_p**2 / (xi * (xi + self.gamma))


@dataclass(frozen=True)
class Plasma:
    omega_p: float

    def __post_init__(self):
        _positive("omega_p", self.omega_p)

    def eps_iw(self, xi):
        return 1.0 + self.omega_p**2 / xi**2


@dataclass(frozen=True)
class LorentzOscillator:
    """Single undamped oscillator: ``1 + (eps_static - 1) / (1 + xi^2 / omega_res^2)``."""

    eps_static: float
    omega_res: float

    def __post_init__(self):
        _positive("omega_res", self.omega_res)
        if not (math.isfinite(self.eps_static) and self.eps_static > 1.0):
            raise ValueError(f"eps_static must exceed 1, got {self.eps_static!r}")

    def eps_iw(self, xi):
        return 1.0 + (self.eps_static - 1.0) / (1.0 + (xi / self.omega_res) ** 2)


@dataclass(frozen=True)
class DrudeSmith:
    """Drude-Smith response truncated after the first backscattering term.

    On the imaginary axis ``omega = i xi`` the permittivity is real::

        eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma)) * (1 + c1 gamma / (xi + gamma))

    With ``c1 = -1`` it stays finite as ``xi -> 0`` (limit ``1 + omega_p^2/gamma^2``),
    i.e. no DC conduction.
    """

    params: DrudeSmithParams

    @classmethod
    def from_values(cls, omega_p, gamma, c1=0.0):
        return cls(DrudeSmithParams(omega_p, gamma, c1))

    @property
    def omega_p(self):
        return self.params.omega_p

    @property
    def gamma(self):
        return self.params.gamma

    @property
    def c1(self):
        return self.params.c1

    def eps_iw(self, xi):
        p = self.params
        xg = xi + p.gamma
        return 1.0 + p.omega_p**2 / (xi * xg) * (1.0 + p.c1 * p.gamma / xg)


@dataclass(frozen=True)
class Constant:
    """Dispersionless medium; ``eps = 1`` is vacuum."""

    eps: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.eps) and self.eps >= 1.0):
            raise ValueError(f"eps must be finite and >= 1, got {self.eps!r}")

    def eps_iw(self, xi):
        return np.full_like(np.asarray(xi, dtype=float), self.eps)[()]


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal mirror, ``eps = +inf`` at every frequency."""

    def eps_iw(self, xi):
        return np.full_like(np.asarray(xi, dtype=float), np.inf)[()]


DielectricModel = Union[Drude, Plasma, LorentzOscillator, DrudeSmith, Constant, PerfectConductor]


def epsilon_iw(model: DielectricModel, xi):
    """Permittivity of ``model`` at imaginary frequency ``i xi`` (xi in OMEGA0 units).

    Accepts scalars or arrays; every ``xi`` must be strictly positive.
    """
    xi_arr = np.asarray(xi, dtype=float)
    if not np.all(xi_arr > 0):
        raise ValueError("xi must be > 0; the DC point is a separate limit")
    return model.eps_iw(xi_arr if xi_arr.ndim else float(xi_arr))


def conductivity_drude_smith(params: DrudeSmithParams, omega):
    """Complex conductivity ``sigma(omega)`` in units of ``OMEGA0 / (4 pi)`` scaled Gaussian units.

    ``sigma = omega_p^2 / (4 pi (gamma - i omega)) * (1 + c1 gamma / (gamma - i omega))``
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("omega must be >= 0")
    g = params.gamma - 1j * omega
    sigma = params.omega_p**2 / (4.0 * np.pi * g) * (1.0 + params.c1 * params.gamma / g)
    return sigma[()] if sigma.ndim == 0 else sigma


def dc_conductivity_ratio(params: DrudeSmithParams) -> float:
    """``sigma(0) / sigma_Drude(0) = 1 + c1``.

    Summed in decimal so that tabulated coefficients give the tabulated ratio
    (``1 + (-0.7)`` is 0.3, not 0.30000000000000004).
    """
    return float(Decimal(1) + Decimal(repr(float(params.c1))))


@dataclass(frozen=True)
class FilmRecord:
    """One row of the measured thin-gold parameter table, stored as printed."""

    thickness_nm: float
    omega_p_1e15: float  # plasma frequency in 1e15 s^-1
    tau_fs: float
    c1: float
    dc_ratio: float

    @property
    def omega_p(self) -> float:
        return self.omega_p_1e15 * 1e15 / OMEGA0

    @property
    def gamma(self) -> float:
        return tau_fs_to_gamma(self.tau_fs)

    @property
    def params(self) -> DrudeSmithParams:
        return DrudeSmithParams(self.omega_p, self.gamma, self.c1)

    def model(self) -> DrudeSmith:
        return DrudeSmith(self.params)


_TABLE1 = (
    FilmRecord(20.0, 13.19, 18.0, 0.0, 1.0),
    FilmRecord(15.0, 10.05, 19.0, 0.0, 1.0),
    FilmRecord(10.0, 6.28, 19.0, 0.0, 1.0),
    FilmRecord(6.4, 1.25, 80.0, -0.7, 0.3),
    FilmRecord(4.0, 1.88, 20.0, -1.0, 0.0),
)


def table1_registry() -> list[FilmRecord]:
    """Best-fit Drude-Smith parameters for thermally evaporated Au films on Si."""
    return list(_TABLE1)


def film_record(thickness_nm: float) -> FilmRecord:
    for rec in _TABLE1:
        if math.isclose(rec.thickness_nm, thickness_nm, rel_tol=1e-9, abs_tol=0.0):
            return rec
    known = ", ".join(f"{r.thickness_nm:g}" for r in _TABLE1)
    raise RegistryError(f"no film of thickness {thickness_nm:g} nm (known: {known})")


def bulk_gold() -> Drude:
    """Drude gold with the thickest-film (bulk-like) parameters."""
    rec = _TABLE1[0]
    return Drude(rec.omega_p, rec.gamma)


SILICON_EPS_STATIC = 11.87
SILICON_OMEGA_RES = 0.66


def silicon(eps_static: float = SILICON_EPS_STATIC, omega_res: float = SILICON_OMEGA_RES) -> LorentzOscillator:
    return LorentzOscillator(eps_static, omega_res)


# --- JSON material files -----------------------------------------------------
#
# {"materials": {"<name>": {"model": "drude", "omega_p_per_s": 1.319e16, "tau_fs": 18}, ...}}
#
# Frequencies take an explicit unit suffix: ``_per_s`` (s^-1) or ``_w0`` (OMEGA0
# multiples).  Damping may be given as ``gamma_*`` or as ``tau_fs``.

_MODEL_NAMES = {
    "drude": Drude,
    "plasma": Plasma,
    "lorentz": LorentzOscillator,
    "drude_smith": DrudeSmith,
    "constant": Constant,
    "perfect_conductor": PerfectConductor,
}


def _frequency(spec: dict, key: str, *, required=True):
    if f"{key}_w0" in spec:
        return float(spec[f"{key}_w0"])
    if f"{key}_per_s" in spec:
        return float(spec[f"{key}_per_s"]) / OMEGA0
    if required:
        raise ValueError(f"missing '{key}_w0' or '{key}_per_s'")
    return None


def _damping(spec: dict):
    gamma = _frequency(spec, "gamma", required=False)
    if gamma is not None:
        return gamma
    if "tau_fs" in spec:
        return tau_fs_to_gamma(float(spec["tau_fs"]))
    raise ValueError("missing 'gamma_w0', 'gamma_per_s' or 'tau_fs'")


def model_from_dict(spec: dict) -> DielectricModel:
    kind = spec.get("model")
    if kind not in _MODEL_NAMES:
        raise ValueError(f"unknown model type {kind!r}; expected one of {sorted(_MODEL_NAMES)}")
    if kind == "drude":
        return Drude(_frequency(spec, "omega_p"), _damping(spec))
    if kind == "plasma":
        return Plasma(_frequency(spec, "omega_p"))
    if kind == "lorentz":
        return LorentzOscillator(float(spec["eps_static"]), _frequency(spec, "omega_res"))
    if kind == "drude_smith":
        return DrudeSmith.from_values(_frequency(spec, "omega_p"), _damping(spec), float(spec.get("c1", 0.0)))
    if kind == "constant":
        return Constant(float(spec.get("eps", 1.0)))
    return PerfectConductor()


def model_to_dict(model: DielectricModel) -> dict:
    """Inverse of :func:`model_from_dict`, in OMEGA0 units (exact round trip)."""
    if isinstance(model, Drude):
        return {"model": "drude", "omega_p_w0": model.omega_p, "gamma_w0": model.gamma}
    if isinstance(model, Plasma):
        return {"model": "plasma", "omega_p_w0": model.omega_p}
    if isinstance(model, LorentzOscillator):
        return {"model": "lorentz", "eps_static": model.eps_static, "omega_res_w0": model.omega_res}
    if isinstance(model, DrudeSmith):
        return {"model": "drude_smith", "omega_p_w0": model.omega_p, "gamma_w0": model.gamma, "c1": model.c1}
    if isinstance(model, Constant):
        return {"model": "constant", "eps": model.eps}
    if isinstance(model, PerfectConductor):
        return {"model": "perfect_conductor"}
    raise TypeError(f"not a dielectric model: {model!r}")


def default_materials() -> dict[str, DielectricModel]:
    mats: dict[str, DielectricModel] = {"au_bulk": bulk_gold(), "si": silicon(), "vacuum": Constant(1.0)}
    for rec in _TABLE1:
        mats[f"au_film_{rec.thickness_nm:g}nm"] = rec.model()
    return mats


def load_materials(path, base: dict | None = None) -> dict[str, DielectricModel]:
    """Read a JSON material file and merge it over ``base`` (defaults if None)."""
    with Path(path).open() as fh:
        data = json.load(fh)
    entries = data.get("materials", data) if isinstance(data, dict) else None
    if not isinstance(entries, dict):
        raise ValueError(f"{path}: expected an object mapping names to model specs")
    mats = dict(default_materials() if base is None else base)
    for name, spec in entries.items():
        try:
            mats[name] = model_from_dict(spec)
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"{path}: material {name!r}: {exc}") from exc
    return mats
