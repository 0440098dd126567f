"""Curve generators for the thin-gold-film study, with CSV round-tripping.

Each generator returns :class:`CurveData` whose ``meta`` holds every input
needed to rebuild it bit for bit via :func:`regenerate`.  Frequencies on the
abscissa are in OMEGA0 units; separations and thicknesses in nm.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import materials
from .lifshitz import ConvergenceError, LayeredStack, QuadratureSpec, casimir_force
from .materials import DielectricModel, Drude, Plasma, epsilon_iw, film_record, model_from_dict, model_to_dict
from .optics import percent_diff_at_k
from .parallel import ordered_map
from .units import OMEGA0, nm_to_internal

__all__ = [
    "CurveData",
    "log_grid",
    "fig1_normalized_epsilon",
    "fig2_low_freq_epsilon",
    "fig3_eta_vs_separation",
    "fig4_eta_vs_thickness",
    "fig5_delta_percent",
    "crossings",
    "regenerate",
    "write_curves",
]

TABLE1_THICKNESSES = (20.0, 15.0, 10.0, 6.4, 4.0)
FIG1_GRID = (1e-4, 1e3, 200)
FIG2_GRID = (1e-6, 1e-1, 200)
FIG3_L_NM = (100.0, 1000.0, 46)
FIG5_GRID = (1e-4, 1e3, 200)


@dataclass
class CurveData:
    label: str
    x: np.ndarray
    y: np.ndarray
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("x must be strictly increasing")

    def __eq__(self, other):
        if not isinstance(other, CurveData):
            return NotImplemented
        return (
            self.label == other.label
            and self.meta == other.meta
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
        )

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"# label={self.label}\n")
        for key, value in self.meta.items():
            out.write(f"# {key}={value}\n")
        out.write("x,y\n")
        for xv, yv in zip(self.x, self.y):
            out.write(f"{xv:.17g},{yv:.17g}\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CurveData":
        meta = {}
        xs, ys = [], []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key] = value
            elif line and line != "x,y":
                xv, yv = line.split(",")
                xs.append(float(xv))
                ys.append(float(yv))
        label = meta.pop("label")
        return cls(label, np.array(xs), np.array(ys), meta)

    @property
    def filename(self) -> str:
        return f"{self.meta.get('figure', 'curve')}_{self.label}.csv"


def write_curves(curves, directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for curve in curves:
        path = directory / curve.filename
        path.write_text(curve.to_csv())
        paths.append(path)
    return paths


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), n)


# -- grid and meta encoding ---------------------------------------------------

def _grid(spec) -> tuple[np.ndarray, str]:
    """Accept ``(lo, hi, n)`` for a log grid, or explicit values."""
    if isinstance(spec, tuple) and len(spec) == 3 and isinstance(spec[2], int):
        lo, hi, n = spec
        return log_grid(lo, hi, n), f"log:{lo!r}:{hi!r}:{n}"
    values = np.asarray(spec, dtype=float)
    return values, "list:" + ";".join(repr(float(v)) for v in values)


def _linear(spec) -> tuple[np.ndarray, str]:
    if isinstance(spec, tuple) and len(spec) == 3 and isinstance(spec[2], int):
        lo, hi, n = spec
        return np.linspace(lo, hi, n), f"lin:{lo!r}:{hi!r}:{n}"
    return _grid(spec)


def _parse_grid(text: str):
    kind, _, rest = text.partition(":")
    if kind in ("log", "lin"):
        lo, hi, n = rest.split(":")
        return (float(lo), float(hi), int(n))
    return [float(v) for v in rest.split(";")]


def _model_meta(model: DielectricModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True)


def _spec_meta(spec: QuadratureSpec) -> dict[str, str]:
    return {"rel_tol": repr(spec.rel_tol), "abs_tol": repr(spec.abs_tol), "max_refinements": str(spec.max_refinements)}


def _label(d_nm: float) -> str:
    return f"d{d_nm:g}nm"


# -- dielectric-function figures ---------------------------------------------

def fig1_normalized_epsilon(thicknesses=TABLE1_THICKNESSES, grid=FIG1_GRID) -> list[CurveData]:
    """Film permittivity divided by bulk Drude gold, both at ``i xi``."""
    xi, grid_meta = _grid(grid)
    bulk = materials.bulk_gold()
    eps_bulk = epsilon_iw(bulk, xi)
    curves = []
    for d in thicknesses:
        model = film_record(d).model()
        meta = {
            "figure": "fig1",
            "grid": grid_meta,
            "thickness_nm": repr(float(d)),
            "film": _model_meta(model),
            "normalizer": _model_meta(bulk),
            "omega0_per_s": repr(OMEGA0),
            "x": "xi [omega0]",
            "y": "eps_film(i xi) / eps_bulk_drude(i xi)",
        }
        curves.append(CurveData(_label(d), xi, epsilon_iw(model, xi) / eps_bulk, meta))
    return curves


def fig2_low_freq_epsilon(grid=FIG2_GRID) -> list[CurveData]:
    """Un-normalized permittivity of the 6.4 nm and 4 nm films at low ``xi``."""
    xi, grid_meta = _grid(grid)
    if xi.max() > 0.1:
        raise ValueError("low-frequency grid must stay within xi <= 0.1 omega0")
    curves = []
    for d in (6.4, 4.0):
        model = film_record(d).model()
        meta = {
            "figure": "fig2",
            "grid": grid_meta,
            "thickness_nm": repr(d),
            "film": _model_meta(model),
            "omega0_per_s": repr(OMEGA0),
            "x": "xi [omega0]",
            "y": "eps_film(i xi)",
        }
        curves.append(CurveData(_label(d), xi, epsilon_iw(model, xi), meta))
    return curves


def crossings(a: CurveData, b: CurveData) -> np.ndarray:
    """Abscissae where ``a.y - b.y`` changes sign (linear interpolation in log x)."""
    if not np.array_equal(a.x, b.x):
        raise ValueError("curves must share their grid")
    diff = a.y - b.y
    idx = np.nonzero(np.sign(diff[:-1]) * np.sign(diff[1:]) < 0)[0]
    lx = np.log(a.x)
    frac = diff[idx] / (diff[idx] - diff[idx + 1])
    return np.exp(lx[idx] + frac * (lx[idx + 1] - lx[idx]))


# -- force figures ---------------------------------------------------------------

def _stack(d_nm, L_nm, body1, substrate):
    rec = film_record(d_nm)
    return LayeredStack.from_nm(body1, rec.model(), rec.thickness_nm, substrate, L_nm)


def _eta_points(points, spec, body1, substrate, threads):
    def one(point):
        d, L = point
        try:
            return casimir_force(_stack(d, L, body1, substrate), spec).eta
        except ConvergenceError as exc:
            raise ConvergenceError(f"d={d:g} nm, L={L:g} nm: {exc}", exc.result) from exc

    return ordered_map(one, points, threads)


def _force_meta(figure, spec, body1, substrate):
    return {
        "figure": figure,
        "body1": _model_meta(body1),
        "substrate": _model_meta(substrate),
        "omega0_per_s": repr(OMEGA0),
        **_spec_meta(spec),
    }


def fig3_eta_vs_separation(
    thicknesses=TABLE1_THICKNESSES,
    L_grid=FIG3_L_NM,
    spec: QuadratureSpec = QuadratureSpec(),
    body1: DielectricModel | None = None,
    substrate: DielectricModel | None = None,
    threads: int | None = None,
) -> list[CurveData]:
    """Reduction factor against separation (nm), one curve per film thickness."""
    body1 = materials.bulk_gold() if body1 is None else body1
    substrate = materials.silicon() if substrate is None else substrate
    L_nm, grid_meta = _linear(L_grid)
    if np.any(np.diff(L_nm) <= 0):
        raise ValueError("L_grid must be increasing")
    points = [(d, L) for d in thicknesses for L in L_nm]
    etas = np.array(_eta_points(points, spec, body1, substrate, threads)).reshape(len(thicknesses), len(L_nm))
    curves = []
    for d, row in zip(thicknesses, etas):
        meta = _force_meta("fig3", spec, body1, substrate)
        meta.update(grid=grid_meta, thickness_nm=repr(float(d)), x="L [nm]", y="eta")
        curves.append(CurveData(_label(d), L_nm, row, meta))
    return curves


def fig4_eta_vs_thickness(
    L: float = 400.0,
    thicknesses=TABLE1_THICKNESSES,
    spec: QuadratureSpec = QuadratureSpec(),
    body1: DielectricModel | None = None,
    substrate: DielectricModel | None = None,
    threads: int | None = None,
) -> CurveData:
    """Reduction factor against film thickness at fixed separation ``L`` (nm)."""
    body1 = materials.bulk_gold() if body1 is None else body1
    substrate = materials.silicon() if substrate is None else substrate
    ds = sorted(float(d) for d in thicknesses)
    etas = _eta_points([(d, L) for d in ds], spec, body1, substrate, threads)
    meta = _force_meta("fig4", spec, body1, substrate)
    meta.update(L_nm=repr(float(L)), thicknesses=";".join(repr(d) for d in ds), x="d [nm]", y="eta")
    return CurveData(f"L{L:g}nm", np.array(ds), np.array(etas), meta)


# -- optical length figure ------------------------------------------------------

def fig5_delta_percent(d: float = 6.4, grid=FIG5_GRID, ck_over_w0: float = 1.0) -> list[CurveData]:
    """Percent optical-length difference of Drude and plasma films against Drude-Smith.

    The comparison models reuse the film's own ``omega_p`` (and ``gamma``), so
    only the backscattering term differs.
    """
    xi, grid_meta = _grid(grid)
    rec = film_record(d)
    film = rec.model()
    thickness = nm_to_internal(rec.thickness_nm)
    refs = {"drude": Drude(rec.omega_p, rec.gamma), "plasma": Plasma(rec.omega_p)}
    curves = []
    for name, ref in refs.items():
        meta = {
            "figure": "fig5",
            "grid": grid_meta,
            "thickness_nm": repr(float(d)),
            "ck_over_w0": repr(float(ck_over_w0)),
            "film": _model_meta(film),
            "reference": _model_meta(ref),
            "omega0_per_s": repr(OMEGA0),
            "x": "xi [omega0]",
            "y": "100 |delta - delta_ref| / delta [%]",
        }
        y = percent_diff_at_k(xi, ck_over_w0, film, ref, thickness)
        curves.append(CurveData(name, xi, y, meta))
    return curves


# -- regeneration -----------------------------------------------------------------

def _spec_from_meta(meta) -> QuadratureSpec:
    return QuadratureSpec(
        rel_tol=float(meta["rel_tol"]), abs_tol=float(meta["abs_tol"]), max_refinements=int(meta["max_refinements"])
    )


def regenerate(meta: dict[str, str], label: str, threads: int | None = None) -> CurveData:
    """Recompute the curve described by ``meta``/``label`` from scratch."""
    fig = meta["figure"]
    if fig == "fig1":
        curves = fig1_normalized_epsilon([float(meta["thickness_nm"])], _parse_grid(meta["grid"]))
    elif fig == "fig2":
        curves = fig2_low_freq_epsilon(_parse_grid(meta["grid"]))
    elif fig == "fig3":
        curves = fig3_eta_vs_separation(
            [float(meta["thickness_nm"])],
            _parse_grid(meta["grid"]),
            _spec_from_meta(meta),
            model_from_dict(json.loads(meta["body1"])),
            model_from_dict(json.loads(meta["substrate"])),
            threads,
        )
    elif fig == "fig4":
        curves = [
            fig4_eta_vs_thickness(
                float(meta["L_nm"]),
                [float(v) for v in meta["thicknesses"].split(";")],
                _spec_from_meta(meta),
                model_from_dict(json.loads(meta["body1"])),
                model_from_dict(json.loads(meta["substrate"])),
                threads,
            )
        ]
    elif fig == "fig5":
        curves = fig5_delta_percent(float(meta["thickness_nm"]), _parse_grid(meta["grid"]), float(meta["ck_over_w0"]))
    else:
        raise ValueError(f"unknown figure {fig!r}")
    for curve in curves:
        if curve.label == label:
            return curve
    raise ValueError(f"{fig} has no curve labelled {label!r}")
