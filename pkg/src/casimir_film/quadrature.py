"""Adaptive tensor-product Gauss-Kronrod (7/15) cubature over the positive quadrant.

Both axes are mapped from ``t in (0, 1)`` by ``x = s t / (1 - t)``.  The unit
square is covered by rectangular panels; each panel is integrated with a
15 x 15 Kronrod rule, and the error along each axis is the difference with
the rule that uses the embedded 7-point Gauss rule on that axis.  Panels are
bisected along their worse axis until the summed error meets the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Gauss-Kronrod 15-point abscissae/weights on [-1, 1] (non-negative half).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class CubatureResult:
    value: float
    error: float
    evaluations: int
    rounds: int
    converged: bool
    panels: int


def map_unit(t, scale):
    """``x = s t / (1 - t)`` and its Jacobian ``s / (1 - t)^2``."""
    one_minus = 1.0 - t
    return scale * t / one_minus, scale / (one_minus * one_minus)


def _evaluate(f, panels, sx, sy):
    """Kronrod value and per-axis error of every panel (rows: x0, x1, y0, y1)."""
    hx = 0.5 * (panels[:, 1] - panels[:, 0])
    hy = 0.5 * (panels[:, 3] - panels[:, 2])
    tx = 0.5 * (panels[:, 0] + panels[:, 1])[:, None] + hx[:, None] * NODES
    ty = 0.5 * (panels[:, 2] + panels[:, 3])[:, None] + hy[:, None] * NODES
    x, jx = map_unit(tx, sx)
    y, jy = map_unit(ty, sy)
    vals = f(x[:, :, None], y[:, None, :])
    vals = vals * (jx * hx[:, None])[:, :, None] * (jy * hy[:, None])[:, None, :]
    along_y_k = vals @ KRONROD_WEIGHTS  # (n, 15) indexed by x node
    along_y_g = vals @ GAUSS_WEIGHTS
    kk = along_y_k @ KRONROD_WEIGHTS
    gk = along_y_k @ GAUSS_WEIGHTS
    kg = along_y_g @ KRONROD_WEIGHTS
    return kk, np.abs(kk - gk), np.abs(kk - kg)


def integrate_quadrant(f, scale_x, scale_y, *, rel_tol=1e-6, abs_tol=0.0, max_refinements=20, initial=(4, 4)):
    """Integrate ``f(x, y)`` over ``x, y in (0, inf)``.

    ``f`` must broadcast: it receives ``x`` of shape ``(n, 15, 1)`` and ``y``
    of shape ``(n, 1, 15)``.  ``max_refinements`` bounds the number of
    bisection rounds.  Panel sums use ``math.fsum`` so the result does not
    depend on panel order.
    """
    ex = np.linspace(0.0, 1.0, initial[0] + 1)
    ey = np.linspace(0.0, 1.0, initial[1] + 1)
    panels = np.array([(ex[i], ex[i + 1], ey[j], ey[j + 1]) for i in range(initial[0]) for j in range(initial[1])])
    vals, err_x, err_y = _evaluate(f, panels, scale_x, scale_y)
    n_evals = 225 * len(panels)

    rounds = 0
    while True:
        total = math.fsum(vals)
        err = err_x + err_y
        total_err = math.fsum(err)
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol or rounds >= max_refinements:
            break
        if not np.isfinite(total_err):
            raise FloatingPointError("non-finite integrand value encountered")
        # worst panels first, until what is left untouched fits in half the budget
        order = np.argsort(-err, kind="stable")
        remaining = total_err - np.cumsum(err[order])
        n_split = int(np.searchsorted(-remaining, -0.5 * tol)) + 1
        chosen = np.sort(order[:n_split])
        keep = np.ones(len(panels), dtype=bool)
        keep[chosen] = False

        parents = panels[chosen]
        split_x = err_x[chosen] >= err_y[chosen]
        left = parents.copy()
        right = parents.copy()
        mid_x = 0.5 * (parents[:, 0] + parents[:, 1])
        mid_y = 0.5 * (parents[:, 2] + parents[:, 3])
        left[split_x, 1] = mid_x[split_x]
        right[split_x, 0] = mid_x[split_x]
        left[~split_x, 3] = mid_y[~split_x]
        right[~split_x, 2] = mid_y[~split_x]
        children = np.concatenate([left, right])
        c_vals, c_ex, c_ey = _evaluate(f, children, scale_x, scale_y)
        n_evals += 225 * len(children)

        panels = np.concatenate([panels[keep], children])
        vals = np.concatenate([vals[keep], c_vals])
        err_x = np.concatenate([err_x[keep], c_ex])
        err_y = np.concatenate([err_y[keep], c_ey])
        rounds += 1

    return CubatureResult(
        value=total,
        error=total_err,
        evaluations=n_evals,
        rounds=rounds,
        converged=bool(total_err <= tol),
        panels=len(panels),
    )
