import math

import numpy as np
import pytest

from casimir_film import lifshitz as lf
from casimir_film import materials as m
from casimir_film.units import nm_to_internal
from oracles import ideal_integral, trapezoid_integral

SPEC = lf.QuadratureSpec()


def half_spaces(a, b, L_nm=400.0):
    return lf.LayeredStack.half_spaces(a, b, nm_to_internal(L_nm))


def test_ideal_pressure_one_micron():
    # hbar c = 3.16153e-26 J m
    assert lf.ideal_casimir_pressure(1e-6) == pytest.approx(3.16153e-26 * math.pi**2 / 240 / 1e-24, rel=1e-5)
    assert lf.ideal_casimir_pressure(1e-6) == pytest.approx(1.300e-3, rel=1e-3)


def test_ideal_pressure_scaling():
    p1 = lf.ideal_casimir_pressure(1e-6)
    assert lf.ideal_casimir_pressure(1e-7) == pytest.approx(1e4 * p1, rel=1e-14)
    assert lf.ideal_casimir_pressure(2e-7) / lf.ideal_casimir_pressure(1e-7) == pytest.approx(1 / 16, rel=1e-15)
    with pytest.raises(ValueError):
        lf.ideal_casimir_pressure(0.0)


def test_integrand_vacuum_body_vanishes():
    xi, Q = np.meshgrid(np.logspace(-3, 1, 20), np.logspace(-3, 1, 20))
    st = half_spaces(m.Constant(1.0), m.bulk_gold())
    assert np.all(lf.integrand(st, xi, Q) == 0.0)
    st = half_spaces(m.bulk_gold(), m.Constant(1.0))
    assert np.all(lf.integrand(st, xi, Q) == 0.0)


def test_integrand_perfect_mirrors():
    st = half_spaces(m.PerfectConductor(), m.PerfectConductor())
    xi, Q = 0.02, 0.03
    k = math.hypot(xi, Q)
    e = math.exp(-2 * k * st.gap)
    assert lf.integrand(st, xi, Q) == pytest.approx(Q * k * 2 * e / (1 - e), rel=1e-14)


def test_integrand_exponential_cutoff():
    st = lf.default_stack(6.4, 400.0)
    Q = 400.0 / st.gap
    assert lf.integrand(st, 1e-3, Q) == 0.0


def test_integrand_domain():
    st = lf.default_stack(6.4, 400.0)
    with pytest.raises(ValueError):
        lf.integrand(st, 0.0, 1.0)


def test_stack_validation():
    with pytest.raises(ValueError):
        lf.LayeredStack(m.bulk_gold(), m.bulk_gold(), 1.0, m.silicon(), 0.0)
    with pytest.raises(ValueError):
        lf.LayeredStack(m.bulk_gold(), m.bulk_gold(), -1.0, m.silicon(), 1.0)


@pytest.mark.parametrize("kwargs", [{"rel_tol": 0.0}, {"rel_tol": 0.1}, {"max_refinements": 0}, {"transform": "tanh"}])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        lf.QuadratureSpec(**kwargs)


def test_perfect_mirrors_eta_one():
    res = lf.casimir_force(half_spaces(m.PerfectConductor(), m.PerfectConductor()), SPEC)
    assert res.eta == pytest.approx(1.0, abs=2 * SPEC.rel_tol)


def test_plasma_approaches_ideal():
    etas = [lf.reduction_factor(half_spaces(m.Plasma(wp), m.Plasma(wp)), SPEC) for wp in (10.0, 100.0, 1000.0)]
    assert etas[-1] > 0.98
    assert etas[0] < etas[1] < etas[2] < 1.0


def test_zero_thickness_is_substrate_half_space(si, bulk_au):
    film = m.film_record(10.0).model()
    thin = lf.casimir_force(lf.LayeredStack(bulk_au, film, 0.0, si, nm_to_internal(400)), SPEC)
    bare = lf.casimir_force(half_spaces(bulk_au, si), SPEC)
    assert thin.pressure == pytest.approx(bare.pressure, rel=SPEC.rel_tol)


def test_error_estimate_within_tolerance():
    res = lf.casimir_force(lf.default_stack(20.0, 400.0), SPEC)
    assert res.est_error <= SPEC.rel_tol * res.pressure
    assert res.evaluations > 0


def test_adaptive_matches_oracle_d20(si, bulk_au):
    L = nm_to_internal(400.0)
    rec = m.film_record(20.0)
    ref = trapezoid_integral(
        ("drude", (bulk_au.omega_p, bulk_au.gamma)),
        ("drude_smith", (rec.omega_p, rec.gamma, rec.c1)),
        nm_to_internal(20.0),
        ("lorentz", (si.eps_static, si.omega_res)),
        L,
        n=2048,
    ) / ideal_integral(L)
    assert 0 < ref < 1
    assert lf.reduction_factor(lf.default_stack(20.0, 400.0), SPEC) == pytest.approx(ref, rel=1e-4)


def test_variable_change_equivalence():
    st = lf.default_stack(6.4, 400.0)
    tight = lf.QuadratureSpec(rel_tol=1e-9)
    a = lf.casimir_force(st, tight)
    b = lf.casimir_integral_kq(st, tight)
    assert b.pressure == pytest.approx(a.pressure, rel=1e-6)


def test_drude_smith_c0_equals_drude_through_pipeline(si):
    rec = m.film_record(15.0)
    L = nm_to_internal(400.0)
    ds = lf.LayeredStack(m.bulk_gold(), m.DrudeSmith.from_values(rec.omega_p, rec.gamma, 0.0), nm_to_internal(15), si, L)
    dr = lf.LayeredStack(m.bulk_gold(), m.Drude(rec.omega_p, rec.gamma), nm_to_internal(15), si, L)
    assert lf.reduction_factor(ds, SPEC) == pytest.approx(lf.reduction_factor(dr, SPEC), rel=1e-10)


def test_body_exchange_symmetry(bulk_au):
    film = m.film_record(6.4).model()
    st = half_spaces(bulk_au, film)
    assert lf.reduction_factor(st.swapped(), SPEC) == pytest.approx(lf.reduction_factor(st, SPEC), rel=1e-10)
    with pytest.raises(ValueError):
        lf.default_stack(6.4, 400.0).swapped()


def test_doubling_refinement_budget_within_error():
    st = lf.default_stack(4.0, 100.0)
    a = lf.casimir_force(st, lf.QuadratureSpec(max_refinements=20))
    b = lf.casimir_force(st, lf.QuadratureSpec(max_refinements=40))
    assert abs(a.pressure - b.pressure) <= a.est_error


def test_convergence_error_carries_estimate():
    st = lf.default_stack(6.4, 400.0)
    with pytest.raises(lf.ConvergenceError) as info:
        lf.casimir_force(st, lf.QuadratureSpec(rel_tol=1e-12, max_refinements=1))
    best = info.value.result
    assert best.eta == pytest.approx(lf.reduction_factor(st, SPEC), rel=1e-4)
    assert best.est_error > 1e-12 * best.pressure


@pytest.mark.parametrize("d", [20.0, 15.0, 10.0, 6.4, 4.0])
def test_eta_increases_with_separation(d):
    etas = [lf.reduction_factor(lf.default_stack(d, L), SPEC) for L in np.linspace(100, 1000, 19)]
    assert np.all(np.diff(etas) > 0)
    assert 0 < etas[0] and etas[-1] < 1


def test_thickness_minimum_at_percolation():
    etas = {d: lf.reduction_factor(lf.default_stack(d, 400.0), SPEC) for d in (20.0, 15.0, 10.0, 6.4, 4.0)}
    assert min(etas, key=etas.get) == 6.4
    assert max(etas, key=etas.get) == 20.0
