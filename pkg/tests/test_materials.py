import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir_film import materials as m
from casimir_film.units import tau_fs_to_gamma
from oracles import eps_drude_smith_complex, eps_drude_smith_exact

XI_GRID = np.logspace(-4, 3, 500)
TABLE1 = [
    (20.0, 13.19, 18.0, 0.0, 1.0),
    (15.0, 10.05, 19.0, 0.0, 1.0),
    (10.0, 6.28, 19.0, 0.0, 1.0),
    (6.4, 1.25, 80.0, -0.7, 0.3),
    (4.0, 1.88, 20.0, -1.0, 0.0),
]


def test_registry_rows_as_printed():
    rows = [(r.thickness_nm, r.omega_p_1e15, r.tau_fs, r.c1, r.dc_ratio) for r in m.table1_registry()]
    assert rows == TABLE1


@pytest.mark.parametrize("d, wp, tau, c", [(6.4, 1.25, 80, -0.7), (20, 13.19, 18, 0)])
def test_registry_lookup(d, wp, tau, c):
    rec = m.film_record(d)
    assert (rec.omega_p_1e15, rec.tau_fs, rec.c1) == (wp, tau, c)


def test_registry_lookup_missing():
    with pytest.raises(m.RegistryError):
        m.film_record(5.0)


def test_unit_conversion(film):
    assert film.omega_p == pytest.approx(film.omega_p_1e15 * 1e15 / 1e16, rel=1e-15)
    assert film.gamma == pytest.approx(1.0 / (film.tau_fs * 1e-15) / 1e16, rel=1e-15)


def test_dc_ratio_matches_table(film):
    assert m.dc_conductivity_ratio(film.params) == film.dc_ratio
    assert film.dc_ratio == m.dc_conductivity_ratio(film.params)


@pytest.mark.parametrize("c1, expected", [(0.0, 1.0), (-0.7, 0.3), (-1.0, 0.0)])
def test_dc_ratio_values(c1, expected):
    assert m.dc_conductivity_ratio(m.DrudeSmithParams(1.0, 0.01, c1)) == expected


def test_dc_ratio_from_conductivity_limit(film):
    sigma = m.conductivity_drude_smith(film.params, 1e-10)
    sigma_d0 = film.omega_p**2 / (4 * math.pi * film.gamma)
    ratio = abs(sigma) / sigma_d0
    assert ratio == pytest.approx(m.dc_conductivity_ratio(film.params), rel=1e-6, abs=1e-6)


def test_conductivity_dc_values():
    p = m.DrudeSmithParams(0.5, 0.01, 0.0)
    s0 = m.conductivity_drude_smith(p, 0.0)
    assert s0.imag == 0.0
    assert s0.real == pytest.approx(0.25 / (4 * math.pi * 0.01), rel=1e-15)
    assert m.conductivity_drude_smith(m.DrudeSmithParams(0.5, 0.01, -1.0), 0.0) == 0.0
    s07 = m.conductivity_drude_smith(m.DrudeSmithParams(0.5, 0.01, -0.7), 0.0)
    assert s07.real == pytest.approx(0.3 * s0.real, rel=1e-14)


def test_conductivity_rejects_negative_frequency():
    with pytest.raises(ValueError):
        m.conductivity_drude_smith(m.DrudeSmithParams(0.5, 0.01), -1.0)


def test_epsilon_d10_against_exact_rotation():
    rec = m.film_record(10.0)
    exact_re, exact_im = eps_drude_smith_exact(rec.omega_p, rec.gamma, rec.c1, 1.0)
    assert exact_im == 0
    assert m.epsilon_iw(rec.model(), 1.0) == pytest.approx(float(exact_re), rel=1e-15)
    assert float(exact_re) == pytest.approx(1.392, abs=5e-4)


@given(
    wp=st.floats(1e-3, 10.0),
    gamma=st.floats(1e-4, 1.0),
    c1=st.floats(-1.0, 0.0),
    xi=st.floats(1e-5, 1e3),
)
def test_rotated_form_matches_complex_substitution(wp, gamma, c1, xi):
    model = m.DrudeSmith.from_values(wp, gamma, c1)
    ref = eps_drude_smith_complex(wp, gamma, c1, 1j * xi)
    assert abs(ref.imag) <= 1e-12 * abs(ref.real)
    assert m.epsilon_iw(model, xi) == pytest.approx(ref.real, rel=1e-11)


def test_insulating_film_low_frequency_limit():
    rec = m.film_record(4.0)
    limit = 1 + rec.omega_p**2 / rec.gamma**2
    assert limit == pytest.approx(1414.76, rel=1e-6)
    assert m.epsilon_iw(rec.model(), 1e-8) == pytest.approx(limit, rel=1e-5)


def test_closed_forms():
    xi = 0.3
    assert m.epsilon_iw(m.Plasma(2.0), xi) == pytest.approx(1 + 4 / 0.09, rel=1e-15)
    assert m.epsilon_iw(m.Drude(2.0, 0.1), xi) == pytest.approx(1 + 4 / (0.3 * 0.4), rel=1e-15)
    assert m.epsilon_iw(m.LorentzOscillator(11.87, 0.66), xi) == pytest.approx(1 + 10.87 / (1 + (0.3 / 0.66) ** 2))


@pytest.mark.parametrize(
    "model",
    [m.Plasma(1.3), m.Drude(1.3, 0.005), m.DrudeSmith.from_values(0.2, 0.005, -1.0), m.LorentzOscillator(11.87, 0.66)],
    ids=repr,
)
def test_high_frequency_decay(model):
    assert abs(m.epsilon_iw(model, 1e6) - 1) < 1e-9 * 1.3**2


def test_table_models_real_monotone_and_above_one(film):
    eps = m.epsilon_iw(film.model(), XI_GRID)
    assert np.all(np.isreal(eps))
    assert np.all(eps >= 1)
    assert np.all(np.diff(eps) <= 0)


def test_bracket_factor_bound(film):
    g, c1 = film.gamma, film.c1
    bracket = 1 + c1 * g / (XI_GRID + g)
    assert np.all(bracket >= 1 + c1)
    assert 1 + c1 >= 0


def test_drude_smith_c0_is_drude(film):
    ds = m.DrudeSmith.from_values(film.omega_p, film.gamma, 0.0)
    dr = m.Drude(film.omega_p, film.gamma)
    a, b = m.epsilon_iw(ds, XI_GRID), m.epsilon_iw(dr, XI_GRID)
    assert np.all(np.abs(a - b) <= 2 * np.spacing(np.maximum(a, b)))


@pytest.mark.parametrize("xi", [0.0, -1.0, np.array([1.0, 0.0])])
def test_nonpositive_xi_rejected(xi):
    with pytest.raises(ValueError):
        m.epsilon_iw(m.Drude(1.0, 0.01), xi)


@pytest.mark.parametrize(
    "factory",
    [
        lambda: m.DrudeSmithParams(0.0, 0.1, 0.0),
        lambda: m.DrudeSmithParams(1.0, -0.1, 0.0),
        lambda: m.DrudeSmithParams(1.0, 0.1, 0.2),
        lambda: m.DrudeSmithParams(1.0, 0.1, -1.5),
        lambda: m.Plasma(-1.0),
        lambda: m.Drude(1.0, 0.0),
        lambda: m.LorentzOscillator(1.0, 0.66),
        lambda: m.LorentzOscillator(11.87, 0.0),
        lambda: m.Constant(0.5),
    ],
)
def test_invalid_parameters_rejected_at_construction(factory):
    with pytest.raises(ValueError):
        factory()


def test_json_materials_round_trip(tmp_path):
    spec = {
        "materials": {
            "au_custom": {"model": "drude", "omega_p_per_s": 1.37e16, "tau_fs": 20},
            "film_x": {"model": "drude_smith", "omega_p_w0": 0.5, "gamma_w0": 0.01, "c1": -0.3},
            "si": {"model": "lorentz", "eps_static": 11.7, "omega_res_per_s": 6.6e15},
            "mirror": {"model": "perfect_conductor"},
        }
    }
    path = tmp_path / "mats.json"
    path.write_text(json.dumps(spec))
    mats = m.load_materials(path)
    assert mats["au_custom"] == m.Drude(1.37, tau_fs_to_gamma(20))
    assert mats["film_x"] == m.DrudeSmith.from_values(0.5, 0.01, -0.3)
    assert mats["si"] == m.LorentzOscillator(11.7, 0.66)
    assert "au_bulk" in mats
    for model in mats.values():
        assert m.model_from_dict(m.model_to_dict(model)) == model


def test_json_materials_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"materials": {"x": {"model": "drude", "omega_p_w0": 1.0}}}))
    with pytest.raises(ValueError, match="'x'"):
        m.load_materials(path)
    path.write_text(json.dumps({"materials": {"x": {"model": "ghost"}}}))
    with pytest.raises(ValueError, match="unknown model"):
        m.load_materials(path)
