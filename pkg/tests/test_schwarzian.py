import math

import numpy as np
import pytest

from nehari_kit.catalog import catalog_entries, catalog_lookup, make_F0, make_F1
from nehari_kit.classes import PI2_OVER_2, ClassSpec
from nehari_kit.errors import CriticalPointError
from nehari_kit.jets import Jet3
from nehari_kit.schwarzian import (
    PolarGrid, argmax_innermost, class_membership, pre_schwarzian, pre_schwarzian_derivative,
    riccati_residual, schwarzian,
)


def test_pre_schwarzian_examples():
    assert pre_schwarzian(catalog_lookup("identity").jet(0.4)) == 0
    assert pre_schwarzian(catalog_lookup("koebe").jet(0.0)) == pytest.approx(4)
    assert pre_schwarzian(catalog_lookup("strip_f1").jet(0.5)) == pytest.approx(4 / 3, abs=1e-14)


def test_schwarzian_examples():
    for z in (0.0, 0.3 + 0.2j, -0.7j):
        assert abs(schwarzian(catalog_lookup("halfplane_g1").jet(z))) < 1e-12
        assert schwarzian(make_F1(PI2_OVER_2).jet(z)) == pytest.approx(PI2_OVER_2, abs=1e-12)
    assert schwarzian(catalog_lookup("koebe").jet(0.0)) == pytest.approx(-6)


def test_koebe_schwarzian_closed_form():
    z = np.array([0.3, 0.5j, -0.2 + 0.6j])
    s = schwarzian(catalog_lookup("koebe").jet(z))
    assert np.allclose(s, -6 / (1 - z * z) ** 2, rtol=1e-13)


def test_pre_schwarzian_derivative_identity():
    j = catalog_lookup("koebe").jet(0.3 + 0.1j)
    t = pre_schwarzian(j)
    assert pre_schwarzian_derivative(j) - 0.5 * t * t == pytest.approx(schwarzian(j))


def test_critical_point_error():
    j = Jet3(0.0, 0.0, 1.0, 0.0)
    with pytest.raises(CriticalPointError):
        pre_schwarzian(j, 0.2)


def test_mobius_invariance():
    rng = np.random.default_rng(11)
    z = 0.85 * np.sqrt(rng.uniform(size=200)) * np.exp(2j * np.pi * rng.uniform(size=200))
    base = catalog_lookup("strip_f1")
    for _ in range(3):
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        # keep the pole of the Mobius map away from f(D): c f + d = 0 needs |d/c| large
        d = d + 10 * np.sign(d.real or 1.0)
        c = 0.1 * c
        f = base.jet(z)
        g = (f * a + b) / (f * c + d)
        assert np.allclose(schwarzian(g), schwarzian(f), rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("f", catalog_entries(), ids=lambda e: e.name)
def test_riccati_residual_small(f):
    r = np.linspace(0.0, min(0.9, f.max_radius), 20)
    th = np.linspace(0.0, 2 * np.pi, 20, endpoint=False)
    pts = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
    assert np.max(riccati_residual(f, pts)) < 1e-9


def test_riccati_residual_examples():
    assert riccati_residual(catalog_lookup("identity"), 0.3) < 1e-14
    assert riccati_residual(catalog_lookup("koebe"), 0.4) < 1e-9
    assert riccati_residual(catalog_lookup("strip_f1"), 0.6j) < 1e-9


def test_polar_grid_layout():
    g = PolarGrid(8, 5, 0.9)
    pts = g.points()
    assert pts[0] == 0 and len(pts) == 1 + 8 * 4
    assert g.radii()[-1] == pytest.approx(0.9)
    assert np.all(np.diff(g.radii()) > 0)


def test_innermost_tie_break():
    vals = np.array([1.0, 1.0, 0.5])
    pts = np.array([0.5, 0.1, 0.0])
    assert argmax_innermost(vals, pts) == 1


def test_membership_examples():
    rep = class_membership(catalog_lookup("identity"), ClassSpec(2, 0))
    assert rep.member and rep.sup_value == 0
    strip = class_membership(catalog_lookup("strip_f1"), ClassSpec(2, 2))
    assert strip.member and strip.sup_value == pytest.approx(2, abs=1e-12)
    assert abs(strip.witness.imag) < 1e-12
    assert class_membership(make_F0(1.0), ClassSpec(2, 1, "M")).member


def test_koebe_rejected():
    rep = class_membership(catalog_lookup("koebe"), ClassSpec(2, 2))
    assert not rep.member
    assert rep.witness == 0 and rep.sup_value >= 6 - 1e-9
    d = rep.to_dict()
    assert d["class"] == "N2:2" and d["member"] is False


def test_f0_fails_n_normalization():
    rep = class_membership(make_F0(1.0), ClassSpec(2, 1))
    assert rep.normalization_ok == (True, True, False) and not rep.member
    assert math.isclose(rep.sup_value, 1.0, abs_tol=1e-12)
