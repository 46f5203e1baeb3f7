import math

import numpy as np
import pytest

from nehari_kit.bounds import bound_for, default_rays, dominance_scan, psi_on_ray
from nehari_kit.catalog import catalog_lookup, make_F1
from nehari_kit.classes import PI2_OVER_2, ClassSpec
from nehari_kit.errors import PreconditionError
from nehari_kit.riccati import RiccatiIVP, integrate

R = np.linspace(0.0, 0.9, 91)

SPECS = [ClassSpec(2, k) for k in (0.5, 1, 2)] + \
        [ClassSpec(0, k) for k in (0.5, 2, PI2_OVER_2)] + \
        [ClassSpec(1, k) for k in (0.5, 2, 4)] + \
        [ClassSpec(2, k, "M") for k in (0, 1, 2)]


def test_profile_examples():
    assert bound_for(ClassSpec(2, 2))(0.5) == pytest.approx(4 / 3, abs=1e-14)
    assert bound_for(ClassSpec(2, 0, "M"))(0.0) == pytest.approx(2)
    assert bound_for(ClassSpec(0, PI2_OVER_2))(0.5) == pytest.approx(math.pi, abs=1e-14)
    assert bound_for(ClassSpec(1, 4))(0.5) == pytest.approx(8 / 3, abs=1e-14)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label)
def test_profiles_monotone_and_start_at_w0(spec):
    w = bound_for(spec)(R)
    assert np.all(np.diff(w) > 0)
    assert w[0] == pytest.approx(spec.f2_at_zero, abs=1e-15)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label)
def test_profile_matches_integrator(spec):
    ivp = RiccatiIVP(spec.alpha, spec.k, spec.variant, 0.9)
    assert np.max(np.abs(integrate(ivp, R).w - bound_for(spec)(R))) < 1e-7


def test_k_zero_collapse():
    for alpha in (0, 1, 2):
        assert np.max(np.abs(bound_for(ClassSpec(alpha, 0))(R))) < 1e-12


def test_continuity_at_k_two():
    diff = bound_for(ClassSpec(2, 2 - 1e-6))(R) - bound_for(ClassSpec(2, 2))(R)
    assert np.max(np.abs(diff)) < 1e-4


def test_domain_check():
    with pytest.raises(ValueError):
        bound_for(ClassSpec(2, 1))(1.0)


def test_dominance_examples():
    radii = np.linspace(0, 0.95, 50)
    rep = dominance_scan(catalog_lookup("identity"), ClassSpec(2, 2), default_rays(), radii)
    assert rep.dominated and np.allclose(rep.scans[0].margins, bound_for(ClassSpec(2, 2))(radii))
    strip = dominance_scan(catalog_lookup("strip_f1"), ClassSpec(2, 2), [0.0], radii)
    assert strip.dominated and abs(strip.min_margin) < 1e-9
    f1 = dominance_scan(make_F1(PI2_OVER_2), ClassSpec(0, PI2_OVER_2), [0.0], radii)
    assert f1.dominated and abs(f1.min_margin) < 1e-9


def test_dominance_rejects_nonmember():
    with pytest.raises(PreconditionError):
        dominance_scan(catalog_lookup("koebe"), ClassSpec(2, 2), [0.0], [0.1, 0.2])


def test_psi_on_ray_matches_closed_form():
    tau = np.array([0.2, 0.6])
    assert np.allclose(psi_on_ray(catalog_lookup("strip_f1"), 0.0, tau), 2 * tau / (1 - tau ** 2))
