"""The nine acceptance criteria, each at its stated tolerance."""

import math

import numpy as np
import pytest

from nehari_kit import cli
from nehari_kit.bounds import bound_for, default_rays, dominance_scan, psi_on_ray
from nehari_kit.catalog import (
    a_k_core, catalog_lookup, make_A_k, make_F0, make_F1, make_F2,
)
from nehari_kit.classes import PI2_OVER_2, ClassSpec
from nehari_kit.hypergeom import (
    HypParams, hyp2f1, hyp2f1_derivative, u_jet, w_ratio_n1,
)
from nehari_kit.jets import Jet3, atanh
from nehari_kit.john import JOHN_EVIDENCE, FAILS, limsup_estimate, ratio_sweep, ratio_test
from nehari_kit.plotdata import mutual_intersections, read_polylines_csv, self_intersections
from nehari_kit.riccati import RiccatiIVP, closed_form, integrate
from nehari_kit.schwarzian import PolarGrid, class_membership, is_declared_member

RADII = (0.1, 0.3, 0.5, 0.7, 0.9)
FIXED = ("identity", "koebe", "strip_f1", "twoslit_f2", "halfplane_g1", "koebe_g2",
         "cor28", "mobius_disk")


def _disk_points(n, r_max, seed):
    rng = np.random.default_rng(seed)
    r = r_max * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def _class_ks():
    """(variant, alpha) -> k values: {0.5, 1, 2} where admissible plus the endpoints."""
    return {
        ("N", 2): (0.5, 1.0, 2.0),
        ("N", 0): (0.5, 1.0, 2.0, PI2_OVER_2),
        ("N", 1): (0.5, 1.0, 2.0, 4.0),
        ("M", 2): (0.5, 1.0, 2.0),
    }


EXTREMAL = {("N", 2): make_A_k, ("M", 2): make_F0, ("N", 0): make_F1, ("N", 1): make_F2}


def _catalog_population():
    entries = [catalog_lookup(n) for n in FIXED]
    for (variant, alpha), ks in _class_ks().items():
        entries += [EXTREMAL[(variant, alpha)](k) for k in ks]
    entries += [make_A_k(k) for k in (0.0, 1.5, 1.9, 1.99)]
    entries += [make_F0(0.0)]
    return entries


def test_criterion_1_riccati_cross_check(acceptance):
    with acceptance.criterion(1, "Riccati integration vs closed form < 1e-7 on [0, 0.9]") as d:
        cases = [(0, PI2_OVER_2, "N"), (0, 1, "N"), (1, 4, "N"), (1, 2, "N"), (2, 2, "N"),
                 (2, 1, "N"), (2, 0.5, "N"), (2, 0, "M"), (2, 1, "M")]
        x = np.linspace(0.0, 0.9, 181)
        worst = 0.0
        for alpha, k, variant in cases:
            ivp = RiccatiIVP(alpha, k, variant, 0.9)
            if variant == "M":
                assert ivp.w0 == pytest.approx(math.sqrt(4 - 2 * k), abs=1e-15)
            err = float(np.max(np.abs(integrate(ivp, x).w - closed_form(ivp)(x))))
            worst = max(worst, err)
            assert err < 1e-7, (alpha, k, variant, err)
        d["text"] = f"max error {worst:.3g}"


def test_criterion_2_hypergeometric_identities(acceptance):
    with acceptance.criterion(2, "hypergeometric identities, derivative, ODE residual") as d:
        z = _disk_points(100, 0.9, 2)
        lin = hyp2f1(HypParams(-1, 0.5, 0.5), z * z)
        assert np.max(np.abs(lin - (1 - z * z))) < 1e-12
        log = hyp2f1(HypParams(1, 1, 2), z)
        assert np.max(np.abs(log + np.log(1 - z) / z)) < 1e-12
        h = 1e-5
        p = HypParams(0.3, -0.7, 1.2)
        zz = _disk_points(50, 0.85, 3)
        fd = (hyp2f1(p, zz + h) - hyp2f1(p, zz - h)) / (2 * h)
        fd_err = float(np.max(np.abs(fd - hyp2f1_derivative(p, zz))))
        assert fd_err < 1e-6
        res = 0.0
        for k in (1, 2, 4):
            u = u_jet(k, z)
            res = max(res, float(np.max(np.abs(u.f2 + k * u.f0 / (2 * (1 - z * z))))))
        assert res < 1e-8
        d["text"] = f"fd error {fd_err:.3g}, ODE residual {res:.3g}"


def test_criterion_3_sharp_bound_attainment(acceptance):
    with acceptance.criterion(3, "extremals attain |T(r)| = w(r) within 1e-9") as d:
        r = np.array(RADII)
        worst = 0.0
        for (variant, alpha), ks in _class_ks().items():
            for k in ks:
                spec = ClassSpec(alpha, k, variant)
                f = EXTREMAL[(variant, alpha)](k)
                err = float(np.max(np.abs(psi_on_ray(f, 0.0, r) - bound_for(spec)(r))))
                worst = max(worst, err)
                assert err < 1e-9, (spec.label, err)
        d["text"] = f"max gap {worst:.3g}"


def test_criterion_4_dominance(acceptance):
    with acceptance.criterion(4, "catalog members dominated on 16 rays x 50 radii") as d:
        population = _catalog_population()
        rays = default_rays(16)
        worst, scans = math.inf, 0
        for (variant, alpha), ks in _class_ks().items():
            for k in ks:
                spec = ClassSpec(alpha, k, variant)
                members = [f for f in population if is_declared_member(f, spec)]
                assert members, spec.label
                for f in members:
                    radii = np.linspace(0.0, min(0.95, f.max_radius), 50)
                    rep = dominance_scan(f, spec, rays, radii)
                    worst = min(worst, rep.min_margin)
                    scans += 1
                    assert rep.dominated, (f.name, f.params, spec.label, rep.min_margin)
        strip = catalog_lookup("strip_f1")
        tau = np.linspace(0.0, 0.95, 50)
        gap = bound_for(ClassSpec(2, 2))(tau) - psi_on_ray(strip, 0.0, tau)
        assert np.all(gap < 1e-9) and np.all(gap > -1e-9)
        d["text"] = f"{scans} scans, worst margin {worst:.3g}, strip gap {np.max(np.abs(gap)):.3g}"


def test_criterion_5_degeneracy_continuity(acceptance):
    with acceptance.criterion(5, "A_k fallback matches the strip map; seam agreement") as d:
        z = _disk_points(200, 0.9, 5)
        strip = 0.5 * np.log((1 + z) / (1 - z))
        a2 = make_A_k(2.0)(z)
        err_strip = float(np.max(np.abs(a2 - strip)))
        assert err_strip < 1e-8
        # just inside the fallback region
        k_near = 2 * (1 - 0.5e-4 ** 2)
        err_near = float(np.max(np.abs(make_A_k(k_near)(z) - strip)))
        assert err_near < 1e-8
        t = atanh(Jet3.variable(z))
        seam = 0.0
        for beta in (1e-4 * (1 - 1e-9), 1e-4, 1e-4 * (1 + 1e-9)):
            a = a_k_core(t, beta, "tanh")
            b = a_k_core(t, beta, "series")
            for c1, c2 in zip(a.components, b.components):
                seam = max(seam, float(np.max(np.abs(c1 - c2))))
        assert seam < 1e-10
        d["text"] = f"fallback {max(err_strip, err_near):.3g}, seam {seam:.3g}"


def test_criterion_6_n1_collapse(acceptance):
    with acceptance.criterion(6, "N1(4) collapse and radial maximality of w") as d:
        r = np.linspace(0.0, 0.9, 181)
        err = float(np.max(np.abs(w_ratio_n1(4, r) - 4 * r / (1 - r * r))))
        assert err < 1e-9
        pts = PolarGrid(40, 40, 0.9).points()
        worst = -math.inf
        for k in (1, 2, 4):
            excess = np.abs(w_ratio_n1(k, pts)) - np.real(w_ratio_n1(k, np.abs(pts)))
            worst = max(worst, float(np.max(excess)))
        assert worst <= 1e-10
        d["text"] = f"collapse {err:.3g}, max excess {worst:.3g}"


def test_criterion_7_john_criteria(acceptance):
    with acceptance.criterion(7, "John ratio test and limsup estimates") as d:
        ident = catalog_lookup("identity")
        for x in (0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
            assert abs(ratio_test(ident, x).sup_ratio - (1 - x * x)) <= 1e-12
        strip = catalog_lookup("strip_f1")
        for x in (0.1, 0.5, 0.9):
            rep = ratio_test(strip, x)
            assert abs(rep.sup_ratio - 1) <= 1e-9
            assert rep.verdict == FAILS
        assert ratio_sweep(strip).verdict == FAILS
        assert ratio_sweep(catalog_lookup("mobius_disk")).verdict == JOHN_EVIDENCE
        lim_id = limsup_estimate(ident).limit
        lim_strip = limsup_estimate(strip).limit
        lim_f0 = limsup_estimate(make_F0(1.0)).limit
        assert abs(lim_id) <= 1e-9
        assert abs(lim_strip - 2) <= 0.05
        assert abs(lim_f0 - (2 + math.sqrt(2))) <= 0.05
        spec = ClassSpec(2, 2)
        candidates = [catalog_lookup(n) for n in FIXED]
        candidates += [make_A_k(k) for k in (0.0, 0.5, 1.0, 1.5, 1.9, 1.99, 2.0)]
        checked = []
        for f in candidates:
            if f.bounded and is_declared_member(f, spec) and ratio_sweep(f).verdict == JOHN_EVIDENCE:
                lim = limsup_estimate(f).limit
                checked.append(lim)
                assert lim < 2 - 1e-3, (f.name, f.params, lim)
        assert len(checked) >= 6
        d["text"] = (f"limsup identity {lim_id:.3g}, strip {lim_strip:.5f}, F0 {lim_f0:.5f}, "
                     f"max bounded N2(2) {max(checked):.5f}")


def test_criterion_8_membership_scanner(acceptance):
    with acceptance.criterion(8, "declared memberships confirmed; koebe rejected") as d:
        count = 0
        for f in _catalog_population():
            for spec in f.declared_classes:
                rep = class_membership(f, spec, tol=1e-8)
                assert rep.member, (f.name, f.params, spec.label, rep.sup_value, rep.normalization_ok)
                count += 1
        rep = class_membership(catalog_lookup("koebe"), ClassSpec(2, 2), tol=1e-8)
        assert not rep.member
        assert rep.witness == 0
        assert rep.sup_value >= 6 - 1e-9
        d["text"] = f"{count} memberships, koebe sup {rep.sup_value:.15g}"


@pytest.mark.parametrize("name,k", [("F0", "1"), ("F1", "pi^2/2"), ("F2", "4")])
def test_criterion_9_figure_data(acceptance, tmp_path, name, k):
    with acceptance.criterion(9, f"plotdata rays simple for {name}(k={k})") as d:
        out = tmp_path / f"{name}.csv"
        code = cli.main(["plotdata", "--map", name, "--k", k, "--rings", "8", "--rays", "16",
                         "--output", str(out)])
        assert code == 0
        lines = read_polylines_csv(out)
        rays = [v["points"] for v in lines.values() if v["kind"] == "ray"]
        assert len(rays) == 16 and len(lines) == 24
        assert all(self_intersections(p) == 0 for p in rays)
        mutual = sum(mutual_intersections(rays[i], rays[j])
                     for i in range(len(rays)) for j in range(i + 1, len(rays)))
        assert mutual == 0
        d["text"] = f"{len(rays)} rays, 0 crossings"
