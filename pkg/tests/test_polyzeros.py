import numpy as np
import pytest

from zplab import polyzeros as pz
from zplab.errors import DomainError

from helpers import set_distance


class TestArcConfig:
    def test_quarter_arc_16(self):
        cfg = pz.build_arc_config(16, 0.0, np.pi / 2)
        assert cfg.degree == 16
        assert cfg.angles[0] == 0.0
        assert cfg.angles[-1] == pytest.approx(np.pi / 2, abs=0)
        spacings = np.diff(cfg.angles)
        assert np.allclose(spacings, np.pi / 30, rtol=0, atol=1e-15)

    def test_periodic_fourth_roots(self):
        cfg = pz.build_arc_config(4, 0.0, 2 * np.pi, "periodic")
        assert np.allclose(cfg.angles, [0, np.pi / 2, np.pi, 3 * np.pi / 2])
        assert cfg.periodic

    def test_two_point_arc(self):
        cfg = pz.build_arc_config(2, 0.0, np.pi)
        assert np.allclose(cfg.angles, [0.0, np.pi])

    def test_degree_one(self):
        cfg = pz.build_arc_config(1, 0.3, 0.9)
        assert cfg.angles.tolist() == [0.3]

    def test_bad_arc_rejected(self):
        with pytest.raises(DomainError):
            pz.build_arc_config(4, 1.0, 1.0)
        with pytest.raises(DomainError):
            pz.build_arc_config(4, 2.0, 1.0)

    def test_regeneration_is_bit_identical(self):
        a = pz.build_arc_config(33, 0.1, 2.2).angles
        b = pz.build_arc_config(33, 0.1, 2.2).angles
        assert np.array_equal(a, b)


class TestPolyFromConfig:
    def test_z2_minus_1(self):
        p = pz.poly_from_config(pz.build_arc_config(2, 0.0, np.pi))
        assert np.allclose(p.coefficients, [-1, 0, 1], atol=1e-15)

    def test_z4_minus_1(self):
        p = pz.poly_from_config(pz.build_arc_config(4, 0.0, 2 * np.pi, "periodic"))
        assert np.allclose(p.coefficients, [-1, 0, 0, 0, 1], atol=1e-14)

    def test_quarter_arc_constant_term(self):
        p = pz.poly_from_config(pz.build_arc_config(16, 0.0, np.pi / 2))
        assert abs(abs(p.coefficients[0]) - 1.0) < 1e-9

    def test_monic_exactly(self):
        for n in (2, 7, 63, 200):
            p = pz.poly_from_config(pz.build_arc_config(n, 0.0, 1.0))
            assert p.coefficients[-1] == 1.0

    def test_residual_at_configured_roots(self):
        # absolute bound holds while coefficients stay O(1); the scale-aware
        # bound is the type contract for clustered configurations
        for n in (5, 12, 24):
            cfg = pz.build_arc_config(n, 0.0, np.pi / 2)
            p = pz.poly_from_config(cfg)
            res = np.max(np.abs(p(cfg.roots())))
            assert res < 1e-8 * (n + 1)
        for n in (101, 301):
            cfg = pz.build_arc_config(n, 0.0, np.pi / 2)
            p = pz.poly_from_config(cfg)
            res = np.max(np.abs(p(cfg.roots())))
            scale = np.max(np.abs(p.coefficients))
            assert res < 1e-8 * (n + 1) * scale


class TestDifferentiate:
    def test_z2_minus_1(self):
        d = pz.differentiate(pz.Polynomial([-1.0, 0.0, 1.0]))
        assert np.allclose(d.coefficients, [0.0, 2.0], atol=0)

    def test_z4_minus_1(self):
        d = pz.differentiate(pz.Polynomial([-1.0, 0.0, 0.0, 0.0, 1.0]))
        assert np.allclose(d.coefficients, [0.0, 0.0, 0.0, 4.0], atol=0)

    def test_constant_is_degenerate(self):
        d = pz.differentiate(pz.Polynomial([3.5]))
        assert d.degenerate


class TestFindRoots:
    def test_linear(self):
        cl = pz.find_roots(pz.Polynomial([0.0, 2.0]))
        assert len(cl) == 1 and cl[0].center == 0.0 and cl[0].multiplicity == 1

    def test_triple_root_cluster(self):
        cl = pz.find_roots(pz.Polynomial([0.0, 0.0, 0.0, 4.0]))
        assert len(cl) == 1
        assert cl[0].multiplicity == 3
        assert abs(cl[0].center) < 1e-12

    def test_quarter_arc_derivative_gauss_lucas(self):
        p = pz.poly_from_config(pz.build_arc_config(16, 0.0, np.pi / 2))
        cl = pz.find_roots(pz.differentiate(p), tol=1e-9)
        roots = pz.expand_clusters(cl)
        assert roots.size == 15
        assert np.max(np.abs(roots)) <= 1.0 + 1e-9

    def test_residual_postcondition(self):
        cfg = pz.build_arc_config(12, 0.1, 2.5)
        p = pz.poly_from_config(cfg)
        tol = 1e-9
        for cl in pz.find_roots(p, tol=tol):
            scale = np.max(np.abs(p.coefficients))
            assert abs(p(cl.center)) <= tol * scale * (p.degree + 1)

    def test_degree_zero_rejected(self):
        with pytest.raises(DomainError):
            pz.find_roots(pz.Polynomial([1.0]))

    def test_scale_invariance(self):
        # well-spread configuration: root conditioning stays O(1), so the
        # re-rounding introduced by the scale factor stays far below 1e-10
        # (clustered arcs amplify coefficient rounding by the root condition
        # number and cannot meet this bound in float64)
        coeffs = pz.poly_from_config(pz.build_arc_config(12, 0.2, 5.8)).coefficients
        a = pz.find_roots(pz.Polynomial(coeffs))
        b = pz.find_roots(pz.Polynomial(coeffs * (2.3 - 1.1j)))
        d = max(abs(x.center - y.center) for x, y in zip(a, b))
        assert d < 1e-10


class TestCriticalPoints:
    def test_degree_two_midpoint(self):
        a, b = np.exp(0.3j), np.exp(1.9j)
        cl = pz.critical_points(np.array([a, b]))
        assert len(cl) == 1
        assert abs(cl[0].center - (a + b) / 2) < 1e-12

    def test_matches_coefficient_route_small_degree(self):
        # the two root-finding routes agree while coefficients stay well
        # conditioned; beyond degree ~25 the coefficient route degrades
        rng = np.random.default_rng(11)
        for _ in range(10):
            n = int(rng.integers(3, 21))
            ang = np.sort(rng.uniform(0, 2 * np.pi, n))
            if np.min(np.diff(ang)) < 1e-3:
                continue
            cfg = pz.ZeroConfiguration(angles=ang, degree=n)
            mine = pz.config_critical_points(cfg)
            other = pz.expand_clusters(
                pz.find_roots(pz.differentiate(pz.poly_from_config(cfg)), tol=1e-9))
            assert set_distance(mine, other) < 5e-6

    def test_gauss_lucas_random_configs(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 1000:
            n = int(rng.integers(3, 65))
            ang = np.sort(rng.uniform(0, 2 * np.pi, n))
            if np.min(np.diff(ang)) < 1e-7:
                continue
            cp = pz.config_critical_points(pz.ZeroConfiguration(angles=ang, degree=n))
            assert cp.size == n - 1
            assert np.max(np.abs(cp)) <= 1.0 + 1e-9
            checked += 1

    def test_rotation_equivariance(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            n = int(rng.integers(3, 65))
            ang = np.sort(rng.uniform(0, 2 * np.pi, n))
            if np.min(np.diff(ang)) < 1e-5:
                continue
            phi = float(rng.uniform(0.1, 6.0))
            cp = pz.config_critical_points(pz.ZeroConfiguration(angles=ang, degree=n))
            rotated = np.sort(np.mod(ang + phi, 2 * np.pi))
            if np.min(np.diff(rotated)) <= 0:
                continue
            cp2 = pz.config_critical_points(pz.ZeroConfiguration(angles=rotated, degree=n))
            assert set_distance(cp * np.exp(1j * phi), cp2) <= 1e-8

    def test_conjugation_symmetry(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            half = np.sort(rng.uniform(1e-3, np.pi - 1e-3, int(rng.integers(2, 32))))
            ang = np.sort(np.concatenate([half, 2 * np.pi - half]))
            if np.min(np.diff(ang)) < 1e-5:
                continue
            cp = pz.config_critical_points(pz.ZeroConfiguration(angles=ang, degree=ang.size))
            assert set_distance(np.conj(cp), cp) <= 1e-8

    def test_root_count_conservation(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(2, 80))
            ang = np.sort(rng.uniform(0, 2 * np.pi, n))
            if n > 1 and np.min(np.diff(ang)) < 1e-6:
                continue
            clusters = pz.critical_points(np.exp(1j * ang))
            assert sum(c.multiplicity for c in clusters) == n - 1


class TestUnroll:
    def test_point_on_circle(self):
        (u,) = pz.unroll(np.array([np.exp(1j * 1.0)]), 16)
        assert u.theta == pytest.approx(1.0, abs=1e-15)
        assert u.display_height == pytest.approx(0.0, abs=1e-12)

    def test_unit_display_height(self):
        r = 1.0 - 1.0 / (2 * np.pi * 16)
        (u,) = pz.unroll(np.array([r + 0j]), 16)
        assert u.display_height == pytest.approx(1.0, rel=1e-12)

    def test_origin(self):
        (u,) = pz.unroll(np.array([0j]), 5)
        assert u.normalized_radial == 5.0
        assert u.display_height == pytest.approx(10 * np.pi, rel=1e-15)

    def test_display_height_consistency(self):
        rng = np.random.default_rng(3)
        pts = rng.uniform(0.2, 1.0, 50) * np.exp(1j * rng.uniform(0, 2 * np.pi, 50))
        for u in pz.unroll(pts, 64):
            assert u.display_height == pytest.approx(2 * np.pi * u.normalized_radial, rel=1e-12)


class TestGapLambdas:
    def test_periodic_full_circle(self):
        for n in (4, 17, 100):
            cfg = pz.build_arc_config(n, 0.0, 2 * np.pi, "periodic")
            lam = pz.poly_gap_lambdas(cfg)
            assert lam.size == n
            assert np.allclose(lam, 2 * np.pi, rtol=1e-12)

    def test_quarter_arc_101(self):
        lam = pz.poly_gap_lambdas(pz.build_arc_config(101, 0.0, np.pi / 2))
        assert lam.size == 100
        assert np.allclose(lam, 101 * (np.pi / 2) / 100, rtol=1e-12)
        assert lam[0] == pytest.approx(1.5865, abs=5e-4)

    def test_two_points(self):
        lam = pz.poly_gap_lambdas(pz.build_arc_config(2, 0.0, np.pi / 2))
        assert lam.size == 1
        assert lam[0] == pytest.approx(np.pi, rel=1e-15)

    def test_degree_one_rejected(self):
        with pytest.raises(DomainError):
            pz.poly_gap_lambdas(pz.build_arc_config(1, 0.0, 1.0))


class TestRadialLambdas:
    def test_origin_root(self):
        lam = pz.poly_radial_lambdas(np.array([0j]), 3)
        assert lam[0] == 3.0

    def test_circle_root(self):
        lam = pz.poly_radial_lambdas(np.array([np.exp(2.1j)]), 9)
        assert lam[0] == pytest.approx(0.0, abs=1e-12)

    def test_quarter_arc_501_small_radial_distance(self):
        # the normalized gap stays near pi/2 while the radial statistic
        # collapses; 0.024 observed at calibration, 0.5 is the frozen bound
        cfg = pz.build_arc_config(501, 0.0, np.pi / 2)
        lam_gap = pz.poly_gap_lambdas(cfg)
        lam_rad = pz.poly_radial_lambdas(pz.config_critical_points(cfg), 501, sort=True)
        assert lam_rad[0] <= 0.5
        assert lam_rad[0] >= -1e-6
        assert np.min(lam_gap) > 1.5
