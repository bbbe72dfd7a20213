import math

import numpy as np
import pytest

from zplab import derivzeros as dz
from zplab.errors import DomainError
from zplab.zerotable import FilterConfig

# frozen from a 40-digit Newton cross-check on zeta' (independent of the
# package evaluator); (beta', gamma') of the seven lowest derivative zeros
LOW_ZEROS = [
    (2.463162, 23.298320),
    (1.286497, 31.708250),
    (2.307570, 38.489983),
    (1.382764, 42.290965),
    (0.964686, 48.847160),
    (2.101700, 52.432161),
    (1.895960, 57.134753),
]


@pytest.fixture(scope="module")
def records_10_60(zero_table):
    return dz.find_deriv_zeros(zero_table, 10.0, 60.0)


class TestFind:
    def test_empty_range(self, zero_table):
        assert dz.find_deriv_zeros(zero_table, 50.0, 50.0) == []

    def test_low_zeros_match_reference(self, records_10_60):
        assert len(records_10_60) == len(LOW_ZEROS)
        for rec, (b, g) in zip(records_10_60, LOW_ZEROS):
            assert rec.beta_prime == pytest.approx(b, abs=2e-6)
            assert rec.gamma_prime == pytest.approx(g, abs=2e-6)

    def test_record_invariants(self, records_10_60):
        for rec in records_10_60:
            assert rec.beta_prime > 0.5
            assert rec.newton_residual < 1e-8
            assert rec.lambda_prime >= 0.0
            expected_lam = (rec.beta_prime - 0.5) * math.log(rec.gamma_prime)
            assert rec.lambda_prime == pytest.approx(expected_lam, rel=1e-12)

    def test_no_zeros_below_first(self, zero_table):
        # the lowest derivative zero sits near 23.3
        assert dz.find_deriv_zeros(zero_table, 10.0, 22.0) == []

    def test_range_validation(self, zero_table):
        with pytest.raises(DomainError):
            dz.find_deriv_zeros(zero_table, 5.0, 50.0)


class TestContour:
    def test_empty_box(self):
        assert dz.count_zeros_contour(10.0, 20.0) == 0

    def test_first_zero_box(self):
        assert dz.count_zeros_contour(22.0, 24.0) == 1

    def test_matches_newton(self, records_10_60):
        assert dz.count_zeros_contour(10.0, 60.0) == len(records_10_60)

    def test_nothing_right_of_three(self):
        # supports the search-strip right edge at Re s = 3
        assert dz.count_zeros_contour(10.0, 120.0, re_min=3.0, re_max=6.0) == 0


class TestMomentResidual:
    def test_single_zero_model(self):
        # one zero, vanishing reciprocal sum: the residual reduces to
        # |1/(1/log T + i (t - gamma))| / log T which never exceeds 1
        height = 1000.0
        for delta in (0.0, 1e-3, 0.1, 2.0):
            ld = 1.0 / (1.0 / math.log(height) + 1j * delta)
            r = dz.moment_residual_value(0.0, ld, height)
            assert r <= 1.0 + 1e-12
        assert dz.moment_residual_value(0.0, math.log(height) + 0j, height) == pytest.approx(1.0)

    def test_conjugation_invariance(self):
        height = 500.0
        a = dz.moment_residual_value(0.7, 2.3 - 1.1j, height)
        b = dz.moment_residual_value(-0.7, np.conj(2.3 - 1.1j), height)
        assert a == pytest.approx(b, rel=1e-14)

    def test_populated_on_real_records(self, records_10_60):
        for rec in records_10_60:
            assert math.isfinite(rec.moment_residual)


class TestCache:
    def test_roundtrip_and_cache_hit(self, zero_table, tmp_path):
        recs, hit = dz.cached_deriv_zeros(zero_table, 10.0, 40.0, tmp_path)
        assert not hit
        again, hit2 = dz.cached_deriv_zeros(zero_table, 10.0, 40.0, tmp_path)
        assert hit2
        assert dz.records_to_csv(again) == dz.records_to_csv(recs)

    def test_cache_key_sensitivity(self, zero_table):
        from zplab.zeta import DEFAULT_CONFIG
        cfg_f = FilterConfig(height=200.0)
        k1 = dz.cache_key("d", 10.0, 200.0, DEFAULT_CONFIG, cfg_f)
        k2 = dz.cache_key("d", 10.0, 201.0, DEFAULT_CONFIG, cfg_f)
        k3 = dz.cache_key("e", 10.0, 200.0, DEFAULT_CONFIG, cfg_f)
        assert len({k1, k2, k3}) == 3

    def test_csv_header_guard(self, zero_table):
        with pytest.raises(DomainError):
            dz.records_from_csv("bogus\n1,2,3\n", zero_table)

    def test_csv_format(self, records_10_60):
        text = dz.records_to_csv(records_10_60)
        lines = text.splitlines()
        assert lines[0] == dz.CACHE_HEADER
        assert len(lines) == len(records_10_60) + 1
        assert text.endswith("\n")
        first = lines[1].split(",")
        assert first[4] in {"1", "2", "3"}
