"""Counting-estimate report: exact ingredients, frozen n=100 values."""

from fractions import Fraction

import mpmath
import pytest

from soficperm import heuristic as hr
from soficperm import perm as pm


def close(x, text, tol="1e-9"):
    return abs(x - mpmath.mpf(text)) < mpmath.mpf(tol)


class TestReport:
    def test_count_is_the_exact_count(self):
        rep = hr.heuristic_report(8, 4, 0, 0)
        assert rep.count == pm.count_order_dividing(8, 4) == 6224

    def test_log_identities(self):
        rep = hr.heuristic_report(30, 4, "1/100", "1/100")
        assert close(rep.log_PK, rep.log_P + rep.log_K)
        assert close(rep.log_P, mpmath.ln(rep.count) - rep.log_factorial)
        # log K = (2 eps + eps') n ln n
        want = mpmath.mpf(3) / 100 * 30 * mpmath.ln(30)
        assert close(rep.log_K, want)

    def test_frozen_n100(self):
        rep = hr.heuristic_report(100, 4, "1/100", "1/100")
        assert rep.pk_model_coeff == Fraction(-11, 50)
        assert close(rep.asymptotic_ratio, "0.763401424", "1e-8")
        assert close(rep.log_factorial, "363.73937555556347", "1e-9")
        assert close(rep.log_P, "-86.06021826", "1e-7")
        assert close(rep.log_K, "13.81551055796", "1e-9")
        assert rep.log_PK < 0
        assert 0.65 <= rep.asymptotic_ratio <= 0.85

    def test_model_term(self):
        rep = hr.heuristic_report(100, 4, "1/100", "1/100")
        want = mpmath.mpf(-22) / 100 * 100 * mpmath.ln(100)
        assert close(rep.log_PK_model, want)

    def test_coefficient_sign_flips_with_eps(self):
        tight = hr.heuristic_report(20, 4, "1/100", "1/100")
        loose = hr.heuristic_report(20, 4, "1/5", "1/5")
        assert tight.pk_model_coeff < 0 < loose.pk_model_coeff

    def test_k_enters_model_coefficient(self):
        rep2 = hr.heuristic_report(20, 2, "1/100", "1/100")
        assert rep2.pk_model_coeff == Fraction(3, 100) - Fraction(1, 2)

    def test_ratio_drifts_toward_one_minus_one_over_k(self):
        r_small = hr.heuristic_report(20, 2, 0, 0).asymptotic_ratio
        r_big = hr.heuristic_report(400, 2, 0, 0).asymptotic_ratio
        assert abs(r_big - mpmath.mpf("0.5")) < abs(r_small - mpmath.mpf("0.5"))


class TestValidation:
    def test_bounds(self):
        with pytest.raises(ValueError):
            hr.heuristic_report(0, 4, 0, 0)
        with pytest.raises(ValueError):
            hr.heuristic_report(10, 1, 0, 0)
        with pytest.raises(ValueError):
            hr.heuristic_report(10, 4, "-1/10", 0)

    def test_practicality_cap(self):
        with pytest.raises(ValueError):
            hr.heuristic_report(6000, 4, 0, 0)
        assert hr.heuristic_report(60, 4, 0, 0, max_n=60).n == 60

    def test_precision_is_carried(self):
        rep = hr.heuristic_report(100, 4, 0, 0)
        # 200-bit values survive printing well past double precision
        text = mpmath.nstr(rep.log_factorial, 40)
        assert len(text.replace("-", "").replace(".", "")) >= 35
