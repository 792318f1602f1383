from fractions import Fraction
import math

import pytest

from gkcoh.euler15 import (
    E_ell,
    ScopeError,
    X_ell,
    asymptotic_constants,
    asymptotic_estimate,
    chi_table,
    default_caps,
    generating_series,
    lambda_ell,
    log_U,
    max_ell,
)
from gkcoh.serieskit import Caps, TruncSeries, bernoulli
from gkcoh.symkit import Partition

CAPS = Caps(u_max=8, p_max=3)


@pytest.fixture(scope="module")
def table():
    return chi_table(16, 4)


class TestIngredients:
    def test_E(self):
        assert E_ell(1, CAPS) == TruncSeries.u_poly(CAPS, {-1: 1})
        assert E_ell(2, CAPS) == TruncSeries.u_poly(CAPS, {-2: Fraction(1, 2), -1: Fraction(-1, 2)})
        assert E_ell(4, CAPS) == TruncSeries.u_poly(CAPS, {-4: Fraction(1, 4), -2: Fraction(-1, 4)})

    def test_lambda(self):
        assert lambda_ell(1, CAPS) == TruncSeries.u_poly(CAPS, {1: 1, 2: -1})
        assert lambda_ell(2, CAPS) == TruncSeries.u_poly(CAPS, {2: 2, 4: -2})
        assert lambda_ell(3, CAPS) == TruncSeries.u_poly(CAPS, {3: 3, 6: -3})

    def test_X(self):
        m = lambda c, **kw: TruncSeries.monomial(CAPS, c, **kw)
        assert X_ell(1, True, CAPS) == m(-1, mu=(1,)) + m(1) - m(1, w=1)
        assert X_ell(1, False, CAPS) == m(-1, mu=(1,))
        half = Fraction(1, 2)
        assert X_ell(2, True, CAPS) == m(-half, mu=(2,)) + m(half, mu=(1,)) - m(half, w=2) + m(half, w=1)

    def test_log_U_vanishes_at_zero(self):
        assert not log_U(TruncSeries(CAPS), 3, CAPS)

    def test_log_U_linear_term(self):
        # l = 1: lambda_1 E_1 = 1 - u and 1/E_1 = u, so the X^1 coefficient is
        # log(1 - u) + u/2 - sum_r B_r/r u^r, i.e. -1/m - B_m/m at u^m (m >= 2)
        x = TruncSeries.monomial(CAPS, 1, w=1)
        lin = log_U(x, 1, CAPS)
        assert lin.coeff(u=0, w=1) == 0
        assert lin.coeff(u=1, w=1) == Fraction(-1, 2)
        for m in range(2, CAPS.u_max + 1):
            assert lin.coeff(u=m, w=1) == Fraction(-1, m) - bernoulli(m) / m

    def test_log_U_cap_robust(self):
        small, big = Caps(u_max=6, p_max=2), Caps(u_max=10, p_max=2)
        for ell in (1, 2, 3):
            lo = log_U(X_ell(ell, True, small), ell, small)
            hi = log_U(X_ell(ell, True, big), ell, big)
            cut = TruncSeries(small, {k: v for k, v in hi.items() if k[0] <= 6})
            assert lo == cut

    def test_negative_u_rejected(self):
        with pytest.raises(ScopeError):
            log_U(TruncSeries.monomial(CAPS, 1, u=-1), 1, CAPS)


class TestTable:
    @pytest.mark.parametrize(
        "cell, expected",
        [((11, 0), {Partition(()): 1}), ((9, 3), {Partition((1, 1, 1)): -1}), ((12, 0), {}), ((16, 0), {Partition(()): 14}), ((10, 2), {Partition((2,)): -1})],
    )
    def test_cells(self, table, cell, expected):
        assert table[cell] == expected

    def test_vanishing_range(self, table):
        for (g, n), cell in table.items():
            if 3 * g + 2 * n <= 24:
                assert cell == {}, (g, n)

    def test_stable_range_only(self, table):
        assert all(2 * g + n >= 3 for g, n in table)
        assert (1, 0) not in table and (0, 2) not in table

    def test_integer_entries(self, table):
        assert all(isinstance(c, int) for cell in table.values() for c in cell.values())

    def test_ell_bound_is_stable(self):
        base = chi_table(12, 3)
        assert chi_table(12, 3, ell_max=max_ell(14) + 10) == base

    def test_caps_are_consistent(self):
        # a bigger table restricts to the smaller one
        small = chi_table(12, 3)
        big = chi_table(14, 4)
        assert all(big[k] == v for k, v in small.items())

    def test_jobs_do_not_change_results(self):
        assert generating_series(12, 2, jobs=2) == generating_series(12, 2, jobs=1)

    def test_default_caps(self):
        assert default_caps(18, 6) == Caps(u_max=24, p_max=6, w_max=14)


class TestAsymptotics:
    def test_constants(self):
        d_ev, d_odd = asymptotic_constants()
        assert abs(d_ev - 0.498203) <= 5e-7
        assert abs(d_odd - 1.24975) <= 5e-6

    def test_tail_bound(self):
        # direct partial sums to j = 30 agree with the adaptive sums
        x = -4 * math.pi**2
        ev = -sum(x**j / (j * math.factorial(2 * j - 15) * math.factorial(14)) for j in range(8, 31))
        odd = -sum(4 * math.pi * x**j / ((2 * j + 1) * math.factorial(2 * j - 14) * math.factorial(14)) for j in range(7, 31))
        d_ev, d_odd = asymptotic_constants()
        assert abs(ev - d_ev) < 1e-8
        assert abs(odd - d_odd) < 1e-8

    def test_estimate_sign_and_ratio(self):
        for g in (20, 22, 24):
            assert math.copysign(1, asymptotic_estimate(g)) == (-1) ** (g // 2)
        g = 40
        ratio = asymptotic_estimate(g + 2) / asymptotic_estimate(g)
        assert ratio == pytest.approx(-(g) * (g - 1) / (2 * math.pi) ** 2, rel=1e-9)

    def test_estimate_scope(self):
        with pytest.raises(ScopeError):
            asymptotic_estimate(10)
