import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from gkcoh.exactla import (
    DifferentialError,
    RankInstability,
    SparseMat,
    check_d_squared,
    cohomology_dims,
    rank_exact,
    rank_generic,
    rank_generic_report,
    rank_mod_p,
    rank_multimodular,
    random_prime,
)

a = sympy.Symbol("a")


def sympy_rank(m: SparseMat) -> int:
    rows = [[QQ(0)] * m.ncols for _ in range(m.nrows)]
    for (i, j), v in m.entries.items():
        v = Fraction(v)
        rows[i][j] = QQ(v.numerator, v.denominator)
    return DomainMatrix(rows, (m.nrows, m.ncols), QQ).rank()


def random_low_rank(rng, nr, nc, r):
    # product of random nr x r and r x nc integer matrices
    left = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(nr)]
    right = [[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(nc)] for _ in range(r)]
    return SparseMat.from_dense([[sum(left[i][k] * right[k][j] for k in range(r)) for j in range(nc)] for i in range(nr)])


matrices = st.integers(1, 9).flatmap(
    lambda nr: st.integers(1, 9).flatmap(
        lambda nc: st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=nc, max_size=nc), min_size=nr, max_size=nr)
    )
)


class TestExactRank:
    def test_zero_and_identity(self):
        assert rank_exact(SparseMat(4, 6)) == 0
        assert rank_exact(SparseMat.from_dense([[int(i == j) for j in range(5)] for i in range(5)])) == 5

    def test_random_30_by_40_against_primes(self):
        rng = random.Random(5)
        for r in (0, 7, 30):
            m = random_low_rank(rng, 30, 40, r)
            exact = rank_exact(m)
            assert exact == sympy_rank(m)
            primes = [random_prime(62, rng) for _ in range(3)]
            assert all(rank_mod_p(m, p) == exact for p in primes)

    @given(matrices)
    def test_against_sympy_and_transpose(self, rows):
        m = SparseMat.from_dense(rows)
        r = rank_exact(m)
        assert r == sympy_rank(m)
        assert r == rank_exact(m.transpose())

    @given(matrices, st.integers(0, 2**20))
    def test_multimodular_agreement(self, rows, seed):
        m = SparseMat.from_dense(rows)
        assert rank_multimodular(m, nprimes=3, seed=seed) == rank_exact(m)

    def test_small_prime_can_drop_rank(self):
        m = SparseMat.from_dense([[1, 0], [0, 7]])
        assert rank_mod_p(m, 7) == 1 and rank_exact(m) == 2

    def test_parametric_needs_generic(self):
        with pytest.raises(TypeError):
            rank_exact(SparseMat.from_dense([[a]]))

    def test_out_of_range_entry(self):
        with pytest.raises(IndexError):
            SparseMat(2, 2, {(2, 0): 1})

    def test_dump_round_trip(self):
        m = SparseMat.from_dense([[Fraction(1, 2), 0], [0, -3]])
        assert m.dump().splitlines()[0] == "2 2 2"
        assert SparseMat.load(m.dump()) == m


class TestGenericRank:
    def test_examples(self):
        assert rank_generic(SparseMat.from_dense([[a]]), {a}) == 1
        assert rank_generic(SparseMat.from_dense([[a, 1], [a, 1]])) == 1
        assert rank_generic(SparseMat.from_dense([[a, 1], [1, a]])) == 2

    def test_report(self):
        rep = rank_generic_report(SparseMat.from_dense([[a, 1], [1, a]]), trials=5, seed=3)
        primes = [p for p, _ in rep.trials]
        assert len(set(primes)) == 5 and all(p.bit_length() == 62 for p in primes)
        assert rep.failure_bound < 1e-15

    def test_instability_is_reported(self, monkeypatch):
        import gkcoh.exactla as ex

        answers = iter([1, 2, 2, 2, 2])
        monkeypatch.setattr(ex, "rank_mod_p", lambda *args, **kw: next(answers))
        with pytest.raises(RankInstability):
            ex.rank_generic_report(SparseMat.from_dense([[a, 1], [1, a]]))


class TestComplexes:
    def test_zero_differentials(self):
        assert cohomology_dims({0: 2, 1: 3}, {}) == {0: 2, 1: 3}

    def test_isomorphism_is_acyclic(self):
        assert cohomology_dims({0: 1, 1: 1}, {0: SparseMat.from_dense([[5]])}) == {0: 0, 1: 0}

    def test_d_squared_violation(self):
        d0 = SparseMat.from_dense([[1]])
        d1 = SparseMat.from_dense([[1]])
        with pytest.raises(DifferentialError):
            check_d_squared({0: 1, 1: 1, 2: 1}, {0: d0, 1: d1})

    def test_shape_check(self):
        with pytest.raises(ValueError):
            check_d_squared({0: 1, 1: 2}, {0: SparseMat(1, 1)})
