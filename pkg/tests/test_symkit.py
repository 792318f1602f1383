import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from gkcoh.symkit import (
    Partition,
    SymFunc,
    character_value,
    class_size,
    enumerate_partitions,
    kostka,
    parse_schur_text,
    powersum_to_schur,
    schur_text,
    schur_to_powersum,
    specht_dim,
    symfunc_mul,
)


def brute_partitions(n):
    # all compositions of n, sorted into partitions
    out = set()
    for cuts in itertools.product([0, 1], repeat=max(n - 1, 0)):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        if n:
            parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def count_standard_tableaux(lam):
    # remove a corner box in every possible way
    lam = tuple(lam)
    if sum(lam) <= 1:
        return 1
    total = 0
    for i, p in enumerate(lam):
        if p and (i + 1 == len(lam) or lam[i + 1] < p):
            smaller = tuple(q for q in lam[:i] + (p - 1,) + lam[i + 1:] if q)
            total += count_standard_tableaux(smaller)
    return total


class TestPartitions:
    def test_zero_has_the_empty_partition(self):
        assert enumerate_partitions(0) == [Partition(())]

    @pytest.mark.parametrize("n, count", [(4, 5), (6, 11)])
    def test_counts_match_brute_force(self, n, count):
        parts = enumerate_partitions(n)
        assert len(parts) == count
        assert set(map(tuple, parts)) == brute_partitions(n)

    def test_reverse_lexicographic_order(self):
        parts = [tuple(p) for p in enumerate_partitions(7)]
        assert parts == sorted(parts, reverse=True)

    def test_invalid_parts_rejected(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))

    @pytest.mark.parametrize("text, parts", [("2,1,1,1", (2, 1, 1, 1)), ("2,1^3", (2, 1, 1, 1)), ("1^4", (1, 1, 1, 1)), ("", ())])
    def test_parse(self, text, parts):
        assert Partition.parse(text) == Partition(parts)

    @given(st.integers(0, 9).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
    def test_conjugate_is_an_involution(self, lam):
        assert lam.conjugate().conjugate() == lam
        assert lam.conjugate().size == lam.size


class TestSpechtDim:
    def test_sign_representation(self):
        assert specht_dim((1,) * 6) == 1

    def test_hook_length_example(self):
        assert specht_dim((2, 1, 1, 1)) == 4

    def test_hook_shape_in_sixteen_letters(self):
        assert specht_dim((2,) + (1,) * 14) == 15

    @pytest.mark.parametrize("n", range(1, 9))
    def test_standard_tableaux_oracle(self, n):
        for lam in enumerate_partitions(n):
            assert specht_dim(lam) == count_standard_tableaux(lam)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_sum_of_squares(self, n):
        assert sum(specht_dim(lam) ** 2 for lam in enumerate_partitions(n)) == factorial(n)


class TestCharacters:
    def test_trivial_representation(self):
        for mu in enumerate_partitions(5):
            assert character_value((5,), mu) == 1

    def test_sign_of_a_transposition(self):
        assert character_value((1, 1), (2,)) == -1

    def test_identity_gives_dimension(self):
        assert character_value((2, 1), (1, 1, 1)) == 2

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            character_value((2, 1), (2,))

    @pytest.mark.parametrize("n", range(1, 11))
    def test_value_at_identity_is_dimension(self, n):
        for lam in enumerate_partitions(n):
            assert character_value(lam, (1,) * n) == specht_dim(lam)

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.sampled_from(enumerate_partitions(n)), st.sampled_from(enumerate_partitions(n)))))
    def test_orthogonality(self, pair):
        lam, nu = pair
        n = lam.size
        inner = sum(character_value(lam, mu) * character_value(nu, mu) * class_size(mu) for mu in enumerate_partitions(n))
        assert inner == (factorial(n) if lam == nu else 0)

    def test_kostka_identity(self):
        # K_{lam,1^n} counts standard tableaux
        for lam in enumerate_partitions(6):
            assert kostka(lam, (1,) * 6) == specht_dim(lam)
            assert kostka(lam, lam) == 1


class TestSymFunc:
    def test_products(self):
        p1, p2 = SymFunc.p(1), SymFunc.p(2)
        assert symfunc_mul(p1, p1) == SymFunc.p(1, 1)
        assert p2 * p1 == SymFunc.p(2, 1)
        assert (p1 + p2) * p1 == SymFunc.p(1, 1) + SymFunc.p(2, 1)

    def test_schur_of_small_power_sums(self):
        assert powersum_to_schur(SymFunc.p(1)) == {Partition((1,)): 1}
        assert powersum_to_schur(SymFunc.p(1, 1)) == {Partition((2,)): 1, Partition((1, 1)): 1}
        assert powersum_to_schur(SymFunc.p(2)) == {Partition((2,)): 1, Partition((1, 1)): -1}

    def test_nonhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            powersum_to_schur(SymFunc.p(1) + SymFunc.p(2, 1))

    @given(
        st.integers(0, 6).flatmap(
            lambda n: st.dictionaries(
                st.sampled_from(enumerate_partitions(n)),
                st.fractions(min_value=-20, max_value=20, max_denominator=12),
                max_size=6,
            )
        )
    )
    def test_schur_round_trip(self, coeffs):
        f = SymFunc(coeffs)
        if not f:
            return
        assert schur_to_powersum(powersum_to_schur(f)) == f

    @given(st.integers(1, 6).flatmap(lambda n: st.dictionaries(st.sampled_from(enumerate_partitions(n)), st.integers(-30, 30), max_size=5)))
    def test_schur_text_round_trip(self, coeffs):
        coeffs = {k: Fraction(v) for k, v in coeffs.items() if v}
        assert parse_schur_text(schur_text(coeffs)) == coeffs

    def test_text_form(self):
        assert schur_text({Partition((2, 1)): -4, Partition((3,)): -2}) == "-4s_{2,1} - 2s_{3}"
        assert schur_text({Partition(()): 14}) == "14s_{}"
        assert schur_text({}) == "0"
