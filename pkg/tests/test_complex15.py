import pytest
from hypothesis import given, settings, strategies as st

from gkcoh.complex15 import (
    EquivCohomology,
    build_complex,
    cohomology,
    equivariant_cohomology,
    equivariant_decomposition,
    euler_schur,
    verify_vanishing,
)
from gkcoh.euler15 import chi_table
from gkcoh.exactla import check_d_squared
from gkcoh.graphcore import ScopeError
from gkcoh.symkit import Partition, specht_dim


def P(text):
    return Partition.parse(text)


class TestBuild:
    def test_twelve_zero_is_acyclic(self):
        assert cohomology("B15", 12, 0) == {}

    def test_eleven_one(self):
        assert cohomology("B15", 11, 1) == {30: 1}

    def test_ten_two(self):
        assert cohomology("B15", 10, 2) == {29: 1}

    def test_gc0_low_loop_orders(self):
        assert cohomology("GC0", loop_order=2) == {}
        assert cohomology("GC0", loop_order=3) == {6: 1}
        assert cohomology("GC0", loop_order=4) == {}

    def test_gc0_preserves_loop_order(self):
        cx = build_complex("GC0", loop_order=4)
        assert all(gr.loop_order() == 4 for v in cx.basis.values() for gr in v)
        assert all(len(gr.edges) == k for k, v in cx.basis.items() for gr in v)

    @pytest.mark.parametrize("g, n", [(9, 4), (2, 14), (7, 6)])
    def test_marked_leg_count(self, g, n):
        cx = build_complex("B15", g, n)
        assert all(len(gr.marked) >= 15 for v in cx.basis.values() for gr in v)

    def test_truncated_side_has_few_marks(self):
        cx = build_complex("C15", 1, 4, trunc=3)
        assert all(len(gr.marked) <= 2 for v in cx.basis.values() for gr in v)

    def test_bases_are_duplicate_free(self):
        cx = build_complex("B15", 9, 4)
        for k in cx.basis:
            assert len(cx.index()[k]) == len(cx.basis[k])

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            build_complex("B14", 1, 1)


D_SQUARED_CASES = [
    ("B15", 11, 1, {}),
    ("B15", 10, 3, {}),
    ("B15", 9, 4, {}),
    ("B15", 2, 14, {}),
    ("B15", 12, 0, {}),
    ("B15", 8, 5, {"colors": [1, 1, 2, 2, 3], "odd_legs": True}),
    ("C15", 1, 4, {"trunc": 3}),
    ("C15", 2, 3, {"trunc": 2}),
    ("X", 1, 3, {}),
    ("GC0", 0, 0, {"loop_order": 5}),
]


@pytest.mark.parametrize("family, g, n, kw", D_SQUARED_CASES)
def test_d_squared(family, g, n, kw):
    cx = build_complex(family, g, n, **kw)
    check_d_squared(cx.dims(), cx.diffs)
    # differentials only connect adjacent degrees
    for k, d in cx.diffs.items():
        assert d.ncols == len(cx.basis[k]) and d.nrows == len(cx.basis[k + 1])


class TestScope:
    def test_large_excess(self):
        with pytest.raises(ScopeError):
            build_complex("B15", 5, 12)
        with pytest.raises(ScopeError):
            build_complex("B15", 13, 0)

    def test_gc0_loop_ten(self):
        with pytest.raises(ScopeError):
            cohomology("GC0", loop_order=10)


class TestEquivariant:
    def test_two_fourteen(self):
        assert equivariant_cohomology("B15", 2, 14) == {17: {P("2,1^12"): 1}}

    def test_nine_four(self):
        assert equivariant_cohomology("B15", 9, 4) == {27: {P("1^4"): 1}, 28: {P("3,1"): 2}}

    def test_two_fifteen(self):
        want = {18: {P("4,1^11"): 1, P("3,2,1^10"): 1, P("3,1^12"): 1}}
        assert equivariant_cohomology("B15", 2, 15) == want

    def test_no_markings(self):
        assert equivariant_cohomology("B15", 11, 0) == {30: {Partition(()): 1}}

    def test_decomposition_of_a_built_complex(self):
        cx = build_complex("B15", 10, 2)
        assert equivariant_decomposition(cx) == {29: {P("2"): 1}}

    @settings(max_examples=12)
    @given(st.sampled_from([(10, 2), (9, 3), (11, 1), (8, 5), (10, 3), (7, 6), (1, 16), (3, 13), (9, 4)]))
    def test_integral_multiplicities(self, gn):
        g, n = gn
        eq = equivariant_cohomology("B15", g, n)
        full = cohomology("B15", g, n)
        for k, parts in eq.degrees.items():
            assert all(isinstance(m, int) and m > 0 for m in parts.values())
            assert sum(m * specht_dim(lam) for lam, m in parts.items()) == full[k]
        assert set(eq.nonzero()) == set(full)

    def test_equality_with_plain_dicts(self):
        eq = EquivCohomology({5: {P("2"): 1}, 6: {}})
        assert eq == {5: {(2,): 1}}
        assert eq.dimension(5) == 1 and eq.dimension(6) == 0


class TestVanishing:
    @pytest.mark.parametrize("g, n", [(10, 0), (1, 14), (8, 4)])
    def test_negative_budget(self, g, n):
        rep = verify_vanishing("B15", g, n)
        assert rep["generators"] == 0 and rep["cohomology"] == {}

    def test_rejects_nonnegative_budget(self):
        with pytest.raises(ValueError):
            verify_vanishing("B15", 11, 0)


@pytest.mark.parametrize("g, n, t", [(1, 3, 2), (1, 4, 2), (1, 4, 3), (2, 2, 2), (2, 3, 2), (2, 2, 3), (3, 1, 2), (2, 3, 3)])
def test_b_and_c_sides_agree(g, n, t):
    assert cohomology("B15", g, n, trunc=t, generic=True) == cohomology("C15", g, n, trunc=t)


@pytest.mark.parametrize("g, n, t", [(1, 3, 2), (2, 2, 2), (1, 4, 3), (2, 2, 3), (2, 3, 3)])
def test_catalog_enumeration_is_complete(g, n, t):
    # the low-excess catalog and the generic closure produce the same bases
    cat = build_complex("B15", g, n, trunc=t)
    gen = build_complex("B15", g, n, trunc=t, generic=True)
    keys = lambda cx: {k: set(ix) for k, ix in cx.index().items() if ix}
    assert keys(cat) == keys(gen)


@pytest.mark.parametrize("g, n", [(10, 2), (11, 1), (9, 3)])
def test_euler_characteristic_matches_generating_function(g, n):
    table = chi_table(12, 3)
    assert euler_schur(equivariant_cohomology("B15", g, n)) == table[(g, n)]
