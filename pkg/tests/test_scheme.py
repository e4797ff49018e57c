"""Character sums, eigenvalue tables, distributions and the bound catalog."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hrds.errors import ConsistencyError
from hrds.field import field_spec, spec_for_q
from hrds.hermitian import enumerate_hermitian, zero_matrix
from hrds.scheme import (
    CharacterSum,
    bound_catalog,
    character_average,
    delsarte_check,
    eigen_column_brute,
    eigen_entry_brute,
    eigen_table,
    exact_div,
    first_rank_witness,
    form_character,
    form_value_count,
    form_value_counts,
    gaussian_binomial,
    inner_distribution,
    rank_at_most_two_bound,
    special_eigenvalue,
    valency,
)

S2 = field_spec(2, 1)
S3 = field_spec(3, 1)

# hand-checked tables, also pinned against the brute-force sums below
TABLE_2_2 = ((1, 1, 1), (5, -3, 1), (10, 2, -2))
TABLE_2_3 = ((1, 1, 1, 1), (21, -11, 5, -3), (210, 50, 2, -6), (280, -40, -8, 8))
TABLE_3_2 = ((1, 1, 1), (20, -7, 2), (60, 6, -3))


def test_exact_div():
    assert exact_div(-9, 3, "t") == -3
    with pytest.raises(ConsistencyError):
        exact_div(7, 2, "t")


class TestCharacterSum:
    def test_reduction(self):
        s = CharacterSum(3)
        s.add(0, 4)
        s.add(1, 2)
        s.add(2, 2)
        assert s.reducible() and s.value() == 2 and s.total == 8

    def test_irreducible_sum_raises(self):
        s = CharacterSum(3, [1, 2, 5])
        assert not s.reducible()
        with pytest.raises(ConsistencyError):
            s.value()

    def test_p2_always_reduces(self):
        s = CharacterSum(2, [3, 9])
        assert s.value() == -6

    def test_merge(self):
        a = CharacterSum(5, [1, 0, 2, 0, 0])
        b = CharacterSum(5, [0, 1, 0, 1, 3])
        a.merge(b)
        assert a.counts == [1, 1, 2, 1, 3]
        with pytest.raises(ValueError):
            a.merge(CharacterSum(3))


def test_gaussian_binomial():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(2, 1, 4) == 5
    assert gaussian_binomial(3, 2, 4) == 21
    assert gaussian_binomial(3, 1, 4) == gaussian_binomial(3, 2, 4)
    assert gaussian_binomial(5, 0, 3) == 1
    assert gaussian_binomial(2, 3, 2) == 0


def test_valency_frozen():
    assert [valency(2, 2, j) for j in range(3)] == [1, 5, 10]
    assert [valency(2, 3, j) for j in range(4)] == [1, 21, 210, 280]
    assert [valency(3, 2, j) for j in range(3)] == [1, 20, 60]


def test_eigen_tables_frozen():
    assert eigen_table(2, 2).rows == TABLE_2_2
    assert eigen_table(2, 3).rows == TABLE_2_3
    assert eigen_table(3, 2).rows == TABLE_3_2
    assert eigen_table(2, 3).ambient_size == 512
    assert eigen_table(2, 2).entry(2, 2) == -2


def test_special_eigenvalue_column():
    for q, n in ((2, 2), (2, 3), (3, 2), (5, 4)):
        t = eigen_table(q, n)
        for k in range(n + 1):
            assert special_eigenvalue(q, n, k) == t.entry(k, n)


def test_row1_chi_decomposition():
    t = eigen_table(2, 2)
    chi = tuple((2 + 1) * t.entry(1, j) + t.entry(0, j) for j in range(3))
    assert chi == (16, -8, 4)


def test_form_value_counts_rank_dependence():
    # counts depend on the rank alone; frozen at q=2, n=2, rank 2
    h = first_rank_witness(S2, 2, 2)
    assert form_value_counts(S2, h) == [10, 6]
    assert form_value_count(S2, h, 0, mode="formula") == 10
    assert form_value_count(S2, h, 1, mode="brute") == 6
    zero = zero_matrix(2)
    assert form_value_counts(S2, zero) == [16, 0]
    assert form_character(S2, zero) == 16


def test_form_character_sign_pattern():
    # (-1)^k q^(2n-k) over the three smallest spaces, both modes
    for spec, n in ((S2, 2), (S3, 2)):
        q = spec.q
        for k in range(n + 1):
            h = first_rank_witness(spec, n, k)
            want = (-1) ** k * q ** (2 * n - k)
            assert form_character(spec, h, mode="formula") == want
            assert form_character(spec, h, mode="brute") == want


def test_form_counts_sum_to_space_size():
    for h in enumerate_hermitian(S3, 2):
        counts = form_value_counts(S3, h)
        assert sum(counts) == 81


def test_eigen_brute_matches_tables():
    t = eigen_table(3, 2)
    for j in range(3):
        assert tuple(eigen_column_brute(S3, 2, j)) == t.column(j)
    assert eigen_entry_brute(S2, 2, 2, 1) == 2


def test_eigen_brute_independent_of_witness():
    # any rank-1 base point gives the same column
    ones = [m for m in enumerate_hermitian(S2, 2)
            if m != zero_matrix(2)][:6]
    cols = set()
    from hrds.hermitian import rank
    for y in ones:
        if rank(S2.fq2, y) == 1:
            cols.add(tuple(eigen_column_brute(S2, 2, 1, y=y)))
    assert len(cols) == 1


def test_eigen_brute_threads_agree():
    single = eigen_column_brute(S2, 2, 2, threads=1)
    forked = eigen_column_brute(S2, 2, 2, threads=2)
    assert single == forked


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 6))
def test_table_invariants_hold(q, n):
    t = eigen_table(q, n)  # constructor checks every invariant
    assert t.column(0) == tuple(valency(q, n, i) for i in range(n + 1))
    for j in range(1, n + 1):
        assert sum(t.entry(i, j) for i in range(n + 1)) == 0


def test_inner_distribution():
    u = {zero_matrix(2)}
    assert inner_distribution(S2, u) == (1, 0, 0)
    pair = {zero_matrix(2), ((1, 1), (1, 0))}
    assert inner_distribution(S2, pair) == (1, 0, 1)
    with pytest.raises(ValueError):
        inner_distribution(S2, set())


def test_delsarte_check():
    t = eigen_table(2, 2)
    transform, feasible = delsarte_check((1, 0, 4), t)
    assert feasible and transform == (5, 9, 2)
    transform, feasible = delsarte_check((1, 0, 6), t)
    assert not feasible and transform == (7, 11, -2)
    assert all(isinstance(v, Fraction) for v in transform)


def test_character_average_detects_linearity():
    # additively closed: integer average; the 5-member set: not an integer
    closed = {zero_matrix(2), ((1, 0), (0, 0))}
    assert character_average(S2, closed) == 4
    from hrds.constructions import UdeltaParams, construct_udelta
    u = construct_udelta(UdeltaParams.default(S2, 2))
    avg = character_average(S2, u.members)
    assert avg == Fraction(32, 5)
    assert avg.denominator != 1


def test_bound_catalog_frozen_ceilings():
    assert bound_catalog(2, 2, 2).certified_ceiling == 6
    assert bound_catalog(2, 3, 2).certified_ceiling == 36
    assert bound_catalog(2, 2, 1).certified_ceiling == 2
    assert bound_catalog(2, 3, 3).certified_ceiling == 8
    assert bound_catalog(3, 2, 2).certified_ceiling == 21


def test_bound_catalog_entry_kinds():
    rep = bound_catalog(2, 3, 2)
    names = {entry.name for entry in rep.entries}
    assert "linear" in names and "even-rank-product" in names
    linear = next(e for e in rep.entries if e.name == "linear")
    assert linear.applies_to == "linear" and linear.ceiling() == 16
    # the linear entry is tighter than the ceiling but must not lower it
    assert rep.certified_ceiling == 36 > 16
    general = rep.general_entries()
    assert all(e.applies_to == "general" for e in general)
    assert min(e.ceiling() for e in general) == 36

    rep22 = bound_catalog(2, 2, 2)
    lit = [e for e in rep22.entries if e.applies_to == "literature"]
    assert len(lit) == 1 and lit[0].ceiling() == 5
    assert rep22.certified_ceiling == 6  # literature values are advisory

    odd = bound_catalog(2, 2, 1)
    assert any(e.name == "odd-rank" and e.ceiling() == 2 for e in odd.entries)


def test_bound_catalog_positive():
    for q in (2, 3, 4):
        for n in (2, 3):
            for k in range(1, n + 1):
                rep = bound_catalog(q, n, k)
                assert all(e.ceiling() >= 1 for e in rep.entries)
                assert rep.certified_ceiling >= 1


def test_rank_at_most_two_bound():
    assert rank_at_most_two_bound(2, 3) == 36
    assert rank_at_most_two_bound(3, 3) == 3**5 + 3**3 - 3**2
    # a nonzero count of rank-1 differences tightens the bound
    assert rank_at_most_two_bound(2, 3, a1=1) < 36
