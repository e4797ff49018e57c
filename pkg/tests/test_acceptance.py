"""Checklist of the package's headline results, one criterion per test.

Every test prints a ``criterion N (...): PASS`` or ``FAIL`` line on the
real terminal, so a full run doubles as an acceptance report.  All
comparisons are exact integer or rational equality; there are no
tolerances to tune anywhere.
"""

from contextlib import contextmanager
from fractions import Fraction

import pytest

from hrds import (
    RankSet,
    UdeltaParams,
    bound_catalog,
    construct_udelta,
    delsarte_check,
    desarguesian_spread,
    eigen_column_brute,
    eigen_table,
    enumerate_hermitian,
    extend_to_hermitian,
    field_spec,
    form_character,
    form_value_count,
    inner_distribution,
    is_constant_rank_distance,
    is_maximal,
    lift_partial_spread,
    maximal_set_spectrum,
    mat_add,
    pg_point_spread,
    rank_histogram,
    spec_for_q,
    trace_gram_spread_set,
    valency,
    zero_matrix,
)


@pytest.fixture
def report(capsys):
    @contextmanager
    def _report(num, label):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"criterion {num:2d} ({label}): FAIL", flush=True)
            raise
        with capsys.disabled():
            print(f"criterion {num:2d} ({label}): PASS", flush=True)

    return _report


@pytest.fixture(scope="module")
def rank2_spectrum_h3():
    # the expensive exhaustive search, shared by criteria 4, 8 and 9
    return maximal_set_spectrum(field_spec(2, 1), 3, 2)


def _constructed_sets():
    """Every construction the package ships, with its (q, n, k)."""
    out = []
    for q in (2, 3, 4):
        spec = spec_for_q(q)
        for delta in range(1, q + 1):
            out.append((construct_udelta(UdeltaParams.default(spec, delta)), q, 2, 2))
    for q, n in ((2, 2), (3, 2), (2, 3)):
        spec = spec_for_q(q)
        out.append((extend_to_hermitian(spec, trace_gram_spread_set(spec, n)), q, n, n))
    s2 = field_spec(2, 1)
    out.append((lift_partial_spread(pg_point_spread(s2, 3)), 2, 3, 2))
    for q in (2, 3):
        spec = spec_for_q(q)
        out.append((lift_partial_spread(desarguesian_spread(spec, 2, 1)), q, 2, 2))
    return out


def test_criterion_01_eigen_tables_match_brute_characters(report):
    with report(1, "eigenvalue tables equal brute-force character sums"):
        for q, n in ((2, 2), (2, 3), (3, 2)):
            spec = spec_for_q(q)
            table = eigen_table(q, n)
            for j in range(n + 1):
                assert tuple(eigen_column_brute(spec, n, j)) == table.column(j)


def test_criterion_02_form_counts_and_characters(report):
    with report(2, "form-value counts and characters, formula vs brute"):
        for p, n in ((2, 2), (3, 2), (2, 3)):
            spec = field_spec(p, 1)
            for h in enumerate_hermitian(spec, n):
                for a in spec.subfield_elements():
                    assert form_value_count(spec, h, a, mode="formula") == \
                        form_value_count(spec, h, a, mode="brute")
                assert form_character(spec, h, mode="formula") == \
                    form_character(spec, h, mode="brute")


def test_criterion_03_valencies_match_enumeration(report):
    with report(3, "valency formula matches rank enumeration"):
        for q, n in ((2, 2), (2, 3), (3, 2)):
            spec = spec_for_q(q)
            hist = tuple(rank_histogram(spec, n))
            assert hist == tuple(valency(q, n, j) for j in range(n + 1))
        assert tuple(rank_histogram(field_spec(2, 1), 2)) == (1, 5, 10)
        assert valency(2, 3, 2) == 210


def test_criterion_04_exhaustive_spectrum(report, rank2_spectrum_h3):
    with report(4, "maximal-set spectrum at q=2, n=3, k=2"):
        result = rank2_spectrum_h3
        assert result.complete
        assert result.sizes == (8, 10, 11, 12, 13, 14, 16, 17, 21)
        spec = result.spec
        for size in result.sizes:
            witness = result.witnesses[size]
            assert len(witness) == size
            ok, violation = is_constant_rank_distance(spec, witness.members, 2)
            assert ok and violation is None
            assert is_maximal(witness)


def test_criterion_05_udelta_family(report):
    with report(5, "U_delta sets: size, rank distance 2, maximality"):
        for q in (2, 3, 4):
            spec = spec_for_q(q)
            for delta in range(1, q + 1):
                u = construct_udelta(UdeltaParams.default(spec, delta))
                assert len(u) == q * q + delta - 1
                ok, _ = is_constant_rank_distance(spec, u.members, 2)
                assert ok
                assert is_maximal(u)


def test_criterion_06_symmetric_spread_extensions_maximal(report):
    with report(6, "extended trace-Gram spread sets are maximal"):
        for q, n in ((2, 2), (3, 2), (2, 3)):
            spec = spec_for_q(q)
            ext = extend_to_hermitian(spec, trace_gram_spread_set(spec, n))
            assert len(ext) == q**n and ext.k == n
            assert is_maximal(ext)


def test_criterion_07_spread_lifts(report):
    with report(7, "point-spread and field-reduction lifts"):
        spec = field_spec(2, 1)
        lifted = lift_partial_spread(pg_point_spread(spec, 3))
        assert len(lifted) == 21 and lifted.n == 3 and lifted.k == 2
        assert len(lifted) > 2 ** (2 * 3 - 2)  # beats every additively closed set
        assert is_maximal(lifted)
        for q in (2, 3):
            sq = spec_for_q(q)
            u = lift_partial_spread(desarguesian_spread(sq, 2, 1))
            assert len(u) == q * q + 1 and u.k == 2
            assert len(u) > q * q


def test_criterion_08_bound_consistency(report, rank2_spectrum_h3):
    with report(8, "no set exceeds its certified ceiling; pinned values"):
        ceilings = {}

        def ceiling(q, n, k):
            if (q, n, k) not in ceilings:
                ceilings[q, n, k] = bound_catalog(q, n, k).certified_ceiling
            return ceilings[q, n, k]

        for u, q, n, k in _constructed_sets():
            assert len(u) <= ceiling(q, n, k)
        assert max(rank2_spectrum_h3.sizes) <= ceiling(2, 3, 2)
        for q, n, k in ((2, 2, 2), (2, 2, 1), (3, 2, 2)):
            found = maximal_set_spectrum(spec_for_q(q), n, k)
            assert found.complete
            assert max(found.sizes) <= ceiling(q, n, k)

        assert ceiling(2, 2, 1) == 2
        assert ceiling(2, 2, 2) == 6
        assert ceiling(2, 3, 2) == 36

        # the odd-rank ceiling q^k is attained by an additively closed set
        spec = field_spec(2, 1)
        e11 = ((1, 0), (0, 0))
        u = RankSet.validated(spec, 2, 1, frozenset({zero_matrix(2), e11}))
        for a in u:
            for b in u:
                assert mat_add(spec.fq2, a, b) in u.members
        assert len(u) == ceiling(2, 2, 1)


def test_criterion_09_delsarte_feasibility(report, rank2_spectrum_h3):
    with report(9, "all witnesses Delsarte-feasible; planted violation caught"):
        tables = {}

        def table(q, n):
            if (q, n) not in tables:
                tables[q, n] = eigen_table(q, n)
            return tables[q, n]

        subjects = [(u, q, n) for u, q, n, _ in _constructed_sets()]
        spec2 = field_spec(2, 1)
        subjects += [(w, 2, 3) for w in rank2_spectrum_h3.witnesses.values()]
        small = maximal_set_spectrum(spec2, 2, 2)
        subjects += [(w, 2, 2) for w in small.witnesses.values()]
        for u, q, n in subjects:
            a = inner_distribution(u.spec, u.members)
            transform, feasible = delsarte_check(a, table(q, n))
            assert feasible and min(transform) >= 0

        bad = (Fraction(1), Fraction(0), Fraction(6))
        transform, feasible = delsarte_check(bad, table(2, 2))
        assert not feasible
        assert transform[2] == -2


def test_criterion_10_recurrence_exactness(report):
    with report(10, "table recurrence exact for q up to 9, n up to 8"):
        for q in (2, 3, 4, 5, 7, 8, 9):
            for n in range(1, 9):
                t = eigen_table(q, n)  # check=True: every invariant verified
                for j in range(n + 1):
                    num = (-q) ** (2 * n - j) - 1
                    quot, rem = divmod(num, q + 1)
                    assert rem == 0 and t.entry(1, j) == quot
                assert t.column(0) == tuple(valency(q, n, i) for i in range(n + 1))
