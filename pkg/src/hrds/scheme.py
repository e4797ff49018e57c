"""Characters, eigenvalue tables and size bounds for the rank metric.

H_n(F_{q^2}) under addition carries an association scheme whose classes
are the rank-distance relations.  This module computes its character
table P with exact integers, brute-force character sums as independent
cross-checks, inner distributions, the Delsarte feasibility test, and
the catalog of upper bounds on constant rank-distance k sets.

No floating point anywhere: bounds are integers and the Delsarte signs
must be exact, so everything runs on Python ints and Fractions.  A sum
of p-th roots of unity is held as a vector of exponent counts and only
reduced to an integer when the counts prove the reduction valid; the
reduction step doubles as a built-in correctness check.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, product

from .errors import ConsistencyError
from .field import FieldSpec
from .hermitian import (
    DEFAULT_ENUM_BUDGET,
    Matrix,
    enumerate_hermitian,
    hermitian_count,
    is_hermitian,
    mat_sub,
    rank,
)
from .errors import BudgetError


def exact_div(num: int, den: int, what: str) -> int:
    """Integer division that must be exact; anything else is a bug."""
    quot, rem = divmod(num, den)
    if rem:
        raise ConsistencyError(f"inexact division in {what}: {num} / {den}")
    return quot


class CharacterSum:
    """A finite sum of p-th roots of unity, by exponent counts.

    counts[c] is the number of summands equal to the c-th power of a
    fixed primitive p-th root.  The sum reduces to a rational integer
    exactly when counts[1] through counts[p-1] agree; then the value is
    counts[0] - counts[1].  Reduction of an irreducible sum raises, so
    every integer this class emits carries its own proof.
    """

    __slots__ = ("p", "counts")

    def __init__(self, p: int, counts=None):
        self.p = p
        self.counts = [0] * p if counts is None else list(counts)
        if len(self.counts) != p:
            raise ValueError(f"need exactly {p} exponent counts")

    def add(self, exponent: int, times: int = 1) -> None:
        self.counts[exponent % self.p] += times

    def merge(self, other: "CharacterSum") -> None:
        """Additive merge, for sums computed in shards."""
        if other.p != self.p:
            raise ValueError("cannot merge sums over different root orders")
        for c in range(self.p):
            self.counts[c] += other.counts[c]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def reducible(self) -> bool:
        return len(set(self.counts[1:])) <= 1

    def value(self) -> int:
        if not self.reducible():
            raise ConsistencyError(
                f"character sum with counts {self.counts} is not a rational "
                "integer; a lemma this code relies on has failed"
            )
        return self.counts[0] - (self.counts[1] if self.p > 1 else 0)


# -- hermitian form values and the rank character ---------------------------

def form_value_counts(
    spec: FieldSpec, h: Matrix, budget: int = DEFAULT_ENUM_BUDGET
) -> list[int]:
    """counts[a] = #{w in F_{q^2}^n : conj(w)^T h w = a}, a an F_q code.

    Direct evaluation over all q^{2n} vectors.
    """
    n = len(h)
    fq2 = spec.fq2
    if fq2.order**n > budget:
        raise BudgetError(
            f"form evaluation needs {fq2.order**n} vectors, over budget {budget}"
        )
    conj = spec.conj
    counts = [0] * spec.q
    for w in product(fq2.elements(), repeat=n):
        acc = 0
        for i in range(n):
            wi = w[i]
            if not wi:
                continue
            row = h[i]
            inner = 0
            for j in range(n):
                if row[j] and w[j]:
                    inner = fq2.add(inner, fq2.mul(row[j], w[j]))
            acc = fq2.add(acc, fq2.mul(conj(wi), inner))
        counts[spec.to_subfield(acc)] += 1
    return counts


def form_value_count(
    spec: FieldSpec,
    h: Matrix,
    a: int,
    mode: str = "formula",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> int:
    """Number of vectors w with conj(w)^T h w = a, for an F_q code a.

    formula mode uses the closed form in terms of k = rank(h):
    q^(2n-k-1) (q^k + (-1)^k (q-1)) for a = 0 and
    q^(2n-k-1) (q^k - (-1)^k) otherwise; brute mode counts vectors.
    """
    spec.fq.check(a)
    n = len(h)
    if mode == "brute":
        return form_value_counts(spec, h, budget)[a]
    if mode != "formula":
        raise ValueError(f"unknown mode {mode!r}")
    q = spec.q
    k = rank(spec.fq2, h)
    sign = -1 if k % 2 else 1
    if a == 0:
        return q ** (2 * n - k - 1) * (q**k + sign * (q - 1))
    return q ** (2 * n - k - 1) * (q**k - sign)


def form_character(
    spec: FieldSpec,
    h: Matrix,
    mode: str = "formula",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> int:
    """The character sum over all vectors of eps^tr(conj(w)^T h w).

    Equals (-1)^k q^(2n-k) for k = rank(h); formula mode returns that
    directly, brute mode accumulates the actual root-of-unity sum and
    reduces it.
    """
    n = len(h)
    if not is_hermitian(spec, h):
        raise ValueError("the rank character is defined on hermitian matrices")
    if mode == "formula":
        k = rank(spec.fq2, h)
        return (-1) ** k * spec.q ** (2 * n - k)
    if mode != "brute":
        raise ValueError(f"unknown mode {mode!r}")
    counts = form_value_counts(spec, h, budget)
    cs = CharacterSum(spec.p)
    for a, cnt in enumerate(counts):
        if cnt:
            cs.add(spec.abs_trace(spec.embed(a)), cnt)
    return cs.value()


# -- brute-force eigenvalues ------------------------------------------------

def first_rank_witness(spec: FieldSpec, n: int, j: int, budget: int = DEFAULT_ENUM_BUDGET) -> Matrix:
    """First matrix of rank j in the canonical enumeration order."""
    for m in enumerate_hermitian(spec, n, budget):
        if rank(spec.fq2, m) == j:
            return m
    raise ValueError(f"no rank-{j} matrix in H_{n}")


def _pairing_trace(spec: FieldSpec, x: Matrix, y: Matrix) -> int:
    """Matrix trace of x y, an element of the embedded F_q for hermitian
    arguments, returned as the prime-field exponent tr(Tr(x y))."""
    fq2 = spec.fq2
    n = len(x)
    acc = 0
    for a in range(n):
        row = x[a]
        for b in range(n):
            if row[b] and y[b][a]:
                acc = fq2.add(acc, fq2.mul(row[b], y[b][a]))
    return spec.abs_trace(acc)


def _eigen_shard(task) -> list[list[int]]:
    spec, n, y, start, stop, budget = task
    fq2 = spec.fq2
    counts = [[0] * spec.p for _ in range(n + 1)]
    stream = islice(enumerate_hermitian(spec, n, budget), start, stop)
    for x in stream:
        counts[rank(fq2, x)][_pairing_trace(spec, x, y)] += 1
    return counts


def eigen_column_brute(
    spec: FieldSpec,
    n: int,
    j: int,
    y: Matrix | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
    threads: int = 1,
) -> list[int]:
    """All P_i(j) for i = 0..n by direct character summation.

    Fixes one matrix y of rank j and sums eps^tr(Tr(x y)) over the rank
    classes of x in a single pass.  The result does not depend on which
    y is chosen; callers wanting that assurance pass several y values.
    With threads > 1 the enumeration is sharded across processes and
    the count vectors merged additively.
    """
    total = hermitian_count(spec.q, n)
    if total > budget:
        raise BudgetError(f"{total} matrices to sum over, over budget {budget}")
    if y is None:
        y = first_rank_witness(spec, n, j, budget)
    elif rank(spec.fq2, y) != j:
        raise ValueError(f"witness has rank {rank(spec.fq2, y)}, wanted {j}")
    if threads > 1:
        bounds = [total * t // threads for t in range(threads + 1)]
        tasks = [
            (spec, n, y, bounds[t], bounds[t + 1], budget) for t in range(threads)
        ]
        with multiprocessing.get_context("fork").Pool(threads) as pool:
            shards = pool.map(_eigen_shard, tasks)
        counts = shards[0]
        for extra in shards[1:]:
            for i in range(n + 1):
                for c in range(spec.p):
                    counts[i][c] += extra[i][c]
    else:
        counts = _eigen_shard((spec, n, y, 0, total, budget))
    if sum(sum(row) for row in counts) != total:
        raise ConsistencyError("character summation lost track of summands")
    return [CharacterSum(spec.p, row).value() for row in counts]


def eigen_entry_brute(
    spec: FieldSpec,
    n: int,
    i: int,
    j: int,
    y: Matrix | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
    threads: int = 1,
) -> int:
    """P_i(j) by direct character summation."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"indices ({i}, {j}) outside [0, {n}]")
    return eigen_column_brute(spec, n, j, y, budget, threads)[i]


# -- the exact eigenvalue table ---------------------------------------------

def gaussian_binomial(n: int, k: int, b: int) -> int:
    """Number of k-dimensional subspaces of an n-space over F_b."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= b ** (n - i) - 1
        den *= b ** (i + 1) - 1
    return exact_div(num, den, f"gaussian binomial [{n}, {k}]_{b}")


def valency(q: int, n: int, j: int) -> int:
    """Number of rank-j matrices in H_n(F_{q^2}), in closed form."""
    if not 0 <= j <= n:
        raise ValueError(f"rank {j} outside [0, {n}]")
    prod_part = math.prod(q**i + (-1) ** i for i in range(1, j + 1))
    return gaussian_binomial(n, j, q * q) * q ** (j * (j - 1) // 2) * prod_part


def special_eigenvalue(q: int, n: int, k: int) -> int:
    """P_k(n), the eigenvalue at the full-rank class, in product form:
    prod_{i=1..k} ((-q)^(i-1) - (-q)^n) / ((-q)^i - 1)."""
    num = den = 1
    for i in range(1, k + 1):
        num *= (-q) ** (i - 1) - (-q) ** n
        den *= (-q) ** i - 1
    return exact_div(num, den, f"special eigenvalue P_{k}({n})")


@dataclass(frozen=True)
class EigenTable:
    """Character table of the rank-distance scheme on H_n(F_{q^2}).

    rows[i][j] = P_i(j), the value of the i-th class character at the
    rank-j class.  The table is its own dual: P^2 = q^(n^2) I.
    """

    q: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def ambient_size(self) -> int:
        return self.q ** (self.n * self.n)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)


def eigen_table(q: int, n: int, check: bool = True) -> EigenTable:
    """The full table of P_i(j) by exact integer recursion.

    Row 1 comes from the closed form ((-q)^(2n-j) - 1)/(q + 1); higher
    rows from the three-term recurrence
    P_1(j) P_k(j) = c_{k+1} P_{k+1}(j) + a_k P_k(j) + b_{k-1} P_{k-1}(j).
    Every division must come out exact, and with check on, the finished
    table must pass the identities it is known to satisfy; any failure
    raises ConsistencyError.
    """
    if n < 1 or q < 2:
        raise ValueError(f"need n >= 1 and a prime power q >= 2, got ({q}, {n})")
    rows = [[1] * (n + 1)]
    if n >= 1:
        rows.append(
            [
                exact_div((-q) ** (2 * n - j) - 1, q + 1, f"P_1({j})")
                for j in range(n + 1)
            ]
        )
    b = [exact_div(q ** (2 * n) - q ** (2 * i), q + 1, f"b_{i}") for i in range(n + 1)]
    c = [
        (-q) ** (i - 1) * exact_div((-q) ** i - 1, -q - 1, f"c_{i}") if i else 0
        for i in range(n + 1)
    ]
    a = [b[0] - b[i] - c[i] for i in range(n + 1)]
    for k in range(1, n):
        nxt = [
            exact_div(
                rows[1][j] * rows[k][j] - a[k] * rows[k][j] - b[k - 1] * rows[k - 1][j],
                c[k + 1],
                f"P_{k + 1}({j})",
            )
            for j in range(n + 1)
        ]
        rows.append(nxt)
    table = EigenTable(q, n, tuple(tuple(r) for r in rows))
    if check:
        _verify_table(table)
    return table


def _verify_table(t: EigenTable) -> None:
    q, n, rows = t.q, t.n, t.rows
    size = t.ambient_size
    for j in range(n + 1):
        col = sum(rows[i][j] for i in range(n + 1))
        if col != (size if j == 0 else 0):
            raise ConsistencyError(f"column {j} sums to {col}")
        chi = (q + 1) * rows[1][j] + 1
        if chi != (-1) ** j * q ** (2 * n - j):
            raise ConsistencyError(f"chi decomposition fails at rank {j}")
    for i in range(n + 1):
        if rows[i][0] != valency(q, n, i):
            raise ConsistencyError(f"valency mismatch in row {i}")
        if rows[i][n] != special_eigenvalue(q, n, i):
            raise ConsistencyError(f"full-rank column mismatch in row {i}")
    for i in range(n + 1):
        for j in range(n + 1):
            dot = sum(rows[i][m] * rows[m][j] for m in range(n + 1))
            if dot != (size if i == j else 0):
                raise ConsistencyError(f"P^2 != |Omega| I at ({i}, {j})")
            if rows[i][j] * rows[j][0] != rows[j][i] * rows[i][0]:
                raise ConsistencyError(f"ratio identity fails at ({i}, {j})")


# -- inner distributions and the Delsarte test ------------------------------

def inner_distribution(spec: FieldSpec, members) -> tuple[Fraction, ...]:
    """a_j = (#ordered member pairs at rank distance j) / |U|.

    a_0 = 1 always; the entries sum to |U|.
    """
    ms = sorted(set(members))
    if not ms:
        raise ValueError("inner distribution of an empty set is undefined")
    n = len(ms[0])
    fq2 = spec.fq2
    counts = [0] * (n + 1)
    counts[0] = len(ms)
    for i, x in enumerate(ms):
        for y in ms[i + 1 :]:
            counts[rank(fq2, mat_sub(fq2, x, y))] += 2
    return tuple(Fraction(cnt, len(ms)) for cnt in counts)


def delsarte_check(
    a, table: EigenTable
) -> tuple[tuple[Fraction, ...], bool]:
    """The transform (aQ)_i = sum_j a_j P_i(j) and its sign test.

    Q = P for this scheme.  Any inner distribution of an actual subset
    must transform to a non-negative vector; a negative entry certifies
    that no subset with that distribution exists.
    """
    if len(a) != table.n + 1:
        raise ValueError(
            f"distribution has {len(a)} entries, table wants {table.n + 1}"
        )
    transform = tuple(
        sum((Fraction(aj) * table.rows[i][j] for j, aj in enumerate(a)), Fraction(0))
        for i in range(table.n + 1)
    )
    return transform, all(v >= 0 for v in transform)


def character_average(spec: FieldSpec, members) -> Fraction:
    """Average of the rank character over a set of hermitian matrices.

    For an additive subgroup this is the inner product of a restricted
    character with the trivial one, hence a non-negative integer; that
    integrality is the engine behind the linear-set bounds, and tests
    assert it on every linear set built by the toolkit.
    """
    ms = list(members)
    if not ms:
        raise ValueError("character average of an empty set is undefined")
    n = len(ms[0])
    total = sum(form_character(spec, h, mode="formula") for h in ms)
    return Fraction(total, len(ms))


# -- the bound catalog ------------------------------------------------------

# applies_to values: "general" bounds any constant rank-distance k set,
# "linear" only additive-subgroup sets, "literature" is reported for
# context but never enters the certified ceiling.
GENERAL = "general"
LINEAR = "linear"
LITERATURE = "literature"


@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: int | Fraction
    applies_to: str
    condition: str
    derivation: str

    def ceiling(self) -> int:
        return math.floor(self.value)


@dataclass(frozen=True)
class BoundReport:
    q: int
    n: int
    k: int
    entries: tuple[BoundEntry, ...]

    def general_entries(self) -> tuple[BoundEntry, ...]:
        return tuple(e for e in self.entries if e.applies_to == GENERAL)

    @property
    def certified_ceiling(self) -> int:
        """Best integer bound valid for arbitrary (non-linear) sets."""
        return min(e.ceiling() for e in self.general_entries())


def _as_number(v: Fraction) -> int | Fraction:
    return int(v) if v.denominator == 1 else v


def bound_catalog(q: int, n: int, k: int, table: EigenTable | None = None) -> BoundReport:
    """Every applicable upper bound on a constant rank-distance k set.

    Linear-only bounds are listed but never used against general sets;
    the certified ceiling is the minimum over the general entries.
    """
    if not 1 <= k <= n:
        raise ValueError(f"distance k={k} outside [1, {n}]")
    if table is None:
        table = eigen_table(q, n)
    entries: list[BoundEntry] = []

    linear_value = q**k if k % 2 else q ** (2 * n - k)
    entries.append(
        BoundEntry(
            "linear",
            linear_value,
            LINEAR,
            "additive-subgroup sets only",
            "the average of the rank character over a subgroup is a "
            "non-negative integer, which forces q^k (k odd) or q^(2n-k) "
            "(k even)",
        )
    )
    if k % 2:
        entries.append(
            BoundEntry(
                "odd-rank",
                q**k,
                GENERAL,
                "k odd",
                "integer part of the row-1 eigenvalue ratio bound, which "
                "lies strictly between q^k and q^k + 1",
            )
        )

    ratio_values: dict[int, Fraction] = {}
    for i in range(1, n + 1):
        if table.rows[i][k] >= 0:
            continue
        value = 1 - Fraction(table.rows[i][0], table.rows[i][k])
        dual = 1 - Fraction(table.rows[k][0], table.rows[k][i])
        if table.rows[k][i] >= 0 or dual != value:
            raise ConsistencyError(
                f"ratio-identity dual bound disagrees at row {i}"
            )
        ratio_values[i] = value
        entries.append(
            BoundEntry(
                f"eigenvalue-ratio-{i}",
                _as_number(value),
                GENERAL,
                f"row {i} of the eigenvalue table is negative at rank {k}",
                f"1 - P_{i}(0)/P_{i}({k}), valid whenever P_{i}({k}) < 0; "
                "equal to its dual form by the ratio identity",
            )
        )

    if k % 4 == 2:
        prod_value = 1 + math.prod(
            q ** (n - i + 1) + (-1) ** (n - i + 1) for i in range(1, k + 1)
        )
        if ratio_values.get(n) != Fraction(prod_value):
            raise ConsistencyError(
                "product bound disagrees with the row-n eigenvalue ratio"
            )
        entries.append(
            BoundEntry(
                "even-rank-product",
                prod_value,
                GENERAL,
                "k = 2 mod 4",
                "1 + prod_{i=1..k} (q^(n-i+1) + (-1)^(n-i+1)), the "
                "closed form of the full-rank-column ratio bound",
            )
        )

    if k == 2 or (k == n and n % 2 == 0):
        closed = q ** (2 * n - 1) + (-1) ** (n - 1) * (q**n - q ** (n - 1))
        conds = []
        if k == 2:
            conds.append("k = 2")
        if k == n and n % 2 == 0:
            conds.append("spread sets (k = n) with n even, by duality")
        row = n if k == 2 else 2
        if ratio_values.get(row) != Fraction(closed):
            raise ConsistencyError(
                "closed-form rank-2 bound disagrees with the eigenvalue ratio"
            )
        entries.append(
            BoundEntry(
                "rank-two-closed-form",
                closed,
                GENERAL,
                "; ".join(conds),
                "q^(2n-1) + (-1)^(n-1) (q^n - q^(n-1)), the classical "
                "partial-spread ceiling, recovered from the eigenvalue ratio",
            )
        )

    if k == 2 and n % 2 and n >= 3:
        entries.append(
            BoundEntry(
                "rank-at-most-two",
                q ** (2 * n - 1) + q**n - q ** (n - 1),
                GENERAL,
                "n odd >= 3; holds for any set with all pairwise ranks <= 2",
                "Delsarte inequality at the full-rank row restricted to "
                "distances {0, 1, 2}; refines to subtracting a_1 q^(n-1) "
                "when a_1 rank-1 distances occur",
            )
        )

    if n == 2 and k == 2:
        entries.append(
            BoundEntry(
                "spread-literature",
                _as_number(Fraction(q**3 + q, 2)),
                LITERATURE,
                "set sizes of spread sets in H_2 only; quoted from the "
                "partial-spread literature, not derived here",
                "reported for context; excluded from the certified ceiling",
            )
        )

    return BoundReport(q, n, k, tuple(entries))


def rank_at_most_two_bound(q: int, n: int, a1: int | Fraction = 0) -> int | Fraction:
    """Ceiling for sets with all pairwise ranks <= 2, n odd >= 3.

    a1 is the rank-1 entry of the inner distribution; each unit of it
    tightens the bound by q^(n-1).
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("this bound needs odd n >= 3")
    return _as_number(Fraction(q ** (2 * n - 1) + q**n - q ** (n - 1)) - Fraction(a1) * q ** (n - 1))
