"""Hermitian matrices over F_{q^2} and the matrix-subspace correspondence.

Matrices are immutable tuples of row tuples of element codes, so they
hash and compare cheaply and can live in sets.  A matrix A is hermitian
when A equals its conjugate transpose; its diagonal then lies in the
embedded F_q.  The space H_n(F_{q^2}) of such matrices is an F_q-vector
space of size q^(n^2), closed under addition and F_q-scalars but not
under F_{q^2}-scalars.

Each matrix A spans an (n-1)-dimensional projective subspace
S_A = <(u, Au)> of PG(2n-1, q^2); two such subspaces meet in projective
dimension n - rank(A-B) - 1, and S_A is totally isotropic for the
standard hermitian form exactly when A is hermitian.  Those geometric
facts are implemented here as independent cross-checks of the rank
arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import BudgetError
from .field import GF, FieldSpec

Matrix = tuple[tuple[int, ...], ...]

# Enumerating a space larger than this requires an explicit budget.
DEFAULT_ENUM_BUDGET = 1 << 20


# -- generic matrix arithmetic over a GF ------------------------------------

def zero_matrix(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_add(gf: GF, a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(gf.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_neg(gf: GF, a: Matrix) -> Matrix:
    return tuple(tuple(gf.neg(x) for x in row) for row in a)


def mat_sub(gf: GF, a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(gf.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_smul(gf: GF, c: int, a: Matrix) -> Matrix:
    return tuple(tuple(gf.mul(c, x) for x in row) for row in a)


def mat_mul(gf: GF, a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    cols = range(len(b[0]))
    out = []
    for ra in a:
        row = []
        for j in cols:
            acc = 0
            for t in range(inner):
                if ra[t] and b[t][j]:
                    acc = gf.add(acc, gf.mul(ra[t], b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def conj_transpose(spec: FieldSpec, a: Matrix) -> Matrix:
    conj = spec.conj
    rows = range(len(a))
    return tuple(tuple(conj(a[i][j]) for i in rows) for j in range(len(a[0])))


def rank(gf: GF, m: Matrix) -> int:
    """Row rank by Gaussian elimination with first-nonzero pivoting.

    Exact field arithmetic; works on rectangular matrices.
    """
    if not m:
        return 0
    rows = [list(r) for r in m]
    nr, nc = len(rows), len(rows[0])
    mul, sub, inv = gf.mul, gf.sub, gf.inv
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivinv = inv(rows[r][c])
        prow = rows[r]
        for i in range(r + 1, nr):
            lead = rows[i][c]
            if lead:
                f = mul(lead, pivinv)
                row = rows[i]
                for j in range(c, nc):
                    if prow[j]:
                        row[j] = sub(row[j], mul(f, prow[j]))
        r += 1
        if r == nr:
            break
    return r


# -- hermitian structure ----------------------------------------------------

def is_hermitian(spec: FieldSpec, m: Matrix) -> bool:
    n = len(m)
    conj = spec.conj
    for i in range(n):
        if len(m[i]) != n:
            return False
        for j in range(i, n):
            if m[i][j] != conj(m[j][i]):
                return False
    return True


def hermitian_count(q: int, n: int) -> int:
    return q ** (n * n)


def enumerate_hermitian(spec: FieldSpec, n: int, budget: int = DEFAULT_ENUM_BUDGET):
    """Yield every matrix of H_n(F_{q^2}) exactly once.

    Free parameters are the n(n-1)/2 above-diagonal entries (all of
    F_{q^2}) and the n diagonal entries (embedded F_q, by code order).
    The stream is ordered with the diagonal block varying fastest, so
    search results quoting stream positions are reproducible.
    """
    total = hermitian_count(spec.q, n)
    if total > budget:
        raise BudgetError(
            f"H_{n}(F_{spec.q**2}) has {total} matrices, over the budget of {budget}"
        )
    conj = spec.conj
    diag_codes = spec.subfield_elements()
    above = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pools = [range(spec.fq2.order)] * len(above) + [diag_codes] * n
    for assign in itertools.product(*pools):
        entries = [[0] * n for _ in range(n)]
        for (i, j), v in zip(above, assign):
            entries[i][j] = v
            entries[j][i] = conj(v)
        for i in range(n):
            entries[i][i] = assign[len(above) + i]
        yield tuple(tuple(row) for row in entries)


def rank_histogram(spec: FieldSpec, n: int, budget: int = DEFAULT_ENUM_BUDGET) -> list[int]:
    """Count of matrices per rank, by direct enumeration."""
    hist = [0] * (n + 1)
    for m in enumerate_hermitian(spec, n, budget):
        hist[rank(spec.fq2, m)] += 1
    return hist


# -- the subspace picture ---------------------------------------------------

def subspace_of(spec: FieldSpec, a: Matrix) -> Matrix:
    """Row basis of S_A: the n vectors (e_i, A e_i) of length 2n."""
    n = len(a)
    rows = []
    for i in range(n):
        col = tuple(a[r][i] for r in range(n))
        rows.append(tuple(1 if t == i else 0 for t in range(n)) + col)
    return tuple(rows)


def intersection_dim(spec: FieldSpec, a: Matrix, b: Matrix) -> int:
    """Projective dimension of S_A meet S_B, -1 meaning disjoint.

    Computed from actual subspace bases via
    dim(S_A) + dim(S_B) - dim(S_A + S_B), independently of the rank of
    A - B, so it can cross-check the rank arithmetic.
    """
    n = len(a)
    stacked = subspace_of(spec, a) + subspace_of(spec, b)
    return 2 * n - rank(spec.fq2, stacked) - 1


def is_isotropic_in_hermitian_space(spec: FieldSpec, a: Matrix) -> bool:
    """Whether S_A is totally isotropic for the form with Gram
    [[0, sI], [-sI, 0]], s the fixed trace-reversing scalar.

    True exactly when a equals its conjugate transpose; the evaluation
    goes through the form itself rather than the symmetry test.
    """
    n = len(a)
    fq2 = spec.fq2
    s = spec.form_scalar()
    neg_s = fq2.neg(s)
    basis = subspace_of(spec, a)
    conj = spec.conj
    for x in basis:
        for y in basis:
            # conj(x)^T G y with G the block Gram matrix above:
            # sum_i conj(x_i) s y_{n+i} + conj(x_{n+i}) (-s) y_i
            acc = 0
            for i in range(n):
                t1 = fq2.mul(conj(x[i]), fq2.mul(s, y[n + i]))
                t2 = fq2.mul(conj(x[n + i]), fq2.mul(neg_s, y[i]))
                acc = fq2.add(acc, fq2.add(t1, t2))
            if acc:
                return False
    return True


# -- constant rank-distance sets --------------------------------------------

def constant_rank_distance_violation(
    spec: FieldSpec, members, k: int
) -> tuple | None:
    """First violation of the defining conditions, or None.

    Returns ("member", A, rank) for a nonzero member of wrong rank, or
    ("pair", A, B, rank) for a pair at the wrong distance.
    """
    fq2 = spec.fq2
    ms = sorted(members)
    for m in ms:
        if any(any(row) for row in m):
            r = rank(fq2, m)
            if r != k:
                return ("member", m, r)
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            r = rank(fq2, mat_sub(fq2, a, b))
            if r != k:
                return ("pair", a, b, r)
    return None


@dataclass(frozen=True)
class RankSet:
    """A finite set of hermitian matrices with declared distance k."""

    spec: FieldSpec
    n: int
    k: int
    members: frozenset = dc_field(default_factory=frozenset)

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"distance k={self.k} outside [1, {self.n}]")
        for m in self.members:
            if len(m) != self.n or not is_hermitian(self.spec, m):
                raise ValueError(f"member {m} is not hermitian of size {self.n}")

    @classmethod
    def validated(cls, spec: FieldSpec, n: int, k: int, members) -> "RankSet":
        """Build a RankSet, checking both defining conditions."""
        members = frozenset(members)
        bad = constant_rank_distance_violation(spec, members, k)
        if bad is not None:
            raise ValueError(f"not a constant rank-distance {k} set: {bad}")
        return cls(spec, n, k, members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, m) -> bool:
        return m in self.members

    def with_members(self, members) -> "RankSet":
        return RankSet(self.spec, self.n, self.k, frozenset(members))


def translate_to_origin(u: RankSet, a: Matrix) -> RankSet:
    """The set {a - b : b in u}, which contains zero.

    Translation preserves all pairwise difference ranks, so the result
    is again a valid constant rank-distance k set of the same size.
    """
    if a not in u.members:
        raise ValueError("translation base must be a member of the set")
    fq2 = u.spec.fq2
    moved = frozenset(mat_sub(fq2, a, b) for b in u.members)
    return RankSet.validated(u.spec, u.n, u.k, moved)
