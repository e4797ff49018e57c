"""Maximality testing and exhaustive search over rank-distance graphs.

The rank-k graph on H_n(F_{q^2}) joins A and B when rank(A - B) = k;
constant rank-distance k sets through 0 are exactly the cliques through
0, and adjoining 0 to any such set never breaks the definition.  So the
maximal sets are {0} union C for C a maximal clique of the subgraph
induced on the rank-k sphere around 0, which has only valency(k)
vertices instead of q^(n^2).  That subgraph is searched exhaustively
with a pivoting branch-and-bound over bitset adjacency rows.

Budgets are hard: an instance over the vertex budget is refused before
any work, and a time ceiling turns the result into one that is clearly
flagged incomplete rather than silently truncated.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass

from .errors import BudgetError
from .field import FieldSpec
from .hermitian import (
    DEFAULT_ENUM_BUDGET,
    Matrix,
    RankSet,
    constant_rank_distance_violation,
    enumerate_hermitian,
    mat_sub,
    rank,
    zero_matrix,
)
from .scheme import valency

DEFAULT_VERTEX_BUDGET = 1024


def is_constant_rank_distance(spec: FieldSpec, members, k: int):
    """(flag, first violation or None) for the two defining conditions:
    nonzero members have rank k, and all pairwise differences do."""
    violation = constant_rank_distance_violation(spec, frozenset(members), k)
    return violation is None, violation


def extension_candidates(u: RankSet, budget: int = DEFAULT_ENUM_BUDGET) -> list[Matrix]:
    """Every matrix that extends u, in enumeration order.

    A candidate B must be outside u, of rank k when nonzero, and at
    rank distance k from every member.  Empty exactly when u is
    maximal; this exhaustive test is the same extension argument the
    maximality proofs use.
    """
    spec, k = u.spec, u.k
    fq2 = spec.fq2
    members = sorted(u.members)
    out = []
    for b in enumerate_hermitian(spec, u.n, budget):
        if b in u.members:
            continue
        if any(any(row) for row in b) and rank(fq2, b) != k:
            continue
        if all(rank(fq2, mat_sub(fq2, b, a)) == k for a in members):
            out.append(b)
    return out


def first_extension(u: RankSet, budget: int = DEFAULT_ENUM_BUDGET) -> Matrix | None:
    """First extending matrix in enumeration order, or None if maximal."""
    spec, k = u.spec, u.k
    fq2 = spec.fq2
    members = sorted(u.members)
    for b in enumerate_hermitian(spec, u.n, budget):
        if b in u.members:
            continue
        if any(any(row) for row in b) and rank(fq2, b) != k:
            continue
        if all(rank(fq2, mat_sub(fq2, b, a)) == k for a in members):
            return b
    return None


def is_maximal(u: RankSet, budget: int = DEFAULT_ENUM_BUDGET) -> bool:
    return first_extension(u, budget) is None


def greedy_complete(u: RankSet, order=None, budget: int = DEFAULT_ENUM_BUDGET) -> RankSet:
    """Adjoin the first admissible candidate until none remain.

    Deterministic: same input and order give the identical maximal
    superset.  order defaults to the canonical enumeration stream.
    """
    spec, k = u.spec, u.k
    fq2 = spec.fq2
    if order is None:
        candidates = extension_candidates(u, budget)
    else:
        members = sorted(u.members)
        candidates = [
            b
            for b in order
            if b not in u.members
            and (not any(any(row) for row in b) or rank(fq2, b) == k)
            and all(rank(fq2, mat_sub(fq2, b, a)) == k for a in members)
        ]
    chosen = set(u.members)
    while candidates:
        b = candidates[0]
        chosen.add(b)
        candidates = [
            c for c in candidates[1:] if rank(fq2, mat_sub(fq2, c, b)) == k
        ]
    return RankSet.validated(spec, u.n, k, chosen)


# -- the rank-distance graph ------------------------------------------------

@dataclass(frozen=True)
class RankGraph:
    """A graph on hermitian matrices with bitset adjacency rows.

    vertices are sorted, so witness canonicalization reduces to
    comparing index tuples; adj[i] has bit j set iff
    rank(vertices[i] - vertices[j]) = k.
    """

    spec: FieldSpec
    n: int
    k: int
    vertices: tuple
    adj: tuple

    @classmethod
    def _build(cls, spec, n, k, vertices) -> "RankGraph":
        vertices = tuple(sorted(vertices))
        fq2 = spec.fq2
        count = len(vertices)
        adj = [0] * count
        for i in range(count):
            vi = vertices[i]
            for j in range(i + 1, count):
                if rank(fq2, mat_sub(fq2, vi, vertices[j])) == k:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return cls(spec, n, k, vertices, tuple(adj))

    @classmethod
    def full(
        cls, spec: FieldSpec, n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET
    ) -> "RankGraph":
        """The whole of H_n(F_{q^2}) as vertex set."""
        return cls._build(spec, n, k, enumerate_hermitian(spec, n, budget))

    @classmethod
    def zero_neighborhood(
        cls, spec: FieldSpec, n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET
    ) -> "RankGraph":
        """The subgraph induced on the rank-k sphere around 0."""
        fq2 = spec.fq2
        vertices = [
            m for m in enumerate_hermitian(spec, n, budget) if rank(fq2, m) == k
        ]
        expected = valency(spec.q, n, k)
        if len(vertices) != expected:
            raise AssertionError(
                f"found {len(vertices)} rank-{k} vertices, valency says {expected}"
            )
        return cls._build(spec, n, k, vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def clique_members(self, mask: int) -> tuple:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.vertices[low.bit_length() - 1])
            mask ^= low
        return tuple(out)


class _Deadline:
    __slots__ = ("at", "ticks", "expired")

    def __init__(self, seconds: float | None):
        self.at = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0
        self.expired = False

    def check(self) -> bool:
        """True while time remains; flips expired once it runs out."""
        if self.at is None:
            return True
        self.ticks += 1
        if self.ticks & 0x3FF == 0 and time.monotonic() > self.at:
            self.expired = True
        return not self.expired


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _enumerate_cliques(adj, r, p, x, sink, deadline) -> None:
    """Pivoting branch-and-bound over bitsets; sink gets each maximal
    clique as a bit mask.  Stops early once the deadline expires."""
    if not p and not x:
        sink(r)
        return
    if not deadline.check():
        return
    pivot, best = -1, -1
    probe = p | x
    while probe:
        low = probe & -probe
        u = low.bit_length() - 1
        score = (p & adj[u]).bit_count()
        if score > best:
            pivot, best = u, score
        probe ^= low
    ext = p & ~adj[pivot]
    while ext:
        low = ext & -ext
        v = low.bit_length() - 1
        _enumerate_cliques(adj, r | low, p & adj[v], x & adj[v], sink, deadline)
        if deadline.expired:
            return
        p ^= low
        x |= low
        ext ^= low


class _SpectrumAccumulator:
    """Per-size minimum witness and a running clique count."""

    __slots__ = ("count", "best")

    def __init__(self):
        self.count = 0
        self.best: dict[int, tuple[int, ...]] = {}

    def sink(self, mask: int) -> None:
        self.count += 1
        idx = _indices(mask)
        size = len(idx)
        cur = self.best.get(size)
        if cur is None or idx < cur:
            self.best[size] = idx

    def merge(self, other: "_SpectrumAccumulator") -> None:
        self.count += other.count
        for size, idx in other.best.items():
            cur = self.best.get(size)
            if cur is None or idx < cur:
                self.best[size] = idx


def _spectrum_shard(task) -> tuple[bool, int, dict]:
    adj, branches, deadline_at = task
    acc = _SpectrumAccumulator()
    deadline = _Deadline(None)
    deadline.at = deadline_at
    for r, p, x in branches:
        _enumerate_cliques(adj, r, p, x, acc.sink, deadline)
        if deadline.expired:
            break
    return (not deadline.expired, acc.count, acc.best)


@dataclass(frozen=True)
class SpectrumResult:
    """Sizes of maximal constant rank-distance k sets, with witnesses.

    complete=False marks a run cut off by the time ceiling: the sizes
    are a genuine subset of the spectrum but nothing is claimed about
    what was not visited.
    """

    spec: FieldSpec
    n: int
    k: int
    sizes: tuple
    witnesses: dict
    complete: bool
    clique_count: int
    elapsed: float

    @property
    def q(self) -> int:
        return self.spec.q


def maximal_set_spectrum(
    spec: FieldSpec,
    n: int,
    k: int,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    time_limit: float | None = None,
    threads: int = 1,
) -> SpectrumResult:
    """All sizes of maximal constant rank-distance k sets in H_n.

    Every maximal set contains 0 after translation and adjoining 0 is
    always legal, so it suffices to enumerate maximal cliques in the
    rank-k sphere around 0 and add one.  One witness per size is kept,
    canonically the index-wise smallest, so runs are reproducible even
    when sharded across workers.
    """
    started = time.monotonic()
    expected = valency(spec.q, n, k)
    if expected > vertex_budget:
        raise BudgetError(
            f"rank-{k} sphere has {expected} vertices, over the budget of "
            f"{vertex_budget}"
        )
    graph = RankGraph.zero_neighborhood(spec, n, k, enum_budget)
    adj = graph.adj
    count = len(graph)
    full = (1 << count) - 1
    acc = _SpectrumAccumulator()
    complete = True
    if count == 0:
        pass
    elif threads <= 1:
        deadline = _Deadline(time_limit)
        _enumerate_cliques(adj, 0, full, 0, acc.sink, deadline)
        complete = not deadline.expired
    else:
        branches = []
        p, x = full, 0
        for v in range(count):
            low = 1 << v
            branches.append((low, p & adj[v], x & adj[v]))
            p ^= low
            x |= low
        deadline_at = None if time_limit is None else started + time_limit
        tasks = [(adj, branches[t::threads], deadline_at) for t in range(threads)]
        with multiprocessing.get_context("fork").Pool(threads) as pool:
            for ok, cnt, best in pool.map(_spectrum_shard, tasks):
                complete = complete and ok
                part = _SpectrumAccumulator()
                part.count = cnt
                part.best = best
                acc.merge(part)

    zero = zero_matrix(n)
    witnesses = {}
    for size in sorted(acc.best):
        members = (zero,) + tuple(graph.vertices[i] for i in acc.best[size])
        witnesses[size + 1] = RankSet.validated(spec, n, k, members)
    return SpectrumResult(
        spec,
        n,
        k,
        tuple(sorted(witnesses)),
        witnesses,
        complete,
        acc.count,
        time.monotonic() - started,
    )
