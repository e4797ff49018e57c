"""Explicit constant rank-distance sets: the three families the toolkit
can build outright.

* ``construct_udelta``: for each delta in [1, q], a maximal spread set
  of size q^2 + delta - 1 in H_2(F_{q^2}), giving a whole interval of
  maximal partial-spread sizes.
* ``trace_gram_spread_set`` and ``extend_to_hermitian``: the linear
  symmetric spread set {M_m : m in F_{q^n}} with
  (M_m)_{ij} = Tr(m b_i b_j), re-typed over F_{q^2}.  Its extension is
  maximal because any extension would breed a linear set too large for
  the subgroup character bound.
* ``lift_partial_spread``: Gram lifting X_S -> X_S conj(X_S)^T, turning
  a pairwise-disjoint family of r-dimensional subspaces of F_{q^2}^n
  into a constant rank-distance 2r set of the same size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ConsistencyError
from .field import GF, FieldSpec, subfield_embedding
from .hermitian import Matrix, RankSet, mat_sub, rank


def _fq_two(fq: GF) -> int:
    """The field element 2 = 1 + 1, as a code (0 in characteristic 2)."""
    return fq.add(1, 1)


def select_mu(spec: FieldSpec) -> int:
    """Smallest F_q code mu making t^2 + (mu - 2) t + 1 rootless in F_q.

    Equivalently x^2 + y^2 + (mu - 2) x y = 0 then has only the trivial
    solution, which is what the U_delta maximality argument needs.  A
    valid mu always exists: monic irreducible quadratics with constant
    term 1 exist over every finite field.
    """
    fq = spec.fq
    two = _fq_two(fq)
    for mu in fq.elements():
        c1 = fq.sub(mu, two)
        if all(
            fq.add(fq.add(fq.mul(t, t), fq.mul(c1, t)), 1) != 0
            for t in fq.elements()
        ):
            return mu
    raise ConsistencyError(f"no valid quadratic coefficient found over F_{spec.q}")


@dataclass(frozen=True)
class UdeltaParams:
    """Parameters of the interval construction in H_2(F_{q^2}).

    delta_set is a size-delta subset of F_q (as F_q codes) containing 0;
    mu must make t^2 + (mu - 2) t + 1 irreducible over F_q.
    """

    spec: FieldSpec
    delta: int
    delta_set: frozenset
    mu: int

    @classmethod
    def default(cls, spec: FieldSpec, delta: int) -> "UdeltaParams":
        """The delta smallest F_q codes as delta_set, minimal valid mu."""
        params = cls(spec, delta, frozenset(range(delta)), select_mu(spec))
        params.validate()
        return params

    def validate(self) -> None:
        fq = self.spec.fq
        if not 1 <= self.delta <= self.spec.q:
            raise ValueError(f"delta={self.delta} outside [1, {self.spec.q}]")
        if len(self.delta_set) != self.delta or 0 not in self.delta_set:
            raise ValueError("delta_set must contain 0 and have size delta")
        for a in self.delta_set:
            fq.check(a)
        c1 = fq.sub(fq.check(self.mu), _fq_two(fq))
        for t in fq.elements():
            if fq.add(fq.add(fq.mul(t, t), fq.mul(c1, t)), 1) == 0:
                raise ValueError(
                    f"mu={self.mu} admits the nontrivial zero t={t} of "
                    "t^2 + (mu-2)t + 1; the quadratic must be irreducible"
                )


def construct_udelta(params: UdeltaParams) -> RankSet:
    """The size-(q^2 + delta - 1) maximal spread set for these params.

    Members: [[a, a], [a, 0]] and [[0, a], [a, mu a]] for a in the
    chosen delta_set, plus [[0, alpha], [conj(alpha), 0]] for alpha
    outside it.  Contains 0 (the a = 0 case of both templates).
    """
    params.validate()
    spec = params.spec
    fq, fq2 = spec.fq, spec.fq2
    members = set()
    embedded_delta = set()
    for a_sub in sorted(params.delta_set):
        a = spec.embed(a_sub)
        embedded_delta.add(a)
        members.add(((a, a), (a, 0)))
        members.add(((0, a), (a, spec.embed(fq.mul(params.mu, a_sub)))))
    for alpha in fq2.elements():
        if alpha in embedded_delta:
            continue
        members.add(((0, alpha), (spec.conj(alpha), 0)))
    out = RankSet.validated(spec, 2, 2, members)
    if len(out) != spec.q**2 + params.delta - 1:
        raise ConsistencyError(
            f"interval construction produced {len(out)} members, "
            f"wanted {spec.q**2 + params.delta - 1}"
        )
    return out


# -- symmetric trace-Gram spread sets over F_q ------------------------------

@dataclass(frozen=True)
class SymmetricSpreadSet:
    """An F_q-linear set of symmetric matrices with invertible nonzero
    members, i.e. a linear spread set of S_n(F_q).  Entries are F_q
    codes; ``extend_to_hermitian`` re-types it over F_{q^2}."""

    field: GF
    n: int
    members: frozenset

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def trace_gram_spread_set(spec: FieldSpec, n: int) -> SymmetricSpreadSet:
    """The Gram matrices of (x, y) -> Tr(m x y) on F_{q^n} over F_q.

    With basis b_i = g^i for the canonical generator g of F_{q^n}, the
    matrix of m is (M_m)_{ij} = Tr(m b_i b_j).  The map m -> M_m is
    F_q-linear and injective, and M_m is invertible for m != 0 because
    the trace form is nondegenerate; the image is therefore a linear
    spread set of size q^n, meeting the subgroup-character bound.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    fq = spec.fq
    fqn = GF(spec.p, spec.e * n)
    embed = subfield_embedding(fq, fqn)
    unembed = {img: a for a, img in enumerate(embed)}

    def rel_trace(y: int) -> int:
        acc = y
        for i in range(1, n):
            acc = fqn.add(acc, fqn.frobenius(y, spec.e * i))
        return unembed[acc]

    gamma = spec.p % fqn.order if fqn.degree > 1 else 1
    basis = [1]
    for _ in range(n - 1):
        basis.append(fqn.mul(basis[-1], gamma))
    members = set()
    for m in fqn.elements():
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if j < i:
                    row.append(rows[j][i])
                else:
                    row.append(rel_trace(fqn.mul(m, fqn.mul(basis[i], basis[j]))))
            rows.append(row)
        members.add(tuple(tuple(r) for r in rows))
    sset = SymmetricSpreadSet(fq, n, frozenset(members))
    if len(sset) != fqn.order:
        raise ConsistencyError("trace pairing failed to separate field elements")
    for mm in sset.members:
        if any(any(row) for row in mm) and rank(fq, mm) != n:
            raise ConsistencyError("nondegeneracy of the trace form failed")
    return sset


def extend_to_hermitian(spec: FieldSpec, sset: SymmetricSpreadSet) -> RankSet:
    """Re-type a symmetric F_q spread set as a hermitian one over F_{q^2}.

    Entries pass through the subfield embedding; a symmetric matrix
    with entries fixed by conjugation is hermitian, and rank does not
    change under field extension, so the result is a partial spread set
    of the same size.
    """
    if sset.field != spec.fq:
        raise ValueError("the symmetric set lives over a different F_q")
    members = set()
    for m in sset.members:
        if len(m) != sset.n:
            raise ValueError("member has wrong dimension")
        for i in range(sset.n):
            for j in range(i + 1, sset.n):
                if m[i][j] != m[j][i]:
                    raise ValueError(f"member {m} is not symmetric")
        members.add(
            tuple(tuple(spec.embed(x) for x in row) for row in m)
        )
    return RankSet.validated(spec, sset.n, sset.n, members)


# -- projective partial spreads and the Gram lift ---------------------------

@dataclass(frozen=True)
class ProjectivePartialSpread:
    """Pairwise-disjoint (r-1)-subspaces of PG(n-1, q^2).

    Each member is an n x r matrix over F_{q^2} whose column span is
    the subspace.  Disjointness of spans S, T is exactly
    rank([X_S | X_T]) = 2r, the fact the Gram lift rests on.
    """

    spec: FieldSpec
    n: int
    r: int
    members: tuple

    @classmethod
    def validated(cls, spec, n, r, members) -> "ProjectivePartialSpread":
        d = cls(spec, n, r, tuple(members))
        d.validate()
        return d

    def validate(self) -> None:
        fq2 = self.spec.fq2
        if not 1 <= self.r <= self.n:
            raise ValueError(f"r={self.r} outside [1, {self.n}]")
        for idx, x in enumerate(self.members):
            if len(x) != self.n or any(len(row) != self.r for row in x):
                raise ValueError(f"member {idx} is not an {self.n}x{self.r} matrix")
            if rank(fq2, x) != self.r:
                raise ValueError(f"member {idx} has deficient column rank")
        for i, x in enumerate(self.members):
            for jdx in range(i + 1, len(self.members)):
                y = self.members[jdx]
                stacked = tuple(rx + ry for rx, ry in zip(x, y))
                if rank(fq2, stacked) != 2 * self.r:
                    raise ValueError(
                        f"members {i} and {jdx} have intersecting spans: "
                        f"rank of the joint matrix is {rank(fq2, stacked)}, "
                        f"not {2 * self.r}"
                    )

    def __len__(self) -> int:
        return len(self.members)


def _normalized_points(field: GF, m: int):
    """One representative per projective point of PG(m-1, field): the
    first nonzero coordinate is 1, lexicographic order by code."""
    for lead in range(m):
        tail = m - lead - 1
        for rest in itertools.product(field.elements(), repeat=tail):
            yield (0,) * lead + (1,) + rest


def pg_point_spread(spec: FieldSpec, n: int) -> ProjectivePartialSpread:
    """All points of PG(n-1, q^2) as a 0-spread of size (q^2n - 1)/(q^2 - 1)."""
    members = tuple(
        tuple((c,) for c in v) for v in _normalized_points(spec.fq2, n)
    )
    expected = (spec.fq2.order**n - 1) // (spec.fq2.order - 1)
    if len(members) != expected:
        raise ConsistencyError(
            f"point enumeration found {len(members)} points, wanted {expected}"
        )
    return ProjectivePartialSpread.validated(spec, n, 1, members)


# Guard on the coefficient-table size used by field reduction.
_REDUCTION_LIMIT = 1 << 16


def desarguesian_spread(spec: FieldSpec, n: int, r: int) -> ProjectivePartialSpread:
    """Field reduction of the points of PG(n/r - 1, q^{2r}).

    Each point over the big field is an r-dimensional F_{q^2}-subspace;
    together they partition the nonzero vectors, giving a spread of
    (r-1)-subspaces of size (q^{2n} - 1)/(q^{2r} - 1).  Needs r | n;
    r = 1 degenerates to the point spread.
    """
    if n % r:
        raise ValueError(f"field reduction needs r | n, got r={r}, n={n}")
    fq2 = spec.fq2
    m = n // r
    big = GF(spec.p, 2 * spec.e * r)
    if big.order > _REDUCTION_LIMIT:
        raise ValueError(f"extension field of order {big.order} is over the limit")
    embed = subfield_embedding(fq2, big)
    g = spec.p % big.order if big.degree > 1 else 1
    basis = [1]
    for _ in range(r - 1):
        basis.append(big.mul(basis[-1], g))
    decompose = {}
    for coeffs in itertools.product(fq2.elements(), repeat=r):
        acc = 0
        for c, b in zip(coeffs, basis):
            if c:
                acc = big.add(acc, big.mul(embed[c], b))
        decompose[acc] = coeffs
    if len(decompose) != big.order:
        raise ConsistencyError("basis powers failed to span the big field")

    members = []
    for v in _normalized_points(big, m):
        cols = []
        for t in range(r):
            w = [big.mul(basis[t], c) for c in v]
            col = []
            for comp in w:
                col.extend(decompose[comp])
            cols.append(col)
        members.append(
            tuple(tuple(cols[t][i] for t in range(r)) for i in range(n))
        )
    expected = (fq2.order**n - 1) // (big.order - 1)
    if len(members) != expected:
        raise ConsistencyError(
            f"field reduction found {len(members)} subspaces, wanted {expected}"
        )
    return ProjectivePartialSpread.validated(spec, n, r, members)


def lift_gram_members(d: ProjectivePartialSpread) -> tuple[Matrix, ...]:
    """The raw Gram matrices A_S = X_S conj(X_S)^T, in member order.

    Each has rank exactly r; the pairwise differences have rank 2r.
    """
    spec = d.spec
    fq2, conj = spec.fq2, spec.conj
    out = []
    for x in d.members:
        rows = []
        for a in range(d.n):
            row = []
            for b in range(d.n):
                acc = 0
                for t in range(d.r):
                    if x[a][t] and x[b][t]:
                        acc = fq2.add(acc, fq2.mul(x[a][t], conj(x[b][t])))
                row.append(acc)
            rows.append(tuple(row))
        out.append(tuple(rows))
    return tuple(out)


def lift_partial_spread(d: ProjectivePartialSpread, translate: bool = True) -> RankSet:
    """Constant rank-distance 2r set from a projective partial spread.

    For spans S, T meeting trivially, A_S - A_T factors through the
    rank-2r matrix [X_S | X_T], so all pairwise distances are 2r.  The
    raw Grams themselves have rank r, so by default the set is
    translated to contain 0, which restores the member-rank condition;
    with translate=False the raw set is returned unvalidated.
    """
    spec = d.spec
    if 2 * d.r > d.n:
        raise ValueError(f"lift needs 2r <= n, got r={d.r}, n={d.n}")
    d.validate()
    raw = lift_gram_members(d)
    if len(set(raw)) != len(d):
        raise ConsistencyError("distinct subspaces produced equal Gram matrices")
    if not translate:
        return RankSet(spec, d.n, 2 * d.r, frozenset(raw))
    base = min(raw)
    moved = frozenset(mat_sub(spec.fq2, a, base) for a in raw)
    return RankSet.validated(spec, d.n, 2 * d.r, moved)
