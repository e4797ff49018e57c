"""Exact arithmetic in F_p, F_q = F_{p^e} and F_{q^2} = F_{p^{2e}}.

Elements of F_{p^d} are encoded as plain integers: the element with
polynomial-basis coefficients (c_0, ..., c_{d-1}) over F_p is the
integer sum(c_i * p**i).  Arithmetic is done modulo a monic irreducible
polynomial of degree d, by default the one whose non-leading
coefficients form the smallest such integer.  The integer code is also
the wire encoding used by the set-file format, so the default modulus
choice makes files reproducible across runs.

A ``FieldSpec`` bundles the pair F_q inside F_{q^2}: the subfield is
realized as the fixed field of the Frobenius map x -> x^q, with an
explicit embedding table from F_q codes to F_{q^2} codes.

Codes are context-dependent: the same integer means different elements
in different fields.  The arithmetic methods assume in-range codes;
range validation happens at API boundaries (file parsing, CLI
arguments, matrix constructors).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

# Above this order, GF skips the dense operation tables and computes on
# the fly.  Every field used at desk scale fits under the limit.
_TABLE_LIMIT = 512

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over F_p.  Coefficient lists are little-endian
# (constant term first) and need not be trimmed on input.

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(p: int, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(p: int, a: list[int], m: list[int]) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _poly_trim(a)
    return a


def _poly_gcd(p: int, a: list[int], b: list[int]) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(p, a, b)
    return a


def _poly_powmod(p: int, base: list[int], exp: int, m: list[int]) -> list[int]:
    result = [1]
    base = _poly_mod(p, list(base), m)
    while exp:
        if exp & 1:
            result = _poly_mod(p, _poly_mul(p, result, base), m)
        base = _poly_mod(p, _poly_mul(p, base, base), m)
        exp >>= 1
    return result


def _minus_x(p: int, poly: list[int]) -> list[int]:
    out = list(poly)
    while len(out) < 2:
        out.append(0)
    out[1] = (out[1] - 1) % p
    return _poly_trim(out)


def is_irreducible(p: int, poly: list[int]) -> bool:
    """Rabin test for a monic polynomial over F_p."""
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) must reduce to x mod poly ...
    if _minus_x(p, _poly_powmod(p, x, p**d, poly)):
        return False
    # ... and x^(p^(d/r)) - x must be coprime to poly for prime r | d.
    for r in _SMALL_PRIMES:
        if r > d:
            break
        if d % r:
            continue
        diff = _minus_x(p, _poly_powmod(p, x, p ** (d // r), poly))
        if len(_poly_gcd(p, diff, poly)) - 1 != 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree d over F_p with the smallest code.

    Candidates x^d + sum(c_i x^i) are ordered by the integer
    sum(c_i * p**i); the first irreducible one wins.  Deterministic, so
    element codes are stable across runs and machines.
    """
    for idx in range(p**d):
        coeffs = _digits(idx, p, d) + [1]
        if is_irreducible(p, coeffs):
            return tuple(coeffs)
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


def _digits(code: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        out.append(code % p)
        code //= p
    return out


def _undigits(coeffs: list[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


class GF:
    """The finite field F_{p^d} on integer-encoded elements."""

    def __init__(self, p: int, degree: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        if modulus is None:
            modulus = smallest_irreducible(p, degree)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != degree + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of the stated degree")
            if not is_irreducible(p, list(modulus)):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.degree = degree
        self.order = p**degree
        self.modulus = modulus
        self._mul_table: list[int] | None = None
        self._add_table: list[int] | None = None
        self._neg_table: list[int] | None = None
        self._inv_table: list[int] | None = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}, {self.degree})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    # -- raw polynomial arithmetic on codes ---------------------------------

    def _add_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = _digits(a, self.p, self.degree), _digits(b, self.p, self.degree)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def _neg_raw(self, a: int) -> int:
        if self.p == 2:
            return a
        da = _digits(a, self.p, self.degree)
        return _undigits([(-x) % self.p for x in da], self.p)

    def _mul_raw(self, a: int, b: int) -> int:
        da, db = _digits(a, self.p, self.degree), _digits(b, self.p, self.degree)
        prod = _poly_mod(self.p, _poly_mul(self.p, da, db), list(self.modulus))
        return _undigits(prod, self.p)

    def _build_tables(self) -> None:
        n = self.order
        add = [0] * (n * n)
        mul = [0] * (n * n)
        for a in range(n):
            row = a * n
            for b in range(a, n):
                s = self._add_raw(a, b)
                add[row + b] = s
                add[b * n + a] = s
                m = self._mul_raw(a, b)
                mul[row + b] = m
                mul[b * n + a] = m
        self._add_table = add
        self._mul_table = mul
        self._neg_table = [self._neg_raw(a) for a in range(n)]
        inv = [0] * n
        for a in range(1, n):
            inv[a] = self._pow_raw(a, n - 2)
        self._inv_table = inv

    def _pow_raw(self, a: int, k: int) -> int:
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            k >>= 1
        return result

    # -- public operations --------------------------------------------------

    def check(self, a: int) -> int:
        """Validate that a is an in-range element code."""
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element code of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a * self.order + b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self._neg_table is not None:
            return self._neg_table[a]
        return self._neg_raw(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a * self.order + b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self._pow_raw(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no multiplicative inverse")
            return 1 if k == 0 else 0
        k %= self.order - 1
        return self._pow_raw(a, k)

    def frobenius(self, a: int, times: int = 1) -> int:
        """a^(p^times)."""
        return self.pow(a, self.p**times)

    def elements(self) -> range:
        return range(self.order)

    def poly_str(self, a: int, var: str = "x") -> str:
        digs = _digits(a, self.p, self.degree)
        terms = []
        for i, c in enumerate(digs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                coef = "" if c == 1 else str(c)
                power = var if i == 1 else f"{var}^{i}"
                terms.append(coef + power)
        return " + ".join(terms) if terms else "0"


def subfield_embedding(sub: GF, sup: GF) -> tuple[int, ...]:
    """Embedding table of sub into sup, as a field homomorphism.

    Requires equal characteristic and sub.degree | sup.degree.  The
    generator of sub is sent to the smallest-code root of sub's modulus
    inside sup, so the table is deterministic.  Index i of the result
    is the sup-code of the image of sub-code i.
    """
    if sub.p != sup.p:
        raise ValueError("subfield embedding needs equal characteristic")
    if sup.degree % sub.degree:
        raise ValueError(
            f"degree {sub.degree} does not divide {sup.degree}: no subfield"
        )
    mod = list(sub.modulus)
    root = None
    for z in sup.elements():
        acc = 0
        for c in reversed(mod):
            acc = sup.add(sup.mul(acc, z), c)
        if acc == 0:
            root = z
            break
    if root is None:
        raise AssertionError(
            f"modulus of {sub!r} has no root in {sup!r}; impossible for a "
            "divisor degree, so the field arithmetic is broken"
        )
    powers = [1]
    for _ in range(sub.degree - 1):
        powers.append(sup.mul(powers[-1], root))
    table = []
    for a in sub.elements():
        digs = _digits(a, sub.p, sub.degree)
        img = 0
        for c, bpow in zip(digs, powers):
            if c:
                img = sup.add(img, sup.mul(c, bpow))
        table.append(img)
    return tuple(table)


class FieldSpec:
    """The pair F_q inside F_{q^2}, with conjugation, traces and norm.

    q = p^e.  Both fields use the smallest-code irreducible modulus by
    default; modulus_q2 may be overridden (it travels in set files).
    Immutable after construction and safe to share between workers.
    """

    def __init__(
        self,
        p: int,
        e: int,
        modulus_q: tuple[int, ...] | None = None,
        modulus_q2: tuple[int, ...] | None = None,
    ):
        self.p = p
        self.e = e
        self.q = p**e
        self.fq = GF(p, e, modulus_q)
        self.fq2 = GF(p, 2 * e, modulus_q2)
        self.embed_table = subfield_embedding(self.fq, self.fq2)
        self._unembed = {img: i for i, img in enumerate(self.embed_table)}
        self.subfield_codes = frozenset(self.embed_table)
        self._conj = tuple(self.fq2.pow(a, self.q) for a in self.fq2.elements())
        self._form_scalar: int | None = None

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, e={self.e})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.e == other.e
            and self.fq.modulus == other.fq.modulus
            and self.fq2.modulus == other.fq2.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.fq.modulus, self.fq2.modulus))

    def embed(self, a: int) -> int:
        """F_q code -> F_{q^2} code."""
        self.fq.check(a)
        return self.embed_table[a]

    def in_subfield(self, a: int) -> bool:
        return a in self._unembed

    def to_subfield(self, a: int) -> int:
        """F_{q^2} code of a subfield element -> its F_q code."""
        try:
            return self._unembed[a]
        except KeyError:
            raise ValueError(
                f"element {a} of F_{self.q**2} lies outside the embedded F_{self.q}"
            ) from None

    def conj(self, a: int) -> int:
        """The involutory automorphism x -> x^q of F_{q^2}."""
        return self._conj[a]

    def rel_trace(self, a: int) -> int:
        """a + a^q, an element of the embedded F_q."""
        return self.fq2.add(a, self._conj[a])

    def rel_norm(self, a: int) -> int:
        """a^(q+1), an element of the embedded F_q."""
        return self.fq2.mul(a, self._conj[a])

    def abs_trace(self, a: int) -> int:
        """Trace from F_q down to F_p, for a in the embedded F_q.

        Returns the prime-field value as an integer in [0, p).
        """
        code = self.to_subfield(a)
        acc = code
        for i in range(1, self.e):
            acc = self.fq.add(acc, self.fq.frobenius(code, i))
        if acc >= self.p:
            raise AssertionError("trace landed outside the prime field")
        return acc

    def form_scalar(self) -> int:
        """Smallest nonzero code a in F_{q^2} with conj(a) = -a.

        This is the scalar in the Gram matrix [[0, aI], [-aI, 0]] of
        the hermitian form; for even q any nonzero subfield element
        qualifies, for odd q a nonzero element of relative trace zero.
        """
        if self._form_scalar is None:
            for a in range(1, self.fq2.order):
                if self._conj[a] == self.fq2.neg(a):
                    self._form_scalar = a
                    break
            else:
                raise AssertionError("no trace-zero element found")
        return self._form_scalar

    def subfield_elements(self) -> tuple[int, ...]:
        """Embedded F_q, sorted by F_{q^2} code."""
        return tuple(sorted(self.embed_table))


@lru_cache(maxsize=None)
def field_spec(p: int, e: int) -> FieldSpec:
    """Default FieldSpec for q = p^e, cached."""
    return FieldSpec(p, e)


def spec_for_q(q: int) -> FieldSpec:
    """FieldSpec from a prime power q."""
    for p in itertools.chain(_SMALL_PRIMES, range(41, q + 1, 2)):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return field_spec(p, e)
    raise ValueError(f"{q} is not a prime power")
