"""The line-oriented text format for sets of hermitian matrices.

Grammar::

    HRDS 1
    p=<int> e=<int> n=<int> k=<int>
    mod=<c0>,<c1>,...,<c_2e>
    <n*n wire-encoded integers, space-separated, one matrix per line>

The modulus line holds the coefficients of the F_{q^2} modulus,
constant term first, so files stay readable even if the default
modulus choice ever changes.  Serialization sorts the members, making
serialize/parse a bit-exact round trip and files diff-friendly.
"""

from __future__ import annotations

from .errors import SetFileError
from .field import FieldSpec
from .hermitian import RankSet, is_hermitian

MAGIC = "HRDS 1"


def serialize_set(u: RankSet) -> str:
    spec = u.spec
    lines = [
        MAGIC,
        f"p={spec.p} e={spec.e} n={u.n} k={u.k}",
        "mod=" + ",".join(str(c) for c in spec.fq2.modulus),
    ]
    for m in sorted(u.members):
        lines.append(" ".join(str(x) for row in m for x in row))
    return "\n".join(lines) + "\n"


def _header_int(token: str, key: str, line: int) -> int:
    name, eq, value = token.partition("=")
    if name != key or not eq:
        raise SetFileError(line, f"expected {key}=<int>, got {token!r}")
    try:
        out = int(value)
    except ValueError:
        raise SetFileError(line, f"{key} is not an integer: {value!r}") from None
    return out


def parse_set_text(text: str) -> RankSet:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise SetFileError(1, f"missing format tag {MAGIC!r}")
    if len(lines) < 3:
        raise SetFileError(len(lines), "incomplete header")

    tokens = lines[1].split()
    if len(tokens) != 4:
        raise SetFileError(2, "expected p=, e=, n=, k=")
    p = _header_int(tokens[0], "p", 2)
    e = _header_int(tokens[1], "e", 2)
    n = _header_int(tokens[2], "n", 2)
    k = _header_int(tokens[3], "k", 2)
    if e < 1 or n < 1:
        raise SetFileError(2, f"e={e} and n={n} must be positive")

    if not lines[2].startswith("mod="):
        raise SetFileError(3, "expected mod=<coefficients>")
    try:
        modulus = tuple(int(c) for c in lines[2][4:].split(","))
    except ValueError:
        raise SetFileError(3, "modulus coefficients must be integers") from None
    if len(modulus) != 2 * e + 1:
        raise SetFileError(
            3, f"modulus needs {2 * e + 1} coefficients, got {len(modulus)}"
        )
    try:
        spec = FieldSpec(p, e, modulus_q2=modulus)
    except ValueError as exc:
        raise SetFileError(3, f"bad field parameters: {exc}") from None

    order = spec.fq2.order
    members = set()
    for lineno, raw in enumerate(lines[3:], start=4):
        parts = raw.split()
        if not parts:
            raise SetFileError(lineno, "blank line in matrix body")
        if len(parts) != n * n:
            raise SetFileError(
                lineno, f"expected {n * n} entries, got {len(parts)}"
            )
        try:
            codes = [int(x) for x in parts]
        except ValueError:
            raise SetFileError(lineno, "non-integer matrix entry") from None
        for x in codes:
            if not 0 <= x < order:
                raise SetFileError(
                    lineno, f"entry {x} outside the field of order {order}"
                )
        m = tuple(tuple(codes[i * n : (i + 1) * n]) for i in range(n))
        if not is_hermitian(spec, m):
            raise SetFileError(lineno, "matrix is not hermitian")
        if m in members:
            raise SetFileError(lineno, "duplicate matrix")
        members.add(m)

    try:
        return RankSet(spec, n, k, frozenset(members))
    except ValueError as exc:
        raise SetFileError(2, str(exc)) from None


def parse_set_file(path: str) -> RankSet:
    with open(path, "r", encoding="ascii") as fh:
        return parse_set_text(fh.read())


def write_set_file(path: str, u: RankSet) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_set(u))
