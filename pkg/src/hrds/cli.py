"""Command-line surface.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success or
property verified, 1 a checked property is violated, 2 usage error
(including malformed files), 3 budget exceeded or search cut off.
Every command is deterministic for fixed flags; ``--json`` switches the
report to a machine-readable rendering of the same values, and
``--figure`` additionally renders the report as a figure file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import (
    ProjectivePartialSpread,
    UdeltaParams,
    construct_udelta,
    desarguesian_spread,
    extend_to_hermitian,
    lift_partial_spread,
    pg_point_spread,
    trace_gram_spread_set,
)
from .errors import BudgetError, SetFileError
from .field import spec_for_q
from .hermitian import RankSet
from .scheme import bound_catalog, delsarte_check, eigen_table, inner_distribution
from .search import (
    DEFAULT_VERTEX_BUDGET,
    first_extension,
    is_constant_rank_distance,
    maximal_set_spectrum,
)
from .setfile import parse_set_file, serialize_set, write_set_file


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _note(line: str) -> None:
    sys.stderr.write(line + "\n")


def _emit(report: dict, as_json: bool, text_lines) -> None:
    if as_json:
        _out(json.dumps(report, default=str))
    else:
        for line in text_lines:
            _out(line)


def _matrix_codes(m) -> str:
    return " ".join(str(x) for row in m for x in row)


# -- report commands --------------------------------------------------------

def _cmd_eigen(args) -> int:
    spec = spec_for_q(args.q)
    table = eigen_table(spec.q, args.n)
    report = {
        "command": "eigen",
        "parameters": {"q": spec.q, "n": args.n},
        "results": {"ambient_size": table.ambient_size, "rows": [list(r) for r in table.rows]},
    }
    width = max(len(str(v)) for row in table.rows for v in row)
    lines = [
        f"eigenvalue table of the rank-distance scheme on H_{args.n}(F_{spec.q ** 2})",
        f"ambient size {table.ambient_size}; entry (i, j) is P_i(j), "
        "character i at rank class j",
    ]
    lines += ["  " + "  ".join(str(v).rjust(width) for v in row) for row in table.rows]
    _emit(report, args.json, lines)
    if args.figure:
        from .plots import render_eigen_table

        render_eigen_table(table, args.figure)
        _note(f"figure written to {args.figure}")
    return 0


def _cmd_bound(args) -> int:
    spec = spec_for_q(args.q)
    report_obj = bound_catalog(spec.q, args.n, args.k)
    entries = [
        {
            "name": e.name,
            "value": e.value,
            "applies_to": e.applies_to,
            "condition": e.condition,
            "derivation": e.derivation,
        }
        for e in report_obj.entries
    ]
    report = {
        "command": "bound",
        "parameters": {"q": spec.q, "n": args.n, "k": args.k},
        "results": {
            "entries": entries,
            "certified_ceiling": report_obj.certified_ceiling,
        },
    }
    lines = [
        f"size bounds for constant rank-distance {args.k} sets in "
        f"H_{args.n}(F_{spec.q ** 2})"
    ]
    name_w = max(len(e.name) for e in report_obj.entries)
    val_w = max(len(str(e.value)) for e in report_obj.entries)
    for e in report_obj.entries:
        lines.append(
            f"  {e.name.ljust(name_w)}  {str(e.value).rjust(val_w)}"
            f"  [{e.applies_to}]  {e.condition}"
        )
        lines.append(f"  {' ' * name_w}  {' ' * val_w}  derivation: {e.derivation}")
    lines.append(f"certified ceiling for general sets: {report_obj.certified_ceiling}")
    _emit(report, args.json, lines)
    if args.figure:
        from .plots import render_bound_report

        render_bound_report(report_obj, args.figure)
        _note(f"figure written to {args.figure}")
    return 0


# -- constructions ----------------------------------------------------------

def _deliver_set(u: RankSet, args, extra: dict) -> int:
    text = serialize_set(u)
    report = {
        "command": "construct",
        "parameters": extra,
        "results": {
            "size": len(u),
            "n": u.n,
            "k": u.k,
            "members": [[list(row) for row in m] for m in sorted(u.members)],
            "setfile": text,
        },
    }
    if args.output:
        write_set_file(args.output, u)
        _note(f"{len(u)} matrices written to {args.output}")
        if args.json:
            _out(json.dumps(report, default=str))
    else:
        if args.json:
            _out(json.dumps(report, default=str))
        else:
            sys.stdout.write(text)
    return 0


def _cmd_construct_udelta(args) -> int:
    spec = spec_for_q(args.q)
    if args.delta_set is not None:
        chosen = frozenset(int(t) for t in args.delta_set.split(","))
        mu = args.mu if args.mu is not None else None
        from .constructions import select_mu

        params = UdeltaParams(
            spec, len(chosen), chosen, select_mu(spec) if mu is None else mu
        )
        params.validate()
    elif args.mu is not None:
        params = UdeltaParams(spec, args.delta, frozenset(range(args.delta)), args.mu)
        params.validate()
    else:
        params = UdeltaParams.default(spec, args.delta)
    u = construct_udelta(params)
    _note(
        f"interval construction: size {len(u)} = q^2 + delta - 1, "
        f"partial spread size {len(u) + 1}, mu = {params.mu}"
    )
    return _deliver_set(
        u,
        args,
        {
            "variant": "udelta",
            "q": spec.q,
            "delta": params.delta,
            "delta_set": sorted(params.delta_set),
            "mu": params.mu,
        },
    )


def _cmd_construct_trace_gram(args) -> int:
    spec = spec_for_q(args.q)
    sset = trace_gram_spread_set(spec, args.n)
    u = extend_to_hermitian(spec, sset)
    _note(
        f"trace-Gram linear spread set: size {len(u)} = q^n, "
        "extended to hermitian form"
    )
    return _deliver_set(
        u, args, {"variant": "trace-gram", "q": spec.q, "n": args.n}
    )


def _cmd_construct_lift(args, spread: ProjectivePartialSpread, variant: str) -> int:
    u = lift_partial_spread(spread)
    _note(
        f"lifted {len(spread)} pairwise-disjoint subspaces to a "
        f"rank-distance {u.k} set of size {len(u)}"
    )
    params = {"variant": variant, "q": spread.spec.q, "n": args.n, "r": spread.r}
    return _deliver_set(u, args, params)


def _cmd_construct_lift_points(args) -> int:
    spec = spec_for_q(args.q)
    return _cmd_construct_lift(args, pg_point_spread(spec, args.n), "lift-points")


def _cmd_construct_lift_desarguesian(args) -> int:
    spec = spec_for_q(args.q)
    spread = desarguesian_spread(spec, args.n, args.r)
    return _cmd_construct_lift(args, spread, "lift-desarguesian")


# -- verification and distribution ------------------------------------------

def _cmd_verify(args) -> int:
    u = parse_set_file(args.file)
    k = args.k if args.k is not None else u.k
    ok, violation = is_constant_rank_distance(u.spec, u.members, k)
    report = {
        "command": "verify",
        "parameters": {"file": args.file, "k": k, "maximal": bool(args.maximal)},
        "results": {"size": len(u), "constant_rank_distance": ok},
    }
    lines = [f"{args.file}: {len(u)} matrices, declared rank distance {k}"]
    if not ok:
        kind = violation[0]
        if kind == "member":
            _, m, r = violation
            report["results"]["violation"] = {
                "kind": "member",
                "matrix": _matrix_codes(m),
                "rank": r,
            }
            lines.append(
                f"violated: member [{_matrix_codes(m)}] has rank {r}, not {k}"
            )
        else:
            _, a, b, r = violation
            report["results"]["violation"] = {
                "kind": "pair",
                "first": _matrix_codes(a),
                "second": _matrix_codes(b),
                "rank": r,
            }
            lines.append(
                f"violated: pair [{_matrix_codes(a)}] and [{_matrix_codes(b)}] "
                f"differ in rank {r}, not {k}"
            )
        _emit(report, args.json, lines)
        return 1
    lines.append("constant rank-distance property holds")
    if args.maximal:
        valid = RankSet(u.spec, u.n, k, u.members)
        ext = first_extension(valid)
        report["results"]["maximal"] = ext is None
        if ext is not None:
            report["results"]["extension"] = _matrix_codes(ext)
            lines.append(f"not maximal: extendable by [{_matrix_codes(ext)}]")
            _emit(report, args.json, lines)
            return 1
        lines.append("maximal: no extending matrix exists")
    _emit(report, args.json, lines)
    return 0


def _cmd_distribution(args) -> int:
    u = parse_set_file(args.file)
    if not u.members:
        raise SetFileError(4, "distribution of an empty set is undefined")
    dist = inner_distribution(u.spec, u.members)
    table = eigen_table(u.spec.q, u.n)
    transform, feasible = delsarte_check(dist, table)
    report = {
        "command": "distribution",
        "parameters": {"file": args.file},
        "results": {
            "size": len(u),
            "inner_distribution": [str(v) for v in dist],
            "transform": [str(v) for v in transform],
            "feasible": feasible,
        },
    }
    lines = [
        f"{args.file}: {len(u)} matrices in H_{u.n}(F_{u.spec.q ** 2})",
        "inner distribution a: " + " ".join(str(v) for v in dist),
        "Delsarte transform (aQ): " + " ".join(str(v) for v in transform),
        f"feasible: {'yes' if feasible else 'no'}",
    ]
    _emit(report, args.json, lines)
    if args.figure:
        from .plots import render_distribution

        render_distribution(dist, transform, feasible, args.figure)
        _note(f"figure written to {args.figure}")
    return 0 if feasible else 1


# -- search -----------------------------------------------------------------

def _cmd_search_spectrum(args) -> int:
    spec = spec_for_q(args.q)
    result = maximal_set_spectrum(
        spec,
        args.n,
        args.k,
        vertex_budget=args.budget,
        time_limit=args.time_limit,
        threads=args.threads,
    )
    report = {
        "command": "search spectrum",
        "parameters": {
            "q": spec.q,
            "n": args.n,
            "k": args.k,
            "budget": args.budget,
        },
        "results": {
            "sizes": list(result.sizes),
            "maximal_cliques": result.clique_count,
            "complete": result.complete,
        },
    }
    lines = [
        f"maximal constant rank-distance {args.k} sets in H_{args.n}(F_{spec.q ** 2})",
        "sizes: " + " ".join(str(s) for s in result.sizes),
        f"maximal cliques through 0: {result.clique_count}",
        f"complete: {'yes' if result.complete else 'no'}",
    ]
    _emit(report, args.json, lines)
    _note(f"search took {result.elapsed:.1f}s")
    if args.witness_dir:
        import os

        os.makedirs(args.witness_dir, exist_ok=True)
        for size, witness in result.witnesses.items():
            path = os.path.join(args.witness_dir, f"witness-{size}.hrds")
            write_set_file(path, witness)
        _note(f"{len(result.witnesses)} witness files written to {args.witness_dir}")
    if args.figure:
        from .plots import render_spectrum

        ceiling = bound_catalog(spec.q, args.n, args.k).certified_ceiling
        render_spectrum(result, ceiling, args.figure)
        _note(f"figure written to {args.figure}")
    if not result.complete:
        _note("time ceiling hit: the size list is incomplete")
        return 3
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrds",
        description="Exact toolkit for constant rank-distance sets of "
        "hermitian matrices over F_{q^2}",
    )
    parser.add_argument("--threads", type=int, default=1, help="worker cap for search")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="cmd", required=True)

    pe = sub.add_parser("eigen", help="print the eigenvalue table")
    pe.add_argument("--q", type=int, required=True)
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--figure", help="render the table to this file")
    pe.set_defaults(func=_cmd_eigen)

    pb = sub.add_parser("bound", help="print the size-bound catalog")
    pb.add_argument("--q", type=int, required=True)
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--k", type=int, required=True)
    pb.add_argument("--figure", help="render the catalog to this file")
    pb.set_defaults(func=_cmd_bound)

    pc = sub.add_parser("construct", help="build a known set")
    pcs = pc.add_subparsers(dest="variant", required=True)

    pcu = pcs.add_parser("udelta", help="interval construction in H_2")
    pcu.add_argument("--q", type=int, required=True)
    pcu.add_argument("--delta", type=int, default=1)
    pcu.add_argument("--mu", type=int, help="override the quadratic coefficient")
    pcu.add_argument("--delta-set", help="comma-separated F_q codes containing 0")
    pcu.add_argument("-o", "--output", help="write the set file here")
    pcu.set_defaults(func=_cmd_construct_udelta)

    pct = pcs.add_parser("trace-gram", help="linear symmetric spread set, extended")
    pct.add_argument("--q", type=int, required=True)
    pct.add_argument("--n", type=int, required=True)
    pct.add_argument("-o", "--output", help="write the set file here")
    pct.set_defaults(func=_cmd_construct_trace_gram)

    pcp = pcs.add_parser("lift-points", help="Gram lift of all projective points")
    pcp.add_argument("--q", type=int, required=True)
    pcp.add_argument("--n", type=int, required=True)
    pcp.add_argument("-o", "--output", help="write the set file here")
    pcp.set_defaults(func=_cmd_construct_lift_points)

    pcd = pcs.add_parser(
        "lift-desarguesian", help="Gram lift of a field-reduction spread"
    )
    pcd.add_argument("--q", type=int, required=True)
    pcd.add_argument("--n", type=int, required=True)
    pcd.add_argument("--r", type=int, required=True)
    pcd.add_argument("-o", "--output", help="write the set file here")
    pcd.set_defaults(func=_cmd_construct_lift_desarguesian)

    pv = sub.add_parser("verify", help="check a set file")
    pv.add_argument("--file", required=True)
    pv.add_argument("--k", type=int, help="override the declared rank distance")
    pv.add_argument("--maximal", action="store_true", help="also test maximality")
    pv.set_defaults(func=_cmd_verify)

    pd = sub.add_parser("distribution", help="inner distribution and Delsarte test")
    pd.add_argument("--file", required=True)
    pd.add_argument("--figure", help="render the distribution to this file")
    pd.set_defaults(func=_cmd_distribution)

    ps = sub.add_parser("search", help="exhaustive search")
    pss = ps.add_subparsers(dest="what", required=True)
    psp = pss.add_parser("spectrum", help="all maximal-set sizes")
    psp.add_argument("--q", type=int, required=True)
    psp.add_argument("--n", type=int, required=True)
    psp.add_argument("--k", type=int, required=True)
    psp.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_VERTEX_BUDGET,
        help="largest admissible vertex count",
    )
    psp.add_argument("--time-limit", type=float, help="soft time ceiling in seconds")
    psp.add_argument("--witness-dir", help="write one witness set file per size")
    psp.add_argument("--figure", help="render the spectrum to this file")
    psp.set_defaults(func=_cmd_search_spectrum)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SetFileError as exc:
        _note(f"set file error: {exc}")
        return 2
    except BudgetError as exc:
        _note(f"budget exceeded: {exc}")
        return 3
    except OSError as exc:
        _note(f"file error: {exc}")
        return 2
    except ValueError as exc:
        _note(f"usage error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
