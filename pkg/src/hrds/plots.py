"""Figure rendering for the report commands.

Each renderer takes the already-computed result object and writes one
file; nothing here feeds back into the exact arithmetic.  The Agg
backend is forced so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_APPLIES_COLORS = {"general": "#2a6fdb", "linear": "#999999", "literature": "#d98e04"}


def render_eigen_table(table, path: str) -> None:
    """Annotated heatmap of the eigenvalue table P_i(j)."""
    size = table.n + 1
    fig, ax = plt.subplots(figsize=(1.2 * size + 2, 1.0 * size + 1.5))
    data = [[float(v) for v in row] for row in table.rows]
    largest = max(abs(v) for row in table.rows for v in row)
    ax.imshow(data, cmap="RdBu", vmin=-largest, vmax=largest)
    for i in range(size):
        for j in range(size):
            ax.text(j, i, str(table.rows[i][j]), ha="center", va="center", fontsize=9)
    ax.set_xticks(range(size))
    ax.set_yticks(range(size))
    ax.set_xlabel("rank class j")
    ax.set_ylabel("character index i")
    ax.set_title(f"P_i(j) for H_{table.n}(F_{table.q ** 2})")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_bound_report(report, path: str) -> None:
    """Horizontal bars, one per bound entry, ceiling marked."""
    entries = report.entries
    fig, ax = plt.subplots(figsize=(8, 0.6 * len(entries) + 2))
    names = [e.name for e in entries]
    values = [float(e.value) for e in entries]
    colors = [_APPLIES_COLORS.get(e.applies_to, "#444444") for e in entries]
    ax.barh(range(len(entries)), values, color=colors)
    for i, e in enumerate(entries):
        ax.text(float(e.value), i, f" {e.value} ({e.applies_to})", va="center", fontsize=9)
    ax.axvline(report.certified_ceiling, color="black", linestyle="--", linewidth=1)
    ax.set_yticks(range(len(entries)))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("size bound")
    ax.set_title(
        f"bounds for rank-distance {report.k} sets in H_{report.n}"
        f"(F_{report.q ** 2}); certified ceiling {report.certified_ceiling}"
    )
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_distribution(dist, transform, feasible, path: str) -> None:
    """Inner distribution next to its Delsarte transform."""
    idx = range(len(dist))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.bar(idx, [float(v) for v in dist], color="#2a6fdb")
    ax1.set_xlabel("rank distance j")
    ax1.set_ylabel("a_j")
    ax1.set_title("inner distribution")
    colors = ["#2a9d4b" if v >= 0 else "#c83232" for v in transform]
    ax2.bar(idx, [float(v) for v in transform], color=colors)
    ax2.axhline(0, color="black", linewidth=0.8)
    ax2.set_xlabel("character index i")
    ax2.set_ylabel("(aQ)_i")
    ax2.set_title(f"Delsarte transform ({'feasible' if feasible else 'INFEASIBLE'})")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_spectrum(result, ceiling, path: str) -> None:
    """Achieved maximal-set sizes against the certified ceiling."""
    fig, ax = plt.subplots(figsize=(8, 2.8))
    sizes = list(result.sizes)
    ax.plot(sizes, [1] * len(sizes), "o", markersize=9, color="#2a6fdb")
    for s in sizes:
        ax.annotate(str(s), (s, 1), textcoords="offset points", xytext=(0, 10), ha="center")
    ax.axvline(ceiling, color="#c83232", linestyle="--", linewidth=1)
    ax.annotate(f"ceiling {ceiling}", (ceiling, 1), textcoords="offset points", xytext=(4, -18))
    lo = min(sizes + [ceiling])
    hi = max(sizes + [ceiling])
    ax.set_xlim(lo - 1, hi + 1)
    ax.set_yticks([])
    ax.set_xlabel("maximal set size")
    flag = "" if result.complete else " (incomplete)"
    ax.set_title(
        f"maximal rank-distance {result.k} sets in H_{result.n}"
        f"(F_{result.q ** 2}){flag}"
    )
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
