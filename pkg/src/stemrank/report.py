"""Emitters: analysis tables (text, JSON, TeX), strata JSON and slice plots.

Slices are written as TSV or as a hand-built SVG so the output is
byte-for-byte reproducible.  A PNG rendering through matplotlib is available
for convenience; matplotlib is imported only when it is asked for.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from html import escape
from typing import Sequence

from .characters import real_irreps, table_from_json, table_to_json
from .groups import build_group, spec_from_json
from .strata import Analysis, StratumReport, SubgroupAnalysis, rank_at, strata_report


# --------------------------------------------------------------------------
# analysis


def irrep_legend(A: Analysis) -> list[dict]:
    return [{"index": S.index, "name": S.name, "degree": S.degree, "type": S.fs_type} for S in A.irreps]


def analysis_to_json(A: Analysis) -> dict:
    G = A.group
    return {
        "group": G.spec.to_json() if G.spec else None,
        "name": G.name,
        "order": G.order,
        "irreps": irrep_legend(A),
        "table": table_to_json(A.table),
        "classes": [c.to_json(A.names) for c in A.classes],
    }


def analysis_from_json(obj: dict) -> Analysis:
    """Inverse of :func:`analysis_to_json`; the character table is re-verified."""
    if obj.get("group") is None:
        raise ValueError("analysis JSON carries no group spec")
    G = build_group(spec_from_json(obj["group"]))
    T = table_from_json(G, obj["table"], obj["table"].get("source", "imported"))
    irreps = real_irreps(T)
    names = [S.name for S in irreps]
    if names != [r["name"] for r in obj["irreps"]]:
        raise ValueError("irrep order in the JSON does not match the recomputed order")
    classes = [SubgroupAnalysis.from_json(c, names) for c in obj["classes"]]
    if len(classes) != len(G.subgroup_classes):
        raise ValueError("wrong number of subgroup classes")
    return Analysis(G, T, irreps, classes)


def orientation_json(c: SubgroupAnalysis, names: Sequence[str]) -> dict:
    return {"class_id": c.class_id, "weyl_order": c.weyl_order, "e2_rank": c.e2_rank,
            "signs": {n: list(r) for n, r in zip(names, c.signs)}}


def _fmt_vec(v: Sequence[int], names: Sequence[str]) -> str:
    terms = []
    for a, n in zip(v, names):
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        body = n if mag == 1 else f"{mag}{n}" if n != "1" else f"{mag}"
        if n == "1" and mag == 1:
            body = "1"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, b in terms[1:]:
        out += f" {s} {b}"
    return out


def format_lattice(L, names: Sequence[str]) -> str:
    if not L.basis:
        return "{0}"
    return "Z{" + ", ".join(_fmt_vec(b, names) for b in L.basis) + "}"


def format_analysis_text(A: Analysis) -> str:
    G = A.group
    lines = [f"group {G.name}  order {G.order}  table source {A.table.source}",
             "irreps:"]
    for S in A.irreps:
        lines.append(f"  {S.index}: {S.name}  degree {S.degree}  {S.fs_type}")
    lines.append("subgroup classes:")
    for c in A.classes:
        lines.append(f"  [{c.class_id}] {c.label}  |H|={c.order}  |W|={c.weyl_order}  "
                     f"d={list(c.dims)}  e2_rank={c.e2_rank}  [N:N+]={c.plus_index}")
        lines.append(f"      N   = {format_lattice(c.null, A.names)}")
        lines.append(f"      N+  = {format_lattice(c.plus, A.names)}")
    lines.append(f"r_0 = {rank_at(A, [0] * A.rank).rank}")
    return "\n".join(lines) + "\n"


def _tex_name(n: str) -> str:
    if n == "1":
        return "1"
    base, _, sub = n.partition("_")
    greek = {"sigma", "phi", "psi", "tau", "rho", "omega"}
    b = "\\" + base if base in greek else base
    return f"{b}_{{{sub}}}" if sub else b


def _tex_lattice(L, names: Sequence[str]) -> str:
    if not L.basis:
        return "\\{0\\}"
    return "\\mathbb{Z}\\{" + ", ".join(_fmt_vec(v, names) for v in L.basis) + "\\}"


def format_analysis_tex(A: Analysis) -> str:
    names = [_tex_name(n) for n in A.names]
    rows = ["\\begin{tabular}{lrrll}", "$H$ & $|W|$ & $[N:N^+]$ & $N_H$ & $N_H^+$ \\\\", "\\hline"]
    for c in A.classes:
        label = c.label.replace("<", "\\langle ").replace(">", "\\rangle")
        rows.append(f"${label}$ & {c.weyl_order} & {c.plus_index} & "
                    f"${_tex_lattice(c.null, names)}$ & ${_tex_lattice(c.plus, names)}$ \\\\")
    rows.append("\\end{tabular}")
    return "\n".join(rows) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


# --------------------------------------------------------------------------
# strata


def strata_to_json(A: Analysis, report: StratumReport | None = None) -> dict:
    report = report or strata_report(A)
    return {
        "group": A.group.spec.to_json() if A.group.spec else A.group.name,
        "irreps": A.names,
        "classes": [c.to_json(A.names) for c in A.classes],
        "strata": [{"basis": [list(b) for b in s.lattice.basis], "classes": list(s.classes),
                    "generic_rank": s.generic_rank} for s in report.strata],
    }


def format_strata_text(A: Analysis, report: StratumReport | None = None) -> str:
    report = report or strata_report(A)
    labels = [c.label for c in A.classes]
    lines = [f"{len(report.strata)} strata for {A.group.name}"]
    for s in report.strata:
        cls = ", ".join(labels[i] for i in s.classes)
        lines.append(f"  rank {s.generic_rank}: {format_lattice(s.lattice, A.names)}  [{cls}]")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# slices


@dataclass(frozen=True)
class SliceSpec:
    axis_i: int
    axis_j: int
    fixed: dict = field(default_factory=dict)  # coordinate index -> value
    lo: int = -10
    hi: int = 10

    def __post_init__(self):
        if self.axis_i == self.axis_j:
            raise ValueError("slice axes must differ")


@dataclass(frozen=True)
class SlicePoint:
    i: int
    j: int
    rank: int
    witnesses: tuple[int, ...]


def slice_points(A: Analysis, spec: SliceSpec) -> list[SlicePoint]:
    r = A.rank
    for ax in (spec.axis_i, spec.axis_j, *spec.fixed):
        if not 0 <= ax < r:
            raise IndexError(f"axis {ax} out of range for {r} irreps")
    base = [0] * r
    for k, v in spec.fixed.items():
        if k in (spec.axis_i, spec.axis_j):
            raise ValueError("a slice axis cannot also be fixed")
        base[k] = int(v)
    out = []
    for a in range(spec.lo, spec.hi + 1):
        for b in range(spec.lo, spec.hi + 1):
            alpha = list(base)
            alpha[spec.axis_i], alpha[spec.axis_j] = a, b
            res = rank_at(A, alpha)
            out.append(SlicePoint(a, b, res.rank, res.witnesses))
    return out


def render_tsv(points: Sequence[SlicePoint]) -> str:
    lines = ["i\tj\trank\twitnesses"]
    for p in points:
        lines.append(f"{p.i}\t{p.j}\t{p.rank}\t{';'.join(str(w) for w in p.witnesses)}")
    return "\n".join(lines) + "\n"


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#000000")


def _witness_colours(points: Sequence[SlicePoint]) -> dict[tuple[int, ...], str]:
    sets = sorted({p.witnesses for p in points if p.rank}, key=lambda w: (-len(w), w))
    return {w: PALETTE[k % len(PALETTE)] for k, w in enumerate(sets)}


def render_svg(A: Analysis, spec: SliceSpec, points: Sequence[SlicePoint] | None = None) -> str:
    """A plain SVG scatter plot, deterministic for fixed input."""
    points = slice_points(A, spec) if points is None else points
    labels = [c.label for c in A.classes]
    cell, margin, legend_w = 20, 40, 220
    n = max(spec.hi - spec.lo + 1, 0)
    size = max(n - 1, 0) * cell
    width, height = 2 * margin + size + legend_w, 2 * margin + size

    def px(a):
        return margin + (a - spec.lo) * cell

    def py(b):
        return margin + size - (b - spec.lo) * cell

    colours = _witness_colours(points)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<title>{escape(A.group.name)} slice</title>',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>']
    if n:
        x0 = px(0) if spec.lo <= 0 <= spec.hi else margin
        y0 = py(0) if spec.lo <= 0 <= spec.hi else margin + size
        out.append(f'<line x1="{margin}" y1="{y0}" x2="{margin + size}" y2="{y0}" stroke="#888888"/>')
        out.append(f'<line x1="{x0}" y1="{margin}" x2="{x0}" y2="{margin + size}" stroke="#888888"/>')
    out.append(f'<text x="{margin + size + 8}" y="{(margin + size // 2) if n else margin}" '
               f'font-size="12">{escape(A.names[spec.axis_i])}</text>')
    out.append(f'<text x="{margin}" y="{margin - 10}" font-size="12">{escape(A.names[spec.axis_j])}</text>')
    for p in points:
        if p.rank:
            out.append(f'<circle cx="{px(p.i)}" cy="{py(p.j)}" r="{2 + 2 * p.rank}" '
                       f'fill="{colours[p.witnesses]}"/>')
    lx = 2 * margin + size + 10
    for k, (w, col) in enumerate(colours.items()):
        y = margin + 18 * k
        text = escape("rank %d: %s" % (len(w), ", ".join(labels[c] for c in w)))
        out.append(f'<circle cx="{lx}" cy="{y}" r="5" fill="{col}"/>')
        out.append(f'<text x="{lx + 10}" y="{y + 4}" font-size="11">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_png(A: Analysis, spec: SliceSpec, path, points: Sequence[SlicePoint] | None = None):
    """Write a matplotlib rendering of the slice to ``path`` (needs matplotlib)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    points = slice_points(A, spec) if points is None else points
    labels = [c.label for c in A.classes]
    colours = _witness_colours(points)
    fig, ax = plt.subplots(figsize=(6, 5))
    for w, col in colours.items():
        xs = [p.i for p in points if p.witnesses == w]
        ys = [p.j for p in points if p.witnesses == w]
        ax.scatter(xs, ys, s=12 + 12 * len(w), c=col,
                   label="rank %d: %s" % (len(w), ", ".join(labels[c] for c in w)))
    ax.axhline(0, color="0.6", lw=0.8)
    ax.axvline(0, color="0.6", lw=0.8)
    ax.set_xlim(spec.lo - 0.5, spec.hi + 0.5)
    ax.set_ylim(spec.lo - 0.5, spec.hi + 0.5)
    ax.set_aspect("equal")
    ax.set_xlabel(A.names[spec.axis_i])
    ax.set_ylabel(A.names[spec.axis_j])
    ax.set_title(f"{A.group.name}: degrees of infinite rank")
    if colours:
        ax.legend(fontsize=7, loc="upper left", bbox_to_anchor=(1.01, 1.0))
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path
