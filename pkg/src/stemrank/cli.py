"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 refused computation (size caps),
4 verification found disagreements.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .cache import cached_analyze
from .characters import CharacterError, table_from_json, tables_agree, character_table
from .groups import CapExceeded, GroupError, build_group, max_order, parse_group, spec_from_json
from .report import (SliceSpec, analysis_to_json, dumps, format_analysis_tex, format_analysis_text,
                     format_lattice, format_strata_text, orientation_json, render_png, render_svg,
                     render_tsv, slice_points, strata_to_json)
from .strata import (Analysis, MackeyCoefficients, analyze_table, load_claims, mackey_rank, rank_at,
                     verify_claims)

log = logging.getLogger("stemrank")

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_DISAGREE = 0, 2, 3, 4

CATALOG_SUITE = (
    [f"C{n}" for n in range(1, 13)]
    + [f"Dih({n})" for n in range(3, 7)]
    + ["K4", "Q8", "Dic3", "S3", "S4", "C2xC2xC2", "C2xS3", "C3xC3"]
)


class UsageError(Exception):
    pass


def _group_spec(text: str):
    if text.endswith(".json") or os.path.sep in text:
        try:
            with open(text) as fh:
                return spec_from_json(json.load(fh))
        except FileNotFoundError:
            raise UsageError(f"group file {text!r} not found")
    return parse_group(text)


def _analysis(args) -> Analysis:
    spec = _group_spec(args.group)
    return cached_analyze(spec, args.method, use_cache=not args.no_cache)


def _irrep_index(A: Analysis, token: str) -> int:
    """0-based position of an irrep given by name or by its 1-based index."""
    token = token.strip()
    if token in A.names:
        return A.names.index(token)
    try:
        k = int(token)
    except ValueError:
        raise UsageError(f"unknown irrep {token!r}; known: {', '.join(A.names)}")
    if not 1 <= k <= A.rank:
        raise UsageError(f"irrep index {k} out of range 1..{A.rank}")
    return k - 1


def parse_alpha(A: Analysis, text: str) -> tuple[int, ...]:
    """``a1,a2,...`` positionally, or ``name=v,...`` with unnamed coordinates 0."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if parts and all("=" in p for p in parts):
        out = [0] * A.rank
        for p in parts:
            k, v = p.split("=", 1)
            out[_irrep_index(A, k)] += int(v)
        return tuple(out)
    try:
        vals = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse --alpha {text!r}")
    if len(vals) != A.rank:
        raise UsageError(f"--alpha needs {A.rank} coordinates ({', '.join(A.names)}), got {len(vals)}")
    return vals


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range must look like lo..hi, got {text!r}")


def _emit(text: str, out=None):
    (out or sys.stdout).write(text)


# --------------------------------------------------------------------------
# commands


def cmd_groups(args) -> int:
    if args.action != "list":
        raise UsageError("only 'groups list' is supported")
    print("families: Cn(n) / C<n>, Dih(n) / D<2n>, Dic(n) / Q8, Klein4 / K4, Sym(n) / S<n>, "
          "products AxB, permutation groups via JSON {\"perm_generators\": [...]}")
    print(f"order cap: {max_order()} (STEMRANK_MAX_ORDER)")
    print("name\torder")
    for name in CATALOG_SUITE:
        print(f"{parse_group(name).name}\t{build_group(name).order}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    A = _analysis(args)
    if args.format == "json":
        _emit(dumps(analysis_to_json(A)))
    elif args.format == "tex":
        _emit(format_analysis_tex(A))
    elif args.format == "orientation":
        _emit(dumps([orientation_json(c, A.names) for c in A.classes]))
    else:
        _emit(format_analysis_text(A))
    return EXIT_OK


def cmd_rank(args) -> int:
    A = _analysis(args)
    res = rank_at(A, parse_alpha(A, args.alpha))
    labels = [A.classes[w].label for w in res.witnesses]
    print(f"r = {res.rank}; witnesses: [{', '.join(labels)}]")
    return EXIT_OK


def cmd_strata(args) -> int:
    A = _analysis(args)
    _emit(dumps(strata_to_json(A)) if args.format == "json" else format_strata_text(A))
    return EXIT_OK


def cmd_slice(args) -> int:
    A = _analysis(args)
    axes = args.axes.split(",")
    if len(axes) != 2:
        raise UsageError("--axes needs exactly two irreps")
    i, j = (_irrep_index(A, t) for t in axes)
    if i == j:
        raise UsageError("slice axes must differ")
    fixed = {}
    for f in args.fix or []:
        if "=" not in f:
            raise UsageError(f"--fix expects name=value, got {f!r}")
        k, v = f.split("=", 1)
        fixed[_irrep_index(A, k)] = int(v)
    if i in fixed or j in fixed:
        raise UsageError("a slice axis cannot also be fixed")
    lo, hi = _range(args.range)
    spec = SliceSpec(i, j, fixed, lo, hi)
    points = slice_points(A, spec)
    text = render_svg(A, spec, points) if args.out == "svg" else render_tsv(points)
    if args.output:
        Path(args.output).write_text(text)
    else:
        _emit(text)
    if args.figure:
        render_png(A, spec, args.figure, points)
    return EXIT_OK


def cmd_mackey(args) -> int:
    A = _analysis(args)
    alpha = parse_alpha(A, args.alpha)
    if args.coeff in ("burnside", "zero"):
        obj = args.coeff
    else:
        with open(args.coeff) as fh:
            obj = json.load(fh)
    try:
        M = MackeyCoefficients.from_json(A, obj)
    except (KeyError, LookupError) as exc:
        raise UsageError(f"bad coefficient file: {exc}")
    print(f"r = {mackey_rank(A, alpha, M)}")
    return EXIT_OK


def _bundled_claims(name: str):
    ref = resources.files("stemrank") / "data" / "claims" / f"{name}.json"
    if not ref.is_file():
        raise UsageError(f"no bundled claims for {name}; pass --claims FILE")
    return json.loads(ref.read_text())


def cmd_verify(args) -> int:
    A = _analysis(args)
    if args.claims:
        with open(args.claims) as fh:
            obj = json.load(fh)
    else:
        obj = _bundled_claims(A.group.name)
    R = verify_claims(A, load_claims(A, obj))
    if args.format == "json":
        _emit(dumps(verification_json(A, R)))
    else:
        _emit(format_verification(A, R))
    return EXIT_OK if R.ok else EXIT_DISAGREE


def verification_json(A: Analysis, R) -> dict:
    return {
        "group": A.group.name,
        "oracle": R.oracle_available,
        "claims": [{
            "label": c.claim.label, "kind": c.claim.kind, "classes": list(c.claim.classes),
            "equal": c.equal, "relation": c.relation,
            "computed": [list(b) for b in c.lattice.basis],
            "generators": [{"vector": list(g.vector), "in_computed": g.computed, "oracle": g.oracle}
                           for g in c.generators],
        } for c in R.checks],
        "oracle_disagreements": [{"label": lab, "vector": list(g.vector)} for lab, g in R.oracle_disagreements],
        "claim_disagreements": [{"label": lab, "detail": d} for lab, d in R.claim_disagreements],
    }


def format_verification(A: Analysis, R) -> str:
    n = len(R.checks)
    agree = sum(1 for c in R.checks if c.equal and not c.claim_disagreements)
    lines = [f"{A.group.name}: {n} claims, {agree} confirmed, {n - agree} disputed; "
             f"matrix oracle {'used' if R.oracle_available else 'unavailable'}; "
             f"oracle disagreements: {len(R.oracle_disagreements)}"]
    for c in R.checks:
        if c.equal and not c.claim_disagreements:
            continue
        lines.append(f"  DISPUTED {c.claim.label} [{', '.join(c.claim.classes)}]: {c.relation}")
        lines.append(f"      claimed  {format_lattice(c.claimed_span, A.names)}")
        lines.append(f"      computed {format_lattice(c.lattice, A.names)}")
        for g in c.generators:
            if not g.computed:
                lines.append(f"      generator {list(g.vector)} fails: "
                             + "; ".join(f"{k}: dim0={v['dim_zero']} oriented={v['oriented']}"
                                         for k, v in g.per_class.items()))
    for lab, g in R.oracle_disagreements:
        lines.append(f"  ORACLE MISMATCH {lab}: {list(g.vector)}")
    return "\n".join(lines) + "\n"


def cmd_import(args) -> int:
    with open(args.file) as fh:
        obj = json.load(fh)
    spec_obj = obj.get("group")
    if args.group:
        spec = _group_spec(args.group)
    elif spec_obj:
        spec = spec_from_json(spec_obj)
    else:
        raise UsageError("table has no group spec; pass --group")
    G = build_group(spec)
    try:
        T = table_from_json(G, obj, "imported")
    except CharacterError as exc:
        print(f"import rejected: {exc}", file=sys.stderr)
        return EXIT_USAGE
    agree = tables_agree(T, character_table(G, args.method))
    print(f"imported table for {G.name}: {len(T.chars)} characters, orthogonality verified; "
          f"agrees with computed table: {'yes' if agree else 'NO'}")
    _emit(format_analysis_text(analyze_table(T)))
    return EXIT_OK if agree else EXIT_DISAGREE


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stemrank", description="Ranks of RO(G)-graded rational stable stems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--method", choices=["auto", "catalog", "dixon"], default="auto",
                   help="character table source")
    p.add_argument("--no-cache", action="store_true", help="bypass the on-disk cache")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("groups", help="list catalog groups")
    s.add_argument("action", choices=["list"])
    s.set_defaults(func=cmd_groups)

    s = sub.add_parser("analyze", help="subgroup classes, lattices and orientation data")
    s.add_argument("group")
    s.add_argument("--format", choices=["text", "json", "tex", "orientation"], default="text")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("rank", help="rank of the stem at one degree")
    s.add_argument("group")
    s.add_argument("--alpha", required=True, help="a1,a2,... or name=v,...")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("strata", help="intersection strata with generic ranks")
    s.add_argument("group")
    s.add_argument("--format", choices=["text", "json"], default="json")
    s.set_defaults(func=cmd_strata)

    s = sub.add_parser("slice", help="ranks over a 2-d slice of RO(G)")
    s.add_argument("group")
    s.add_argument("--axes", required=True, help="two irreps, by name or 1-based index")
    s.add_argument("--fix", action="append", help="name=value for a non-axis coordinate")
    s.add_argument("--range", default="-10..10")
    s.add_argument("--out", choices=["tsv", "svg"], default="tsv")
    s.add_argument("--output", help="write to this file instead of stdout")
    s.add_argument("--figure", help="also render a PNG figure here (needs matplotlib)")
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("mackey-rank", help="rank with general Mackey coefficients")
    s.add_argument("group")
    s.add_argument("--alpha", required=True)
    s.add_argument("--coeff", default="burnside", help="JSON file, 'burnside' or 'zero'")
    s.set_defaults(func=cmd_mackey)

    s = sub.add_parser("verify", help="check printed lattice claims")
    s.add_argument("group")
    s.add_argument("--claims", help="claims JSON (default: bundled claims for the group)")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("import-table", help="import and verify a character table")
    s.add_argument("file")
    s.add_argument("--group", help="group, if the file carries no spec")
    s.set_defaults(func=cmd_import)
    return p


_VALUE_OPTIONS = ("--alpha", "--range", "--fix", "--axes")


def _glue_values(argv):
    """Join ``--range -4..4`` into ``--range=-4..4`` so negative values are not read as flags."""
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_OPTIONS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GroupError, ValueError, KeyError, IndexError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
