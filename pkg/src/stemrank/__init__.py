"""Ranks of RO(G)-graded rational stable stems of finite groups."""

__version__ = "0.1.0"

from .groups import build_group, parse_group  # noqa: E402
from .strata import analyze, mackey_rank, rank_at, strata_report, verify_claims  # noqa: E402

__all__ = ["__version__", "analyze", "build_group", "mackey_rank", "parse_group", "rank_at",
           "strata_report", "verify_claims"]
