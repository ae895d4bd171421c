"""Content-addressed on-disk cache of analyses.

An entry holds the serialized character table and subgroup analyses of one
group, keyed by a hash of the group spec, the table method and the package
version.  Entries are written atomically and the character table is checked
for orthogonality again whenever an entry is loaded.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from . import __version__
from .groups import FiniteGroup, GroupSpec, build_group
from .strata import Analysis, analyze

log = logging.getLogger(__name__)

ENV_VAR = "STEMRANK_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "stemrank"


def cache_key(spec: GroupSpec, method: str = "auto") -> str:
    payload = json.dumps({"spec": spec.key(), "method": method, "version": __version__}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _path(spec: GroupSpec, method: str, root: Path | None) -> Path:
    return (root or cache_dir()) / f"{cache_key(spec, method)}.json"


def store(A: Analysis, method: str = "auto", root: Path | None = None) -> Path:
    from .report import analysis_to_json

    path = _path(A.group.spec, method, root)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(analysis_to_json(A), fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load(spec: GroupSpec, method: str = "auto", root: Path | None = None) -> Analysis | None:
    """The cached analysis, or None on a miss or an entry that fails validation."""
    from .report import analysis_from_json

    path = _path(spec, method, root)
    if not path.exists():
        return None
    try:
        with open(path) as fh:
            obj = json.load(fh)
        A = analysis_from_json(obj)
    except Exception as exc:  # a corrupt entry is a miss, not a failure
        log.warning("ignoring cache entry %s: %s", path, exc)
        return None
    if A.group.spec.key() != spec.key():
        return None
    return A


def cached_analyze(group: GroupSpec | FiniteGroup | str, method: str = "auto",
                   use_cache: bool = True, root: Path | None = None) -> Analysis:
    G = group if isinstance(group, FiniteGroup) else build_group(group)
    if not use_cache or G.spec is None:
        return analyze(G, method)
    hit = load(G.spec, method, root)
    if hit is not None:
        return hit
    A = analyze(G, method)
    try:
        store(A, method, root)
    except OSError as exc:
        log.warning("could not write cache entry: %s", exc)
    return A
