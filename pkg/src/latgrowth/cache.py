"""On-disk cache for enumeration count tables.

One JSON file per (kind, dimension, rooting) triple, named
``counts_{kind}_d{dimension}_{rooting}.json``.  Counts are stored as
decimal strings so arbitrary-precision integers survive any JSON reader.
Only complete tables are cached; a budget-truncated run is a property of
that run, not of the lattice, and must not poison later reads.

Readers are forgiving: a missing file, an unreadable file, a schema
version bump, or a shape mismatch all return None, and the caller simply
recounts.
"""

from __future__ import annotations

import json
from pathlib import Path

from .counting import KINDS, ROOTINGS, CountResult, count_animals

SCHEMA_VERSION = 1

_GENERATOR = "untried-set"


def cache_path(directory: str | Path, dimension: int, kind: str, rooting: str) -> Path:
    return Path(directory) / f"counts_{kind}_d{dimension}_{rooting}.json"


def save_counts(directory: str | Path, result: CountResult) -> Path:
    """Write a complete count table; returns the file path."""
    if not result.complete:
        raise ValueError("refusing to cache a budget-truncated count table")
    path = cache_path(directory, result.dimension, result.kind, result.rooting)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "dimension": result.dimension,
        "kind": result.kind,
        "rooting": result.rooting,
        "counts": [
            {"n": i + 1, "count": str(count)} for i, count in enumerate(result.counts)
        ],
        "nodes_visited": str(result.nodes_visited),
        "generator": _GENERATOR,
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def load_counts(
    directory: str | Path, dimension: int, kind: str, rooting: str
) -> CountResult | None:
    """Read a cached table back, or None if absent or not trustworthy."""
    path = cache_path(directory, dimension, kind, rooting)
    try:
        payload = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if not isinstance(payload, dict) or payload.get("schema_version") != SCHEMA_VERSION:
        return None
    if (
        payload.get("dimension") != dimension
        or payload.get("kind") != kind
        or payload.get("rooting") != rooting
    ):
        return None
    rows = payload.get("counts")
    if not isinstance(rows, list) or not rows:
        return None
    counts = []
    for i, row in enumerate(rows):
        if not isinstance(row, dict) or row.get("n") != i + 1:
            return None
        try:
            counts.append(int(row["count"]))
        except (KeyError, TypeError, ValueError):
            return None
    try:
        nodes = int(payload.get("nodes_visited", 0))
    except (TypeError, ValueError):
        return None
    return CountResult(
        dimension=dimension,
        kind=kind,
        rooting=rooting,
        counts=tuple(counts),
        nodes_visited=nodes,
        complete=True,
    )


def list_cached(directory: str | Path) -> list[dict]:
    """Summaries of the readable cache files under a directory, sorted by name."""
    directory = Path(directory)
    if not directory.is_dir():
        return []
    summaries = []
    for path in sorted(directory.glob("counts_*.json")):
        try:
            payload = json.loads(path.read_text())
        except (OSError, ValueError):
            continue
        if not isinstance(payload, dict) or payload.get("schema_version") != SCHEMA_VERSION:
            continue
        rows = payload.get("counts")
        summaries.append(
            {
                "file": path.name,
                "dimension": payload.get("dimension"),
                "kind": payload.get("kind"),
                "rooting": payload.get("rooting"),
                "n_max": len(rows) if isinstance(rows, list) else 0,
            }
        )
    return summaries


def clear_cache(directory: str | Path) -> int:
    """Delete this module's cache files; returns how many were removed."""
    directory = Path(directory)
    if not directory.is_dir():
        return 0
    removed = 0
    for path in directory.glob("counts_*.json"):
        path.unlink()
        removed += 1
    return removed


def counts_for(
    directory: str | Path | None,
    dimension: int,
    kind: str,
    rooting: str,
    n_max: int,
    *,
    node_budget: int | None = None,
    threads: int = 1,
) -> tuple[CountResult, bool]:
    """Serve counts from cache when possible, else count and refresh the cache.

    Returns (result, from_cache).  A cached table longer than requested is
    trimmed; a shorter one triggers a recount whose result replaces it.
    With directory None this is a plain pass-through to the counter.
    """
    if kind not in KINDS or rooting not in ROOTINGS:
        raise ValueError(f"unknown kind {kind!r} or rooting {rooting!r}")
    if directory is not None:
        cached = load_counts(directory, dimension, kind, rooting)
        if cached is not None and len(cached.counts) >= n_max:
            trimmed = CountResult(
                dimension=dimension,
                kind=kind,
                rooting=rooting,
                counts=cached.counts[:n_max],
                nodes_visited=cached.nodes_visited,
                complete=True,
            )
            return trimmed, True
    result = count_animals(
        dimension, n_max, kind=kind, rooting=rooting, node_budget=node_budget, threads=threads
    )
    if directory is not None and result.complete:
        save_counts(directory, result)
    return result, False
