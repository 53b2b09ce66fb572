"""Sweep runner: many specs in, one deterministic JSON document out.

The config lists explicit specs and/or rectangular sweeps.  Expansion
order is the config order (specs first, sweeps in sequence, knots outer,
then d, m, n), rows come back in exactly that order whatever the
parallelism, and per-row timing is dropped, so two runs of the same
config are byte-identical files.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor

from .enumeration import DEFAULT_MAX_COSETS
from .report import DEFAULT_TIMEOUT, certify
from .surgery import spec_from_json

BATCH_SCHEMA = "rimcert.batch/1"


def _as_range(value, what: str) -> list[int]:
    """An int means itself; [lo, hi] means the inclusive range."""
    if isinstance(value, bool):
        raise ValueError(f"{what} must be an integer or [lo, hi]")
    if isinstance(value, int):
        return [value]
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        lo, hi = value
        if hi < lo:
            raise ValueError(f"{what} range [{lo}, {hi}] is empty")
        return list(range(lo, hi + 1))
    raise ValueError(f"{what} must be an integer or [lo, hi]")


def expand_sweep(sweep: dict) -> list[dict]:
    knots = sweep.get("knots", sweep.get("knot"))
    if knots is None:
        raise ValueError("sweep needs 'knots' (or a single 'knot')")
    if isinstance(knots, str):
        knots = [knots]
    kind = sweep.get("kind", "rim")
    coprime = bool(sweep.get("coprime", False))
    ds = _as_range(sweep.get("d", 1), "d")
    ms = _as_range(sweep.get("m", 0), "m")
    ns = _as_range(sweep.get("n", 0), "n")
    out = []
    for knot in knots:
        for d in ds:
            for m in ms:
                if coprime and math.gcd(d, m) != 1:
                    continue
                for n in ns:
                    out.append({"knot": knot, "d": d, "m": m, "n": n, "kind": kind})
    return out


def expand_config(config: dict) -> list[dict]:
    rows = [dict(doc) for doc in config.get("specs", [])]
    for sweep in config.get("sweeps", []):
        rows.extend(expand_sweep(sweep))
    return rows


def _run_row(args: tuple[dict, int, float | None]) -> dict:
    """Module-level so process pools can pickle it; errors stay in the row."""
    doc, max_cosets, timeout = args
    try:
        spec = spec_from_json(doc)
        return certify(spec, max_cosets=max_cosets, timeout=timeout).to_json(
            timing=False
        )
    except Exception as exc:
        return {"schema": BATCH_SCHEMA, "spec": doc, "error": str(exc)}


def run_batch(config: dict) -> dict:
    """Certify every spec in the config; summary counts every verdict."""
    max_cosets = int(config.get("max_cosets", DEFAULT_MAX_COSETS))
    timeout = config.get("timeout", DEFAULT_TIMEOUT)
    if timeout is not None:
        timeout = float(timeout)
    parallelism = int(config.get("parallelism", 1))
    if max_cosets < 1 or parallelism < 1:
        raise ValueError("limits and parallelism must be positive")
    if timeout is not None and timeout <= 0:
        raise ValueError("timeout must be positive or null")

    jobs = [(doc, max_cosets, timeout) for doc in expand_config(config)]
    if parallelism == 1 or len(jobs) <= 1:
        rows = [_run_row(job) for job in jobs]
    else:
        # map() preserves submission order, which is the config order.
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            rows = list(pool.map(_run_row, jobs))

    summary = {"total": len(rows), "cyclic": 0, "non_cyclic": 0,
               "inconclusive": 0, "error": 0}
    for row in rows:
        if "error" in row:
            summary["error"] += 1
        else:
            summary[row["verdict"]["status"]] += 1

    return {
        "schema": BATCH_SCHEMA,
        "limits": {"max_cosets": max_cosets, "timeout": timeout},
        "rows": rows,
        "summary": summary,
    }


def batch_json(result: dict) -> str:
    """Canonical serialization; fixed key order makes runs comparable."""
    return json.dumps(result, indent=2, sort_keys=True) + "\n"
