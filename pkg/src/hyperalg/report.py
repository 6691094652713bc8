"""Text and JSON renderings of suite results."""

from __future__ import annotations

import json
from typing import Sequence

from .algebra import AlgebraCtx
from .verify import VERSION, CheckReport


def as_dict(ctx: AlgebraCtx, reports: Sequence[CheckReport], seed: int) -> dict:
    return {
        "p": ctx.p,
        "r": ctx.r,
        "version": VERSION,
        "seed": seed,
        "checks": [rep.to_dict() for rep in reports],
    }


def to_json(ctx: AlgebraCtx, reports: Sequence[CheckReport], seed: int) -> str:
    return json.dumps(as_dict(ctx, reports, seed), indent=2)


def strip_timings(doc):
    """Copy of a report dict without elapsed times, for reproducibility checks."""
    if isinstance(doc, dict):
        return {k: strip_timings(v) for k, v in doc.items() if k != "elapsed_ms"}
    if isinstance(doc, list):
        return [strip_timings(v) for v in doc]
    return doc


def _extras(entry: dict) -> str:
    skip = {"status", "checked", "counterexample", "reason", "elapsed_ms"}
    parts = [f"{k}={v}" for k, v in entry.items() if k not in skip]
    return ("  " + ", ".join(parts)) if parts else ""


def to_text(ctx: AlgebraCtx, reports: Sequence[CheckReport], seed: int) -> str:
    lines = [f"hyperalg {VERSION}  p={ctx.p} r={ctx.r} seed={seed}"]
    for rep in reports:
        lines.append(f"=== {rep.name}: {rep.status.upper()} ({rep.elapsed_ms} ms)")
        if "reason" in rep.details:
            lines.append(f"    reason: {rep.details['reason']}")
        for name, entry in rep.details.get("invariants", {}).items():
            lines.append(f"  [{entry['status']}] {name} (checked {entry['checked']}){_extras(entry)}")
            if entry["status"] == "fail":
                lines.append(f"      counterexample: {entry['counterexample']}")
            elif entry["status"] == "skipped":
                lines.append(f"      reason: {entry['reason']}")
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "skipped")}
    lines.append(f"=== summary: {counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    return "\n".join(lines) + "\n"
