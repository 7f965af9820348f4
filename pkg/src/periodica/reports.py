"""Report assembly: canonical JSON and a small markdown renderer.

JSON output is deterministic (sorted keys, no timestamps), so identical jobs
with identical seeds produce byte-identical documents.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

SCHEMA = "periodica-report/1"


def text_sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def build_report(command: str, params: dict, body: dict,
                 claim: Optional[str] = None,
                 inputs: Optional[dict] = None,
                 seed: Optional[int] = None) -> dict:
    report = {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "result": body,
    }
    if claim:
        report["claim"] = claim
    if inputs:
        report["input_hashes"] = inputs
    if seed is not None:
        report["seed"] = seed
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def _md_scalar(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    return str(x)


def _md_table(rows: list) -> list:
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    out = ["| " + " | ".join(keys) + " |",
           "| " + " | ".join("---" for _ in keys) + " |"]
    for r in rows:
        out.append("| " + " | ".join(
            _md_scalar(r.get(k)) if not isinstance(r.get(k), (list, dict))
            else json.dumps(r.get(k)) for k in keys) + " |")
    return out


def _md_body(body, level: int) -> list:
    lines = []
    if isinstance(body, dict):
        for k, v in body.items():
            if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
                lines.append(f"{'#' * level} {k}")
                lines.extend(_md_table(v))
                lines.append("")
            elif isinstance(v, dict):
                lines.append(f"{'#' * level} {k}")
                lines.extend(_md_body(v, min(level + 1, 6)))
            else:
                val = json.dumps(v) if isinstance(v, list) else _md_scalar(v)
                lines.append(f"- **{k}**: {val}")
    else:
        lines.append(_md_scalar(body))
    return lines


def to_markdown(report: dict) -> str:
    lines = [f"# {report.get('command', 'report')}"]
    if "claim" in report:
        lines.append(f"*claim: {report['claim']}*")
    lines.append("")
    if report.get("params"):
        lines.append("## parameters")
        lines.extend(_md_body(report["params"], 3))
        lines.append("")
    lines.append("## result")
    lines.extend(_md_body(report.get("result", {}), 3))
    lines.append("")
    meta = {k: report[k] for k in ("seed", "input_hashes", "schema")
            if k in report}
    if meta:
        lines.append("## metadata")
        lines.extend(_md_body(meta, 3))
    return "\n".join(lines) + "\n"
