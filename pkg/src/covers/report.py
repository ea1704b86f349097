"""Deterministic report documents.

Reports are plain trees of dicts, lists and scalars, rendered either as an
indented key-value text document or as JSON with sorted keys.  Nothing
volatile (timestamps, ids, paths) is ever included, so a fixed input gives
byte-identical output.
"""

from __future__ import annotations

import json

SCHEMA = "covers-report/1"


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    return str(value)


def _is_scalar(value) -> bool:
    return not isinstance(value, (dict, list, tuple))


def _lines(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_scalar(v):
                out.append(f"{pad}{k}: {_scalar(v)}")
            elif not v:
                out.append(f"{pad}{k}: []" if isinstance(v, (list, tuple)) else f"{pad}{k}: {{}}")
            else:
                out.append(f"{pad}{k}:")
                _lines(v, indent + 1, out)
    elif isinstance(value, (list, tuple)):
        for item in value:
            if _is_scalar(item):
                out.append(f"{pad}- {_scalar(item)}")
            else:
                out.append(f"{pad}-")
                _lines(item, indent + 1, out)
    else:
        out.append(f"{pad}{_scalar(value)}")


def render_text(doc: dict) -> str:
    out: list[str] = []
    _lines(doc, 0, out)
    return "\n".join(out) + "\n"


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    return render_text(doc)
