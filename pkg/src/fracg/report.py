"""Human, CSV and JSON renderings of result rows.

Rows are flat dicts with a fixed key order. Machine formats are
deterministic: CSV writes floats with 17 significant digits, JSON writes
the shortest round-tripping repr, and NaN becomes an empty cell / null.
"""

import csv
import io
import json
import math

FORMATS = ("human", "csv", "json")


def format_float(x):
    return format(x, ".17g")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "" if math.isnan(v) else format_float(v)
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _human_cell(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(rows):
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rows[0].keys())
    for row in rows:
        writer.writerow(_csv_cell(v) for v in row.values())
    return buf.getvalue()


def to_json(rows, config, extra=None):
    doc = {"config": _json_value(config), "rows": [_json_value(r) for r in rows]}
    for k, v in (extra or {}).items():
        doc[k] = _json_value(v)
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def to_human(rows, extra=None):
    lines = []
    if rows:
        keys = list(rows[0].keys())
        cells = [[_human_cell(r[k]) for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        lines.append("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for c in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    for k, v in (extra or {}).items():
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def render(rows, fmt, config=None, extra=None):
    if fmt == "csv":
        return to_csv(rows)
    if fmt == "json":
        return to_json(rows, config or {}, extra)
    return to_human(rows, extra)
