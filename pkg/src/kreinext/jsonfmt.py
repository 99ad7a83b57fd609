"""Deterministic JSON/CSV emission: 12 significant digits, stable order."""

from __future__ import annotations

import math


def format_number(x) -> str:
    """Render a real number with 12 significant digits, JSON-compatible."""
    if isinstance(x, bool):  # bool is an int subclass; keep it out
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return str(x)
    v = float(x)
    if math.isnan(v):
        raise ValueError("NaN is not representable in the output")
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    out = f"{v:.12g}"
    # normalize negative zero for byte-stable output
    return "0" if out == "-0" else out


def dumps(obj, indent: int = 0) -> str:
    """Serialize dicts/lists/numbers/strings/bools/None deterministically.

    Dict order is preserved (callers build payloads in a fixed order);
    floats go through :func:`format_number`.
    """
    pad = " " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, (int, float)):
        return format_number(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {_escape(str(k))}: {dumps(v, indent + 2)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {dumps(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _escape(s: str) -> str:
    out = ["\""]
    for ch in s:
        if ch == "\"":
            out.append("\\\"")
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append("\"")
    return "".join(out)


def csv_cell(value) -> str:
    """One CSV cell: numbers at 12 significant digits, None empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, float)):
        return format_number(value).strip('"')
    return str(value)
