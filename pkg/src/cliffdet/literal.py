"""Text, JSON and CSV forms of multivectors and metrics.

Literal grammar: signed terms ``coeff`` ``e<digits>``, e.g. ``1+2e1-3e12+1/2e123``.
The coefficient is an integer, decimal, ``p/q`` rational or a parenthesized
complex such as ``(1+2j)``; an omitted coefficient means 1.  Index digits
are multiplied out left to right, so ``e21`` is ``-e12`` and ``e11`` is
``g_11``.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

import numpy as np

from .algebra import (
    COMPLEX,
    RATIONAL,
    Metric,
    Multivector,
    blade_label,
    blade_mul,
    get_ring,
    mask_from_label,
)
from .errors import ParseError

_TERM = re.compile(
    r"(?P<coeff>\([^()]*\)|\d+(?:\.\d*)?(?:/\d+)?|\.\d+)?\s*\*?\s*(?P<blade>e\d*)?"
)


def _parse_coeff(token: str, text: str, pos: int):
    if token.startswith("("):
        try:
            return complex(token[1:-1].replace(" ", ""))
        except ValueError:
            raise ParseError(f"bad complex coefficient {token!r}", text, pos) from None
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {token!r}", text, pos) from None


def parse_multivector(text: str, metric: Metric, ring="rational") -> Multivector:
    """Parse a literal into a canonical multivector of ``metric``'s dimension."""
    ring = get_ring(ring)
    d = metric.dim
    values: list = [0] * metric.size
    pos = 0
    n = len(text)
    seen_term = False
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        sign = 1
        had_sign = False
        while pos < n and (text[pos] in "+-" or text[pos].isspace()):
            if text[pos] in "+-":
                had_sign = True
                if text[pos] == "-":
                    sign = -sign
            pos += 1
        if seen_term and not had_sign:
            raise ParseError("expected '+' or '-' between terms", text, pos)
        start = pos
        m = _TERM.match(text, pos)
        if m is None or m.end() == start or (m.group("coeff") is None and m.group("blade") is None):
            raise ParseError("expected a term", text, start)
        coeff = Fraction(1) if m.group("coeff") is None else _parse_coeff(m.group("coeff"), text, start)
        scale = sign
        mask = 0
        blade = m.group("blade")
        if blade is not None:
            digits = blade[1:]
            if not digits:
                raise ParseError("blade needs index digits", text, m.start("blade"))
            for offset, ch in enumerate(digits):
                i = int(ch)
                if not 1 <= i <= d:
                    raise ParseError(f"index {i} outside 1..{d}", text, m.start("blade") + 1 + offset)
                s, mask = blade_mul(mask, 1 << (i - 1), metric)
                scale = scale * s
        values[mask] = values[mask] + coeff * scale
        pos = m.end()
        seen_term = True
    if not seen_term:
        raise ParseError("empty literal", text, 0)
    if any(isinstance(v, complex) for v in values) and ring is not COMPLEX:
        ring = COMPLEX
    return Multivector(metric, values, ring)


def _format_scalar(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        return f"({_format_float(v.real)}{'+' if v.imag >= 0 else '-'}{_format_float(abs(v.imag))}j)"
    return _format_float(float(v))


def _format_float(x: float) -> str:
    return np.format_float_positional(x, unique=True, trim="-")


def format_text(A: Multivector) -> str:
    parts: list[str] = []
    for mask, v in enumerate(A.coeffs):
        if v == 0:
            continue
        c = _format_scalar(v)
        if mask == 0:
            term = c
        elif c == "1":
            term = "e" + blade_label(mask)
        elif c == "-1":
            term = "-e" + blade_label(mask)
        else:
            term = c + "e" + blade_label(mask)
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return "".join(parts) if parts else "0"


def _json_scalar(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, int):
        return v
    return float(v)


def to_json_obj(A: Multivector) -> dict:
    return {
        "metric": [_json_scalar(g) for g in A.metric.entries],
        "ring": A.ring.name,
        "components": {
            blade_label(k): (str(v) if A.ring is RATIONAL else _json_scalar(v))
            for k, v in enumerate(A.coeffs)
            if v != 0
        },
    }


def from_json_obj(obj: dict) -> Multivector:
    def scalar(x):
        if isinstance(x, list):
            return complex(x[0], x[1])
        if isinstance(x, str):
            return Fraction(x)
        return x

    metric = Metric(scalar(g) for g in obj["metric"])
    ring = get_ring(obj.get("ring", "rational"))
    comps = {mask_from_label(k): scalar(v) for k, v in obj.get("components", {}).items()}
    return Multivector.from_dict(metric, comps, ring)


def format_multivector(A: Multivector, fmt: str = "text") -> str:
    """Render as ``text`` (round-trips through :func:`parse_multivector`), ``json`` or ``csv``."""
    if fmt == "text":
        return format_text(A)
    if fmt == "json":
        return json.dumps(to_json_obj(A))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["blade", "coefficient"])
        for k, v in enumerate(A.coeffs):
            if v != 0:
                w.writerow([blade_label(k) or "0", _format_scalar(v)])
        return buf.getvalue().rstrip("\n")
    raise ValueError(f"unknown format {fmt!r}")


def format_scalar(v, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(_json_scalar(v))
    return _format_scalar(v)


_SHORTHAND = {"+": 1, "-": -1, "0": 0}


def parse_metric(spec: str) -> Metric:
    """Accept ``+,+,-,0`` shorthand or numbers like ``1,1,-1,0`` or ``1/2,-3``."""
    spec = spec.strip()
    if not spec:
        return Metric(())
    entries = []
    for pos, item in enumerate(spec.split(",")):
        item = item.strip()
        if item in _SHORTHAND:
            entries.append(_SHORTHAND[item])
            continue
        try:
            entries.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            try:
                entries.append(float(item))
            except ValueError:
                raise ParseError(f"bad metric entry {item!r}", spec, pos) from None
    return Metric(entries)


def parse_signed_grades(text: str) -> list[int]:
    """Grade list like ``1,2``, ``12`` or ``2,-2`` (negative entries use dual notation)."""
    text = text.strip()
    if not text:
        return []
    if "," not in text and text.isdigit():
        return [int(ch) for ch in text]
    out = []
    for item in text.split(","):
        try:
            out.append(int(item))
        except ValueError:
            raise ParseError(f"bad grade {item!r}", text) from None
    return out

