"""Input grammars shared by the CLI and the HTTP service.

Monomials:   ``x^2*y``, ``1`` for the unit; ideals and sequences are
             comma-separated monomial lists.
Cones:       two clauses joined by ``&``, each ``a*x+b*y >= 0`` or ``> 0``
             (also bare ``x``, ``-y``, coefficient-only forms).
Sequences:   ``(p1,p2,...|tail)`` with rational entries; lists joined by ``;``.
Pairs:       ``(a,b)`` with integer entries.

All failures raise :class:`ParseError` with the offending position.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .monomials import Monomial
from .planecones import HalfPlane, QuasiRationalCone
from .sequences import FinSeq, SupportPattern, finseq

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT = re.compile(r"[+-]?\d+")
_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_variables(s: str) -> tuple[str, ...]:
    names = [v.strip() for v in s.split(",") if v.strip()]
    if not names:
        raise ParseError("no variable names given", 0)
    seen = set()
    pos = 0
    for n in names:
        if not _NAME.fullmatch(n):
            raise ParseError(f"bad variable name {n!r}", s.find(n))
        if n in seen:
            raise ParseError(f"duplicate variable {n!r}", s.find(n))
        seen.add(n)
    return tuple(names)


def parse_monomial(s: str, variables: Sequence[str], offset: int = 0) -> Monomial:
    text = s.strip()
    base = offset + s.find(text) if text else offset
    if not text:
        raise ParseError("empty monomial", offset)
    if text == "1":
        return Monomial(tuple(0 for _ in variables))
    exps = [0] * len(variables)
    pos = 0
    index = {v: i for i, v in enumerate(variables)}
    while pos < len(text):
        m = _NAME.match(text, pos)
        if not m:
            raise ParseError("expected a variable name", base + pos)
        name = m.group(0)
        if name not in index:
            raise ParseError(f"unknown variable {name!r}", base + pos)
        pos = m.end()
        power = 1
        if pos < len(text) and text[pos] == "^":
            pos += 1
            mi = _INT.match(text, pos)
            if not mi:
                raise ParseError("expected an exponent", base + pos)
            power = int(mi.group(0))
            if power < 0:
                raise ParseError("negative exponent", base + pos)
            pos = mi.end()
        exps[index[name]] += power
        if pos < len(text):
            if text[pos] != "*":
                raise ParseError("expected '*' between factors", base + pos)
            pos += 1
            if pos == len(text):
                raise ParseError("dangling '*'", base + pos)
    return Monomial(tuple(exps))


def parse_monomial_list(s: str, variables: Sequence[str]) -> list[Monomial]:
    out = []
    pos = 0
    for chunk in s.split(","):
        if not chunk.strip():
            raise ParseError("empty list entry", pos)
        out.append(parse_monomial(chunk, variables, offset=pos))
        pos += len(chunk) + 1
    return out


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for name, e in zip(variables, m.exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


_CONE_OP = re.compile(r"(>=|>)")


def _parse_linear_form(text: str, base: int) -> tuple[int, int]:
    """Coefficients (a, b) of a*x + b*y from a sum of integer-coefficient terms."""
    coeffs = {"x": 0, "y": 0}
    pos = 0
    text = text.rstrip()
    if not text.strip():
        raise ParseError("empty linear form", base)
    sign = 1
    expecting_term = True
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-":
            if expecting_term and ch == "-":
                sign = -sign
                pos += 1
                continue
            if not expecting_term:
                sign = 1 if ch == "+" else -1
                expecting_term = True
                pos += 1
                continue
            pos += 1
            continue
        mi = _INT.match(text, pos)
        coeff = 1
        if mi:
            coeff = int(mi.group(0))
            pos = mi.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos < len(text) and text[pos] == "*":
                pos += 1
                while pos < len(text) and text[pos].isspace():
                    pos += 1
        mv = _NAME.match(text, pos)
        if not mv:
            raise ParseError("expected x or y", base + pos)
        name = mv.group(0)
        if name not in coeffs:
            raise ParseError(f"cone forms use variables x and y, got {name!r}", base + pos)
        coeffs[name] += sign * coeff
        pos = mv.end()
        sign = 1
        expecting_term = False
    if expecting_term:
        raise ParseError("dangling sign", base + len(text))
    return coeffs["x"], coeffs["y"]


def parse_halfplane(s: str, offset: int = 0) -> HalfPlane:
    m = _CONE_OP.search(s)
    if not m:
        raise ParseError("expected '>= 0' or '> 0'", offset + len(s))
    lhs = s[: m.start()]
    rhs = s[m.end():].strip()
    if rhs != "0":
        raise ParseError("right-hand side must be 0", offset + m.end())
    a, b = _parse_linear_form(lhs, offset)
    if a == 0 and b == 0:
        raise ParseError("zero linear form", offset)
    return HalfPlane(a, b, strict=(m.group(0) == ">"))


def parse_cone(s: str) -> QuasiRationalCone:
    parts = s.split("&")
    if len(parts) != 2:
        raise ParseError("a cone needs exactly two clauses joined by '&'", len(s))
    l1 = parse_halfplane(parts[0], offset=0)
    l2 = parse_halfplane(parts[1], offset=len(parts[0]) + 1)
    return QuasiRationalCone(l1, l2)


def format_cone(c: QuasiRationalCone) -> str:
    def fmt(l: HalfPlane) -> str:
        terms = []
        for coeff, name in ((l.a, "x"), (l.b, "y")):
            if coeff == 0:
                continue
            if coeff == 1:
                terms.append(f"+{name}")
            elif coeff == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{coeff:+d}*{name}")
        body = "".join(terms).lstrip("+")
        op = ">" if l.strict else ">="
        return f"{body} {op} 0"

    return f"{fmt(c.l1)} & {fmt(c.l2)}"


def _parse_fraction(text: str, base: int) -> Fraction:
    m = _RAT.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad rational {text.strip()!r}", base)
    return Fraction(text.strip())


def parse_finseq(s: str, offset: int = 0) -> FinSeq:
    text = s.strip()
    base = offset + s.find(text) if text else offset
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError("sequence must be parenthesized, like (1,2|3)", base)
    inner = text[1:-1]
    if "|" not in inner:
        raise ParseError("sequence needs a '|tail' part", base + len(text) - 1)
    head, _, tail = inner.partition("|")
    prefix = []
    pos = base + 1
    if head.strip():
        for chunk in head.split(","):
            prefix.append(_parse_fraction(chunk, pos))
            pos += len(chunk) + 1
    return finseq(prefix, _parse_fraction(tail, base + 2 + len(head)))


def parse_finseq_list(s: str) -> list[FinSeq]:
    out = []
    pos = 0
    for chunk in s.split(";"):
        if not chunk.strip():
            raise ParseError("empty sequence entry", pos)
        out.append(parse_finseq(chunk, offset=pos))
        pos += len(chunk) + 1
    return out


def format_finseq(f: FinSeq) -> str:
    return "(" + ",".join(str(x) for x in f.prefix) + "|" + str(f.tail) + ")"


def parse_int_pair(s: str, offset: int = 0) -> tuple[int, int]:
    text = s.strip()
    base = offset + s.find(text) if text else offset
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError("pair must look like (a,b)", base)
    parts = text[1:-1].split(",")
    if len(parts) != 2:
        raise ParseError("pair needs exactly two entries", base + 1)
    vals = []
    pos = base + 1
    for chunk in parts:
        m = _INT.fullmatch(chunk.strip())
        if not m:
            raise ParseError(f"bad integer {chunk.strip()!r}", pos)
        vals.append(int(chunk))
        pos += len(chunk) + 1
    return (vals[0], vals[1])


def parse_support(doc) -> SupportPattern:
    if isinstance(doc, SupportPattern):
        return doc
    if isinstance(doc, dict):
        return SupportPattern.from_doc(doc)
    raise ParseError("support pattern must be an object with threshold/exceptions", 0)
