"""Symbolic 1+3 star tables.

The five general forms ``f``, ``f dt + a.dr``, ``dt^(a.dr) + b.dS``,
``dt^(a.dS) + f dV`` and ``f dt^dV`` are built with free symbols
``f, a1..a3, b1..b3`` as coefficients, pushed through :func:`star_table_4d`,
and the image is read back in the same vocabulary. Nothing in the output is
hardcoded: a wrong sign in the star shows up as a wrong sign in the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .electro import PolyForm, wedge_dt, read_dr, read_dS, read_dV, scalar_dV, vec_dr, vec_dS
from .exterior import decompose
from .hodge import star_table_4d
from .polynomial import Polynomial
from .structures import Kind

SYMBOLS = ("f", "a1", "a2", "a3", "b1", "b2", "b3")

TITLES = {
    Kind.MINKOWSKI: "Minkowski Hodge star:",
    Kind.GALILEAN: "Galilei Hodge star:",
    Kind.CARROLLIAN: "Carroll Hodge star:",
}


def _sym(name: str) -> Polynomial:
    return Polynomial.var(name, SYMBOLS)


F = _sym("f")
A = tuple(_sym(f"a{i}") for i in (1, 2, 3))
B = tuple(_sym(f"b{i}") for i in (1, 2, 3))


def _as_sym(c) -> Polynomial:
    if isinstance(c, Polynomial):
        return c
    return Polynomial.constant(c, SYMBOLS)


def general_form(p: int) -> PolyForm:
    """The general p-form on 1+3 spacetime written with free symbols."""
    if p == 0:
        return PolyForm(4, 0, {0: F})
    if p == 1:
        return PolyForm(4, 1, {1: F}) + vec_dr(A)
    if p == 2:
        return wedge_dt(vec_dr(A)) + vec_dS(B)
    if p == 3:
        return wedge_dt(vec_dS(A)) + scalar_dV(F)
    if p == 4:
        return PolyForm(4, 4, {0b1111: F})
    raise ValueError(f"degree must be in 0..4, got {p}")


INPUTS = ("f", "(f dt + a·dr)", "(dt^(a·dr) + b·dS)", "(dt^(a·dS) + f dV)", "(f dt^dV)")


# ---------------------------------------------------------------------------
# rendering


def _scalar_text(c: Polynomial) -> tuple[int, str]:
    """(sign, body) with the sign pulled out when the polynomial is -q."""
    s = str(c)
    if s.startswith("-") and " " not in s:
        return -1, s[1:]
    if " " in s:
        return 1, f"({s})"
    return 1, s


def _vector_text(v: Sequence[Polynomial]) -> tuple[int, str]:
    v = tuple(_as_sym(c) for c in v)
    for name, sym in (("a", A), ("b", B)):
        if v == sym:
            return 1, name
        if v == tuple(-c for c in sym):
            return -1, name
    return 1, "(" + ", ".join(str(c) for c in v) + ")"


def _spatial_piece(r: PolyForm) -> tuple[int, str] | None:
    """Render a purely spatial 1+3 form of one degree, or None if zero."""
    if r.is_zero():
        return None
    k = r.degree
    if k == 0:
        sign, body = _scalar_text(_as_sym(r.terms[0]))
        return sign, body
    if k == 1:
        sign, body = _vector_text(read_dr(r))
        return sign, f"{body}·dr"
    if k == 2:
        sign, body = _vector_text(read_dS(r))
        return sign, f"{body}·dS"
    sign, body = _scalar_text(_as_sym(read_dV(r)))
    return sign, f"{body} dV"


def _temporal_piece(s: PolyForm) -> tuple[int, str] | None:
    """Render dt ^ s for a spatial s."""
    if s.is_zero():
        return None
    k = s.degree
    if k == 0:
        sign, body = _scalar_text(_as_sym(s.terms[0]))
        return sign, f"{body} dt"
    if k == 1:
        sign, body = _vector_text(read_dr(s))
        return sign, f"dt^({body}·dr)"
    if k == 2:
        sign, body = _vector_text(read_dS(s))
        return sign, f"dt^({body}·dS)"
    sign, body = _scalar_text(_as_sym(read_dV(s)))
    return sign, f"{body} dt^dV"


def render(a: PolyForm) -> str:
    """Write a 1+3 form as dt-part then spatial part, e.g. ``dt^(b·dr) - a·dS``."""
    if a.is_zero():
        return "0"
    s_hat, r_hat = decompose(a)
    pieces = [x for x in (_temporal_piece(s_hat) if a.degree else None, _spatial_piece(r_hat)) if x]
    out = ""
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            out = ("-" if sign < 0 else "") + body
        else:
            out += (" - " if sign < 0 else " + ") + body
    return out


@dataclass(frozen=True)
class TableRow:
    degree: int
    lhs: str
    rhs: str
    image: PolyForm

    def line(self) -> str:
        return f"*{self.lhs} = {self.rhs}"


def table_rows(kind: Kind | str) -> list[TableRow]:
    kind = Kind.parse(kind) if isinstance(kind, str) else kind
    rows = []
    for p in range(5):
        image = star_table_4d(general_form(p), kind)
        rows.append(TableRow(p, INPUTS[p], render(image), image))
    return rows


def table_text(kind: Kind | str) -> str:
    kind = Kind.parse(kind) if isinstance(kind, str) else kind
    lines = [TITLES[kind]] + [r.line() for r in table_rows(kind)]
    return "\n".join(lines) + "\n"
