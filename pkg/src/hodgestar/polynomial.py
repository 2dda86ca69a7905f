"""Multivariate polynomials with exact rational coefficients.

Good enough for field components over flat (t, x, y, z) coordinates: ring
operations, partial derivatives, substitution, and a text round trip
(``"3*x^2*y - t"``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SPACETIME = ("t", "x", "y", "z")

Monomial = tuple[int, ...]


class Polynomial:
    __slots__ = ("gens", "terms")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None, gens: Sequence[str] = SPACETIME):
        self.gens = tuple(gens)
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != len(self.gens) or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono} for generators {self.gens}")
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, gens: Sequence[str] = SPACETIME) -> "Polynomial":
        return cls({(0,) * len(gens): Fraction(c)}, gens)

    @classmethod
    def var(cls, name: str, gens: Sequence[str] = SPACETIME) -> "Polynomial":
        gens = tuple(gens)
        mono = tuple(int(g == name) for g in gens)
        if sum(mono) != 1:
            raise ValueError(f"unknown generator {name!r}")
        return cls({mono: Fraction(1)}, gens)

    @classmethod
    def parse(cls, text: str, gens: Sequence[str] = SPACETIME) -> "Polynomial":
        return _Parser(text, tuple(gens)).parse()

    # -- helpers ------------------------------------------------------------

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.gens != self.gens:
                if not other.terms:
                    return Polynomial({}, self.gens)
                if not self.terms:
                    return other
                raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.gens)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    # -- ring ops -----------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        gens = self.gens if self.terms or not other.terms else other.gens
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out, gens)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()}, self.gens)

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial({m: c * other for m, c in self.terms.items()}, self.gens)
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        gens = self.gens if self.terms else other.gens
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(out, gens)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Polynomial.constant(1, self.gens)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.gens)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self) -> int:
        if not self.terms:
            return hash(0)
        return hash((self.gens, frozenset(self.terms.items())))

    # -- calculus -----------------------------------------------------------

    def diff(self, var: int | str) -> "Polynomial":
        i = self.gens.index(var) if isinstance(var, str) else var
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = out.get(mm, Fraction(0)) + c * e
        return Polynomial(out, self.gens)

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute generator i by ``images[i]``."""
        if len(images) != len(self.gens):
            raise ValueError("need one image per generator")
        gens = images[0].gens if images else self.gens
        out = Polynomial({}, gens)
        cache: dict[tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(c, gens)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    term = term * cache[(i, e)]
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                v *= Fraction(x) ** e
            total += v
        return total

    # -- text ---------------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            factors = [
                g if e == 1 else f"{g}^{e}"
                for g, e in zip(self.gens, m)
                if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, gens={self.gens})"


def polynomial_from_terms(items: Iterable[tuple[Monomial, Fraction]], gens: Sequence[str] = SPACETIME) -> Polynomial:
    return Polynomial(dict(items), gens)


# ---------------------------------------------------------------------------
# text parser (no eval)

_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolynomialSyntaxError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, gens: tuple[str, ...]):
        self.gens = gens
        self.toks: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOK.match(text, pos)
            if not m:
                raise PolynomialSyntaxError(f"unexpected input at column {pos}: {text[pos:]!r}")
            if m.group(1):
                self.toks.append(("num", m.group(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            else:
                self.toks.append(("op", "^" if m.group(3) == "**" else m.group(3)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise PolynomialSyntaxError("unexpected end of input")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolynomialSyntaxError("empty polynomial")
        out = self.expr()
        if self.peek() is not None:
            raise PolynomialSyntaxError(f"trailing input at {self.peek()[1]!r}")
        return out

    def expr(self) -> Polynomial:
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Polynomial:
        out = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants")
                out = out * (1 / rhs.constant_term())
        return out

    def unary(self) -> Polynomial:
        if self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            inner = self.unary()
            return -inner if op == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(int(val), self.gens)
        if kind == "name":
            if val not in self.gens:
                raise PolynomialSyntaxError(f"unknown variable {val!r} (expected one of {self.gens})")
            return Polynomial.var(val, self.gens)
        if val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolynomialSyntaxError("missing ')'")
            return inner
        raise PolynomialSyntaxError(f"unexpected {val!r}")
