"""Graded antisymmetric algebra over a (1+n)-dimensional frame.

Basis p-forms are labelled by bitmasks over the frame indices 0..n, index 0
being the temporal one. Coefficients are exact: ``Fraction`` for plain
forms, or anything ring-like (see :mod:`hodgestar.polynomial`) for forms
whose coefficients are functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, Sequence

MAX_DIM = 16

# ---------------------------------------------------------------------------
# multi-indices


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def basis_masks(dim: int, degree: int) -> list[int]:
    """All basis labels of the given degree, in lexicographic index order."""
    return [mask_of(c) for c in combinations(range(dim), degree)]


def merge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^(A|B); 0 when A and B overlap."""
    if a & b:
        return 0
    swaps = 0
    rest = b
    j = 0
    while rest:
        if rest & 1:
            swaps += popcount(a >> (j + 1))
        rest >>= 1
        j += 1
    return -1 if swaps & 1 else 1


def sort_sign(indices: Sequence[int]) -> tuple[int, int]:
    """Return (sign, mask) with e^i0 ^ e^i1 ^ ... = sign * e^mask."""
    if len(set(indices)) != len(indices):
        return 0, 0
    inversions = sum(
        1
        for x in range(len(indices))
        for y in range(x + 1, len(indices))
        if indices[x] > indices[y]
    )
    return (-1 if inversions & 1 else 1), mask_of(indices)


def levi_civita(indices: Sequence[int]) -> int:
    """Permutation symbol with eps_{0 1 ... n} = +1 and 0 on repetition."""
    n = len(indices)
    if sorted(indices) != list(range(n)):
        return 0
    # cycle decomposition parity
    seen = [False] * n
    sign = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = indices[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# forms


def _coerce(c: Any) -> Any:
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


@dataclass(frozen=True, eq=False)
class Form:
    """Homogeneous element of degree ``degree`` in the exterior algebra of a
    ``dim``-dimensional coframe. ``terms`` maps basis bitmasks to nonzero
    coefficients; zero coefficients are dropped on construction."""

    dim: int
    degree: int
    terms: Mapping[int, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {self.dim}")
        if not 0 <= self.degree <= self.dim:
            raise ValueError(f"degree {self.degree} out of range for dim {self.dim}")
        clean = {}
        for mask, c in self.terms.items():
            if mask >> self.dim or popcount(mask) != self.degree:
                raise ValueError(
                    f"basis label {indices_of(mask)} inconsistent with "
                    f"dim={self.dim}, degree={self.degree}"
                )
            c = _coerce(c)
            if c:
                clean[mask] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls(dim, degree, {})

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], coef: Any = 1) -> "Form":
        """``coef * e^i0 ^ e^i1 ^ ...``; permuted indices fold their sign into
        the coefficient, repeated indices give the zero form."""
        sign, mask = sort_sign(tuple(indices))
        if sign == 0:
            return cls(dim, len(indices), {})
        return cls(dim, len(indices), {mask: sign * _coerce(coef)})

    @classmethod
    def scalar(cls, dim: int, value: Any) -> "Form":
        return cls(dim, 0, {0: value})

    def _like(self, degree: int, terms: Mapping[int, Any]) -> "Form":
        return type(self)(self.dim, degree, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.dim - 1

    def is_zero(self) -> bool:
        return not self.terms

    def is_spatial(self) -> bool:
        return all(not m & 1 for m in self.terms)

    def coefficient(self, indices: Sequence[int]) -> Any:
        sign, mask = sort_sign(tuple(indices))
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(mask, Fraction(0))

    def items(self) -> Iterator[tuple[tuple[int, ...], Any]]:
        for mask in sorted(self.terms, key=indices_of):
            yield indices_of(mask), self.terms[mask]

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "Form") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return self._like(self.degree, out)

    def __neg__(self) -> "Form":
        return self._like(self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Any) -> "Form":
        factor = _coerce(factor)
        return self._like(self.degree, {m: factor * c for m, c in self.terms.items()})

    def __mul__(self, factor: Any) -> "Form":
        if isinstance(factor, Form):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.dim == other.dim
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.dim, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{idx}: {c}" for idx, c in self.items())
        return f"{type(self).__name__}(dim={self.dim}, degree={self.degree}, {{{body}}})"


def wedge(a: Form, b: Form) -> Form:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    degree = a.degree + b.degree
    if degree > a.dim:
        # zero form of a degree that does not exist; keep the top degree
        return a._like(a.dim, {})
    out: dict[int, Any] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = merge_sign(ma, mb)
            if s == 0:
                continue
            m = ma | mb
            v = ca * cb if s > 0 else -(ca * cb)
            out[m] = out[m] + v if m in out else v
    return a._like(degree, out)


def eta(a: Form) -> Form:
    """Main automorphism: multiply a p-form by (-1)^p."""
    return -a if a.degree % 2 else a


def e0(dim: int) -> Form:
    return Form.basis(dim, (0,))


def decompose(a: Form) -> tuple[Form, Form]:
    """Split ``a = e^0 ^ s + r`` with ``s`` and ``r`` free of e^0."""
    s: dict[int, Any] = {}
    r: dict[int, Any] = {}
    for m, c in a.terms.items():
        if m & 1:
            # e^0 is the lowest index, so it is already in front: no sign
            s[m & ~1] = c
        else:
            r[m] = c
    return a._like(max(a.degree - 1, 0), s), a._like(a.degree, r)


def recompose(s: Form, r: Form) -> Form:
    """Inverse of :func:`decompose`; at degree 0 ``s`` must vanish."""
    if r.degree == 0:
        if not s.is_zero():
            raise ValueError("a 0-form has no e^0 part")
        return r
    return wedge(e0(r.dim), s) + r


def spatial_volume(dim: int) -> Form:
    return Form.basis(dim, range(1, dim))


def volume(dim: int) -> Form:
    return Form.basis(dim, range(dim))


# ---------------------------------------------------------------------------
# literal text grammar:  "dt^dx + 2/3 dy^dz"

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<fac>dt|dx\d+|dx|dy|dz)|(?P<op>[-+^*]))"
)


class FormSyntaxError(ValueError):
    pass


def factor_names(n: int) -> list[str]:
    if n == 3:
        return ["dt", "dx", "dy", "dz"]
    return ["dt"] + [f"dx{i}" for i in range(1, n + 1)]


def _factor_index(name: str, n: int) -> int:
    if name == "dt":
        return 0
    aliases = {"dx": 1, "dy": 2, "dz": 3}
    if name in aliases:
        if n != 3:
            raise FormSyntaxError(f"'{name}' is only available for n = 3")
        return aliases[name]
    i = int(name[2:])
    if not 1 <= i <= n:
        raise FormSyntaxError(f"'{name}' out of range for n = {n}")
    return i


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormSyntaxError(f"unexpected input at column {pos}: {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def parse_form(text: str, n: int = 3, degree: int | None = None) -> Form:
    """Parse a form literal. ``degree`` is only needed to type the zero form."""
    dim = n + 1
    tokens = _tokenize(text)
    if not tokens:
        raise FormSyntaxError("empty form literal")
    terms: list[tuple[int, Fraction, list[int]]] = []
    i = 0
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif terms:
            raise FormSyntaxError(f"expected '+' or '-' before {tokens[i][1]!r}")
        coef = Fraction(1)
        have_coef = False
        if i < len(tokens) and tokens[i][0] == "num":
            try:
                coef = Fraction(tokens[i][1])
            except ZeroDivisionError:
                raise FormSyntaxError(f"zero denominator in {tokens[i][1]!r}") from None
            have_coef = True
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
        factors: list[int] = []
        while i < len(tokens) and tokens[i][0] == "fac":
            factors.append(_factor_index(tokens[i][1], n))
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "^"):
                i += 1
                if i >= len(tokens) or tokens[i][0] != "fac":
                    raise FormSyntaxError("dangling '^'")
        if not factors and not have_coef:
            raise FormSyntaxError("empty term")
        terms.append((sign, coef, factors))
    degrees = {len(f) for _, c, f in terms if c}
    if len(degrees) > 1:
        raise FormSyntaxError(f"mixed degrees {sorted(degrees)} in one literal")
    deg = degrees.pop() if degrees else (degree if degree is not None else 0)
    if degree is not None and deg != degree:
        raise FormSyntaxError(f"literal has degree {deg}, expected {degree}")
    if deg > dim:
        raise FormSyntaxError(f"degree {deg} exceeds dimension {dim}")
    out = Form.zero(dim, deg)
    for sign, coef, factors in terms:
        if coef:
            out = out + Form.basis(dim, factors, sign * coef)
    return out


def format_form(a: Form) -> str:
    """Inverse of :func:`parse_form` for rational forms."""
    names = factor_names(a.n)
    if a.is_zero():
        return "0"
    parts = []
    for idx, c in a.items():
        neg = c < 0
        mag = -c if neg else c
        word = "^".join(names[i] for i in idx)
        if not word:
            body = str(mag)
        elif mag == 1:
            body = word
        else:
            body = f"{mag} {word}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
