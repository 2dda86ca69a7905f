"""Source-free electrodynamics with polynomial fields on flat 1+3 spacetime.

The field 2-form is ``F = dt ^ E.dr - B.dS``. ``dF = 0`` and ``d*F = 0`` are
computed exactly for each star and split into their ``dt ^ (...)`` and
purely spatial parts, each part giving one spatial equation.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .exterior import Form, basis_masks, decompose, indices_of, mask_of
from .hodge import star_table_4d
from .polynomial import SPACETIME, Polynomial
from .structures import Kind
from .transform import AffineMap, FrameChange, substitute_coframe, carroll_boost, galilei_boost

VectorField3 = tuple[Polynomial, Polynomial, Polynomial]


class PolyForm(Form):
    """Differential form whose coefficients are :class:`Polynomial` in the
    coordinates x^0..x^n (``t, x, y, z`` for 1+3)."""

    @property
    def coords(self) -> tuple[str, ...]:
        return coordinate_names(self.dim)


def coordinate_names(dim: int) -> tuple[str, ...]:
    return SPACETIME if dim == 4 else tuple(f"x{i}" for i in range(dim))


def _as_poly(c: Any, gens: Sequence[str]) -> Polynomial:
    if isinstance(c, Polynomial):
        return c
    return Polynomial.constant(c, gens)


def exterior_derivative(a: PolyForm) -> PolyForm:
    """d(f e^I) = sum_j (d_j f) e^j ^ e^I in the coordinate coframe."""
    gens = a.coords
    if a.degree == a.dim:
        return a._like(a.dim, {})
    out: dict[int, Polynomial] = {}
    for mask, c in a.terms.items():
        c = _as_poly(c, gens)
        if c.gens != gens:
            raise ValueError(f"coefficients must be polynomials in {gens}, got {c.gens}")
        for j in range(a.dim):
            if mask >> j & 1:
                continue
            dc = c.diff(j)
            if not dc:
                continue
            # e^j ^ e^I: move e^j past the members of I below j
            below = bin(mask & ((1 << j) - 1)).count("1")
            m = mask | (1 << j)
            v = -dc if below & 1 else dc
            out[m] = out[m] + v if m in out else v
    return a._like(a.degree + 1, out)


# ---------------------------------------------------------------------------
# 1+3 vocabulary: a.dr, a.dS, f dV

_DS = {1: ((2, 3), 1), 2: ((1, 3), -1), 3: ((1, 2), 1)}  # dS_y = dz^dx = -dx^dz


def _zero_vec() -> VectorField3:
    z = Polynomial({}, SPACETIME)
    return (z, z, z)


def vec_dr(a: Sequence[Polynomial]) -> PolyForm:
    return PolyForm(4, 1, {1 << (i + 1): a[i] for i in range(3)})


def vec_dS(a: Sequence[Polynomial]) -> PolyForm:
    terms = {}
    for i in range(3):
        idx, sign = _DS[i + 1]
        terms[mask_of(idx)] = a[i] if sign > 0 else -a[i]
    return PolyForm(4, 2, terms)


def scalar_dV(f: Polynomial) -> PolyForm:
    return PolyForm(4, 3, {mask_of((1, 2, 3)): f})


def _get(a: Form, mask: int) -> Polynomial:
    return _as_poly(a.terms.get(mask, Fraction(0)), SPACETIME)


def read_dr(a: Form) -> VectorField3:
    return tuple(_get(a, 1 << (i + 1)) for i in range(3))


def read_dS(a: Form) -> VectorField3:
    out = []
    for i in range(3):
        idx, sign = _DS[i + 1]
        c = _get(a, mask_of(idx))
        out.append(c if sign > 0 else -c)
    return tuple(out)


def read_dV(a: Form) -> Polynomial:
    return _get(a, mask_of((1, 2, 3)))


def wedge_dt(a: PolyForm) -> PolyForm:
    return PolyForm(4, a.degree + 1, {m | 1: c for m, c in a.terms.items()})


def build_F(E: Sequence[Polynomial], B: Sequence[Polynomial]) -> PolyForm:
    """F = dt ^ E.dr - B.dS."""
    return wedge_dt(vec_dr(E)) - vec_dS(B)


def fields_of(F: PolyForm) -> tuple[VectorField3, VectorField3]:
    """Inverse of :func:`build_F`."""
    if F.dim != 4 or F.degree != 2:
        raise ValueError("expected a 2-form on 1+3 spacetime")
    s_hat, r_hat = decompose(F)
    E = read_dr(s_hat)
    B = tuple(-c for c in read_dS(r_hat))
    return E, B


def star_field(a: PolyForm, kind: Kind | str) -> PolyForm:
    """Table star applied pointwise in the coordinate coframe (dt, dx, dy, dz)."""
    return star_table_4d(a, kind)


# ---------------------------------------------------------------------------
# vector calculus (independent of the forms machinery)


@dataclass(frozen=True)
class VectorCalculus:
    div_E: Polynomial
    curl_E: VectorField3
    dt_E: VectorField3
    div_B: Polynomial
    curl_B: VectorField3
    dt_B: VectorField3


def div(a: Sequence[Polynomial]) -> Polynomial:
    return a[0].diff("x") + a[1].diff("y") + a[2].diff("z")


def curl(a: Sequence[Polynomial]) -> VectorField3:
    ax, ay, az = a
    return (
        az.diff("y") - ay.diff("z"),
        ax.diff("z") - az.diff("x"),
        ay.diff("x") - ax.diff("y"),
    )


def time_derivative(a: Sequence[Polynomial]) -> VectorField3:
    return tuple(c.diff("t") for c in a)


def vector_calculus(E: Sequence[Polynomial], B: Sequence[Polynomial]) -> VectorCalculus:
    return VectorCalculus(div(E), curl(E), time_derivative(E), div(B), curl(B), time_derivative(B))


# ---------------------------------------------------------------------------
# field equations


class Tag(enum.Enum):
    GAUSS = "Gauss"
    AMPERE = "Ampere"
    FARADAY = "Faraday"
    NO_MONOPOLE = "NoMonopole"
    TIME_CONSTANCY = "TimeConstancy"


# each residual is written the way the law is usually stated
_SIGN = {Tag.AMPERE: 1, Tag.TIME_CONSTANCY: -1, Tag.GAUSS: -1, Tag.FARADAY: -1, Tag.NO_MONOPOLE: -1}

_NAMES = {
    Tag.GAUSS: "div E",
    Tag.AMPERE: "curl B - d_t E",
    Tag.TIME_CONSTANCY: "d_t E",
    Tag.FARADAY: "curl E + d_t B",
    Tag.NO_MONOPOLE: "div B",
}


@dataclass(frozen=True)
class Residual:
    tag: Tag
    name: str
    components: tuple[Polynomial, ...]

    @property
    def satisfied(self) -> bool:
        return all(c.is_zero() for c in self.components)


@dataclass(frozen=True)
class EquationSet:
    kind: Kind
    residuals: tuple[Residual, ...]

    @property
    def satisfied(self) -> bool:
        return all(r.satisfied for r in self.residuals)

    def tags(self) -> list[Tag]:
        return [r.tag for r in self.residuals]

    def __getitem__(self, tag: Tag) -> Residual:
        for r in self.residuals:
            if r.tag is tag:
                return r
        raise KeyError(tag)

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "residuals": [
                {"tag": r.tag.value, "name": r.name, "components": [str(c) for c in r.components]}
                for r in self.residuals
            ],
            "satisfied": self.satisfied,
        }


def _image_parts(kind: Kind) -> tuple[bool, bool]:
    """Whether *F can have a dt ^ (...) part and a purely spatial part."""
    temporal = spatial = False
    for m in basis_masks(4, 2):
        img = star_table_4d(Form(4, 2, {m: 1}), kind)
        for mask in img.terms:
            if mask & 1:
                temporal = True
            else:
                spatial = True
    return temporal, spatial


def _residual(kind: Kind, tag: Tag, comps: Sequence[Polynomial]) -> Residual:
    sign = _SIGN[tag]
    name = _NAMES[tag]
    if kind is Kind.GALILEAN and tag is Tag.AMPERE:
        name = "curl B"
    return Residual(tag, name, tuple(c if sign > 0 else -c for c in comps))


def _as_kind(kind: Kind | str) -> Kind:
    return kind if isinstance(kind, Kind) else Kind.parse(kind)


def extract_equations(E: Sequence[Polynomial], B: Sequence[Polynomial], kind: Kind | str) -> EquationSet:
    """Spatial content of d*F = 0 and dF = 0 for the given star.

    A 3-form ``dt ^ P.dS + Q dV`` yields one vector equation from ``P`` and
    one scalar equation from ``Q``. A part that the star can never produce
    is not emitted at all.
    """
    kind = _as_kind(kind)
    F = build_F(E, B)
    temporal, spatial = _image_parts(kind)
    residuals: list[Residual] = []

    dstar = exterior_derivative(star_field(F, kind))
    p_hat, q_hat = decompose(dstar)
    if temporal or spatial:
        tag = Tag.AMPERE if temporal else Tag.TIME_CONSTANCY
        residuals.append(_residual(kind, tag, read_dS(p_hat)))
    if spatial:
        residuals.append(_residual(kind, Tag.GAUSS, (read_dV(q_hat),)))

    dF = exterior_derivative(F)
    p_hat, q_hat = decompose(dF)
    residuals.append(_residual(kind, Tag.FARADAY, read_dS(p_hat)))
    residuals.append(_residual(kind, Tag.NO_MONOPOLE, (read_dV(q_hat),)))
    order = [Tag.GAUSS, Tag.AMPERE, Tag.TIME_CONSTANCY, Tag.FARADAY, Tag.NO_MONOPOLE]
    residuals.sort(key=lambda r: order.index(r.tag))
    return EquationSet(kind, tuple(residuals))


# ---------------------------------------------------------------------------
# pullback along affine coordinate maps


def pullback_polyform(a: PolyForm, phi: AffineMap) -> PolyForm:
    """phi^* a: substitute x -> A x + b in coefficients and dx^a -> A^a_b dx^b."""
    if a.dim != phi.dim:
        raise ValueError("dimension mismatch")
    gens = a.coords
    A = phi.linear.matrix
    images = [
        Polynomial({tuple(int(k == j) for k in range(a.dim)): A[i][j] for j in range(a.dim)}, gens)
        + phi.translation[i]
        for i in range(a.dim)
    ]
    moved = a._like(a.degree, {m: _as_poly(c, gens).compose(images) for m, c in a.terms.items()})
    dx = [Form(a.dim, 1, {1 << j: A[i][j] for j in range(a.dim)}) for i in range(a.dim)]
    return substitute_coframe(moved, dx)


def boost_map(v: Sequence, kind: Kind | str, translation: Sequence | None = None) -> AffineMap:
    kind = _as_kind(kind)
    if kind is Kind.GALILEAN:
        lin = galilei_boost(v)
    elif kind is Kind.CARROLLIAN:
        lin = carroll_boost(v)
    else:
        raise ValueError("boost_map covers Galilei and Carroll boosts only")
    return AffineMap(lin, tuple(translation) if translation is not None else (0,) * lin.dim)


def transform_fields(E, B, phi: AffineMap) -> tuple[VectorField3, VectorField3]:
    return fields_of(pullback_polyform(build_F(E, B), phi))


def check_boost_covariance(E, B, v: Sequence, kind: Kind | str, translation: Sequence | None = None) -> bool:
    """True iff being a solution is preserved by the matching boost."""
    kind = _as_kind(kind)
    if kind is Kind.MINKOWSKI:
        raise ValueError("boost covariance is checked for Galilei and Carroll only")
    phi = boost_map(v, kind, translation)
    E2, B2 = transform_fields(E, B, phi)
    before = extract_equations(E, B, kind).satisfied
    after = extract_equations(E2, B2, kind).satisfied
    return before == after


# ---------------------------------------------------------------------------
# field files


def parse_fields(doc: Mapping[str, Any]) -> tuple[VectorField3, VectorField3]:
    out = []
    for key in ("E", "B"):
        comps = doc.get(key)
        if not isinstance(comps, list) or len(comps) != 3:
            raise ValueError(f"field {key!r} must be a list of three polynomial strings")
        out.append(tuple(Polynomial.parse(str(c), SPACETIME) for c in comps))
    return out[0], out[1]


def load_fields(path: str) -> tuple[VectorField3, VectorField3]:
    with open(path) as fh:
        return parse_fields(json.load(fh))


def fields_to_json(E, B) -> dict[str, list[str]]:
    return {"E": [str(c) for c in E], "B": [str(c) for c in B]}
