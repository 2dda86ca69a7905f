"""Hodge star operators on Lorentzian, Galilean and Carrollian structures.

Two independent routes are kept side by side:

* :func:`star_oracle` contracts the input with the mixed epsilon tensor
  omega^{a..b}_{c..d}, obtained either by raising the first p slots of the
  volume form (h, k~ or the inverse metric) or by lowering the last d-p
  slots of the top polyvector (h~ or k).
* :func:`star_closed` splits a form as ``e^0 ^ s + r`` and applies the
  closed formulas in terms of the Euclidean star on spatial forms.

Both are linear in the coefficients, so they also act on forms whose
coefficients are polynomials.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Any, Mapping

from . import linalg
from .exterior import (
    Form,
    decompose,
    e0,
    eta,
    indices_of,
    levi_civita,
    mask_of,
    sort_sign,
    wedge,
)
from .structures import Kind, SpacetimeStructure, canonical_constants


class StarVariant(enum.Enum):
    MINKOWSKI_METRIC = "minkowski-metric"
    GALILEAN_H = "galilean-h"
    GALILEAN_K = "galilean-k"
    CARROLLIAN_H = "carrollian-h"
    CARROLLIAN_K = "carrollian-k"
    TABLE_GALILEI_4D = "table-galilei-4d"
    TABLE_CARROLL_4D = "table-carroll-4d"

    @property
    def kind(self) -> Kind:
        return _VARIANT_KIND[self]

    @property
    def raises(self) -> bool:
        """True if built by raising indices into the volume form."""
        return self in (StarVariant.MINKOWSKI_METRIC, StarVariant.GALILEAN_H, StarVariant.CARROLLIAN_K)

    @property
    def is_table(self) -> bool:
        return self in (StarVariant.TABLE_GALILEI_4D, StarVariant.TABLE_CARROLL_4D)


_VARIANT_KIND = {
    StarVariant.MINKOWSKI_METRIC: Kind.MINKOWSKI,
    StarVariant.GALILEAN_H: Kind.GALILEAN,
    StarVariant.GALILEAN_K: Kind.GALILEAN,
    StarVariant.CARROLLIAN_H: Kind.CARROLLIAN,
    StarVariant.CARROLLIAN_K: Kind.CARROLLIAN,
    StarVariant.TABLE_GALILEI_4D: Kind.GALILEAN,
    StarVariant.TABLE_CARROLL_4D: Kind.CARROLLIAN,
}

BASIC_VARIANTS = (
    StarVariant.MINKOWSKI_METRIC,
    StarVariant.GALILEAN_H,
    StarVariant.GALILEAN_K,
    StarVariant.CARROLLIAN_H,
    StarVariant.CARROLLIAN_K,
)


def variants_for(kind: Kind, dim: int | None = None) -> list[StarVariant]:
    out = [v for v in StarVariant if v.kind is kind]
    if dim is not None and dim != 4:
        out = [v for v in out if not v.is_table]
    return out


class IncompatibleVariant(ValueError):
    pass


def _check(a: Form, s: SpacetimeStructure, variant: StarVariant) -> None:
    if variant.kind is not s.kind:
        raise IncompatibleVariant(f"{variant.value} star needs a {variant.kind.value} structure, got {s.kind.value}")
    if a.dim != s.dim:
        raise ValueError(f"dimension mismatch: form has dim {a.dim}, structure {s.dim}")
    if variant.is_table and s.dim != 4:
        raise IncompatibleVariant(f"{variant.value} is only defined for d = 4")


# ---------------------------------------------------------------------------
# mixed epsilon tensor


@dataclass(frozen=True)
class MixedEpsilon:
    """omega^{A}_{C} keyed by sorted (upper, lower) bitmasks; zero entries
    are omitted."""

    dim: int
    degree: int
    components: Mapping[tuple[int, int], Fraction]

    def __getitem__(self, key: tuple[tuple[int, ...], tuple[int, ...]]) -> Fraction:
        """Entry for arbitrary (possibly unsorted) index tuples."""
        upper, lower = key
        su, mu_ = sort_sign(tuple(upper))
        sl, ml = sort_sign(tuple(lower))
        if su == 0 or sl == 0:
            return Fraction(0)
        return su * sl * self.components.get((mu_, ml), Fraction(0))


def contraction_data(s: SpacetimeStructure, variant: StarVariant) -> tuple[linalg.Matrix, Fraction]:
    """(index-moving tensor, coefficient of the top form/polyvector) used by
    ``variant`` on structure ``s``."""
    if variant is StarVariant.MINKOWSKI_METRIC:
        return linalg.inverse(s.tensor.entries), s.vol_coefficient
    if variant is StarVariant.GALILEAN_H:
        return s.tensor.entries, s.vol_coefficient
    if variant is StarVariant.CARROLLIAN_K:
        return s.k.entries, s.vol_coefficient
    if variant is StarVariant.CARROLLIAN_H:
        return s.tensor.entries, s.polyvol
    if variant is StarVariant.GALILEAN_K:
        return s.k.entries, s.polyvol
    raise IncompatibleVariant(f"{variant.value} has no single contraction tensor")


def _support(m: linalg.Matrix) -> list[list[int]]:
    return [[j for j, x in enumerate(row) if x] for row in m]


def _build_mixed_epsilon(s: SpacetimeStructure, variant: StarVariant, p: int) -> MixedEpsilon:
    d = s.dim
    t, top = contraction_data(s, variant)
    supp = _support(t)
    comps: dict[tuple[int, int], Fraction] = {}
    if variant.raises:
        # omega^{A}_{C} = t^{A_1 a_1} ... t^{A_p a_p} top eps_{a_1..a_p C}
        for upper in combinations(range(d), p):
            for hat in product(*(supp[a] for a in upper)):
                if len(set(hat)) != p:
                    continue
                lower = tuple(i for i in range(d) if i not in hat)
                w = top * levi_civita(hat + lower)
                for a, b in zip(upper, hat):
                    w *= t[a][b]
                key = (mask_of(upper), mask_of(lower))
                comps[key] = comps.get(key, Fraction(0)) + w
    else:
        # omega^{A}_{C} = top eps^{A c_1..c_q} t_{C_1 c_1} ... t_{C_q c_q}
        q = d - p
        for upper in combinations(range(d), p):
            for lower in combinations(range(d), q):
                total = Fraction(0)
                for hat in product(*(supp[c] for c in lower)):
                    eps = levi_civita(upper + hat)
                    if not eps:
                        continue
                    w = top * eps
                    for c, ch in zip(lower, hat):
                        w *= t[c][ch]
                    total += w
                if total:
                    comps[(mask_of(upper), mask_of(lower))] = total
    return MixedEpsilon(d, p, {k: v for k, v in comps.items() if v})


_EPS_CACHE: dict[tuple, MixedEpsilon] = {}
_EPS_LOCK = threading.Lock()
_EPS_CACHE_MAX = 4096


def mixed_epsilon(s: SpacetimeStructure, variant: StarVariant, p: int) -> MixedEpsilon:
    if variant.kind is not s.kind:
        raise IncompatibleVariant(f"{variant.value} star needs a {variant.kind.value} structure")
    if not 0 <= p <= s.dim:
        raise ValueError(f"degree {p} out of range for dim {s.dim}")
    key = (s.key(), variant, p)
    hit = _EPS_CACHE.get(key)
    if hit is not None:
        return hit
    table = _build_mixed_epsilon(s, variant, p)
    with _EPS_LOCK:
        # only fully built tables are ever published
        if len(_EPS_CACHE) >= _EPS_CACHE_MAX:
            _EPS_CACHE.clear()
        return _EPS_CACHE.setdefault(key, table)


# ---------------------------------------------------------------------------
# oracle route


def _table_parts(a: Form, variant: StarVariant) -> tuple[StarVariant, int]:
    """(basic variant, extra sign) that the 4D table convention uses at this degree."""
    p, d = a.degree, a.dim
    if variant is StarVariant.TABLE_GALILEI_4D:
        return (StarVariant.GALILEAN_K, -1) if p == d else (StarVariant.GALILEAN_H, 1)
    return (StarVariant.CARROLLIAN_K, 1) if p == 0 else (StarVariant.CARROLLIAN_H, 1)


def star_oracle(a: Form, s: SpacetimeStructure, variant: StarVariant) -> Form:
    """*(e^A) = sum over sorted C of omega^A_C e^C, extended linearly."""
    _check(a, s, variant)
    if variant.is_table:
        basic, sign = _table_parts(a, variant)
        return star_oracle(a, s, basic).scale(sign)
    eps = mixed_epsilon(s, variant, a.degree)
    out: dict[int, Any] = {}
    for (upper, lower), w in eps.components.items():
        c = a.terms.get(upper)
        if c is None:
            continue
        v = c * w
        out[lower] = out[lower] + v if lower in out else v
    return a._like(a.dim - a.degree, out)


def star_bruteforce(a: Form, s: SpacetimeStructure, variant: StarVariant) -> Form:
    """Literal ordered-tuple summation with the 1/(d-p)! normalization.

    Exponential in d; meant for cross-checking :func:`star_oracle` on small
    dimensions only.
    """
    _check(a, s, variant)
    if variant.is_table:
        basic, sign = _table_parts(a, variant)
        return star_bruteforce(a, s, basic).scale(sign)
    d, p = a.dim, a.degree
    q = d - p
    t, top = contraction_data(s, variant)
    norm = Fraction(1, factorial(q))
    out: dict[int, Any] = {}
    for upper_mask, coef in a.terms.items():
        upper = indices_of(upper_mask)
        for lower in product(range(d), repeat=q):
            w = Fraction(0)
            if variant.raises:
                for hat in product(range(d), repeat=p):
                    x = top * levi_civita(hat + lower)
                    for a_, b_ in zip(upper, hat):
                        x *= t[a_][b_]
                    w += x
            else:
                for hat in product(range(d), repeat=q):
                    x = top * levi_civita(upper + hat)
                    for c_, ch in zip(lower, hat):
                        x *= t[c_][ch]
                    w += x
            if not w:
                continue
            sign, mask = sort_sign(lower)
            if sign == 0:
                continue
            v = coef * (w * norm * sign)
            out[mask] = out[mask] + v if mask in out else v
    return a._like(q, out)


# ---------------------------------------------------------------------------
# closed-form route


def hat_star(s: Form) -> Form:
    """Euclidean Hodge star on spatial forms (delta_ij, eps_{1..n} = +1)."""
    if not s.is_spatial():
        raise ValueError("hat_star acts on spatial forms only (no e^0 leg)")
    n = s.n
    if s.degree > n:
        raise ValueError(f"spatial forms have degree <= {n}, got {s.degree}")
    spatial = range(1, n + 1)
    out: dict[int, Any] = {}
    for mask, c in s.terms.items():
        idx = indices_of(mask)
        rest = tuple(i for i in spatial if i not in idx)
        sign = levi_civita(tuple(i - 1 for i in idx + rest))
        out[mask_of(rest)] = c * sign
    return s._like(n - s.degree, out)


def _closed(a: Form, variant: StarVariant, lambda_h, lambda_k, mu) -> Form:
    d, n, p = a.dim, a.n, a.degree
    s_hat, r_hat = decompose(a)
    out = a._like(d - p, {})
    E0 = e0(d)
    has_s = p >= 1
    has_r = p <= n

    if variant is StarVariant.MINKOWSKI_METRIC:
        if has_r:
            out = out + wedge(E0, hat_star(r_hat))
        if has_s:
            out = out + hat_star(eta(s_hat))
        return out
    if variant is StarVariant.GALILEAN_H:
        # *(e^0 ^ s + r) = (-lambda)^p e^0 ^ *r
        if has_r:
            out = out + wedge(E0, hat_star(r_hat)).scale((-lambda_h) ** p)
        return out
    if variant is StarVariant.CARROLLIAN_H:
        # *(e^0 ^ s + r) = mu lambda^(n-p+1) *s = mu lambda^(n-p+1) (-1)^(p-1) * eta s
        if has_s:
            factor = mu * lambda_h ** (n - p + 1) * (-1) ** (p - 1)
            out = out + hat_star(eta(s_hat)).scale(factor)
        return out
    if variant is StarVariant.GALILEAN_K:
        if p == d:
            # *(e^0 ^ omega_hat) = mu, independent of lambda
            return hat_star(s_hat).scale(mu)
        if p == n:
            # *omega_hat = (-1)^n lambda mu e^0 ; *(e^0 ^ s) = 0
            return wedge(E0, hat_star(r_hat)).scale((-1) ** n * lambda_k * mu)
        return out
    if variant is StarVariant.CARROLLIAN_K:
        if p == 0:
            # *1 = e^0 ^ omega_hat
            return wedge(E0, hat_star(r_hat))
        if p == 1:
            # *e^0 = lambda omega_hat ; *e^i = 0
            return hat_star(s_hat).scale(lambda_k)
        return out
    raise IncompatibleVariant(f"no closed form for {variant.value}")


def star_closed(a: Form, s: SpacetimeStructure, variant: StarVariant) -> Form:
    """Closed-form star; requires ``s`` in its adapted block form."""
    _check(a, s, variant)
    if variant.is_table:
        return star_table_4d(a, variant.kind)
    if not s.in_adapted_block_form():
        raise ValueError("closed forms need the structure in an adapted frame; use star_oracle")
    return _closed(a, variant, s.lambda_h, s.lambda_k, s.mu)


def _canonical_closed(a: Form, variant: StarVariant) -> Form:
    c = canonical_constants(variant.kind, a.n)
    return _closed(a, variant, c["lambda_h"], c["lambda_k"], c["mu"])


def _as_kind(kind: Kind | str) -> Kind:
    return kind if isinstance(kind, Kind) else Kind.parse(kind)


def star_table_4d(a: Form, kind: Kind | str) -> Form:
    """The explicit 1+3 convention: h-based stars in degrees 1..3, with the
    k-based star at the exceptional degree (Galilei top degree, with an extra
    factor -1; Carroll degree 0)."""
    if a.dim != 4:
        raise ValueError(f"the 4D table star needs dim 4, got {a.dim}")
    return star_convention(a, kind)


def star_convention(a: Form, kind: Kind | str) -> Form:
    """Default star of a spacetime kind in any dimension.

    h-based stars away from the exceptional degree; at the exceptional degree
    the k-based star, with the Galilean top-degree sign chosen as (-1)^n so
    that it matches the Lorentzian value (this is the -1 of the 1+3 table).
    """
    kind = _as_kind(kind)
    p, d, n = a.degree, a.dim, a.n
    if kind is Kind.MINKOWSKI:
        return _canonical_closed(a, StarVariant.MINKOWSKI_METRIC)
    if kind is Kind.GALILEAN:
        if p == d:
            return _canonical_closed(a, StarVariant.GALILEAN_K).scale((-1) ** n)
        return _canonical_closed(a, StarVariant.GALILEAN_H)
    if p == 0:
        return _canonical_closed(a, StarVariant.CARROLLIAN_K)
    return _canonical_closed(a, StarVariant.CARROLLIAN_H)
