"""Exact polynomial solutions of the source-free field equations.

The residuals are linear in the field coefficients, so every solution of
total degree <= k is a vector in the null space of one rational matrix.
The matrix is assembled from :func:`vector_calculus` alone, which keeps the
generator independent of the forms machinery that it is used to test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from . import linalg
from .electro import Tag, VectorField3, vector_calculus
from .polynomial import SPACETIME, Polynomial
from .structures import Kind

Monomial = tuple[int, ...]


def expected_residuals(E: Sequence[Polynomial], B: Sequence[Polynomial], kind: Kind | str) -> dict[Tag, tuple[Polynomial, ...]]:
    """The three columns of the field equations, written with div/curl/d_t."""
    kind = kind if isinstance(kind, Kind) else Kind.parse(kind)
    vc = vector_calculus(E, B)
    faraday = tuple(a + b for a, b in zip(vc.curl_E, vc.dt_B))
    out: dict[Tag, tuple[Polynomial, ...]] = {}
    if kind is Kind.MINKOWSKI:
        out[Tag.GAUSS] = (vc.div_E,)
        out[Tag.AMPERE] = tuple(a - b for a, b in zip(vc.curl_B, vc.dt_E))
    elif kind is Kind.GALILEAN:
        out[Tag.AMPERE] = vc.curl_B
    else:
        out[Tag.GAUSS] = (vc.div_E,)
        out[Tag.TIME_CONSTANCY] = vc.dt_E
    out[Tag.FARADAY] = faraday
    out[Tag.NO_MONOPOLE] = (vc.div_B,)
    return out


def monomials(max_degree: int, nvars: int = 4) -> list[Monomial]:
    out = []
    for k in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), k):
            m = [0] * nvars
            for i in combo:
                m[i] += 1
            out.append(tuple(m))
    return out


def _fields_from_vector(vec: Sequence[Fraction], monos: list[Monomial]) -> tuple[VectorField3, VectorField3]:
    k = len(monos)
    comps = [Polynomial({m: vec[j * k + i] for i, m in enumerate(monos)}, SPACETIME) for j in range(6)]
    return tuple(comps[:3]), tuple(comps[3:])


@lru_cache(maxsize=None)
def solution_basis(kind: Kind, max_degree: int) -> tuple[tuple[VectorField3, VectorField3], ...]:
    """Basis of all exact solutions with components of total degree <= max_degree."""
    monos = monomials(max_degree)
    nunk = 6 * len(monos)
    columns: list[dict[tuple, Fraction]] = []
    for u in range(nunk):
        vec = [Fraction(0)] * nunk
        vec[u] = Fraction(1)
        E, B = _fields_from_vector(vec, monos)
        col: dict[tuple, Fraction] = {}
        for tag, comps in expected_residuals(E, B, kind).items():
            for ci, poly in enumerate(comps):
                for m, c in poly.terms.items():
                    col[(tag.value, ci, m)] = c
        columns.append(col)
    keys = sorted({k for col in columns for k in col})
    if not keys:
        matrix = linalg.zeros(1, nunk)
    else:
        matrix = linalg.as_matrix([[col.get(k, 0) for col in columns] for k in keys])
    return tuple(_fields_from_vector(v, monos) for v in linalg.nullspace(matrix))


def random_solution(rng: random.Random, kind: Kind | str, max_degree: int = 2, terms: int = 4) -> tuple[VectorField3, VectorField3]:
    """Random rational combination of a few basis solutions (never all zero)."""
    kind = kind if isinstance(kind, Kind) else Kind.parse(kind)
    basis = solution_basis(kind, max_degree)
    while True:
        E = [Polynomial({}, SPACETIME)] * 3
        B = [Polynomial({}, SPACETIME)] * 3
        for e, b in rng.sample(basis, min(terms, len(basis))):
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            E = [x + y * c for x, y in zip(E, e)]
            B = [x + y * c for x, y in zip(B, b)]
        if any(E) or any(B):
            return tuple(E), tuple(B)
