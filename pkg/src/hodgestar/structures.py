"""Canonical tensor data of Minkowski, Galilean and Carrollian spacetimes.

Everything is stored in one adapted frame of a (1+n)-dimensional spacetime.
The normalization constants default to the values that make the degenerate
stars look as much like the Lorentzian one as possible:

=========  ========  =========  ==========
kind       lambda_h  lambda_k   mu
=========  ========  =========  ==========
Galilean   -1        (-1)^n     1
Carroll    -1        1          (-1)^n
=========  ========  =========  ==========

``lambda_h`` scales h^ij (resp. h~_ij), ``lambda_k`` scales k = xi (x) xi,
``mu`` scales the top-degree polyvector. Anything else is reachable through
``overrides`` and is flagged ``canonical=False``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Mapping, Sequence

from . import linalg
from .exterior import Form, volume
from .linalg import Matrix


class Kind(enum.Enum):
    MINKOWSKI = "minkowski"
    GALILEAN = "galilean"
    CARROLLIAN = "carrollian"

    @classmethod
    def parse(cls, name: str) -> "Kind":
        aliases = {
            "minkowski": cls.MINKOWSKI,
            "lorentzian": cls.MINKOWSKI,
            "galilei": cls.GALILEAN,
            "galilean": cls.GALILEAN,
            "carroll": cls.CARROLLIAN,
            "carrollian": cls.CARROLLIAN,
        }
        try:
            return aliases[name.lower()]
        except KeyError:
            raise ValueError(f"unknown spacetime kind {name!r}") from None


@dataclass(frozen=True)
class SymTensor2:
    """Symmetric rank-2 tensor; ``variance`` is ``"upper"`` or ``"lower"``."""

    variance: str
    entries: Matrix

    def __post_init__(self) -> None:
        if self.variance not in ("upper", "lower"):
            raise ValueError(f"variance must be 'upper' or 'lower', not {self.variance!r}")
        object.__setattr__(self, "entries", linalg.as_matrix(self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ab: tuple[int, int]) -> Fraction:
        a, b = ab
        return self.entries[a][b]

    def is_symmetric(self) -> bool:
        return linalg.is_symmetric(self.entries)

    def rank(self) -> int:
        return linalg.rank(self.entries)


@dataclass(frozen=True)
class SpacetimeStructure:
    """Canonical tensors of one spacetime in a fixed frame.

    ``tensor`` is the metric g_ab (Minkowski), h^ab (Galilean, upper) or
    h~_ab (Carrollian, lower). ``xi`` is the covector xi_a (Galilean) or the
    vector xi~^a (Carrollian); ``k`` is the derived rank-1 tensor. ``vol`` is
    the top form, ``polyvol`` the coefficient of e_0 ^ ... ^ e_n.
    """

    kind: Kind
    n: int
    tensor: SymTensor2
    xi: tuple[Fraction, ...] | None
    k: SymTensor2 | None
    vol: Form
    polyvol: Fraction
    lambda_h: Fraction = Fraction(-1)
    lambda_k: Fraction = Fraction(1)
    mu: Fraction = Fraction(1)
    canonical: bool = True

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def vol_coefficient(self) -> Fraction:
        return self.vol.terms.get((1 << self.dim) - 1, Fraction(0))

    def key(self) -> tuple:
        """Hashable identity of the tensor data (used for memoization)."""
        return (
            self.kind,
            self.n,
            self.tensor.entries,
            self.xi,
            self.k.entries if self.k is not None else None,
            self.vol_coefficient,
            self.polyvol,
        )

    # -- closed-form eligibility -------------------------------------------

    def in_adapted_block_form(self) -> bool:
        """True when the components are exactly what the constructor would
        produce for this structure's (lambda_h, lambda_k, mu)."""
        ref = _build(self.kind, self.n, self.lambda_h, self.lambda_k, self.mu, canonical=self.canonical)
        return self.key() == ref.key()

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        lorentzian = self.kind is Kind.MINKOWSKI
        return {
            "kind": self.kind.value,
            "n": self.n,
            "lambda_h": None if lorentzian else str(self.lambda_h),
            "lambda_k": None if lorentzian else str(self.lambda_k),
            "mu": None if lorentzian else str(self.mu),
            "h": [[str(x) for x in row] for row in self.tensor.entries],
            "xi": [str(x) for x in self.xi] if self.xi is not None else None,
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "SpacetimeStructure":
        kind = Kind.parse(doc["kind"])
        n = int(doc["n"])
        overrides = {k: Fraction(doc[k]) for k in ("lambda_h", "lambda_k", "mu") if doc.get(k) is not None}
        base = make(kind, n, overrides=overrides or None)
        h = doc.get("h")
        xi = doc.get("xi")
        if h is None and xi is None:
            return base
        tensor = base.tensor
        if h is not None:
            tensor = SymTensor2(base.tensor.variance, [[Fraction(x) for x in row] for row in h])
        new_xi = base.xi
        if xi is not None:
            new_xi = tuple(Fraction(x) for x in xi)
        k = base.k
        if new_xi is not None:
            k = SymTensor2(base.k.variance, linalg.scale(linalg.outer(new_xi, new_xi), base.lambda_k))
        out = replace(base, tensor=tensor, xi=new_xi, k=k)
        if out.key() != base.key():
            out = replace(out, canonical=False)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"spatial dimension n must be an integer >= 1, got {n!r}")
    if n + 1 > 16:
        raise ValueError("dimension exceeds 16")


def _build(kind: Kind, n: int, lambda_h, lambda_k, mu, canonical: bool = True) -> SpacetimeStructure:
    d = n + 1
    lambda_h, lambda_k, mu = Fraction(lambda_h), Fraction(lambda_k), Fraction(mu)
    if kind is Kind.MINKOWSKI:
        g = [[Fraction(0)] * d for _ in range(d)]
        g[0][0] = Fraction(1)
        for i in range(1, d):
            g[i][i] = Fraction(-1)
        return SpacetimeStructure(
            kind, n, SymTensor2("lower", g), None, None, volume(d), Fraction(1),
            Fraction(-1), Fraction(0), Fraction(1), canonical,
        )
    h = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        h[i][i] = lambda_h
    xi = (Fraction(1),) + (Fraction(0),) * n
    k = linalg.scale(linalg.outer(xi, xi), lambda_k)
    if kind is Kind.GALILEAN:
        return SpacetimeStructure(
            kind, n, SymTensor2("upper", h), xi, SymTensor2("lower", k), volume(d), mu,
            lambda_h, lambda_k, mu, canonical,
        )
    return SpacetimeStructure(
        kind, n, SymTensor2("lower", h), xi, SymTensor2("upper", k), volume(d), mu,
        lambda_h, lambda_k, mu, canonical,
    )


def canonical_constants(kind: Kind, n: int) -> dict[str, Fraction]:
    sign_n = Fraction((-1) ** n)
    if kind is Kind.GALILEAN:
        return {"lambda_h": Fraction(-1), "lambda_k": sign_n, "mu": Fraction(1)}
    if kind is Kind.CARROLLIAN:
        return {"lambda_h": Fraction(-1), "lambda_k": Fraction(1), "mu": sign_n}
    return {"lambda_h": Fraction(-1), "lambda_k": Fraction(0), "mu": Fraction(1)}


def make(kind: Kind, n: int, overrides: Mapping[str, Any] | None = None) -> SpacetimeStructure:
    _check_n(n)
    consts = canonical_constants(kind, n)
    canonical = True
    if overrides:
        if kind is Kind.MINKOWSKI:
            raise ValueError("the Minkowski structure has no normalization constants")
        unknown = set(overrides) - set(consts)
        if unknown:
            raise ValueError(f"unknown override keys {sorted(unknown)}")
        for key, val in overrides.items():
            if Fraction(val) == 0:
                raise ValueError(f"{key} must be nonzero")
            if Fraction(val) != consts[key]:
                canonical = False
            consts[key] = Fraction(val)
    return _build(kind, n, canonical=canonical, **consts)


def make_minkowski(n: int) -> SpacetimeStructure:
    """Metric diag(+1, -1, ..., -1), volume form e^0 ^ ... ^ e^n."""
    return make(Kind.MINKOWSKI, n)


def make_galilean(n: int, overrides: Mapping[str, Any] | None = None) -> SpacetimeStructure:
    return make(Kind.GALILEAN, n, overrides)


def make_carrollian(n: int, overrides: Mapping[str, Any] | None = None) -> SpacetimeStructure:
    return make(Kind.CARROLLIAN, n, overrides)


# ---------------------------------------------------------------------------
# validation


def _annihilates(t: SymTensor2, xi: Sequence[Fraction]) -> bool:
    return all(v == 0 for v in linalg.matvec(t.entries, xi))


def validate_adapted(s: SpacetimeStructure) -> list[str]:
    """List the adapted-frame conditions that ``s`` violates.

    Each entry is ``"<code>: <detail>"`` with code one of ``symmetry``,
    ``nondegenerate``, ``xi``, ``annihilation``, ``rank``, ``k-tensor``,
    ``frame``, ``normalization``.
    """
    out: list[str] = []
    d = s.dim
    t = s.tensor
    if t.dim != d or any(len(r) != d for r in t.entries):
        return [f"shape: tensor is not {d}x{d}"]
    if not t.is_symmetric():
        out.append("symmetry: tensor components are not symmetric")
    if s.kind is Kind.MINKOWSKI:
        if linalg.det(t.entries) == 0:
            out.append("nondegenerate: metric is singular")
        elif t.entries != _build(Kind.MINKOWSKI, s.n, -1, 0, 1).tensor.entries:
            out.append("frame: metric is not diag(1, -1, ..., -1)")
        if s.vol != volume(d):
            out.append("normalization: volume form is not e^0 ^ ... ^ e^n")
        return out

    xi = s.xi
    if xi is None or len(xi) != d or all(x == 0 for x in xi):
        out.append("xi: distinguished (co)vector missing or zero")
        return out
    if not _annihilates(t, xi):
        out.append("annihilation: h(xi, .) != 0")
    r = t.rank()
    if r != s.n:
        out.append(f"rank: tensor has rank {r}, expected {s.n}")
    if s.k is None or s.k.entries != linalg.scale(linalg.outer(xi, xi), s.lambda_k):
        out.append("k-tensor: k != lambda_k * xi (x) xi")
    elif s.k.rank() != 1:
        out.append("k-tensor: rank(k) != 1")
    if tuple(xi) != (Fraction(1),) + (Fraction(0),) * s.n:
        out.append("frame: xi is not (1, 0, ..., 0)")
    expected = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        expected[i][i] = s.lambda_h
    if t.entries != linalg.as_matrix(expected):
        out.append("normalization: spatial block is not lambda_h * identity")
    if s.vol != volume(d):
        out.append("normalization: volume form components differ from eps")
    if s.polyvol != s.mu:
        out.append("normalization: polyvector components differ from mu * eps")
    return out
