"""Frame changes, boosts and pullbacks.

A :class:`FrameChange` with matrix ``A`` (row index upper, column index
lower, as in ``A^b_a``) maps the frame as ``e'_a = A^b_a e_b`` and hence
the coframe as ``e'^a = (A^-1)^a_b e^b``. Pulling back along it replaces
every ``e^a`` by ``e'^a`` (and ``e_a`` by ``e'_a``) and re-expands in the old
basis. For an adapted change the distinguished tensors come back unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import linalg
from .exterior import Form, basis_masks, indices_of, wedge
from .hodge import StarVariant, star_oracle
from .linalg import Matrix
from .structures import Kind, SpacetimeStructure, SymTensor2


@dataclass(frozen=True)
class FrameChange:
    matrix: Matrix
    inverse: Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        m = linalg.as_matrix(self.matrix)
        if not m or any(len(r) != len(m) for r in m):
            raise ValueError("frame change must be a square matrix")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "inverse", linalg.inverse(m))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def det(self) -> Fraction:
        return linalg.det(self.matrix)

    def __matmul__(self, other: "FrameChange") -> "FrameChange":
        return FrameChange(linalg.matmul(self.matrix, other.matrix))

    def is_galilei(self) -> bool:
        """Block form [[1, 0], [v, R]] with R a rotation."""
        m = self.matrix
        return (
            m[0][0] == 1
            and all(x == 0 for x in m[0][1:])
            and _is_rotation([row[1:] for row in m[1:]])
        )

    def is_carroll(self) -> bool:
        """Block form [[1, v^T], [0, R]] with R a rotation."""
        m = self.matrix
        return (
            m[0][0] == 1
            and all(row[0] == 0 for row in m[1:])
            and _is_rotation([row[1:] for row in m[1:]])
        )


@dataclass(frozen=True)
class AffineMap:
    """Coordinate map x -> A x + b on a flat spacetime."""

    linear: FrameChange
    translation: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        t = tuple(Fraction(x) for x in self.translation)
        if len(t) != self.linear.dim:
            raise ValueError("translation length must match the dimension")
        object.__setattr__(self, "translation", t)

    @property
    def dim(self) -> int:
        return self.linear.dim

    def apply(self, point: Sequence) -> tuple[Fraction, ...]:
        x = linalg.matvec(self.linear.matrix, [Fraction(v) for v in point])
        return tuple(a + b for a, b in zip(x, self.translation))


def _is_rotation(r: Sequence[Sequence[Fraction]]) -> bool:
    r = linalg.as_matrix(r)
    n = len(r)
    if n == 0:
        return True
    return linalg.matmul(linalg.transpose(r), r) == linalg.identity(n) and linalg.det(r) == 1


def _block(top_left, top_right, bottom_left, bottom_right) -> Matrix:
    rows = [[top_left] + list(top_right)]
    for bl, br in zip(bottom_left, bottom_right):
        rows.append([bl] + list(br))
    return linalg.as_matrix(rows)


def galilei_boost(v: Sequence) -> FrameChange:
    """[[1, 0], [v, I]] : r' = r + v t."""
    v = [Fraction(x) for x in v]
    n = len(v)
    return FrameChange(_block(1, [0] * n, v, linalg.identity(n)))


def carroll_boost(v: Sequence) -> FrameChange:
    """[[1, v^T], [0, I]] : t' = t + v . r."""
    v = [Fraction(x) for x in v]
    n = len(v)
    return FrameChange(_block(1, v, [0] * n, linalg.identity(n)))


def rotation(r: Sequence[Sequence]) -> FrameChange:
    """block-diag(1, R); R must be exactly orthogonal with det R = 1."""
    r = linalg.as_matrix(r)
    n = len(r)
    if any(len(row) != n for row in r):
        raise ValueError("rotation matrix must be square")
    if linalg.matmul(linalg.transpose(r), r) != linalg.identity(n):
        raise ValueError("rotation matrix is not orthogonal")
    if linalg.det(r) != 1:
        raise ValueError("rotation matrix must have det = +1")
    return FrameChange(_block(1, [0] * n, [0] * n, r))


def cayley_rotation(skew: Sequence[Sequence]) -> Matrix:
    """Rational rotation (I - S)(I + S)^-1 from a skew-symmetric S."""
    s = linalg.as_matrix(skew)
    n = len(s)
    if any(s[i][j] != -s[j][i] for i in range(n) for j in range(n)):
        raise ValueError("Cayley transform needs a skew-symmetric matrix")
    eye = linalg.identity(n)
    minus = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(eye, s))
    plus = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(eye, s))
    return linalg.matmul(minus, linalg.inverse(plus))


def plane_rotation(n: int, i: int, j: int, cos: Fraction, sin: Fraction) -> Matrix:
    """Rotation by (cos, sin) in the (i, j) plane of R^n (0-based axes)."""
    if cos * cos + sin * sin != 1:
        raise ValueError("cos^2 + sin^2 must equal 1")
    m = [list(row) for row in linalg.identity(n)]
    m[i][i], m[i][j], m[j][i], m[j][j] = cos, -sin, sin, cos
    return linalg.as_matrix(m)


# ---------------------------------------------------------------------------
# pullbacks


def substitute_coframe(a: Form, images: Sequence[Form]) -> Form:
    """Replace e^i by the 1-form ``images[i]`` in every term of ``a``."""
    out = a._like(a.degree, {})
    one = Form.scalar(a.dim, 1)
    for mask, c in a.terms.items():
        term = one
        for i in indices_of(mask):
            term = wedge(term, images[i])
        out = out + a._like(a.degree, {m: c * x for m, x in term.terms.items()})
    return out


def pullback_form(a: Form, change: FrameChange) -> Form:
    """Replace each e^a by e'^a = (A^-1)^a_b e^b."""
    if a.dim != change.dim:
        raise ValueError(f"dimension mismatch: form {a.dim}, frame change {change.dim}")
    inv = change.inverse
    images = [Form(a.dim, 1, {1 << b: inv[i][b] for b in range(a.dim)}) for i in range(a.dim)]
    return substitute_coframe(a, images)


def _pull_upper(t: Matrix, m: Matrix) -> Matrix:
    return linalg.matmul(linalg.matmul(m, t), linalg.transpose(m))


def _pull_lower(t: Matrix, inv: Matrix) -> Matrix:
    return linalg.matmul(linalg.matmul(linalg.transpose(inv), t), inv)


def _pull_sym(t: SymTensor2, change: FrameChange) -> SymTensor2:
    if t.variance == "upper":
        return SymTensor2("upper", _pull_upper(t.entries, change.matrix))
    return SymTensor2("lower", _pull_lower(t.entries, change.inverse))


def pullback_structure(s: SpacetimeStructure, change: FrameChange) -> SpacetimeStructure:
    """Transform every tensor of ``s`` covariantly."""
    if s.dim != change.dim:
        raise ValueError(f"dimension mismatch: structure {s.dim}, frame change {change.dim}")
    xi = s.xi
    if xi is not None:
        if s.kind is Kind.GALILEAN:
            # covector: xi'_b = xi_a (A^-1)^a_b
            xi = linalg.matvec(linalg.transpose(change.inverse), xi)
        else:
            # vector: xi'^b = A^b_a xi^a
            xi = linalg.matvec(change.matrix, xi)
    out = replace(
        s,
        tensor=_pull_sym(s.tensor, change),
        xi=xi,
        k=_pull_sym(s.k, change) if s.k is not None else None,
        vol=pullback_form(s.vol, change),
        polyvol=s.polyvol * change.det(),
    )
    if out.key() != s.key():
        out = replace(out, canonical=False)
    return out


StarFn = Callable[[Form, SpacetimeStructure, StarVariant], Form]


def check_naturality(
    a: Form,
    s: SpacetimeStructure,
    variant: StarVariant,
    change: FrameChange,
    star: StarFn = star_oracle,
) -> bool:
    """f*(star_s a) == star_{f*s}(f* a)."""
    lhs = pullback_form(star(a, s, variant), change)
    rhs = star(pullback_form(a, change), pullback_structure(s, change), variant)
    return lhs == rhs


def check_invariance(
    a: Form,
    s: SpacetimeStructure,
    variant: StarVariant,
    change: FrameChange,
    star: StarFn = star_oracle,
) -> bool:
    """f*(star a) == star(f* a) with the structure held fixed."""
    return pullback_form(star(a, s, variant), change) == star(pullback_form(a, change), s, variant)


def structure_fixed(s: SpacetimeStructure, change: FrameChange) -> bool:
    return pullback_structure(s, change).key() == s.key()


def all_basis_forms(dim: int) -> list[Form]:
    return [Form(dim, p, {m: 1}) for p in range(dim + 1) for m in basis_masks(dim, p)]
