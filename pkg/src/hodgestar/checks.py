"""Deterministic verification suites for the star operators.

Each suite returns a :class:`SuiteResult` with a case count and, on failure,
the first counterexample in readable form. The CLI ``verify`` command and
the acceptance tests both go through here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from . import linalg
from .exterior import Form, basis_masks, e0, format_form, volume, wedge
from .hodge import (
    StarVariant,
    star_bruteforce,
    star_closed,
    star_convention,
    star_oracle,
    variants_for,
)
from .structures import Kind, SpacetimeStructure, make
from .transform import (
    FrameChange,
    all_basis_forms,
    carroll_boost,
    cayley_rotation,
    check_invariance,
    check_naturality,
    galilei_boost,
    rotation,
    structure_fixed,
)

SUITES = ("oracle", "nilpotency", "kernels", "coincidence", "exceptional", "naturality")


@dataclass(frozen=True)
class VerifyConfig:
    max_dim: int = 6
    seed: int = 0
    structure: SpacetimeStructure | None = None
    invariance_samples: int = 200
    naturality_samples: int = 50


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = describe()

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }


def _fmt(a: Form) -> str:
    n = a.dim - 1
    return format_form(a) if n >= 1 else str(a.terms)


def _structures(cfg: VerifyConfig, dims: range | None = None) -> Iterator[SpacetimeStructure]:
    if cfg.structure is not None:
        yield cfg.structure
        return
    for d in dims if dims is not None else range(2, cfg.max_dim + 1):
        for kind in Kind:
            yield make(kind, d - 1)


# ---------------------------------------------------------------------------
# random adapted frame changes


def random_rational(rng: random.Random, bound: int = 3, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def random_rotation(rng: random.Random, n: int) -> linalg.Matrix:
    """Exactly orthogonal rational rotation via the Cayley transform."""
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = random_rational(rng, 2, 3)
            s[i][j], s[j][i] = x, -x
    return cayley_rotation(s)


def random_adapted_change(rng: random.Random, kind: Kind, n: int, factors: int = 3) -> FrameChange:
    """Random product of boosts and rotations of the matching group."""
    boost = galilei_boost if kind is Kind.GALILEAN else carroll_boost
    out = FrameChange(linalg.identity(n + 1))
    for _ in range(rng.randint(1, factors)):
        if rng.random() < 0.5:
            step = boost([random_rational(rng) for _ in range(n)])
        else:
            step = rotation(random_rotation(rng, n))
        out = out @ step
    return out


def random_invertible(rng: random.Random, d: int) -> FrameChange:
    while True:
        m = [[random_rational(rng, 2, 3) for _ in range(d)] for _ in range(d)]
        if linalg.det(m) != 0:
            return FrameChange(m)


# ---------------------------------------------------------------------------
# suites


def suite_oracle(cfg: VerifyConfig) -> SuiteResult:
    """Closed form == contraction oracle on every basis form and variant."""
    res = SuiteResult("oracle")
    for s in _structures(cfg):
        block = s.in_adapted_block_form()
        # off the block form only the two contraction routes can be compared
        other = star_closed if block else star_bruteforce
        if not block and s.dim > 4:
            res.notes.append(f"skipped d={s.dim}: brute force too slow off the adapted frame")
            continue
        for variant in variants_for(s.kind, s.dim):
            for a in all_basis_forms(s.dim):
                lhs, rhs = star_oracle(a, s, variant), other(a, s, variant)
                res.record(
                    lhs == rhs,
                    lambda: f"{variant.value} d={s.dim}: *({_fmt(a)}) oracle={_fmt(lhs)} other={_fmt(rhs)}",
                )
    return res


def _nilpotent_variants(kind: Kind) -> tuple[StarVariant, ...]:
    return {
        Kind.GALILEAN: (StarVariant.GALILEAN_H,),
        Kind.CARROLLIAN: (StarVariant.CARROLLIAN_H,),
        Kind.MINKOWSKI: (),
    }[kind]


def minkowski_square_sign(p: int, d: int) -> int:
    """**a = (-1)^(p(d-p)) (-1)^(d-1) a for signature (1, d-1)."""
    return (-1) ** (p * (d - p) + d - 1)


def suite_nilpotency(cfg: VerifyConfig) -> SuiteResult:
    """h-based stars square to 0 away from p in {0, d}; the Lorentzian one to +-1."""
    res = SuiteResult("nilpotency")
    for s in _structures(cfg):
        d = s.dim
        for variant in _nilpotent_variants(s.kind):
            for p in range(1, d):
                for m in basis_masks(d, p):
                    a = Form(d, p, {m: 1})
                    sq = star_oracle(star_oracle(a, s, variant), s, variant)
                    res.record(sq.is_zero(), lambda: f"{variant.value} d={d}: **({_fmt(a)}) = {_fmt(sq)}")
        if s.kind is Kind.MINKOWSKI:
            for a in all_basis_forms(d):
                v = StarVariant.MINKOWSKI_METRIC
                sq = star_oracle(star_oracle(a, s, v), s, v)
                want = a.scale(minkowski_square_sign(a.degree, d))
                res.record(sq == want, lambda: f"minkowski d={d}: **({_fmt(a)}) = {_fmt(sq)}, expected {_fmt(want)}")
    return res


def suite_kernels(cfg: VerifyConfig) -> SuiteResult:
    """Galilean-h kills e^0 ^ s unless deg s = n; Carrollian-h kills spatial r
    unless deg r = 0."""
    res = SuiteResult("kernels")
    for s in _structures(cfg):
        d, n = s.dim, s.n
        if s.kind is Kind.GALILEAN:
            v = StarVariant.GALILEAN_H
            for q in range(n):
                for m in basis_masks(d, q):
                    if m & 1:
                        continue
                    a = wedge(e0(d), Form(d, q, {m: 1}))
                    img = star_oracle(a, s, v)
                    res.record(img.is_zero(), lambda: f"galilean-h d={d}: *({_fmt(a)}) = {_fmt(img)}")
        elif s.kind is Kind.CARROLLIAN:
            v = StarVariant.CARROLLIAN_H
            for q in range(1, n + 1):
                for m in basis_masks(d, q):
                    if m & 1:
                        continue
                    a = Form(d, q, {m: 1})
                    img = star_oracle(a, s, v)
                    res.record(img.is_zero(), lambda: f"carrollian-h d={d}: *({_fmt(a)}) = {_fmt(img)}")
    return res


def suite_coincidence(cfg: VerifyConfig) -> SuiteResult:
    """k- and h-based stars agree at p = n (Galilean) and p = 1 (Carrollian)."""
    res = SuiteResult("coincidence")
    pairs = {
        Kind.GALILEAN: (StarVariant.GALILEAN_K, StarVariant.GALILEAN_H, lambda n: n),
        Kind.CARROLLIAN: (StarVariant.CARROLLIAN_K, StarVariant.CARROLLIAN_H, lambda n: 1),
    }
    for s in _structures(cfg):
        if s.kind not in pairs:
            continue
        vk, vh, deg = pairs[s.kind]
        p = deg(s.n)
        for m in basis_masks(s.dim, p):
            a = Form(s.dim, p, {m: 1})
            k_img, h_img = star_oracle(a, s, vk), star_oracle(a, s, vh)
            res.record(k_img == h_img, lambda: f"d={s.dim} p={p}: *_k({_fmt(a)})={_fmt(k_img)}, *_h={_fmt(h_img)}")
    return res


@dataclass(frozen=True)
class ExceptionalSign:
    kind: Kind
    dim: int
    route: str
    up_down: Fraction  # *(*1) / 1
    down_up: Fraction  # *(*vol) / vol

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "route": self.route,
            "on_scalars": str(self.up_down),
            "on_top_forms": str(self.down_up),
        }


_EXCEPTIONAL = {
    # (star on 0-forms, star on d-forms)
    Kind.GALILEAN: (StarVariant.GALILEAN_H, StarVariant.GALILEAN_K),
    Kind.CARROLLIAN: (StarVariant.CARROLLIAN_K, StarVariant.CARROLLIAN_H),
}


def exceptional_signs(max_dim: int, route: str = "oracle", structure: SpacetimeStructure | None = None) -> list[ExceptionalSign]:
    """Composite of the degree-0 and degree-d stars, in both orders.

    ``route`` is ``oracle``, ``closed`` or ``convention`` (the latter uses the
    default kind star whose Galilean top-degree sign is (-1)^n). A given
    ``structure`` replaces the canonical ones.
    """
    if structure is not None:
        cases = [structure] if structure.kind in _EXCEPTIONAL else []
    else:
        cases = [make(kind, d - 1) for d in range(2, max_dim + 1) for kind in _EXCEPTIONAL]
    out = []
    for s in cases:
        d, kind = s.dim, s.kind
        v0, vd = _EXCEPTIONAL[kind]
        one, vol = Form.scalar(d, 1), volume(d)
        if route == "convention":
            up = star_convention(star_convention(one, kind), kind)
            down = star_convention(star_convention(vol, kind), kind)
        else:
            star = star_oracle if route == "oracle" else star_closed
            up = star(star(one, s, v0), s, vd)
            down = star(star(vol, s, vd), s, v0)
        out.append(ExceptionalSign(kind, d, route, _ratio(up, one), _ratio(down, vol)))
    return out


def _ratio(a: Form, b: Form) -> Fraction:
    """c with a == c b, or 0 when a is not a multiple of the single-term b."""
    (mask, coef), = b.terms.items()
    c = a.terms.get(mask, Fraction(0)) / coef
    return c if a == b.scale(c) else Fraction(0)


def suite_exceptional(cfg: VerifyConfig) -> SuiteResult:
    """Exceptional composites are +-identity (a nonzero multiple of it for
    rescaled structures), the same both ways, and the same on both routes."""
    res = SuiteResult("exceptional")
    oracle = exceptional_signs(cfg.max_dim, "oracle", cfg.structure)
    if cfg.structure is not None and not cfg.structure.in_adapted_block_form():
        closed = oracle
        res.notes.append("structure off the adapted frame: closed route skipped")
    else:
        closed = exceptional_signs(cfg.max_dim, "closed", cfg.structure)
    for o, c in zip(oracle, closed):
        unit = o.up_down in (1, -1) if cfg.structure is None or cfg.structure.canonical else o.up_down != 0
        ok = unit and o.up_down == o.down_up and (o.up_down, o.down_up) == (c.up_down, c.down_up)
        res.record(ok, lambda: f"{o.kind.value} d={o.dim}: oracle {o.to_json()} closed {c.to_json()}")
        res.notes.append(f"{o.kind.value} d={o.dim}: factor {o.up_down}")
    return res


def suite_naturality(cfg: VerifyConfig) -> SuiteResult:
    """Invariance under matching boosts/rotations at d = 4 and general
    naturality under random invertible frame changes for d <= 4."""
    res = SuiteResult("naturality")
    rng = random.Random(cfg.seed)
    top = min(cfg.max_dim, 4)
    if cfg.structure is not None:
        s = cfg.structure
        variants = variants_for(s.kind, s.dim)
        for _ in range(cfg.naturality_samples):
            change = random_invertible(rng, s.dim)
            _natural_cases(res, s, variants, change)
        if s.kind is not Kind.MINKOWSKI:
            for _ in range(cfg.invariance_samples):
                change = random_adapted_change(rng, s.kind, s.n)
                if structure_fixed(s, change):
                    _invariant_cases(res, s, variants, change)
        return res
    if top == 4:
        for kind in (Kind.GALILEAN, Kind.CARROLLIAN):
            s = make(kind, 3)
            for _ in range(cfg.invariance_samples):
                change = random_adapted_change(rng, kind, 3)
                res.record(
                    structure_fixed(s, change) and change.det() == 1,
                    lambda: f"{kind.value}: adapted change {change.matrix} does not fix the structure",
                )
                _invariant_cases(res, s, variants_for(kind, 4), change)
    for i in range(cfg.naturality_samples):
        d = 2 + i % (top - 1) if top >= 2 else 2
        change = random_invertible(rng, d)
        for kind in Kind:
            s = make(kind, d - 1)
            _natural_cases(res, s, variants_for(kind, d), change)
    return res


def _invariant_cases(res, s, variants, change) -> None:
    for v in variants:
        for a in all_basis_forms(s.dim):
            res.record(
                check_invariance(a, s, v, change, star=star_closed),
                lambda: f"{v.value}: invariance fails for {_fmt(a)} under {change.matrix}",
            )


def _natural_cases(res, s, variants, change) -> None:
    for v in variants:
        if v.is_table:
            continue
        for a in all_basis_forms(s.dim):
            res.record(
                check_naturality(a, s, v, change),
                lambda: f"{v.value} d={s.dim}: naturality fails for {_fmt(a)} under {change.matrix}",
            )


_RUNNERS = {
    "oracle": suite_oracle,
    "nilpotency": suite_nilpotency,
    "kernels": suite_kernels,
    "coincidence": suite_coincidence,
    "exceptional": suite_exceptional,
    "naturality": suite_naturality,
}


def run_suite(name: str, cfg: VerifyConfig) -> list[SuiteResult]:
    if name == "all":
        return [_RUNNERS[s](cfg) for s in SUITES]
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    return [_RUNNERS[name](cfg)]
