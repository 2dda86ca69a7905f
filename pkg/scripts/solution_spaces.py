"""Count polynomial solutions of the source-free field equations per kind.

For each total degree k the script reports the dimension of the exact
solution space and how many basis solutions have div E != 0. Only the
Galilei equations admit the latter, since they carry no Gauss law.
Optionally it also boosts random solutions and checks they stay solutions.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from hodgestar.electro import boost_map, extract_equations, transform_fields, vector_calculus
from hodgestar.solutions import random_solution, solution_basis
from hodgestar.structures import Kind


@dataclass(frozen=True)
class Config:
    max_degree: int = 2
    boosts: int = 0
    seed: int = 0


def survey(kind: Kind, degree: int) -> tuple[int, int]:
    basis = solution_basis(kind, degree)
    charged = sum(bool(vector_calculus(E, B).div_E) for E, B in basis)
    return len(basis), charged


def boost_check(kind: Kind, cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(cfg.boosts):
        E, B = random_solution(rng, kind, cfg.max_degree)
        v = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
        E2, B2 = transform_fields(E, B, boost_map(v, kind))
        bad += not extract_equations(E2, B2, kind).satisfied
    return bad


def main(cfg: Config) -> None:
    print(f"{'kind':<12}{'degree':>7}{'solutions':>11}{'div E != 0':>12}")
    for kind in Kind:
        for k in range(cfg.max_degree + 1):
            n, charged = survey(kind, k)
            print(f"{kind.value:<12}{k:>7}{n:>11}{charged:>12}")
    if cfg.boosts:
        for kind in (Kind.GALILEAN, Kind.CARROLLIAN):
            print(f"{kind.value}: {boost_check(kind, cfg)} of {cfg.boosts} boosted solutions fail")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--boosts", type=int, default=Config.boosts)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    main(Config(args.max_degree, args.boosts, args.seed))
