"""Tabulate the exceptional-degree composites (*_0 then *_d, and back) by dimension.

Three routes are compared: the mixed-epsilon oracle, the closed formulas and
the table convention. The Lorentzian **1 is printed alongside for reference.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from hodgestar.checks import exceptional_signs, minkowski_square_sign
from hodgestar.structures import Kind

ROUTES = ("oracle", "closed", "convention")


@dataclass(frozen=True)
class Config:
    max_dim: int = 8
    as_json: bool = False


def collect(cfg: Config) -> list[dict]:
    rows = []
    for route in ROUTES:
        for s in exceptional_signs(cfg.max_dim, route):
            row = s.to_json()
            row["lorentzian"] = minkowski_square_sign(0, s.dim)
            rows.append(row)
    return rows


def main(cfg: Config) -> None:
    rows = collect(cfg)
    if cfg.as_json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'route':<11}{'kind':<12}{'d':>3}{'**1':>6}{'**vol':>7}{'lorentz':>9}")
    for r in rows:
        print(f"{r['route']:<11}{r['kind']:<12}{r['dim']:>3}{r['on_scalars']:>6}{r['on_top_forms']:>7}{r['lorentzian']:>9}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dim", type=int, default=Config.max_dim)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    main(Config(args.max_dim, args.json))
