"""Print the 1+3 Hodge star tables for all three spacetimes."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from hodgestar.tables import table_rows, table_text

KINDS = ("minkowski", "galilei", "carroll")


@dataclass(frozen=True)
class Config:
    kinds: tuple[str, ...] = KINDS
    as_json: bool = False


def main(cfg: Config) -> None:
    if cfg.as_json:
        doc = {k: [{"degree": r.degree, "line": r.line()} for r in table_rows(k)] for k in cfg.kinds}
        print(json.dumps(doc, indent=2))
        return
    print("\n".join(table_text(k) for k in cfg.kinds), end="")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("kinds", nargs="*", help=f"any of {', '.join(KINDS)} (default: all)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    if unknown := set(args.kinds) - set(KINDS):
        ap.error(f"unknown kind(s): {', '.join(sorted(unknown))}")
    main(Config(tuple(args.kinds) or KINDS, args.json))
