"""Show that Q/Z glued to Q/Z along Z/5 (1 -> 1/5, 1 -> 2/5) admits no compatible factor orderings."""
import argparse
import itertools
from dataclasses import dataclass

from circorder.amalgam import check_compatibility
from circorder.catalog import fifths_descriptor


@dataclass
class Config:
    bound: int = 3


def main(cfg: Config) -> int:
    blocked = 0
    for r1, r2 in itertools.product((False, True), repeat=2):
        rep = check_compatibility(fifths_descriptor(r1, r2), cfg.bound)
        names = ["reversed" if r else "standard" for r in (r1, r2)]
        witness = rep.witness if rep.status == "fail" else None
        print(f"{names[0]:>8} / {names[1]:<8}  {rep.status}  witness={witness}")
        blocked += rep.status == "fail"
    print(f"{blocked} of 4 ordering pairs are incompatible")
    return 0 if blocked == 4 else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bound", type=int, default=Config.bound)
    raise SystemExit(main(Config(**vars(p.parse_args()))))
