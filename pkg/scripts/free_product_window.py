"""Validate the free-product circular ordering of Z * Z on a word window, exhaustively or by sampling."""
import argparse
import time
from dataclasses import dataclass
from typing import Optional

from circorder.catalog import integer_free_product
from circorder.orders import validate_circular


@dataclass
class Config:
    syllables: int = 2
    exponent: int = 2
    sample: Optional[int] = None
    seed: int = 0


def main(cfg: Config) -> int:
    co = integer_free_product()
    words = co.group.words(cfg.syllables, cfg.exponent)
    start = time.perf_counter()
    rep = validate_circular(co, elements=words, sample=cfg.sample, seed=cfg.seed)
    print(rep.to_json())
    print(f"{len(words)} words, {time.perf_counter() - start:.1f} s")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--syllables", type=int, default=Config.syllables)
    p.add_argument("--exponent", type=int, default=Config.exponent)
    p.add_argument("--sample", type=int, default=None, help="sample this many quadruples instead of all")
    p.add_argument("--seed", type=int, default=Config.seed)
    raise SystemExit(main(Config(**vars(p.parse_args()))))
