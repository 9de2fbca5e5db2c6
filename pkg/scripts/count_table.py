"""Count irreducible homogeneous zonotopes per dimension, merging coinciding types."""

import argparse
import time
from dataclasses import dataclass

from zonoclass.classify import homogeneous_census


@dataclass
class TableConfig:
    min_dim: int = 3
    max_dim: int = 8


def run(cfg):
    start = time.perf_counter()
    census = homogeneous_census(range(cfg.min_dim, cfg.max_dim + 1))
    print(f"{'d':>3}  {'count':>5}  types")
    for d, groups in census.items():
        print(f"{d:>3}  {len(groups):>5}  " + ", ".join(" = ".join(g) for g in groups))
    print(f"({time.perf_counter() - start:.1f}s)")
    return census


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--min-dim", type=int, default=TableConfig.min_dim)
    p.add_argument("--max-dim", type=int, default=TableConfig.max_dim)
    a = p.parse_args()
    run(TableConfig(a.min_dim, a.max_dim))
