"""Compare vertex counts (chamber enumeration) with Weyl group orders (reflection closure)."""

import argparse
import time
from dataclasses import dataclass, field

from zonoclass import Zonotope, catalog, vertices, weyl_closure


@dataclass
class OrdersConfig:
    labels: list = field(default_factory=lambda: ["A:3", "B:3", "H:3", "A:4", "D:4", "B:4", "F:4", "H:4", "E:6"])


def run(cfg):
    rows = []
    for label in cfg.labels:
        R = catalog(label)
        t0 = time.perf_counter()
        nv = len(vertices(Zonotope(R)))
        t1 = time.perf_counter()
        G = weyl_closure(R)
        t2 = time.perf_counter()
        rows.append((label, nv, G.order, t1 - t0, t2 - t1))
        print(f"{label:>5}  vertices {nv:>6} ({t1 - t0:5.1f}s)  group {G.order:>6} ({t2 - t1:5.1f}s)"
              f"  {'ok' if nv == G.order and not G.truncated else 'MISMATCH'}")
    return rows


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("labels", nargs="*", default=OrdersConfig().labels)
    run(OrdersConfig(p.parse_args().labels))
