"""Project a root-system zonotope along one of its generators and classify the shadow.

For A4 the result is inscribed but not vertex-transitive.  Optionally writes
the projected generators (JSON) and, in 3-D, an OBJ mesh.
"""

import argparse
from dataclasses import dataclass
from typing import Optional

from zonoclass import Zonotope, catalog, classify, export_mesh, project_along
from zonoclass.documents import save_document


@dataclass
class ProjectionConfig:
    label: str = "A:4"
    generator: int = 0
    json_out: Optional[str] = None
    obj_out: Optional[str] = None


def run(cfg):
    Z = Zonotope(catalog(cfg.label))
    r = Z.gens.vectors[cfg.generator]
    P = project_along(Z, r)
    v = classify(P.gens)
    print(f"{cfg.label} projected along generator {cfg.generator}: dim {P.dim}, {len(P.gens) // 2} generator pairs")
    print(f"  inscribed: {v.inscribed['value']} (radius {v.inscribed['radius']:.6f}, spread {v.inscribed['spread']:.1e})")
    print(f"  vertex-transitive: {v.vertex_transitive}  witness: {v.vt_witness}")
    print(f"  root system: {v.root_system.is_root_system}  violating pair: {v.root_system.violating_pair}")
    if cfg.json_out:
        save_document(P.gens, cfg.json_out, {"projected_from": cfg.label})
    if cfg.obj_out and P.dim == 3:
        nv, nf = export_mesh(P, cfg.obj_out)
        print(f"  mesh: {nv} vertices, {nf} faces -> {cfg.obj_out}")
    return v


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--label", default=ProjectionConfig.label)
    p.add_argument("--generator", type=int, default=ProjectionConfig.generator)
    p.add_argument("--json-out")
    p.add_argument("--obj-out")
    a = p.parse_args()
    run(ProjectionConfig(a.label, a.generator, a.json_out, a.obj_out))
