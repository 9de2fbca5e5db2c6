"""Search random generator sets for a disagreement between the equivalent characterizations.

Seeded by ZONOCLASS_SEED (default 0).  Any disagreement would signal a
tolerance fault; the run prints counts and exits nonzero if one is found.
"""

import argparse
import sys
from dataclasses import dataclass

from zonoclass import check_two_face_criterion, is_root_system, is_vertex_transitive, semi_star_norm_criterion
from zonoclass.random_sets import random_reduced_set, rng_from_env


@dataclass
class FalsifyConfig:
    trials: int = 200
    max_pairs: int = 7


def run(cfg):
    rng = rng_from_env()
    bad = 0
    positives = 0
    for _ in range(cfg.trials):
        d = int(rng.integers(2, 4))
        R = random_reduced_set(rng, d, int(rng.integers(1, cfg.max_pairs + 1)), unit=True)
        rs = bool(is_root_system(R))
        answers = (bool(is_vertex_transitive(R)), rs, check_two_face_criterion(R, cross_check=False),
                   semi_star_norm_criterion(R, cross_check=False))
        positives += rs
        if len(set(answers)) != 1:
            bad += 1
            print("disagreement:", answers, R.representatives.tolist())
    print(f"{cfg.trials} trials, {positives} root systems, {bad} disagreements")
    return bad


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=FalsifyConfig.trials)
    p.add_argument("--max-pairs", type=int, default=FalsifyConfig.max_pairs)
    a = p.parse_args()
    sys.exit(1 if run(FalsifyConfig(a.trials, a.max_pairs)) else 0)
