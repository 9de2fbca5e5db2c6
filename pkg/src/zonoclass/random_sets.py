"""Seeded random generator sets for falsification runs."""

import os

import numpy as np
from scipy.stats import special_ortho_group

from .vectorset import canonicalize

SEED_ENV = "ZONOCLASS_SEED"


def default_seed(fallback=0):
    return int(os.environ.get(SEED_ENV, fallback))


def rng_from_env(fallback=0):
    return np.random.default_rng(default_seed(fallback))


def random_reduced_set(rng, d, n_pairs, unit=False, tol=None):
    """``n_pairs`` random directions in R^d, symmetrized and canonicalized."""
    dirs = rng.normal(size=(n_pairs, d))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    lengths = np.ones(n_pairs) if unit else rng.uniform(0.5, 2.0, size=n_pairs)
    return canonicalize(dirs * lengths[:, None], tol)


def random_rotation(rng, d):
    if d == 1:
        return np.array([[1.0]])
    return special_ortho_group.rvs(d, random_state=rng)
