"""Cone membership by nonnegative least squares."""

import numpy as np
from scipy.optimize import nnls


def in_cone(v, generators, eps=1e-9):
    """Whether ``v`` is a nonnegative combination of the rows of ``generators``."""
    v = np.asarray(v, dtype=float)
    generators = np.atleast_2d(np.asarray(generators, dtype=float))
    if len(generators) == 0 or generators.size == 0:
        return bool(np.linalg.norm(v) <= eps)
    _, resid = nnls(generators.T, v)
    return bool(resid <= eps * max(1.0, np.linalg.norm(v)) * 10)

