"""Deterministic upper-half-plane sampling grids and finite-section counting.

Negative-squares counts are suprema over finite sections of a kernel.  The
helpers here fix one reproducible scheme: a default grid of points on two
horizontal lines, exhaustive enumeration of small index subsets, and a seeded
handful of larger subsets (the full section always included).  Eigenvalues
within ``eig_tol * scale`` of zero count as zero, never negative, so sampled
counts are honest lower bounds.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridConfig:
    """Sampling-grid and section-enumeration settings."""

    im_levels: tuple = (0.3, 1.1)
    points_per_level: int = 6
    re_margin: float = 1.0
    subset_max: int = 6
    random_subsets: int = 8
    seed: int = 20260809
    eig_tol: float = 1e-9
    agreement_tol: float = 1e-8

    @property
    def total_points(self) -> int:
        return self.points_per_level * len(self.im_levels)


DEFAULT_GRID = GridConfig()


def upper_half_grid(span, config: GridConfig = DEFAULT_GRID, avoid=()) -> list:
    """Points on horizontal lines over [span[0]-margin, span[1]+margin].

    ``avoid`` lists complex points (poles) that grid points are nudged away
    from deterministically.
    """
    lo = float(span[0]) - config.re_margin
    hi = float(span[1]) + config.re_margin
    if hi <= lo:
        hi = lo + 2.0 * config.re_margin
    xs = np.linspace(lo, hi, config.points_per_level)
    points = []
    for t in config.im_levels:
        for x in xs:
            z = complex(x, t)
            while avoid and min(abs(z - p) for p in avoid) < 1e-6:
                z += 0.017
            points.append(z)
    return points


def span_of(values, fallback=(-1.0, 1.0)):
    vals = [float(v) for v in values]
    if not vals:
        return fallback
    return (min(vals), max(vals))


def enumerate_sections(m: int, config: GridConfig = DEFAULT_GRID) -> list:
    """Index subsets: all of size <= subset_max, seeded larger ones, full set."""
    sections = []
    for size in range(1, min(config.subset_max, m) + 1):
        sections.extend(itertools.combinations(range(m), size))
    rng = random.Random(config.seed)
    for size in range(config.subset_max + 1, m):
        for _ in range(max(1, config.random_subsets // 2)):
            sections.append(tuple(sorted(rng.sample(range(m), size))))
    if m > config.subset_max:
        sections.append(tuple(range(m)))
    return sections


def negative_count(matrix: np.ndarray, eig_tol: float) -> int:
    eigs = np.linalg.eigvalsh(matrix)
    scale = max(1.0, float(np.abs(eigs).max(initial=0.0)))
    return int(np.sum(eigs < -eig_tol * scale))


def max_negative_count(
    full: np.ndarray,
    config: GridConfig = DEFAULT_GRID,
    block: int = 1,
    fixed: int = 0,
) -> int:
    """Max negative-eigenvalue count over sections of a sampled kernel.

    ``full`` is the complete sampled Hermitian matrix.  Its leading ``fixed``
    rows/columns belong to every section; the remainder consists of
    ``block``-sized groups, one per sample point, selected by subsets.
    """
    m = (full.shape[0] - fixed) // block
    best = 0
    for subset in enumerate_sections(m, config):
        idx = list(range(fixed)) + [
            fixed + p * block + r for p in subset for r in range(block)
        ]
        best = max(best, negative_count(full[np.ix_(idx, idx)], config.eig_tol))
    return best
