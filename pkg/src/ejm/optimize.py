"""Parameter sweeps of the trilocal score and a derivative-free maximizer."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import minimize

from .bases import INV_SQRT3, EjmParams
from .network import trilocal_score

PARAM_NAMES = ("z", "phi", "theta", "gamma")
DOMAIN: dict[str, tuple[float, float]] = {
    "z": (INV_SQRT3, 1.0),
    "phi": (-math.pi, math.pi),
    "theta": (0.0, math.pi / 2),
    "gamma": (0.0, math.pi / 2),
}
_DOMAIN_ATOL = 1e-12


def worker_count() -> int:
    """Worker cap from the EJM_THREADS environment variable (default 1)."""
    raw = os.environ.get("EJM_THREADS")
    if raw is None:
        return 1
    try:
        count = int(raw)
    except ValueError:
        count = 0
    if count < 1:
        raise ValueError(f"EJM_THREADS={raw!r} must be a positive integer")
    return count


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional scan: vary one parameter, hold the other three."""

    varying: str
    lo: float
    hi: float
    points: int
    fixed: Mapping[str, float]

    def __post_init__(self) -> None:
        if self.varying not in PARAM_NAMES:
            raise ValueError(f"varying={self.varying!r} must be one of {PARAM_NAMES}")
        lo, hi = DOMAIN[self.varying]
        if not (lo - _DOMAIN_ATOL <= self.lo < self.hi <= hi + _DOMAIN_ATOL):
            raise ValueError(
                f"range [{self.lo!r}, {self.hi!r}] invalid for {self.varying} "
                f"(domain [{lo:.12g}, {hi:.12g}], lo < hi required)"
            )
        if self.points < 2:
            raise ValueError(f"points={self.points!r} must be at least 2")
        expected = set(PARAM_NAMES) - {self.varying}
        if set(self.fixed) != expected:
            raise ValueError(f"fixed must supply exactly {sorted(expected)}")
        object.__setattr__(self, "fixed", dict(self.fixed))


def sweep(spec: SweepSpec, *, workers: int | None = None) -> list[tuple[float, float]]:
    """Evaluate the trilocal score on an inclusive equally spaced grid.

    Returns (value, S) pairs in grid order; deterministic for a given spec
    regardless of the worker count.
    """
    values = np.linspace(spec.lo, spec.hi, spec.points)

    def evaluate(value: float) -> float:
        kwargs = dict(spec.fixed)
        kwargs[spec.varying] = float(value)
        return trilocal_score(EjmParams(**kwargs)).S

    if workers is None:
        workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(evaluate, values))
    else:
        scores = [evaluate(v) for v in values]
    return [(float(v), float(s)) for v, s in zip(values, scores)]


@dataclass(frozen=True)
class OptimumResult:
    """Best parameter point found, its score, and the evaluation history."""

    params: EjmParams
    S: float
    trace: tuple[tuple[EjmParams, float], ...] = field(repr=False)
    warning: bool = False


class _BudgetExhausted(Exception):
    pass


def _resolve_bounds(bounds: Mapping[str, tuple[float, float]] | None) -> dict[str, tuple[float, float]]:
    resolved = dict(DOMAIN)
    for name, (lo, hi) in (bounds or {}).items():
        if name not in PARAM_NAMES:
            raise ValueError(f"unknown parameter {name!r}")
        dlo, dhi = DOMAIN[name]
        if not (dlo - _DOMAIN_ATOL <= lo <= hi <= dhi + _DOMAIN_ATOL):
            raise ValueError(
                f"bounds ({lo!r}, {hi!r}) invalid for {name} (domain [{dlo:.12g}, {dhi:.12g}])"
            )
        resolved[name] = (float(lo), float(hi))
    return resolved


def maximize(
    bounds: Mapping[str, tuple[float, float]] | None = None,
    budget: int = 20000,
    *,
    grid_points: int = 9,
    starts: int = 5,
    seed: int = 0,
) -> OptimumResult:
    """Maximize the trilocal score over a box in (z, phi, theta, gamma).

    A coarse grid (grid_points per free dimension) seeds Nelder-Mead
    refinements from the best ``starts`` distinct cells.  The search is
    deterministic; ``seed`` is reserved for optional restart jitter and
    does not affect the default pipeline.  If the budget runs out before
    any refinement the best grid point is returned with warning=True.
    """
    if budget < 100:
        raise ValueError(f"budget={budget!r} must be at least 100")
    box = _resolve_bounds(bounds)
    lows = np.array([box[name][0] for name in PARAM_NAMES])
    highs = np.array([box[name][1] for name in PARAM_NAMES])
    free = [idx for idx in range(4) if highs[idx] > lows[idx]]

    trace: list[tuple[EjmParams, float]] = []

    def evaluate(x: np.ndarray) -> float:
        if len(trace) >= budget:
            raise _BudgetExhausted
        clipped = np.clip(x, lows, highs)
        params = EjmParams(*(float(c) for c in clipped))
        score = trilocal_score(params).S
        trace.append((params, score))
        return score

    def best_so_far() -> tuple[EjmParams, float]:
        best_params, best_score = trace[0]
        for params, score in trace[1:]:
            if score > best_score:
                best_params, best_score = params, score
        return best_params, best_score

    axes = [
        np.linspace(lows[idx], highs[idx], grid_points) if idx in free else np.array([lows[idx]])
        for idx in range(4)
    ]
    grid_cells = []
    grid_done = True
    for cell in product(*axes):
        x = np.array(cell)
        try:
            grid_cells.append((evaluate(x), x))
        except _BudgetExhausted:
            grid_done = False
            break

    if not free or not grid_done or len(trace) >= budget:
        best_params, best_score = best_so_far()
        return OptimumResult(best_params, best_score, tuple(trace), warning=not grid_done)

    ranked = sorted(range(len(grid_cells)), key=lambda idx: -grid_cells[idx][0])
    seeds: list[np.ndarray] = []
    for idx in ranked:
        x = grid_cells[idx][1]
        if not any(np.array_equal(x, s) for s in seeds):
            seeds.append(x)
        if len(seeds) == starts:
            break

    sub_bounds = [(lows[idx], highs[idx]) for idx in free]
    for start in seeds:
        remaining = budget - len(trace)
        if remaining <= 0:
            break

        def negated(xfree: np.ndarray) -> float:
            x = start.copy()
            x[free] = xfree
            return -evaluate(x)

        try:
            minimize(
                negated,
                start[free],
                method="Nelder-Mead",
                bounds=sub_bounds,
                options={"maxfev": remaining, "xatol": 1e-8, "fatol": 1e-10},
            )
        except _BudgetExhausted:
            break

    best_params, best_score = best_so_far()
    return OptimumResult(best_params, best_score, tuple(trace), warning=False)
