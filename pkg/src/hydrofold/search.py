"""Ranking of scored folds and minimum-energy conformational search."""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from hydrofold import kernels
from hydrofold.energy import VARIANT_CODES, ConventionError, EnergyReport
from hydrofold.fold import STEP_VECTORS, StepVector, parse_direction_string, to_direction_string
from hydrofold.seq import BinaryProfile

DEFAULT_GUARD = 16
EXHAUSTIVE = "exhaustive"
ANNEAL = "anneal"


class GuardError(RuntimeError):
    """Refusal to run an enumeration beyond its size guard."""


@dataclass(frozen=True)
class Ranking:
    entries: tuple[tuple[int, float], ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.entries]


@dataclass(frozen=True)
class SearchResult:
    best_steps: StepVector
    best_energy: float
    visited: int
    method: str
    seed: int | None = None

    @property
    def direction_string(self) -> str:
        return to_direction_string(self.best_steps)

    def to_dict(self) -> dict:
        return {
            "direction_string": self.direction_string,
            "energy": self.best_energy,
            "visited": self.visited,
            "method": self.method,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SearchResult":
        return cls(
            parse_direction_string(data["direction_string"]),
            float(data["energy"]),
            int(data["visited"]),
            data["method"],
            data.get("seed"),
        )


@dataclass(frozen=True)
class Schedule:
    initial_temp: float = 2.0
    cooling_factor: float = 0.995
    steps: int = 5000

    def __post_init__(self):
        if not (self.initial_temp > 0 and math.isfinite(self.initial_temp)):
            raise ValueError("initial_temp must be positive")
        if not 0 < self.cooling_factor < 1:
            raise ValueError("cooling_factor must be in (0, 1)")
        if self.steps < 1:
            raise ValueError("steps must be positive")


def rank_folds(report: EnergyReport, k: int | None = None) -> Ranking:
    """The ``k`` lowest-energy folds, ascending; ties keep the lower fold index."""
    n = len(report.per_fold)
    if n == 0:
        raise ValueError("empty report")
    k = n if k is None else k
    if k < 1 or k > n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    ordered = sorted(report.per_fold, key=lambda f: (f.energy, f.fold_index))
    return Ranking(tuple((f.fold_index, f.energy) for f in ordered[:k]))


def _variant_code(variant: str) -> int:
    try:
        return VARIANT_CODES[variant]
    except KeyError:
        raise ConventionError(f"unknown energy variant {variant!r}") from None


def reduced_prefixes(depth: int) -> list[tuple[int, ...]]:
    """Symmetry-reduced self-avoiding step prefixes of length ``depth``, in DFS order."""
    out = []

    def grow(prefix, x, y, occupied, straight):
        if len(prefix) == depth:
            out.append(tuple(prefix))
            return
        for c in (3, 2, 0, 1):
            if not prefix and c != 0:
                continue
            if straight and c not in (0, 1):
                continue
            nx, ny = x + STEP_VECTORS[c][0], y + STEP_VECTORS[c][1]
            if (nx, ny) in occupied:
                continue
            grow(prefix + [c], nx, ny, occupied | {(nx, ny)}, straight and c == 0)

    grow([], 0, 0, frozenset({(0, 0)}), True)
    return out


def _enumerate_task(args):
    bits, code, prefix = args
    return kernels.enumerate_from(bits, code, prefix)


def enumerate_saw(
    profile: BinaryProfile,
    variant: str,
    max_steps_guard: int = DEFAULT_GUARD,
    workers: int = 1,
) -> SearchResult:
    """Global minimum over all self-avoiding walks, up to lattice symmetry.

    The first step is fixed to +x and the first turn to +y. Among equal
    energies the lexicographically smallest direction string is returned.
    With ``workers > 1`` the tree is split by prefix; the answer does not
    depend on the worker count.
    """
    n_steps = len(profile) - 1
    if n_steps < 1:
        raise ValueError("profile needs at least 2 residues")
    if n_steps > max_steps_guard:
        raise GuardError(f"{n_steps} steps exceeds the enumeration guard of {max_steps_guard}")
    code = _variant_code(variant)
    bits = np.asarray(profile.bits, dtype=np.uint8)
    if workers <= 1:
        energy, codes, visited = kernels.enumerate_from(bits, code, ())
    else:
        depth = min(n_steps, 6)
        jobs = [(bits, code, p) for p in reduced_prefixes(depth)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_enumerate_task, jobs))
        visited = sum(p[2] for p in parts)
        # jobs are in DFS order, so the first strict minimum is also the lexicographic winner
        energy, codes = math.inf, None
        for e, c, _ in parts:
            if c is not None and e < energy:
                energy, codes = e, c
    return SearchResult(StepVector(codes), float(energy), int(visited), EXHAUSTIVE, None)


def _walk_arrays(codes):
    n = len(codes) + 1
    xs = np.zeros(n, dtype=np.int64)
    ys = np.zeros(n, dtype=np.int64)
    x = y = 0
    seen = {(0, 0)}
    for k, c in enumerate(codes, 1):
        x += STEP_VECTORS[c][0]
        y += STEP_VECTORS[c][1]
        if (x, y) in seen:
            return None
        seen.add((x, y))
        xs[k] = x
        ys[k] = y
    return xs, ys


def anneal(
    profile: BinaryProfile,
    variant: str,
    schedule: Schedule = Schedule(),
    seed: int = 0,
    trace: Callable[[float], None] | None = None,
) -> SearchResult:
    """Simulated annealing over self-avoiding walks with suffix-rotation moves.

    A move picks a pivot and multiplies every later step by i, -1 or -i.
    Self-intersecting proposals are rejected before scoring; the rest pass a
    Metropolis test. ``trace`` receives the energy of every scored state.
    """
    n_steps = len(profile) - 1
    if n_steps < 1:
        raise ValueError("profile needs at least 2 residues")
    code = _variant_code(variant)
    bits = np.asarray(profile.bits, dtype=np.uint8)
    rng = random.Random(seed)

    current = [0] * n_steps
    xs, ys = _walk_arrays(current)
    current_e = kernels.energy(xs, ys, bits, code)
    best_e, best = current_e, list(current)
    visited = 1
    if trace:
        trace(current_e)

    temp = schedule.initial_temp
    for _ in range(schedule.steps):
        pivot = rng.randrange(n_steps)
        turn = rng.randrange(1, 4)
        proposal = current[:pivot] + [(c + turn) % 4 for c in current[pivot:]]
        arrays = _walk_arrays(proposal)
        if arrays is not None:
            e = kernels.energy(arrays[0], arrays[1], bits, code)
            visited += 1
            if trace:
                trace(e)
            if e < best_e:
                best_e, best = e, list(proposal)
            delta = e - current_e
            if delta <= 0 or rng.random() < math.exp(-delta / temp):
                current, current_e = proposal, e
        temp *= schedule.cooling_factor
    return SearchResult(StepVector(tuple(best)), float(best_e), visited, ANNEAL, seed)

