"""Step algebra over the fourth roots of unity, fold families and lattice embedding.

A step is stored as its exponent ``c`` in ``i**c``: 0 is +x, 1 is +y, 2 is -x,
3 is -y. Multiplying steps is then addition mod 4, which keeps every entry on
the unit circle exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FROM_K1 = "from_k1"
STRAIGHT_PLUS_FROM_K2 = "straight_plus_from_k2"
GENERATION_MODES = (FROM_K1, STRAIGHT_PLUS_FROM_K2)

PREPEND_ORIGIN = "prepend_origin"
NO_PREPEND = "no_prepend"
ORIGIN_POLICIES = (PREPEND_ORIGIN, NO_PREPEND)

STEP_VECTORS = ((1, 0), (0, 1), (-1, 0), (0, -1))
STEP_COMPLEX = (1 + 0j, 1j, -1 + 0j, -1j)
_LETTERS = "RULD"
_CODES = {letter: code for code, letter in enumerate(_LETTERS)}

# multiplier exponents: i -> 1, -1 -> 2
_TIMES_I = 1
_TIMES_MINUS_ONE = 2


class FoldError(ValueError):
    pass


@dataclass(frozen=True)
class StepVector:
    codes: tuple[int, ...]

    def __post_init__(self):
        codes = tuple(int(c) for c in self.codes)
        if not codes:
            raise FoldError("a step vector needs at least one step")
        if any(c not in (0, 1, 2, 3) for c in codes):
            raise FoldError("step codes must be in 0..3")
        object.__setattr__(self, "codes", codes)

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)

    def as_complex(self) -> np.ndarray:
        return np.array([STEP_COMPLEX[c] for c in self.codes], dtype=complex)

    @classmethod
    def from_complex(cls, values: Iterable[complex]) -> "StepVector":
        codes = []
        for v in values:
            v = complex(v)
            for code, ref in enumerate(STEP_COMPLEX):
                if abs(v - ref) < 1e-9:
                    codes.append(code)
                    break
            else:
                raise FoldError(f"{v} is not a fourth root of unity")
        return cls(tuple(codes))

    def rotated(self, quarter_turns: int, start: int = 0) -> "StepVector":
        """Multiply steps ``start:`` by ``i**quarter_turns``."""
        codes = list(self.codes)
        for k in range(start, len(codes)):
            codes[k] = (codes[k] + quarter_turns) % 4
        return StepVector(tuple(codes))

    def __str__(self):
        return to_direction_string(self)


@dataclass(frozen=True)
class FoldFamily:
    members: tuple[StepVector, ...]
    generation_mode: str

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, idx):
        return self.members[idx]

    def as_matrix(self) -> np.ndarray:
        """Complex matrix with one fold per column."""
        return np.column_stack([m.as_complex() for m in self.members])


@dataclass(frozen=True)
class LatticeEmbedding:
    points: tuple[tuple[int, int], ...]
    origin_policy: str = PREPEND_ORIGIN

    def __len__(self):
        return len(self.points)

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points], dtype=np.int64)

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.points], dtype=np.int64)

    def translated(self, dx: int, dy: int) -> "LatticeEmbedding":
        return LatticeEmbedding(tuple((x + dx, y + dy) for x, y in self.points), self.origin_policy)

    def rotated90(self, times: int = 1) -> "LatticeEmbedding":
        pts = self.points
        for _ in range(times % 4):
            pts = tuple((-y, x) for x, y in pts)
        return LatticeEmbedding(pts, self.origin_policy)


@dataclass(frozen=True)
class SelfIntersectionReport:
    collision_count: int
    first_collision_index: int | None

    @property
    def is_self_avoiding(self) -> bool:
        return self.collision_count == 0


def straight_steps(n_steps: int) -> StepVector:
    if n_steps < 1:
        raise FoldError("n_steps must be >= 1")
    return StepVector((0,) * n_steps)


def family_generate(n_steps: int, mode: str = FROM_K1) -> FoldFamily:
    """Deterministic fold family from repeated entrywise multiplier passes.

    At pass ``k`` the multiplier is ``i`` on the first ``k`` entries and ``-1``
    on the rest. ``from_k1`` runs k = 1..n and keeps every snapshot;
    ``straight_plus_from_k2`` starts the family with the straight fold and runs
    k = 2..n. Both yield ``n_steps`` members.
    """
    if n_steps < 1:
        raise FoldError("n_steps must be >= 1")
    if mode not in GENERATION_MODES:
        raise FoldError(f"unknown generation mode {mode!r}")
    codes = [0] * n_steps
    members = []
    if mode == FROM_K1:
        ks = range(1, n_steps + 1)
    else:
        members.append(StepVector(tuple(codes)))
        ks = range(2, n_steps + 1)
    for k in ks:
        codes = multiplier_pass(codes, k)
        members.append(StepVector(tuple(codes)))
    return FoldFamily(tuple(members), mode)


def multiplier_pass(codes: Sequence[int], k: int) -> list[int]:
    """One pass: entries ``[0, k)`` times i, the rest times -1."""
    return [(c + (_TIMES_I if idx < k else _TIMES_MINUS_ONE)) % 4 for idx, c in enumerate(codes)]


def embed(steps: StepVector, origin_policy: str = PREPEND_ORIGIN) -> LatticeEmbedding:
    if origin_policy not in ORIGIN_POLICIES:
        raise FoldError(f"unknown origin policy {origin_policy!r}")
    x = y = 0
    points = [(0, 0)] if origin_policy == PREPEND_ORIGIN else []
    for c in steps.codes:
        dx, dy = STEP_VECTORS[c]
        x += dx
        y += dy
        points.append((x, y))
    return LatticeEmbedding(tuple(points), origin_policy)


def steps_from_embedding(emb: LatticeEmbedding) -> StepVector:
    """Recover the step vector by differencing consecutive points."""
    pts = list(emb.points)
    if emb.origin_policy == NO_PREPEND:
        pts = [(0, 0)] + pts
    codes = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        try:
            codes.append(STEP_VECTORS.index((x1 - x0, y1 - y0)))
        except ValueError:
            raise FoldError(f"points {(x0, y0)} and {(x1, y1)} are not lattice neighbours") from None
    return StepVector(tuple(codes))


def detect_self_intersections(emb: LatticeEmbedding) -> SelfIntersectionReport:
    """Count repeated lattice sites; ``first_collision_index`` is 1-based."""
    seen = set()
    first = None
    for idx, p in enumerate(emb.points, 1):
        if p in seen and first is None:
            first = idx
        seen.add(p)
    return SelfIntersectionReport(len(emb.points) - len(seen), first)


def is_self_avoiding(steps: StepVector) -> bool:
    return detect_self_intersections(embed(steps)).is_self_avoiding


def to_direction_string(steps: StepVector) -> str:
    return "".join(_LETTERS[c] for c in steps.codes)


def parse_direction_string(text: str) -> StepVector:
    text = text.strip()
    if not text:
        raise FoldError("empty direction string")
    try:
        return StepVector(tuple(_CODES[ch] for ch in text))
    except KeyError as exc:
        raise FoldError(f"illegal direction character {exc.args[0]!r}; use R, U, L, D") from None
