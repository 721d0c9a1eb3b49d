"""Pure-Python kernels. Summation order matches ``_ckernels.pyx`` exactly so
both backends return bitwise-identical floats."""
from math import sqrt

CONSECUTIVE_H = 0
ALL_PAIRS_H = 1
MASKED_ADJACENT = 2
HP_CONTACT = 3

# step codes: power of i, i.e. 0=+x 1=+y 2=-x 3=-y
DX = (1, 0, -1, 0)
DY = (0, 1, 0, -1)
# D, L, R, U -- alphabetical direction letters, so DFS leaves come out sorted
LEX_ORDER = (3, 2, 0, 1)


def _as_list(values):
    return values.tolist() if hasattr(values, "tolist") else [int(v) for v in values]


def energy(xs, ys, bits, variant):
    xs, ys, bits = _as_list(xs), _as_list(ys), _as_list(bits)
    n = len(bits)
    if len(xs) != n or len(ys) != n:
        raise ValueError("coordinate and bit arrays differ in length")
    total = 0.0
    if variant == CONSECUTIVE_H:
        prev = -1
        for i in range(n):
            if bits[i]:
                if prev >= 0:
                    dx = xs[i] - xs[prev]
                    dy = ys[i] - ys[prev]
                    total += sqrt(dx * dx + dy * dy)
                prev = i
    elif variant == ALL_PAIRS_H:
        for i in range(n):
            if not bits[i]:
                continue
            for j in range(i + 1, n):
                if bits[j]:
                    dx = xs[j] - xs[i]
                    dy = ys[j] - ys[i]
                    total += sqrt(dx * dx + dy * dy)
    elif variant == MASKED_ADJACENT:
        for i in range(n - 1):
            dx = xs[i + 1] * bits[i + 1] - xs[i] * bits[i]
            dy = ys[i + 1] * bits[i + 1] - ys[i] * bits[i]
            total += sqrt(dx * dx + dy * dy)
    elif variant == HP_CONTACT:
        contacts = 0
        for i in range(n):
            if not bits[i]:
                continue
            for j in range(i + 2, n):
                if bits[j] and abs(xs[j] - xs[i]) + abs(ys[j] - ys[i]) == 1:
                    contacts += 1
        total = -float(contacts)
    else:
        raise ValueError(f"unknown variant code {variant}")
    return total


def enumerate_from(bits, variant, prefix):
    """Exhaustive search over symmetry-reduced self-avoiding completions of ``prefix``.

    Walks start at the origin with first step +x and first turn +y. Returns
    ``(best_energy, best_codes, visited)``; among equal energies the
    lexicographically smallest direction string wins.
    """
    bits = _as_list(bits)
    n_points = len(bits)
    n_steps = n_points - 1
    xs = [0] * n_points
    ys = [0] * n_points
    codes = [0] * n_steps
    occupied = {(0, 0)}
    straight = True
    for k, c in enumerate(prefix):
        if straight and c not in (0, 1):
            return float("inf"), None, 0
        if k == 0 and c != 0:
            return float("inf"), None, 0
        x, y = xs[k] + DX[c], ys[k] + DY[c]
        if (x, y) in occupied:
            return float("inf"), None, 0
        occupied.add((x, y))
        xs[k + 1], ys[k + 1] = x, y
        codes[k] = c
        straight = straight and c == 0

    best = [float("inf"), None, 0]

    def walk(k, straight):
        if k == n_steps:
            best[2] += 1
            e = energy(xs, ys, bits, variant)
            if e < best[0]:
                best[0] = e
                best[1] = tuple(codes)
            return
        for c in LEX_ORDER:
            if k == 0 and c != 0:
                continue
            if straight and c not in (0, 1):
                continue
            x, y = xs[k] + DX[c], ys[k] + DY[c]
            if (x, y) in occupied:
                continue
            occupied.add((x, y))
            xs[k + 1], ys[k + 1] = x, y
            codes[k] = c
            walk(k + 1, straight and c == 0)
            occupied.discard((x, y))

    walk(len(prefix), straight)
    return best[0], best[1], best[2]
