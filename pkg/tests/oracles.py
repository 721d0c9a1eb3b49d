"""Independent reference implementations used only by the tests.

Points are complex numbers and distances come from ``abs``; nothing here
imports the package's kernels.
"""
import itertools

UNIT = {"R": 1, "U": 1j, "L": -1, "D": -1j}


def points_from_letters(letters, origin=True):
    pts = [0j] if origin else []
    z = 0j
    for ch in letters:
        z += UNIT[ch]
        pts.append(z)
    return pts


def naive_energy(points, bits, variant):
    n = len(points)
    assert len(bits) == n
    if variant == "consecutive_h":
        q = [points[i] for i in range(n) if bits[i] == 1]
        return sum(abs(q[k + 1] - q[k]) for k in range(len(q) - 1))
    if variant == "all_pairs_h":
        total = 0.0
        for i in range(n):
            for j in range(n):
                if i < j and bits[i] == 1 and bits[j] == 1:
                    total += abs(points[i] - points[j])
        return total
    if variant == "masked_adjacent":
        a = [points[i] * bits[i] for i in range(n)]
        return sum(abs(a[x] - a[x + 1]) for x in range(n - 1))
    if variant == "hp_contact":
        count = 0
        for i in range(n):
            for j in range(n):
                if j > i + 1 and bits[i] == 1 and bits[j] == 1 and abs(points[i] - points[j]) == 1:
                    count += 1
        return -count
    raise ValueError(variant)


def all_walks(n_steps):
    """Every direction string of length ``n_steps`` (no symmetry reduction)."""
    return ["".join(w) for w in itertools.product("DLRU", repeat=n_steps)]


def all_saws(n_steps):
    return [w for w in all_walks(n_steps) if len(set(points_from_letters(w))) == n_steps + 1]


def brute_force_min(bits, variant):
    """Minimum over every unreduced self-avoiding walk; returns (energy, count)."""
    saws = all_saws(len(bits) - 1)
    return min(naive_energy(points_from_letters(w), bits, variant) for w in saws), len(saws)


def random_saw(rng, n_steps, tries=1000):
    """Grow a random self-avoiding walk; restarts when the walk traps itself."""
    for _ in range(tries):
        z, seen, letters = 0j, {0j}, []
        for _ in range(n_steps):
            options = [ch for ch in "RULD" if z + UNIT[ch] not in seen]
            if not options:
                break
            ch = options[rng.randrange(len(options))]
            z += UNIT[ch]
            seen.add(z)
            letters.append(ch)
        else:
            return "".join(letters)
    raise RuntimeError("could not grow a self-avoiding walk")
