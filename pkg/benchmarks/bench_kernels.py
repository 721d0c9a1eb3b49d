"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--max-steps 12] [--repeat 3]
"""
import argparse
import random
import time

import numpy as np

from hydrofold import kernels
from hydrofold.fold import embed, family_generate

VARIANTS = {"consecutive_h": 0, "all_pairs_h": 1, "masked_adjacent": 2, "hp_contact": 3}


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def bench_enumeration(backends, max_steps, repeat):
    rng = random.Random(0)
    print(f"\nexhaustive enumeration (all_pairs_h), best of {repeat}")
    print(f"{'steps':>5} {'walks':>10} " + " ".join(f"{name + ' s':>12}" for name in backends) + f" {'speedup':>9}")
    for n_steps in range(6, max_steps + 1):
        bits = np.array([rng.randint(0, 1) for _ in range(n_steps + 1)], dtype=np.uint8)
        row, visited = {}, None
        results = set()
        for name, mod in backends.items():
            if name == "python" and n_steps > 13:
                row[name] = float("nan")
                continue
            row[name], (energy, codes, visited) = best_of(lambda: mod.enumerate_from(bits, 1, ()), repeat)
            results.add((energy, codes, visited))
        assert len(results) == 1, "backends disagree"
        speed = row.get("python", float("nan")) / row["cython"] if "cython" in row else float("nan")
        print(f"{n_steps:>5} {visited:>10} " + " ".join(f"{row[n]:>12.4f}" for n in backends) + f" {speed:>8.1f}x")


def bench_family(backends, repeat):
    n = 103
    rng = random.Random(1)
    bits = np.array([rng.randint(0, 1) for _ in range(n + 1)], dtype=np.uint8)
    coords = [(emb.xs, emb.ys) for emb in (embed(m) for m in family_generate(n))]
    print(f"\nfold family of {n} members, 104 residues, best of {repeat}")
    print(f"{'variant':>16} " + " ".join(f"{name + ' ms':>12}" for name in backends))
    for vname, code in VARIANTS.items():
        row = {}
        outs = set()
        for name, mod in backends.items():
            row[name], out = best_of(lambda: tuple(mod.energy(xs, ys, bits, code) for xs, ys in coords), repeat)
            outs.add(out)
        assert len(outs) == 1, "backends disagree"
        print(f"{vname:>16} " + " ".join(f"{row[n] * 1e3:>12.3f}" for n in backends))


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-steps", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {sorted(backends)} (default: {kernels.BACKEND})")
    bench_family(backends, args.repeat)
    bench_enumeration(backends, args.max_steps, args.repeat)


if __name__ == "__main__":
    main()
