"""Compare the compiled and pure-Python overlay kernels.

    python3 benchmarks/bench_clip.py [--disks 400] [--repeat 3]
"""
import argparse
import time

import numpy as np

from toeplimit.geometry import _clipcore_py
from toeplimit.geometry._overlay import overlay

try:
    from toeplimit.geometry import _clipcore
except ImportError:
    _clipcore = None


def disks(n, sides=20, seed=0):
    rng = np.random.default_rng(seed)
    ang = np.arange(sides) * 2 * np.pi / sides
    circ = 0.3 * np.stack([np.cos(ang), np.sin(ang)], -1)
    return [np.floor((p + circ) * 1e6).astype(np.int64) for p in rng.random((n, 2)) * 10]


def bench(kernels, rings, clip, repeat):
    best = np.inf
    for _ in range(repeat):
        t = time.perf_counter()
        out = overlay(rings, clip, "union", kernels)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--disks", type=int, default=400)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    rings = disks(a.disks)
    box = [np.array([[0, 0], [10**7, 0], [10**7, 10**7], [0, 10**7]], dtype=np.int64)]
    cases = {"union of disks": (rings, []), "disks vs box": (rings, box)}
    for name, (r, c) in cases.items():
        tp, op = bench(_clipcore_py, r, c, a.repeat)
        line = f"{name:16s} python {tp:8.3f} s"
        if _clipcore is not None:
            tc, oc = bench(_clipcore, r, c, a.repeat)
            same = len(op) == len(oc) and all((x == y).all() for x, y in zip(op, oc))
            line += f"  compiled {tc:8.3f} s  speedup {tp / tc:6.1f}x  identical={same}"
        else:
            line += "  compiled extension not built"
        print(line)


if __name__ == "__main__":
    main()
