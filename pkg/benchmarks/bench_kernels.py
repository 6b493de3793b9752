"""Times the two kernel backends on representative workloads.

Run from the repository root with the package installed:

    python3 benchmarks/bench_kernels.py

Each backend runs in a fresh interpreter: once as installed (compiled
kernels when the build produced them) and once with PFTRIM_PURE=1
forcing the pure-Python fallback.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time

UNIT_EXPS = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def dense_linear_skew(ring, m, rng):
    from pftrim import SkewMatrix

    char = ring.field.char
    upper = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            f = ring.zero
            for exps in UNIT_EXPS.values():
                c = rng.randrange(char) if char else rng.randint(-2, 2)
                if c:
                    f = f + ring.monomial(c, exps)
            upper[(i, j)] = f
    return SkewMatrix.from_upper(ring, m, upper)


def degree_block(ring, rng, bound):
    f = ring.zero
    char = ring.field.char
    for a1 in range(bound + 1):
        for a2 in range(bound + 1 - a1):
            for a3 in range(bound + 1 - a1 - a2):
                c = rng.randrange(1, char) if char else rng.randint(1, 5)
                f = f + ring.monomial(c, (a1, a2, a3))
    return f


def run_workloads():
    from pftrim import (PolyRing, PrimeField, check_identities, full_table,
                        trimmed_resolution, verify_leibniz)
    from pftrim.polyring import kernel_backend

    times = {}
    rng = random.Random(17)

    ring5 = PolyRing(PrimeField(5))
    f = degree_block(ring5, rng, 4)
    g = degree_block(ring5, rng, 4)
    t0 = time.perf_counter()
    for _ in range(2000):
        f * g
    times["polynomial products (F5, degree 4)"] = time.perf_counter() - t0

    ring3 = PolyRing(PrimeField(3))
    T = dense_linear_skew(ring3, 9, rng)
    t0 = time.perf_counter()
    check_identities(T)
    times["identity suite (F3, size 9)"] = time.perf_counter() - t0

    ring2 = PolyRing(PrimeField(2))
    T = dense_linear_skew(ring2, 9, rng)
    td = trimmed_resolution(T, 9)
    t0 = time.perf_counter()
    table = full_table(td)
    verify_leibniz(td, table)
    times["product table + Leibniz (F2, size 9, full trim)"] = \
        time.perf_counter() - t0

    return {"backend": kernel_backend(), "times": times}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--worker", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        json.dump(run_workloads(), sys.stdout)
        return

    results = {}
    for mode in ("default", "pure"):
        env = dict(os.environ)
        env.pop("PFTRIM_PURE", None)
        if mode == "pure":
            env["PFTRIM_PURE"] = "1"
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker"],
            capture_output=True, text=True, env=env, check=True)
        results[mode] = json.loads(out.stdout)

    if results["default"]["backend"] == "python":
        print("compiled kernels not built; both runs used the pure backend")
    width = max(len(name) for name in results["default"]["times"])
    print(f"{'workload':<{width}}  {'default':>9}  {'pure':>9}  speedup")
    for name, base in results["default"]["times"].items():
        pure = results["pure"]["times"][name]
        print(f"{name:<{width}}  {base:>8.3f}s  {pure:>8.3f}s  "
              f"{pure / base:>6.2f}x")


if __name__ == "__main__":
    main()
