"""Benchmark the numba-jitted kernels against the numpy fallback path.

Each backend runs in its own subprocess because the backend is chosen at
import time from the CROWDGAME_NO_NUMBA environment variable.

Usage: python benchmarks/bench_backends.py
"""
import json
import os
import subprocess
import sys

_WORKLOAD = r"""
import json, time
import crowdgame as cg
from crowdgame.equilibrium import GameParams

results = {"backend": "numba" if cg.USING_NUMBA else "numpy"}

# warm-up / jit compile
cg.solve(GameParams(100, 50, 0.75))
cg.enumerate_exact(GameParams(4, 2, 0.75), 0.3)
cg.simulate(GameParams(5, 3, 0.75), 0.2, 1000, 0)

t0 = time.perf_counter()
for b in range(1, 501):
    cg.solve(GameParams(500, b, 0.75))
results["solve_sweep_n500"] = time.perf_counter() - t0

t0 = time.perf_counter()
for _ in range(5):
    cg.enumerate_exact(GameParams(10, 5, 0.75), 0.3)
results["enumerate_n10_x5"] = time.perf_counter() - t0

t0 = time.perf_counter()
cg.simulate(GameParams(100, 50, 0.55), 0.2, 200_000, 0)
results["simulate_n100_200k"] = time.perf_counter() - t0

print(json.dumps(results))
"""


def run(no_numba: bool) -> dict:
    env = dict(os.environ)
    env["CROWDGAME_NO_NUMBA"] = "1" if no_numba else "0"
    out = subprocess.run([sys.executable, "-c", _WORKLOAD], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    numba = run(no_numba=False)
    numpy_only = run(no_numba=True)
    keys = [k for k in numba if k != "backend"]
    width = max(len(k) for k in keys)
    print(f"{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  speedup")
    for key in keys:
        ratio = numpy_only[key] / numba[key] if numba[key] else float("inf")
        print(f"{key:<{width}}  {numba[key]:>9.3f}s  {numpy_only[key]:>9.3f}s  {ratio:6.1f}x")


if __name__ == "__main__":
    main()
