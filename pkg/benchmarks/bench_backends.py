"""Time the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter (the backend is fixed at import time
by LANGWEIL_BACKEND).  Every workload is run once to warm up, then timed.

    python benchmarks/bench_backends.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "count A^3(F_64) cubic, root scan": ("count", "x^3+y^2*z+z+1", 2, 6, 3, "fiberwise"),
    "count A^2(F_65536) cubic, gcd": ("count", "y^2+y-x^3", 2, 16, 2, "fiberwise_gcd"),
    "count A^4(F_13) brute": ("count", "x^3+y^3+z^3+w^2+1", 13, 1, 4, "brute"),
    "slice A^3(F_16) exhaustive": ("slice", "x^3+y^3+z^3+1", 2, 4, 3, None),
    "slice A^3(F_4) 20000 samples": ("mc", "y^2+y-x^3", 2, 2, 3, None),
}

CHILD = r"""
import json, sys, time
from langweil.counting import count_affine
from langweil.gf import make_field
from langweil.kernels import backend_name
from langweil.ledger import interval_system
from langweil.mpoly import Hypersurface
from langweil.slicing import slice_distribution

work, repeat = json.loads(sys.argv[1]), int(sys.argv[2])
out = {"backend": backend_name, "results": {}}
for name, (kind, poly, p, m, n, method) in work.items():
    X = Hypersurface.affine(poly, n, make_field(p, m))
    S = interval_system(X.field.q, X.d)
    if kind == "count":
        job = lambda: count_affine(X, method=method).count
    elif kind == "slice":
        job = lambda: slice_distribution(X, S, "exhaustive", overlap="first", with_total=False).mean
    else:
        job = lambda: slice_distribution(X, S, "monte_carlo", samples=20000, seed=1, overlap="first",
                                         with_total=False).mean
    value = job()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        job()
        times.append(time.perf_counter() - t0)
    out["results"][name] = {"best_s": min(times), "value": str(value)}
print(json.dumps(out))
"""


def run_backend(name: str, repeat: int) -> dict:
    env = dict(os.environ, LANGWEIL_BACKEND=name)
    proc = subprocess.run([sys.executable, "-c", CHILD, json.dumps(WORKLOADS), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw JSON instead of a table")
    args = ap.parse_args(argv)
    nb, npy = run_backend("numba", args.repeat), run_backend("numpy", args.repeat)
    if args.json:
        print(json.dumps({"numba": nb, "numpy": npy}, indent=2))
        return 0
    width = max(map(len, WORKLOADS))
    print(f"{'workload':<{width}}  {'numba s':>9}  {'numpy s':>9}  {'speedup':>8}  agree")
    for name in WORKLOADS:
        a, b = nb["results"][name], npy["results"][name]
        agree = a["value"] == b["value"]
        print(f"{name:<{width}}  {a['best_s']:9.4f}  {b['best_s']:9.4f}  {b['best_s'] / a['best_s']:8.1f}  {agree}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
