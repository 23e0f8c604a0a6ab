"""Compare the compiled and pure-Python predicate backends.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--sites N]

Times each predicate on random integer inputs and the full Delaunay build,
once per available backend, and checks that both return identical results.
"""
import argparse
import random
import time

from dfl import kernels
from dfl.delaunay import build_dt
from dfl.geometry import SiteSet
from dfl.triangulation import canonical_key

ARITY = {"orient2d": (3, 2), "incircle": (4, 2), "orient3d": (4, 3), "insphere": (5, 3)}


def _inputs(name, count, bits):
    k, d = ARITY[name]
    rnd = random.Random(name)
    return [[tuple(rnd.randrange(-(1 << bits), 1 << bits) for _ in range(d)) for _ in range(k)]
            for _ in range(count)]


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--count", type=int, default=20000, help="predicate calls per timing")
    ap.add_argument("--sites", type=int, default=300, help="sites for the build_dt timing")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    previous = kernels.backend()
    print(f"backends: {', '.join(backends)}")
    rows = []
    # 20-bit coordinates stay on the fast path; 40-bit ones exercise the fallback
    for bits in (20, 40):
        for name in ARITY:
            data = _inputs(name, args.count, bits)
            results = {}
            for b in backends:
                kernels.set_backend(b)
                fn = getattr(kernels, name)
                secs, signs = _time(lambda: [fn(*p) for p in data], args.repeat)
                results[b] = (secs, signs)
            rows.append((f"{name} ({bits}-bit)", results))

    rnd = random.Random(0)
    sites = SiteSet(list({(rnd.randrange(1 << 20), rnd.randrange(1 << 20))
                          for _ in range(args.sites)}))
    results = {}
    for b in backends:
        kernels.set_backend(b)
        secs, t = _time(lambda: build_dt(sites), args.repeat)
        results[b] = (secs, canonical_key(t))
    rows.append((f"build_dt ({args.sites} sites)", results))
    kernels.set_backend(previous)

    header = f"{'task':<28}" + "".join(f"{b + ' [s]':>16}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}{'agree':>8}"
    print(header)
    for label, res in rows:
        line = f"{label:<28}" + "".join(f"{res[b][0]:>16.4f}" for b in backends)
        if len(backends) > 1:
            py, cc = res["python"], res["compiled"]
            line += f"{py[0] / cc[0]:>9.1f}x{str(py[1] == cc[1]):>8}"
        print(line)


if __name__ == "__main__":
    main()
