"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import sys
import timeit
from math import gcd

from heckoid import kernels
from heckoid.farey import farey_parents
from heckoid.orbits import fundamental_domain


def _args(r, m):
    dom = fundamental_domain(r, m)
    pp, qq = farey_parents(dom.r)
    return dom.r.num, dom.r.den, qq, pp, dom.j, dom.m


def _points(count, max_den, seed=0):
    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        p = rnd.randint(1, max_den)
        q = rnd.randint(-5 * p, 5 * p)
        if gcd(q, p) == 1:
            out.append((q, p))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["python"] + (["compiled"] if kernels._compiled is not None else [])
    if len(backends) == 1:
        print("compiled extension not built; timing the Python kernels only", file=sys.stderr)

    pts = _points(20000, 500)
    kargs = _args("2/9", 4)
    dom = fundamental_domain("2/9", 4)
    P = dom.p_gen
    pmat = (P.a, P.b, P.c, P.d)
    jobs = {
        "reduce_batch 20k slopes, den<=500": lambda b: kernels.reduce_batch(pts, *kargs, 64, backend=b),
        "bfs_orbit depth 12, cap 10^5": lambda b: kernels.bfs_orbit((5, 17), pmat, 12, 10 ** 5, backend=b),
    }
    print(f"{'kernel':40s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, job in jobs.items():
        times = [min(timeit.repeat(lambda: job(b), number=1, repeat=args.repeat)) for b in backends]
        row = f"{name:40s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
