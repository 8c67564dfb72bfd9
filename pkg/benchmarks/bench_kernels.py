"""Compare the numba and numpy enumeration kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case counts lattice points of a dilated corpus polytope (point scan)
or tabulates a graded cone by degree.  Both backends must agree; the
numba timing excludes compilation.
"""
import argparse
import time

from gorpoly import _kernels
from gorpoly.cone import monoid_of_polytope
from gorpoly.gorenstein import gorenstein_certificate, graded_counts
from gorpoly.io import read_polytope, resolve_input


def point_case(name, m):
    P = read_polytope(resolve_input(name))

    def run(use_numba):
        d = P.dim
        lo = [m * min(t[j] for t in P.vertex_coords) for j in range(d)]
        hi = [m * max(t[j] for t in P.vertex_coords) for j in range(d)]
        A = [list(a) for a, _ in P.frame_facets]
        b = [m * bb for _, bb in P.frame_facets]
        return len(_kernels.scan_points(A, b, lo, hi, use_numba=use_numba))

    return f"points {name} m={m}", run


def degree_case(name, top):
    M = monoid_of_polytope(read_polytope(resolve_input(name)))
    deg = gorenstein_certificate(M).degree_form

    def run(use_numba):
        return tuple(graded_counts(M.cone, deg, top, use_numba=use_numba))

    return f"degrees {name} top={top}", run


def best_of(fn, arg, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(arg)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or GORPOLY_NO_NUMBA set); timing numpy only")
    _kernels.warm_up()
    cases = [
        point_case("unit-cube3", 100),
        point_case("birkhoff3", 30),
        point_case("join-tetra", 80),
        degree_case("unit-cube3", 200),
        degree_case("join-tetra", 240),
    ]
    print(f"{'case':32} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for label, fn in cases:
        t_np, r_np = best_of(fn, False, args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb, r_nb = best_of(fn, True, args.repeat)
            if r_nb != r_np:
                raise SystemExit(f"{label}: backends disagree")
            print(f"{label:32} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}")
        else:
            print(f"{label:32} {t_np:10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
