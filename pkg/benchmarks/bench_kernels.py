"""Time the numba and numpy versions of the hot kernels side by side.

    python benchmarks/bench_kernels.py [--repeat 5]

Refinement is timed on unit partitions of a few graphs (random, Frucht);
pair-orbit labelling on regular and larger actions.  Both backends are
checked to agree before anything is timed.
"""

import argparse
import time

import numpy as np

from hamsym import _accel
from hamsym.autgrp import Relation
from hamsym.constructions import frucht_graph
from hamsym.groups import faithful_actions, parse_spec


def unit_partition(n):
    lab = np.arange(n, dtype=np.int64)
    cstart = np.zeros(n, dtype=np.int64)
    csize = np.zeros(n, dtype=np.int64)
    csize[0] = n
    active = np.zeros(n, dtype=np.bool_)
    active[0] = True
    return lab, cstart, csize, active


def time_refine(fn, rel, repeat):
    best = float("inf")
    for _ in range(repeat):
        state = unit_partition(rel.n)
        t = time.perf_counter()
        fn(rel.indptr, rel.cols, rel.codes, *state)
        best = min(best, time.perf_counter() - t)
    return best


def time_pairs(fn, gens, n, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(gens, n)
        best = min(best, time.perf_counter() - t)
    return best


def refine_cases():
    rng = np.random.default_rng(0)
    out = []
    for n, p in ((64, 0.2), (256, 0.05), (1024, 0.01)):
        a = np.triu(rng.random((n, n)) < p, 1)
        out.append((f"random n={n}", Relation.from_matrix((a | a.T).astype(np.int64))))
    for text in ("q8", "prod(q8,e2^2)", "prod(q8,e2^3)"):
        g = frucht_graph(parse_spec(text))
        out.append((f"frucht {text} n={g.n}", Relation.from_graph(g)))
    return out


def pair_cases():
    out = []
    for text, n in (("q8", 8), ("prod(q8,e2^1)", 12), ("prod(q8,c3)", 24)):
        action = faithful_actions(parse_spec(text), n)[-1]
        gens = np.array([p.images for p in action.images], dtype=np.int64)
        out.append((f"{text} on {n}", gens, n))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is disabled (HAMSYM_NUMBA=0) or missing; nothing to compare")

    print(f"{'kernel':<8} {'case':<28} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, rel in refine_cases():
        a, b = unit_partition(rel.n), unit_partition(rel.n)
        ta = _accel.refine_numpy(rel.indptr, rel.cols, rel.codes, *a)
        tb = int(_accel.refine_numba(rel.indptr, rel.cols, rel.codes, *b))
        assert ta == tb and np.array_equal(a[0], b[0]), name
        t_np = time_refine(_accel.refine_numpy, rel, args.repeat)
        t_nb = time_refine(_accel.refine_numba, rel, args.repeat)
        print(f"{'refine':<8} {name:<28} {t_np * 1e3:10.2f} {t_nb * 1e3:10.2f} {t_np / t_nb:8.1f}")
    for name, gens, n in pair_cases():
        assert np.array_equal(_accel.pair_orbit_labels_numpy(gens, n),
                              _accel.pair_orbit_labels_numba(gens, n)), name
        t_np = time_pairs(_accel.pair_orbit_labels_numpy, gens, n, args.repeat)
        t_nb = time_pairs(_accel.pair_orbit_labels_numba, gens, n, args.repeat)
        print(f"{'pairs':<8} {name:<28} {t_np * 1e3:10.2f} {t_nb * 1e3:10.2f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
