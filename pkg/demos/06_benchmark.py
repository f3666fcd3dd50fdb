"""Timing the evaluation strategies against each other.

Runs a small benchmark sweep (triangle and hexahedron, a few orders) for the
three methods and prints the speedup of barycentric evaluation over the
rebuild-the-matrix-every-sweep baseline.  When the query points change every
sweep the matrix rebuild dominates; when they are fixed, the cached matrix is
the cheapest to apply but costs M*N storage per field layout.

Uses fewer repetitions than the CLI defaults so the demo finishes quickly:

    python demos/06_benchmark.py
"""

from baryeval import Shape
from baryeval.bench import (
    METHOD_BARY,
    METHOD_CACHED,
    METHOD_RECOMPUTED,
    Q_VALUE_D1,
    run_bench,
    speedup_csv,
)

records = run_bench(shapes=[Shape.TRI, Shape.HEX], orders=[4, 8, 12],
                    reps=5, quantities=(Q_VALUE_D1,))

print(f"{'shape':6s} {'order':>5s} {'bary_us':>10s} {'cached_us':>10s} "
      f"{'recomputed_us':>14s}")
cells = {}
for r in records:
    cells.setdefault((r.shape, r.order), {})[r.method] = r.mean_ns / 1e3
for (shape, order), by_method in sorted(cells.items()):
    print(f"{shape:6s} {order:5d} {by_method[METHOD_BARY]:10.1f} "
          f"{by_method[METHOD_CACHED]:10.1f} "
          f"{by_method[METHOD_RECOMPUTED]:14.1f}")

print("\nspeedup of barycentric evaluation over the recomputed matrix:")
print(speedup_csv(records))
