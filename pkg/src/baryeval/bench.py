"""Timing benchmarks comparing barycentric evaluation against the
interpolation-matrix baseline, with CSV output and a speedup report.

Protocol per cell (shape, order, method, quantity):

* element of order P with P + 2 points per axis, field = the quadratic
  benchmark polynomial sampled on the element grid;
* a fixed sampling grid of 64 total points (64 in 1D, 8^2 in 2D, 4^3 in 3D)
  built from the same node families as the element basis;
* the timed unit is one sweep evaluating all sampling points; sweeps are
  repeated `reps` times and mean/stddev of the sweep time are reported.

Both timed kernels are straight-line Python over plain floats so the measured
ratios track the arithmetic-operation counts of the algorithms rather than
interpreter or array-dispatch overhead (the sampling grids are far too small
for vectorized dispatch costs to be representative).  `bary` evaluates point
by point through the collapse + contraction pipeline; `matrix_recomputed`
rebuilds the cardinal operator rows from scratch inside the timed sweep and
applies them as matrix-vector products; `matrix_cached` applies prebuilt
matrices.  Every method is cross-checked against the per-point evaluator
before any timing starts.
"""

from __future__ import annotations

import csv
import gc
import io
import time
from dataclasses import dataclass
from operator import mul as _mul

import numpy as np

from .element import ElementEvaluator, axis_kinds, basis_for_order, sample_field, xi_grid
from .errors import InvalidInputError, ReportError
from .fields import benchmark_field, random_interior_point
from .nodes import MAX_NODES, make_node_set
from .shapes import Shape, dim_of, shape_from_name
from .tensor import TensorBasis

METHOD_BARY = "bary"
METHOD_CACHED = "matrix_cached"
METHOD_RECOMPUTED = "matrix_recomputed"
METHODS = (METHOD_BARY, METHOD_CACHED, METHOD_RECOMPUTED)

Q_VALUE = "value"
Q_VALUE_D1 = "value_d1"
Q_VALUE_D1_D2 = "value_d1_d2"

CSV_HEADER = ["shape", "order", "method", "quantity",
              "sample_points", "reps", "mean_ns", "stddev_ns"]

_DEFAULT_REPS = {1: 1000, 2: 100, 3: 100}
_SAMPLING_COUNTS = {1: (64,), 2: (8, 8), 3: (4, 4, 4)}

# Node hits inside this distance take the collocated branch; matches the
# element path (collapse snap + kernel collocation tolerance).
_COLL = 1e-12


@dataclass
class BenchRecord:
    shape: str
    order: int
    method: str
    quantity: str
    sample_points: int
    reps: int
    mean_ns: float
    stddev_ns: float


def sampling_basis(shape):
    """The fixed 64-point sampling grid, same node families as the element."""
    counts = _SAMPLING_COUNTS[dim_of(shape)]
    kinds = axis_kinds(shape)
    return TensorBasis(tuple(make_node_set(k, n) for k, n in zip(kinds, counts)))


def sampling_points(shape):
    """Sampling grid mapped into the reference region, (M, d)."""
    return xi_grid(shape, sampling_basis(shape))


def quantities_for(dim):
    if dim == 1:
        return (Q_VALUE, Q_VALUE_D1, Q_VALUE_D1_D2)
    return (Q_VALUE, Q_VALUE_D1)


# ---------------------------------------------------------------------------
# Scalar building blocks shared by the timed sweeps.
# ---------------------------------------------------------------------------


def _scalar_collapse(shape, xi):
    if shape is Shape.TRI:
        den = 1.0 - xi[1]
        if den < _COLL:
            return (-1.0, 1.0)
        return (2.0 * (1.0 + xi[0]) / den - 1.0, xi[1])
    if shape is Shape.PRISM:
        den = 1.0 - xi[1]
        e1 = -1.0 if abs(den) < _COLL else 2.0 * (1.0 + xi[0]) / den - 1.0
        return (e1, xi[1], xi[2])
    if shape is Shape.PYR:
        den = 1.0 - xi[2]
        if abs(den) < _COLL:
            return (-1.0, -1.0, xi[2])
        return (2.0 * (1.0 + xi[0]) / den - 1.0,
                2.0 * (1.0 + xi[1]) / den - 1.0, xi[2])
    if shape is Shape.TET:
        den1 = -xi[1] - xi[2]
        den2 = 1.0 - xi[2]
        e1 = -1.0 if abs(den1) < _COLL else 2.0 * (1.0 + xi[0]) / den1 - 1.0
        e2 = -1.0 if abs(den2) < _COLL else 2.0 * (1.0 + xi[1]) / den2 - 1.0
        return (e1, e2, xi[2])
    return xi


def _scalar_chain(shape, eta, geta):
    """Map cube-space first derivatives to region space at one point."""
    if shape is Shape.TRI:
        g1 = 2.0 / (1.0 - eta[1])
        g2 = g1 * (eta[0] + 1.0) / 2.0
        return (g1 * geta[0], geta[1] + g2 * geta[0])
    if shape is Shape.PRISM:
        g1 = 2.0 / (1.0 - eta[1])
        g2 = g1 * (eta[0] + 1.0) / 2.0
        return (g1 * geta[0], geta[1] + g2 * geta[0], geta[2])
    if shape is Shape.PYR:
        g = 2.0 / (1.0 - eta[2])
        return (g * geta[0], g * geta[1],
                geta[2] + g * (eta[0] + 1.0) / 2.0 * geta[0]
                + g * (eta[1] + 1.0) / 2.0 * geta[1])
    if shape is Shape.TET:
        u = 0.5 * (1.0 - eta[1]) * (1.0 - eta[2])
        r = 2.0 / (1.0 - eta[2])
        a = (1.0 + eta[0]) / u
        return (2.0 / u * geta[0],
                a * geta[0] + r * geta[1],
                a * geta[0] + r * (eta[1] + 1.0) / 2.0 * geta[1] + geta[2])
    return geta


def _scalar_cards(z, eta):
    n = len(z)
    out = [0.0] * n
    for j in range(n):
        zj = z[j]
        p = 1.0
        for i in range(n):
            if i != j:
                p *= (eta - z[i]) / (zj - z[i])
        out[j] = p
    return out


def _scalar_cards_derivs(z, eta):
    """Cardinal values and derivatives by exclusive prefix/suffix products."""
    n = len(z)
    cards = [0.0] * n
    dcards = [0.0] * n
    for j in range(n):
        zj = z[j]
        r = [1.0] * n
        for i in range(n):
            if i != j:
                r[i] = (eta - z[i]) / (zj - z[i])
        pre = [1.0] * n
        acc = 1.0
        for i in range(n):
            pre[i] = acc
            acc *= r[i]
        cards[j] = acc
        suf = 1.0
        s = 0.0
        for i in range(n - 1, -1, -1):
            if i != j:
                s += pre[i] * suf / (zj - z[i])
            suf *= r[i]
        dcards[j] = s
    return cards, dcards


class _ScalarElement:
    """Element data unpacked to plain Python structures for the timing loops."""

    def __init__(self, evaluator):
        self.shape = evaluator.shape
        basis = evaluator.basis
        self.dim = basis.dim
        self.counts = basis.counts
        self.z = [ax.nodes.tolist() for ax in basis.axes]
        self.w = [ax.weights.tolist() for ax in basis.axes]
        self.d1rows = [ax.d1.tolist() for ax in basis.axes]
        self.d2rows = basis.axes[0].d2.tolist()
        data = evaluator.field.data
        if self.dim == 1:
            self.lines = data.tolist()
        else:
            n1 = self.counts[0]
            self.lines = data.reshape(len(data) // n1, n1).tolist()
        self.field = data


class _BarySweep:
    """Per-point barycentric sweep: collapse, contract, chain rule.

    The stage-1 contraction touches every field value once and runs as a
    single matrix-vector product (the bulk primitive, mirroring the matrix
    method's bulk apply); the remaining reductions over n2/n3 intermediate
    lines are scalar loops.
    """

    def __init__(self, evaluator, points, quantity):
        self.el = _ScalarElement(evaluator)
        self.pts = [tuple(map(float, p)) for p in np.atleast_2d(points)]
        self.quantity = quantity
        basis = evaluator.basis
        self.znp = [ax.nodes for ax in basis.axes]
        self.wnp = [ax.weights for ax in basis.axes]
        self.d1np = [ax.d1 for ax in basis.axes]
        self.d2np = basis.axes[0].d2
        data = evaluator.field.data
        n1 = basis.counts[0]
        self.lines_np = data.reshape(len(data) // n1, n1)

    def _stage1(self, e1, deriv):
        """Contract all lines along the first axis; numpy vectors out."""
        z, w = self.znp[0], self.wnp[0]
        x = z - e1
        j = int(np.argmin(np.abs(x)))
        if -_COLL <= x[j] <= _COLL:
            vals = self.lines_np[:, j]
            ders = self.lines_np @ self.d1np[0][j] if deriv else None
            return vals, ders
        t1 = w / x
        a = self.lines_np @ t1
        f = t1.sum()
        vals = a / f
        ders = None
        if deriv:
            t2 = t1 / x
            b = self.lines_np @ t2
            c = t2.sum()
            ders = (b * f - a * c) / (f * f)
        return vals, ders

    def _tables(self, axis, eta_q):
        """Scalar inverse-difference tables for one later axis at one point."""
        z, w = self.el.z[axis], self.el.w[axis]
        best = 0
        dist = abs(z[0] - eta_q)
        for j in range(1, len(z)):
            d = abs(z[j] - eta_q)
            if d < dist:
                best, dist = j, d
        if dist <= _COLL:
            return best, None, None, 0.0, 0.0
        t1 = [wj / (zj - eta_q) for zj, wj in zip(z, w)]
        t2 = [t / (zj - eta_q) for zj, t in zip(z, t1)]
        sc = 1.0 / sum(t1)
        csc = sum(t2) * sc
        return -1, t1, t2, sc, csc

    def _reduce_value(self, axis, line, tables):
        j, t1, _, sc, _ = tables
        if j >= 0:
            return line[j]
        return sum(map(_mul, line, t1)) * sc

    def _reduce_deriv(self, axis, line, tables):
        j, t1, t2, sc, csc = tables
        if j >= 0:
            return line[j], sum(map(_mul, line, self.el.d1rows[axis][j]))
        v = sum(map(_mul, line, t1)) * sc
        return v, sum(map(_mul, line, t2)) * sc - v * csc

    def __call__(self):
        el = self.el
        q = self.quantity
        deriv = q != Q_VALUE
        values = []
        grads = []
        d2s = []
        if el.dim == 1:
            z, w = self.znp[0], self.wnp[0]
            data = el.field
            for (e1,) in self.pts:
                x = z - e1
                j = int(np.argmin(np.abs(x)))
                if -_COLL <= x[j] <= _COLL:
                    values.append(data[j])
                    if deriv:
                        grads.append((float(self.d1np[0][j] @ data),))
                    if q == Q_VALUE_D1_D2:
                        d2s.append(float(self.d2np[j] @ data))
                    continue
                t1 = w / x
                a = float(t1 @ data)
                f = float(t1.sum())
                values.append(a / f)
                if deriv:
                    t2 = t1 / x
                    b = float(t2 @ data)
                    c = float(t2.sum())
                    ff = f * f
                    grads.append(((b * f - a * c) / ff,))
                    if q == Q_VALUE_D1_D2:
                        t3 = t2 / x
                        d = float(t3 @ data)
                        e = float(t3.sum())
                        ac = a * c
                        d2s.append((2 * d) / f - (2 * e * a) / ff
                                   - (2 * b * c) / ff + (2 * c * ac) / (ff * f))
        elif el.dim == 2:
            for xi in self.pts:
                eta = _scalar_collapse(el.shape, xi)
                vals, ders = self._stage1(eta[0], deriv)
                tab = self._tables(1, eta[1])
                if not deriv:
                    values.append(self._reduce_value(1, vals.tolist(), tab))
                    continue
                g1 = self._reduce_value(1, ders.tolist(), tab)
                v, g2 = self._reduce_deriv(1, vals.tolist(), tab)
                values.append(v)
                grads.append(_scalar_chain(el.shape, eta, (g1, g2)))
        else:
            n2, n3 = el.counts[1], el.counts[2]
            for xi in self.pts:
                eta = _scalar_collapse(el.shape, xi)
                vals_np, ders_np = self._stage1(eta[0], deriv)
                vals = vals_np.tolist()
                tab2 = self._tables(1, eta[1])
                tab3 = self._tables(2, eta[2])
                if not deriv:
                    v3 = [self._reduce_value(1, vals[k * n2:(k + 1) * n2], tab2)
                          for k in range(n3)]
                    values.append(self._reduce_value(2, v3, tab3))
                    continue
                ders = ders_np.tolist()
                v3 = []
                da = []
                db = []
                for k in range(n3):
                    sl = slice(k * n2, (k + 1) * n2)
                    da.append(self._reduce_value(1, ders[sl], tab2))
                    v, g = self._reduce_deriv(1, vals[sl], tab2)
                    v3.append(v)
                    db.append(g)
                g1 = self._reduce_value(2, da, tab3)
                g2 = self._reduce_value(2, db, tab3)
                v, g3 = self._reduce_deriv(2, v3, tab3)
                values.append(v)
                grads.append(_scalar_chain(el.shape, eta, (g1, g2, g3)))
        return (np.array(values),
                np.array(grads) if grads else None,
                np.array(d2s) if d2s else None)


class _MatrixSweep:
    """Cardinal-operator sweep; rebuilds the rows inside the call when
    recomputed, otherwise applies prebuilt matrices."""

    def __init__(self, evaluator, points, quantity, recompute):
        self.el = _ScalarElement(evaluator)
        self.pts = [tuple(map(float, p)) for p in np.atleast_2d(points)]
        self.quantity = quantity
        self.recompute = recompute
        self.cached = None if recompute else self._build()

    def _build(self):
        el = self.el
        q = self.quantity
        dim = el.dim
        value_rows = []
        deriv_rows = [[] for _ in range(dim)] if q != Q_VALUE else None
        d2_rows = [] if q == Q_VALUE_D1_D2 else None
        for xi in self.pts:
            eta = _scalar_collapse(el.shape, xi)
            if q == Q_VALUE:
                per_axis = [_scalar_cards(el.z[a], eta[a]) for a in range(dim)]
                dper = None
            else:
                per_axis = []
                dper = []
                for a in range(dim):
                    cards, dcards = _scalar_cards_derivs(el.z[a], eta[a])
                    per_axis.append(cards)
                    dper.append(dcards)
            if dim == 1:
                value_rows.append(per_axis[0])
                if dper is not None:
                    deriv_rows[0].append(dper[0])
                if d2_rows is not None:
                    cards = per_axis[0]
                    d2_rows.append([
                        sum(cards[i] * col[i] for i in range(len(cards)))
                        for col in zip(*self.el.d2rows)
                    ])
                continue
            if dim == 2:
                c1, c2 = per_axis
                row = [c1j * c2j for c2j in c2 for c1j in c1]
                value_rows.append(row)
                if dper is None:
                    continue
                de1 = [d1j * c2j for c2j in c2 for d1j in dper[0]]
                de2 = [c1j * d2j for d2j in dper[1] for c1j in c1]
                eta_rows = (de1, de2)
            else:
                c1, c2, c3 = per_axis
                row = [c1j * c23 for c3k in c3 for c2j in c2
                       for c23 in (c2j * c3k,) for c1j in c1]
                value_rows.append(row)
                if dper is None:
                    continue
                de1 = [d1j * c23 for c3k in c3 for c2j in c2
                       for c23 in (c2j * c3k,) for d1j in dper[0]]
                de2 = [c1j * d23 for c3k in c3 for d2j in dper[1]
                       for d23 in (d2j * c3k,) for c1j in c1]
                de3 = [c1j * c2d for d3k in dper[2] for c2j in c2
                       for c2d in (c2j * d3k,) for c1j in c1]
                eta_rows = (de1, de2, de3)
            # chain rule: compose cube-space derivative rows per shape
            if el.shape in (Shape.TRI, Shape.PRISM):
                g1 = 2.0 / (1.0 - eta[1])
                g2 = g1 * (eta[0] + 1.0) / 2.0
                deriv_rows[0].append([g1 * v for v in eta_rows[0]])
                deriv_rows[1].append(
                    [v2 + g2 * v1 for v1, v2 in zip(eta_rows[0], eta_rows[1])])
                if dim == 3:
                    deriv_rows[2].append(eta_rows[2])
            elif el.shape is Shape.PYR:
                g = 2.0 / (1.0 - eta[2])
                a1 = g * (eta[0] + 1.0) / 2.0
                a2 = g * (eta[1] + 1.0) / 2.0
                deriv_rows[0].append([g * v for v in eta_rows[0]])
                deriv_rows[1].append([g * v for v in eta_rows[1]])
                deriv_rows[2].append(
                    [v3 + a1 * v1 + a2 * v2 for v1, v2, v3 in
                     zip(eta_rows[0], eta_rows[1], eta_rows[2])])
            elif el.shape is Shape.TET:
                u = 0.5 * (1.0 - eta[1]) * (1.0 - eta[2])
                r = 2.0 / (1.0 - eta[2])
                a = (1.0 + eta[0]) / u
                rb = r * (eta[1] + 1.0) / 2.0
                deriv_rows[0].append([2.0 / u * v for v in eta_rows[0]])
                deriv_rows[1].append(
                    [a * v1 + r * v2 for v1, v2 in zip(eta_rows[0], eta_rows[1])])
                deriv_rows[2].append(
                    [a * v1 + rb * v2 + v3 for v1, v2, v3 in
                     zip(eta_rows[0], eta_rows[1], eta_rows[2])])
            else:
                for a in range(dim):
                    deriv_rows[a].append(eta_rows[a])
        mats = [np.asarray(value_rows)]
        if deriv_rows is not None:
            mats.extend(np.asarray(rows) for rows in deriv_rows)
        if d2_rows is not None:
            mats.append(np.asarray(d2_rows))
        return mats

    def __call__(self):
        mats = self.cached if self.cached is not None else self._build()
        field = self.el.field
        values = mats[0] @ field
        if self.quantity == Q_VALUE:
            return values, None, None
        dim = self.el.dim
        grads = np.stack([mats[1 + a] @ field for a in range(dim)], axis=1)
        if self.quantity == Q_VALUE_D1_D2:
            return values, grads, mats[-1] @ field
        return values, grads, None


def _make_sweep(method, evaluator, points, quantity):
    if method == METHOD_BARY:
        return _BarySweep(evaluator, points, quantity)
    return _MatrixSweep(evaluator, points, quantity,
                        recompute=method == METHOD_RECOMPUTED)


# Cross-check tolerances per component: values are forward stable, first and
# second derivatives lose digits near tightly spaced nodes.
_CHECK_TOLS = {"value": 1e-11, "d1": 1e-10, "d2": 1e-8}


def _crosscheck(evaluator, points, sweeps, quantity):
    """All methods must agree with the per-point evaluator before timing."""
    outputs = {name: sweep() for name, sweep in sweeps.items()}
    for i, xi in enumerate(points):
        if quantity == Q_VALUE_D1_D2:
            ref = evaluator.phys_evaluate_1d(xi, deriv=2)
            ref_vals = [("value", ref.value), ("d1", ref.d1[0]), ("d2", ref.d2)]
        elif quantity == Q_VALUE_D1:
            ref = evaluator.phys_evaluate(xi, gradient=True)
            ref_vals = [("value", ref.value)] + [("d1", g) for g in ref.d1]
        else:
            ref_vals = [("value", evaluator.phys_evaluate(xi).value)]
        for name, (values, grads, d2s) in outputs.items():
            got = [values[i]]
            if quantity != Q_VALUE:
                got.extend(np.atleast_1d(grads[i]))
            if quantity == Q_VALUE_D1_D2:
                got.append(d2s[i])
            for g, (kind, r) in zip(got, ref_vals):
                if abs(g - r) > _CHECK_TOLS[kind] * max(1.0, abs(r)):
                    raise InvalidInputError(
                        f"method {name} disagrees with the per-point evaluator "
                        f"({kind}) at point {xi}: {g} vs {r}"
                    )


def _time_sweep(sweep, reps, warmup=2):
    for _ in range(warmup):
        sweep()
    times = np.empty(reps)
    was_enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for i in range(reps):
            t0 = time.perf_counter_ns()
            sweep()
            times[i] = time.perf_counter_ns() - t0
    finally:
        if was_enabled:
            gc.enable()
    return float(times.mean()), float(times.std())


def _check_order(order):
    if not 2 <= order <= MAX_NODES - 2:
        raise InvalidInputError(
            f"order must lie in [2, {MAX_NODES - 2}], got {order}"
        )


def run_bench(shapes=None, orders=None, reps=None, seed=0, methods=METHODS,
              quantities=None, crosscheck=True):
    """Time all requested cells; returns a list of BenchRecord."""
    from .shapes import ALL_SHAPES

    shapes = list(shapes) if shapes else list(ALL_SHAPES)
    orders = list(orders) if orders else list(range(2, 21))
    for order in orders:
        _check_order(order)
    if reps is not None and reps < 1:
        raise InvalidInputError(f"reps must be >= 1, got {reps}")
    rng = np.random.default_rng(seed)
    records = []
    for shape in shapes:
        dim = dim_of(shape)
        cell_reps = reps if reps is not None else _DEFAULT_REPS[dim]
        points = sampling_points(shape)
        fld = benchmark_field(dim)
        for order in orders:
            basis = basis_for_order(shape, order)
            field = sample_field(shape, basis, fld.eval)
            evaluator = ElementEvaluator(shape, basis, field)
            for quantity in quantities or quantities_for(dim):
                sweeps = {
                    method: _make_sweep(method, evaluator, points, quantity)
                    for method in methods
                }
                if crosscheck:
                    extra = np.array(
                        [random_interior_point(shape, rng, margin=0.01,
                                               singular_margin=0.05)
                         for _ in range(5)]
                    )
                    check_sweeps = {
                        name: _make_sweep(name, evaluator, extra, quantity)
                        for name in sweeps
                    }
                    _crosscheck(evaluator, extra, check_sweeps, quantity)
                    _crosscheck(evaluator, points, sweeps, quantity)
                for method, sweep in sweeps.items():
                    mean_ns, std_ns = _time_sweep(sweep, cell_reps)
                    records.append(
                        BenchRecord(shape.value, order, method, quantity,
                                    len(points), cell_reps, mean_ns, std_ns)
                    )
    return records


def scaling_cells_1d(reps=150, runs=3):
    """Sweep times for 11- and 41-node segments (orders 9 and 39), value only.

    Barycentric sweeps grow roughly linearly with the node count while the
    rebuilt-matrix sweeps grow quadratically; the returned ratios feed the
    scaling-sanity checks.  Each cell takes the best of `runs` passes since
    scheduling noise only ever inflates a timing.
    """
    out = {}
    for _ in range(runs):
        for order in (9, 39):
            recs = run_bench(
                shapes=[Shape.SEGMENT], orders=[order], reps=reps,
                methods=(METHOD_BARY, METHOD_RECOMPUTED), quantities=(Q_VALUE,),
                crosscheck=False,
            )
            for r in recs:
                key = (r.method, order)
                out[key] = min(out.get(key, np.inf), r.mean_ns)
    return {
        "bary_ratio": out[(METHOD_BARY, 39)] / out[(METHOD_BARY, 9)],
        "matrix_ratio": out[(METHOD_RECOMPUTED, 39)] / out[(METHOD_RECOMPUTED, 9)],
    }


def write_csv(records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([r.shape, r.order, r.method, r.quantity,
                         r.sample_points, r.reps,
                         f"{r.mean_ns:.3f}", f"{r.stddev_ns:.3f}"])


def csv_text(records):
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(stream):
    reader = csv.DictReader(stream)
    records = []
    for row in reader:
        records.append(
            BenchRecord(
                shape=row["shape"], order=int(row["order"]), method=row["method"],
                quantity=row["quantity"], sample_points=int(row["sample_points"]),
                reps=int(row["reps"]), mean_ns=float(row["mean_ns"]),
                stddev_ns=float(row["stddev_ns"]),
            )
        )
    return records


def speedup_report(records):
    """Per-cell ratio matrix_recomputed / bary as (header, rows)."""
    if not records:
        raise ReportError("no benchmark records given")
    by_key = {}
    for r in records:
        by_key[(r.shape, r.order, r.quantity, r.method)] = r
    cells = sorted(
        {(r.shape, r.order, r.quantity) for r in records
         if r.method in (METHOD_BARY, METHOD_RECOMPUTED)},
        key=lambda c: (c[0], c[1], c[2]),
    )
    if not cells:
        raise ReportError("no bary/matrix_recomputed records given")
    rows = []
    for shape, order, quantity in cells:
        bary = by_key.get((shape, order, quantity, METHOD_BARY))
        rec = by_key.get((shape, order, quantity, METHOD_RECOMPUTED))
        if bary is None or rec is None:
            missing = METHOD_BARY if bary is None else METHOD_RECOMPUTED
            raise ReportError(
                f"cell (shape={shape}, order={order}, quantity={quantity}) "
                f"is missing the {missing} record"
            )
        rows.append((shape, order, quantity, rec.mean_ns / bary.mean_ns))
    return ["shape", "order", "quantity", "speedup"], rows


def speedup_csv(records):
    header, rows = speedup_report(records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for shape, order, quantity, ratio in rows:
        writer.writerow([shape, order, quantity, f"{ratio:.4f}"])
    return buf.getvalue()


def parse_shapes(text):
    """Parse a CLI shape list ('all' or comma-separated names)."""
    if text.strip().lower() == "all":
        from .shapes import ALL_SHAPES

        return list(ALL_SHAPES)
    return [shape_from_name(part.strip()) for part in text.split(",") if part.strip()]


def parse_orders(text):
    """Parse a CLI order range 'a..b' or comma-separated list."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidInputError(f"cannot parse orders from {text!r}") from None
