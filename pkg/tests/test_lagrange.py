import numpy as np
import pytest

from baryeval import (
    ALL_SHAPES,
    ElementEvaluator,
    FieldValues,
    InvalidInputError,
    OperatorMode,
    OutOfRegionError,
    Shape,
    SingularCollapseError,
    apply_operator,
    basis_for_order,
    basis_for_shape,
    build_operator,
    benchmark_field,
    sample_field,
    xi_grid,
)
from baryeval.fields import random_interior_point
from baryeval.lagrange import cardinal_values, cardinal_values_and_derivatives
from baryeval.shapes import dim_of


def test_segment_row_example():
    basis = basis_for_shape(Shape.SEGMENT, 3)
    op = build_operator(Shape.SEGMENT, basis, [[0.5]])
    # l0 = z(z-1)/2, l1 = 1-z^2, l2 = z(z+1)/2 at z = 0.5
    assert np.allclose(op.value_matrix[0], [-0.125, 0.75, 0.375], atol=1e-15)


def test_apply_segment_quadratic():
    basis = basis_for_shape(Shape.SEGMENT, 3)
    op = build_operator(Shape.SEGMENT, basis, [[0.5]])
    values, _ = apply_operator(op, FieldValues([1.0, 0.0, 1.0]))
    assert values[0] == pytest.approx(0.25, abs=1e-15)


@pytest.mark.parametrize("shape", ALL_SHAPES)
@pytest.mark.parametrize("order", [2, 3, 10])
def test_unit_rows_at_grid_points(shape, order):
    basis = basis_for_order(shape, order)
    grid = xi_grid(shape, basis)
    idx = [0, len(grid) // 2, len(grid) - 1]
    op = build_operator(shape, basis, grid[idx])
    for row_i, grid_i in enumerate(idx):
        want = np.zeros(basis.size)
        want[grid_i] = 1.0
        assert np.max(np.abs(op.value_matrix[row_i] - want)) <= 1e-12


@pytest.mark.parametrize("shape", ALL_SHAPES)
@pytest.mark.parametrize("order", [2, 5, 10])
def test_partition_of_unity(shape, order):
    rng = np.random.default_rng(2)
    basis = basis_for_order(shape, order)
    pts = np.array([random_interior_point(shape, rng) for _ in range(100)])
    op = build_operator(shape, basis, pts)
    assert np.max(np.abs(op.value_matrix.sum(axis=1) - 1.0)) <= 1e-12


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_values_agree_with_barycentric_path(shape):
    rng = np.random.default_rng(8)
    fld = benchmark_field(dim_of(shape))
    basis = basis_for_order(shape, 6)
    field = sample_field(shape, basis, fld.eval)
    ev = ElementEvaluator(shape, basis, field)
    pts = np.array([random_interior_point(shape, rng) for _ in range(25)])
    op = build_operator(shape, basis, pts)
    values, _ = apply_operator(op, field)
    for xi, got in zip(pts, values):
        want = ev.phys_evaluate(xi).value
        assert abs(got - want) <= 1e-11 * max(1.0, abs(want))


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_derivative_rows_match_analytic_gradient(shape):
    rng = np.random.default_rng(21)
    fld = benchmark_field(dim_of(shape))
    basis = basis_for_order(shape, 5)
    field = sample_field(shape, basis, fld.eval)
    pts = np.array([
        random_interior_point(shape, rng, margin=0.02, singular_margin=0.05)
        for _ in range(20)
    ])
    op = build_operator(shape, basis, pts, want_derivs=True)
    _, derivs = apply_operator(op, field)
    for q in range(dim_of(shape)):
        for m, xi in enumerate(pts):
            assert derivs[q, m] == pytest.approx(fld.grad(xi)[q], abs=1e-10)


def test_recomputed_mode_matches_cached():
    shape = Shape.TRI
    basis = basis_for_order(shape, 4)
    fld = benchmark_field(2)
    field = sample_field(shape, basis, fld.eval)
    pts = np.array([[-0.5, -0.5], [-0.2, 0.1], [-0.9, 0.3]])
    cached = build_operator(shape, basis, pts, want_derivs=True)
    recomputed = build_operator(shape, basis, pts, want_derivs=True,
                                mode=OperatorMode.RECOMPUTED)
    va, da = apply_operator(cached, field)
    vb, db = apply_operator(recomputed, field)
    assert np.allclose(va, vb, rtol=0, atol=1e-14)
    assert np.allclose(da, db, rtol=0, atol=1e-12)


def test_storage_counts():
    shape = Shape.QUAD
    basis = basis_for_order(shape, 6)  # 8x8 grid
    pts = np.array([[-0.3, -0.4], [0.1, 0.2], [0.5, -0.5], [0.0, 0.0]])
    op = build_operator(shape, basis, pts)
    assert op.storage_count() == 4 * 64
    op = build_operator(shape, basis, pts, want_derivs=True)
    assert op.storage_count() == (1 + 2) * 4 * 64


def test_out_of_region_point_rejected():
    basis = basis_for_order(Shape.TRI, 3)
    with pytest.raises(OutOfRegionError):
        build_operator(Shape.TRI, basis, [[0.6, 0.6]])


def test_derivative_build_at_singular_face_raises():
    basis = basis_for_order(Shape.TRI, 3)
    assert build_operator(Shape.TRI, basis, [[-1.0, 1.0]]) is not None
    with pytest.raises(SingularCollapseError):
        build_operator(Shape.TRI, basis, [[-1.0, 1.0]], want_derivs=True)


def test_apply_field_length_checked():
    basis = basis_for_order(Shape.SEGMENT, 3)
    op = build_operator(Shape.SEGMENT, basis, [[0.5]])
    with pytest.raises(InvalidInputError):
        apply_operator(op, FieldValues(np.zeros(4)))


def test_cardinal_derivatives_consistent_with_fd():
    nodes = basis_for_shape(Shape.SEGMENT, 7).axes[0].nodes
    etas = np.array([-0.83, -0.11, 0.47, 0.92])
    h = 1e-6
    cards, dcards = cardinal_values_and_derivatives(nodes, etas)
    up = cardinal_values(nodes, etas + h)
    dn = cardinal_values(nodes, etas - h)
    assert np.max(np.abs((up - dn) / (2 * h) - dcards)) <= 1e-6
    assert np.max(np.abs(cards - cardinal_values(nodes, etas))) == 0.0


def test_cardinal_derivatives_exact_at_nodes():
    # collocated queries must not divide by zero; rows reduce to the
    # differentiation matrix there
    from baryeval import make_node_set, NodeKind

    ns = make_node_set(NodeKind.GAUSS_LOBATTO_LEGENDRE, 6)
    cards, dcards = cardinal_values_and_derivatives(ns.nodes, ns.nodes)
    assert np.allclose(cards, np.eye(6), atol=1e-14)
    assert np.max(np.abs(dcards - ns.d1)) <= 1e-10
