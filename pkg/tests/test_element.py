import numpy as np
import pytest

from baryeval import (
    ALL_SHAPES,
    ElementEvaluator,
    InvalidInputError,
    NodeKind,
    OutOfRegionError,
    Shape,
    SingularCollapseError,
    axis_kinds,
    basis_for_order,
    basis_for_shape,
    make_node_set,
    benchmark_field,
    sample_field,
    xi_grid,
)
from baryeval.fields import (
    exact_multi_indices,
    monomial_field,
    random_interior_point,
)
from baryeval.shapes import dim_of
from baryeval.tensor import TensorBasis

GLL = NodeKind.GAUSS_LOBATTO_LEGENDRE
RADAU = NodeKind.GAUSS_RADAU_MINUS


def test_axis_kinds_avoid_the_singular_endpoint():
    assert axis_kinds(Shape.SEGMENT) == (GLL,)
    assert axis_kinds(Shape.QUAD) == (GLL, GLL)
    assert axis_kinds(Shape.TRI) == (GLL, RADAU)
    assert axis_kinds(Shape.HEX) == (GLL, GLL, GLL)
    assert axis_kinds(Shape.PRISM) == (GLL, RADAU, GLL)
    assert axis_kinds(Shape.PYR) == (GLL, GLL, RADAU)
    assert axis_kinds(Shape.TET) == (GLL, RADAU, RADAU)


def test_order_to_points_convention():
    basis = basis_for_order(Shape.TRI, 5)
    assert basis.counts == (7, 7)  # order P uses P + 2 points per axis


def test_tet_benchmark_field():
    fld = benchmark_field(3)
    ev = ElementEvaluator.for_order(Shape.TET, 4, fld.eval)
    res = ev.phys_evaluate([-0.5, -0.5, -0.5], gradient=True)
    assert res.value == pytest.approx(0.25, abs=1e-12)
    assert res.d1 == pytest.approx([-1.0, -1.0, 1.0], abs=1e-11)


def test_tri_benchmark_field():
    fld = benchmark_field(2)
    ev = ElementEvaluator.for_order(Shape.TRI, 4, fld.eval)
    res = ev.phys_evaluate([-0.5, -0.5], gradient=True)
    assert res.value == pytest.approx(0.5, abs=1e-12)
    assert res.d1 == pytest.approx([-1.0, -1.0], abs=1e-11)


def test_constant_field_everywhere():
    for shape in ALL_SHAPES:
        ev = ElementEvaluator.for_order(shape, 3, lambda xi: 4.5)
        xi = random_interior_point(shape, np.random.default_rng(1),
                                   singular_margin=0.05)
        res = ev.phys_evaluate(xi, gradient=True)
        assert res.value == pytest.approx(4.5, rel=1e-13)
        assert np.max(np.abs(res.d1)) <= 1e-11
        # value also works on the singular face through the degenerate branch
        if shape is Shape.TRI:
            assert ev.phys_evaluate([-1.0, 1.0]).value == pytest.approx(4.5, rel=1e-12)


def test_segment_second_derivative():
    ev = ElementEvaluator.for_order(Shape.SEGMENT, 4, lambda xi: xi[0] ** 2)
    res = ev.phys_evaluate_1d(0.5, deriv=2)
    assert res.value == pytest.approx(0.25, abs=1e-13)
    assert res.d1[0] == pytest.approx(1.0, abs=1e-12)
    assert res.d2 == pytest.approx(2.0, abs=1e-11)
    node = ev.basis.axes[0].nodes[2]
    res = ev.phys_evaluate_1d(node, deriv=2)
    assert res.value == ev.field.data[2]


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_exactness_inside_the_set(shape):
    rng = np.random.default_rng(7)
    k = 4
    basis = basis_for_shape(shape, k + 1)
    alphas = exact_multi_indices(shape, k)
    picks = rng.choice(len(alphas), min(8, len(alphas)), replace=False)
    for alpha in [alphas[i] for i in picks]:
        fld = monomial_field(alpha)
        ev = ElementEvaluator(shape, basis, sample_field(shape, basis, fld.eval))
        for _ in range(8):
            xi = random_interior_point(shape, rng, margin=1e-3)
            want = fld.eval(xi)
            got = ev.phys_evaluate(xi).value
            assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


_WITNESS = {
    Shape.SEGMENT: (5,),
    Shape.QUAD: (5, 0),
    Shape.TRI: (0, 5),
    Shape.HEX: (0, 0, 5),
    Shape.PRISM: (0, 0, 5),
    Shape.PYR: (0, 0, 5),
    Shape.TET: (0, 0, 5),
}


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_inexactness_witness(shape):
    # one constrained degree sum exceeding k by one must break exactness
    rng = np.random.default_rng(11)
    k = 4
    alpha = _WITNESS[shape]
    assert not __import__("baryeval").exactness_contains(shape, [k] * dim_of(shape), alpha)
    fld = monomial_field(alpha)
    basis = basis_for_shape(shape, k + 1)
    ev = ElementEvaluator(shape, basis, sample_field(shape, basis, fld.eval))
    errs = []
    for _ in range(10):
        xi = random_interior_point(shape, rng, margin=0.01)
        errs.append(abs(ev.phys_evaluate(xi).value - fld.eval(xi)))
    assert max(errs) > 1e-6


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_gradient_matches_finite_differences(shape):
    rng = np.random.default_rng(3)
    fld = benchmark_field(dim_of(shape))
    ev = ElementEvaluator.for_order(shape, 6, fld.eval)
    h = 1e-5
    for _ in range(8):
        xi = random_interior_point(shape, rng, margin=0.05, singular_margin=0.1)
        grad = ev.phys_evaluate(xi, gradient=True).d1
        for q in range(dim_of(shape)):
            step = np.zeros(dim_of(shape))
            step[q] = h
            fd = (fld.eval(xi + step) - fld.eval(xi - step)) / (2 * h)
            assert abs(grad[q] - fd) <= 1e-6


@pytest.mark.parametrize("shape", ALL_SHAPES)
@pytest.mark.parametrize("order", [3, 8])
def test_grid_points_return_stored_values(shape, order):
    rng = np.random.default_rng(order)
    basis = basis_for_order(shape, order)
    from baryeval import FieldValues

    field = FieldValues(rng.uniform(-1, 1, size=basis.size))
    ev = ElementEvaluator(shape, basis, field)
    grid = xi_grid(shape, basis)
    for idx in rng.choice(len(grid), min(12, len(grid)), replace=False):
        assert ev.phys_evaluate(grid[idx]).value == field.data[idx]


def test_out_of_region_rejected():
    ev = ElementEvaluator.for_order(Shape.TRI, 3, lambda xi: 0.0)
    with pytest.raises(OutOfRegionError):
        ev.phys_evaluate([0.5, 0.6])


def test_gradient_at_singular_face_raises():
    ev = ElementEvaluator.for_order(Shape.TRI, 3, lambda xi: 0.0)
    with pytest.raises(SingularCollapseError):
        ev.phys_evaluate([-1.0, 1.0], gradient=True)


def test_basis_validation():
    basis = basis_for_order(Shape.TRI, 3)
    with pytest.raises(InvalidInputError):
        ElementEvaluator(Shape.TET, basis, sample_field(Shape.TRI, basis, lambda x: 0.0))
    # a GLL axis where the collapse needs Radau is rejected (+1 is singular)
    bad = TensorBasis((make_node_set(GLL, 5), make_node_set(GLL, 5)))
    from baryeval import FieldValues

    with pytest.raises(InvalidInputError):
        ElementEvaluator(Shape.TRI, bad, FieldValues(np.zeros(25)))


def test_weight_storage_is_linear_per_axis():
    for shape in ALL_SHAPES:
        for order in (2, 5, 9):
            ev = ElementEvaluator.for_order(shape, order, lambda xi: 0.0)
            assert ev.weight_storage() == dim_of(shape) * (order + 2)


def test_phys_evaluate_1d_only_for_segments():
    ev = ElementEvaluator.for_order(Shape.QUAD, 2, lambda xi: 0.0)
    with pytest.raises(InvalidInputError):
        ev.phys_evaluate_1d(0.1)
