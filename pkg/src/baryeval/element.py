"""Shape-aware arbitrary-point evaluation.

An ElementEvaluator owns a shape, a tensor basis and a field sampled on the
shape's grid.  Evaluation collapses the query point to cube coordinates, runs
the tensor kernel there and maps gradients back with the collapse Jacobian:

    grad_xi p = J^T grad_eta p,    J[i, j] = d(eta_i)/d(xi_j).

Axes that appear as the `along` dimension of a collapse pair use Radau points
anchored at -1 so that no grid node touches the singular value +1; all other
axes use Gauss-Lobatto-Legendre points.  "Order P" bases carry P + 2 points
per axis.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, OutOfRegionError
from .kernel import EvalResult, _kernel
from .nodes import NodeKind, make_node_set
from .shapes import Shape, collapse, contains_point, dim_of, expand, jacobian, spec_for
from .tensor import FieldValues, TensorBasis, eta_grid, tensor_evaluate

REGION_TOL = 1e-10

# Collapse arithmetic perturbs grid-point preimages by a few ulps (amplified
# near collapsed vertices); snapping onto a basis node within this distance
# restores the exact collocation branch.  The value perturbation for genuinely
# distinct points is below 1e-12 times the field derivative.
SNAP_TOL = 1e-12


def _snap_to_nodes(basis, eta):
    for q, ax in enumerate(basis.axes):
        j = int(np.argmin(np.abs(ax.nodes - eta[q])))
        if abs(ax.nodes[j] - eta[q]) <= SNAP_TOL:
            eta[q] = ax.nodes[j]
    return eta


def axis_kinds(shape):
    """Node family per axis: Radau on collapsed `along` axes, GLL elsewhere."""
    spec = spec_for(shape)
    along = {b for _, b in spec.duffy_pairs}
    return tuple(
        NodeKind.GAUSS_RADAU_MINUS if q in along else NodeKind.GAUSS_LOBATTO_LEGENDRE
        for q in range(1, spec.dim + 1)
    )


def basis_for_shape(shape, num_points):
    """Isotropic basis with `num_points` nodes per axis, shape-appropriate kinds."""
    kinds = axis_kinds(shape)
    return TensorBasis(tuple(make_node_set(kind, num_points) for kind in kinds))


def basis_for_order(shape, order):
    """Basis for polynomial order P, using P + 2 points per axis."""
    if order < 0:
        raise InvalidInputError(f"order must be non-negative, got {order}")
    return basis_for_shape(shape, order + 2)


def xi_grid(shape, basis):
    """The basis grid mapped into the reference region, field ordering."""
    return np.array([expand(shape, eta) for eta in eta_grid(basis)])


def sample_field(shape, basis, func):
    """Sample func(xi) on the shape's grid into FieldValues."""
    return FieldValues(np.array([func(xi) for xi in xi_grid(shape, basis)]))


class ElementEvaluator:
    """Arbitrary-point evaluation of one field on one reference element."""

    def __init__(self, shape, basis, field):
        if basis.dim != dim_of(shape):
            raise InvalidInputError(
                f"basis dim {basis.dim} does not match {shape.value} dim {dim_of(shape)}"
            )
        if len(field) != basis.size:
            raise InvalidInputError(
                f"field has {len(field)} values, grid has {basis.size}"
            )
        along = {b for _, b in spec_for(shape).duffy_pairs}
        for q in along:
            if basis.axes[q - 1].nodes[-1] >= 1.0:
                raise InvalidInputError(
                    f"axis {q} of a {shape.value} basis must exclude +1 "
                    "(collapse singularity)"
                )
        self.shape = shape
        self.basis = basis
        self.field = field

    @classmethod
    def for_order(cls, shape, order, func):
        """Build an evaluator of order P sampling func on the element grid."""
        basis = basis_for_order(shape, order)
        return cls(shape, basis, sample_field(shape, basis, func))

    def weight_storage(self):
        """Persistent barycentric-weight storage: sum of n_q, not prod n_q."""
        return sum(ax.n for ax in self.basis.axes)

    def phys_evaluate(self, xi, gradient=False):
        """Value (and gradient) at a region point xi.

        Value-only queries succeed on singular faces through the degenerate
        collapse branch; gradient queries there raise SingularCollapseError.
        """
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if not contains_point(self.shape, xi, REGION_TOL):
            raise OutOfRegionError(
                f"{xi} lies outside the {self.shape.value} reference region"
            )
        eta = _snap_to_nodes(self.basis, collapse(self.shape, xi))
        if not gradient:
            return tensor_evaluate(self.basis, self.field, eta, gradient=False)
        jac = jacobian(self.shape, eta)
        res = tensor_evaluate(self.basis, self.field, eta, gradient=True)
        return EvalResult(res.value, jac.T @ res.d1)

    def phys_evaluate_1d(self, xi, deriv=0):
        """Segment evaluation with derivatives up to order 2."""
        if self.shape is not Shape.SEGMENT:
            raise InvalidInputError("phys_evaluate_1d applies to segments only")
        xi = float(np.atleast_1d(np.asarray(xi, dtype=float))[0])
        if not contains_point(self.shape, [xi], REGION_TOL):
            raise OutOfRegionError(f"{xi} lies outside [-1, 1]")
        value, d1, d2 = _kernel(self.basis.axes[0], self.field.data, xi, deriv)
        return EvalResult(
            value,
            np.array([d1]) if deriv >= 1 else None,
            d2 if deriv >= 2 else None,
        )
