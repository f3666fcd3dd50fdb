"""Tensor-product evaluation on the [-1,1]^d orthotope by dimension-by-dimension
contraction, plus the direct multivariate barycentric form used as a slow oracle.

Field samples are stored flat with the dimension-1 index running fastest: the
line for fixed (j2, j3) starts at offset (j3*n2 + j2)*n1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CollocationError, InvalidInputError
from .kernel import EvalResult, _collocated_index, _kernel, _kernel_lines


@dataclass(frozen=True)
class TensorBasis:
    """Per-dimension node sets defining a tensor grid (d = 1, 2 or 3)."""

    axes: tuple

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 3:
            raise InvalidInputError(f"dimension must be 1..3, got {len(self.axes)}")

    @property
    def dim(self):
        return len(self.axes)

    @property
    def counts(self):
        return tuple(ax.n for ax in self.axes)

    @property
    def size(self):
        return int(np.prod(self.counts))


@dataclass(frozen=True)
class FieldValues:
    """Flat array of field samples on the tensor grid, dimension-1 fastest."""

    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", np.asarray(self.data, dtype=float))
        self.data.setflags(write=False)

    def __len__(self):
        return len(self.data)


def eta_grid(basis):
    """All grid points as an (N, d) array in field ordering."""
    counts = basis.counts
    axes_1d = [ax.nodes for ax in basis.axes]
    # Reversed meshgrid so that dimension 1 varies fastest in the flat order.
    mesh = np.meshgrid(*axes_1d[::-1], indexing="ij")[::-1]
    return np.stack([m.ravel() for m in mesh], axis=1)


def sample_on_grid(basis, func):
    """Sample func(eta) on the tensor grid into FieldValues."""
    pts = eta_grid(basis)
    return FieldValues(np.array([func(p) for p in pts]))


def _check_field(basis, fieldvalues):
    if len(fieldvalues) != basis.size:
        raise InvalidInputError(
            f"field has {len(fieldvalues)} values, grid has {basis.size}"
        )


def tensor_evaluate(basis, fieldvalues, eta, gradient=False):
    """Evaluate the tensor interpolant (and its gradient) at one point.

    The contraction runs dimension 1 first: each eta_1 line is reduced with the
    univariate kernel, then the resulting value/derivative lines are reduced
    along eta_2, then eta_3.  With gradients this takes n2 + 2 kernel calls in
    2D and n2*n3 + 2*n3 + 3 in 3D (value only: n2 + 1 and n2*n3 + n3 + 1).
    """
    _check_field(basis, fieldvalues)
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    if len(eta) != basis.dim:
        raise InvalidInputError(f"point has dim {len(eta)}, basis dim {basis.dim}")
    want = 1 if gradient else 0
    d = basis.dim

    if d == 1:
        value, d1, _ = _kernel(basis.axes[0], fieldvalues.data, eta[0], want)
        return EvalResult(value, np.array([d1]) if gradient else None)

    if d == 2:
        ax1, ax2 = basis.axes
        lines = fieldvalues.data.reshape(ax2.n, ax1.n)
        vals, d1s = _kernel_lines(ax1, lines, eta[0], want)  # n2 reductions
        if not gradient:
            value, _, _ = _kernel(ax2, vals, eta[1], 0)
            return EvalResult(value)
        dp1, _, _ = _kernel(ax2, d1s, eta[1], 0)
        value, dp2, _ = _kernel(ax2, vals, eta[1], 1)
        return EvalResult(value, np.array([dp1, dp2]))

    ax1, ax2, ax3 = basis.axes
    stacked = fieldvalues.data.reshape(ax3.n * ax2.n, ax1.n)
    vals, d1s = _kernel_lines(ax1, stacked, eta[0], want)  # n2*n3 reductions
    vals = vals.reshape(ax3.n, ax2.n)
    if not gradient:
        v3, _ = _kernel_lines(ax2, vals, eta[1], 0)  # n3 reductions
        value, _, _ = _kernel(ax3, v3, eta[2], 0)
        return EvalResult(value)
    da, _ = _kernel_lines(ax2, d1s.reshape(ax3.n, ax2.n), eta[1], 0)
    v3, db = _kernel_lines(ax2, vals, eta[1], 1)
    dp1, _, _ = _kernel(ax3, da, eta[2], 0)
    dp2, _, _ = _kernel(ax3, db, eta[2], 0)
    value, dp3, _ = _kernel(ax3, v3, eta[2], 1)
    return EvalResult(value, np.array([dp1, dp2, dp3]))


def multi_bary_direct(basis, fieldvalues, eta):
    """Direct multivariate barycentric ratio with product weights.

    Slow O(N) oracle for tensor_evaluate; undefined on grid lines.
    """
    _check_field(basis, fieldvalues)
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    if len(eta) != basis.dim:
        raise InvalidInputError(f"point has dim {len(eta)}, basis dim {basis.dim}")
    per_axis = []
    for q, ax in enumerate(basis.axes):
        if _collocated_index(ax.nodes, eta[q]) >= 0:
            raise CollocationError(
                f"coordinate {q + 1} of {eta} lies on a grid line"
            )
        per_axis.append(ax.weights / (eta[q] - ax.nodes))
    # Full tensor of product weights over differences, dimension 1 fastest.
    terms = per_axis[0]
    for a in per_axis[1:]:
        terms = np.multiply.outer(a, terms)
    terms = terms.ravel()
    return float((fieldvalues.data * terms).sum() / terms.sum())
