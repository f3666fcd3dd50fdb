"""Reference shapes built from coordinate collapses of the cube.

Each non-tensorial shape is the image of [-1,1]^d under a composition of
two-dimensional collapse maps; `collapse` inverts that map (cube coordinates
eta from region coordinates xi), `expand` applies it.  The collapse pairs
(a, b) record which dimension collapses along which, and the ancestor sets
g(q) record which polynomial degrees accumulate onto dimension q under the
composition; they determine the monomial exactness set tested by
`exactness_contains`.

Reference regions:

    segment            xi_1 in [-1, 1]
    quad / hex         |xi_q| <= 1
    triangle           xi_1, xi_2 >= -1,  xi_1 + xi_2 <= 0
    prism              triangle in (xi_1, xi_2), |xi_3| <= 1
    pyramid            xi_1, xi_2 >= -1, xi_1 + xi_3 <= 0, xi_2 + xi_3 <= 0,
                       |xi_3| <= 1
    tetrahedron        xi_q >= -1,  xi_1 + xi_2 + xi_3 <= -1
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, OutOfRegionError, SingularCollapseError

# A collapse denominator smaller than this is treated as singular.
SINGULAR_TOL = 1e-12


class Shape(enum.Enum):
    SEGMENT = "segment"
    QUAD = "quad"
    TRI = "tri"
    HEX = "hex"
    PRISM = "prism"
    PYR = "pyr"
    TET = "tet"


@dataclass(frozen=True)
class ShapeSpec:
    shape: Shape
    dim: int
    duffy_pairs: tuple        # ((a, b), ...) collapse pairs, a collapses along b
    ancestor_sets: tuple      # g(1), ..., g(d) as frozensets of dimensions
    vertices: tuple           # corner points of the reference region


SHAPE_SPECS = {
    Shape.SEGMENT: ShapeSpec(
        Shape.SEGMENT, 1, (), (frozenset({1}),), ((-1.0,), (1.0,))
    ),
    Shape.QUAD: ShapeSpec(
        Shape.QUAD, 2, (), (frozenset({1}), frozenset({2})),
        ((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)),
    ),
    Shape.TRI: ShapeSpec(
        Shape.TRI, 2, ((1, 2),), (frozenset({1}), frozenset({1, 2})),
        ((-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)),
    ),
    Shape.HEX: ShapeSpec(
        Shape.HEX, 3, (), (frozenset({1}), frozenset({2}), frozenset({3})),
        tuple((x, y, z) for z in (-1.0, 1.0) for y in (-1.0, 1.0) for x in (-1.0, 1.0)),
    ),
    Shape.PRISM: ShapeSpec(
        Shape.PRISM, 3, ((1, 2),),
        (frozenset({1}), frozenset({1, 2}), frozenset({3})),
        tuple((x, y, z) for z in (-1.0, 1.0) for (x, y) in ((-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0))),
    ),
    Shape.PYR: ShapeSpec(
        Shape.PYR, 3, ((1, 3), (2, 3)),
        (frozenset({1}), frozenset({2}), frozenset({1, 2, 3})),
        ((-1.0, -1.0, -1.0), (1.0, -1.0, -1.0), (1.0, 1.0, -1.0),
         (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)),
    ),
    Shape.TET: ShapeSpec(
        Shape.TET, 3, ((1, 2), (2, 3)),
        (frozenset({1}), frozenset({1, 2}), frozenset({1, 2, 3})),
        ((-1.0, -1.0, -1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0),
         (-1.0, -1.0, 1.0)),
    ),
}

ALL_SHAPES = tuple(SHAPE_SPECS)


def spec_for(shape):
    return SHAPE_SPECS[shape]


def shape_from_name(name):
    try:
        return Shape(name)
    except ValueError:
        raise InvalidInputError(
            f"unknown shape {name!r}; expected one of "
            + ", ".join(s.value for s in Shape)
        ) from None


def dim_of(shape):
    return SHAPE_SPECS[shape].dim


def centroid(shape):
    """Vertex average; an interior point for every reference region."""
    return np.asarray(SHAPE_SPECS[shape].vertices, dtype=float).mean(axis=0)


def contains_point(shape, xi, tol):
    """Whether xi lies in the reference region, inflated by tol."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if len(xi) != dim_of(shape):
        raise InvalidInputError(f"point has dim {len(xi)}, shape needs {dim_of(shape)}")
    lo = -1.0 - tol
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return bool(np.all(np.abs(xi) <= 1.0 + tol))
    if shape == Shape.TRI:
        return xi[0] >= lo and xi[1] >= lo and xi[0] + xi[1] <= tol
    if shape == Shape.PRISM:
        return (xi[0] >= lo and xi[1] >= lo and xi[0] + xi[1] <= tol
                and abs(xi[2]) <= 1.0 + tol)
    if shape == Shape.PYR:
        return (xi[0] >= lo and xi[1] >= lo
                and xi[0] + xi[2] <= tol and xi[1] + xi[2] <= tol
                and abs(xi[2]) <= 1.0 + tol)
    if shape == Shape.TET:
        return bool(np.all(xi >= lo)) and xi[0] + xi[1] + xi[2] <= -1.0 + tol
    raise InvalidInputError(f"unknown shape {shape!r}")


def _collapse_coord(numer, den):
    """2*numer/den - 1, or -1 on the singular face den = 0."""
    if abs(den) < SINGULAR_TOL:
        return -1.0
    return 2.0 * numer / den - 1.0


def collapse(shape, xi, region_tol=1e-10):
    """Map a region point xi to cube coordinates eta (inverse of expand).

    On singular faces the collapsed coordinate degenerates to -1 and the
    remaining coordinates are kept.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if not contains_point(shape, xi, region_tol):
        raise OutOfRegionError(f"{xi} lies outside the {shape.value} reference region")
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return xi.copy()
    if shape == Shape.TRI:
        if abs(1.0 - xi[1]) < SINGULAR_TOL:
            return np.array([-1.0, 1.0])
        return np.array([_collapse_coord(1.0 + xi[0], 1.0 - xi[1]), xi[1]])
    if shape == Shape.PRISM:
        return np.array(
            [_collapse_coord(1.0 + xi[0], 1.0 - xi[1]), xi[1], xi[2]]
        )
    if shape == Shape.PYR:
        den = 1.0 - xi[2]
        return np.array(
            [_collapse_coord(1.0 + xi[0], den), _collapse_coord(1.0 + xi[1], den), xi[2]]
        )
    if shape == Shape.TET:
        return np.array(
            [
                _collapse_coord(1.0 + xi[0], -xi[1] - xi[2]),
                _collapse_coord(1.0 + xi[1], 1.0 - xi[2]),
                xi[2],
            ]
        )
    raise InvalidInputError(f"unknown shape {shape!r}")


def expand(shape, eta):
    """Map cube coordinates eta to region coordinates xi (inverse of collapse)."""
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    if len(eta) != dim_of(shape):
        raise InvalidInputError(f"point has dim {len(eta)}, shape needs {dim_of(shape)}")
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return eta.copy()
    if shape == Shape.TRI:
        return np.array([0.5 * (1.0 + eta[0]) * (1.0 - eta[1]) - 1.0, eta[1]])
    if shape == Shape.PRISM:
        return np.array(
            [0.5 * (1.0 + eta[0]) * (1.0 - eta[1]) - 1.0, eta[1], eta[2]]
        )
    if shape == Shape.PYR:
        half = 0.5 * (1.0 - eta[2])
        return np.array(
            [(1.0 + eta[0]) * half - 1.0, (1.0 + eta[1]) * half - 1.0, eta[2]]
        )
    if shape == Shape.TET:
        xi2 = 0.5 * (1.0 + eta[1]) * (1.0 - eta[2]) - 1.0
        xi1 = 0.25 * (1.0 + eta[0]) * (1.0 - eta[1]) * (1.0 - eta[2]) - 1.0
        return np.array([xi1, xi2, eta[2]])
    raise InvalidInputError(f"unknown shape {shape!r}")


def ancestors(shape, q):
    """The set of dimensions whose degrees accumulate onto dimension q."""
    spec = SHAPE_SPECS[shape]
    if not 1 <= q <= spec.dim:
        raise InvalidInputError(f"dimension index {q} out of range 1..{spec.dim}")
    return spec.ancestor_sets[q - 1]


def exactness_contains(shape, k, alpha):
    """Whether the monomial xi^alpha is evaluated exactly on a degree-k grid.

    True iff sum_{j in g(q)} alpha_j <= k_q for every dimension q.
    """
    spec = SHAPE_SPECS[shape]
    k = np.broadcast_to(np.asarray(k, dtype=int), (spec.dim,))
    alpha = np.asarray(alpha, dtype=int)
    if len(alpha) != spec.dim:
        raise InvalidInputError(f"alpha has dim {len(alpha)}, shape needs {spec.dim}")
    for q in range(1, spec.dim + 1):
        if sum(alpha[j - 1] for j in spec.ancestor_sets[q - 1]) > k[q - 1]:
            return False
    return True


def contains_batch(shape, xis, tol):
    """Vectorized contains_point over an (M, d) array of points."""
    xis = np.asarray(xis, dtype=float)
    lo = -1.0 - tol
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return np.all(np.abs(xis) <= 1.0 + tol, axis=1)
    if shape == Shape.TRI:
        return (xis >= lo).all(axis=1) & (xis[:, 0] + xis[:, 1] <= tol)
    if shape == Shape.PRISM:
        return ((xis[:, :2] >= lo).all(axis=1)
                & (xis[:, 0] + xis[:, 1] <= tol)
                & (np.abs(xis[:, 2]) <= 1.0 + tol))
    if shape == Shape.PYR:
        return ((xis[:, :2] >= lo).all(axis=1)
                & (xis[:, 0] + xis[:, 2] <= tol)
                & (xis[:, 1] + xis[:, 2] <= tol)
                & (np.abs(xis[:, 2]) <= 1.0 + tol))
    if shape == Shape.TET:
        return (xis >= lo).all(axis=1) & (xis.sum(axis=1) <= -1.0 + tol)
    raise InvalidInputError(f"unknown shape {shape!r}")


def _collapse_coord_batch(numer, den):
    safe = np.where(np.abs(den) < SINGULAR_TOL, 1.0, den)
    return np.where(np.abs(den) < SINGULAR_TOL, -1.0, 2.0 * numer / safe - 1.0)


def collapse_batch(shape, xis):
    """Vectorized collapse over an (M, d) array of in-region points."""
    xis = np.asarray(xis, dtype=float)
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return xis.copy()
    if shape == Shape.TRI:
        eta1 = _collapse_coord_batch(1.0 + xis[:, 0], 1.0 - xis[:, 1])
        eta2 = np.where(np.abs(1.0 - xis[:, 1]) < SINGULAR_TOL, 1.0, xis[:, 1])
        return np.stack([eta1, eta2], axis=1)
    if shape == Shape.PRISM:
        eta1 = _collapse_coord_batch(1.0 + xis[:, 0], 1.0 - xis[:, 1])
        return np.stack([eta1, xis[:, 1], xis[:, 2]], axis=1)
    if shape == Shape.PYR:
        den = 1.0 - xis[:, 2]
        return np.stack(
            [
                _collapse_coord_batch(1.0 + xis[:, 0], den),
                _collapse_coord_batch(1.0 + xis[:, 1], den),
                xis[:, 2],
            ],
            axis=1,
        )
    if shape == Shape.TET:
        return np.stack(
            [
                _collapse_coord_batch(1.0 + xis[:, 0], -xis[:, 1] - xis[:, 2]),
                _collapse_coord_batch(1.0 + xis[:, 1], 1.0 - xis[:, 2]),
                xis[:, 2],
            ],
            axis=1,
        )
    raise InvalidInputError(f"unknown shape {shape!r}")


def jacobian_batch(shape, etas, eps_sing=SINGULAR_TOL):
    """Vectorized jacobian over an (M, d) array of cube points."""
    etas = np.asarray(etas, dtype=float)
    m, d = etas.shape
    jac = np.tile(np.eye(d), (m, 1, 1))
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return jac
    if shape in (Shape.TRI, Shape.PRISM):
        den = 1.0 - etas[:, 1]
        if np.any(np.abs(den) < eps_sing):
            raise SingularCollapseError("collapse singular at a batch point")
        jac[:, 0, 0] = 2.0 / den
        jac[:, 0, 1] = jac[:, 0, 0] * (etas[:, 0] + 1.0) / 2.0
        return jac
    if shape == Shape.PYR:
        den = 1.0 - etas[:, 2]
        if np.any(np.abs(den) < eps_sing):
            raise SingularCollapseError("collapse singular at a batch point")
        g = 2.0 / den
        jac[:, 0, 0] = g
        jac[:, 0, 2] = g * (etas[:, 0] + 1.0) / 2.0
        jac[:, 1, 1] = g
        jac[:, 1, 2] = g * (etas[:, 1] + 1.0) / 2.0
        return jac
    if shape == Shape.TET:
        u = 0.5 * (1.0 - etas[:, 1]) * (1.0 - etas[:, 2])
        den = 1.0 - etas[:, 2]
        if np.any(np.abs(u) < eps_sing) or np.any(np.abs(den) < eps_sing):
            raise SingularCollapseError("collapse singular at a batch point")
        jac[:, 0, 0] = 2.0 / u
        jac[:, 0, 1] = (1.0 + etas[:, 0]) / u
        jac[:, 0, 2] = jac[:, 0, 1]
        jac[:, 1, 1] = 2.0 / den
        jac[:, 1, 2] = (1.0 + etas[:, 1]) / den
        return jac
    raise InvalidInputError(f"unknown shape {shape!r}")


def jacobian(shape, eta, eps_sing=SINGULAR_TOL):
    """Jacobian d(eta_i)/d(xi_j) of the collapse map, expressed in eta.

    Well defined only away from singular faces (every collapse denominator at
    least eps_sing in magnitude).
    """
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    d = dim_of(shape)
    if len(eta) != d:
        raise InvalidInputError(f"point has dim {len(eta)}, shape needs {d}")
    if shape in (Shape.SEGMENT, Shape.QUAD, Shape.HEX):
        return np.eye(d)
    if shape in (Shape.TRI, Shape.PRISM):
        den = 1.0 - eta[1]
        if abs(den) < eps_sing:
            raise SingularCollapseError(f"collapse singular at eta={eta}")
        g1 = 2.0 / den
        g2 = g1 * (eta[0] + 1.0) / 2.0
        jac = np.eye(d)
        jac[0, 0] = g1
        jac[0, 1] = g2
        return jac
    if shape == Shape.PYR:
        den = 1.0 - eta[2]
        if abs(den) < eps_sing:
            raise SingularCollapseError(f"collapse singular at eta={eta}")
        g = 2.0 / den
        jac = np.eye(3)
        jac[0, 0] = g
        jac[0, 2] = g * (eta[0] + 1.0) / 2.0
        jac[1, 1] = g
        jac[1, 2] = g * (eta[1] + 1.0) / 2.0
        return jac
    if shape == Shape.TET:
        u = 0.5 * (1.0 - eta[1]) * (1.0 - eta[2])  # equals -xi_2 - xi_3
        den = 1.0 - eta[2]
        if abs(u) < eps_sing or abs(den) < eps_sing:
            raise SingularCollapseError(f"collapse singular at eta={eta}")
        jac = np.eye(3)
        jac[0, 0] = 2.0 / u
        jac[0, 1] = (1.0 + eta[0]) / u
        jac[0, 2] = (1.0 + eta[0]) / u
        jac[1, 1] = 2.0 / den
        jac[1, 2] = (1.0 + eta[1]) / den
        return jac
    raise InvalidInputError(f"unknown shape {shape!r}")
