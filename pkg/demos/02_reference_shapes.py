"""Reference shapes and coordinate collapses.

Each non-tensorial shape (triangle, prism, pyramid, tetrahedron) is the image
of the cube under a composition of coordinate collapses.  This script shows
the collapse and its inverse, the region predicates, and how the per-shape
ancestor sets determine which monomials a tensor grid reproduces exactly.
"""

import numpy as np

from baryeval import (
    ALL_SHAPES,
    Shape,
    ancestors,
    collapse,
    contains_point,
    exactness_contains,
    expand,
    jacobian,
)
from baryeval.fields import exact_multi_indices
from baryeval.shapes import dim_of

print("collapse pairs and ancestor sets")
for shape in ALL_SHAPES:
    g = {q: sorted(ancestors(shape, q)) for q in range(1, dim_of(shape) + 1)}
    print(f"  {shape.value:8s} g = {g}")

print("\ntriangle: region point -> cube point and back")
for xi in ([-0.5, 0.0], [-0.9, 0.6], [-1.0, 1.0]):
    eta = collapse(Shape.TRI, xi)
    print(f"  xi = {np.round(xi, 3)}  ->  eta = {np.round(eta, 6)}"
          f"  ->  xi = {np.round(expand(Shape.TRI, eta), 6)}")
print("  the top vertex (-1, 1) is the degenerate edge of the collapse")

print("\nregion membership (tetrahedron: coordinates >= -1, sum <= -1)")
for xi in ([-0.5, -0.5, -0.5], [0.1, 0.2, -0.3]):
    print(f"  {xi} inside: {contains_point(Shape.TET, xi, 0.0)}")

print("\ncollapse jacobian at the triangle center:")
print(np.round(jacobian(Shape.TRI, collapse(Shape.TRI, [-1 / 3, -1 / 3])), 4))

print("\nmonomial exactness on a degree-4 grid:")
print("  triangle accepts x1^2 x2^2:", exactness_contains(Shape.TRI, [4, 4], [2, 2]))
print("  triangle rejects x1^2 x2^3:", exactness_contains(Shape.TRI, [4, 4], [2, 3]))
sizes = {s.value: len(exact_multi_indices(s, 4)) for s in ALL_SHAPES}
print("  exact-set sizes at k = 4:", sizes)
