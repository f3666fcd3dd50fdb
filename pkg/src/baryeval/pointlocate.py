"""Inverse mapping: recover the reference coordinates whose isoparametric
image matches a target point.

Minimizes f(xi) = 0.5 * ||X(xi) - target||^2 where the coordinate maps X_i are
fields sampled on the element grid and evaluated barycentrically.  The search
uses a BFGS inverse-Hessian approximation with Armijo backtracking from a unit
step; iterates leaving the reference region are projected back onto the
violated constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .element import ElementEvaluator
from .errors import ConfigError, SingularCollapseError
from .shapes import Shape, centroid, contains_point


@dataclass(frozen=True)
class LocateConfig:
    max_iters: int = 100
    grad_tol: float = 1e-10
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5
    init: np.ndarray = None
    keep_history: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be positive, got {self.max_iters}")
        if self.grad_tol <= 0.0:
            raise ConfigError(f"grad_tol must be positive, got {self.grad_tol}")
        if not 0.0 < self.armijo_c < 1.0:
            raise ConfigError(f"armijo_c must lie in (0, 1), got {self.armijo_c}")
        if not 0.0 < self.backtrack_factor < 1.0:
            raise ConfigError(
                f"backtrack_factor must lie in (0, 1), got {self.backtrack_factor}"
            )


@dataclass(frozen=True)
class LocateProblem:
    shape: Shape
    basis: object
    coord_fields: tuple            # d FieldValues sampling the coordinate maps
    target: np.ndarray
    config: LocateConfig = LocateConfig()


@dataclass
class LocateResult:
    xi: np.ndarray
    residual: float
    iterations: int
    converged: bool
    history: list = field(default_factory=list)


# Half-space constraints a.xi <= b describing each reference region.
_CONSTRAINTS = {
    Shape.SEGMENT: [((1.0,), 1.0), ((-1.0,), 1.0)],
    Shape.QUAD: [((1, 0), 1.0), ((-1, 0), 1.0), ((0, 1), 1.0), ((0, -1), 1.0)],
    Shape.TRI: [((-1, 0), 1.0), ((0, -1), 1.0), ((1, 1), 0.0)],
    Shape.HEX: [
        ((1, 0, 0), 1.0), ((-1, 0, 0), 1.0),
        ((0, 1, 0), 1.0), ((0, -1, 0), 1.0),
        ((0, 0, 1), 1.0), ((0, 0, -1), 1.0),
    ],
    Shape.PRISM: [
        ((-1, 0, 0), 1.0), ((0, -1, 0), 1.0), ((1, 1, 0), 0.0),
        ((0, 0, 1), 1.0), ((0, 0, -1), 1.0),
    ],
    Shape.PYR: [
        ((-1, 0, 0), 1.0), ((0, -1, 0), 1.0),
        ((1, 0, 1), 0.0), ((0, 1, 1), 0.0),
        ((0, 0, 1), 1.0), ((0, 0, -1), 1.0),
    ],
    Shape.TET: [
        ((-1, 0, 0), 1.0), ((0, -1, 0), 1.0), ((0, 0, -1), 1.0),
        ((1, 1, 1), -1.0),
    ],
}


def project_into_region(shape, xi, max_passes=60):
    """Cyclic projection onto the half-spaces of the reference region.

    Cyclic projection converges slowly near sharp corners; any residual
    violation is removed by shrinking toward the centroid (the region is
    convex, so the segment to an interior point crosses the boundary once).
    """
    xi = np.array(xi, dtype=float)
    constraints = [(np.asarray(a, dtype=float), b) for a, b in _CONSTRAINTS[shape]]
    for _ in range(max_passes):
        if contains_point(shape, xi, 1e-12):
            return xi
        for a, b in constraints:
            excess = a @ xi - b
            if excess > 0.0:
                xi -= excess * a / (a @ a)
    mid = centroid(shape)
    lo, hi = 0.0, 1.0
    for _ in range(80):
        t = 0.5 * (lo + hi)
        if contains_point(shape, mid + t * (xi - mid), 1e-12):
            lo = t
        else:
            hi = t
    return mid + lo * (xi - mid)


def locate(problem):
    """Run the quasi-Newton search; see module docstring."""
    shape = problem.shape
    cfg = problem.config
    target = np.asarray(problem.target, dtype=float)
    d = len(problem.coord_fields)
    evaluators = [
        ElementEvaluator(shape, problem.basis, f) for f in problem.coord_fields
    ]
    scale = max(1.0, float(np.linalg.norm(target)))
    mid = centroid(shape)

    def coords_at(xi):
        return np.array([ev.phys_evaluate(xi).value for ev in evaluators])

    def f_of(xi):
        r = coords_at(xi) - target
        return 0.5 * float(r @ r)

    def grad_and_f(xi):
        for attempt in range(2):
            try:
                results = [ev.phys_evaluate(xi, gradient=True) for ev in evaluators]
                break
            except SingularCollapseError:
                if attempt:
                    raise
                xi = xi + 1e-9 * (mid - xi)  # step off the singular face
        x = np.array([r.value for r in results])
        jac_x = np.stack([r.d1 for r in results])  # rows are grad X_i
        r = x - target
        return 0.5 * float(r @ r), jac_x.T @ r, float(np.linalg.norm(r)), xi

    xi = np.array(cfg.init if cfg.init is not None else mid, dtype=float)
    xi = project_into_region(shape, xi)
    fval, grad, residual, xi = grad_and_f(xi)
    hinv = np.eye(d)
    history = []
    iterations = 0

    for _ in range(cfg.max_iters):
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= cfg.grad_tol * scale or fval == 0.0:
            break
        iterations += 1
        direction = -hinv @ grad
        slope = float(grad @ direction)
        if slope >= 0.0:  # stale curvature; fall back to steepest descent
            direction = -grad
            slope = -gnorm * gnorm
        alpha = 1.0
        trial, f_trial = xi, fval
        while alpha > 1e-14:
            trial = project_into_region(shape, xi + alpha * direction)
            f_trial = f_of(trial)
            if f_trial <= fval + cfg.armijo_c * alpha * slope:
                break
            alpha *= cfg.backtrack_factor
        else:
            break  # no acceptable step remains
        if cfg.keep_history:
            history.append((fval, f_trial, alpha, slope))
        step = trial - xi
        f_new, grad_new, residual, trial = grad_and_f(trial)
        y = grad_new - grad
        ys = float(y @ step)
        if ys > 1e-12 * np.linalg.norm(y) * np.linalg.norm(step):
            rho = 1.0 / ys
            outer = np.outer(step, y)
            hinv = (np.eye(d) - rho * outer) @ hinv @ (np.eye(d) - rho * outer.T)
            hinv += rho * np.outer(step, step)
        xi, fval, grad = trial, f_new, grad_new

    gnorm = float(np.linalg.norm(grad))
    converged = (
        gnorm <= cfg.grad_tol * scale
        and residual <= np.sqrt(2.0 * cfg.grad_tol * scale)
    )
    return LocateResult(xi, residual, iterations, converged, history)
