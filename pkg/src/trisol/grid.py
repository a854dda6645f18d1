"""Uniform Dirichlet grids on an interval or rectangle.

Fields store interior node values only; the homogeneous Dirichlet boundary
is implicit.  The negative Laplacian is the standard 3-point (1D) or
5-point (2D) second-order stencil, quadrature is composite midpoint with
weight h^d per interior node, and the Poisson solver is plain conjugate
gradients on the stencil.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

QUADRATURE_KINDS = ("integral", "l2_norm", "sup_norm", "h1_seminorm")


class DomainMismatchError(ValueError):
    """A field was used with a domain it does not belong to."""


class PoissonSolveError(RuntimeError):
    """Conjugate gradients hit the iteration cap before reaching tolerance."""

    def __init__(self, iterations: int, residual: float, target: float):
        self.iterations = iterations
        self.residual = residual
        self.target = target
        super().__init__(
            f"Poisson solve did not converge: {iterations} iterations, "
            f"residual {residual:.3e} > target {target:.3e}"
        )


@dataclass(frozen=True)
class DomainSpec:
    """An interval (0, L) or rectangle (0, W) x (0, H) with a uniform grid.

    Parameters
    ----------
    lengths : tuple of float
        Side lengths, one per axis.
    counts : tuple of int
        Interior node count per axis; spacing is length / (count + 1).
    """

    lengths: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.lengths) not in (1, 2) or len(self.lengths) != len(self.counts):
            raise ValueError("domain must be a 1D interval or 2D rectangle")
        if any(L <= 0 for L in self.lengths):
            raise ValueError("all side lengths must be positive")
        if any(int(n) != n or n < 3 for n in self.counts):
            raise ValueError("interior counts must be integers >= 3")
        object.__setattr__(self, "lengths", tuple(float(L) for L in self.lengths))
        object.__setattr__(self, "counts", tuple(int(n) for n in self.counts))

    @classmethod
    def interval(cls, length: float, n: int) -> "DomainSpec":
        return cls((length,), (n,))

    @classmethod
    def rectangle(cls, width: float, height: float, nx: int, ny: int) -> "DomainSpec":
        return cls((width, height), (nx, ny))

    @property
    def ndim(self) -> int:
        return len(self.lengths)

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(L / (n + 1) for L, n in zip(self.lengths, self.counts))

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    @property
    def cell_volume(self) -> float:
        """Quadrature weight h^d of one interior node."""
        return float(np.prod(self.spacings))

    def axes(self) -> tuple[np.ndarray, ...]:
        """Interior node coordinates along each axis."""
        return tuple(
            np.linspace(h, L - h, n)
            for L, n, h in zip(self.lengths, self.counts, self.spacings)
        )

    def describe(self) -> dict:
        kind = "interval" if self.ndim == 1 else "rectangle"
        return {
            "kind": kind,
            "lengths": list(self.lengths),
            "counts": list(self.counts),
            "spacings": list(self.spacings),
        }


@dataclass(frozen=True, eq=False)
class Field:
    """Real values on the interior nodes of a domain, row-major in 2D.

    Boundary values are identically zero and never stored.  Treat instances
    as immutable; arithmetic returns new fields.
    """

    domain: DomainSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size != self.domain.size:
            raise ValueError(
                f"expected {self.domain.size} interior values, got {vals.size}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must all be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, domain: DomainSpec) -> "Field":
        return cls(domain, np.zeros(domain.size))

    @classmethod
    def from_callable(cls, domain: DomainSpec, fn: Callable) -> "Field":
        """Sample fn(x) or fn(x, y) on the interior nodes."""
        axes = domain.axes()
        if domain.ndim == 1:
            return cls(domain, fn(axes[0]))
        X, Y = np.meshgrid(axes[0], axes[1], indexing="ij")
        return cls(domain, fn(X, Y).ravel())

    def reshaped(self) -> np.ndarray:
        """Values arranged on the grid, shape = interior counts."""
        return self.values.reshape(self.domain.counts)

    def __add__(self, other: "Field") -> "Field":
        _check_same_domain(self.domain, other)
        return Field(self.domain, self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        _check_same_domain(self.domain, other)
        return Field(self.domain, self.values - other.values)

    def __mul__(self, c: float) -> "Field":
        return Field(self.domain, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self) -> "Field":
        return Field(self.domain, -self.values)


def _check_same_domain(domain: DomainSpec, u: Field) -> None:
    if u.domain != domain:
        raise DomainMismatchError(
            f"field domain {u.domain} does not match {domain}"
        )


def neg_laplacian_values(domain: DomainSpec, values: np.ndarray) -> np.ndarray:
    """Stencil application on a raw interior-value array."""
    if domain.ndim == 1:
        (h,) = domain.spacings
        p = np.concatenate(([0.0], values, [0.0]))
        return (2.0 * values - p[:-2] - p[2:]) / (h * h)
    hx, hy = domain.spacings
    v = values.reshape(domain.counts)
    p = np.pad(v, 1)
    out = (2.0 * v - p[:-2, 1:-1] - p[2:, 1:-1]) / (hx * hx)
    out += (2.0 * v - p[1:-1, :-2] - p[1:-1, 2:]) / (hy * hy)
    return out.ravel()


def apply_neg_laplacian(domain: DomainSpec, u: Field) -> Field:
    """Apply the discrete negative Laplacian with zero Dirichlet padding.

    In 1D this is (2 u_i - u_{i-1} - u_{i+1}) / h^2; in 2D the analogous
    5-point sum over both axes.
    """
    _check_same_domain(domain, u)
    return Field(domain, neg_laplacian_values(domain, u.values))


def h1_seminorm_sq_values(domain: DomainSpec, values: np.ndarray) -> float:
    """Squared discrete H1 seminorm, as the sum of squared forward differences.

    Includes the one-sided differences to the zero boundary; by summation by
    parts this equals h^d <u, -lap u> up to rounding.
    """
    if domain.ndim == 1:
        (h,) = domain.spacings
        d = np.diff(np.concatenate(([0.0], values, [0.0])))
        return float(np.sum(d * d) / h)
    hx, hy = domain.spacings
    v = np.pad(values.reshape(domain.counts), 1)
    dx = np.diff(v, axis=0)[:, 1:-1]
    dy = np.diff(v, axis=1)[1:-1, :]
    vol = domain.cell_volume
    return float(vol * (np.sum(dx * dx) / (hx * hx) + np.sum(dy * dy) / (hy * hy)))


def quadrature(domain: DomainSpec, u: Field, kind: str) -> float:
    """Discrete integral or norm of a field.

    kind is one of "integral" (h^d sum of values), "l2_norm", "sup_norm",
    or "h1_seminorm".
    """
    _check_same_domain(domain, u)
    vals = u.values
    vol = domain.cell_volume
    if kind == "integral":
        return float(vol * np.sum(vals))
    if kind == "l2_norm":
        return float(np.sqrt(vol * np.sum(vals * vals)))
    if kind == "sup_norm":
        return float(np.max(np.abs(vals))) if vals.size else 0.0
    if kind == "h1_seminorm":
        return float(np.sqrt(h1_seminorm_sq_values(domain, vals)))
    raise ValueError(f"unknown quadrature kind {kind!r}; expected one of {QUADRATURE_KINDS}")


def inner_product(domain: DomainSpec, u: Field, v: Field) -> float:
    """Quadrature-weighted pairing h^d <u, v>."""
    _check_same_domain(domain, u)
    _check_same_domain(domain, v)
    return float(domain.cell_volume * np.dot(u.values, v.values))


def solve_poisson_values(domain: DomainSpec, rhs: np.ndarray, tol: float,
                         x0: np.ndarray | None = None) -> np.ndarray:
    """Conjugate gradients for -lap w = rhs on raw arrays.

    Stops when the sup-norm residual is at most tol * max(1, sup |rhs|);
    the stencil is symmetric positive definite so CG applies directly.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = tol * max(1.0, float(np.max(np.abs(rhs))) if rhs.size else 0.0)
    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=float)
    r = rhs - neg_laplacian_values(domain, x)
    p = r.copy()
    rs = float(np.dot(r, r))
    cap = 10 * domain.size
    resid = float(np.max(np.abs(r)))
    it = 0
    while resid > target:
        if it >= cap:
            raise PoissonSolveError(it, resid, target)
        if rs == 0.0:
            # recurrence collapsed before the true residual did; restart it
            r = rhs - neg_laplacian_values(domain, x)
            p = r.copy()
            rs = float(np.dot(r, r))
            if rs == 0.0:
                break
        Ap = neg_laplacian_values(domain, p)
        alpha = rs / float(np.dot(p, Ap))
        x = x + alpha * p
        r = r - alpha * Ap
        rs_new = float(np.dot(r, r))
        p = r + (rs_new / rs) * p
        rs = rs_new
        it += 1
        resid = float(np.max(np.abs(rhs - neg_laplacian_values(domain, x))))
    return x


def solve_poisson(domain: DomainSpec, rhs: Field, tol: float) -> Field:
    """Solve -lap w = rhs with zero Dirichlet data.

    Returns w with sup |(-lap w) - rhs| <= tol * max(1, sup |rhs|).
    Raises PoissonSolveError after 10 * (total nodes) CG iterations.
    """
    _check_same_domain(domain, rhs)
    return Field(domain, solve_poisson_values(domain, rhs.values, tol))
