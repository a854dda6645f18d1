"""Path-based search for the third critical point between the two minimizers.

A discrete path of fields joins the negative and positive minimizers.  Each
iteration locates the maximum-energy interior node, moves it by one
backtracked step, and re-equidistributes the remaining nodes by discrete H1
arclength.  A pure descent step would slide the maximum node off the ridge,
so its step reflects the along-path component of the preconditioned
direction (descend transversally, climb along the path) and is accepted on
residual decrease, falling back to a plain Armijo descent step while the
path is still far from any saddle.  The maximum node is pinned during
redistribution so it can converge in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analysis import Classification, CriticalPoint, morse_index
from .energy import EnergyModel
from .grid import Field, h1_seminorm_sq_values
from .nonlinearity import TruncationMode
from .spectrum import eigenpairs

STEP_UNDERFLOW = 1e-16


class PathCollapseError(RuntimeError):
    """The max-energy node ran into an endpoint: the minimizers are not
    separated by a barrier, so there is no pass between them."""


@dataclass
class MPOptions:
    path_count: int = 21            # number of segments, nodes = path_count + 1
    max_iters: int = 20000
    grad_tol: float = 1e-8
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5
    initial_step: float = 1.0
    poisson_tol: float = 1e-10
    perturbation: float = 0.1       # midpoint bump along phi_2, in units of delta
    collapse_tol: float = 1e-6
    restart_limit: int = 3
    callback: Callable[[dict], None] | None = None

    def __post_init__(self):
        if self.path_count < 8:
            raise ValueError("need at least 8 path segments")
        if not (0.0 < self.armijo_c < 1.0 and 0.0 < self.backtrack_factor < 1.0):
            raise ValueError("line search constants must lie in (0, 1)")


@dataclass
class PathState:
    """Snapshot of the path: node values (rows), energies, and the index of
    the current maximum-energy node.  Endpoints never move."""

    nodes: np.ndarray
    energies: np.ndarray
    max_index: int


def _h1_dist(domain, a, b):
    return np.sqrt(max(h1_seminorm_sq_values(domain, a - b), 0.0))


def _redistribute(domain, nodes, pin):
    """Re-equidistribute by H1 arclength on each side of the pinned node."""
    out = nodes.copy()
    last = nodes.shape[0] - 1
    for lo, hi in ((0, pin), (pin, last)):
        if hi - lo < 2:
            continue
        seg = np.array([_h1_dist(domain, nodes[j + 1], nodes[j])
                        for j in range(lo, hi)])
        cum = np.concatenate(([0.0], np.cumsum(seg)))
        total = cum[-1]
        if total <= 0.0:
            continue
        targets = np.linspace(0.0, total, hi - lo + 1)
        for jj in range(1, hi - lo):
            k = int(np.searchsorted(cum, targets[jj], side="right")) - 1
            k = min(max(k, 0), hi - lo - 1)
            length = cum[k + 1] - cum[k]
            theta = (targets[jj] - cum[k]) / length if length > 0 else 0.0
            out[lo + jj] = nodes[lo + k] + theta * (nodes[lo + k + 1] - nodes[lo + k])
    return out


def _initial_path(model, u_minus, u_plus, opts, perturbation):
    spec = model.domain
    phi2 = eigenpairs(spec, 2)[1].phi
    bump = (perturbation * model.nl.delta
            / float(np.max(np.abs(phi2.values)))) * phi2.values
    ts = np.linspace(0.0, 1.0, opts.path_count + 1)
    nodes = (np.outer(1.0 - ts, u_minus.values) + np.outer(ts, u_plus.values)
             + np.outer(np.sin(np.pi * ts), bump))
    return nodes


def _descend_max_node(model, u, residual, opts, tangent):
    """One backtracked step of the max node; returns the new values or None.

    The saddle is a maximum along the path, so a pure descent step slides
    off it and cannot converge in place.  The move tried first is the
    preconditioned direction with its along-path component reflected
    (descend transversally, climb along the tangent), accepted when it
    shrinks the l2 residual.  When no reflected step helps, one plain
    Armijo descent step reshapes the path instead.
    """
    vol = model.domain.cell_volume
    direction = -model.preconditioned_values(u, opts.poisson_tol)

    tau_sq = h1_seminorm_sq_values(model.domain, tangent)
    if tau_sq > 0.0:
        coeff = 2.0 * vol * float(np.dot(residual, tangent)) / (vol * tau_sq)
        reflected = direction + coeff * tangent
        res_norm = np.linalg.norm(residual)
        step = opts.initial_step
        # useful reflected steps are O(1); below 1e-8 let the plain step act
        while step >= 1e-8:
            candidate = u + step * reflected
            res_new = model.residual_values(candidate)
            if np.linalg.norm(res_new) <= (1.0 - opts.armijo_c * step) * res_norm:
                return candidate
            step *= opts.backtrack_factor

    slope = vol * float(np.dot(residual, direction))
    step = opts.initial_step
    while step >= STEP_UNDERFLOW:
        if model.phi_increment(u, residual, step * direction) \
                <= opts.armijo_c * step * slope:
            return u + step * direction
        step *= opts.backtrack_factor
    return None


def _run_path_loop(model, u_minus, u_plus, opts, perturbation):
    spec = model.domain
    tol = opts.grad_tol * model.nl.scale
    nodes = _initial_path(model, u_minus, u_plus, opts, perturbation)
    energies = model.phi_rows(nodes)
    last = opts.path_count
    jmax = 0
    for it in range(opts.max_iters + 1):
        jmax = 1 + int(np.argmax(energies[1:-1]))
        u = nodes[jmax]
        residual = model.residual_values(u)
        res_sup = float(np.max(np.abs(residual)))
        if opts.callback is not None:
            opts.callback({"iteration": it, "residual": res_sup,
                           "state": PathState(nodes, energies, jmax)})
        if res_sup <= tol:
            return nodes[jmax], it, True
        for endpoint in (nodes[0], nodes[last]):
            if _h1_dist(spec, u, endpoint) < opts.collapse_tol:
                raise PathCollapseError(
                    "max-energy node collapsed onto an endpoint; the two "
                    "minimizers are not separated")
        if it == opts.max_iters:
            return nodes[jmax], it, False
        tangent = nodes[jmax + 1] - nodes[jmax - 1]
        moved = _descend_max_node(model, u, residual, opts, tangent)
        if moved is not None:
            nodes[jmax] = moved
            energies[jmax] = model.phi_values(moved)
        nodes = _redistribute(spec, nodes, jmax)
        energies = model.phi_rows(nodes)
    return nodes[jmax], opts.max_iters, False


def find_mountain_pass(model: EnergyModel, u_minus: CriticalPoint,
                       u_plus: CriticalPoint,
                       opts: MPOptions | None = None) -> CriticalPoint:
    """The third critical point, found as the converged peak of a deforming
    path from the negative minimizer to the positive one.

    The initial path is the straight interpolation plus a midpoint bump
    along the second eigenfunction, which breaks odd symmetry.  If the
    returned point is the origin with Morse index >= 2 the search restarts
    with the bump doubled, up to the restart limit.
    """
    opts = opts or MPOptions()
    if model.mode is not TruncationMode.FULL:
        raise ValueError("the pass is sought on the full-truncation model")
    tol = opts.grad_tol * model.nl.scale
    for name, point in (("u_minus", u_minus), ("u_plus", u_plus)):
        res = float(np.max(np.abs(model.residual_values(point.u.values))))
        if not point.converged or res > tol:
            raise ValueError(f"{name} is not a converged critical point "
                             f"(residual {res:.3e} > {tol:.3e})")
        if model.phi_values(point.u.values) >= 0.0:
            raise ValueError(f"{name} must have negative energy")

    perturbation = opts.perturbation
    values, iterations, converged = _run_path_loop(
        model, u_minus.u, u_plus.u, opts, perturbation)
    restarts = 0
    while (converged and restarts < opts.restart_limit
           and float(np.max(np.abs(values))) <= 1e-6):
        result = morse_index(model, Field(model.domain, values), model.nl.k + 2)
        if result.index < 2:
            break
        # landed on the origin; steer away harder
        restarts += 1
        perturbation = 2.0 * perturbation if perturbation > 0.0 else MPOptions().perturbation
        values, iterations, converged = _run_path_loop(
            model, u_minus.u, u_plus.u, opts, perturbation)

    field = Field(model.domain, values)
    residual = float(np.max(np.abs(model.residual_values(values))))
    return CriticalPoint(u=field, energy=model.phi_values(values),
                         residual=residual,
                         classification=Classification.MOUNTAIN_PASS,
                         converged=converged, iterations=iterations)
