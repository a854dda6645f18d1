"""Checks on computed critical points: bounds, positivity, distinctness,
and Morse indices of the linearized operator -lap - g'(u).

The Morse index stands in for the homological data attached to each
critical point: for a nondegenerate point the index determines it, so an
index inequality between the saddle and the origin is the computable form
of the multiplicity argument.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

import numpy as np

from .energy import EnergyModel
from .grid import DomainSpec, Field, neg_laplacian_values
from .nonlinearity import ConditionGReport, TruncationMode
from .spectrum import sandwich_index

_EIG_SEED = 0x5EED
_EIG_RESTARTS = 400
_MAX_EIGS = 40


class EigenIterationError(RuntimeError):
    """Inverse iteration failed to converge an eigenpair."""


class Classification(str, enum.Enum):
    POSITIVE_MIN = "PositiveMin"
    NEGATIVE_MIN = "NegativeMin"
    MOUNTAIN_PASS = "MountainPass"
    TRIVIAL = "Trivial"


@dataclass(eq=False)
class CriticalPoint:
    """A converged (or best-effort) critical point with its diagnostics."""

    u: Field
    energy: float
    residual: float
    classification: Classification
    converged: bool
    iterations: int = 0
    morse_index: int | None = None
    morse_degenerate: bool = False
    bounds_ok: bool | None = None


@dataclass
class BoundsCheck:
    ok: bool
    worst_violation: float
    node_index: int | None


@dataclass
class PositivityProfile:
    strictly_positive_interior: bool
    min_boundary_slope: float


@dataclass
class MorseIndexResult:
    """Count of negative eigenvalues of -lap - g'(u), with degeneracy flag."""

    index: int
    degenerate: bool
    eigenvalues: list[float]


def check_bounds(u: Field, a_minus: float, a_plus: float, tol: float) -> BoundsCheck:
    """True iff every node value lies in [a_minus - tol, a_plus + tol]."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals = u.values
    over = vals - a_plus
    under = a_minus - vals
    viol = np.maximum(over, under)
    worst = float(np.max(viol))
    if worst <= tol:
        return BoundsCheck(ok=True, worst_violation=max(worst, 0.0), node_index=None)
    return BoundsCheck(ok=False, worst_violation=worst,
                       node_index=int(np.argmax(viol)))


def positivity_profile(u: Field) -> PositivityProfile:
    """Interior positivity plus the one-sided slope at the boundary.

    The slope at a boundary-adjacent node is its value over the spacing of
    the axis it touches (the boundary value is zero), and the reported
    number is the minimum over all boundary-adjacent nodes.
    """
    vals = u.values
    positive = bool(np.all(vals > 0.0))
    spec = u.domain
    if spec.ndim == 1:
        (h,) = spec.spacings
        slope = min(vals[0] / h, vals[-1] / h)
    else:
        hx, hy = spec.spacings
        v = u.reshaped()
        slope = min(
            float(np.min(v[0, :])) / hx,
            float(np.min(v[-1, :])) / hx,
            float(np.min(v[:, 0])) / hy,
            float(np.min(v[:, -1])) / hy,
        )
    return PositivityProfile(strictly_positive_interior=positive,
                             min_boundary_slope=float(slope))


def _cg_solve(apply_op, b, tol_rel, cap):
    """Plain CG for an SPD operator, relative l2 residual stopping rule."""
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(np.dot(r, r))
    b_norm = float(np.linalg.norm(b))
    for _ in range(cap):
        if np.sqrt(rs) <= tol_rel * b_norm:
            break
        Ap = apply_op(p)
        alpha = rs / float(np.dot(p, Ap))
        x += alpha * p
        r -= alpha * Ap
        rs_new = float(np.dot(r, r))
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x


def _smallest_eigenvalues(model: EnergyModel, u_values: np.ndarray,
                          num_eigs: int) -> list[float]:
    """num_eigs smallest eigenvalues of v -> -lap v - g'(u) v.

    Shifted inverse iteration run on a block: the shift
    -(sup g' over the root interval) - 1 makes the shifted operator
    positive definite, so each inverse apply is a plain CG solve.  The
    block is iterated simultaneously with Rayleigh-Ritz extraction (the
    orthonormalization doubles as deflation), which keeps clustered
    eigenvalues converging at the subspace ratio rather than the pairwise
    one.
    """
    spec = model.domain
    weight = model.nl.gprime(u_values)
    shift = -model.nl.gprime_max - 1.0

    def apply_lin(v):
        return neg_laplacian_values(spec, v) - weight * v

    def apply_shifted(v):
        return apply_lin(v) - shift * v

    n = spec.size
    block = min(num_eigs + 3, n)
    cap = 20 * n
    rng = np.random.default_rng(_EIG_SEED)
    basis, _ = np.linalg.qr(rng.standard_normal((n, block)))
    theta = np.zeros(block)
    for _ in range(_EIG_RESTARTS):
        for j in range(block):
            basis[:, j] = _cg_solve(apply_shifted, basis[:, j], 1e-12, cap)
        basis, _ = np.linalg.qr(basis)
        images = np.column_stack([apply_lin(basis[:, j]) for j in range(block)])
        projected = basis.T @ images
        theta, rotation = np.linalg.eigh(0.5 * (projected + projected.T))
        basis = basis @ rotation
        images = images @ rotation
        residuals = np.linalg.norm(images - basis * theta[None, :], axis=0)
        if np.all(residuals[:num_eigs] <= 1e-9 * np.maximum(1.0, np.abs(theta[:num_eigs]))):
            return [float(t) for t in theta[:num_eigs]]
    raise EigenIterationError(
        f"subspace inverse iteration did not converge {num_eigs} eigenvalues")


def morse_index(model: EnergyModel, u: Field, num_eigs: int,
                tol: float | None = None) -> MorseIndexResult:
    """Morse index of u: negative eigenvalues of the linearization at u.

    Computes the num_eigs smallest eigenvalues and counts those below -tol;
    eigenvalues inside [-tol, tol] mark the count as degenerate.  If every
    computed eigenvalue is negative the window is widened so no negative
    eigenvalue can hide beyond it.
    """
    if tol is None:
        tol = 1e-6 * model.nl.scale
    num_eigs = max(int(num_eigs), 1)
    while True:
        eigenvalues = _smallest_eigenvalues(model, u.values, num_eigs)
        if eigenvalues[-1] >= -tol or num_eigs >= min(_MAX_EIGS, model.domain.size):
            break
        num_eigs = min(num_eigs + 4, _MAX_EIGS, model.domain.size)
    index = int(sum(1 for lam in eigenvalues if lam < -tol))
    degenerate = bool(any(-tol <= lam <= tol for lam in eigenvalues))
    return MorseIndexResult(index=index, degenerate=degenerate,
                            eigenvalues=eigenvalues)


@dataclass
class SolveReport:
    """Everything the pipeline asserts about one run, re-checkable from the
    stored fields."""

    domain: DomainSpec
    condition_g: ConditionGReport
    trivial: CriticalPoint
    minus: CriticalPoint
    plus: CriticalPoint
    star: CriticalPoint
    flags: dict[str, bool]
    morse_comparison: str  # "ok" | "failed" | "inconclusive" | "refused"
    preset: str | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def points(self) -> list[CriticalPoint]:
        return [self.minus, self.plus, self.star, self.trivial]

    @property
    def all_ok(self) -> bool:
        return all(self.flags.values())

    def to_dict(self) -> dict:
        return {
            "preset": self.preset,
            "grid": self.domain.describe(),
            "condition_g": self.condition_g.to_dict(),
            "points": [
                {
                    "classification": p.classification.value,
                    "energy": p.energy,
                    "residual": p.residual,
                    "converged": p.converged,
                    "iterations": p.iterations,
                    "morse_index": p.morse_index,
                    "morse_degenerate": p.morse_degenerate,
                    "bounds_ok": p.bounds_ok,
                }
                for p in self.points
            ],
            "flags": dict(self.flags),
            "morse_comparison": self.morse_comparison,
            "notes": list(self.notes),
        }


def assemble_report(model: EnergyModel, condition_g: ConditionGReport,
                    minus: CriticalPoint, plus: CriticalPoint,
                    star: CriticalPoint, *,
                    bounds_tol: float = 1e-9,
                    distinct_tol: float = 1e-3,
                    nontrivial_tol: float = 1e-3,
                    classical_tol: float = 1e-12,
                    morse_num_eigs: int | None = None,
                    morse_tol: float | None = None,
                    preset: str | None = None) -> SolveReport:
    """Run every check on the three candidates plus the zero solution.

    Distinctness asks all pairwise sup distances among the four points to
    exceed distinct_tol times the largest amplitude; the Morse comparison
    asks index(star) != index(0) and is refused when k < 2 and marked
    inconclusive when either index is degenerate.
    """
    if model.mode is not TruncationMode.FULL:
        raise ValueError("reports are assembled on the full-truncation model")
    nl = model.nl
    spec = model.domain
    notes: list[str] = []

    trivial = CriticalPoint(
        u=Field.zeros(spec), energy=0.0, residual=0.0,
        classification=Classification.TRIVIAL, converged=True, bounds_ok=True)

    num_eigs = morse_num_eigs if morse_num_eigs is not None else nl.k + 2
    for point in (minus, plus, star, trivial):
        result = morse_index(model, point.u, num_eigs, morse_tol)
        point.morse_index = result.index
        point.morse_degenerate = result.degenerate

    flags: dict[str, bool] = {}
    flags["condition_g"] = condition_g.ok
    flags["converged"] = minus.converged and plus.converged and star.converged

    bounds_ok = True
    classical_ok = True
    for point in (minus, plus, star):
        bc = check_bounds(point.u, nl.a_minus, nl.a_plus, bounds_tol)
        point.bounds_ok = bc.ok
        bounds_ok &= bc.ok
        if not bc.ok:
            notes.append(
                f"{point.classification.value}: bound violation "
                f"{bc.worst_violation:.3e} at node {bc.node_index}")
        # inside the root interval the truncation is inactive, so the
        # residual of the original equation coincides with the solved one
        plain = neg_laplacian_values(spec, point.u.values) - nl.g(point.u.values)
        solved = model.residual_values(point.u.values)
        classical_ok &= bool(np.max(np.abs(plain - solved)) <= classical_tol)
    flags["bounds"] = bool(bounds_ok)
    flags["classical_equivalence"] = bool(classical_ok)

    pos = positivity_profile(plus.u)
    neg = positivity_profile(-minus.u)
    flags["positivity"] = bool(
        pos.strictly_positive_interior and pos.min_boundary_slope > 0.0
        and neg.strictly_positive_interior and neg.min_boundary_slope > 0.0)

    fields = [trivial.u.values, minus.u.values, plus.u.values, star.u.values]
    amplitude = max(float(np.max(np.abs(v))) for v in fields)
    distinct = True
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            if np.max(np.abs(fields[i] - fields[j])) <= distinct_tol * amplitude:
                distinct = False
    flags["distinctness"] = bool(distinct)
    flags["nontriviality"] = bool(all(
        np.max(np.abs(p.u.values)) > nontrivial_tol for p in (minus, plus, star)))

    if nl.k < 2:
        morse_comparison = "refused"
        notes.append("Morse comparison refused: requires k >= 2")
    elif star.morse_degenerate or trivial.morse_degenerate:
        morse_comparison = "inconclusive"
        notes.append("Morse comparison inconclusive: degenerate eigenvalue "
                     "within tolerance of zero")
    elif star.morse_index != trivial.morse_index:
        morse_comparison = "ok"
    else:
        morse_comparison = "failed"
    flags["morse_comparison"] = morse_comparison == "ok"

    try:
        k_spectral = sandwich_index(spec, float(nl.gprime(np.asarray(0.0))))
    except ValueError:
        k_spectral = None
    if k_spectral is not None and trivial.morse_index != k_spectral:
        notes.append(
            f"index at zero = {trivial.morse_index} differs from the "
            f"eigenvalue count {k_spectral}; grid may be too coarse")

    return SolveReport(domain=spec, condition_g=condition_g, trivial=trivial,
                       minus=minus, plus=plus, star=star, flags=flags,
                       morse_comparison=morse_comparison, preset=preset,
                       notes=notes)
