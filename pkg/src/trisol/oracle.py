"""Shooting-method ground truth for the 1D boundary value problem.

Integrates u'' = -g(u) from the left endpoint with classical RK4 and the
*untruncated* g, so agreement with the variational solver independently
certifies that the truncated solutions solve the original equation.
Trajectories that leave 10 * max(a+, -a-) are frozen and flagged as blown
up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import DomainSpec
from .nonlinearity import Nonlinearity


@dataclass(eq=False)
class ShotResult:
    """One integrated trajectory: initial slope, endpoint value, and the
    sampled values and derivatives at steps + 1 equally spaced abscissae
    starting at 0."""

    slope: float
    endpoint: float
    xs: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    blown_up: bool

    def values_at(self, spec: DomainSpec) -> np.ndarray:
        """Trajectory restricted to the interior nodes of an interval grid.

        The step count must be divisible by (interior count + 1) so the
        RK4 abscissae land exactly on the grid nodes.
        """
        if spec.ndim != 1:
            raise ValueError("the shooting oracle is one-dimensional")
        (n,) = spec.counts
        steps = len(self.values) - 1
        if steps % (n + 1) != 0:
            raise ValueError(
                f"{steps} RK4 steps do not land on a grid with {n} interior nodes")
        stride = steps // (n + 1)
        return self.values[stride::stride][:n].copy()


def _rk4_sweep(nl: Nonlinearity, length: float, slopes: np.ndarray,
               steps: int, record: bool):
    """Integrate all slopes at once; returns (endpoints, blown, trajectory)."""
    cap = 10.0 * max(nl.a_plus, -nl.a_minus)
    h = length / steps
    u = np.zeros_like(slopes)
    p = np.array(slopes, dtype=float)
    blown = np.zeros(slopes.shape, dtype=bool)
    traj = np.zeros((steps + 1, slopes.size)) if record else None
    dtraj = np.zeros((steps + 1, slopes.size)) if record else None
    if record:
        dtraj[0] = p

    def accel(state):
        return -nl.g(state)

    for i in range(steps):
        k1u, k1p = p, accel(u)
        k2u, k2p = p + 0.5 * h * k1p, accel(u + 0.5 * h * k1u)
        k3u, k3p = p + 0.5 * h * k2p, accel(u + 0.5 * h * k2u)
        k4u, k4p = p + h * k3p, accel(u + h * k3u)
        u_next = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        p_next = p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        active = ~blown
        u = np.where(active, u_next, u)
        p = np.where(active, p_next, p)
        blown |= np.abs(u) > cap
        if record:
            traj[i + 1] = u
            dtraj[i + 1] = p
    return u, blown, traj, dtraj


def shoot(nl: Nonlinearity, length: float, slope: float, steps: int) -> ShotResult:
    """Integrate one trajectory with u(0) = 0 and u'(0) = slope."""
    if steps < 1000:
        raise ValueError("use at least 1000 RK4 steps")
    endpoints, blown, traj, dtraj = _rk4_sweep(
        nl, length, np.array([slope], dtype=float), steps, record=True)
    xs = np.linspace(0.0, length, steps + 1)
    return ShotResult(slope=float(slope), endpoint=float(endpoints[0]),
                      xs=xs, values=traj[:, 0].copy(),
                      derivatives=dtraj[:, 0].copy(), blown_up=bool(blown[0]))


def sweep(nl: Nonlinearity, length: float, slopes: np.ndarray,
          steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint map over an array of slopes; returns (endpoints, blown_mask)."""
    if steps < 1000:
        raise ValueError("use at least 1000 RK4 steps")
    endpoints, blown, _, _ = _rk4_sweep(
        nl, length, np.asarray(slopes, dtype=float), steps, record=False)
    return endpoints, blown


def sign_change_brackets(slopes: np.ndarray, endpoints: np.ndarray,
                         blown: np.ndarray,
                         exclude_zero: bool = True) -> list[tuple[float, float]]:
    """Slope intervals across which the endpoint map changes sign.

    Brackets touching a blown-up trajectory are dropped; with exclude_zero
    the bracket containing slope 0 (the trivial solution) is dropped too.
    """
    out = []
    for i in range(len(slopes) - 1):
        if blown[i] or blown[i + 1]:
            continue
        if endpoints[i] == 0.0 or endpoints[i] * endpoints[i + 1] < 0.0:
            lo, hi = float(slopes[i]), float(slopes[i + 1])
            if exclude_zero and lo <= 0.0 <= hi:
                continue
            out.append((lo, hi))
    return out


def find_branch(nl: Nonlinearity, length: float,
                bracket: tuple[float, float], steps: int = 4096) -> ShotResult:
    """Bisect the endpoint map inside a sign-change bracket.

    Converges the slope until |endpoint| <= 1e-12 * max(1, amplitude); the
    returned trajectory solves the boundary value problem up to integration
    error.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    shot_lo = shoot(nl, length, lo, steps)
    shot_hi = shoot(nl, length, hi, steps)
    if shot_lo.blown_up or shot_hi.blown_up:
        raise ValueError("bracket endpoint blew up; shrink the bracket")
    if shot_lo.endpoint * shot_hi.endpoint > 0.0:
        raise ValueError(
            f"no sign change on [{lo}, {hi}]: endpoints "
            f"{shot_lo.endpoint:.3e}, {shot_hi.endpoint:.3e}")
    best = shot_lo if abs(shot_lo.endpoint) < abs(shot_hi.endpoint) else shot_hi
    for _ in range(200):
        amplitude = float(np.max(np.abs(best.values)))
        if abs(best.endpoint) <= 1e-12 * max(1.0, amplitude):
            return best
        mid = 0.5 * (lo + hi)
        shot_mid = shoot(nl, length, mid, steps)
        if abs(shot_mid.endpoint) < abs(best.endpoint):
            best = shot_mid
        if shot_lo.endpoint * shot_mid.endpoint <= 0.0:
            hi, shot_hi = mid, shot_mid
        else:
            lo, shot_lo = mid, shot_mid
    return best
