"""Wall closures for the three populations entering through a flat wall, and
open-boundary closures for channel inlets and outlets.

All closure formulas are written for a bottom wall, whose missing populations
are ``(f2, f5, f6)``. Other walls are handled by reflecting the stencil into that
reference frame (:class:`WallOrientation`).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .lattice import (
    OPPOSITE,
    VELOCITIES,
    ParameterError,
    SchemeParams,
    equilibrium_populations,
    moment_matrix,
)

MISSING_BOTTOM = (2, 5, 6)


class SingularConditionError(ParameterError):
    """A parameter condition has a vanishing denominator."""


# --------------------------------------------------------------------------- parameters


@dataclass(frozen=True)
class BoundaryParams:
    """Weights of the moment corrections (``a``) and density differences (``k``)."""

    a2: float = 0.0
    a5: float = 0.0
    a6: float = 0.0
    k2: float = 0.0
    k5: float = 0.0
    k6: float = 0.0

    @classmethod
    def classical(cls) -> "BoundaryParams":
        return cls()

    @classmethod
    def first_order(cls, p: SchemeParams) -> "BoundaryParams":
        axis = 4.0 - p.alpha - 2.0 * p.beta
        diag = 4.0 + 2.0 * p.alpha + p.beta
        return cls(1.0, 1.0, 1.0, axis, diag, diag)

    @classmethod
    def constrained(cls, a2: float, a5: float, p: SchemeParams, rule: str = "cancel") -> "BoundaryParams":
        k2, k5, k6 = constrained_k(a2, a5, p, rule)
        return cls(a2, a5, a5, k2, k5, k6)


def constrained_k(a2: float, a5: float, p: SchemeParams, rule: str = "cancel") -> tuple[float, float, float]:
    """Density-difference weights that remove the first-order density artifacts.

    ``rule="literal"`` evaluates the diagonal weight with the constant
    ``(3 alpha + 2 beta + 5) / 2``; ``rule="cancel"`` (default) uses
    ``(3 alpha + 2 beta + 4) / 2``, which is the value the expansion engine finds
    to cancel the artifact and which reduces to the first-order preset at
    ``a5 = 1``.
    """
    if rule not in ("cancel", "literal"):
        raise ValueError(f"unknown rule {rule!r}")
    al, be, s7 = p.alpha, p.beta, p.sigma7
    c = 3.0 * al + 2.0 * be + 4.0
    offset = c + 1.0 if rule == "literal" else c
    k5 = c * (1.0 - a5) * s7 + 0.5 * offset * a5 + 0.5 * (al + 4.0)
    k2 = 2.0 * c * (a2 - 1.0) * s7 - c * a2 + 2.0 * (al + 4.0)
    return k2, k5, k5


def quartic_sigma7(a5: float, sigma4: float) -> float:
    """``sigma7`` placing the generalized-scheme Poiseuille wall exactly half a cell out."""
    if a5 == 1.0:
        raise SingularConditionError("quartic condition is singular at a5 = 1")
    if sigma4 <= 0.0:
        raise ParameterError(f"sigma4 must be positive, got {sigma4}")
    return (8.0 * a5 * sigma4 + 4.0 * sigma4 - 3.0) / (16.0 * (a5 - 1.0) * sigma4)


def classical_quartic_sigma7(sigma4: float, alpha: float, beta: float) -> float:
    """``sigma7`` placing the plain bounce-back Poiseuille wall exactly half a cell out."""
    denom = alpha + 2.0 * beta - 4.0
    if denom == 0.0:
        raise SingularConditionError("alpha + 2 beta = 4 makes the quartic condition singular")
    if sigma4 == 0.0:
        raise SingularConditionError("sigma4 = 0")
    return -3.0 / (8.0 * sigma4) * (alpha + 4.0) / denom


# --------------------------------------------------------------------------- closures


def _third_order(fstar, p: SchemeParams):
    M = moment_matrix(p.lam)
    lam3 = p.lam**3
    qx = np.tensordot(M[6], fstar, axes=1) / lam3
    qy = np.tensordot(M[7], fstar, axes=1) / lam3
    jx = np.tensordot(M[1], fstar, axes=1)
    jy = np.tensordot(M[2], fstar, axes=1)
    return jx, jy, qx, qy


def classical_bounce_back(fstar, J_center, J_minus, J_plus, p: SchemeParams):
    """Reflect ``f*4, f*7, f*8`` and add the wall-momentum source.

    ``J_center``, ``J_minus`` and ``J_plus`` are ``(Jx, Jy)`` wall data at the cell
    abscissa and half a cell to its left and right.
    """
    fstar = np.asarray(fstar, float)
    lam = p.lam
    f2 = fstar[4] + 2.0 / (3.0 * lam) * J_center[1]
    f5 = fstar[7] + (J_minus[0] + J_minus[1]) / (6.0 * lam)
    f6 = fstar[8] + (-J_plus[0] + J_plus[1]) / (6.0 * lam)
    return f2, f5, f6


def first_order_bounce_back(fstar, rho, rho_up, J_center, J_minus, J_plus, p: SchemeParams):
    """Bounce back corrected by local third-order moments and density gradients.

    ``rho`` is the density of the wall cell, ``rho_up`` the densities of the
    three cells above it, ordered ``(x - dx, x, x + dx)``.
    """
    fstar = np.asarray(fstar, float)
    lam, al, be = p.lam, p.alpha, p.beta
    jx, jy, qx, qy = _third_order(fstar, p)
    w_diag = (4.0 + be + 2.0 * al) / 36.0
    w_axis = (4.0 - 2.0 * be - al) / 36.0
    f5 = (
        fstar[7]
        + (J_minus[0] + J_minus[1]) / (6.0 * lam)
        + (qx + qy + (jx + jy) / lam) / 6.0
        + w_diag * (rho - rho_up[2])
    )
    f2 = fstar[4] + 2.0 / (3.0 * lam) * J_center[1] - (qy + jy / lam) / 3.0 + w_axis * (rho - rho_up[1])
    f6 = (
        fstar[8]
        - (J_plus[0] - J_plus[1]) / (6.0 * lam)
        + (-qx + qy + (-jx + jy) / lam) / 6.0
        + w_diag * (rho - rho_up[0])
    )
    return f2, f5, f6


def generalized_bounce_back(fstar, rho, rho_up, J_center, J_minus, J_plus, p: SchemeParams, bp: BoundaryParams):
    """Bounce back with tunable moment (``a``) and density-difference (``k``) weights."""
    fstar = np.asarray(fstar, float)
    lam = p.lam
    jx, jy, qx, qy = _third_order(fstar, p)
    f5 = (
        fstar[7]
        + (J_minus[0] + J_minus[1]) / (6.0 * lam)
        + bp.a5 / 6.0 * (qx + qy + (jx + jy) / lam)
        + bp.k5 / 36.0 * (rho - rho_up[2])
    )
    f2 = (
        fstar[4]
        + 2.0 / (3.0 * lam) * J_center[1]
        - bp.a2 / 3.0 * (qy + jy / lam)
        + bp.k2 / 36.0 * (rho - rho_up[1])
    )
    f6 = (
        fstar[8]
        - (J_plus[0] - J_plus[1]) / (6.0 * lam)
        + bp.a6 / 6.0 * (-qx + qy + (-jx + jy) / lam)
        + bp.k6 / 36.0 * (rho - rho_up[0])
    )
    return f2, f5, f6


def anti_bounce_back_pressure(fstar, missing, rho_given, p: SchemeParams, velocity=None):
    """Open-boundary closure ``f_j = -f*_opp(j) + 2 f_j^eq(rho_given, u)``.

    ``fstar`` holds the post-collision populations of the boundary cells
    (shape ``(9, n)``); ``velocity`` is an optional ``(ux, uy)`` pair, zero by
    default. Returns an array with one row per entry of ``missing``.
    """
    fstar = np.asarray(fstar, float)
    n = fstar.shape[1:]
    ux, uy = (0.0, 0.0) if velocity is None else velocity
    feq = equilibrium_populations(np.broadcast_to(rho_given, n), np.broadcast_to(ux, n), np.broadcast_to(uy, n), p)
    return np.stack([-fstar[OPPOSITE[j]] + 2.0 * feq[j] for j in missing])


# --------------------------------------------------------------------------- orientation


_REFLECTIONS = {
    "bottom": np.array([[1, 0], [0, 1]]),
    "top": np.array([[1, 0], [0, -1]]),
    "left": np.array([[0, 1], [1, 0]]),
    "right": np.array([[0, -1], [-1, 0]]),
}


@dataclass(frozen=True)
class WallOrientation:
    """Reflection taking a wall into the bottom-wall reference frame.

    Every map is an involution, so the same matrix converts vectors in either
    direction. ``perm[j]`` is the global population index playing the role of
    local population ``j``.
    """

    side: str

    def __post_init__(self):
        if self.side not in _REFLECTIONS:
            raise ValueError(f"unknown wall side {self.side!r}")

    @property
    def matrix(self) -> np.ndarray:
        return _REFLECTIONS[self.side]

    @cached_property
    def perm(self) -> np.ndarray:
        R = self.matrix
        lookup = {tuple(v): j for j, v in enumerate(VELOCITIES)}
        return np.array([lookup[tuple(R @ e)] for e in VELOCITIES])

    @property
    def missing(self) -> tuple[int, ...]:
        """Global indices of the populations entering through this wall."""
        return tuple(int(self.perm[j]) for j in MISSING_BOTTOM)

    def vector(self, vx, vy):
        R = self.matrix
        return R[0, 0] * vx + R[0, 1] * vy, R[1, 0] * vx + R[1, 1] * vy

    def local_view(self, arr):
        """View of a ``(9, nx, ny)`` array indexed ``[j, tangential, normal]`` in the wall frame.

        Population indices are not permuted; combine with :attr:`perm`.
        """
        if self.side == "bottom":
            return arr
        if self.side == "top":
            return arr[:, :, ::-1]
        if self.side == "left":
            return arr.transpose(0, 2, 1)
        return arr.transpose(0, 2, 1)[:, ::-1, ::-1]


def orient(populations, orientation: WallOrientation):
    """Relabel populations between the global frame and the bottom-wall frame."""
    populations = np.asarray(populations)
    return populations[orientation.perm]


# --------------------------------------------------------------------------- boundary objects


WallFunction = Callable[[np.ndarray, float], tuple]


@dataclass
class WallData:
    """Prescribed wall momentum ``(Jx, Jy)`` in the global frame.

    ``func(s, t)`` receives the coordinate along the wall (``x`` for bottom and
    top, ``y`` for left and right) and returns ``(Jx, Jy)``.
    """

    func: WallFunction | None = None
    steady: bool = False

    def __call__(self, s, t):
        s = np.asarray(s, float)
        if self.func is None:
            z = np.zeros(s.shape)
            return z, z
        jx, jy = self.func(s, t)
        return np.broadcast_to(jx, s.shape).astype(float), np.broadcast_to(jy, s.shape).astype(float)

    @classmethod
    def constant(cls, jx: float = 0.0, jy: float = 0.0) -> "WallData":
        return cls(lambda s, t: (jx, jy), steady=True)


class WallBoundary:
    """Applies one of the bounce-back closures along a whole wall.

    ``scheme`` is ``classical``, ``first_order`` or ``generalized``. Wall data for
    the plain scheme are evaluated at ``t + dt/2``; the corrected schemes use
    time ``t`` as in their defining formulas.

    Density neighbours beyond the ends of the wall wrap around when the
    tangential direction is periodic or ``wrap=True`` (pressure-drop edges, with
    ``rho_shift = rho(end + 1) - rho(start)``); otherwise the straight neighbour
    above the end cell stands in for the missing diagonal one.
    """

    def __init__(self, side: str, scheme: str = "classical", data: WallData | None = None,
                 bp: BoundaryParams | None = None, wrap: bool | None = None, rho_shift: float = 0.0):
        if scheme not in ("classical", "first_order", "generalized"):
            raise ValueError(f"unknown wall scheme {scheme!r}")
        if scheme == "generalized" and bp is None:
            raise ValueError("generalized scheme needs BoundaryParams")
        self.side = side
        self.orientation = WallOrientation(side)
        self.scheme = scheme
        self.data = data or WallData()
        self.bp = bp
        self.wrap = wrap
        self.rho_shift = rho_shift
        self._cache = None

    def _tangential(self, field, p):
        """Global wall coordinates of the row cells (in local order) and the traversal sign."""
        o = self.orientation.side
        n = field.nx if o in ("bottom", "top") else field.ny
        centres = (np.arange(n) + 0.5) * p.dx
        if o == "right":
            return centres[::-1], -1.0, n
        return centres, 1.0, n

    def _tangential_periodic(self, field) -> bool:
        if self.wrap is not None:
            return self.wrap
        return field.periodic_x() if self.orientation.side in ("bottom", "top") else field.periodic_y()

    def _neighbour_rho(self, rho_local, field):
        # rho_local[i, k]: density at tangential index i, normal index k
        row, up = rho_local[:, 0], rho_local[:, 1]
        left, right = np.roll(up, 1), np.roll(up, -1)
        if self._tangential_periodic(field):
            # ``rho_shift`` is the jump rho(end+1) - rho(0) in local order
            left[0] -= self.rho_shift
            right[-1] += self.rho_shift
        else:
            left[0] = up[0]
            right[-1] = up[-1]
        return row, np.stack([left, up, right])

    def _wall_values(self, field, p, t):
        s, sign, _ = self._tangential(field, p)
        t_data = t + 0.5 * p.dt if self.scheme == "classical" else t
        half = 0.5 * p.dx * sign
        J = {}
        for key, shift in (("c", 0.0), ("m", -half), ("p", half)):
            jx, jy = self.data(s + shift, t_data)
            J[key] = self.orientation.vector(jx, jy)
        return J

    def apply(self, fout, fstar, field, p: SchemeParams, t: float):
        o = self.orientation
        perm = o.perm
        fs_local = o.local_view(fstar)[perm][:, :, 0]
        J = self._cache
        if J is None:
            J = self._wall_values(field, p, t)
            if self.data.func is None or self.data.steady:
                self._cache = J
        if self.scheme == "classical":
            f2, f5, f6 = classical_bounce_back(fs_local, J["c"], J["m"], J["p"], p)
        else:
            rho_local = o.local_view(fstar).sum(axis=0)
            if rho_local.shape[1] < 2:
                raise ValueError("wall closure needs at least two cells normal to the wall")
            rho, rho_up = self._neighbour_rho(rho_local, field)
            if self.scheme == "first_order":
                f2, f5, f6 = first_order_bounce_back(fs_local, rho, rho_up, J["c"], J["m"], J["p"], p)
            else:
                f2, f5, f6 = generalized_bounce_back(fs_local, rho, rho_up, J["c"], J["m"], J["p"], p, self.bp)
        out_local = o.local_view(fout)
        out_local[perm[2], :, 0] = f2
        out_local[perm[5], :, 0] = f5
        out_local[perm[6], :, 0] = f6


def _pressure_entries(side: str, field):
    """Missing population indices and the normal-direction slice owned by a pressure edge."""
    inward = {"left": (1, 0), "right": (-1, 0), "bottom": (0, 1), "top": (0, -1)}[side]
    missing = [j for j, e in enumerate(VELOCITIES) if e[0] * inward[0] + e[1] * inward[1] > 0]
    return missing


class PressureBoundary:
    """Anti-bounce-back closure imposing density ``rho`` on a left or right edge.

    ``velocity`` selects the velocity in the equilibrium term: ``"zero"`` or
    ``"extrapolated"`` (momentum of the boundary cell divided by ``rho``).
    Entries whose tangential source lies outside the grid are left to the walls.
    """

    def __init__(self, side: str, rho: float, velocity: str = "zero"):
        if side not in ("left", "right"):
            raise ValueError("pressure edges are supported on left/right sides")
        if velocity not in ("zero", "extrapolated"):
            raise ValueError(f"unknown velocity option {velocity!r}")
        self.side = side
        self.rho = rho
        self.velocity = velocity

    def apply(self, fout, fstar, field, p: SchemeParams, t: float):
        col = 0 if self.side == "left" else -1
        fs = fstar[:, col, :]
        vel = None
        if self.velocity == "extrapolated":
            M = moment_matrix(p.lam)
            rho = fs.sum(axis=0)
            vel = (np.tensordot(M[1], fs, axes=1) / rho, np.tensordot(M[2], fs, axes=1) / rho)
        missing = _pressure_entries(self.side, field)
        vals = anti_bounce_back_pressure(fs, missing, self.rho, p, vel)
        ny = field.ny
        for row, j in zip(vals, missing):
            ey = VELOCITIES[j][1]
            lo = 1 if (ey == 1 and not field.periodic_y()) else 0
            hi = ny - 1 if (ey == -1 and not field.periodic_y()) else ny
            fout[j, col, lo:hi] = row[lo:hi]


class PressureDropBoundary:
    """Periodic closure with a density jump: the channel repeats with ``rho`` lowered by ``drop``.

    Populations leaving through the outlet re-enter at the inlet and vice versa,
    shifted by the rest equilibrium of the density jump. For the linear scheme a
    uniform streamwise density gradient is then an exact steady state.
    Use one instance per side; ``drop`` is ``rho(inlet) - rho(outlet + 1 cell)``.
    """

    def __init__(self, side: str, drop: float):
        if side not in ("left", "right"):
            raise ValueError("pressure-drop edges are supported on left/right sides")
        self.side = side
        self.drop = drop

    def _plan(self, field, p):
        nx, ny = field.nx, field.ny
        shift = equilibrium_populations(self.drop, 0.0, 0.0, p)
        if self.side == "left":
            col, src, sign = 0, nx - 1, 1.0
        else:
            col, src, sign = nx - 1, 0, -1.0
        plan = []
        for j, (ex, ey) in enumerate(VELOCITIES):
            if ex * sign <= 0:
                continue
            ys = np.arange(ny) - ey
            if field.periodic_y():
                dst, ys = np.arange(ny), ys % ny
            else:
                ok = (ys >= 0) & (ys < ny)
                dst, ys = np.nonzero(ok)[0], ys[ok]
            plan.append((j, dst, ys, sign * shift[j]))
        return col, src, plan

    def apply(self, fout, fstar, field, p: SchemeParams, t: float):
        if getattr(self, "_cached", None) is None:
            self._cached = self._plan(field, p)
        col, src, plan = self._cached
        for j, dst, ys, offset in plan:
            fout[j, col, dst] = fstar[j, src, ys] + offset
