"""D2Q9 stencil, moment algebra and the linearized multiple-relaxation-time collision.

Populations are indexed 0..8 with velocities

    0: ( 0, 0)   1: ( 1, 0)   2: ( 0, 1)   3: (-1, 0)   4: ( 0,-1)
    5: ( 1, 1)   6: (-1, 1)   7: (-1,-1)   8: ( 1,-1)

and moments are ordered ``(rho, jx, jy, e, xx, xy, qx, qy, eps)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

VELOCITIES = np.array(
    [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, 1], [-1, -1], [1, -1]],
    dtype=np.int64,
)
OPPOSITE = np.array([0, 3, 4, 1, 2, 7, 8, 5, 6], dtype=np.int64)
MOMENT_NAMES = ("rho", "jx", "jy", "e", "xx", "xy", "qx", "qy", "eps")

# power of lambda carried by each row of the moment matrix
ROW_POWERS = np.array([0, 1, 1, 2, 2, 2, 3, 3, 4])

_M_UNIT = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 1, 0, -1, 0, 1, -1, -1, 1),
    (0, 0, 1, 0, -1, 1, 1, -1, -1),
    (-4, -1, -1, -1, -1, 2, 2, 2, 2),
    (0, 1, -1, 1, -1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, -1, 1, -1),
    (0, -2, 0, 2, 0, 1, -1, -1, 1),
    (0, 0, -2, 0, 2, 1, 1, -1, -1),
    (4, -2, -2, -2, -2, 1, 1, 1, 1),
)


def _exact_unit_inverse() -> tuple[tuple[Fraction, ...], ...]:
    # rows of the unit matrix are mutually orthogonal: inverse = M^T diag(1/|row|^2)
    norms = [sum(Fraction(v * v) for v in row) for row in _M_UNIT]
    return tuple(
        tuple(Fraction(_M_UNIT[k][i]) / norms[k] for k in range(9)) for i in range(9)
    )


M_UNIT_INVERSE_EXACT = _exact_unit_inverse()


def moment_matrix(lam: float = 1.0) -> np.ndarray:
    """The 9x9 matrix ``M`` with ``m = M f`` for lattice velocity ``lam``."""
    scale = float(lam) ** ROW_POWERS
    return np.array(_M_UNIT, dtype=float) * scale[:, None]


def inverse_moment_matrix(lam: float = 1.0) -> np.ndarray:
    """Exact inverse of :func:`moment_matrix` (rational at unit scale, then rescaled)."""
    inv = np.array([[float(v) for v in row] for row in M_UNIT_INVERSE_EXACT])
    scale = float(lam) ** ROW_POWERS
    return inv / scale[None, :]


class ParameterError(ValueError):
    """Raised for physically inadmissible scheme or boundary parameters."""


@dataclass(frozen=True)
class SchemeParams:
    """Lattice constants, equilibrium parameters and relaxation rates.

    ``dt`` is derived from ``lam = dx / dt``. The Henon parameters
    ``sigma_k = 1/s_k - 1/2`` are exposed as properties.
    """

    lam: float = 1.0
    dx: float = 1.0
    alpha: float = -2.0
    beta: float = 1.0
    s3: float = 1.0
    s4: float = 1.0
    s7: float = 1.0
    s8: float = 1.0

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ParameterError(f"lambda must be positive, got {self.lam}")
        if not (self.dx > 0 and math.isfinite(self.dx)):
            raise ParameterError(f"dx must be positive, got {self.dx}")
        if not self.alpha > -4:
            raise ParameterError(f"alpha must exceed -4 (real sound speed), got {self.alpha}")
        for name in ("s3", "s4", "s7", "s8"):
            s = getattr(self, name)
            if not 0 < s <= 2:
                raise ParameterError(f"relaxation rate {name}={s} outside (0, 2]")

    @classmethod
    def from_sigmas(cls, sigma3=0.5, sigma4=0.5, sigma7=0.5, sigma8=0.5, **kw) -> "SchemeParams":
        rates = {}
        for name, sigma in (("s3", sigma3), ("s4", sigma4), ("s7", sigma7), ("s8", sigma8)):
            if sigma < 0:
                raise ParameterError(f"sigma for {name} must be >= 0, got {sigma}")
            rates[name] = 1.0 / (sigma + 0.5)
        return cls(**kw, **rates)

    @property
    def dt(self) -> float:
        return self.dx / self.lam

    @property
    def sigma3(self) -> float:
        return 1.0 / self.s3 - 0.5

    @property
    def sigma4(self) -> float:
        return 1.0 / self.s4 - 0.5

    @property
    def sigma7(self) -> float:
        return 1.0 / self.s7 - 0.5

    @property
    def sigma8(self) -> float:
        return 1.0 / self.s8 - 0.5

    @property
    def sound_speed(self) -> float:
        return self.lam * math.sqrt((self.alpha + 4.0) / 6.0)

    @property
    def rates(self) -> np.ndarray:
        """Relaxation rate of each moment (zero for the conserved ones)."""
        return np.array([0, 0, 0, self.s3, self.s4, self.s4, self.s7, self.s7, self.s8], float)

    def replace(self, **changes) -> "SchemeParams":
        fields = {k: getattr(self, k) for k in ("lam", "dx", "alpha", "beta", "s3", "s4", "s7", "s8")}
        fields.update(changes)
        return SchemeParams(**fields)


def moments_from_populations(f, p: SchemeParams) -> np.ndarray:
    """``M f``; ``f`` may carry extra trailing axes."""
    return np.tensordot(moment_matrix(p.lam), np.asarray(f, float), axes=1)


def populations_from_moments(m, p: SchemeParams) -> np.ndarray:
    return np.tensordot(inverse_moment_matrix(p.lam), np.asarray(m, float), axes=1)


def equilibrium_moments(rho, jx, jy, p: SchemeParams) -> np.ndarray:
    rho, jx, jy = np.broadcast_arrays(*(np.asarray(v, float) for v in (rho, jx, jy)))
    lam2 = p.lam**2
    zero = np.zeros_like(rho)
    return np.stack(
        [rho, jx, jy, p.alpha * lam2 * rho, zero, zero, -lam2 * jx, -lam2 * jy, p.beta * lam2**2 * rho]
    )


def equilibrium_populations(rho, ux, uy, p: SchemeParams) -> np.ndarray:
    """Closed-form linear equilibrium ``f_j^eq(rho, u)``."""
    rho, ux, uy = np.broadcast_arrays(*(np.asarray(v, float) for v in (rho, ux, uy)))
    a, b, lam = p.alpha, p.beta, p.lam
    axis = 4.0 - a - 2.0 * b
    diag = 4.0 + 2.0 * a + b
    r36 = rho / 36.0
    return np.stack(
        [
            rho / 9.0 * (1.0 - a + b),
            r36 * (axis + 12.0 * ux / lam),
            r36 * (axis + 12.0 * uy / lam),
            r36 * (axis - 12.0 * ux / lam),
            r36 * (axis - 12.0 * uy / lam),
            r36 * (diag + 3.0 / lam * (ux + uy)),
            r36 * (diag + 3.0 / lam * (-ux + uy)),
            r36 * (diag + 3.0 / lam * (-ux - uy)),
            r36 * (diag + 3.0 / lam * (ux - uy)),
        ]
    )


def relax(m, p: SchemeParams) -> np.ndarray:
    """Relax the non-conserved moments toward their equilibrium."""
    m = np.asarray(m, float)
    meq = equilibrium_moments(m[0], m[1], m[2], p)
    s = p.rates.reshape((9,) + (1,) * (m.ndim - 1))
    return m + s * (meq - m)


def collision_matrix(p: SchemeParams) -> np.ndarray:
    """Matrix ``J0`` of the linearized collision in moment space (``m* = J0 m``)."""
    lam2 = p.lam**2
    s3, s4, s7, s8 = p.s3, p.s4, p.s7, p.s8
    J0 = np.diag([1.0, 1.0, 1.0, 1 - s3, 1 - s4, 1 - s4, 1 - s7, 1 - s7, 1 - s8])
    J0[3, 0] = p.alpha * s3 * lam2
    J0[6, 1] = -s7 * lam2
    J0[7, 2] = -s7 * lam2
    J0[8, 0] = p.beta * s8 * lam2**2
    return J0


def population_collision_matrix(p: SchemeParams) -> np.ndarray:
    """``M^-1 J0 M``: post-collision populations as a linear map of pre-collision ones."""
    return inverse_moment_matrix(p.lam) @ collision_matrix(p) @ moment_matrix(p.lam)
