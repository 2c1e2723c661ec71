"""Matrices of the unified boundary-node update written in moment space.

For a wall-adjacent node the update reads

    f(x, t+dt) = T f*(x, t) + sum_j U_jj f*_j(x - v_j dt, t) + xi,

with ``U`` the interior streaming restricted to populations that arrive from
inside the domain and ``T`` the closure acting on local post-collision values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..boundary import MISSING_BOTTOM, BoundaryParams
from ..lattice import OPPOSITE, VELOCITIES, SchemeParams, collision_matrix, inverse_moment_matrix, moment_matrix

SCHEMES = ("classical", "first_order", "generalized")


def resolve_params(scheme: str, p: SchemeParams, bp: BoundaryParams | None) -> BoundaryParams:
    if scheme == "classical":
        return BoundaryParams()
    if scheme == "first_order":
        return BoundaryParams.first_order(p)
    if scheme == "generalized":
        if bp is None:
            raise ValueError("generalized scheme needs BoundaryParams")
        return bp
    raise ValueError(f"unknown scheme {scheme!r}")


def transmission_matrix(bp: BoundaryParams, p: SchemeParams) -> np.ndarray:
    """``T`` for a bottom wall: reflection plus the ``a``-weighted moment corrections."""
    M = moment_matrix(p.lam)
    lam = p.lam
    qx, qy = M[6] / lam**3, M[7] / lam**3
    jx, jy = M[1] / lam, M[2] / lam
    T = np.zeros((9, 9))
    for j in MISSING_BOTTOM:
        T[j, OPPOSITE[j]] = 1.0
    T[2] += -bp.a2 / 3.0 * (qy + jy)
    T[5] += bp.a5 / 6.0 * (qx + qy + jx + jy)
    T[6] += bp.a6 / 6.0 * (-qx + qy - jx + jy)
    return T


def interior_matrix() -> np.ndarray:
    U = np.eye(9)
    for j in MISSING_BOTTOM:
        U[j, j] = 0.0
    return U


def sigma_solver(K: np.ndarray) -> np.ndarray:
    """Solver of ``K m = g`` with the density component of ``m`` pinned to zero.

    Row 0 of ``K`` is redundant on the range of ``K`` and is dropped; the
    remaining 8x8 block acting on moments 1..8 is inverted.
    """
    S = np.zeros((9, 9))
    S[1:, 1:] = np.linalg.inv(K[1:, 1:])
    return S


def left_null_vector(K: np.ndarray) -> np.ndarray:
    """Left kernel vector ``w`` (``w K = 0``) normalised so that ``w[2] = -1``."""
    _, _, vt = np.linalg.svd(K.T)
    w = vt[-1]
    return -w / w[2]


def kernel_dimension(K: np.ndarray, rel_tol: float = 1e-10) -> int:
    s = np.linalg.svd(K, compute_uv=False)
    return int(np.sum(s <= rel_tol * s[0]))


@dataclass
class BoundaryMatrices:
    T: np.ndarray
    U: np.ndarray
    J0: np.ndarray
    K: np.ndarray
    Sigma: np.ndarray
    Balpha: tuple  # (B^x, B^y)
    Btilde: dict  # keys "xx", "xy", "yy"
    w: np.ndarray
    mu: np.ndarray
    M: np.ndarray
    Minv: np.ndarray


def build_matrices(scheme: str, p: SchemeParams, bp: BoundaryParams | None = None) -> BoundaryMatrices:
    bp = resolve_params(scheme, p, bp)
    M, Minv = moment_matrix(p.lam), inverse_moment_matrix(p.lam)
    J0 = collision_matrix(p)
    T = transmission_matrix(bp, p)
    U = interior_matrix()
    K = np.eye(9) - M @ (T + U) @ Minv @ J0
    v = p.lam * VELOCITIES.astype(float)
    B = tuple(M @ U @ np.diag(v[:, a]) @ Minv @ J0 for a in (0, 1))
    Bt = {
        "xx": M @ U @ np.diag(v[:, 0] * v[:, 0]) @ Minv @ J0,
        "xy": M @ U @ np.diag(v[:, 0] * v[:, 1]) @ Minv @ J0,
        "yy": M @ U @ np.diag(v[:, 1] * v[:, 1]) @ Minv @ J0,
    }
    mu = np.array([1.0, 0, 0, p.alpha * p.lam**2, 0, 0, 0, 0, p.beta * p.lam**4])
    return BoundaryMatrices(T, U, J0, K, sigma_solver(K), B, Bt, left_null_vector(K), mu, M, Minv)
