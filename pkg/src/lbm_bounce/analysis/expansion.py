"""Order-by-order solution of the boundary-node update and time elimination.

Everything is expanded in powers of ``dt`` with ``dx = lam * dt``: a *series*
is a list ``[level0, level1, level2]`` of jets, level ``k`` multiplying ``dt**k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..boundary import BoundaryParams
from ..lattice import SchemeParams, collision_matrix, inverse_moment_matrix, moment_matrix, VELOCITIES
from .jets import DerivativeJet, MONOMIALS, dot, matvec, shift_series, stack
from .matrices import BoundaryMatrices, build_matrices, resolve_params

LEVELS = 3


def _zero_series(*lead):
    return [DerivativeJet.zeros(*lead) for _ in range(LEVELS)]


def _add_series(a, b, scale=1.0):
    return [x + y * scale for x, y in zip(a, b)]


def data_series(scheme: str, p: SchemeParams, bp: BoundaryParams | None = None,
                time_offset: float | None = None):
    """Population-space data ``xi`` of a bottom-wall closure as a series of ``(9,)`` jets.

    Wall momentum is sampled at the cell abscissa or half a cell to either side,
    at time ``t + time_offset*dt`` (one half for plain bounce back, zero for the
    corrected schemes). Density differences with the cells above become
    shifted-density series.
    """
    bp = resolve_params(scheme, p, bp)
    if time_offset is None:
        time_offset = 0.5 if scheme == "classical" else 0.0
    lam = p.lam
    Jx, Jy, rho = (DerivativeJet.symbol(n) for n in ("Jx", "Jy", "rho"))
    xi = [[DerivativeJet.zeros() for _ in range(9)] for _ in range(LEVELS)]

    def put(j, series, scale):
        for k in range(LEVELS):
            xi[k][j] = xi[k][j] + series[k] * scale

    put(2, shift_series(Jy, time_offset, 0.0, 0.0, lam), 2.0 / (3.0 * lam))
    put(5, shift_series(Jx + Jy, time_offset, -0.5, 0.0, lam), 1.0 / (6.0 * lam))
    put(6, shift_series(Jy - Jx, time_offset, 0.5, 0.0, lam), 1.0 / (6.0 * lam))
    # rho(x) - rho(x + (a, b) dx)
    for j, k_w, (a, b) in ((2, bp.k2, (0, 1)), (5, bp.k5, (1, 1)), (6, bp.k6, (-1, 1))):
        if k_w:
            shifted = shift_series(rho, 0.0, a, b, lam)
            put(j, [rho - shifted[0]] + [-s for s in shifted[1:]], k_w / 36.0)
    return [stack(level) for level in xi]


# --------------------------------------------------------------------------- equivalent equations


def _rules_closed_form(p: SchemeParams):
    """First-order rule ``d_t W = R0`` and its ``dt`` correction ``R1`` per field."""
    lam2, c2 = p.lam**2, p.sound_speed**2
    rho, Jx, Jy = (DerivativeJet.symbol(n) for n in ("rho", "Jx", "Jy"))
    div = Jx.d("x") + Jy.d("y")
    R0 = {"rho": -div, "Jx": rho.d("x") * -c2, "Jy": rho.d("y") * -c2}
    lap = lambda F: F.d("x").d("x") + F.d("y").d("y")
    R1 = {
        "rho": DerivativeJet.zeros(),
        "Jx": lap(Jx) * (lam2 / 3.0 * p.sigma4) - div.d("x") * (lam2 / 6.0 * p.sigma3 * p.alpha),
        "Jy": lap(Jy) * (lam2 / 3.0 * p.sigma4) - div.d("y") * (lam2 / 6.0 * p.sigma3 * p.alpha),
    }
    return R0, R1


def interior_equivalent_equations(p: SchemeParams):
    """Derive ``d_t W = R0 + dt R1`` directly from the interior scheme.

    Independent of :func:`_rules_closed_form`; used to validate it.
    """
    M, Minv, J0 = moment_matrix(p.lam), inverse_moment_matrix(p.lam), collision_matrix(p)
    v = p.lam * VELOCITIES.astype(float)
    B = [M @ np.diag(v[:, a]) @ Minv @ J0 for a in (0, 1)]
    Bt = {(a, b): M @ np.diag(v[:, a] * v[:, b]) @ Minv @ J0 for a in (0, 1) for b in (0, 1)}
    ax = ("x", "y")
    rho, Jx, Jy = (DerivativeJet.symbol(n) for n in ("rho", "Jx", "Jy"))
    lam2 = p.lam**2
    m0 = stack([rho, Jx, Jy, rho * (p.alpha * lam2), DerivativeJet.zeros(), DerivativeJet.zeros(),
                Jx * -lam2, Jy * -lam2, rho * (p.beta * lam2**2)])
    grad0 = matvec(B[0], m0.d("x")) + matvec(B[1], m0.d("y"))
    R0 = {name: -grad0[i] for i, name in enumerate(("rho", "Jx", "Jy"))}
    rules0 = (R0, {k: DerivativeJet.zeros() for k in R0})

    def elim0(jets):
        return eliminate_time([jets, DerivativeJet.zeros(*jets.shape), DerivativeJet.zeros(*jets.shape)],
                              p, rules=rules0)[0]

    rhs1 = elim0(-m0.d("t") - grad0)
    A = np.eye(9) - J0
    m1 = np.zeros((9,) + rhs1.c.shape[1:])
    m1[3:] = np.einsum("ij,j...->i...", np.linalg.inv(A[3:, 3:]), rhs1.c[3:])
    m1 = DerivativeJet(m1)
    second = DerivativeJet.zeros(9)
    for (a, b), Bab in Bt.items():
        second = second + matvec(Bab, m0.d(ax[a]).d(ax[b]))
    rhs2 = -m1.d("t") - matvec(B[0], m1.d("x")) - matvec(B[1], m1.d("y")) + (second - m0.d("t").d("t")) * 0.5
    rhs2 = elim0(rhs2)
    R1 = {name: rhs2[i] for i, name in enumerate(("rho", "Jx", "Jy"))}
    return R0, R1


def eliminate_time(series, p: SchemeParams, rules=None):
    """Replace every time derivative using the equivalent equations.

    ``d_t F`` becomes ``R0[F]`` at the same level plus ``R1[F]`` one level up;
    ``d_t^2 F`` becomes ``d_t R0[F]`` with the inner derivative eliminated again.
    Terms pushed beyond second order are dropped.
    """
    R0, R1 = rules if rules is not None else _rules_closed_form(p)
    fields = ("rho", "Jx", "Jy")
    lead = series[0].shape
    out = [DerivativeJet(np.array(s.c, copy=True)) for s in series] + [DerivativeJet.zeros(*lead)]

    def dt_of(jet):
        """``d_t`` of a time-free single jet as (same-level, next-level) parts."""
        lo, hi = DerivativeJet.zeros(), DerivativeJet.zeros()
        for fname, mono, val in jet.terms():
            ops = "x" * mono[1] + "y" * mono[2]
            a, b = R0[fname], R1[fname]
            for o in ops:
                a, b = a.d(o), b.d(o)
            lo, hi = lo + a * val, hi + b * val
        return lo, hi

    for level in range(LEVELS):
        cur = out[level].c
        flat = cur.reshape(-1, cur.shape[-2], cur.shape[-1])
        nxt = out[level + 1].c.reshape(flat.shape) if level + 1 < len(out) else None
        for idx in range(flat.shape[0]):
            jet = DerivativeJet(flat[idx].copy())
            for f, fname in enumerate(fields):
                for k, mono in enumerate(MONOMIALS):
                    val = jet.c[f, k]
                    if mono[0] == 0 or val == 0.0:
                        continue
                    flat[idx, f, k] = 0.0
                    base = DerivativeJet.symbol(fname, (0, mono[1], mono[2]))
                    lo, hi = dt_of(base)
                    if mono[0] == 2:
                        lo, _ = dt_of(lo)
                        hi = DerivativeJet.zeros()
                    flat[idx] += lo.c * val
                    if nxt is not None:
                        nxt[idx] += hi.c * val
        out[level].c = flat.reshape(cur.shape)
        if nxt is not None:
            out[level + 1].c = nxt.reshape(out[level + 1].c.shape)
    return out[:LEVELS]


# --------------------------------------------------------------------------- boundary expansion


@dataclass
class ExpansionResult:
    scheme: str
    params: SchemeParams
    bp: BoundaryParams
    matrices: BoundaryMatrices
    m: list  # [m0, m1, m2], each a (9,) jet stack
    residuals: list  # compatibility residual per level (raw, with time derivatives)
    eliminated_residuals: list = field(default_factory=list)

    def moment_series(self, k: int):
        return [level[k] for level in self.m]


def expand(scheme: str, p: SchemeParams, bp: BoundaryParams | None = None, xi=None,
           time_offset: float | None = None) -> ExpansionResult:
    """Solve ``K m_k = g_k`` level by level with ``m = m0 + dt m1 + dt^2 m2``."""
    bp = resolve_params(scheme, p, bp)
    bm = build_matrices(scheme, p, bp)
    if xi is None:
        xi = data_series(scheme, p, bp, time_offset)
    Mxi = [matvec(bm.M, level) for level in xi]
    S, Bx, By = bm.Sigma, bm.Balpha[0], bm.Balpha[1]
    rho = DerivativeJet.symbol("rho")

    def Bgrad(m):
        return matvec(Bx, m.d("x")) + matvec(By, m.d("y"))

    g0 = Mxi[0]
    m0 = stack([rho * c for c in bm.mu]) + matvec(S, g0)
    g1 = Mxi[1] - m0.d("t") - Bgrad(m0)
    m1 = matvec(S, g1)
    second = (matvec(bm.Btilde["xx"], m0.d("x").d("x")) + matvec(bm.Btilde["xy"], m0.d("x").d("y")) * 2.0
              + matvec(bm.Btilde["yy"], m0.d("y").d("y")))
    g2 = Mxi[2] - m1.d("t") - Bgrad(m1) + (second - m0.d("t").d("t")) * 0.5
    m2 = matvec(S, g2)
    residuals = [dot(bm.w, g) for g in (g0, g1, g2)]
    res = ExpansionResult(scheme, p, bp, bm, [m0, m1, m2], residuals)
    res.eliminated_residuals = eliminate_time(residuals, p, rules=node_rules(res))
    return res


def node_rules(res: ExpansionResult):
    """Equivalent-equation rules written for the wall-data symbols.

    The interior equations hold for the node fields ``(rho, j)``, while the
    momentum symbols stand for the wall data, ``j = J + dt j1 + ...``. Rewriting
    ``d_t J = d_t j - dt d_t j1`` moves ``R0[j1] - d_t j1`` into the ``dt``
    correction. To leading order both readings coincide.
    """
    p = res.params
    R0, R1 = _rules_closed_form(p)
    zero = DerivativeJet.zeros()
    offset = {"rho": zero}
    for name, row in (("Jx", 1), ("Jy", 2)):
        offset[name] = eliminate_time(res.moment_series(row), p)[1]
    shifted = {"rho": -(offset["Jx"].d("x") + offset["Jy"].d("y")), "Jx": zero, "Jy": zero}
    rules1 = {}
    for name in R0:
        dt_offset = eliminate_time([offset[name].d("t"), zero, zero], p)[0]
        rules1[name] = R1[name] + shifted[name] - dt_offset
    return R0, rules1
