"""Printed closed-form coefficients of the near-wall momentum expansions.

Each table maps a coefficient name to its value at the given parameters. Names
follow ``<family><scheme>_<derivatives>`` with ``_tilde`` appended for the
time-free forms; the family fixes the momentum component and the field
(see :data:`FAMILIES`). Values are per power of ``dx`` (first-order entries
multiply ``dx``, second-order entries ``dx**2``).

The formulas are transcribed as printed, including entries whose printed
name disagrees with the monomial it multiplies; :mod:`.reconcile` sorts those out.
"""
from __future__ import annotations

from ..boundary import BoundaryParams
from ..lattice import SchemeParams

# family -> (momentum component, field)
FAMILIES = {
    "alpha": ("jx", "Jx"),
    "beta": ("jx", "Jy"),
    "gamma": ("jx", "rho"),
    "theta": ("jy", "Jx"),
    "eta": ("jy", "Jy"),
    "zeta": ("jy", "rho"),
}
SCHEME_INDEX = {"classical": 0, "first_order": 1, "generalized": 2}


def _unpack(p: SchemeParams):
    return p.lam, p.alpha, p.beta, p.sigma3, p.sigma4, p.sigma7, p.sigma8


def classical_table(p: SchemeParams) -> dict[str, float]:
    lam, a, b, s3, s4, s7, s8 = _unpack(p)
    t = {
        "alpha0_t": -(4 * s7 + 3) / (2 * lam),
        "alpha0_y": 0.5,
        "gamma0_x": lam * ((3 * a + 2 * b + 4) / 6 * s7 - (a + 4) / 6 * (2 * s7 + 1.5)),
        "eta0_t": -1 / (2 * lam),
        "eta0_y": 0.5,
        "zeta0_y": -(a + 4) / 12,
        "alpha0_tt": (6 * s7**2 + 6 * s7 + 13 / 8) / lam**2,
        "alpha0_ty": -(2 * s7 + 3 * s4 + 3) / (2 * lam),
        "alpha0_xx": (24 * s4 * s7 + 8 * s7 * s8 + 12 * s4 + 8 * s7 + 15) / 24,
        "alpha0_yy": (2 * s4 + 1) / 4,
        "beta0_tx": (12 * s4 * s7 - 4 * s7 * s8 + 6 * s4 - 4 * s7 - 9) / (12 * lam),
        "beta0_xy": -(12 * s4 * s7 - 4 * s7 * s8 - 4 * s7 - 9) / 12,
        "gamma0_tx": -(
            2 * a * s3 * s7 + 6 * a * s7**2 + 12 * b * s7**2 + 4 * b * s7 * s8 - 3 * a * s3 - 3 * a * s7
            + 6 * b * s7 - 24 * s7**2 - 5 * a - b - 40 * s7 - 22
        ) / 12,
        "gamma0_xy": lam / (36 * (2 * s7 + 1)) * (
            6 * a * s3 * s7**2 - 6 * a * s4 * s7**2 + 8 * a * s7**2 * s8 + 4 * b * s3 * s7**2
            - 12 * b * s4 * s7**2 + 8 * b * s7**2 * s8 - 9 * a * s3 * s7 - 15 * a * s4 * s7
            - 4 * a * s7**2 - 2 * a * s7 * s8 - 6 * b * s3 * s7 - 6 * b * s4 * s7 + 8 * s3 * s7**2
            + 24 * s4 * s7**2 - 6 * a * s4 - 29 * a * s7 - 6 * b * s7 - 12 * s3 * s7 - 36 * s4 * s7
            - 16 * s7**2 - 8 * s7 * s8 - 9 * a - 24 * s4 - 92 * s7 - 36
        ),
        "theta0_tx": -(2 * s4 + 1) / (4 * lam),
        "theta0_xy": 0.25,
        "eta0_tt": 1 / (8 * lam**2),
        "eta0_ty": -(s4 + 4) / (6 * lam),
        "eta0_xx": (4 * s4 + 1) / 24,
        "eta0_yy": (2 * s4 + 5) / 12,
        "zeta0_ty": (2 * a * s3 + a + 8) / 24,
        "zeta0_xx": -lam / 24 * (2 * s4 + 1) * (a + 4),
        "zeta0_yy": -lam / (72 * (1 + 2 * s7)) * (
            6 * a * s3 * s7 - 2 * a * s4 * s7 + 4 * b * s3 * s7 - 4 * b * s4 * s7 + 2 * a * s4
            + 10 * a * s7 + 8 * s3 * s7 + 8 * s4 * s7 + 5 * a + 8 * s4 + 40 * s7 + 20
        ),
    }
    return t


def classical_tilde_table(p: SchemeParams) -> dict[str, float]:
    lam, a, b, s3, s4, s7, s8 = _unpack(p)
    t = {
        "alpha0_y": 0.5,
        "gamma0_x": lam / 6 * (3 * a + 2 * b + 4) * s7,
        "eta0_y": 0.5,
        "zeta0_y": -(a + 4) / 12,
        "alpha0_xx": (
            24 * a * s3 * s7 + 72 * a * s7**2 + 48 * b * s7**2 + 16 * b * s7 * s8 + 36 * a * s7
            + 24 * b * s7 + 16 * s4 * s7 + 96 * s7**2 + 16 * s7 * s8 - 7 * a - 4 * b + 48 * s7 - 6
        ) / 48,
        "alpha0_yy": -(8 * s4 * s7 - 3) / 12,
        "beta0_xy": (
            24 * a * s3 * s7 + 72 * a * s7**2 + 48 * b * s7**2 + 16 * b * s7 * s8 + 36 * a * s7
            + 24 * b * s7 - 48 * s4 * s7 + 96 * s7**2 + 16 * s7 * s8 - 7 * a - 4 * b + 48 * s7
        ) / 48,
        "gamma0_xy": lam / (72 * (2 * s7 + 1)) * (
            12 * a * s3 * s7**2 - 36 * a * s4 * s7**2 + 24 * a * s7**2 * s8 + 8 * b * s3 * s7**2
            - 24 * b * s4 * s7**2 + 16 * b * s7**2 * s8 - 18 * a * s3 * s7 - 18 * a * s4 * s7
            + 24 * a * s7**2 - 12 * b * s3 * s7 - 12 * b * s4 * s7 + 16 * s3 * s7**2
            - 48 * s4 * s7**2 + 32 * s7**2 * s8 + 12 * a * s7 - 12 * b * s7 - 24 * s3 * s7
            - 24 * s4 * s7 + 96 * s7**2 + 9 * a + 96 * s7 + 36
        ),
        "theta0_xy": -a / 48,
        "eta0_xx": 1 / 24,
        "eta0_yy": -(a - 8) / 48,
        "zeta0_yy": -lam / (72 * (1 + 2 * s7)) * (
            6 * a * s3 * s7 - 6 * a * s4 * s7 + 4 * b * s3 * s7 - 4 * b * s4 * s7 - 6 * a * s7
            + 8 * s3 * s7 - 8 * s4 * s7 - 3 * a - 24 * s7 - 12
        ),
    }
    return {k + "_tilde": v for k, v in t.items()}


def first_order_table(p: SchemeParams) -> dict[str, float]:
    lam, a, b, s3, s4, s7, s8 = _unpack(p)
    return {
        "alpha1_y": 0.5,
        "alpha1_t": -3 / lam,
        "gamma1_y": -lam / 4 * (4 + a),
        "eta1_y": 0.5,
        "eta1_t": -1 / lam,
        "zeta1_y": -lam / 6 * (4 + a),
        "alpha1_tt": 15 / (2 * lam**2),
        "alpha1_ty": (4 * s7 - 6 * s4 - 11) / (4 * lam),
        "alpha1_xx": (24 * s4 + 4 * s8 + 19) / 24,
        "alpha1_yy": (2 * s4 + 1) / 4,
        "beta1_tx": (12 * s4 - 2 * s8 - 11) / (12 * lam),
        "beta1_xy": (2 * s8 - 6 * s4 + 12) / 12,
        "gamma1_tx": (17 * a + b - 2 * b * s8 + 2 * a * s3 + 72) / (12 * lam),
        "gamma1_xy": lam / 36 * (
            88 + 28 * a + 12 * s4 + 6 * b + 4 * s8 + 3 * s4 * a + 12 * a * s7 + 12 * b * s7 + a * s8
        ),
        "theta1_tx": -(5 - 4 * s7 + 6 * s4) / (12 * lam),
        "theta1_xy": 0.25,
        "eta1_ty": -(11 + 2 * s4) / (12 * lam),
        "eta1_xx": (1 + 4 * s4) / 24,
        "eta1_xy": (5 + 2 * s4) / 12,
        "zeta1_ty": (2 * a * s3 + 16 + 3 * a) / 24,
        "zeta1_xx": -lam / 36 * (-4 * s7 + 16 + b + 12 * s4 + 5 * a + a * s7 + 2 * b * s7 + 3 * s4 * a),
        "zeta1_yy": -lam / 72 * (11 + 2 * s4) * (4 + a),
    }


def first_order_tilde_table(p: SchemeParams) -> dict[str, float]:
    lam, a, b, s3, s4, s7, s8 = _unpack(p)
    t = {
        "alpha1_y": 0.5,
        "eta1_y": 0.5,
        "alpha1_xx": (8 * a * s3 - 5 - 2 * b - 4 * a + 4 * s8 + 4 * b * s8) / 24,
        "alpha1_yy": -(2 * s4 - 1) / 4,
        "beta1_xy": (4 * a * s3 - 2 * a + 2 * s8 - 6 * s4 + 2 * b * s8 - b - 1) / 12,
        "gamma1_xy": -lam / 6 * (b + 3 * a * s7 + 2 * b * s7 + 4 * s7 + a),
        "theta1_xy": (2 * a * s3 - 2 - a) / 24,
        "eta1_xx": -(4 * s4 - 1) / 24,
        "eta1_yy": (2 * a * s3 - 4 * s4 + 2 - a) / 24,
        "zeta1_xx": -lam / 72 * (8 * s7 + 5 * a + 2 * b + 6 * a * s7 + 4 * b * s7 + 12),
    }
    return {k + "_tilde": v for k, v in t.items()}


def generalized_denominator(p: SchemeParams, bp: BoundaryParams) -> float:
    """Common denominator of the printed y-momentum coefficients."""
    s7, a2, a5 = p.sigma7, bp.a2, bp.a5
    return 4 * a5 * s7 - 2 * a5 + 2 * s7 * a2 - 6 * s7 - 3 - a2


def generalized_table(p: SchemeParams, bp: BoundaryParams) -> dict[str, float]:
    lam, a, b, s3, s4, s7, s8 = _unpack(p)
    a2, a5 = bp.a2, bp.a5
    D = generalized_denominator(p, bp)
    A = 2 * a5 * s7 - 2 * s7 - 2 - a5
    return {
        "alpha2_y": 0.5,
        "alpha2_t": A / lam,
        "gamma2_y": lam / 6 * (4 + a) * A,
        "eta2_y": 0.5,
        "eta2_t": -1 / lam,
        "zeta2_y": -lam / 6 * (4 + a),
        "alpha2_tt": (
            6 * s7**2 + 4 * a5**2 * s7**2 - 10 * a5 * s7**2 + 7 * s7 - 3 * a5 * s7 - 4 * a5**2 * s7
            + 2.5 + 4 * a5 + a5**2
        ) / lam**2,
        "alpha2_ty": (8 * a5 * s7 - 4 * s7 - 6 * s4 - 7 - 4 * a5) / (4 * lam),
        "alpha2_xx": -(
            8 * a5 * s7 - 8 * s7 * s8 + 24 * s4 * a5 * s7 + 8 * a5 * s7 * s8 - 8 * s7 - 24 * s4 * s7
            - 12 * s4 * a5 - 4 * a5 - 4 * a5 * s8 - 15 - 12 * s4
        ) / 24,
        "alpha2_yy": (2 * s4 + 1) / 4,
        "beta2_tx": -(
            9 + 12 * s4 * a5 * s7 + 2 * a5 + 4 * s7 - 4 * a5 * s7 + 2 * a5 * s8 + 4 * s7 * s8 - 6 * s4
            - 6 * s4 * a5 - 12 * s4 * s7 - 4 * a5 * s7 * s8
        ) / (12 * lam),
        "beta2_xy": (
            12 * s4 * a5 * s7 + 4 * s7 - 12 * s4 * s7 + 4 * s7 * s8 - 4 * a5 * s7 - 4 * a5 * s7 * s8
            + 2 * a5 - 6 * s4 * a5 + 2 * a5 * s8 + 9
        ) / 12,
        "gamma2_tx": (
            30 + 7 * a + b + 8 * a5**2 + 64 * s7 + 3 * a * s3 + 34 * a5 - 32 * a5 * s7
            - 2 * b * a5 * s8 - 4 * b * s7 * s8 - a * a5 * s3 - 2 * a * s7 * s3 - 72 * a5 * s7**2
            + 40 * s7**2 + 2 * a * a5 * s7 * s3 + 4 * b * a5 * s7 * s8 + 32 * a5**2 * s7**2
            - 32 * a5**2 * s7 + 2 * b * s7 + 17 * a * s7 - 2 * a5 * s7 * b - 9 * a * a5 * s7
            + 8 * a5 * a + 6 * s7**2 * a - 4 * s7**2 * b + 2 * a5**2 * a + 8 * a5**2 * s7**2 * a
            - 8 * a * a5**2 * s7 - 14 * a5 * s7**2 * a + 4 * a5 * s7**2 * b
        ) / 12,
        "gamma2_xy": -lam / 36 * (
            60 - 6 * s7 * a * s4 + 2 * s7 * a * s8 + a5 * a * s8 + 15 * a + 8 * s7 * s8 + 4 * a5 * s8
            - 12 * s4 * a5 - 24 * s4 * s7 + 24 * s4 + 56 * s7 + 28 * a5 - 56 * a5 * s7 + 6 * a * s4
            - 8 * a5 * s7 * s8 + 24 * s4 * a5 * s7 + 24 * b * s7 + 38 * a * s7 - 12 * a5 * s7 * b
            - 26 * a5 * s7 * a + 6 * a5 * b + 13 * a * a5 - 2 * a * a5 * s7 * s8 + 6 * a * a5 * s7 * s4
            - 3 * a5 * a * s4
        ),
        "theta2_tx": -(4 * a5 * s7 - 3 - 2 * a5 - 6 * s4) * (2 * s7 * a2 - 2 * s7 - a2 - 1) / (4 * lam * D),
        "theta2_xy": (
            12 * s7 * a2 * s4 - 4 * s7 * a2 * s8 + 14 * s7 * a2 - 6 * s4 * a2 + 2 * a2 * s8 - 7 * a2
            + 4 * a5 * s7 - 18 * s7 + 4 * a5 * s7 * s8 - 12 * a5 * s7 * s4 + 6 * a5 * s4 - 2 * a5 * s8
            - 2 * a5 - 9
        ) / (12 * D),
        "eta2_ty": (
            -26 * s7 * a2 + 4 * s7 * a2 * s8 + 13 * a2 - 2 * a2 * s8 + 12 * s4 * s7 - 4 * a5 * s7 * s8
            - 12 * s4 * a5 * s7 - 40 * a5 * s7 + 66 * s7 + 20 * a5 + 2 * a5 * s8 + 6 * s4 * a5
            + 6 * s4 + 33
        ) / (12 * lam * D),
        "eta2_xy": -(
            -14 * s7 * a2 + 4 * s7 * a2 * s8 + 7 * a2 - 2 * a2 * s8 - 16 * a5 * s7 + 12 * s4 * s7
            + 30 * s7 - 12 * s4 * a5 * s7 - 4 * a5 * s7 * s8 + 8 * a5 + 2 * a5 * s8 + 6 * s4 * a5
            + 6 * s4 + 15
        ) / (12 * D),
        "zeta2_ty": (
            -48 - 9 * a - 96 * s7 - 6 * a * s3 - 24 * a2 - 24 * a5 + 64 * a5 * s7 + 32 * s7 * a2
            + 4 * b * a5 * s8 + 2 * a * a5 * s3 - 12 * a * s7 * s3 + 32 * s7**2 * a2 - 32 * a5 * s7**2
            - 4 * a * a5 * s7 * s3 - 8 * b * a5 * s7 * s8 - 18 * a * s7 + 4 * a5 * s7 * b
            + 18 * a5 * s7 * a - 6 * a2 * a - 2 * a2 * b + 2 * a5 * b - 3 * a5 * a - 4 * s7 * a2 * b
            - 8 * a * a2 * s3 + 24 * s7**2 * a2 * a + 16 * s7**2 * a2 * b - 4 * a2 * b * s8
            - 24 * a5 * s7**2 * a - 16 * a5 * s7**2 * b + 8 * s7 * a2 * b * s8 + 16 * a * s7 * a2 * s3
        ) / (24 * D),
        "zeta2_xx": lam / (24 * D) * (
            4 * a5 * s7 * b - 16 * s7 - 8 * b * s7 - 12 * a * s7 + 10 * a5 * s7 * a + 24 * a5 * s7
            - 20 - 24 * s4 - 5 * a5 * a - 5 * a - 6 * a * s4 - 12 * a5 - 2 * a5 * b
        ),
        "zeta2_yy": -lam / (72 * D) * (
            -132 - 12 * s7 * a * s4 - 2 * a5 * a * s8 - 33 * a + 8 * a2 * s8 - 8 * a5 * s8
            - 24 * s4 * a5 - 48 * s4 * s7 - 24 * s4 - 264 * s7 - 40 * a2 - 92 * a5 + 208 * a5 * s7
            + 56 * s7 * a2 + 48 * s7**2 * a2 - 48 * a5 * s7**2 - 6 * a * s4 + 2 * a2 * a * s8
            - 16 * s7 * a2 * s8 + 16 * a5 * s7 * s8 + 48 * s4 * a5 * s7 - 66 * a * s7
            + 24 * a5 * s7 * b + 76 * a5 * s7 * a - 4 * a2 * a + 6 * a2 * b - 6 * a5 * b - 29 * a5 * a
            - 24 * s7 * a2 * b - 10 * s7 * a2 * a + 36 * s7**2 * a2 * a + 24 * s7**2 * a2 * b
            - 36 * a5 * s7**2 * a - 24 * a5 * s7**2 * b - 4 * s7 * a2 * a * s8 + 4 * a5 * s7 * a * s8
            + 12 * a5 * s7 * a * s4 - 6 * a5 * a * s4
        ),
    }


def generalized_tilde_table(p: SchemeParams, bp: BoundaryParams) -> dict[str, float]:
    lam, a, b, s3, s4, s7, s8 = _unpack(p)
    a2, a5 = bp.a2, bp.a5
    D = generalized_denominator(p, bp)
    t = {
        "alpha2_y": 0.5,
        "eta2_y": 0.5,
        "alpha2_xx": -(
            5 - 8 * s7 * s4 - 8 * s7 * s8 + 6 * a * s7 + 4 * b * s7 - 6 * a5 * s7 * a
            + 8 * b * a5 * s7 * s8 + 12 * a * a5 * s7 * s3 + 4 * a + 2 * b - 4 * a5 * s7 * b
            - 8 * b * s7 * s8 + 4 * s4 + 8 * s7 + 8 * a5 * s7 * s4 + 8 * a5 * s7 * s8 - 2 * a * s3
            - 8 * a5 * s7 + 16 * a5 * s7**2 - 16 * s7**2 - 12 * s7**2 * a - 8 * s7**2 * b
            - 4 * a5 * s8 - 4 * a5 * s4 - 4 * b * a5 * s8 + 8 * a5 * s7**2 * b + 12 * a5 * s7**2 * a
            - 12 * a * s7 * s3 - 6 * a * a5 * s3
        ) / 24,
        "alpha2_yy": (8 * a5 * s7 * s4 + 3 - 4 * a5 * s4 - 2 * s4 - 8 * s7 * s4) / 12,
        "beta2_xy": -(
            1 + 12 * s7 * s4 - 4 * s7 * s8 + 3 * a * s7 + 2 * b * s7 - 3 * a5 * s7 * a
            + 4 * b * a5 * s7 * s8 + 6 * a * a5 * s7 * s3 + 2 * a + b - 2 * a5 * s7 * b
            - 4 * b * s7 * s8 + 4 * s7 - 12 * a5 * s7 * s4 + 4 * a5 * s7 * s8 - a * s3 - 4 * a5 * s7
            + 8 * a5 * s7**2 - 8 * s7**2 - 6 * s7**2 * a - 4 * s7**2 * b - 2 * a5 * s8 + 6 * a5 * s4
            - 2 * b * a5 * s8 + 4 * a5 * s7**2 * b + 6 * a5 * s7**2 * a - 6 * a * s7 * s3
            - 3 * a * a5 * s3
        ) / 12,
        # printed "a_y5" read as a5
        "gamma2_xy": lam / 6 * (
            2 * a5 * s7 * a + 2 * a5 * s7 * b - a5 * b - 5 * a * s7 - 4 * b * s7 - a5 * a - 4 * s7
        ),
        "theta2_xy": -(
            -6 - 6 * a * s7 + 10 * a5 * s7 * a - 4 * a2 * a - 2 * a2 * b - 4 * s7 * a2 * a
            - 4 * s7 * a2 * b + 2 * a5 * b + a5 * a - 4 * a * a2 * s3 + 24 * s7**2 * a2 * a
            - 4 * a2 * b * s8 + 16 * b * s7**2 * a2 + 8 * a * s7 * a2 * s3 + 8 * s7 * a2 * b * s8
            - 4 * a2 * s8 - 8 * b * a5 * s7 * s8 - 20 * a * a5 * s7 * s3 + 12 * s4 * a2 - 3 * a
            + 8 * s7 * a2 * s8 + 4 * a5 * s7 * b - 12 * s7 - 24 * s7 * a2 * s4 + 24 * a5 * s7 * s4
            - 8 * a5 * s7 * s8 + 6 * a * s3 - 2 * a2 - 4 * a5 + 24 * a5 * s7 - 12 * s7 * a2
            - 32 * a5 * s7**2 + 32 * s7**2 * a2 + 4 * a5 * s8 - 12 * a5 * s4 + 4 * b * a5 * s8
            - 16 * a5 * s7**2 * b - 24 * a5 * s7**2 * a + 12 * a * s7 * s3 + 10 * a * a5 * s3
        ) / (24 * D),
        "eta2_xx": (
            -6 * s7 - 3 * a2 - 32 * a5 * s7 * s4 + 8 * s7 * a2 * s4 - 3 + 12 * s4 + 6 * s7 * a2
            + 16 * a5 * s4 + 24 * s7 * s4 - 4 * s4 * a2
        ) / (24 * D),
        "eta2_yy": -(
            6 - 24 * s7 * s4 - 6 * a * s7 + 10 * a5 * s7 * a - 4 * a2 * a - 2 * a2 * b
            - 4 * s7 * a2 * a - 4 * s7 * a2 * b + 2 * a5 * b + a5 * a - 4 * a * a2 * s3
            + 24 * s7**2 * a2 * a - 4 * a2 * b * s8 + 16 * b * s7**2 * a2 + 8 * a * s7 * a2 * s3
            + 8 * s7 * a2 * b * s8 - 4 * a2 * s8 - 8 * b * a5 * s7 * s8 - 20 * a * a5 * s7 * s3
            - 8 * s4 * a2 - 3 * a + 8 * s7 * a2 * s8 + 4 * a5 * s7 * b - 12 * s4 + 12 * s7
            + 16 * s7 * a2 * s4 + 8 * a5 * s7 * s4 - 8 * a5 * s7 * s8 + 6 * a * s3 - 2 * a2 + 8 * a5
            - 12 * s7 * a2 - 32 * a5 * s7**2 + 32 * s7**2 * a2 + 4 * a5 * s8 - 4 * a5 * s4
            + 4 * b * a5 * s8 - 16 * a5 * s7**2 * b - 24 * a5 * s7**2 * a + 12 * a * s7 * s3
            + 10 * a * a5 * s3
        ) / (24 * D),
        "zeta2_xx": lam / 24 * (2 * s7 * a2 - 2 * s7 - a2 - 1) / D * (
            -8 * b * s7 - 12 * a * s7 - 16 * s7 + 8 * a5 * s7 + 6 * a5 * s7 * a + 4 * a5 * s7 * b
            - 3 * a5 * a - 2 * a - 4 * a5 - 2 * a5 * b - 8
        ),
        "zeta2_yy": -lam / 24 * (2 * s7 - 1) ** 2 / D * (3 * a + 2 * b + 4) * (a2 - a5),
    }
    return {k + "_tilde": v for k, v in t.items()}


def closed_form_table(scheme: str, p: SchemeParams, bp: BoundaryParams | None = None,
                      tilde: bool = False) -> dict[str, float]:
    """Printed coefficients for ``scheme``; ``tilde`` selects the time-free forms."""
    if scheme == "classical":
        return classical_tilde_table(p) if tilde else classical_table(p)
    if scheme == "first_order":
        return first_order_tilde_table(p) if tilde else first_order_table(p)
    if scheme == "generalized":
        if bp is None:
            raise ValueError("generalized scheme needs BoundaryParams")
        return generalized_tilde_table(p, bp) if tilde else generalized_table(p, bp)
    raise ValueError(f"unknown scheme {scheme!r}")
