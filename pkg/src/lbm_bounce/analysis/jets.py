"""Truncated derivative jets over the fields (rho, Jx, Jy).

A jet is a linear combination of monomials ``d_t^a d_x^b d_y^c F`` with
``a + b + c <= 2`` and ``F`` one of the three fields. Coefficients live in a
numpy array whose last two axes are (field, monomial), so a stack of nine jets
(one per moment) is simply an array of shape ``(9, 3, 10)``.
"""
from __future__ import annotations

import numpy as np

FIELDS = ("rho", "Jx", "Jy")
MONOMIALS = (
    (0, 0, 0),
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
)
MAX_ORDER = 2
NF, NM = len(FIELDS), len(MONOMIALS)
_INDEX = {m: i for i, m in enumerate(MONOMIALS)}
AXES = {"t": 0, "x": 1, "y": 2}


def monomial_label(mono) -> str:
    """``(1, 0, 1)`` -> ``"ty"``; the empty monomial gives ``""``."""
    return "t" * mono[0] + "x" * mono[1] + "y" * mono[2]


def _shift_table(axis: int) -> np.ndarray:
    # S[i, j] = 1 when differentiating monomial j along ``axis`` gives monomial i
    S = np.zeros((NM, NM))
    for j, m in enumerate(MONOMIALS):
        up = list(m)
        up[axis] += 1
        if sum(up) <= MAX_ORDER:
            S[_INDEX[tuple(up)], j] = 1.0
    return S


_SHIFT = {ax: _shift_table(i) for ax, i in AXES.items()}


class DerivativeJet:
    """Array-backed jet; leading axes index independent jets."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape[-2:] != (NF, NM):
            raise ValueError(f"jet coefficients need trailing shape {(NF, NM)}, got {c.shape}")
        self.c = c

    # construction
    @classmethod
    def zeros(cls, *lead) -> "DerivativeJet":
        return cls(np.zeros(tuple(lead) + (NF, NM)))

    @classmethod
    def symbol(cls, field: str, mono=(0, 0, 0), coeff: float = 1.0) -> "DerivativeJet":
        j = cls.zeros()
        j.c[FIELDS.index(field), _INDEX[tuple(mono)]] = coeff
        return j

    # access
    def __getitem__(self, idx) -> "DerivativeJet":
        return DerivativeJet(self.c[idx])

    def coeff(self, field: str, mono) -> float:
        return float(self.c[..., FIELDS.index(field), _INDEX[tuple(mono)]])

    @property
    def shape(self):
        return self.c.shape[:-2]

    def terms(self):
        """Yield ``(field, monomial, value)`` for the nonzero entries of a single jet."""
        for f, name in enumerate(FIELDS):
            for k, m in enumerate(MONOMIALS):
                if self.c[f, k] != 0.0:
                    yield name, m, float(self.c[f, k])

    # linear structure
    def __add__(self, other):
        return DerivativeJet(self.c + _coeffs(other))

    def __sub__(self, other):
        return DerivativeJet(self.c - _coeffs(other))

    def __neg__(self):
        return DerivativeJet(-self.c)

    def __mul__(self, scalar):
        return DerivativeJet(self.c * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return DerivativeJet(self.c / scalar)

    def __eq__(self, other):
        return isinstance(other, DerivativeJet) and np.array_equal(self.c, other.c)

    def allclose(self, other, atol=1e-12) -> bool:
        return bool(np.allclose(self.c, _coeffs(other), rtol=0.0, atol=atol))

    def max_abs(self) -> float:
        return float(np.abs(self.c).max()) if self.c.size else 0.0

    def __repr__(self):
        if self.c.ndim == 2:
            parts = [f"{v:+.6g}*d{monomial_label(m) or '1'}({f})" for f, m, v in self.terms()]
            return "Jet(" + (" ".join(parts) or "0") + ")"
        return f"Jet(shape={self.shape})"

    # calculus
    def d(self, axis: str) -> "DerivativeJet":
        """Differentiate, dropping monomials pushed past second order."""
        return DerivativeJet(self.c @ _SHIFT[axis].T)

    def order_part(self, order: int) -> "DerivativeJet":
        mask = np.array([sum(m) == order for m in MONOMIALS], dtype=float)
        return DerivativeJet(self.c * mask)

    def time_free(self) -> bool:
        return not np.any(self.c[..., [i for i, m in enumerate(MONOMIALS) if m[0] > 0]])


def _coeffs(x):
    return x.c if isinstance(x, DerivativeJet) else np.asarray(x, float)


def matvec(A, jets: DerivativeJet) -> DerivativeJet:
    """Apply a matrix to a stack of jets along the first axis."""
    return DerivativeJet(np.einsum("ij,j...->i...", np.asarray(A, float), jets.c))


def dot(w, jets: DerivativeJet) -> DerivativeJet:
    return DerivativeJet(np.einsum("j,j...->...", np.asarray(w, float), jets.c))


def stack(jets) -> DerivativeJet:
    return DerivativeJet(np.stack([j.c for j in jets]))


def shift_series(jet: DerivativeJet, dt_shift: float, dx_shift: float, dy_shift: float, lam: float):
    """Taylor levels of ``F(x + a*dx, y + b*dx, t + c*dt)`` with ``dx = lam*dt``.

    The shifts are given in units of ``dt`` (time) and ``dx`` (space); the
    result is ``[level0, level1, level2]`` with level ``k`` multiplying ``dt**k``.
    """
    def D(j):
        return j.d("t") * dt_shift + (j.d("x") * dx_shift + j.d("y") * dy_shift) * lam

    first = D(jet)
    return [jet, first, D(first) * 0.5]
