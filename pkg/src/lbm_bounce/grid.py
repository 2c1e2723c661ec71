"""Population field container, streaming and the full time step."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernels
from .lattice import (
    VELOCITIES,
    SchemeParams,
    equilibrium_populations,
    moment_matrix,
    population_collision_matrix,
)

SIDES = ("left", "right", "bottom", "top")
TAGS = ("periodic", "wall", "pressure")


class BoundaryError(RuntimeError):
    """A non-periodic edge was left without a closure."""


class PopulationField:
    """Populations ``f[j, x, y]`` on an ``nx`` by ``ny`` grid plus edge tags.

    Cell ``(i, j)`` is centred at ``((i + 1/2) dx, (j + 1/2) dx)``. Edge tags are
    one of ``periodic``, ``wall`` or ``pressure``; opposite sides must agree on
    periodicity.
    """

    def __init__(self, nx: int, ny: int, f=None, edges: dict | None = None):
        if nx < 1 or ny < 1:
            raise ValueError(f"grid must be at least 1x1, got {nx}x{ny}")
        self._nx, self._ny = int(nx), int(ny)
        tags = {side: "periodic" for side in SIDES}
        tags.update(edges or {})
        for side, tag in tags.items():
            if side not in SIDES or tag not in TAGS:
                raise ValueError(f"bad edge tag {side}={tag}")
        for a, b in (("left", "right"), ("bottom", "top")):
            if (tags[a] == "periodic") != (tags[b] == "periodic"):
                raise ValueError(f"edges {a}/{b} must both be periodic or both closed")
        self._edges = tags
        if f is None:
            f = np.zeros((9, self._nx, self._ny))
        f = np.ascontiguousarray(f, dtype=float)
        if f.shape != (9, self._nx, self._ny):
            raise ValueError(f"population array has shape {f.shape}, expected {(9, nx, ny)}")
        self.f = f

    @property
    def nx(self) -> int:
        return self._nx

    @property
    def ny(self) -> int:
        return self._ny

    @property
    def edges(self) -> dict:
        return dict(self._edges)

    def periodic_x(self) -> bool:
        return self._edges["left"] == "periodic"

    def periodic_y(self) -> bool:
        return self._edges["bottom"] == "periodic"

    def copy(self, f=None) -> "PopulationField":
        return PopulationField(self._nx, self._ny, self.f.copy() if f is None else f, self._edges)

    @classmethod
    def at_equilibrium(cls, nx, ny, rho, ux, uy, p: SchemeParams, edges=None) -> "PopulationField":
        shape = (nx, ny)
        feq = equilibrium_populations(
            np.broadcast_to(rho, shape), np.broadcast_to(ux, shape), np.broadcast_to(uy, shape), p
        )
        return cls(nx, ny, feq, edges)

    def moments(self, p: SchemeParams) -> np.ndarray:
        return np.tensordot(moment_matrix(p.lam), self.f, axes=1)

    def density(self) -> np.ndarray:
        return self.f.sum(axis=0)

    def momentum(self, p: SchemeParams) -> tuple[np.ndarray, np.ndarray]:
        m = np.tensordot(moment_matrix(p.lam)[1:3], self.f, axes=1)
        return m[0], m[1]

    def unresolved_mask(self) -> np.ndarray:
        """Boolean ``(9, nx, ny)`` mask of entries whose stream source lies off-grid."""
        mask = np.zeros((9, self._nx, self._ny), dtype=bool)
        for j, (ex, ey) in enumerate(VELOCITIES):
            if not self.periodic_x():
                if ex == 1:
                    mask[j, 0, :] = True
                elif ex == -1:
                    mask[j, -1, :] = True
            if not self.periodic_y():
                if ey == 1:
                    mask[j, :, 0] = True
                elif ey == -1:
                    mask[j, :, -1] = True
        return mask


def stream(field: PopulationField) -> PopulationField:
    """Pull ``f_i(x) <- f_i(x - e_i)``, wrapping periodic edges.

    Entries whose source lies beyond a closed edge are set to NaN so that a
    missing closure cannot go unnoticed.
    """
    out = np.empty_like(field.f)
    for j, (ex, ey) in enumerate(VELOCITIES):
        out[j] = np.roll(field.f[j], shift=(int(ex), int(ey)), axis=(0, 1))
    out[field.unresolved_mask()] = np.nan
    return field.copy(out)


class Stepper:
    """Reusable buffers and collision matrix for repeated time steps."""

    def __init__(self, field: PopulationField, p: SchemeParams, boundaries: Sequence = (), backend=None):
        self.p = p
        self.boundaries = list(boundaries)
        self.C = np.ascontiguousarray(population_collision_matrix(p))
        self.kernel = kernels.BACKENDS[backend] if backend else kernels.collide_stream
        self.t = 0.0
        covered = {b.side for b in self.boundaries}
        missing = [s for s, tag in field.edges.items() if tag != "periodic" and s not in covered]
        if missing:
            raise BoundaryError(f"no closure for closed edge(s): {', '.join(missing)}")
        self.field = field.copy()
        self._fstar = np.empty_like(field.f)
        self._fout = np.empty_like(field.f)

    def step(self, n: int = 1) -> PopulationField:
        f = self.field
        for _ in range(n):
            self.kernel(f.f, self.C, self._fstar, self._fout)
            for b in self.boundaries:
                b.apply(self._fout, self._fstar, f, self.p, self.t)
            f.f, self._fout = self._fout, f.f
            self.t += self.p.dt
        return f


def step(field: PopulationField, p: SchemeParams, boundaries: Sequence = (), t: float = 0.0) -> PopulationField:
    """One collide-stream-closure update, returning a new field."""
    s = Stepper(field, p, boundaries)
    s.t = t
    out = s.step()
    if np.isnan(out.f).any():
        raise BoundaryError("unresolved populations remain after boundary closures")
    return out
