"""Poiseuille and accordion benchmarks with analytic references and convergence fits."""
from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boundary import (
    BoundaryParams,
    PressureBoundary,
    PressureDropBoundary,
    WallBoundary,
    WallData,
)
from .grid import PopulationField, Stepper
from .lattice import ParameterError, SchemeParams


class ConvergenceError(RuntimeError):
    """A run did not reach steady state within its step budget."""

    def __init__(self, message, history):
        super().__init__(message)
        self.history = history


# --------------------------------------------------------------------------- error norms and rates


def l2_relative_error(values, reference) -> float:
    values, reference = np.asarray(values, float), np.asarray(reference, float)
    norm = np.sqrt(np.sum(reference**2))
    if norm == 0.0:
        raise ValueError("reference has zero l2 norm")
    return float(np.sqrt(np.sum((values - reference) ** 2)) / norm)


@dataclass
class ConvergenceSeries:
    sizes: list
    errors: list
    theta: float = float("nan")
    residual: float = float("nan")


def fit_rate(sizes, errors) -> ConvergenceSeries:
    """Least-squares slope of ``log e`` against ``log(1/N)``."""
    sizes, errors = np.asarray(sizes, float), np.asarray(errors, float)
    if sizes.size < 3:
        raise ValueError("need at least three mesh sizes to fit a rate")
    if np.any(errors <= 0):
        raise ValueError("errors must be positive to fit a rate")
    X = np.log(1.0 / sizes)
    Y = np.log(errors)
    (theta, _), res, *_ = np.linalg.lstsq(np.stack([X, np.ones_like(X)], axis=1), Y, rcond=None)
    residual = float(np.sqrt(res[0] / sizes.size)) if res.size else 0.0
    return ConvergenceSeries(list(sizes.astype(int)), list(errors), float(theta), residual)


# --------------------------------------------------------------------------- steady-state driver


def run_to_steady(stepper: Stepper, p: SchemeParams, tol: float = 1e-12, window: int = 100,
                  max_steps: int = 1_000_000):
    """Step until the momentum changes by less than ``tol`` (relative l2) over ``window`` steps."""
    prev = np.stack(stepper.field.momentum(p))
    history = []
    steps = 0
    while steps < max_steps:
        stepper.step(window)
        steps += window
        cur = np.stack(stepper.field.momentum(p))
        if not np.all(np.isfinite(cur)):
            raise ConvergenceError(f"solution blew up after {steps} steps", history)
        # l2 rather than max norm: the max norm sits on a round-off floor near 1e-12
        scale = np.linalg.norm(cur)
        change = np.linalg.norm(cur - prev) / scale if scale > 0 else 0.0
        history.append(change)
        if change < tol:
            return steps, history
        prev = cur
    raise ConvergenceError(f"no steady state after {steps} steps (last change {history[-1]:.3g})", history)


def _wall_factory(scheme: str, bp: BoundaryParams | None):
    if scheme not in ("classical", "first_order", "generalized"):
        raise ValueError(f"unknown scheme {scheme!r}")
    if scheme == "generalized" and bp is None:
        raise ValueError("generalized scheme needs BoundaryParams")
    return lambda side, data=None, **kw: WallBoundary(side, scheme, data, bp, **kw)


# --------------------------------------------------------------------------- Poiseuille


@dataclass
class PoiseuilleResult:
    y: np.ndarray
    ux: np.ndarray
    ux_analytic: np.ndarray
    parabola: np.ndarray  # coefficients of the fitted parabola, highest power first
    roots: tuple
    max_deviation: float
    column_variation: float
    steps: int
    closure: str

    @property
    def exact(self) -> bool:
        return self.max_deviation < 1e-8


def run_poiseuille(p: SchemeParams, scheme: str = "classical", bp: BoundaryParams | None = None,
                   nx: int = 32, ny: int = 16, dp: float = 1e-5, closure: str = "drop",
                   tol: float = 1e-12, max_steps: int = 1_000_000) -> PoiseuilleResult:
    """Pressure-driven channel between two resting walls.

    ``closure="drop"`` joins outlet and inlet periodically with a density jump
    (exact for a uniform gradient); ``closure="anti_bounce_back"`` imposes the
    inlet and outlet densities directly. The pressures at the two ends are
    ``+dp`` and ``-dp`` around the mean. The profile is sampled at mid-channel.
    """
    c2 = p.sound_speed**2
    drop = 2.0 * dp / c2
    grad = -drop / (nx * p.dx)
    x = (np.arange(nx) + 0.5) * p.dx
    y = (np.arange(ny) + 0.5) * p.dx
    rho0 = 1.0 + dp / c2 + grad * x[:, None] * np.ones((1, ny))
    edges = {"left": "pressure", "right": "pressure", "bottom": "wall", "top": "wall"}
    f = PopulationField.at_equilibrium(nx, ny, rho0, 0.0, 0.0, p, edges=edges)
    wall = _wall_factory(scheme, bp)
    if closure == "drop":
        ends = [PressureDropBoundary("left", drop), PressureDropBoundary("right", drop)]
        walls = [wall(s, wrap=True, rho_shift=-drop) for s in ("bottom", "top")]
    elif closure == "anti_bounce_back":
        ends = [PressureBoundary("left", 1.0 + dp / c2), PressureBoundary("right", 1.0 - dp / c2)]
        walls = [wall(s) for s in ("bottom", "top")]
    else:
        raise ValueError(f"unknown closure {closure!r}")
    stepper = Stepper(f, p, ends + walls)
    steps = 0
    if dp != 0.0:
        steps, _ = run_to_steady(stepper, p, tol=tol, max_steps=max_steps)
    jx, _ = stepper.field.momentum(p)
    nu = lattice_viscosity(p)
    H = ny * p.dx
    analytic = -c2 * grad / (2.0 * nu) * y * (H - y)
    mid = jx[nx // 2]
    scale = np.abs(analytic).max()
    if scale == 0.0:
        deviation = float(np.abs(mid).max())
        variation = float(np.abs(jx - mid).max())
        return PoiseuilleResult(y, mid, analytic, np.zeros(3), (float("nan"), float("nan")),
                                deviation, variation, steps, closure)
    coeffs = np.polyfit(y, mid, 2)
    roots = tuple(sorted(np.roots(coeffs).real))
    lo, hi = nx // 4, nx - nx // 4
    return PoiseuilleResult(
        y, mid, analytic, coeffs, roots,
        float(np.abs(mid - analytic).max() / scale),
        float(np.abs(jx[lo:hi] - mid).max() / scale),
        steps, closure,
    )


# --------------------------------------------------------------------------- accordion


@dataclass(frozen=True)
class AccordionParams:
    """Periodic channel ``]0, L[ x ]0, h[`` with wall momentum ``J0 cos(K x)``."""

    L: float = 1.0
    h: float = 0.5
    J0: float = 1.0
    k: int = 1
    nu: float = 0.01

    def __post_init__(self):
        if self.L <= 0 or self.h <= 0:
            raise ParameterError("accordion domain needs positive L and h")
        if self.k == 0:
            raise ParameterError("wavenumber k must be nonzero")
        if self.nu <= 0:
            raise ParameterError("viscosity must be positive")

    @property
    def K(self) -> float:
        return 2.0 * self.k * math.pi / self.L


def stream_function_profile(y, ap: AccordionParams):
    """``f, f', f'', f'''`` of the stream-function profile at heights ``y``."""
    y = np.asarray(y, float)
    K, h, J0 = ap.K, ap.h, ap.J0
    denom = math.sinh(K * h) - K * h
    A, B = math.sinh(K * h), 1.0 - math.cosh(K * h)
    S, C = np.sinh(K * y), np.cosh(K * y)
    f = -h * S + A * y * C + B * y * S
    f1 = -h * K * C + A * (C + K * y * S) + B * (S + K * y * C)
    f2 = -h * K**2 * S + A * (2 * K * S + K**2 * y * C) + B * (2 * K * C + K**2 * y * S)
    f3 = -h * K**3 * C + A * (3 * K**2 * C + K**3 * y * S) + B * (3 * K**2 * S + K**3 * y * C)
    scale = J0 / denom
    return f * scale, f1 * scale, f2 * scale, f3 * scale


def accordion_reference(x, y, ap: AccordionParams):
    """Stokes solution ``(Jx, Jy, p, psi)`` at points ``(x, y)``."""
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    K = ap.K
    f, f1, f2, f3 = stream_function_profile(y, ap)
    cos, sin = np.cos(K * x), np.sin(K * x)
    psi = f * cos
    Jx = f1 * cos
    Jy = K * f * sin
    pressure = ap.nu / K * sin * (f3 - K**2 * f1)
    return Jx, Jy, pressure, psi


def _reference_derivatives(x, ap: AccordionParams, c2: float, y0: float = 0.0):
    """Spatial jets of ``(rho, Jx, Jy)`` at height ``y0`` as dicts keyed by monomial."""
    K = ap.K
    f = stream_function_profile(np.full_like(x, y0), ap)
    f4 = 2 * K**2 * f[2] - K**4 * f[0]  # fourth derivative from the biharmonic equation
    cos, sin = np.cos(K * x), np.sin(K * x)
    nuK = ap.nu / K
    # pressure q(y) = nu/K (f''' - K^2 f'); rho' = p / c0^2
    q = nuK * (f[3] - K**2 * f[1])
    q1 = nuK * (f4 - K**2 * f[2])
    q2 = nuK * (2 * K**2 * f[3] - K**4 * f[1] - K**2 * f[3])  # f5 = 2K^2 f''' - K^4 f'
    jets = {
        "Jx": {(0, 0, 0): f[1] * cos, (0, 1, 0): -K * f[1] * sin, (0, 0, 1): f[2] * cos,
               (0, 2, 0): -K**2 * f[1] * cos, (0, 1, 1): -K * f[2] * sin, (0, 0, 2): f[3] * cos},
        "Jy": {(0, 0, 0): K * f[0] * sin, (0, 1, 0): K**2 * f[0] * cos, (0, 0, 1): K * f[1] * sin,
               (0, 2, 0): -K**3 * f[0] * sin, (0, 1, 1): K**2 * f[1] * cos, (0, 0, 2): K * f[2] * sin},
        "rho": {(0, 0, 0): q * sin / c2, (0, 1, 0): K * q * cos / c2, (0, 0, 1): q1 * sin / c2,
                (0, 2, 0): -K**2 * q * sin / c2, (0, 1, 1): K * q1 * cos / c2, (0, 0, 2): q2 * sin / c2},
    }
    return jets


def taylor_prediction(x, ap: AccordionParams, p: SchemeParams, scheme: str, bp=None, order: int = 2,
                      node_consistent: bool = True):
    """First-cell momentum predicted by the time-eliminated near-wall expansion.

    Data and their derivatives are evaluated on the wall. ``node_consistent``
    selects the elimination that treats the node momentum, not the wall data,
    as the evolving field.
    """
    from .analysis.expansion import eliminate_time, expand, node_rules

    res = expand(scheme, p, bp)
    rules = node_rules(res) if node_consistent else None
    jets = _reference_derivatives(np.asarray(x, float), ap, p.sound_speed**2)
    out = []
    for row in (1, 2):
        series = eliminate_time(res.moment_series(row), p, rules=rules)
        total = np.zeros_like(np.asarray(x, float))
        for level in range(order + 1):
            for fname, mono, val in series[level].terms():
                if mono[0] != 0:
                    raise ValueError("time derivative left after elimination")
                total = total + val * p.dt**level * jets[fname][mono]
        out.append(total)
    return out[0], out[1]


@dataclass
class AccordionRun:
    N: int
    steps: int
    x: np.ndarray
    jx: np.ndarray
    jy: np.ndarray
    references: dict  # name -> (Jx, Jy)
    errors: dict  # (component, name) -> error


ACCORDION_REFERENCES = ("wall", "taylor1", "taylor2", "exact")


def lattice_viscosity(p: SchemeParams) -> float:
    return p.lam * p.dx * p.sigma4 / 3.0


def accordion_scheme_params(N: int, ap: AccordionParams, template: SchemeParams,
                            scaling: str = "acoustic") -> SchemeParams:
    """Lattice parameters for ``N`` cells along ``x``.

    ``"diffusive"`` keeps the relaxation rates of ``template`` and the viscosity
    ``ap.nu`` by raising ``lam`` like ``N``. ``"acoustic"`` keeps ``lam`` and the
    rates, so the viscosity shrinks like ``1/N``.
    """
    dx = ap.L / N
    if scaling == "acoustic":
        return template.replace(dx=dx)
    if scaling == "diffusive":
        return template.replace(dx=dx, lam=3.0 * ap.nu / (template.sigma4 * dx))
    raise ValueError(f"unknown scaling {scaling!r}")


def run_accordion(N: int, ap: AccordionParams, p: SchemeParams, scheme: str = "classical",
                  bp: BoundaryParams | None = None, tol: float = 1e-12,
                  max_steps: int = 1_000_000) -> AccordionRun:
    """Steady accordion flow on an ``N x N h/L`` grid; errors in the first cell row.

    The reference uses the lattice viscosity of ``p``, not ``ap.nu``.
    """
    ap = dataclasses.replace(ap, nu=lattice_viscosity(p))
    ny = int(round(N * ap.h / ap.L))
    if ny < 2:
        raise ValueError("accordion grid needs at least two cells across the channel")
    x = (np.arange(N) + 0.5) * p.dx
    y = (np.arange(ny) + 0.5) * p.dx
    X, Y = np.meshgrid(x, y, indexing="ij")
    Jx0, Jy0, pr0, _ = accordion_reference(X, Y, ap)
    c2 = p.sound_speed**2
    edges = {"left": "periodic", "right": "periodic", "bottom": "wall", "top": "wall"}
    f = PopulationField.at_equilibrium(N, ny, 1.0 + pr0 / c2, Jx0, Jy0, p, edges=edges)
    K = ap.K
    data = WallData(lambda s, t: (ap.J0 * np.cos(K * s), 0.0), steady=True)
    wall = _wall_factory(scheme, bp)
    stepper = Stepper(f, p, [wall("bottom", data), wall("top", data)])
    steps, _ = run_to_steady(stepper, p, tol=tol, max_steps=max_steps)
    jx, jy = stepper.field.momentum(p)
    refs = {"wall": (ap.J0 * np.cos(K * x), np.zeros_like(x))}
    refs["taylor1"] = taylor_prediction(x, ap, p, scheme, bp, order=1)
    refs["taylor2"] = taylor_prediction(x, ap, p, scheme, bp, order=2)
    ex = accordion_reference(x, np.full_like(x, 0.5 * p.dx), ap)
    refs["exact"] = (ex[0], ex[1])
    # every reference is measured in the norm of the exact first-cell value (the wall Jy vanishes)
    errors = {}
    for name, (rx, ry) in refs.items():
        errors[("jx", name)] = l2_relative_error(jx[:, 0] - rx + ex[0], ex[0])
        errors[("jy", name)] = l2_relative_error(jy[:, 0] - ry + ex[1], ex[1])
    return AccordionRun(N, steps, x, jx[:, 0], jy[:, 0], refs, errors)


@dataclass
class AccordionStudy:
    runs: list
    rates: dict = field(default_factory=dict)  # (component, reference) -> ConvergenceSeries


def accordion_convergence(sizes, ap: AccordionParams, template: SchemeParams, scheme: str = "classical",
                          bp: BoundaryParams | None = None, scaling: str = "acoustic",
                          tol: float = 1e-12, max_steps: int = 1_000_000) -> AccordionStudy:
    runs = []
    for N in sizes:
        p = accordion_scheme_params(N, ap, template, scaling)
        runs.append(run_accordion(N, ap, p, scheme, bp, tol=tol, max_steps=max_steps))
    study = AccordionStudy(runs)
    for key in runs[0].errors:
        errs = [r.errors[key] for r in runs]
        if all(e > 0 for e in errs):
            study.rates[key] = fit_rate(sizes, errs)
    return study


# --------------------------------------------------------------------------- CSV output


def write_poiseuille_csv(path, result: PoiseuilleResult):
    with open(Path(path), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["y", "ux", "ux_analytic"])
        for row in zip(result.y, result.ux, result.ux_analytic):
            w.writerow([f"{v:.15g}" for v in row])


def write_accordion_csv(path, study: AccordionStudy):
    names = ACCORDION_REFERENCES
    cols = [f"err_jx_{n}" for n in names] + [f"err_jy_{n}" for n in names]
    with open(Path(path), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["N"] + cols)
        for r in study.runs:
            w.writerow([r.N] + [f"{r.errors[(c, n)]:.15g}" for c in ("jx", "jy") for n in names])
        theta = []
        for c in ("jx", "jy"):
            for n in names:
                s = study.rates.get((c, n))
                theta.append(f"{s.theta:.15g}" if s else "nan")
        w.writerow(["theta"] + theta)
