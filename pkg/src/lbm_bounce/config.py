"""Plain ``key=value`` run configuration.

One assignment per line, ``#`` starts a comment. Keys and defaults:

=============  ===============  ==================================================
key            default          meaning
=============  ===============  ==================================================
alpha          -2               equilibrium energy parameter (> -4)
beta           1                equilibrium energy-square parameter
lam            1                lattice velocity dx/dt
dx             1                mesh step
s3 s4 s7 s8    1                relaxation rates in (0, 2]; accordion runs set s3 = s4
                                unless s3 is given
sigma7_rule    none             ``quartic`` sets s7 from the Poiseuille-exact condition
scheme         classical        classical | first_order | generalized
a2 a5 a6       (required)       generalized only; a6 defaults to a5
k2 k5 k6       from k_rule      generalized only; all three or none
k_rule         cancel           cancel | literal, used when k values are omitted
nx ny          32 16            Poiseuille grid
dp             1e-5             Poiseuille half pressure difference
closure        drop             drop | anti_bounce_back
mesh_sizes     16,32,64,128     accordion meshes (cells along x)
L h J0 k nu    1 0.5 1 1 1/96   accordion geometry, amplitude, wavenumber, viscosity
scaling        acoustic         acoustic | diffusive
tol            1e-12            steady-state threshold
max_steps      1000000          steady-state step budget
draws          10               reconcile draws per scheme
seed           0                reconcile seed (``--seed`` overrides)
=============  ===============  ==================================================
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .boundary import BoundaryParams, SingularConditionError, classical_quartic_sigma7, quartic_sigma7
from .lattice import ParameterError, SchemeParams

SUBCOMMANDS = ("poiseuille", "accordion", "analyze", "reconcile")


class ConfigError(ValueError):
    """Invalid configuration text; ``line`` is 1-based or ``None``."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _float(v):
    return float(v)


def _pos_int(v):
    n = int(v)
    if n <= 0:
        raise ValueError("must be a positive integer")
    return n


def _choice(*options):
    def parse(v):
        if v not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return v
    return parse


def _sizes(v):
    sizes = [_pos_int(s) for s in v.split(",") if s.strip()]
    if len(sizes) < 3:
        raise ValueError("need at least three mesh sizes")
    return sizes


def _seed(v):
    n = int(v)
    if not 0 <= n < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return n


_RATE = _float
KEYS = {
    "alpha": _float, "beta": _float, "lam": _float, "dx": _float,
    "s3": _RATE, "s4": _RATE, "s7": _RATE, "s8": _RATE,
    "sigma7_rule": _choice("none", "quartic"),
    "scheme": _choice("classical", "first_order", "generalized"),
    "a2": _float, "a5": _float, "a6": _float, "k2": _float, "k5": _float, "k6": _float,
    "k_rule": _choice("cancel", "literal"),
    "nx": _pos_int, "ny": _pos_int, "dp": _float,
    "closure": _choice("drop", "anti_bounce_back"),
    "mesh_sizes": _sizes, "L": _float, "h": _float, "J0": _float, "k": int, "nu": _float,
    "scaling": _choice("acoustic", "diffusive"),
    "tol": _float, "max_steps": _pos_int, "draws": _pos_int, "seed": _seed,
}


@dataclass
class RunConfig:
    subcommand: str | None
    params: SchemeParams
    scheme: str = "classical"
    bp: BoundaryParams | None = None
    nx: int = 32
    ny: int = 16
    dp: float = 1e-5
    closure: str = "drop"
    mesh_sizes: list = field(default_factory=lambda: [16, 32, 64, 128])
    accordion: dict = field(default_factory=dict)
    scaling: str = "acoustic"
    tol: float = 1e-12
    max_steps: int = 1_000_000
    draws: int = 10
    seed: int = 0
    s3_given: bool = False


def parse_config(text: str, subcommand: str | None = None) -> RunConfig:
    if subcommand is not None and subcommand not in SUBCOMMANDS:
        raise ConfigError(f"unknown subcommand {subcommand!r}")
    values, where = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key=value, got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        try:
            values[key] = KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}", lineno) from None
        where[key] = lineno
    return _build(values, where, subcommand)


def _build(values: dict, where: dict, subcommand) -> RunConfig:
    def fail(msg, *keys):
        lines = [where[k] for k in keys if k in where]
        raise ConfigError(msg, min(lines) if lines else None)

    scheme_keys = ("lam", "dx", "alpha", "beta", "s3", "s4", "s7", "s8")
    try:
        p = SchemeParams(**{k: values[k] for k in scheme_keys if k in values})
    except ParameterError as exc:
        bad = [k for k in scheme_keys if k in values and k in str(exc)] or list(scheme_keys)
        fail(str(exc), *bad)

    scheme = values.get("scheme", "classical")
    bp = None
    bkeys = [k for k in ("a2", "a5", "a6", "k2", "k5", "k6", "k_rule") if k in values]
    if scheme != "generalized":
        if bkeys:
            fail(f"{bkeys[0]} only applies to the generalized scheme", *bkeys)
    else:
        for key in ("a2", "a5"):
            if key not in values:
                raise ConfigError(f"missing required key {key!r} for the generalized scheme")
        a2, a5 = values["a2"], values["a5"]
        ks = [k for k in ("k2", "k5", "k6") if k in values]
        if ks and len(ks) != 3:
            fail("give all of k2, k5, k6 or none of them", *ks)
        if ks:
            if "k_rule" in values:
                fail("k_rule conflicts with explicit k values", "k_rule")
            bp = BoundaryParams(a2, a5, values.get("a6", a5), values["k2"], values["k5"], values["k6"])
        else:
            if "a6" in values and values["a6"] != a5:
                fail("derived k values need a6 = a5", "a6")
            bp = BoundaryParams.constrained(a2, a5, p, values.get("k_rule", "cancel"))

    if values.get("sigma7_rule") == "quartic":
        if "s7" in values:
            fail("s7 conflicts with sigma7_rule=quartic", "s7", "sigma7_rule")
        if scheme == "first_order":
            fail("sigma7_rule=quartic needs the classical or generalized scheme", "sigma7_rule")
        try:
            if scheme == "classical":
                sigma7 = classical_quartic_sigma7(p.sigma4, p.alpha, p.beta)
            else:
                sigma7 = quartic_sigma7(bp.a5, p.sigma4)
        except (ParameterError, SingularConditionError) as exc:
            fail(str(exc), "sigma7_rule")
        if not sigma7 > 0:
            fail(f"quartic condition gives sigma7 = {sigma7:.6g} <= 0", "sigma7_rule", "s4")
        p = p.replace(s7=1.0 / (sigma7 + 0.5))
        if bp is not None and "k2" not in values:
            bp = BoundaryParams.constrained(bp.a2, bp.a5, p, values.get("k_rule", "cancel"))

    if values.get("dp", 0.0) < 0:
        fail("dp must be >= 0", "dp")
    for key in ("L", "h", "nu", "tol"):
        if key in values and not values[key] > 0:
            fail(f"{key} must be positive", key)
    if "k" in values and values["k"] == 0:
        fail("k must be nonzero", "k")
    accordion = {k: values[k] for k in ("L", "h", "J0", "k", "nu") if k in values}

    return RunConfig(
        subcommand=subcommand, params=p, scheme=scheme, bp=bp,
        **{k: values[k] for k in ("nx", "ny", "dp", "closure", "mesh_sizes", "scaling", "tol",
                                  "max_steps", "draws", "seed") if k in values},
        accordion=accordion, s3_given="s3" in values,
    )
