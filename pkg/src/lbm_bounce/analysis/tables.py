"""Named coefficients of the near-wall momentum expansion."""
from __future__ import annotations

import re

from .closed_forms import FAMILIES, SCHEME_INDEX
from .expansion import ExpansionResult, eliminate_time
from .jets import FIELDS, MONOMIALS, monomial_label

_ROW = {"jx": 1, "jy": 2}
_NAME = re.compile(r"^(alpha|beta|gamma|theta|eta|zeta)([012])_([txy]+)(_tilde)?$")
_FAMILY_OF = {v: k for k, v in FAMILIES.items()}


def parse_name(name: str):
    """``"eta0_tt"`` -> ``("jy", "Jy", (2, 0, 0), 0, False)``."""
    m = _NAME.match(name)
    if not m:
        raise KeyError(f"not a coefficient name: {name!r}")
    family, scheme, letters, tilde = m.groups()
    mono = (letters.count("t"), letters.count("x"), letters.count("y"))
    if monomial_label(mono) != letters:
        raise KeyError(f"derivative letters must be in t, x, y order: {name!r}")
    component, field = FAMILIES[family]
    return component, field, mono, int(scheme), bool(tilde)


def coefficient_name(component: str, field: str, mono, scheme_index: int, tilde: bool = False) -> str:
    base = f"{_FAMILY_OF[(component, field)]}{scheme_index}_{monomial_label(mono)}"
    return base + "_tilde" if tilde else base


def momentum_series(result: ExpansionResult, tilde: bool = False) -> dict:
    """``{"jx": [level0, level1, level2], "jy": [...]}``, time-eliminated when ``tilde``."""
    out = {}
    for comp, row in _ROW.items():
        series = result.moment_series(row)
        out[comp] = eliminate_time(series, result.params) if tilde else series
    return out


def coefficient(result: ExpansionResult, name: str, series=None) -> float:
    """Engine value for a coefficient name, per power of ``dx``."""
    component, field, mono, _, tilde = parse_name(name)
    if series is None:
        series = momentum_series(result, tilde)
    level = sum(mono)
    return series[component][level].coeff(field, mono) / result.params.lam**level


def coefficient_table(result: ExpansionResult, tilde: bool = False, tol: float = 1e-12) -> dict[str, float]:
    """All first- and second-order coefficients of ``j_x`` and ``j_y`` above ``tol``."""
    idx = SCHEME_INDEX[result.scheme]
    series = momentum_series(result, tilde)
    lam = result.params.lam
    table = {}
    for comp in ("jx", "jy"):
        for field in FIELDS:
            for mono in MONOMIALS:
                level = sum(mono)
                if level == 0:
                    continue
                value = series[comp][level].coeff(field, mono) / lam**level
                if abs(value) > tol:
                    table[coefficient_name(comp, field, mono, idx, tilde)] = value
    return table
