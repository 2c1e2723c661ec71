"""Compare engine coefficients with the printed closed forms over random draws.

The engine is treated as ground truth. A failing printed entry is classified by
looking for the simplest explanation that holds on every draw: a flipped sign,
the coefficient of a different monomial, a constant factor, or neither.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from ..boundary import BoundaryParams
from ..lattice import ParameterError, SchemeParams
from .closed_forms import closed_form_table
from .expansion import expand
from .matrices import SCHEMES
from .tables import coefficient, coefficient_name, momentum_series, parse_name
from .jets import FIELDS, MONOMIALS

TOL = 1e-10

# Written adjudications for entries the engine does not confirm verbatim.
NOTES = {
    "zeta0_y_tilde": "leftover first-order density term; the d_t Jy term of the raw form cancels it once time is eliminated",
    "beta1_xy": "constant term reads 12, engine gives 11",
    "eta1_xy": "name and value belong to d_yy Jy (the j_y expansion multiplies eta1_yy)",
    "eta1_tt": "present in the expansion (1/(2 lam^2)) but absent from the printed list",
    "eta1_yy": "printed under the name eta1_xy",
    "gamma1_y": "printed on d_y rho; engine puts the term on d_x rho with weight -(lam/2)(4+alpha), the a5=1 value of the generalized form",
    "gamma1_x": "printed as gamma1_y with half the weight",
    "gamma1_xy": "sign flipped",
    "eta2_xy": "name and value belong to d_yy Jy",
    "eta2_yy": "printed under the name eta2_xy",
    "eta2_tt": "present in the expansion (1/(2 lam^2)) but absent from the printed list",
    "eta2_xx": "present in the expansion but absent from the printed list",
    "gamma2_y": "printed on d_y rho; engine puts the same value on d_x rho",
    "gamma2_x": "printed under the name gamma2_y",
    "theta2_tx": "sign flipped",
    "zeta2_xx": "no sign, factor or index explanation; at a2 = a5 = 1 it is -1/2 of the first-order zeta1_xx, which the engine reproduces",
}


@dataclass
class Entry:
    scheme: str
    name: str
    engine: list = field(default_factory=list)
    printed: list = field(default_factory=list)
    verdict: str = "PASS"
    kind: str = ""
    note: str = ""

    @property
    def max_delta(self) -> float:
        if not self.printed:
            return float("nan")
        return float(np.max(np.abs(np.subtract(self.engine, self.printed))))


@dataclass
class ReconcileReport:
    entries: list

    def counts(self) -> dict:
        printed = [e for e in self.entries if e.printed]
        passed = sum(e.verdict == "PASS" for e in printed)
        return {"printed": len(printed), "pass": passed, "fail": len(printed) - passed,
                "missing": sum(e.verdict == "MISSING" for e in self.entries)}

    @property
    def pass_fraction(self) -> float:
        c = self.counts()
        return c["pass"] / c["printed"] if c["printed"] else 0.0

    def failures(self) -> list:
        return [e for e in self.entries if e.verdict != "PASS"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scheme", "coefficient", "engine", "closed_form", "abs_delta", "verdict", "class", "note"])
        for e in self.entries:
            printed = f"{e.printed[0]:.15g}" if e.printed else ""
            delta = f"{e.max_delta:.15g}" if e.printed else ""
            w.writerow([e.scheme, e.name, f"{e.engine[0]:.15g}", printed, delta, e.verdict, e.kind, e.note])
        return buf.getvalue()


def random_params(rng: np.random.Generator, lam: float = 1.0) -> SchemeParams:
    return SchemeParams(
        lam=lam,
        alpha=rng.uniform(-3.9, 4.0),
        beta=rng.uniform(-2.0, 2.0),
        **{k: rng.uniform(0.2, 1.9) for k in ("s3", "s4", "s7", "s8")},
    )


def _draws(scheme: str, n: int, rng: np.random.Generator, lam: float):
    out = []
    while len(out) < n:
        p = random_params(rng, lam)
        bp = None
        if scheme == "generalized":
            a2, a5 = rng.uniform(-2.0, 2.0, 2)
            bp = BoundaryParams.constrained(a2, a5, p)
        try:
            res = expand(scheme, p, bp)
        except (ParameterError, np.linalg.LinAlgError):
            continue
        out.append(res)
    return out


def _matches(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return bool(np.all(np.abs(a - b) <= TOL * np.maximum(1.0, np.abs(b))))


def _classify(name, printed, engine_all, own):
    """Explain a failing entry; ``engine_all`` maps candidate names to value lists."""
    if _matches(own, -np.asarray(printed)):
        return "sign", None
    for other, vals in engine_all.items():
        if other != name and _matches(vals, printed):
            return "index", other
    for other, vals in engine_all.items():
        if other != name and _matches(vals, -np.asarray(printed)):
            return "index+sign", other
    printed = np.asarray(printed)
    if np.all(printed != 0):
        for other, vals in [(name, own)] + list(engine_all.items()):
            ratio = np.asarray(vals) / printed
            if np.all(np.abs(vals) > TOL) and np.ptp(ratio) < 1e-8 * max(1.0, abs(ratio[0])):
                kind = "factor" if other == name else "index+factor"
                return f"{kind} {ratio[0]:.6g}", (other if other != name else None)
    if np.all(np.abs(own) <= TOL):
        return "spurious", None
    return "transcription", None


def reconcile(schemes=SCHEMES, draws: int = 10, seed: int = 0, lam: float = 1.0,
              overrides: dict | None = None) -> ReconcileReport:
    """Per-coefficient agreement over ``draws`` random parameter sets per scheme.

    ``overrides`` maps coefficient names to replacement closed forms
    ``f(p, bp) -> float``; it exists to check the harness flags a perturbed entry.
    """
    rng = np.random.default_rng(seed)
    overrides = overrides or {}
    entries = []
    for scheme in schemes:
        results = _draws(scheme, draws, rng, lam)
        for tilde in (False, True):
            series = [momentum_series(r, tilde) for r in results]
            printed = {}
            for r in results:
                table = closed_form_table(scheme, r.params, r.bp, tilde)
                for k, fn in overrides.items():
                    if k in table:
                        table[k] = fn(r.params, r.bp)
                for k, v in table.items():
                    printed.setdefault(k, []).append(v)
            idx = parse_name(next(iter(printed)))[3]
            engine_all = {}
            for comp in ("jx", "jy"):
                for fname in FIELDS:
                    for mono in MONOMIALS:
                        if sum(mono) == 0:
                            continue
                        nm = coefficient_name(comp, fname, mono, idx, tilde)
                        engine_all[nm] = [coefficient(r, nm, s) for r, s in zip(results, series)]
            claimed = set()
            for nm, pv in printed.items():
                own = engine_all[nm]
                e = Entry(scheme, nm, own, pv)
                if not _matches(own, pv):
                    e.verdict = "FAIL"
                    e.kind, target = _classify(nm, pv, engine_all, own)
                    if target:
                        claimed.add(target)
                        e.kind += f" -> {target}"
                    e.note = NOTES.get(nm, "")
                entries.append(e)
            for nm, vals in engine_all.items():
                if nm in printed or np.all(np.abs(vals) <= TOL):
                    continue
                kind = "printed under another name" if nm in claimed else "not printed"
                entries.append(Entry(scheme, nm, vals, [], "MISSING", kind, NOTES.get(nm, "")))
    return ReconcileReport(entries)
