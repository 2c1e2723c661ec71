import numpy as np
import pytest
from hypothesis import settings

from lbm_bounce.lattice import SchemeParams

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def _draw(rng, lam=1.0):
    return SchemeParams(
        lam=lam,
        alpha=rng.uniform(-3.9, 4.0),
        beta=rng.uniform(-2.0, 2.0),
        **{k: rng.uniform(0.2, 1.9) for k in ("s3", "s4", "s7", "s8")},
    )


@pytest.fixture
def draw_params(rng):
    """Callable drawing scheme parameters from the admissible box."""
    return lambda lam=1.0: _draw(rng, lam)


# criterion number -> list of (label, passed, detail); filled by test_acceptance.py
_ACCEPTANCE: dict[int, list] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    def record(criterion: int, label: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.setdefault(criterion, []).append((label, bool(passed), detail))
        print(f"criterion {criterion} {label}: {'PASS' if passed else 'FAIL'} {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        checks = _ACCEPTANCE[n]
        ok = all(passed for _, passed, _ in checks)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}")
        for label, passed, detail in checks:
            tr.write_line(f"    {'PASS' if passed else 'FAIL'} {label}: {detail}")
