import os
import subprocess
import sys

import numpy as np
import pytest

from lbm_bounce import kernels
from lbm_bounce.grid import PopulationField, Stepper, stream
from lbm_bounce.lattice import SchemeParams, population_collision_matrix

needs_cython = pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled core not built")


def reference_step(f, C):
    fstar = np.tensordot(C, f, axes=1)
    return fstar, stream(PopulationField(*f.shape[1:], fstar)).f


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_kernel_matches_collide_then_stream(backend, rng):
    p = SchemeParams(alpha=-1.5, beta=0.3, s3=1.1, s4=1.3, s7=0.7, s8=1.9)
    C = np.ascontiguousarray(population_collision_matrix(p))
    f = rng.random((9, 7, 5))
    fstar, fout = np.empty_like(f), np.empty_like(f)
    kernels.BACKENDS[backend](f, C, fstar, fout)
    ref_star, ref_out = reference_step(f, C)
    np.testing.assert_allclose(fstar, ref_star, rtol=0, atol=1e-14)
    np.testing.assert_allclose(fout, ref_out, rtol=0, atol=1e-14)


@needs_cython
def test_backends_agree_over_many_steps(rng):
    p = SchemeParams(s3=1.2, s4=1.4, s7=1.1, s8=0.9)
    field = PopulationField(16, 12, rng.random((9, 16, 12)))
    a = Stepper(field, p, backend="python").step(200).f
    b = Stepper(field, p, backend="cython").step(200).f
    assert np.abs(a - b).max() < 1e-13


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    env.pop("LBM_BOUNCE_PURE_PYTHON", None)
    if env_value is not None:
        env["LBM_BOUNCE_PURE_PYTHON"] = env_value
    out = subprocess.run([sys.executable, "-c", "from lbm_bounce import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_fallback_forced_by_environment():
    assert _backend_in_subprocess("1") == "python"


@needs_cython
def test_compiled_backend_selected_by_default():
    assert _backend_in_subprocess(None) == "cython"
