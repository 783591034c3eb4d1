"""Parity tests between the compiled kernels and the pure-Python twins.

Every kernel must give bit-identical results on both backends; the
compiled module is an optimization, never a semantic fork.
"""

import os
import random
import subprocess
import sys

import pytest

from compsigns import _kernels_py as pyk

cyk = pytest.importorskip("compsigns._kernels",
                          reason="compiled kernels unavailable")

KERNELS = ["conv", "conv_trunc", "comp_poly_rows", "eval_table",
           "delta_eval_table", "sk_rows", "series_inv_int", "first_violation"]


def test_same_surface():
    for name in KERNELS:
        assert callable(getattr(cyk, name))
        assert callable(getattr(pyk, name))


def test_conv_parity():
    rng = random.Random(501)
    for _ in range(40):
        a = [rng.randint(-9, 9) for _ in range(rng.randint(1, 12))]
        b = [rng.randint(-9, 9) for _ in range(rng.randint(1, 12))]
        assert cyk.conv(a, b) == pyk.conv(a, b)
        order = rng.randint(0, 15)
        assert cyk.conv_trunc(a, b, order) == pyk.conv_trunc(a, b, order)


def test_table_parity():
    rng = random.Random(502)
    for _ in range(25):
        members = sorted(rng.sample(range(1, 12), rng.randint(0, 5)))
        n_max = rng.randint(0, 30)
        assert cyk.comp_poly_rows(members, n_max) == pyk.comp_poly_rows(members, n_max)
        for t in (-2, -1, 1, 3):
            ev_c = cyk.eval_table(members, n_max, t)
            ev_p = pyk.eval_table(members, n_max, t)
            assert ev_c == ev_p
            assert (cyk.delta_eval_table(members, n_max, t, ev_c)
                    == pyk.delta_eval_table(members, n_max, t, ev_p))


def test_sk_rows_parity():
    rng = random.Random(503)
    for _ in range(15):
        members = sorted(rng.sample(range(1, 10), rng.randint(1, 4)))
        rows_c = cyk.sk_rows(members, 4, 40)
        rows_p = pyk.sk_rows(members, 4, 40)
        assert rows_c == rows_p


def test_series_and_violation_parity():
    rng = random.Random(504)
    for _ in range(25):
        coeffs = [1] + [rng.randint(-4, 4) for _ in range(rng.randint(0, 8))]
        order = rng.randint(0, 25)
        assert cyk.series_inv_int(coeffs, order) == pyk.series_inv_int(coeffs, order)
        members = sorted(rng.sample(range(1, 9), rng.randint(0, 4)))
        assert (cyk.first_violation(members, 60)
                == pyk.first_violation(members, 60))


def test_big_integer_parity():
    # counts grow fast; make sure the compiled path stays on exact ints
    members = [1, 2, 3]
    big_c = cyk.eval_table(members, 300, 1)
    big_p = pyk.eval_table(members, 300, 1)
    assert big_c == big_p
    assert big_c[300] > 10**75  # growth rate ~1.839^n, far past float range


def _backend_of(env_value):
    env = dict(os.environ)
    env.pop("COMPSIGNS_BACKEND", None)
    if env_value is not None:
        env["COMPSIGNS_BACKEND"] = env_value
    proc = subprocess.run(
        [sys.executable, "-c", "from compsigns import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout.strip(), proc.stderr


def test_env_override():
    code, backend, _ = _backend_of(None)
    assert code == 0 and backend == "cython"
    code, backend, _ = _backend_of("python")
    assert code == 0 and backend == "python"
    code, backend, _ = _backend_of("cython")
    assert code == 0 and backend == "cython"
    code, _, err = _backend_of("fortran")
    assert code != 0 and "fortran" in err
