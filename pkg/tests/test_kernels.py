"""Backend agreement: the compiled kernels and the pure fallback must match."""

import os
import subprocess
import sys

import pytest

from bernpairs import _kernels
from bernpairs._kernels import pure
from bernpairs.arith import primes_below, rational_mod
from bernpairs.bernoulli import bernoulli_exact

native = _kernels._native
needs_native = pytest.mark.skipif(
    native is None, reason="compiled extension not built"
)


def test_backend_name_reflects_selection():
    if os.environ.get("BERNPAIRS_PURE_PYTHON") == "1":
        assert _kernels.backend_name() == "pure"
    else:
        assert _kernels.backend_name() == ("native" if native else "pure")


def test_pure_python_env_forces_fallback():
    env = dict(os.environ, BERNPAIRS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import bernpairs; print(bernpairs.backend_name())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_pure_sieve_against_exact_rationals():
    for p in primes_below(100):
        if p < 5:
            continue
        row = pure.bern_even_residues(p)
        assert len(row) == p
        for k in range(2, p - 2, 2):
            assert row[k] == rational_mod(bernoulli_exact(k), p).value


@needs_native
def test_native_sieve_matches_pure():
    for p in [5, 7, 37, 101, 257, 1009]:
        assert native.bern_even_residues(p) == pure.bern_even_residues(p)


@needs_native
def test_native_power_sum_matches_pure():
    cases = [
        (4, 5, 2, 1),
        (32, 37, 2, 2),
        (44, 59, 2, 3),
        (100, 7, 3, 2),
        (12, 11, 1, 1),
    ]
    for n, p, m, K in cases:
        assert native.power_sum_u64(n, p, m, K) == pure.power_sum(n, p, m, K)


def test_power_sum_dispatch_handles_large_modulus():
    # p^(m+K) beyond 2^63 must take the big-int path and stay correct
    n, p, m, K = 8, 5, 2, 26
    assert p ** (m + K) >= 1 << 63
    mod = p ** (m + K)
    expect = sum(pow(a, n, mod) for a in range(1, p**m)) % mod
    assert _kernels.power_sum(n, p, m, K) == expect


def test_pure_sieve_validation():
    with pytest.raises(ValueError):
        pure.bern_even_residues(4)
    with pytest.raises(ValueError):
        pure.bern_even_residues(3)
