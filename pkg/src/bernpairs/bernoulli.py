"""Bernoulli numbers: exact rationals and residues mod prime powers.

Conventions: B_n from z/(e^z - 1), so B_1 = -1/2 and B_n = 0 for odd n >= 3.
num(q) means the absolute numerator of q in lowest terms.

Three computation routes, each validated against the others in tests:

* exact: B_2k = (-1)^(k-1) * 2k * T_k / (2^2k * (2^2k - 1)) with tangent
  numbers T_k from an in-place integer recurrence; a global T cache grows
  geometrically, so one big request amortizes everything below it.
* one prime, all indices: the defining recurrence mod p (kernel, O(p^2)).
* one index mod p^k: Kummer reduction of the index below phi(p^k), then
  either the exact route (small index) or power-sum extraction
  B_n ≡ S_n(p^m)/p^m mod p^K where S_n(N) = sum_{a<N} a^n. The defect of
  that congruence has p-valuation >= 2m - 1 - v_p(n+1) for even n >= 4,
  so m = ceil((K + 1 + v_p(n+1)) / 2) digits of headroom suffice, with
  K = k + v_p(n) covering the later division by n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from . import _kernels
from .arith import Residue, is_prime, rational_mod
from .config import LIMITS
from .errors import PoleAtIndex, ResourceLimit

_tangent: List[int] = []  # _tangent[i-1] = T_i, tan x = sum T_k x^(2k-1) / (2k-1)!


def _ensure_tangent(count: int) -> None:
    """Grow the tangent cache to at least T_1..T_count (full rebuild, geometric)."""
    global _tangent
    if count <= len(_tangent):
        return
    count = max(count, 2 * len(_tangent), 64)
    T = [0] * (count + 1)
    T[1] = 1
    for k in range(2, count + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    _tangent = T[1:]


def bernoulli_exact(n: int) -> Fraction:
    """B_n as an exact Fraction; indices above the configured cap are refused."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {n}")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    if n > LIMITS.max_exact_n:
        raise ResourceLimit(
            f"exact Bernoulli index {n} exceeds the cap {LIMITS.max_exact_n} "
            "(raise BERNPAIRS_MAX_EXACT_N to allow it)",
            needed=n,
            limit=LIMITS.max_exact_n,
        )
    k = n // 2
    _ensure_tangent(k)
    sign = 1 if k % 2 == 1 else -1
    return Fraction(sign * n * _tangent[k - 1], (1 << n) * ((1 << n) - 1))


def numerator_pair(m: int) -> Tuple[int, int]:
    """(num(B_m/m), num(B_m/(m(m-1)))) for even m >= 2."""
    if m < 2 or m % 2 == 1:
        raise ValueError(f"need an even m >= 2, got {m}")
    b = bernoulli_exact(m)
    return abs((b / m).numerator), abs((b / (m * (m - 1))).numerator)


def bernoulli_mod_p_all(p: int) -> Dict[int, Residue]:
    """{even k in [2, p-3]: B_k mod p} for an odd prime p >= 5."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    row = _kernels.bern_even_residues(p)
    return {k: Residue(row[k], p) for k in range(2, p - 2, 2)}


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _divided_exact(n: int, p: int, k: int) -> int:
    """B_n/n mod p^k straight from the exact rational."""
    return rational_mod(bernoulli_exact(n) / n, p**k).value


def _divided_power_sum(n: int, p: int, k: int) -> int:
    """B_n/n mod p^k by power-sum extraction; even n >= 4, (p-1) not dividing n."""
    pk = p**k
    v = _vp(n, p)
    K = k + v
    m = (K + 1 + _vp(n + 1, p) + 1) // 2
    terms = p**m
    if terms > LIMITS.power_sum_terms:
        raise ResourceLimit(
            f"power-sum extraction for B_{n} mod {p}^{k} needs {terms} terms, "
            f"over the cap {LIMITS.power_sum_terms}",
            needed=terms,
            limit=LIMITS.power_sum_terms,
        )
    S = _kernels.power_sum(n, p, m, K)
    pm = p**m
    if S % pm:
        raise AssertionError(f"power sum S_{n}({p}^{m}) not divisible by {p}^{m}")
    b = (S // pm) % p**K
    if b % p**v:
        raise AssertionError(f"B_{n} mod {p}^{K} lost p-integrality of B_{n}/{n}")
    return b // p**v * pow(n // p**v, -1, pk) % pk


def _divided_core(n: int, p: int, k: int) -> int:
    """B_n/n mod p^k for even n >= 2 with (p-1) not dividing n, as a plain int."""
    cache_covers = n // 2 <= len(_tangent)
    if n <= LIMITS.max_exact_n and (n <= LIMITS.exact_cutoff or cache_covers or n == 2):
        return _divided_exact(n, p, k)
    return _divided_power_sum(n, p, k)


def divided_bernoulli_mod_pk(n: int, p: int, k: int) -> Residue:
    """B_n/n mod p^k for even n >= 2, odd prime p, k >= 1.

    Raises PoleAtIndex when (p-1) | n (the value is not p-integral there).
    Large indices are reduced below phi(p^k) along their Kummer class, on
    which (1 - p^(n-1)) B_n/n is constant mod p^k.
    """
    if n < 2 or n % 2 == 1:
        raise ValueError(f"need an even index n >= 2, got {n}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if n % (p - 1) == 0:
        raise PoleAtIndex(n, p)
    pk = p**k
    phi = p ** (k - 1) * (p - 1)
    n_red = n % phi
    if n_red == n:
        return Residue(_divided_core(n, p, k), pk)
    base = _divided_core(n_red, p, k)
    e_red = (1 - pow(p, n_red - 1, pk)) % pk
    e_orig = (1 - pow(p, n - 1, pk)) % pk
    return Residue(base * e_red % pk * pow(e_orig, -1, pk), pk)
