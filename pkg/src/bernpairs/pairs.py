"""Irregular pairs: sieving, storage, and p-adic digit lifting.

An irregular pair (p, l) has p prime >= 5, l even, 2 <= l <= p-3, and
p | num(B_l). Its delta invariant is the slope

    delta = (B_(l + p - 1)/(l + p - 1) - B_l/l) / p  (mod p),

nonzero for every pair checked here (and conjecturally always). When delta is
nonzero each pair lifts to a unique chain of digits s_2, s_3, ... with

    l_j = l + s_2 phi(p) + s_3 phi(p^2) + ... ,  ord_p(B_(l_j)/l_j) >= j,

found digit by digit: if B_(l_j)/l_j ≡ c p^j (mod p^(j+1)) then the next digit
is s = -c / delta (mod p). Every solved digit is re-checked against the
defining congruence before it is trusted.
"""

from __future__ import annotations

import multiprocessing
import os
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import _kernels
from .arith import is_prime, phi_prime_power
from .bernoulli import divided_bernoulli_mod_pk
from .config import LIMITS
from .errors import (
    BernpairsError,
    DatabaseTooSmall,
    DeltaZero,
    FormatError,
    NotIrregular,
    ResourceLimit,
)


@dataclass(frozen=True, order=True)
class IrregularPair:
    """A pair (p, l): p odd prime >= 5, l even, 2 <= l <= p-3."""

    p: int
    l: int

    def __post_init__(self) -> None:
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if self.l % 2 or not 2 <= self.l <= self.p - 3:
            raise ValueError(
                f"l must be even with 2 <= l <= p-3, got l={self.l} for p={self.p}"
            )

    def __str__(self) -> str:
        return f"({self.p},{self.l})"


@dataclass(frozen=True)
class DeltaValue:
    pair: IrregularPair
    delta: int  # in [0, p)

    def is_zero(self) -> bool:
        return self.delta == 0


@dataclass(frozen=True)
class OrderedPair:
    """A pair with its lifting digits (s_1, ..., s_n); s_1 is the base index l."""

    p: int
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        IrregularPair(self.p, self.digits[0])
        for s in self.digits[1:]:
            if not 0 <= s < self.p:
                raise ValueError(f"digit {s} out of range for p={self.p}")

    @property
    def order(self) -> int:
        return len(self.digits)

    @property
    def pair(self) -> IrregularPair:
        return IrregularPair(self.p, self.digits[0])

    @property
    def index(self) -> int:
        """The order-n index l_n = sum_v s_v phi(p^(v-1)), phi(1) = 1."""
        return self.digits[0] + sum(
            s * phi_prime_power(self.p, v) for v, s in enumerate(self.digits[1:], 1)
        )

    def __str__(self) -> str:
        return f"({self.p};" + ",".join(str(s) for s in self.digits) + ")"


def sieve_prime(p: int) -> List[IrregularPair]:
    """All irregular pairs for one prime p >= 5, by the mod-p kernel sieve."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")
    row = _kernels.bern_even_residues(p)
    return [IrregularPair(p, k) for k in range(2, p - 2, 2) if row[k] == 0]


def _sieve_worker(p: int) -> Tuple[int, List[int]]:
    row = _kernels.bern_even_residues(p)
    return p, [k for k in range(2, p - 2, 2) if row[k] == 0]


class PairDatabase:
    """Irregular pairs for every prime p < max_p, with optional stored deltas.

    entries maps p to an ascending list of (l, delta-or-None); only primes with
    at least one pair appear. Content is canonical: equal databases compare
    equal regardless of how they were built (jobs count, load order).
    """

    def __init__(
        self,
        max_p: int,
        entries: Optional[Dict[int, Sequence[Tuple[int, Optional[int]]]]] = None,
    ):
        if max_p < 2:
            raise ValueError(f"max_p must be >= 2, got {max_p}")
        self.max_p = max_p
        self._entries: Dict[int, List[Tuple[int, Optional[int]]]] = {}
        for p in sorted(entries or {}):
            rows = sorted(entries[p])
            for l, d in rows:
                IrregularPair(p, l)  # validates p and l
                if p >= max_p:
                    raise ValueError(f"entry prime {p} not below max_p={max_p}")
                if d is not None and not 0 <= d < p:
                    raise ValueError(f"stored delta {d} out of range for p={p}")
            if len({l for l, _ in rows}) != len(rows):
                raise ValueError(f"duplicate pair index for p={p}")
            self._entries[p] = list(rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairDatabase):
            return NotImplemented
        return self.max_p == other.max_p and self._entries == other._entries

    def __len__(self) -> int:
        return sum(len(v) for v in self._entries.values())

    def _check_covered(self, p: int) -> None:
        if p >= self.max_p:
            raise DatabaseTooSmall(needed=p + 1, have=self.max_p)

    def irregular_primes(self) -> List[int]:
        return sorted(self._entries)

    def is_irregular(self, p: int) -> bool:
        self._check_covered(p)
        return p in self._entries

    def pairs_for(self, p: int) -> List[IrregularPair]:
        self._check_covered(p)
        return [IrregularPair(p, l) for l, _ in self._entries.get(p, [])]

    def index_of_irregularity(self, p: int) -> int:
        self._check_covered(p)
        return len(self._entries.get(p, []))

    def all_pairs(self) -> Iterator[IrregularPair]:
        for p in sorted(self._entries):
            for l, _ in self._entries[p]:
                yield IrregularPair(p, l)

    def delta_for(self, pair: IrregularPair) -> Optional[int]:
        self._check_covered(pair.p)
        for l, d in self._entries.get(pair.p, []):
            if l == pair.l:
                return d
        raise NotIrregular(pair.p, f"pair {pair} not in database")

    def set_delta(self, pair: IrregularPair, value: int) -> None:
        if not 0 <= value < pair.p:
            raise ValueError(f"delta {value} out of range for p={pair.p}")
        rows = self._entries.get(pair.p, [])
        for i, (l, _) in enumerate(rows):
            if l == pair.l:
                rows[i] = (l, value)
                return
        raise NotIrregular(pair.p, f"pair {pair} not in database")

    def restrict(self, new_max_p: int) -> "PairDatabase":
        """The sub-database of primes below new_max_p (must not exceed max_p)."""
        if new_max_p > self.max_p:
            raise DatabaseTooSmall(needed=new_max_p, have=self.max_p)
        return PairDatabase(
            new_max_p,
            {p: rows for p, rows in self._entries.items() if p < new_max_p},
        )

    def save(self, path: str) -> None:
        # third field always present, empty when the delta was never computed
        lines = [f"# bernpairs-db v1 max_p={self.max_p}"]
        for p in sorted(self._entries):
            for l, d in self._entries[p]:
                lines.append(f"{p},{l}," if d is None else f"{p},{l},{d}")
        with open(path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str) -> "PairDatabase":
        with open(path, "r", encoding="ascii") as fh:
            raw = fh.read().splitlines()
        if not raw:
            raise FormatError(1, "empty file, expected a bernpairs-db header")
        head = re.fullmatch(r"# bernpairs-db v1 max_p=(\d+)", raw[0].strip())
        if not head:
            raise FormatError(1, f"bad header {raw[0]!r}")
        max_p = int(head.group(1))
        entries: Dict[int, List[Tuple[int, Optional[int]]]] = {}
        seen = set()
        for lineno, line in enumerate(raw[1:], start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) == 3 and parts[2] == "":
                parts = parts[:2]  # empty delta field
            if len(parts) not in (2, 3) or not all(
                q.isdigit() for q in parts
            ):
                raise FormatError(lineno, f"expected 'p,l[,delta]', got {line!r}")
            p, l = int(parts[0]), int(parts[1])
            d = int(parts[2]) if len(parts) == 3 else None
            try:
                IrregularPair(p, l)
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
            if p >= max_p:
                raise FormatError(lineno, f"prime {p} not below max_p={max_p}")
            if d is not None and not 0 <= d < p:
                raise FormatError(lineno, f"delta {d} out of range for p={p}")
            if (p, l) in seen:
                raise FormatError(lineno, f"duplicate pair ({p},{l})")
            seen.add((p, l))
            entries.setdefault(p, []).append((l, d))
        return cls(max_p, entries)


def save_database(db: PairDatabase, path: str) -> None:
    db.save(path)


def load_database(path: str) -> PairDatabase:
    return PairDatabase.load(path)


def _sieve_many(ps: Sequence[int], jobs: Optional[int]) -> Dict[int, List[int]]:
    """Zero indices for each prime in ps; dispatched largest-first when pooled
    because the per-prime cost grows like p^2. Content is order-independent."""
    results: Dict[int, List[int]] = {}
    jobs = os.cpu_count() or 1 if jobs is None else jobs
    if jobs <= 1 or len(ps) < 4:
        for p in ps:
            results[p] = _sieve_worker(p)[1]
    else:
        with multiprocessing.Pool(processes=jobs) as pool:
            for p, zeros in pool.imap_unordered(
                _sieve_worker, sorted(ps, reverse=True), chunksize=4
            ):
                results[p] = zeros
    return results


def build_database(max_p: int, jobs: Optional[int] = None) -> PairDatabase:
    """Sieve every prime 5 <= p < max_p. jobs=None uses all cores, 1 is inline.

    Content is deterministic and independent of jobs.
    """
    from .arith import primes_below

    ps = [p for p in primes_below(max_p) if p >= 5]
    results = _sieve_many(ps, jobs)
    entries = {
        p: [(l, None) for l in zeros] for p, zeros in results.items() if zeros
    }
    return PairDatabase(max_p, entries)


def delta(pair: IrregularPair) -> DeltaValue:
    """The lifting slope of an irregular pair, as a residue digit in [0, p).

    Raises NotIrregular when B_l/l is not divisible by p (so the input was not
    an irregular pair after all).
    """
    p, l = pair.p, pair.l
    w0 = divided_bernoulli_mod_pk(l, p, 2).value
    if w0 % p:
        raise NotIrregular(p, f"B_{l}/{l} is nonzero mod {p}")
    w1 = divided_bernoulli_mod_pk(l + (p - 1), p, 2).value
    diff = (w1 - w0) % (p * p)
    if diff % p:
        raise AssertionError("Kummer congruence violated; kernel bug")
    return DeltaValue(pair, diff // p)


def _check_lift_feasible(p: int, order: int) -> None:
    if order <= 1:
        return
    if order > LIMITS.lift_max_order:
        raise ResourceLimit(
            f"lifting to order {order} is beyond the configured maximum "
            f"{LIMITS.lift_max_order}",
            needed=order,
            limit=LIMITS.lift_max_order,
        )
    bound = LIMITS.lift_order2_max_p if order == 2 else LIMITS.lift_order3_max_p
    if p >= bound:
        raise ResourceLimit(
            f"order-{order} lifting is limited to p < {bound}, got p={p}",
            needed=p,
            limit=bound,
        )


def lift_digits(pair: IrregularPair) -> Iterator[int]:
    """Yield s_1 = l, then each further lifting digit on demand.

    Feasibility limits are checked lazily, so consuming few digits never pays
    for (or errors on) deeper orders. Raises DeltaZero when the slope
    vanishes; raises NotIrregular for a non-pair.
    """
    p, l = pair.p, pair.l
    d = delta(pair).delta
    if d == 0:
        raise DeltaZero(p, l)
    dinv = pow(d, -1, p)
    yield l
    l_j = l
    j = 1
    while True:
        _check_lift_feasible(p, j + 1)
        pj = p**j
        w = divided_bernoulli_mod_pk(l_j, p, j + 1).value
        if w % pj:
            raise AssertionError(f"order-{j} index {l_j} lost divisibility")
        s = -(w // pj) * dinv % p
        l_next = l_j + s * phi_prime_power(p, j)
        if divided_bernoulli_mod_pk(l_next, p, j + 1).value != 0:
            raise AssertionError(
                f"solved digit {s} fails the order-{j + 1} congruence for {pair}"
            )
        yield s
        l_j = l_next
        j += 1


def lift(pair: IrregularPair, order: int) -> OrderedPair:
    """The unique order-n lift of a pair (order >= 1 digits, first is l)."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    gen = lift_digits(pair)
    digits = tuple(next(gen) for _ in range(order))
    return OrderedPair(pair.p, digits)


@dataclass
class ScanReport:
    """Order-2 scan results over a database.

    special holds every pair whose digits satisfy s_2 = s_1 - 1; min_abs_diff
    is the smallest |s_1 - s_2| seen (None when nothing was liftable), with
    the pairs attaining it in min_pairs. Pairs that could not be processed
    land in failures as (pair, reason) without aborting the scan.
    """

    max_p: int
    special: List[OrderedPair] = field(default_factory=list)
    min_abs_diff: Optional[int] = None
    min_pairs: List[OrderedPair] = field(default_factory=list)
    failures: List[Tuple[IrregularPair, str]] = field(default_factory=list)
    checked: int = 0


def _scan_worker(args: Tuple[int, int]) -> Tuple[int, int, Optional[int], str]:
    p, l = args
    try:
        gen = lift_digits(IrregularPair(p, l))
        next(gen)
        return p, l, next(gen), ""
    except BernpairsError as exc:
        return p, l, None, f"{type(exc).__name__}: {exc}"


def scan_special_order2(db: PairDatabase, jobs: Optional[int] = None) -> ScanReport:
    """Lift every pair in db to order 2 and report the s_2 = s_1 - 1 hits."""
    work = [(q.p, q.l) for q in db.all_pairs()]
    jobs = os.cpu_count() or 1 if jobs is None else jobs
    if jobs <= 1 or len(work) < 4:
        rows = [_scan_worker(w) for w in work]
    else:
        with multiprocessing.Pool(processes=jobs) as pool:
            rows = list(pool.imap_unordered(_scan_worker, work, chunksize=1))
    report = ScanReport(max_p=db.max_p)
    for p, l, s2, err in sorted(rows):
        pair = IrregularPair(p, l)
        if s2 is None:
            report.failures.append((pair, err))
            continue
        report.checked += 1
        lifted = OrderedPair(p, (l, s2))
        if s2 == l - 1:
            report.special.append(lifted)
        diff = abs(l - s2)
        if report.min_abs_diff is None or diff < report.min_abs_diff:
            report.min_abs_diff = diff
            report.min_pairs = [lifted]
        elif diff == report.min_abs_diff:
            report.min_pairs.append(lifted)
    return report
