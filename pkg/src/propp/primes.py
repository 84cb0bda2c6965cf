"""Sieving and indexing of primes in the residue class 3 mod 4.

q_i denotes the i-th prime p with p % 4 == 3 (3, 7, 11, 19, ...) and
lambda(p) the {0,1} indicator of that class; p = 2 is classified as
lambda(2) = 0.  Sieving is segmented so large limits run in bounded
memory, and the results feed a process-wide cache that grows by doubling
so repeated callers never re-sieve the same range.
"""
from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError

# Segment grid is fixed by size, never by worker count: every reduction
# over segments is therefore reproducible regardless of threading.
SEGMENT_SIZE = 1 << 22

# Memory budget guard; ~200M stored primes at the cap.
MAX_SIEVE_LIMIT = 1 << 32


def _base_primes(n: int) -> np.ndarray:
    """All primes <= n by a plain boolean sieve (n stays near sqrt(limit))."""
    mask = np.ones(max(n + 1, 2), dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        mask[start - lo:: p] = False
    return (np.flatnonzero(mask) + lo).astype(np.int64)


def _segment_bounds(limit: int, segment_size: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + segment_size - 1, limit))
            for lo in range(2, limit + 1, segment_size)]


def prime_segments(limit: int, threads: int = 1, segment_size: int = SEGMENT_SIZE):
    """Yield ascending arrays of primes covering [2, limit], one per segment."""
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceError(
            f"sieve limit {limit} exceeds the memory budget cap {MAX_SIEVE_LIMIT}")
    base = _base_primes(math.isqrt(limit))
    bounds = _segment_bounds(limit, segment_size)
    if threads <= 1:
        for lo, hi in bounds:
            yield _sieve_segment(lo, hi, base)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            yield from pool.map(lambda b: _sieve_segment(b[0], b[1], base), bounds)


_cache_lock = threading.Lock()
_cached_primes = np.empty(0, dtype=np.int64)
_cached_class3 = np.empty(0, dtype=np.int64)
_cached_limit = 1


def primes_upto(limit: int, threads: int = 1) -> np.ndarray:
    """All primes <= limit as a read-only ascending int64 array (cached)."""
    global _cached_primes, _cached_class3, _cached_limit
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceError(
            f"prime request {limit} exceeds the memory budget cap {MAX_SIEVE_LIMIT}")
    if limit < 2:
        return _cached_primes[:0]
    with _cache_lock:
        if limit > _cached_limit:
            new_limit = min(max(limit, 2 * _cached_limit, 1 << 16), MAX_SIEVE_LIMIT)
            parts = list(prime_segments(new_limit, threads=threads))
            primes = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
            class3 = primes[(primes & 3) == 3]
            primes.flags.writeable = False
            class3.flags.writeable = False
            _cached_primes, _cached_class3, _cached_limit = primes, class3, new_limit
        cut = int(np.searchsorted(_cached_primes, limit, side="right"))
        return _cached_primes[:cut]


def class3_upto(limit: int, threads: int = 1) -> np.ndarray:
    """All primes p <= limit with p % 4 == 3, ascending, read-only."""
    primes_upto(limit, threads=threads)
    with _cache_lock:
        cut = int(np.searchsorted(_cached_class3, limit, side="right"))
        return _cached_class3[:cut]


@dataclass(frozen=True)
class PrimeTable:
    """Immutable table of all primes up to `limit`, split by class mod 4.

    `class3` is the order-preserving filter of `primes` to the residue
    class 3 mod 4, so the i-th entry (1-based) is q_i.
    """

    limit: int
    primes: np.ndarray
    class3: np.ndarray

    def qindex(self, i: int) -> int:
        """q_i, the i-th prime in the class (1-based)."""
        if i < 1 or i > len(self.class3):
            raise DomainError(f"index {i} outside table range 1..{len(self.class3)}")
        return int(self.class3[i - 1])

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise DomainError(f"{n} exceeds table limit {self.limit}")
        pos = int(np.searchsorted(self.primes, n))
        return pos < len(self.primes) and int(self.primes[pos]) == n

    def lambda_indicator(self, p: int) -> int:
        if not self.is_prime(p):
            raise DomainError(f"lambda is only defined on primes, got {p}")
        return int(p % 4 == 3)


def sieve(limit: int, threads: int = 1) -> PrimeTable:
    """Sieve [2, limit] and return the indexed table."""
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    primes = primes_upto(limit, threads=threads)
    class3 = class3_upto(limit)
    return PrimeTable(limit=limit, primes=primes, class3=class3)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def lambda_indicator(p: int) -> int:
    """1 if the prime p lies in the class 3 mod 4, else 0 (lambda(2) = 0)."""
    if not is_prime(p):
        raise DomainError(f"lambda is only defined on primes, got {p}")
    return int(p % 4 == 3)


def nth_q(i: int, threads: int = 1) -> int:
    """q_i, extending the sieve by doubling until the i-th class-3 prime exists."""
    if i < 1:
        raise DomainError(f"q index must be at least 1, got {i}")
    if i < 8:
        bound = 64
    else:
        # q_i grows like 2 i log i; overshoot so one sieve usually suffices
        bound = int(2.4 * i * (math.log(i) + math.log(math.log(i)) + 1.0)) + 16
    arr = class3_upto(bound, threads=threads)
    while len(arr) < i:
        bound *= 2
        arr = class3_upto(bound, threads=threads)
    return int(arr[i - 1])


def q_growth_ratio(i: int) -> float:
    """q_i / (2 i log i), the deviation from the asymptotic size of q_i."""
    if i < 2:
        raise DomainError(f"growth ratio needs i >= 2 (log i vanishes at 1), got {i}")
    return nth_q(i) / (2.0 * i * math.log(i))
