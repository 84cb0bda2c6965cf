"""Explicit construction of the layered Property-P set S and its baselines.

The i-th layer S_i consists of the integers q_i^4 * nu^2 where nu runs
over squarefree products of exactly i distinct primes p % 4 == 3.  By the
literal definition nu may contain q_i itself; `exclude_qi=True` selects
the coprime variant.  The q_i^4 factor acts as an indicator: it is the
only prime entering any element with valuation >= 4, which pins down the
layer an element belongs to and keeps distinct layers disjoint.

Values are plain Python integers, so elements far beyond 64 bits (the
8th layer already starts near 2e26) enumerate exactly with no overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .primes import class3_upto, nth_q


@dataclass(frozen=True)
class SetElement:
    """One member of a layer: value = q_i^4 * (prod nu_factors)^2."""

    value: int
    set_index: int
    nu_factors: tuple[int, ...]


def _require_positive_int(name: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise DomainError(f"{name} must be a positive integer, got {v!r}")
    return v


def _admissible_primes(i: int, cap: int, exclude_qi: bool) -> list[int]:
    primes = [int(p) for p in class3_upto(cap)]
    if exclude_qi:
        q = nth_q(i)
        primes = [p for p in primes if p != q]
    return primes


def min_element(i: int, exclude_qi: bool = False) -> int:
    """Smallest member of S_i: q_i^4 times the square of the i smallest
    admissible primes."""
    _require_positive_int("set index", i)
    q = nth_q(i)
    # the first i admissible nu primes sit among the first i+1 class-3 primes
    pool = [nth_q(j) for j in range(1, i + 2)]
    if exclude_qi:
        pool = [p for p in pool if p != q]
    nu = math.prod(pool[:i])
    return q ** 4 * nu * nu


def max_set_index(limit: int, exclude_qi: bool = False) -> int:
    """Largest i whose layer reaches below `limit`; 0 when none does."""
    _require_positive_int("limit", limit)
    i = 0
    while min_element(i + 1, exclude_qi) <= limit:
        i += 1
    return i


def enumerate_s_i(i: int, limit: int, exclude_qi: bool = False) -> list[SetElement]:
    """All elements of S_i up to `limit`, ascending by value."""
    _require_positive_int("set index", i)
    _require_positive_int("limit", limit)
    q = nth_q(i)
    q4 = q ** 4
    if q4 > limit:
        return []
    nu_max = math.isqrt(limit // q4)
    # the largest factor of any admissible nu divides out the i-1 smallest
    # admissible primes, so the sieve never needs to reach nu_max itself
    pool = [nth_q(j) for j in range(1, i + 2)]
    if exclude_qi:
        pool = [p for p in pool if p != q]
    prime_cap = nu_max // math.prod(pool[: i - 1])
    primes = _admissible_primes(i, min(nu_max, prime_cap), exclude_qi)
    out: list[SetElement] = []
    chosen: list[int] = []

    def walk(start: int, prod: int) -> None:
        need = i - len(chosen)
        if need == 0:
            out.append(SetElement(q4 * prod * prod, i, tuple(chosen)))
            return
        for idx in range(start, len(primes)):
            p = primes[idx]
            # smallest possible completion uses p for every remaining slot
            if prod * p ** need > nu_max:
                break
            chosen.append(p)
            walk(idx + 1, prod * p)
            chosen.pop()

    walk(0, 1)
    out.sort(key=lambda e: e.value)
    return out


def enumerate_s(limit: int, exclude_qi: bool = False) -> list[SetElement]:
    """The union of all layers up to `limit`, ascending, duplicate-free."""
    _require_positive_int("limit", limit)
    merged: list[SetElement] = []
    for i in range(1, max_set_index(limit, exclude_qi) + 1):
        merged.extend(enumerate_s_i(i, limit, exclude_qi))
    merged.sort(key=lambda e: e.value)
    for a, b in zip(merged, merged[1:]):
        if a.value == b.value:
            raise AssertionError(
                f"indicator uniqueness violated: {a.value} in layers "
                f"{a.set_index} and {b.set_index}")
    return merged


def baseline_squares(limit: int) -> list[int]:
    """The classical baseline {q_i^2 <= limit}."""
    _require_positive_int("limit", limit)
    return [int(q) ** 2 for q in class3_upto(math.isqrt(limit))]


def finite_block(x: int) -> list[int]:
    """The floor(x/3)+1 consecutive integers x - floor(x/3) .. x."""
    _require_positive_int("x", x)
    return list(range(x - x // 3, x + 1))


def window_params_from_logs(log_x: float) -> tuple[int, int]:
    """(k, l) of the contributing range, from the natural log of x.

    k = floor(log_2(sqrt x) / 2) and l = floor(sqrt(log_2(sqrt x) / 2)),
    where log_2 is the twice-iterated logarithm.  Both must reach 2 for
    the window to contain anything; this needs log_2(sqrt x) >= 8, i.e.
    x >= e^(2 e^8), so admissible x never fit in a double.  Integer x of
    a few thousand digits work fine (math.log takes big ints), and this
    log-domain entry point covers the rest.
    """
    if not math.isfinite(log_x) or log_x <= 2.0:
        raise DomainError(
            f"window needs log log sqrt(x) defined, i.e. log x > 2; got log x = {log_x}")
    half_llsx = math.log(log_x / 2.0) / 2.0
    k = math.floor(half_llsx)
    l = math.floor(math.sqrt(half_llsx))
    if k < 2 or l < 2:
        raise DomainError(
            "window requires (log_2 sqrt(x))/2 >= 4 so that k >= 2 and l >= 2; "
            f"got {half_llsx:.4f}")
    return k, l


def contribution_window_from_logs(log_x: float) -> tuple[int, int]:
    """Layer index range (k+2, k+l) computed from log x."""
    k, l = window_params_from_logs(log_x)
    return k + 2, k + l


def contribution_window(x) -> tuple[int, int]:
    """Layer index range (k+2, k+l) holding the main contribution at x."""
    try:
        log_x = math.log(x)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"cannot take log of x = {x!r}") from exc
    return contribution_window_from_logs(log_x)
