"""Exact and asymptotic counting of squarefree k-almost-primes whose
prime factors all lie in the class 3 mod 4.

pi_k(x;4,3) counts n <= x with omega(n) = Omega(n) = k and every p | n
congruent 3 mod 4.  The exact count enumerates ascending prime tuples
with product pruning, batch-counting the last factor by binary search.
The asymptotic side evaluates Landau's classical term

    x (log log x)^(k-1) / ((k-1)! log x)

and the refined class-restricted expansion whose leading factor is that
term divided by 2^k, with second-order corrections driven by C(3,4) and
the curvature h'' from the analytic-constants module.  All factorials run
in log space so large k cannot overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import constants
from .errors import DomainError, ResourceError
from .primes import class3_upto, nth_q

PI_K_FEASIBILITY_LIMIT = 10 ** 10

# established admissible constant for the corollary-window lower bound
ADMISSIBLE_C = 0.802

DEFAULT_UNIFORMITY_A = 2.0

_E = math.e
_E_TO_E = math.exp(math.e)


@dataclass(frozen=True)
class CountReport:
    """Exact count next to the asymptotic terms at one grid point."""

    x: int
    k: int
    exact: int
    landau: Optional[float]
    meng_main: Optional[float]
    meng_full: Optional[float]
    ratio_exact_to_main: Optional[float]


def _require_positive_int(name: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise DomainError(f"{name} must be a positive integer, got {v!r}")
    return v


def pi_k_exact(x: int, k: int, threads: int = 1) -> int:
    """Exact pi_k(x;4,3) by pruned enumeration over ascending class-3 primes."""
    _require_positive_int("x", x)
    _require_positive_int("k", k)
    if x > PI_K_FEASIBILITY_LIMIT:
        raise ResourceError(
            f"x = {x} exceeds the enumeration feasibility guard {PI_K_FEASIBILITY_LIMIT}")

    smallest = [nth_q(j) for j in range(1, k + 1)]
    if math.prod(smallest) > x:
        return 0
    # every leaf budget divides out at least the k-1 smallest primes
    arr = class3_upto(x // math.prod(smallest[: k - 1]), threads=threads)
    n = len(arr)

    def count_from(start: int, remaining: int, budget: int) -> int:
        if remaining == 1:
            return max(0, int(np.searchsorted(arr, budget, side="right")) - start)
        total = 0
        for idx in range(start, n):
            p = int(arr[idx])
            if p ** remaining > budget:
                break
            total += count_from(idx + 1, remaining - 1, budget // p)
        return total

    return count_from(0, k, x)


def landau_term(x, k: int) -> float:
    """Landau's asymptotic term for integers with k distinct prime factors.

    Needs log log x > 1 (x > e^e) for k >= 2 so the powers are positive
    and meaningful; the k = 1 specialisation x / log x only needs x > e.
    """
    _require_positive_int("k", k)
    if k == 1:
        if not x > _E:
            raise DomainError(f"landau term at k=1 needs x > e, got {x}")
    elif not x > _E_TO_E:
        raise DomainError(f"landau term needs x > e^e for k >= 2, got {x}")
    lx = math.log(x)
    llx = math.log(lx)
    power = 0.0 if k == 1 else (k - 1) * math.log(llx)
    try:
        return math.exp(lx - math.log(lx) + power - math.lgamma(k))
    except OverflowError:
        return math.inf


def meng_estimate(x, k: int, mode: str = "main", *,
                  uniformity_a: float = DEFAULT_UNIFORMITY_A,
                  c34_limit: int = constants.DEFAULT_CONSTANT_PLIMIT,
                  h_plimit: int = constants.DEFAULT_H_PLIMIT) -> float:
    """Class-restricted expansion of pi_k(x;4,3).

    mode="main" is the leading factor (1/2^k)(x/log x)(log log x)^(k-1)/(k-1)!.
    mode="full" multiplies in the bracketed correction
    1 + (k-1) C(3,4) / log log x + 2(k-1)(k-2)/(log log x)^2 * h''(2(k-3)/(3 log log x));
    the unquantified remainder of order k^2/(log log x)^3 is dropped, see
    `meng_neglected_scale` for its magnitude.
    """
    if mode not in ("main", "full"):
        raise DomainError(f"mode must be 'main' or 'full', got {mode!r}")
    _require_positive_int("k", k)
    if k < 2:
        raise DomainError(f"expansion holds for k >= 2, got k = {k}")
    if not x > _E_TO_E:
        raise DomainError(f"expansion needs x > e^e, got {x}")
    lx = math.log(x)
    llx = math.log(lx)
    if k > uniformity_a * llx:
        raise DomainError(
            f"k = {k} exceeds the uniformity bound A log log x = "
            f"{uniformity_a * llx:.4f} (A = {uniformity_a})")
    try:
        main = math.exp(-k * math.log(2.0) + lx - math.log(lx)
                        + (k - 1) * math.log(llx) - math.lgamma(k))
    except OverflowError:
        main = math.inf
    if mode == "main":
        return main
    c34_value = constants.c34(c34_limit).value
    correction = 1.0 + (k - 1) * c34_value / llx
    if k > 2:
        arg = 2.0 * (k - 3) / (3.0 * llx)
        correction += (2.0 * (k - 1) * (k - 2) / llx ** 2) * constants.h_second(
            arg, h_plimit, method="analytic")
    return main * correction


def meng_neglected_scale(x, k: int) -> float:
    """Magnitude k^2/(log log x)^3 of the dropped remainder term."""
    if not x > _E_TO_E:
        raise DomainError(f"needs x > e^e, got {x}")
    llx = math.log(math.log(x))
    return k * k / llx ** 3


def corollary_window(x) -> tuple[float, float]:
    """Admissible k range (log log x)/2 - 1 .. (log log x)/2 + sqrt((log log x)/2)."""
    if not x > _E_TO_E:
        raise DomainError(f"needs x > e^e, got {x}")
    half = math.log(math.log(x)) / 2.0
    return half - 1.0, half + math.sqrt(half)


def corollary_lower_bound(x, k: int, **meng_kwargs) -> float:
    """Lower bound c * main-term with c = 0.802, valid on the corollary window."""
    lo, hi = corollary_window(x)
    if not lo <= k <= hi:
        raise DomainError(
            f"k = {k} outside the uniformity window [{lo:.4f}, {hi:.4f}]")
    return ADMISSIBLE_C * meng_estimate(x, k, "main", **meng_kwargs)


def compare(x_grid: Sequence[int], k_set: Sequence[int], *,
            threads: int = 1, **meng_kwargs) -> list[CountReport]:
    """One CountReport per (x, k) pair; expansion fields are None where the
    expansion's own guards exclude the pair (k = 1, small x, k too large)."""
    reports = []
    for x in x_grid:
        for k in k_set:
            exact = pi_k_exact(x, k, threads=threads)
            landau = landau_term(x, k)
            try:
                main = meng_estimate(x, k, "main", **meng_kwargs)
                full = meng_estimate(x, k, "full", **meng_kwargs)
            except DomainError:
                main = full = None
            ratio = exact / main if main else None
            reports.append(CountReport(x, k, exact, landau, main, full, ratio))
    return reports
