"""Distillation-overhead exponent gamma and the parameter search over primes.

gamma = ln(n/k)/ln(d) for an (n, k, d) family member; the family from a
prime p offers n = p - k, d = l - k under 3l <= p + 1, so growing p drives
the best achievable gamma toward zero like 1/ln(p).  The distance parameter
is read as l - k throughout — the value that reproduces the family's own
reference numbers — and every report carries that interpretation note.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .fplinalg import BudgetExceeded
from .triortho_css import TriorthogonalCode, _distance_exact_z

__all__ = [
    "INTERPRETATION_NOTE",
    "OverheadRecord",
    "gamma",
    "family_params",
    "primes_up_to",
    "search_best_gamma",
    "gamma_scaling_check",
    "error_suppression_order",
    "to_csv",
    "scaling_summary",
]

INTERPRETATION_NOTE = (
    "gamma = ln(n/k)/ln(d) with the family distance parameter read as d = l - k; "
    "exact enumeration shows the realized minimum distance can exceed this value"
)


@dataclass(frozen=True)
class OverheadRecord:
    """Best (l, k) found for one prime, with the resulting gamma."""

    p: int
    l: int
    k: int
    n: int
    d: int
    gamma: float

    def __post_init__(self):
        if 3 * self.l > self.p + 1:
            raise ValueError(f"3l <= p+1 violated: l={self.l}, p={self.p}")
        if not 1 <= self.k < self.l:
            raise ValueError(f"need 1 <= k < l, got k={self.k}, l={self.l}")
        if self.n != self.p - self.k or self.d != self.l - self.k:
            raise ValueError("n, d must equal p - k and l - k")


def gamma(n: int, k: int, d: int) -> float:
    """ln(n/k)/ln(d); base-independent ratio."""
    if not n > k >= 1:
        raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
    if d < 2:
        raise ValueError(f"gamma is undefined for d < 2 (got d={d})")
    return math.log(n / k) / math.log(d)


def family_params(p: int, l: int, k: int):
    """(n, k, d) = (p-k, k, l-k) for a family member."""
    if 3 * l > p + 1:
        raise ValueError(f"3l <= p+1 violated: l={l}, p={p}")
    if not 0 <= k <= l:
        raise ValueError(f"need 0 <= k <= l, got k={k}")
    return (p - k, k, l - k)


def primes_up_to(n: int) -> List[int]:
    """Eratosthenes sieve."""
    if n < 2:
        return []
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, int(n**0.5) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return [int(q) for q in np.nonzero(flags)[0]]


def search_best_gamma(p_max: int) -> List[OverheadRecord]:
    """Per-prime minimum of gamma over the family's (l, k) grid.

    For fixed k, gamma strictly decreases as l grows (larger d at the same
    n/k), so the minimum always sits at l = floor((p+1)/3); the scan runs
    over k there, taking the first (smallest-k) minimizer.  A brute-force
    grid scan cross-checks this reduction in the test suite.
    """
    if p_max > 10**5:
        raise ValueError("search capped at p_max <= 10^5")
    records = []
    for p in primes_up_to(p_max):
        l = (p + 1) // 3
        if l < 3:
            continue  # no k gives d >= 2
        k = np.arange(1, l - 1, dtype=np.float64)
        g = np.log((p - k) / k) / np.log(l - k)
        best = int(np.argmin(g))  # first occurrence: smallest k on ties
        records.append(
            OverheadRecord(
                p=p,
                l=l,
                k=best + 1,
                n=p - (best + 1),
                d=l - (best + 1),
                gamma=float(g[best]),
            )
        )
    return records


def gamma_scaling_check(records: Sequence[OverheadRecord]):
    """(c_fit, monotone_ok): envelope constant for gamma <= c/ln(p) and
    non-increase of the running minimum across primes."""
    if len(records) < 10:
        raise ValueError(f"need at least 10 records, got {len(records)}")
    c_fit = max(r.gamma * math.log(r.p) for r in records)
    running = math.inf
    monotone_ok = True
    previous = math.inf
    for r in sorted(records, key=lambda r: r.p):
        running = min(running, r.gamma)
        if running > previous:
            monotone_ok = False
        previous = running
    return (c_fit, monotone_ok)


def error_suppression_order(code: TriorthogonalCode, budget: Optional[int] = None) -> int:
    """Leading error-suppression exponent: the exact minimum weight of an
    undetected Z-type logical, i.e. the code distance."""
    if code.k == 0:
        raise ValueError("code has no logical qudits")
    if code.d_verified:
        return code.d
    if budget is not None:
        d = _distance_exact_z(code.H0, code.H1, code.G, budget)
        if d is not None:
            return d
    raise BudgetExceeded("distance was not enumerated within budget")


def to_csv(records: Sequence[OverheadRecord]) -> str:
    lines = ["p,l,k,n,d,gamma"]
    for r in records:
        lines.append(f"{r.p},{r.l},{r.k},{r.n},{r.d},{r.gamma!r}")
    return "\n".join(lines) + "\n"


def scaling_summary(records: Sequence[OverheadRecord]) -> dict:
    """JSON-ready summary of a search run."""
    c_fit, monotone_ok = gamma_scaling_check(records)
    best = min(records, key=lambda r: (r.gamma, r.p))
    return {
        "count": len(records),
        "c_fit": c_fit,
        "monotone_ok": monotone_ok,
        "best": {
            "p": best.p,
            "l": best.l,
            "k": best.k,
            "n": best.n,
            "d": best.d,
            "gamma": best.gamma,
        },
        "interpretation": INTERPRETATION_NOTE,
    }
