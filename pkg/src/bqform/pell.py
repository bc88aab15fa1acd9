"""Continued fractions of quadratic irrationals and Pell-type equations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .arith import is_prime, isqrt, jacobi
from .errors import DomainError, SearchLimitError

# largest search solve_generalized_pell will run
MAX_SEARCH = 10**7
# Nagell ranges up to this length are scanned directly
NAGELL_SPAN = 10**4


@dataclass(frozen=True)
class ContinuedFraction:
    a0: int
    period: Tuple[int, ...]


@dataclass(frozen=True)
class PellSolution:
    t: int
    u: int
    rhs: int


def _check_D(D: int) -> None:
    if D < 2 or isqrt(D)[1]:
        raise DomainError(f"D must be a nonsquare integer >= 2, got {D}")


def cf_sqrt(D: int) -> ContinuedFraction:
    """Minimal-period continued fraction of sqrt(D)."""
    _check_D(D)
    a0 = isqrt(D)[0]
    P, Q, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        P = a * Q - P
        Q = (D - P * P) // Q
        a = (a0 + P) // Q
        period.append(a)
    return ContinuedFraction(a0, tuple(period))


def _convergent(cf: ContinuedFraction, length: int) -> Tuple[int, int]:
    """Numerator and denominator of the convergent after ``length`` partial quotients past a0."""
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    L = len(cf.period)
    for i in range(length):
        a = cf.period[i % L]
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


def pell_fundamental(D: int) -> PellSolution:
    """Minimal positive solution of t^2 - D u^2 = 1."""
    cf = cf_sqrt(D)
    L = len(cf.period)
    t, u = _convergent(cf, L - 1 if L % 2 == 0 else 2 * L - 1)
    return PellSolution(t, u, 1)


def negative_pell(D: int) -> PellSolution | None:
    """Minimal positive solution of t^2 - D u^2 = -1, if the period is odd."""
    cf = cf_sqrt(D)
    L = len(cf.period)
    if L % 2 == 0:
        return None
    t, u = _convergent(cf, L - 1)
    return PellSolution(t, u, -1)


def newman_hypothesis(primes: Sequence[int]) -> bool:
    """Whether a prime list satisfies the hypotheses of Newman's theorem on x^2 - Py^2 = -1.

    r must be 2 or odd and greater than 1, every prime is 1 mod 4, and the
    primes are pairwise quadratic nonresidues of each other.
    """
    if not primes:
        raise DomainError("empty prime list")
    if len(set(primes)) != len(primes):
        raise DomainError("primes must be distinct")
    for p in primes:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
    r = len(primes)
    if r < 2 or (r != 2 and r % 2 == 0):
        return False
    if any(p % 4 != 1 for p in primes):
        return False
    return all(jacobi(p, q) == -1 and jacobi(q, p) == -1 for p, q in combinations(primes, 2))


def equivalent(D: int, N: int, s1: Tuple[int, int], s2: Tuple[int, int]) -> bool:
    """Whether two solutions of x^2 - D y^2 = N differ by a unit of norm 1."""
    (x1, y1), (x2, y2) = s1, s2
    return (x1 * x2 - D * y1 * y2) % N == 0 and (y1 * x2 - x1 * y2) % N == 0


def solve_generalized_pell(D: int, N: int) -> List[Tuple[int, int]]:
    """One representative per class of solutions of x^2 - D y^2 = N.

    Classes are orbits under multiplication by +-(t + u sqrt(D))^k.  Each
    class has a member with y in the classical (Nagell) range.  That range
    is scanned exhaustively when it is short; when the fundamental unit is
    large the continued-fraction method is used instead.  An empty list
    means there are no solutions.
    """
    _check_D(D)
    if N == 0:
        raise DomainError("N must be nonzero")
    fund = pell_fundamental(D)
    t = fund.t
    if N > 0:
        lo, hi = 0, isqrt(N * (t - 1) // (2 * D))[0]
    else:
        lo = _ceil_sqrt_ratio(-N, D)
        hi = isqrt(-N * (t + 1) // (2 * D))[0]
    if hi - lo <= max(abs(N), NAGELL_SPAN):
        return _nagell_representatives(D, N, lo, hi)
    return _lmm_representatives(D, N)


def _nagell_representatives(D: int, N: int, lo: int, hi: int) -> List[Tuple[int, int]]:
    reps: List[Tuple[int, int]] = []
    for y in range(lo, hi + 1):
        x, exact = isqrt(N + D * y * y) if N + D * y * y >= 0 else (0, False)
        if not exact:
            continue
        for cand in ((x, y), (-x, y)) if x else ((0, y),):
            if not any(equivalent(D, N, cand, r) for r in reps):
                reps.append(cand)
    return reps


def _lmm_chain(D: int, P: int, Q: int) -> Optional[Tuple[int, int, int]]:
    """Expand (P + sqrt D)/Q until some Q_i = +-1 or the expansion cycles.

    Returns (G, B, v) with G^2 - D B^2 = v = +-Q, or None.
    """
    s = isqrt(D)[0]
    P0, Q0 = P, Q
    A2, A1, B2, B1 = 0, 1, 1, 0
    seen = set()
    i = 0
    while (P, Q) not in seen:
        seen.add((P, Q))
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        A2, A1 = A1, a * A1 + A2
        B2, B1 = B1, a * B1 + B2
        P = a * Q - P
        Q = (D - P * P) // Q
        i += 1
        if abs(Q) == 1:
            return Q0 * A1 - P0 * B1, B1, (-1) ** i * Q * Q0
    return None


def _lmm_representatives(D: int, N: int) -> List[Tuple[int, int]]:
    """Class representatives by the Lagrange-Matthews-Mollin method.

    Primitive solutions with x = z y (mod |m|), m = N/f^2, are found from
    the continued fraction of (z + sqrt D)/|m|; each admissible z gives at
    most one class.
    """
    neg = negative_pell(D)
    reps: List[Tuple[int, int]] = []
    for f in range(1, isqrt(abs(N))[0] + 1):
        if N % (f * f):
            continue
        m = N // (f * f)
        am = abs(m)
        if am > MAX_SEARCH:
            raise SearchLimitError(f"square-root search modulo {am}")
        for z in range(-((am - 1) // 2), am // 2 + 1):
            if (z * z - D) % am:
                continue
            hit = _lmm_chain(D, z, am)
            if hit is None:
                continue
            G, B, v = hit
            if v != m:
                if neg is None:
                    continue
                G, B = G * neg.t + D * B * neg.u, G * neg.u + B * neg.t
            reps.append((f * G, f * B))
    return reps


def _ceil_sqrt_ratio(num: int, den: int) -> int:
    """Smallest y >= 0 with den * y^2 >= num."""
    y = isqrt(num // den)[0]
    while den * y * y < num:
        y += 1
    return y


def automorph_power(sol: PellSolution, D: int, xy: Tuple[int, int], k: int) -> Tuple[int, int]:
    """Apply (t + u sqrt D)^k to x + y sqrt D; negative k uses the conjugate."""
    t, u = sol.t, sol.u
    if k < 0:
        u, k = -u, -k
    x, y = xy
    for _ in range(k):
        x, y = t * x + D * u * y, u * x + t * y
    return x, y
