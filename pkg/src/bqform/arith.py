"""Exact integer and prime-field primitives.

Everything here works on Python ints, so there is no overflow anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt as _isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, RamifiedPrimeError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
# first 13 primes as Miller-Rabin bases are a proven test below this bound
_MR_PROVEN_BOUND = 3317044064679887385961981


@dataclass(frozen=True)
class FactorMap:
    """Signed prime factorization ``sign * prod(p**e)``."""

    sign: int
    factors: Dict[int, int] = field(default_factory=dict)

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors.items():
            out *= p**e
        return out

    def primes(self) -> List[int]:
        return sorted(self.factors)

    def __getitem__(self, p: int) -> int:
        return self.factors.get(p, 0)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_prp(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    dd = 5
    while True:
        j = jacobi(dd, n)
        if j == -1:
            break
        if j == 0 and abs(dd) != n:
            return False
        dd = -dd - 2 if dd > 0 else -dd + 2
        if dd == 13 and is_square(n):
            return False
    P, Q = 1, (1 - dd) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 0, 2, 1
    # left-to-right binary ladder for (U_d, V_d)
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (dd * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Miller-Rabin with the first 13 prime bases is proven correct below
    about 3.3e24; above that a strong Lucas test is added (BPSW).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 47 * 47:
        return True
    if not all(_strong_probable_prime(n, a) for a in _SMALL_PRIMES[:13]):
        return False
    if n < _MR_PROVEN_BOUND:
        return True
    return _strong_lucas_prp(n)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard rho failed on {n}")


def factorize(n: int) -> FactorMap:
    """Exact factorization of a nonzero integer."""
    if n == 0:
        raise DomainError("cannot factor zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    factors: Dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 53
    while p * p <= n and p < 10_000:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        r, exact = isqrt(m)
        if exact:
            stack += [r, r]
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return FactorMap(sign, dict(sorted(factors.items())))


def valuation(n: int, p: int) -> int:
    """Largest ``e`` with ``p**e`` dividing ``n``."""
    if n == 0:
        raise DomainError("valuation of zero is infinite")
    if p < 2:
        raise DomainError(f"invalid prime {p}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive ``m``."""
    if m <= 0 or m % 2 == 0:
        raise DomainError(f"jacobi symbol needs an odd positive modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """Smaller square root of ``a`` modulo the prime ``p``, or None.

    Tonelli-Shanks; p = 2 is accepted as a convenience.
    """
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def isqrt(n: int) -> Tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise DomainError("square root of a negative number")
    r = _isqrt(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n)[1]


# --- polynomials over F_p -------------------------------------------------
# Internally a polynomial is a list of coefficients, lowest degree first,
# with no trailing zeros.


@dataclass(frozen=True)
class PolyModP:
    """Polynomial over F_p, coefficients listed from the highest degree down."""

    coefficients: Tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        coeffs = tuple(c % self.p for c in self.coefficients)
        if not coeffs or coeffs[0] == 0:
            raise DomainError(f"leading coefficient vanishes mod {self.p}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def monic(self) -> "PolyModP":
        inv = pow(self.coefficients[0], -1, self.p)
        return PolyModP(tuple(c * inv for c in self.coefficients), self.p)


def _trim(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    for i in range(len(f) - 1, dg - 1, -1):
        coef = f[i] * inv % p
        if coef:
            shift = i - dg
            for j, gj in enumerate(g):
                f[shift + j] = (f[shift + j] - coef * gj) % p
    return _trim(f[:dg])


def _pmulmod(f: Sequence[int], g: Sequence[int], mod: Sequence[int], p: int) -> List[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    return _pmod(_trim(out), mod, p)


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> List[int]:
    result: List[int] = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _pmod(f, g, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _psub(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return _trim(out)


def _pdiv_exact(f: Sequence[int], g: Sequence[int], p: int) -> List[int]:
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        coef = f[i] * inv % p
        q[i - dg] = coef
        if coef:
            for j, gj in enumerate(g):
                f[i - dg + j] = (f[i - dg + j] - coef * gj) % p
    return _trim(q)


def poly_factor_degrees(poly: PolyModP) -> List[int]:
    """Degrees of the irreducible factors of a squarefree polynomial mod p.

    Distinct-degree factorization: the product of the degree-k factors is
    ``gcd(f, x^(p^k) - x)``.  Raises :class:`RamifiedPrimeError` when the
    polynomial is not squarefree mod p.
    """
    p = poly.p
    f = list(reversed(poly.monic().coefficients))
    deriv = _trim([(i * c) % p for i, c in enumerate(f)][1:])
    if len(_pgcd(f, deriv, p)) > 1 or not deriv:
        raise RamifiedPrimeError(f"polynomial is not squarefree mod {p}")
    degrees: List[int] = []
    xpow = [0, 1]
    k = 0
    while len(f) > 1:
        k += 1
        if 2 * k > len(f) - 1:
            degrees.append(len(f) - 1)
            break
        xpow = _ppowmod(xpow, p, f, p)
        common = _pgcd(f, _psub(xpow, [0, 1], p), p)
        dk = len(common) - 1
        if dk:
            degrees += [k] * (dk // k)
            f = _pdiv_exact(f, common, p)
            xpow = _pmod(xpow, f, p) if len(f) > 1 else xpow
    return sorted(degrees)
