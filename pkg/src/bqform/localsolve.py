"""Local solvability of a x^2 + b xy + c y^2 + g = 0 over Z_p and R."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .arith import factorize, is_prime, is_square, sqrt_mod_prime, valuation
from .errors import DepthCapExceeded, DomainError

INF = "inf"
Place = Union[int, str]


@dataclass(frozen=True)
class QuadForm:
    """The equation a x^2 + b xy + c y^2 + g = 0."""

    a: int
    b: int
    c: int
    g: int

    def __post_init__(self) -> None:
        if self.a == 0:
            raise DomainError("a must be nonzero")
        if self.g == 0:
            raise DomainError("g must be nonzero")
        if self.d == 0:
            raise DomainError("discriminant is zero")
        if is_square(-self.d):
            raise DomainError(f"-d = {-self.d} is a perfect square")

    @property
    def d(self) -> int:
        return 4 * self.a * self.c - self.b * self.b

    @property
    def definite(self) -> bool:
        return self.d > 0

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y + self.g

    def gradient(self, x: int, y: int) -> Tuple[int, int]:
        return 2 * self.a * x + self.b * y, self.b * x + 2 * self.c * y


@dataclass(frozen=True)
class PellForm:
    """Norm-form equation xt^2 + d_hat yt^2 = n_hat equivalent to a QuadForm.

    Integral (x, y) correspond to integral (xt, yt) with
    xt = b_back * yt (mod mod_back), via x = (xt - b_back*yt) / a_back, y = yt.
    """

    d_hat: int
    n_hat: int
    a_back: int
    b_back: int
    mod_back: int

    def to_xy(self, xt: int, yt: int) -> Optional[Tuple[int, int]]:
        num = xt - self.b_back * yt
        if num % self.a_back:
            return None
        return num // self.a_back, yt

    def from_xy(self, x: int, y: int) -> Tuple[int, int]:
        return self.a_back * x + self.b_back * y, y

    def satisfies(self, xt: int, yt: int) -> bool:
        return xt * xt + self.d_hat * yt * yt == self.n_hat


@dataclass(frozen=True)
class LocalVerdict:
    place: Place
    solvable: bool
    witness: Optional[Tuple[int, int]] = None
    depth: Optional[int] = None
    reason: str = ""


def reduce(form: QuadForm) -> PellForm:
    """Complete the square: xt = 2ax + by (halved when b is even)."""
    a, b, c, g = form.a, form.b, form.c, form.g
    if b % 2 == 0:
        return PellForm(a * c - (b // 2) ** 2, -a * g, a, b // 2, abs(a))
    return PellForm(4 * a * c - b * b, -4 * a * g, 2 * a, b, abs(2 * a))


def solvable_in_R(form: QuadForm) -> LocalVerdict:
    if form.d < 0:
        return LocalVerdict(INF, True, reason="indefinite form")
    if form.a * form.g < 0:
        return LocalVerdict(INF, True, reason="definite form, a*g < 0")
    return LocalVerdict(INF, False, reason="definite form cannot reach -g")


def _vcap(n: int, p: int, cap: int) -> int:
    """p-adic valuation of n, capped (n = 0 gives cap)."""
    if n == 0:
        return cap
    return min(valuation(n, p), cap)


def _roots(A: int, B: int, C: int, p: int) -> List[int]:
    """Roots of A x^2 + B x + C modulo the prime p."""
    A, B, C = A % p, B % p, C % p
    if p == 2:
        return [x for x in range(2) if (A * x * x + B * x + C) % 2 == 0]
    if A == 0:
        if B:
            return [-C * pow(B, -1, p) % p]
        return list(range(p)) if C == 0 else []
    r = sqrt_mod_prime(B * B - 4 * A * C, p)
    if r is None:
        return []
    inv = pow(2 * A, -1, p)
    return sorted({(-B + r) * inv % p, (-B - r) * inv % p})


def _level_one(a: int, b: int, c: int, g: int, p: int) -> Iterator[Tuple[int, int]]:
    """Nonzero (x, y) mod p with a x^2 + bxy + cy^2 + g = 0 mod p.

    When p | g the equation is homogeneous mod p and only one point per
    line through the origin is produced.
    """
    if g % p == 0:
        if a % p == 0:
            yield (1, 0)
        for x in _roots(a, b, c, p):
            yield (x, 1)
        return
    for y in range(p):
        for x in _roots(a, b * y, c * y * y + g, p):
            yield (x, y)


def _primitive_search(form: QuadForm, g: int, p: int, cap: int):
    """Look for a primitive Z_p zero of Q + g by iterative deepening.

    Returns (x, y, m) with a certificate, or None once every residue class
    has been ruled out.
    """
    a, b, c = form.a, form.b, form.c

    def f(x: int, y: int) -> int:
        return a * x * x + b * x * y + c * y * y + g

    def grad_val(x: int, y: int, n: int) -> int:
        return min(_vcap(2 * a * x + b * y, p, n), _vcap(b * x + 2 * c * y, p, n))

    # Classes mod p^N whose gradient vanishes mod p^N.  Once a class has a
    # known gradient valuation m < N, f mod p^(2m+1) is constant on it, so
    # it is settled at once instead of being carried to depth 2m+1.
    live: List[Tuple[int, int]] = []
    for x, y in _level_one(a, b, c, g, p):
        m = grad_val(x, y, 1)
        if m == 0:
            return x, y, 0
        live.append((x, y))
    if g % p == 0:
        # homogeneous case: points were reduced to one per line; restore the
        # full classes before lifting, since lifts are not scale invariant
        live = [(x * s % p, y * s % p) for (x, y) in live for s in range(1, p)]
    N, pN = 1, p
    while live:
        if N >= cap:
            raise DepthCapExceeded(f"p={p}: depth {N} reached for {form}")
        nxt: List[Tuple[int, int]] = []
        pN1 = pN * p
        for x, y in live:
            if f(x, y) % pN1:
                continue  # every lift has the same f mod p^(N+1)
            for i in range(p):
                xi = x + pN * i
                for j in range(p):
                    yj = y + pN * j
                    m = grad_val(xi, yj, N + 1)
                    if m <= N:
                        if f(xi, yj) % p ** (2 * m + 1) == 0:
                            return xi, yj, m
                    else:
                        nxt.append((xi, yj))
        live, N, pN = nxt, N + 1, pN1
    return None


def solvable_in_Zp(form: QuadForm, p: int) -> LocalVerdict:
    """Decide whether the equation has a solution in Z_p.

    Zeros with min(v(x), v(y)) = k are p^k times primitive zeros of
    Q + g/p^(2k); each k <= v_p(g)/2 is searched by iterative deepening
    with Hensel certificates.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    cap = valuation(16 * form.a * form.d * form.g, p) + 8
    vg = valuation(form.g, p)
    for k in range(vg // 2 + 1):
        scale = p**k
        hit = _primitive_search(form, form.g // (scale * scale), p, cap)
        if hit is not None:
            x, y, m = hit
            return LocalVerdict(p, True, (x * scale, y * scale), 2 * (m + k) + 1,
                                f"Hensel lift from gradient valuation {m + k}")
    return LocalVerdict(p, False, reason="no residue class survives")


def local_profile(form: QuadForm) -> Dict[Place, LocalVerdict]:
    """Verdicts at infinity and at every prime dividing 2*d_hat*n_hat.

    Primes outside that set always admit solutions (smooth conic over F_p
    with a unit change of variables) and are not listed.
    """
    pf = reduce(form)
    primes = set(factorize(2 * pf.d_hat * pf.n_hat).factors)
    profile: Dict[Place, LocalVerdict] = {INF: solvable_in_R(form)}
    for p in sorted(primes):
        profile[p] = solvable_in_Zp(form, p)
    return profile


def overall_solvable(profile: Dict[Place, LocalVerdict]) -> bool:
    return all(v.solvable for v in profile.values())


def failing_places(profile: Dict[Place, LocalVerdict]) -> List[Place]:
    return [place for place, v in profile.items() if not v.solvable]
