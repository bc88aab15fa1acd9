"""Explicit solvability criteria driven by ring class field data.

A criterion is configured by a :class:`CriterionSpec`: the form family, the
reduced discriminant, a polynomial generating the ring class field over
E = Q(sqrt(-d_hat)), and the order of its (cyclic) Galois group.  Split
primes are classified by the factorization pattern of that polynomial mod p.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from .arith import PolyModP, factorize, is_prime, isqrt, jacobi, poly_factor_degrees, valuation
from .errors import DomainError
from .localsolve import QuadForm, reduce
from .pell import negative_pell


class Frobenius(str, enum.Enum):
    TRIVIAL = "trivial"
    ORDER2 = "order2"
    GENERATOR = "generator"
    INERT = "inert"
    RAMIFIED = "ramified"


class Hypothesis(str, enum.Enum):
    D_POSITIVE = "DPositive"
    D_NEG_CASE1 = "DNegCase1"
    D_NEG_CASE2 = "DNegCase2"
    NOT_COVERED = "NotCovered"


class UnitNorm(str, enum.Enum):
    SOLVABLE_OVER_Z = "solvable_over_Z"
    LOCALLY_OBSTRUCTED = "locally_obstructed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    form: Tuple[int, int, int]
    d_hat: int
    l_poly: Tuple[int, ...]
    galois_order: int
    special_primes: Tuple[Tuple[int, int], ...]
    symbol_arg: int

    def __post_init__(self) -> None:
        if len(self.l_poly) - 1 != self.galois_order:
            raise DomainError("galois_order must equal the degree of l_poly")
        a, b, c = self.form
        if b % 2 == 0:
            expected = a * c - (b // 2) ** 2
        else:
            expected = 4 * a * c - b * b
        if expected != self.d_hat:
            raise DomainError(f"d_hat {self.d_hat} does not match form {self.form}")
        for p, _ in self.special_primes:
            if not is_prime(p):
                raise DomainError(f"special prime {p} is not prime")

    @property
    def base(self) -> int:
        """Leading coefficient a; the norm target is n_hat = -a*g."""
        return self.form[0]

    @property
    def odd_ramified(self) -> List[int]:
        return [p for p, _ in self.special_primes if p != 2]

    def quad_form(self, g: int) -> QuadForm:
        return QuadForm(*self.form, g)


def parse_spec(text: str) -> CriterionSpec:
    """Parse the ``key = value`` configuration format (see README)."""
    raw: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        raw[key] = value
    required = ("name", "form", "d_hat", "l_poly", "galois_order", "symbol_arg", "special_primes")
    missing = [k for k in required if k not in raw]
    if missing:
        raise DomainError(f"missing keys: {', '.join(missing)}")
    try:
        form = tuple(int(v) for v in raw["form"].split())
        if len(form) != 3:
            raise DomainError("form needs three integers a b c")
        pairs = []
        for chunk in raw["special_primes"].split(","):
            if chunk.strip():
                p, role = (int(v) for v in chunk.split())
                pairs.append((p, role))
        return CriterionSpec(
            name=raw["name"],
            form=form,  # type: ignore[arg-type]
            d_hat=int(raw["d_hat"]),
            l_poly=tuple(int(v) for v in raw["l_poly"].split()),
            galois_order=int(raw["galois_order"]),
            special_primes=tuple(pairs),
            symbol_arg=int(raw["symbol_arg"]),
        )
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed configuration: {exc}") from exc


def load_spec(path: Union[str, Path]) -> CriterionSpec:
    return parse_spec(Path(path).read_text())


@lru_cache(maxsize=None)
def builtin_spec(example_id: int) -> CriterionSpec:
    if example_id not in (1, 2):
        raise DomainError(f"unknown example {example_id}; choose 1 or 2")
    text = resources.files("bqform.configs").joinpath(f"example{example_id}.cfg").read_text()
    return parse_spec(text)


@lru_cache(maxsize=65536)
def frobenius_class(spec: CriterionSpec, p: int) -> Frobenius:
    """Classify p in Gal(H_L/E) through the degree pattern of l_poly mod p."""
    if p == 2 or spec.d_hat % p == 0:
        return Frobenius.RAMIFIED
    j = jacobi(spec.symbol_arg, p)
    if j == 0:
        return Frobenius.RAMIFIED
    if j == -1:
        return Frobenius.INERT
    degrees = poly_factor_degrees(PolyModP(spec.l_poly, p))
    order = degrees[0]
    if any(k != order for k in degrees):
        raise DomainError(f"pattern {degrees} mod {p} is not that of a cyclic Galois group")
    if order == 1:
        return Frobenius.TRIVIAL
    if order == spec.galois_order:
        return Frobenius.GENERATOR
    if 2 * order == spec.galois_order:
        return Frobenius.ORDER2
    raise DomainError(f"Frobenius of order {order} is not supported")


@dataclass
class Condition:
    label: str
    holds: bool
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CriterionReport:
    example: str
    g: int
    conditions: List[Condition]

    @property
    def verdict(self) -> bool:
        return all(c.holds for c in self.conditions)

    def failing(self) -> List[str]:
        return [c.label for c in self.conditions if not c.holds]

    def compact(self) -> str:
        return " ".join(f"{c.label}:{'T' if c.holds else 'F'}" for c in self.conditions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "example": self.example,
            "g": self.g,
            "verdict": self.verdict,
            "conditions": [
                {"label": c.label, "holds": c.holds, "detail": c.detail} for c in self.conditions
            ],
        }


def _split_g(spec: CriterionSpec, g: int):
    fac = factorize(g)
    q = spec.odd_ramified[0]
    C = sorted({spec.base} | {p for p in fac.factors if p not in (2, q)})
    D = [p for p in C if frobenius_class(spec, p) is Frobenius.GENERATOR]
    return fac, q, C, D


def criterion_example1(g: int, spec: CriterionSpec | None = None) -> CriterionReport:
    """Criterion for 3x^2 + 2xy + 5y^2 + g = 0 with g < 0 (class group Z/4)."""
    spec = spec or builtin_spec(1)
    if g >= 0:
        raise DomainError("g must be negative")
    base = spec.base
    fac, q, C, D = _split_g(spec, g)
    s1, s2 = fac[2], fac[q]

    odd_part = base * g // 2**s1
    c1 = Condition("1", odd_part % 8 in (1, 7), {"s1": s1, "residue_mod_8": odd_part % 8})

    unit_q = g // q**s2
    sym = jacobi(unit_q, q)
    c2 = Condition("2", sym == 1, {"s2": s2, "symbol": sym})

    bad = [p for p, e in fac.factors.items()
           if p not in (2, base, q) and e % 2 == 1 and jacobi(spec.symbol_arg, p) != 1]
    odd_m = {p: e for p, e in fac.factors.items() if p not in (2, base, q) and e % 2 == 1}
    c3 = Condition("3", not bad, {"odd_valuations": odd_m, "violating": bad})

    total = sum(valuation(base * g, p) for p in D)
    c4 = Condition("4", total % 2 == 0, {"C": C, "D": D, "valuation_sum": total})
    return CriterionReport(spec.name, g, [c1, c2, c3, c4])


def criterion_example2(g: int, spec: CriterionSpec | None = None) -> CriterionReport:
    """Criterion for 5x^2 + 14xy - 6y^2 + g = 0 (class group Z/3).

    Condition 3 requires |D| > 1 whenever some p in D has v_p(5g) = 1.  With
    D the set of generator-class primes dividing 5g, this is exactly the
    obstruction that a single class of order 3 cannot be cancelled.
    """
    spec = spec or builtin_spec(2)
    if g == 0:
        raise DomainError("g must be nonzero")
    base = spec.base
    fac, q, C, D = _split_g(spec, g)
    s1, s2 = fac[2], fac[q]

    unit_q = g // q**s2 * (-1) ** s2
    sym = jacobi(unit_q, q)
    c1 = Condition("1", sym == -1, {"s1": s1, "s2": s2, "symbol": sym})

    bad = [p for p, e in fac.factors.items()
           if p not in (2, base, q) and e % 2 == 1 and jacobi(spec.symbol_arg, p) != 1]
    odd_m = {p: e for p, e in fac.factors.items() if p not in (2, base, q) and e % 2 == 1}
    c2 = Condition("2", not bad, {"odd_valuations": odd_m, "violating": bad})

    simple = [p for p in D if valuation(base * g, p) == 1]
    r = len([p for p in fac.factors if p not in (2, q)])
    c3 = Condition("3", not simple or len(D) > 1,
                   {"C": C, "D": D, "simple_in_D": simple, "r": r})
    return CriterionReport(spec.name, g, [c1, c2, c3])


def evaluate(spec: CriterionSpec, g: int) -> CriterionReport:
    """Run the criterion matching the configured Galois group order."""
    if spec.galois_order == 4:
        return criterion_example1(g, spec)
    if spec.galois_order == 3:
        return criterion_example2(g, spec)
    raise DomainError(f"no criterion for Galois group of order {spec.galois_order}")


def theorem_hypotheses(form: QuadForm) -> Hypothesis:
    """Which integral local-global theorem covers the form's reduced discriminant."""
    d_hat = reduce(form).d_hat
    if d_hat > 0:
        return Hypothesis.D_POSITIVE
    if isqrt(-d_hat)[1]:
        raise DomainError("-d_hat is a perfect square")
    fac = factorize(-d_hat)
    primes = fac.factors
    if 2 in primes or all(e % 2 == 0 for e in primes.values()):
        return Hypothesis.NOT_COVERED
    if any(p % 4 == 3 for p in primes):
        return Hypothesis.D_NEG_CASE1
    r = len(primes)
    ps = list(primes)
    if (
        (r == 2 or (r > 3 and r % 2 == 1))
        and all(p % 4 == 1 and e == 1 for p, e in primes.items())
        and all(jacobi(p, q) == -1 for p in ps for q in ps if p != q)
    ):
        return Hypothesis.D_NEG_CASE2
    return Hypothesis.NOT_COVERED


def unit_norm_check(d_hat: int) -> UnitNorm:
    """Status of x^2 + d_hat y^2 = -1, the only nontrivial unit class over Z."""
    if d_hat == 0:
        raise DomainError("d_hat must be nonzero")
    if d_hat > 0:
        return UnitNorm.LOCALLY_OBSTRUCTED
    if negative_pell(-d_hat) is not None:
        return UnitNorm.SOLVABLE_OVER_Z
    if any(p % 4 == 3 for p in factorize(-d_hat).factors):
        return UnitNorm.LOCALLY_OBSTRUCTED
    return UnitNorm.UNKNOWN
