"""Global integral solutions, independent of any local or class-field reasoning."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .arith import isqrt
from .errors import DomainError
from .localsolve import QuadForm, reduce
from .pell import pell_fundamental, solve_generalized_pell


@dataclass
class SolutionSet:
    complete: bool
    solutions: List[Tuple[int, int]] = field(default_factory=list)
    orbit_info: Optional[Dict] = None

    @property
    def solvable(self) -> bool:
        return bool(self.solutions)

    def witness(self) -> Optional[Tuple[int, int]]:
        return self.solutions[0] if self.solutions else None


def is_solution(form: QuadForm, x: int, y: int) -> bool:
    return form(x, y) == 0


def solve_definite(form: QuadForm) -> SolutionSet:
    """Every integral solution of a definite equation."""
    if form.d <= 0:
        raise DomainError("solve_definite needs d > 0")
    pf = reduce(form)
    if pf.n_hat <= 0:
        return SolutionSet(True)
    sols = set()
    ymax = isqrt(pf.n_hat // pf.d_hat)[0]
    for yt in range(-ymax, ymax + 1):
        rest = pf.n_hat - pf.d_hat * yt * yt
        if rest < 0:
            continue
        r, exact = isqrt(rest)
        if not exact:
            continue
        for xt in {r, -r}:
            xy = pf.to_xy(xt, yt)
            if xy is not None:
                sols.add(xy)
    return SolutionSet(True, sorted(sols))


def _matrix_order(t: int, u: int, D: int, m: int) -> int:
    """Multiplicative order of [[t, D u], [u, t]] modulo m."""
    if m == 1:
        return 1
    A = (t % m, D * u % m, u % m, t % m)
    M = A
    k = 1
    while M != (1, 0, 0, 1):
        M = (
            (M[0] * A[0] + M[1] * A[2]) % m,
            (M[0] * A[1] + M[1] * A[3]) % m,
            (M[2] * A[0] + M[3] * A[2]) % m,
            (M[2] * A[1] + M[3] * A[3]) % m,
        )
        k += 1
    return k


def solve_indefinite(form: QuadForm) -> SolutionSet:
    """Decide integral solvability of an indefinite equation.

    Solutions of xt^2 - D yt^2 = n_hat fall into finitely many orbits under
    the Pell automorph.  The back-substitution congruence mod |a_back| is
    periodic along each orbit, with period dividing the order of the
    automorph matrix mod |a_back|, so one period per representative decides
    everything.  Survivors are listed as (x, y) solutions.
    """
    if form.d >= 0:
        raise DomainError("solve_indefinite needs d < 0")
    pf = reduce(form)
    D = -pf.d_hat
    fund = pell_fundamental(D)
    order = _matrix_order(fund.t, fund.u, D, pf.mod_back)
    reps = solve_generalized_pell(D, pf.n_hat)
    sols = []
    trace = []
    for rep in reps:
        xt, yt = rep
        hit = None
        for k in range(order):
            xy = pf.to_xy(xt, yt)
            if xy is not None:
                hit = (k, xy)
                break
            xt, yt = fund.t * xt + D * fund.u * yt, fund.u * xt + fund.t * yt
        trace.append({"rep": rep, "power": None if hit is None else hit[0]})
        if hit is not None:
            sols.append(hit[1])
    info = {"automorph": (fund.t, fund.u), "order": order, "representatives": trace}
    return SolutionSet(False, sorted(set(sols), key=lambda s: (abs(s[0]) + abs(s[1]), s)), info)


def solve(form: QuadForm) -> SolutionSet:
    return solve_definite(form) if form.d > 0 else solve_indefinite(form)
