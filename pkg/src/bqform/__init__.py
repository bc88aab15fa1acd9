"""Integral solvability of binary quadratic equations a x^2 + b xy + c y^2 + g = 0."""

from .criteria import (
    CriterionReport,
    CriterionSpec,
    Frobenius,
    Hypothesis,
    UnitNorm,
    builtin_spec,
    criterion_example1,
    criterion_example2,
    evaluate,
    frobenius_class,
    load_spec,
    theorem_hypotheses,
    unit_norm_check,
)
from .errors import DepthCapExceeded, DomainError, RamifiedPrimeError
from .localsolve import LocalVerdict, PellForm, QuadForm, local_profile, reduce, solvable_in_R, solvable_in_Zp
from .solver import SolutionSet, is_solution, solve, solve_definite, solve_indefinite

__version__ = "0.1.0"
