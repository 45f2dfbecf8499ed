"""Fitness functions for homogeneous (bent) Boolean functions.

All totals are exact :class:`fractions.Fraction` values whose denominator
divides 2^n, so tournament comparisons never suffer float ties.  Larger is
better.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import numpy as np

from .boolfun import (
    Anf,
    TruthTable,
    WalshSpectrum,
    anf_of,
    covering_bound,
    fwht,
    is_bent,
    is_homogeneous,
    max_abs_count,
    mobius,
    monomial_weights,
    nonlinearity,
)

FITNESSES = ("fit1", "fit2", "fit3", "fit4")


@dataclasses.dataclass(frozen=True)
class FitnessValue:
    """A fitness total with the pieces it was assembled from.

    ``penalty`` is the homogeneity term (minus the number of wrong-degree
    monomials), ``nl`` the nonlinearity and ``max_count`` the number of Walsh
    coefficients at the maximal absolute value.  ``terms`` is the ANF size,
    which separates the zero function from genuine homogeneous functions.
    """

    total: Fraction
    penalty: int
    nl: int
    max_count: int
    terms: int
    n: int
    d: int

    @property
    def smoothing(self) -> Fraction:
        return Fraction((1 << self.n) - self.max_count, 1 << self.n)

    @property
    def homogeneous(self) -> bool:
        return self.penalty == 0 and self.terms > 0

    @property
    def bent_homogeneous(self) -> bool:
        return self.homogeneous and self.n % 2 == 0 and self.nl == covering_bound(self.n)


def fit1(anf: Anf, d: int) -> int:
    """Minus the number of ANF monomials whose degree differs from d (constant included)."""
    wrong = anf.coeffs.astype(bool) & (monomial_weights(anf.n) != d)
    return -int(np.count_nonzero(wrong))


def obj_bent(ws: WalshSpectrum) -> Fraction:
    size = 1 << ws.n
    _, count = max_abs_count(ws)
    return nonlinearity(ws) + Fraction(size - count, size)


def _parts(tt: TruthTable, d: int) -> tuple[int, int, int, int]:
    n = tt.n
    coeffs = mobius(tt.bits).astype(bool)
    weights = monomial_weights(n)
    terms = int(np.count_nonzero(coeffs))
    penalty = -int(np.count_nonzero(coeffs & (weights != d)))
    absw = np.abs(fwht(tt.bits))
    top = int(absw.max())
    count = int(np.count_nonzero(absw == top))
    nl = (1 << (n - 1)) - top // 2
    return penalty, terms, nl, count


def evaluate(tt: TruthTable, d: int, kind: str) -> FitnessValue:
    """Score ``tt`` for target degree ``d`` under fitness ``kind``."""
    if kind not in FITNESSES:
        raise ValueError(f"unknown fitness {kind!r}; expected one of {FITNESSES}")
    n = tt.n
    size = 1 << n
    penalty, terms, nl, count = _parts(tt, d)
    bent_obj = nl + Fraction(size - count, size)
    if kind == "fit1":
        total = Fraction(penalty)
    elif kind == "fit2":
        total = penalty + (bent_obj if penalty == 0 else 0)
    elif kind == "fit3":
        total = penalty + bent_obj
    else:
        total = bent_obj + Fraction(penalty, size)
    return FitnessValue(Fraction(total), penalty, nl, count, terms, n, d)


def fit2(tt: TruthTable, d: int) -> FitnessValue:
    return evaluate(tt, d, "fit2")


def fit3(tt: TruthTable, d: int) -> FitnessValue:
    return evaluate(tt, d, "fit3")


def fit4(tt: TruthTable, d: int) -> FitnessValue:
    return evaluate(tt, d, "fit4")


def is_success(tt: TruthTable, d: int) -> bool:
    """Bent and homogeneous of degree d, checked structurally."""
    if tt.n % 2:
        raise ValueError(f"bent functions need even n, got {tt.n}")
    return is_bent(tt) and is_homogeneous(anf_of(tt), d)


def is_solution(tt: TruthTable, d: int, kind: str) -> bool:
    """Run-level success: homogeneity alone for ``fit1``, homogeneous bent otherwise."""
    if kind == "fit1":
        return is_homogeneous(anf_of(tt), d)
    return is_success(tt, d)
