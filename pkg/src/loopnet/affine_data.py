"""Exact representation-theoretic data: alcoves, central charge, conformal weights.

Everything here is rational arithmetic over explicit type-A root data.  The
central charge c = l*dim/(l+g) and the conformal weight h = C/(2(l+g)) with
C = <lambda, lambda + 2 rho> are exact Fractions; tests against the truncated
fermionic model compare them to floating spectra at 1e-10.

Two conventions for the quadratic Casimir circulate: the bare norm
<lambda, lambda> and the dressed eigenvalue <lambda, lambda + 2 rho>.
Conformal weights require the dressed value (the su(2) level-1 spin-1/2
module has h = 1/4, which the fermionic model confirms); the closed-form
alcove bound l^2/(4 m^2 (l+g)) controls the bare part only, and
``alcove_bounds`` checks it against that quantity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import UnsupportedAlgebraError
from .lie import CompactSimpleAlgebra, SimpleTypeRecord

__all__ = [
    "LevelData",
    "AlcoveWeight",
    "level_data",
    "alcove",
    "conformal_weight",
    "alcove_bounds",
    "AlcoveBoundsReport",
]


@dataclass(frozen=True)
class LevelData:
    """Level, dual Coxeter number and exact central charge of one algebra."""

    family: str
    rank: int
    level: int
    dimension: int
    dual_coxeter: int
    central_charge: Fraction


def _dims(algebra) -> tuple[str, int, int, int]:
    """(family, rank, dimension, dual Coxeter) for either algebra model."""
    if isinstance(algebra, CompactSimpleAlgebra):
        return "A", algebra.n - 1, algebra.dimension, algebra.dual_coxeter
    if isinstance(algebra, SimpleTypeRecord):
        return algebra.family, algebra.rank, algebra.complex_dimension, algebra.dual_coxeter
    raise TypeError(f"expected an algebra or a table record, got {type(algebra)}")


def level_data(algebra, level: int) -> LevelData:
    """Exact central charge c = l*dim/(l+g) for the given level."""
    if level < 1:
        raise ValueError(f"level must be a positive integer, got {level}")
    family, rank, dim, g = _dims(algebra)
    return LevelData(family, rank, level, dim, g,
                     Fraction(level * dim, level + g))


# ---------------------------------------------------------------------------
# Type-A root data, exact
# ---------------------------------------------------------------------------

class _TypeARoots:
    """Gram data of A_{n-1} fundamental weights in the theta^2 = 2 normalization."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("type A needs n >= 2")
        self.n = n
        self.rank = n - 1
        r = self.rank
        self.gram = [[Fraction(min(i, j) * n - i * j, n)
                      for j in range(1, r + 1)] for i in range(1, r + 1)]
        # highest root in fundamental-weight coordinates
        if r == 1:
            self.theta = (2,)
        else:
            self.theta = tuple(1 if i in (0, r - 1) else 0 for i in range(r))
        self.rho = tuple(1 for _ in range(r))

    def pair(self, a: tuple[int, ...], b: tuple[int, ...]) -> Fraction:
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    total += ai * bj * self.gram[i][j]
        return total


def _roots_for(algebra) -> _TypeARoots:
    family, rank, _, _ = _dims(algebra)
    if family != "A":
        raise UnsupportedAlgebraError(
            f"explicit root data only available for type A, got {family}_{rank}")
    return _TypeARoots(rank + 1)


@dataclass(frozen=True)
class AlcoveWeight:
    """Dominant integral weight within the level alcove, with exact invariants."""

    weight: tuple[int, ...]
    casimir: Fraction          # <lambda, lambda + 2 rho>
    conformal_weight: Fraction
    theta_pairing: Fraction    # <lambda, theta>


def alcove(algebra, level: int) -> list[AlcoveWeight]:
    """All dominant integral weights with <lambda, theta> <= level, sorted.

    The pairing is evaluated through the exact Gram matrix of the fundamental
    weights, not through any closed-form shortcut, so an independent
    enumerator can cross-check the counts.
    """
    if level < 1:
        raise ValueError(f"level must be a positive integer, got {level}")
    roots = _roots_for(algebra)
    data = level_data(algebra, level)
    denom = 2 * (level + data.dual_coxeter)
    out = []
    for coords in itertools.product(range(level + 1), repeat=roots.rank):
        pairing = roots.pair(coords, roots.theta)
        if pairing <= level:
            cas = roots.pair(coords, coords) + 2 * roots.pair(coords, roots.rho)
            out.append(AlcoveWeight(coords, cas, cas / denom, pairing))
    out.sort(key=lambda w: w.weight)
    return out


def conformal_weight(weight: tuple[int, ...], data: LevelData) -> Fraction:
    """Exact h = <lambda, lambda + 2 rho> / (2(l+g)) for an alcove weight."""
    if data.family != "A":
        raise UnsupportedAlgebraError("conformal weights need type-A root data")
    roots = _TypeARoots(data.rank + 1)
    coords = tuple(int(a) for a in weight)
    if len(coords) != roots.rank or any(a < 0 for a in coords):
        raise ValueError(f"not a dominant integral weight: {weight}")
    if roots.pair(coords, roots.theta) > data.level:
        raise ValueError(f"weight {weight} lies outside the level-{data.level} alcove")
    cas = roots.pair(coords, coords) + 2 * roots.pair(coords, roots.rho)
    return cas / (2 * (data.level + data.dual_coxeter))


@dataclass(frozen=True)
class AlcoveBoundsReport:
    central_charge: Fraction
    c_ge_1: bool
    m: float | None               # min_i cos(angle(theta, omega_i)), type A only
    h_max_bound: float | None     # l^2 / (4 m^2 (l+g))
    max_bare_h: float | None      # max over the alcove of <l,l>/(2(l+g))
    max_dressed_h: Fraction | None
    all_within_bound: bool | None


def alcove_bounds(algebra, level: int) -> AlcoveBoundsReport:
    """Central-charge and conformal-weight bounds for one algebra and level.

    c >= 1 is checked for any family.  For type A the constant
    m = min_i cos(angle(theta, omega_i)) is computed numerically from the
    fundamental weights and every alcove weight is checked against
    bare_h := <lambda, lambda>/(2(l+g)) <= l^2/(4 m^2 (l+g)); the dressed
    maximum is reported alongside for reference.
    """
    data = level_data(algebra, level)
    c_ok = data.central_charge >= 1
    try:
        roots = _roots_for(algebra)
    except UnsupportedAlgebraError:
        return AlcoveBoundsReport(data.central_charge, c_ok, None, None, None,
                                 None, None)
    r = roots.rank
    gram = np.array([[float(roots.gram[i][j]) for j in range(r)] for i in range(r)])
    theta = np.array([float(t) for t in roots.theta])
    m = math.inf
    for i in range(r):
        e = np.zeros(r)
        e[i] = 1.0
        cos = (e @ gram @ theta) / math.sqrt((e @ gram @ e) * (theta @ gram @ theta))
        m = min(m, cos)
    denom = 2 * (level + data.dual_coxeter)
    bound = level ** 2 / (4 * m * m * (level + data.dual_coxeter))
    weights = alcove(algebra, level)
    bare = [float((roots.pair(w.weight, w.weight)) / denom) for w in weights]
    dressed = max(w.conformal_weight for w in weights)
    ok = all(b <= bound + 1e-12 for b in bare)
    return AlcoveBoundsReport(data.central_charge, c_ok, float(m), float(bound),
                             max(bare), dressed, ok)
