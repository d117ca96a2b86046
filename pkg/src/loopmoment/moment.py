"""Moment-map images of lattice homomorphisms and the truncated polyhedron.

For ``xi`` in the integral lattice the homomorphism ``theta -> exp(theta xi)``
maps to ``(xi, |xi|^2 / 2)``.  The convex hull of these points is unbounded,
so every polytope here carries an explicit energy cutoff and refuses
membership questions above it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ._util import NORMALIZATION, LatticeVector, as_lattice, frac_str
from .cartan import RootSystem, inner


class TruncationError(ValueError):
    """A query above the energy cutoff; not a membership verdict."""


@dataclass(frozen=True, order=True)
class MomentPoint:
    energy: Fraction
    xi: Tuple[Fraction, ...]

    def __init__(self, xi: Sequence, energy):
        object.__setattr__(self, "xi", tuple(Fraction(c) for c in xi))
        object.__setattr__(self, "energy", Fraction(energy))

    def coords(self) -> Tuple[Fraction, ...]:
        return self.xi + (self.energy,)

    def to_json(self) -> dict:
        xi = [int(c) if c.denominator == 1 else frac_str(c) for c in self.xi]
        return {"xi": xi, "E": frac_str(self.energy)}

    def __repr__(self) -> str:
        return f"MomentPoint(xi={[str(c) for c in self.xi]}, E={self.energy})"


def moment_of_homomorphism(rs: RootSystem, xi: Sequence) -> MomentPoint:
    xi = as_lattice(xi, rs.rank)
    return MomentPoint(xi, inner(rs, xi, xi) / 2)


def lattice_ball(rs: RootSystem, e_max) -> List[LatticeVector]:
    """All lattice xi with ``|xi|^2 / 2 <= e_max``, sorted by (energy, xi)."""
    e_max = Fraction(e_max)
    if e_max < 0:
        raise ValueError("e_max must be >= 0")
    r2 = 2 * e_max
    # |x_i| <= sqrt(r2 * (G^-1)_ii) on the ellipsoid x^T G x <= r2
    bounds = []
    for i in range(rs.rank):
        b2 = r2 * rs.gram_inverse[i][i]
        bounds.append(math.isqrt(b2.numerator // b2.denominator) + 1)
    pts = []
    for xi in itertools.product(*(range(-b, b + 1) for b in bounds)):
        e = inner(rs, xi, xi) / 2
        if e <= e_max:
            pts.append((e, xi))
    pts.sort()
    return [xi for _, xi in pts]


@dataclass(frozen=True)
class MomentPolytope:
    energy_cutoff: Fraction
    vertices: Tuple[MomentPoint, ...]
    root_system: RootSystem
    normalization: str = NORMALIZATION

    def to_json(self) -> dict:
        return {
            "root_system": self.root_system.name,
            "normalization": self.normalization,
            "e_max": frac_str(self.energy_cutoff),
            "vertices": [v.to_json() for v in self.vertices],
        }


def polytope_vertices(rs: RootSystem, e_max) -> MomentPolytope:
    e_max = Fraction(e_max)
    verts = tuple(moment_of_homomorphism(rs, xi) for xi in lattice_ball(rs, e_max))
    return MomentPolytope(e_max, verts, rs)


# ---------------------------------------------------------------------------
# exact feasibility


def convex_combination(points: Sequence[Sequence], target: Sequence) -> Optional[List[Fraction]]:
    """Weights ``lam >= 0``, ``sum lam = 1``, ``sum lam_i p_i = target`` or None.

    Phase-one simplex over the rationals with Bland's rule, so it terminates
    and never rounds.
    """
    n = len(points)
    if n == 0:
        return None
    rows_src = [list(col) for col in zip(*points)] + [[1] * n]
    rhs_src = list(target) + [1]
    m = len(rows_src)
    ncol = n + m
    tab = []
    for r in range(m):
        row = [Fraction(a) for a in rows_src[r]]
        rhs = Fraction(rhs_src[r])
        if rhs < 0:
            row, rhs = [-a for a in row], -rhs
        tab.append(row + [Fraction(int(k == r)) for k in range(m)] + [rhs])
    basis = [n + r for r in range(m)]

    def cost(j: int) -> int:
        return 1 if j >= n else 0

    while True:
        in_basis = set(basis)
        entering = None
        for j in range(ncol):
            if j in in_basis:
                continue
            rc = cost(j) - sum(tab[r][j] * cost(basis[r]) for r in range(m))
            if rc < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        for r in range(m):
            a = tab[r][entering]
            if a > 0:
                ratio = tab[r][-1] / a
                if leave is None or ratio < leave[0] or (ratio == leave[0] and basis[r] < basis[leave[1]]):
                    leave = (ratio, r)
        r0 = leave[1]  # phase one is bounded below, so a leaving row always exists
        p = tab[r0][entering]
        tab[r0] = [x / p for x in tab[r0]]
        for r in range(m):
            if r != r0 and tab[r][entering] != 0:
                f = tab[r][entering]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[r0])]
        basis[r0] = entering

    if any(tab[r][-1] != 0 for r in range(m) if basis[r] >= n):
        return None
    lam = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            lam[basis[r]] = tab[r][-1]
    return lam


def _check_window(poly: MomentPolytope, point: MomentPoint) -> None:
    if len(point.xi) != poly.root_system.rank:
        raise ValueError(f"dimension mismatch: rank is {poly.root_system.rank}")
    if point.energy > poly.energy_cutoff:
        raise TruncationError(
            f"point energy {point.energy} is outside truncation window E <= {poly.energy_cutoff}")


def hull_contains(poly: MomentPolytope, point: MomentPoint) -> bool:
    _check_window(poly, point)
    pts = [v.coords() for v in poly.vertices]
    return convex_combination(pts, point.coords()) is not None


def is_extreme(poly: MomentPolytope, point: MomentPoint) -> bool:
    """True iff ``point`` is not a convex combination of the *other* vertices."""
    _check_window(poly, point)
    target = point.coords()
    others = [v.coords() for v in poly.vertices if v.coords() != target]
    return convex_combination(others, target) is None
