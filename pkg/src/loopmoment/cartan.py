"""Root systems and finite Weyl groups.

Vectors in the Cartan subalgebra ``t`` are written in *coroot coordinates*:
``x = sum_j x[j] * alpha_j^vee``.  For simply connected ``G`` the integral
lattice ``ker(exp)`` is then just ``Z^rank``.  Roots are stored as integer
coefficient tuples over the simple roots; a root ``beta`` evaluates on ``x``
as ``beta(x) = sum_i beta[i] * (C x)[i]`` where ``C`` is the Cartan matrix
with ``C[i][j] = <alpha_i, alpha_j^vee>``.

The invariant inner product is normalised so that long roots have squared
length 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ._util import (NORMALIZATION, LatticeVector, Vector, as_lattice, frac_str,
                    mat_inverse, mat_vec)

VALID_RANKS = "A: rank>=1, B: rank>=2, C: rank>=3, D: rank>=4, E: rank 6/7/8, F: rank 4, G: rank 2"

POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

WEYL_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2 ** n * _factorial(n),
    "C": lambda n: 2 ** n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _valid(type_label: str, rank: int) -> bool:
    return {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(type_label, False)


def _dynkin(type_label: str, n: int):
    """Squared lengths of the simple roots and the bonds (i, j, multiplicity)."""
    two, one = Fraction(2), Fraction(1)
    chain = [(i, i + 1, 1) for i in range(n - 1)]
    if type_label == "A":
        return [two] * n, chain
    if type_label == "B":
        return [two] * (n - 1) + [one], chain[:-1] + [(n - 2, n - 1, 2)]
    if type_label == "C":
        return [one] * (n - 1) + [two], chain[:-1] + [(n - 2, n - 1, 2)]
    if type_label == "D":
        return [two] * n, chain[:-1] + [(n - 3, n - 1, 1)]
    if type_label == "E":
        bonds = [(0, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 6, 1), (6, 7, 1), (1, 3, 1)]
        return [two] * n, [b for b in bonds if b[1] < n]
    if type_label == "F":
        return [two, two, one, one], [(0, 1, 1), (1, 2, 2), (2, 3, 1)]
    if type_label == "G":
        return [Fraction(2, 3), two], [(0, 1, 3)]
    raise AssertionError(type_label)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    root_norms: Tuple[Fraction, ...]
    positive_roots: Tuple[Tuple[int, ...], ...]
    highest_root: Tuple[int, ...]
    _gram_inverse: Tuple[Tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def simple_roots(self) -> Tuple[Vector, ...]:
        """Simple roots as vectors of ``t`` in coroot coordinates."""
        return tuple(self.root_vector(_unit(i, self.rank)) for i in range(self.rank))

    @property
    def coroot_basis(self) -> Tuple[LatticeVector, ...]:
        return tuple(_unit(i, self.rank) for i in range(self.rank))

    @property
    def gram_inverse(self):
        return self._gram_inverse

    def evaluate(self, root: Sequence[int], x: Sequence) -> Fraction:
        """``root(x)`` for a root in simple-root coefficients and x in coroot coordinates."""
        cx = mat_vec(self.cartan_matrix, x)
        return sum((Fraction(n) * c for n, c in zip(root, cx)), Fraction(0))

    def root_vector(self, root: Sequence[int]) -> Vector:
        """A root as a vector of ``t`` (via the inner product), in coroot coordinates."""
        return tuple(Fraction(n) * self.root_norms[i] / 2 for i, n in enumerate(root))

    def root_norm(self, root: Sequence[int]) -> Fraction:
        v = self.root_vector(root)
        return inner(self, v, v)

    def coroot(self, root: Sequence[int]) -> LatticeVector:
        """``beta^vee = 2 beta / <beta, beta>`` in coroot coordinates (always integral)."""
        v = self.root_vector(root)
        nrm = inner(self, v, v)
        return as_lattice(2 * c / nrm for c in v)

    def all_roots(self) -> Tuple[Tuple[int, ...], ...]:
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "rank": self.rank,
            "normalization": NORMALIZATION,
            "cartan": [list(r) for r in self.cartan_matrix],
            "gram": [[frac_str(x) for x in r] for r in self.gram],
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
        }


def _unit(i: int, n: int) -> Tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build the root system of the given Lie type.

    Positive roots come from closing the simple roots under root strings,
    which only needs the Cartan matrix.
    """
    type_label = str(type_label).upper()
    if not isinstance(rank, int) or not _valid(type_label, rank):
        raise ValueError(f"invalid Lie type {type_label}{rank}; valid: {VALID_RANKS}")
    norms, bonds = _dynkin(type_label, rank)
    b = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        b[i][i] = norms[i]
    for i, j, m in bonds:
        b[i][j] = b[j][i] = -Fraction(m, 2) * min(norms[i], norms[j])
    cartan = tuple(tuple(int(2 * b[i][j] / b[j][j]) for j in range(rank)) for i in range(rank))
    gram = tuple(tuple(4 * b[i][j] / (b[i][i] * b[j][j]) for j in range(rank)) for i in range(rank))
    positive = _positive_roots(cartan)
    highest = max(positive, key=lambda r: (sum(r), r))
    return RootSystem(type_label, rank, cartan, gram, tuple(norms), positive, highest,
                      mat_inverse(gram))


def _positive_roots(cartan) -> Tuple[Tuple[int, ...], ...]:
    n = len(cartan)
    simple = [_unit(i, n) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def inner(rs: RootSystem, x: Sequence, y: Sequence) -> Fraction:
    """Invariant inner product of two vectors given in coroot coordinates."""
    if len(x) != rs.rank or len(y) != rs.rank:
        raise ValueError(f"dimension mismatch: rank is {rs.rank}")
    gy = mat_vec(rs.gram, y)
    return sum((Fraction(a) * b for a, b in zip(x, gy)), Fraction(0))


def reflect(rs: RootSystem, i: int, x: Sequence) -> tuple:
    """Simple reflection ``s_i`` (1-based index) acting on ``t``."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    if len(x) != rs.rank:
        raise ValueError(f"dimension mismatch: rank is {rs.rank}")
    k = i - 1
    a = sum(rs.cartan_matrix[k][j] * x[j] for j in range(rs.rank))
    out = list(x)
    out[k] = x[k] - a
    return tuple(out)


def apply_word(rs: RootSystem, word: Sequence[int], x: Sequence) -> tuple:
    """Apply ``s_{w[0]} s_{w[1]} ... s_{w[-1]}`` to x (rightmost factor acts first)."""
    for i in reversed(word):
        x = reflect(rs, i, x)
    return tuple(x)


def is_dominant(rs: RootSystem, x: Sequence) -> bool:
    return all(c >= 0 for c in mat_vec(rs.cartan_matrix, x))


def dominant_representative(rs: RootSystem, xi: Sequence) -> Tuple[tuple, Tuple[int, ...]]:
    """Return ``(xi_dom, w)`` with ``apply_word(rs, w, xi) == xi_dom`` dominant."""
    if len(xi) != rs.rank:
        raise ValueError(f"dimension mismatch: rank is {rs.rank}")
    x = tuple(xi)
    applied: List[int] = []
    while True:
        cx = mat_vec(rs.cartan_matrix, x)
        neg = next((i for i, c in enumerate(cx) if c < 0), None)
        if neg is None:
            return x, tuple(reversed(applied))
        x = reflect(rs, neg + 1, x)
        applied.append(neg + 1)


def weyl_orbit(rs: RootSystem, x: Sequence) -> Tuple[tuple, ...]:
    """The full W-orbit of x by breadth-first search over simple reflections."""
    start = tuple(x)
    seen = {start}
    queue = deque([start])
    while queue:
        y = queue.popleft()
        for i in range(1, rs.rank + 1):
            z = reflect(rs, i, y)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return tuple(sorted(seen))


def regular_dominant(rs: RootSystem) -> Vector:
    """The dominant element with ``alpha_i(x) = 1`` for every simple root."""
    cinv = mat_inverse(rs.cartan_matrix)
    return tuple(sum(row) for row in cinv)


def weyl_group_matrices(rs: RootSystem) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """All elements of W as integer matrices on coroot coordinates.

    Enumerated as the orbit of a regular point, so each element appears once.
    """
    n = rs.rank
    eye = tuple(_unit(i, n) for i in range(n))
    reg = regular_dominant(rs)
    mats: Dict[tuple, tuple] = {reg: eye}
    queue = deque([(reg, eye)])
    while queue:
        p, m = queue.popleft()
        for i in range(1, n + 1):
            q = reflect(rs, i, p)
            if q in mats:
                continue
            # columns of s_i * m
            cols = [reflect(rs, i, col) for col in zip(*m)]
            sm = tuple(zip(*cols))
            mats[q] = sm
            queue.append((q, sm))
    return tuple(sorted(mats.values()))
