"""Algebraic loops ``gamma(z) = sum_p z^p A_p`` with Gaussian-rational coefficients.

Root subgroups of the loop group give the Bruhat-cell parametrisation
``(x_1, ..., x_k) -> u_{i_1}(x_1) ... u_{i_k}(x_k) gamma_lambda``.  The loop
involution ``tau(gamma)(z) = sigma(gamma(conj z))`` acts on coefficients
without moving the index ``p`` (``conj z = 1/z`` on the circle), which makes
the cell identity checkable symbolically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from sympy.polys.matrices import DomainMatrix

from . import realization as rz
from ._util import as_lattice, parallel_map
from .cartan import RootSystem
from .involution import LieInvolution, table_involution


class LaurentLoop:
    """Immutable Laurent polynomial loop in ``n x n`` matrices."""

    __slots__ = ("size", "coeffs", "group_tag")

    def __init__(self, size: int, coeffs: Mapping[int, DomainMatrix], group_tag: str = ""):
        clean: Dict[int, DomainMatrix] = {}
        for p, a in coeffs.items():
            if a.shape != (size, size):
                raise ValueError(f"coefficient {p} has shape {a.shape}, expected {(size, size)}")
            if not a.is_zero_matrix:
                clean[int(p)] = a.to_dense()
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "group_tag", group_tag)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentLoop is immutable")

    @property
    def degree(self) -> int:
        return max((abs(p) for p in self.coeffs), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentLoop):
            return NotImplemented
        return self.size == other.size and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.size, tuple(self.coeffs)))

    def __mul__(self, other: "LaurentLoop") -> "LaurentLoop":
        return multiply(self, other)

    def evaluate(self, z: complex) -> np.ndarray:
        out = np.zeros((self.size, self.size), dtype=complex)
        for p, a in self.coeffs.items():
            out += z ** p * rz.to_numpy(a)
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree, "group": self.group_tag,
                "coeffs": {str(p): rz.matrix_to_json(a) for p, a in self.coeffs.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentLoop":
        coeffs = {int(p): rz.matrix_from_json(rows) for p, rows in data["coeffs"].items()}
        size = len(next(iter(data["coeffs"].values()))) if coeffs else 0
        return cls(size, coeffs, data.get("group", ""))

    def __repr__(self) -> str:
        return f"LaurentLoop(size={self.size}, degree={self.degree}, powers={list(self.coeffs)})"


def constant_loop(a: DomainMatrix, group_tag: str = "") -> LaurentLoop:
    return LaurentLoop(a.shape[0], {0: a}, group_tag)


def identity_loop(n: int, group_tag: str = "") -> LaurentLoop:
    return constant_loop(rz.eye(n), group_tag)


def _scale(a: DomainMatrix, c) -> DomainMatrix:
    return a.applyfunc(lambda v: v * c, rz.QQ_I)


def _exp_terms(e: DomainMatrix, x) -> List[DomainMatrix]:
    """``[(xE)^k / k!]`` for k = 0, 1, ... up to the last nonzero term."""
    n = e.shape[0]
    terms = [rz.eye(n)]
    for k in range(1, n + 1):
        nxt = _scale(terms[-1].matmul(e), x / rz.gauss(k))
        if nxt.is_zero_matrix:
            return terms
        terms.append(nxt)
    raise ValueError("root vector is not nilpotent")


def root_subgroup_element(realization, j: int, x) -> LaurentLoop:
    """``exp(x E_{alpha_j})`` for ``j >= 1``; ``z -> exp(z^-1 x E_{-alpha_0})`` for ``j = 0``."""
    if not hasattr(realization, "root_vector"):
        raise ValueError(f"realization {realization!r} has no root vectors")
    x = rz.as_gauss(x)
    e = realization.root_vector(j)
    n = e.shape[0]
    terms = _exp_terms(e, x)
    if j:
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        return LaurentLoop(n, {0: total}, realization.group_tag)
    # exp(z^-1 x E) = sum_k z^-k (xE)^k / k!
    coeffs = {-k: t for k, t in enumerate(terms)}
    return LaurentLoop(n, coeffs, realization.group_tag)


def multiply(a: LaurentLoop, b: LaurentLoop) -> LaurentLoop:
    """Pointwise product, i.e. convolution of coefficients."""
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    if a.group_tag and b.group_tag and a.group_tag != b.group_tag:
        raise ValueError(f"group mismatch: {a.group_tag} vs {b.group_tag}")
    out: Dict[int, DomainMatrix] = {}
    for p, x in a.coeffs.items():
        for q, y in b.coeffs.items():
            prod = x.matmul(y)
            out[p + q] = out[p + q] + prod if p + q in out else prod
    return LaurentLoop(a.size, out, a.group_tag or b.group_tag)


def tau_alg(sigma: LieInvolution, gamma: LaurentLoop) -> LaurentLoop:
    """``tau(gamma)(z) = sigma(gamma(conj z))`` with sigma extended anti-holomorphically."""
    anti = sigma.anti_holomorphic()
    if anti.matrix.shape[0] != gamma.size:
        raise ValueError("involution and loop sizes differ")
    m, minv = anti.matrix, anti.matrix_inverse
    return LaurentLoop(gamma.size,
                       {p: m.matmul(rz.mconj(a)).matmul(minv) for p, a in gamma.coeffs.items()},
                       gamma.group_tag)


def homomorphism_loop(realization, xi: Sequence[int]) -> LaurentLoop:
    """``gamma_xi(z) = diag(z^{m_1}, ..., z^{m_n})`` for a lattice vector xi."""
    xi = as_lattice(xi, realization.rank)
    exps = realization.diagonal_exponents(xi)
    n = len(exps)
    coeffs = {}
    for e in sorted(set(exps)):
        coeffs[e] = rz.diag([1 if m == e else 0 for m in exps])
    return LaurentLoop(n, coeffs, realization.group_tag)


def cell_point(realization, word: Sequence[int], xs: Sequence, xi: Sequence[int]) -> LaurentLoop:
    """``u_{w[0]}(x_0) ... u_{w[-1]}(x_{k-1}) gamma_xi``."""
    if len(word) != len(xs):
        raise ValueError(f"word has length {len(word)} but {len(xs)} coordinates were given")
    out = identity_loop(realization.n, realization.group_tag)
    for j, x in zip(word, xs):
        out = multiply(out, root_subgroup_element(realization, j, x))
    return multiply(out, homomorphism_loop(realization, xi))


@dataclass(frozen=True)
class CellCheck:
    word: Tuple[int, ...]
    xs: Tuple[str, ...]
    xi: Tuple[int, ...]
    holds: bool
    degree: int

    def to_json(self) -> dict:
        return {"word": list(self.word), "xs": list(self.xs), "xi": list(self.xi),
                "holds": self.holds, "degree": self.degree}


def conjugation_cell_check(rs: RootSystem, realization, word: Sequence[int], xs: Sequence,
                           xi: Sequence[int], sigma: LieInvolution | None = None) -> CellCheck:
    """Check ``tau(u(x) ... gamma_xi) == u(conj x) ... gamma_xi`` exactly, as Laurent loops."""
    if rs.rank != realization.rank:
        raise ValueError(f"{rs.name} does not match {realization.group_tag}")
    if any(not 0 <= j <= rs.rank for j in word):
        raise ValueError(f"word {tuple(word)} uses generators outside 0..{rs.rank}")
    xs = [rz.as_gauss(x) for x in xs]
    xi = as_lattice(xi, rs.rank)
    sigma = sigma or table_involution("su", realization.n)
    lhs = tau_alg(sigma, cell_point(realization, word, xs, xi))
    rhs = cell_point(realization, word, [rz.gconj(x) for x in xs], xi)
    return CellCheck(tuple(word), tuple(rz.gauss_str(x) for x in xs), xi, lhs == rhs, lhs.degree)


COORDINATE_GRID = ("0", "1", "-1", "0+1 i", "1/2-2/3 i", "-3+5/7 i")


def coordinate_tuples(k: int, seed: int = 0, n_random: int = 50) -> List[tuple]:
    """Cyclic shifts of :data:`COORDINATE_GRID` followed by seeded random tuples."""
    grid = [rz.parse_gauss(s) for s in COORDINATE_GRID]
    out = [tuple(grid[(j + r) % len(grid)] for j in range(k)) for r in range(len(grid))]
    rng = random.Random(f"{seed}:{k}")

    def draw():
        return rz.gauss(Fraction(rng.randint(-9, 9), rng.randint(1, 6)),
                        Fraction(rng.randint(-9, 9), rng.randint(1, 6)))

    out.extend(tuple(draw() for _ in range(k)) for _ in range(n_random))
    return out if k else [()]


def cell_check_sweep(rs: RootSystem, realization, words: Sequence[Sequence[int]],
                     xis: Sequence[Sequence[int]], seed: int = 0,
                     n_random: int = 50) -> List[CellCheck]:
    """Run :func:`conjugation_cell_check` over words x lattice points x coordinate tuples."""
    sigma = table_involution("su", realization.n)
    jobs = [(w, xs, xi) for w in words for xi in xis
            for xs in coordinate_tuples(len(w), seed, n_random)]
    return parallel_map(lambda job: conjugation_cell_check(rs, realization, *job, sigma=sigma), jobs)
