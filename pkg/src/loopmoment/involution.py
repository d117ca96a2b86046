"""Involutions of compact classical Lie algebras and their lattice shadows.

A :class:`LieInvolution` is the recipe ``theta(X) = M * X * M^-1`` optionally
preceded by entrywise complex conjugation.  Restricting ``theta`` to an
integral basis of a ``theta``-stable Cartan subalgebra gives an integer
:class:`LatticeInvolution` ``iota``; maximal rank means ``iota = -id``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy.polys.matrices import DomainMatrix

from . import realization as rz
from ._util import (NORMALIZATION, LatticeVector, frac_str, identity, mat_inverse,
                    mat_mul, mat_vec, transpose)
from .cartan import RootSystem
from .moment import MomentPoint, is_extreme, lattice_ball, moment_of_homomorphism, polytope_vertices

# Equality of the two images also uses convexity of the fixed-point image,
# which is taken as given here rather than recomputed.
CONVEXITY_ASSUMPTION = (
    "image of the tau-fixed loops is convex (isoparametric convexity); only vertex "
    "attainment by tau-fixed homomorphisms is checked")


@dataclass(frozen=True, eq=False)
class LieInvolution:
    algebra: str
    n: int
    conjugate: bool
    matrix: DomainMatrix
    adapted_torus: Tuple[DomainMatrix, ...]
    name: str = ""

    @property
    def label(self) -> str:
        return f"{self.algebra}({self.n})"

    @property
    def matrix_inverse(self) -> DomainMatrix:
        return self.matrix.inv().to_dense()

    def apply(self, x: DomainMatrix) -> DomainMatrix:
        y = rz.mconj(x) if self.conjugate else x
        return self.matrix.matmul(y).matmul(self.matrix_inverse)

    def anti_holomorphic(self) -> "LieInvolution":
        """The same involution written as ``g -> M' conj(g) M'^-1`` on the complexification.

        For a holomorphic recipe on so(m) or sp(n) the complex group preserves a
        bilinear form, so ``-X^*`` can be rewritten via entrywise conjugation.  On
        su(n) there is no such rewriting.
        """
        if self.conjugate:
            return self
        if self.algebra == "so":
            return LieInvolution(self.algebra, self.n, True, self.matrix, self.adapted_torus,
                                 self.name)
        if self.algebra == "sp":
            m = self.matrix.matmul(rz.j_matrix(self.n))
            return LieInvolution(self.algebra, self.n, True, m, self.adapted_torus, self.name)
        raise ValueError(
            f"{self.label} recipe conj_by(M) has no anti-holomorphic form M' conj(g) M'^-1")

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "n": self.n, "conjugate": self.conjugate,
                "matrix": rz.matrix_to_json(self.matrix), "name": self.name}


def table_involution(algebra: str, n: int) -> LieInvolution:
    """The maximal-rank involution of su(n), so(n) or sp(n) with its inverted torus."""
    i_ = rz.gauss(0, 1)
    if algebra == "su":
        if n < 2:
            raise ValueError("su(n) needs n >= 2")
        torus = tuple(rz.su_basis(n)[: n - 1])
        return LieInvolution("su", n, True, rz.eye(n), torus, "complex conjugation")
    if algebra == "so":
        if n < 2:
            raise ValueError("so(m) needs m >= 2")
        p, q = (n + 1) // 2, n // 2
        m = rz.diag([-1] * p + [1] * q)
        torus = tuple(rz.unit(n, k, p + k) - rz.unit(n, p + k, k) for k in range(q))
        return LieInvolution("so", n, False, m, torus, f"conjugation by I_{{{p},{q}}}")
    if algebra == "sp":
        if n < 1:
            raise ValueError("sp(n) needs n >= 1")
        torus = tuple(rz.diag([i_ if k == a else (-i_ if k == n + a else 0) for k in range(2 * n)])
                      for a in range(n))
        return LieInvolution("sp", n, False, rz.j_matrix(n), torus, f"conjugation by J_{n}")
    raise ValueError(f"unknown algebra {algebra!r}; expected su, so or sp")


def cp_involution(n: int) -> LieInvolution:
    """Conjugation by ``I_{1,n-1}`` on su(n) (fixed group S(U(1) x U(n-1))).

    The adapted torus contains the rotation ``X1 = E12 - E21`` (inverted) and
    the theta-fixed diagonal matrices of the form ``i diag(a, a, b3, ...)``.
    The listed basis is the coroot basis of that torus: it is the image of the
    diagonal coroot basis under the unitary that rotates ``diag(i, -i)`` onto
    ``X1`` in the first 2x2 block.
    """
    if n < 2:
        raise ValueError("CP^{n-1} needs n >= 2")
    i_ = rz.gauss(0, 1)
    half = Fraction(1, 2)
    x1 = rz.unit(n, 0, 1) - rz.unit(n, 1, 0)
    basis = [x1]
    if n >= 3:
        d = rz.diag([i_ * rz.gauss(half), i_ * rz.gauss(half)] + [0] * (n - 2))
        y = d - x1.applyfunc(lambda v: v * rz.gauss(half), rz.QQ_I) - rz.unit(n, 2, 2, i_)
        basis.append(y)
        basis.extend(rz.su_basis(n)[2: n - 1])
    m = rz.diag([-1] + [1] * (n - 1))
    return LieInvolution("su", n, False, m, tuple(basis), f"conjugation by I_{{1,{n - 1}}}")


# ---------------------------------------------------------------------------
# exact checks on the Lie algebra


@dataclass(frozen=True)
class InvolutionCheck:
    label: str
    name: str
    ok: bool
    failures: Tuple[str, ...]
    basis_size: int
    bracket_pairs: int
    torus_rank: int

    def to_json(self) -> dict:
        return {"algebra": self.label, "involution": self.name, "ok": self.ok,
                "failures": list(self.failures), "basis_size": self.basis_size,
                "bracket_pairs": self.bracket_pairs, "torus_rank": self.torus_rank}


def check_lie_involution(inv: LieInvolution, minus_block: Optional[Sequence[int]] = None
                         ) -> InvolutionCheck:
    """Exactly verify theta^2 = id, theta(g) in g, bracket preservation and -id on the torus.

    ``minus_block`` selects which adapted-torus vectors must be inverted
    (default: all of them).
    """
    basis = rz.algebra_basis(inv.algebra, inv.n)
    images = [inv.apply(x) for x in basis]
    failures: List[str] = []
    for k, (x, tx) in enumerate(zip(basis, images)):
        if not rz.in_algebra(inv.algebra, tx):
            failures.append(f"theta(basis[{k}]) leaves {inv.label}")
        if inv.apply(tx) != x:
            failures.append(f"theta^2 != id on basis[{k}]")
    pairs = 0
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            pairs += 1
            lhs = inv.apply(rz.bracket(basis[a], basis[b]))
            if lhs != rz.bracket(images[a], images[b]):
                failures.append(f"theta[X{a},X{b}] != [theta X{a}, theta X{b}]")
    block = range(len(inv.adapted_torus)) if minus_block is None else minus_block
    for k in block:
        h = inv.adapted_torus[k]
        if not rz.in_algebra(inv.algebra, h):
            failures.append(f"adapted torus vector {k} is not in {inv.label}")
        if inv.apply(h) != -h:
            failures.append(f"theta != -id on adapted torus vector {k}")
    torus = inv.adapted_torus
    for a in range(len(torus)):
        for b in range(a + 1, len(torus)):
            if not rz.bracket(torus[a], torus[b]).is_zero_matrix:
                failures.append(f"adapted torus vectors {a},{b} do not commute")
    return InvolutionCheck(inv.label, inv.name, not failures, tuple(failures), len(basis),
                           pairs, len(torus))


# ---------------------------------------------------------------------------
# lattice involutions


@dataclass(frozen=True)
class LatticeInvolution:
    matrix: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    minus_one_subspace: Tuple[Tuple[int, ...], ...]
    provenance: str

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def apply(self, xi: Sequence) -> tuple:
        return mat_vec(self.matrix, xi)

    def is_maximal_rank(self) -> bool:
        return self.matrix == tuple(tuple(-x for x in row) for row in identity(self.rank))

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix],
                "minus_one_subspace": [list(v) for v in self.minus_one_subspace],
                "provenance": self.provenance}


def _minus_one_basis(m) -> Tuple[Tuple[int, ...], ...]:
    n = len(m)
    a = sympy.Matrix([[m[i][j] + int(i == j) for j in range(n)] for i in range(n)])
    out = []
    for v in a.nullspace():
        fr = [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v]
        den = math.lcm(*(f.denominator for f in fr))
        w = [int(f * den) for f in fr]
        g = math.gcd(*w)
        w = [x // g for x in w]
        if next(x for x in w if x) < 0:
            w = [-x for x in w]
        out.append(tuple(w))
    return tuple(sorted(out))


def make_lattice_involution(matrix, gram, provenance: str) -> LatticeInvolution:
    """Validate integrality, ``iota^2 = id`` and the isometry ``iota^T G iota = G``."""
    m = tuple(tuple(int(Fraction(x)) if Fraction(x).denominator == 1 else None for x in row)
              for row in matrix)
    for c in range(len(m)):
        if any(m[r][c] is None for r in range(len(m))):
            raise ValueError(f"lattice involution is not integral in column {c}")
    n = len(m)
    if any(len(r) != n for r in m) or len(gram) != n:
        raise ValueError("lattice involution must be square and match the Gram matrix")
    if mat_mul(m, m) != identity(n):
        raise ValueError("lattice involution does not square to the identity")
    if mat_mul(transpose(m), mat_mul(gram, m)) != tuple(tuple(r) for r in gram):
        raise ValueError("lattice involution is not an isometry of the Gram form")
    return LatticeInvolution(m, tuple(tuple(Fraction(x) for x in r) for r in gram),
                             _minus_one_basis(m), provenance)


def induced_lattice_involution(inv: LieInvolution, rs: Optional[RootSystem],
                               torus_basis: Sequence[DomainMatrix]) -> LatticeInvolution:
    """Matrix of theta on an integral torus basis.

    The isometry check uses the trace-form Gram matrix of ``torus_basis``.  If
    ``rs`` is given, that Gram matrix must equal ``rs.gram``, i.e. the basis is
    a coroot basis and the result acts on coroot coordinates.
    """
    basis = list(torus_basis)
    k = len(basis)
    gram = tuple(tuple(rz.trace_form(inv.algebra, a, b) for b in basis) for a in basis)
    ginv = mat_inverse(gram)
    cols = []
    for j, h in enumerate(basis):
        th = inv.apply(h)
        b = [rz.trace_form(inv.algebra, a, th) for a in basis]
        c = mat_vec(ginv, b)
        recon = rz.zeros(h.shape[0])
        for coeff, a in zip(c, basis):
            recon = recon + a.applyfunc(lambda v, f=coeff: v * rz.gauss(f), rz.QQ_I)
        if recon != th:
            raise ValueError(f"theta does not preserve the torus span (basis vector {j})")
        if any(x.denominator != 1 for x in c):
            raise ValueError(f"theta is not integral on the torus basis: column {j} = "
                             f"{[str(x) for x in c]}")
        cols.append([int(x) for x in c])
    matrix = tuple(tuple(cols[c][r] for c in range(k)) for r in range(k))
    prov = f"induced from {inv.label} {inv.name}"
    if rs is not None:
        if gram != rs.gram:
            raise ValueError(f"torus basis is not a coroot basis of {rs.name}: Gram "
                             f"{[[str(x) for x in r] for r in gram]}")
        prov += f" on the coroot basis of {rs.name}"
    return make_lattice_involution(matrix, gram, prov)


def maximal_rank_involution(rs: RootSystem) -> LatticeInvolution:
    minus = tuple(tuple(-x for x in row) for row in identity(rs.rank))
    return make_lattice_involution(minus, rs.gram, "maximal_rank preset (iota = -id)")


def su_n_cp_involution(rs: RootSystem) -> LatticeInvolution:
    """``S(U(1) x U(n-1))`` in ``SU(n)``, derived from :func:`cp_involution`."""
    if rs.type_label != "A":
        raise ValueError("su_n_cp preset needs a type A root system")
    inv = cp_involution(rs.rank + 1)
    lat = induced_lattice_involution(inv, rs, inv.adapted_torus)
    return LatticeInvolution(lat.matrix, lat.gram, lat.minus_one_subspace,
                             f"su_n_cp preset ({lat.provenance})")


PRESETS = {"maximal_rank": maximal_rank_involution, "su_n_cp": su_n_cp_involution}


def lattice_involution_preset(name: str, rs: RootSystem) -> LatticeInvolution:
    try:
        return PRESETS[name](rs)
    except KeyError:
        raise ValueError(f"unknown involution preset {name!r}; choose from {sorted(PRESETS)}")


def lattice_involution_from_json(data, rs: RootSystem) -> LatticeInvolution:
    """Load ``{"matrix": [[...]]}`` (or a bare matrix) and validate it against ``rs``."""
    if isinstance(data, str):
        data = json.loads(data)
    mat = data["matrix"] if isinstance(data, dict) else data
    if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
        raise ValueError("involution matrix must be a list of rows")
    if len(mat) != rs.rank:
        raise ValueError(f"involution matrix must be {rs.rank}x{rs.rank}")
    return make_lattice_involution(mat, rs.gram, "user matrix")


# ---------------------------------------------------------------------------
# convexity verdicts


def _check_gram(rs: RootSystem, iota: LatticeInvolution) -> None:
    if iota.gram != rs.gram:
        raise ValueError(f"lattice involution is not expressed in the coroot basis of {rs.name}")


def fixed_homomorphisms(rs: RootSystem, iota: LatticeInvolution, e_max) -> List[LatticeVector]:
    """Lattice xi with ``iota(xi) = -xi`` and energy <= e_max, sorted by (energy, xi)."""
    _check_gram(rs, iota)
    return [xi for xi in lattice_ball(rs, e_max)
            if iota.apply(xi) == tuple(-c for c in xi)]


@dataclass(frozen=True)
class ConvexityReport:
    verdict: str
    cutoff: Fraction
    fixed_vertices: Tuple[MomentPoint, ...]
    all_vertices: Tuple[MomentPoint, ...]
    witness: Optional[LatticeVector] = None
    witness_extreme: Optional[bool] = None
    assumption: str = CONVEXITY_ASSUMPTION
    normalization: str = field(default=NORMALIZATION)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "cutoff": frac_str(self.cutoff),
            "normalization": self.normalization,
            "n_vertices": len(self.all_vertices),
            "n_fixed_vertices": len(self.fixed_vertices),
            "witness": list(self.witness) if self.witness is not None else None,
            "witness_extreme": self.witness_extreme,
            "assumption": self.assumption,
        }


def verify_convexity(rs: RootSystem, iota: LatticeInvolution, e_max) -> ConvexityReport:
    """Compare moment points of tau-fixed homomorphisms with all polytope vertices.

    A missing vertex is a strict-containment witness: points on the paraboloid
    ``E = |p|^2 / 2`` are only reached by homomorphisms, so no tau-fixed loop can
    reach the witness.
    """
    poly = polytope_vertices(rs, e_max)
    fixed = fixed_homomorphisms(rs, iota, e_max)
    fixed_pts = tuple(moment_of_homomorphism(rs, xi) for xi in fixed)
    fixed_set = set(fixed_pts)
    all_set = set(poly.vertices)
    if not fixed_set <= all_set:  # pragma: no cover - both come from the same lattice ball
        raise AssertionError("fixed vertex outside the polytope vertex set")
    if fixed_set == all_set:
        return ConvexityReport("equal", poly.energy_cutoff, fixed_pts, poly.vertices)
    # vertices are sorted by (energy, xi): the first missing one is the witness
    for xi in lattice_ball(rs, e_max):
        if moment_of_homomorphism(rs, xi) not in fixed_set:
            witness = xi
            break
    extreme = is_extreme(poly, moment_of_homomorphism(rs, witness))
    return ConvexityReport("strict", poly.energy_cutoff, fixed_pts, poly.vertices, witness,
                           extreme)
