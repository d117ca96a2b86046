"""Exact matrix realizations of su(n), so(m), sp(n) over the Gaussian rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .cartan import RootSystem, build_root_system

# <X, Y> = -KAPPA * tr(XY) puts long roots at squared length 2
KAPPA = {"su": Fraction(1), "so": Fraction(1, 2), "sp": Fraction(1)}


def gauss(re_part=0, im_part=0):
    """A Gaussian rational ``re + im*i`` as an element of ``QQ_I``."""
    a, b = Fraction(re_part), Fraction(im_part)
    return QQ_I(QQ(a.numerator, a.denominator), QQ(b.numerator, b.denominator))


def as_gauss(x):
    if isinstance(x, complex):
        raise TypeError("floating complex numbers are not exact; use gauss(re, im)")
    if hasattr(x, "x") and hasattr(x, "y"):
        return x
    return gauss(x, 0)


def re_im(x) -> Tuple[Fraction, Fraction]:
    return (Fraction(int(x.x.numerator), int(x.x.denominator)),
            Fraction(int(x.y.numerator), int(x.y.denominator)))


def gconj(x):
    return QQ_I(x.x, -x.y)


def gauss_str(x) -> str:
    """``"a/b+c/d i"``."""
    a, b = re_im(x)
    sign = "+" if b >= 0 else "-"
    return f"{a.numerator}/{a.denominator}{sign}{abs(b).numerator}/{abs(b).denominator} i"


_GAUSS_RE = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\s*i\s*$")


def parse_gauss(s: str):
    m = _GAUSS_RE.match(s)
    if m is None:
        return gauss(Fraction(s.strip()), 0)
    im = Fraction(m.group(3))
    return gauss(Fraction(m.group(1)), im if m.group(2) == "+" else -im)


# ---------------------------------------------------------------------------
# matrices


def zeros(n: int) -> DomainMatrix:
    return DomainMatrix.zeros((n, n), QQ_I).to_dense()


def eye(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ_I).to_dense()


def matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [[as_gauss(x) for x in r] for r in rows]
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ_I)


def unit(n: int, i: int, j: int, value=1) -> DomainMatrix:
    """``value * E_ij`` with 0-based indices."""
    rows = [[gauss() for _ in range(n)] for _ in range(n)]
    rows[i][j] = as_gauss(value)
    return DomainMatrix(rows, (n, n), QQ_I)


def diag(entries: Sequence) -> DomainMatrix:
    n = len(entries)
    rows = [[as_gauss(entries[i]) if i == j else gauss() for j in range(n)] for i in range(n)]
    return DomainMatrix(rows, (n, n), QQ_I)


def mconj(m: DomainMatrix) -> DomainMatrix:
    return m.applyfunc(gconj, QQ_I)


def adjoint(m: DomainMatrix) -> DomainMatrix:
    return mconj(m).transpose()


def bracket(x: DomainMatrix, y: DomainMatrix) -> DomainMatrix:
    return x.matmul(y) - y.matmul(x)


def trace(m: DomainMatrix):
    rows = m.to_list()
    out = gauss()
    for i in range(len(rows)):
        out = out + rows[i][i]
    return out


def to_numpy(m: DomainMatrix) -> np.ndarray:
    rows = m.to_list()
    out = np.empty((len(rows), len(rows[0])), dtype=complex)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            a, b = re_im(x)
            out[i, j] = complex(float(a), float(b))
    return out


def matrix_to_json(m: DomainMatrix) -> list:
    return [[gauss_str(x) for x in row] for row in m.to_list()]


def matrix_from_json(rows) -> DomainMatrix:
    return matrix([[parse_gauss(x) if isinstance(x, str) else x for x in r] for r in rows])


# ---------------------------------------------------------------------------
# algebras


def su_basis(n: int) -> List[DomainMatrix]:
    i_ = gauss(0, 1)
    out = [diag([i_ if k == a else (-i_ if k == a + 1 else 0) for k in range(n)])
           for a in range(n - 1)]
    for a in range(n):
        for b in range(a + 1, n):
            out.append(unit(n, a, b) - unit(n, b, a))
            out.append(unit(n, a, b, i_) + unit(n, b, a, i_))
    return out


def so_basis(m: int) -> List[DomainMatrix]:
    return [unit(m, a, b) - unit(m, b, a) for a in range(m) for b in range(a + 1, m)]


def sp_basis(n: int) -> List[DomainMatrix]:
    """Basis of ``sp(n) = {[[A, B], [-conj B, conj A]] : A in u(n), B symmetric}``."""
    i_ = gauss(0, 1)

    def block(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
        top = a.hstack(b)
        bottom = (-mconj(b)).hstack(mconj(a))
        return top.vstack(bottom)

    z = zeros(n)
    out = []
    for k in range(n):
        out.append(block(unit(n, k, k, i_), z))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(block(unit(n, a, b) - unit(n, b, a), z))
            out.append(block(unit(n, a, b, i_) + unit(n, b, a, i_), z))
    for a in range(n):
        for b in range(a, n):
            sym = unit(n, a, b) + unit(n, b, a) if a != b else unit(n, a, a)
            out.append(block(z, sym))
            out.append(block(z, sym.applyfunc(lambda x: x * i_, QQ_I)))
    return out


def algebra_basis(label: str, n: int) -> List[DomainMatrix]:
    if label == "su" and n >= 2:
        return su_basis(n)
    if label == "so" and n >= 2:
        return so_basis(n)
    if label == "sp" and n >= 1:
        return sp_basis(n)
    raise ValueError(f"unsupported algebra {label}({n}); use su(n>=2), so(m>=2), sp(n>=1)")


def in_algebra(label: str, x: DomainMatrix) -> bool:
    """Exact membership test in the compact real form."""
    skew = (x + adjoint(x)).is_zero_matrix
    if label == "su":
        return skew and trace(x) == gauss()
    if label == "so":
        return skew and mconj(x) == x
    if label == "sp":
        n = x.shape[0] // 2
        j = j_matrix(n)
        # X^T J + J X = 0
        return skew and (x.transpose().matmul(j) + j.matmul(x)).is_zero_matrix
    raise ValueError(label)


def j_matrix(n: int) -> DomainMatrix:
    z, i = zeros(n), eye(n)
    return z.hstack(i).vstack((-i).hstack(z))


def trace_form(label: str, x: DomainMatrix, y: DomainMatrix) -> Fraction:
    """``-KAPPA * Re tr(XY)``; the invariant inner product on the compact form."""
    re_part, _ = re_im(trace(x.matmul(y)))
    return -KAPPA[label] * re_part


# ---------------------------------------------------------------------------
# SU(n) loop realization


class SpecialUnitary:
    """SU(n) with its diagonal torus, simple roots ``e_j - e_{j+1}`` and ``alpha_0 = e_1 - e_n``."""

    label = "su"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("SU(n) needs n >= 2")
        self.n = n
        self.rank = n - 1
        self.group_tag = f"SU({n})"

    def root_system(self) -> RootSystem:
        return build_root_system("A", self.rank)

    def coroot_matrices(self) -> List[DomainMatrix]:
        return su_basis(self.n)[: self.rank]

    def coroot_arrays(self) -> np.ndarray:
        return np.array([to_numpy(h) for h in self.coroot_matrices()])

    def root_vector(self, j: int) -> DomainMatrix:
        """``E_{alpha_j}`` for ``j >= 1`` and ``E_{-alpha_0}`` for ``j = 0``."""
        if not 0 <= j <= self.rank:
            raise ValueError(f"root index {j} out of range 0..{self.rank}")
        if j == 0:
            return unit(self.n, self.n - 1, 0)
        return unit(self.n, j - 1, j)

    def diagonal_exponents(self, xi: Sequence[int]) -> Tuple[int, ...]:
        """``sum_j xi_j (e_j - e_{j+1})`` as a diagonal integer vector."""
        if len(xi) != self.rank:
            raise ValueError(f"dimension mismatch: rank is {self.rank}")
        out = [0] * self.n
        for j, c in enumerate(xi):
            out[j] += c
            out[j + 1] -= c
        return tuple(out)

    def __repr__(self) -> str:
        return f"SpecialUnitary({self.n})"
