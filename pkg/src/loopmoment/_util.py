"""Small shared helpers: rational formatting, exact linear algebra, thread caps."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence, Tuple, TypeVar

T = TypeVar("T")
R = TypeVar("R")

Vector = Tuple[Fraction, ...]
LatticeVector = Tuple[int, ...]

NORMALIZATION = "long_root_sq_2"


def frac_str(x) -> str:
    """Render a rational as ``"p/q"`` (always with a denominator)."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s) if not isinstance(s, str) else Fraction(s.strip())


def as_lattice(xi: Iterable, dim: int | None = None) -> LatticeVector:
    """Coerce to an integer tuple, rejecting non-integral entries."""
    out = []
    for c in xi:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError(f"not a lattice vector: entry {c!r} is not an integer")
        out.append(int(f))
    if dim is not None and len(out) != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {len(out)}")
    return tuple(out)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(tuple(r) for r in zip(*m))


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_inverse(m: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    """Exact Gauss-Jordan inverse over the rationals."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def worker_count() -> int:
    """Thread cap from ``LOOPMOMENT_THREADS`` (default 1)."""
    raw = os.environ.get("LOOPMOMENT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Order-preserving map, threaded when ``LOOPMOMENT_THREADS`` > 1."""
    items = list(items)
    workers = worker_count()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
