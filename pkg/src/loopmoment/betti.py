"""Truncated Z/2 Poincare series of loop spaces.

``Omega(G)`` has one complex cell of dimension k per coset of minimal length
k, so its series is read off the cell counts.  Halving degrees gives the
prediction for the tau-fixed loops when the involution is of maximal rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .affine import enumerate_cells
from .cartan import RootSystem


@dataclass(frozen=True)
class BettiSeries:
    label: str
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a series needs at least the degree-0 coefficient")
        if any(c < 0 for c in coeffs):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, q: int) -> int:
        return self.coefficients[q]

    def to_json(self) -> dict:
        return {"label": self.label, "max_degree": self.max_degree,
                "coeffs": list(self.coefficients)}


def _check_degree(max_degree: int) -> None:
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")


def omega_g_series(rs: RootSystem, max_degree: int) -> BettiSeries:
    _check_degree(max_degree)
    counts = enumerate_cells(rs, max_degree // 2).counts()
    coeffs = [0] * (max_degree + 1)
    for k, c in enumerate(counts):
        coeffs[2 * k] = c
    return BettiSeries(f"omega_g {rs.name}", coeffs)


def _series_mul(a: Sequence[int], b: Sequence[int], n: int) -> list:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _geometric(step: int, n: int) -> list:
    """Coefficients of ``1 / (1 - t^step)`` up to degree n."""
    return [1 if q % step == 0 else 0 for q in range(n + 1)]


def su_closed_form(n: int, max_degree: int) -> BettiSeries:
    """``prod_{k=1}^{n-1} 1/(1 - t^{2k})``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_degree(max_degree)
    out = [1] + [0] * max_degree
    for k in range(1, n):
        out = _series_mul(out, _geometric(2 * k, max_degree), max_degree)
    return BettiSeries(f"closed form SU({n})", out)


def cp_loop_series(n: int, max_degree: int) -> BettiSeries:
    """``(1 + t) / (1 - t^{2n-2})``, the loop space of CP^{n-1}."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_degree(max_degree)
    out = _series_mul([1, 1], _geometric(2 * n - 2, max_degree), max_degree)
    return BettiSeries(f"omega CP^{n - 1}", out)


def halve(s: BettiSeries) -> BettiSeries:
    odd = [q for q in range(1, s.max_degree + 1, 2) if s[q]]
    if odd:
        raise ValueError(f"series {s.label!r} is not halvable: nonzero coefficient at degree {odd[0]}")
    return BettiSeries(f"halved {s.label}", s.coefficients[::2])


@dataclass(frozen=True)
class Comparison:
    max_degree: int
    discrepancy: Optional[Tuple[int, int, int]]  # (degree, a, b)

    @property
    def equal(self) -> bool:
        return self.discrepancy is None

    @property
    def verdict(self) -> str:
        return "equal" if self.equal else f"discrepancy@{self.discrepancy[0]}"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "max_degree": self.max_degree}
        if self.discrepancy:
            q, a, b = self.discrepancy
            out["first_discrepancy"] = {"degree": q, "a": a, "b": b}
        return out


def compare(a: BettiSeries, b: BettiSeries, max_degree: int) -> Comparison:
    _check_degree(max_degree)
    short = [s.label for s in (a, b) if s.max_degree < max_degree]
    if short:
        raise ValueError(f"series {short[0]!r} does not reach degree {max_degree}")
    for q in range(max_degree + 1):
        if a[q] != b[q]:
            return Comparison(max_degree, (q, a[q], b[q]))
    return Comparison(max_degree, None)
