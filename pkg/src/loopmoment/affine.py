"""Affine Weyl group ``W~ = W x| I`` and Bruhat-cell combinatorics.

The coset ``t_xi W`` of ``W~/W`` is identified with the lattice point
``xi = w~(0)``.  Left multiplication by a generator ``s_j`` moves cosets by
the affine action on ``I``, and by Deodhar's lemma the minimal coset length
changes by exactly one whenever the coset moves.  So minimal coset lengths
are graph distances from 0 under ``s_0, ..., s_l`` acting on the lattice.
That BFS is the production path; :func:`coset_length_oracle` recounts
separating affine mirrors as an independent check.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ._util import LatticeVector, as_lattice, mat_inverse, mat_vec
from .cartan import RootSystem, reflect, weyl_group_matrices

Word = Tuple[int, ...]


def apply_affine_generator(rs: RootSystem, i: int, x: Sequence) -> tuple:
    """``s_i`` for ``i >= 1``; for ``i = 0`` the reflection in ``{alpha_0(x) = 1}``."""
    if not 0 <= i <= rs.rank:
        raise ValueError(f"generator index {i} out of range 0..{rs.rank}")
    if i:
        return reflect(rs, i, x)
    if len(x) != rs.rank:
        raise ValueError(f"dimension mismatch: rank is {rs.rank}")
    a = rs.evaluate(rs.highest_root, x) - 1
    co = rs.coroot(rs.highest_root)
    return tuple(_norm(c - a * v) for c, v in zip(x, co))


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def apply_affine_word(rs: RootSystem, word: Sequence[int], x: Sequence) -> tuple:
    """Apply ``s_{w[0]} ... s_{w[-1]}`` (rightmost acts first)."""
    for i in reversed(word):
        x = apply_affine_generator(rs, i, x)
    return tuple(x)


# ---------------------------------------------------------------------------
# coset lengths by BFS


class _CosetBFS:
    """Incremental BFS over the lattice, shared per root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        zero = (0,) * rs.rank
        self.length: Dict[LatticeVector, int] = {zero: 0}
        self.shells: List[List[LatticeVector]] = [[zero]]
        self.lock = threading.Lock()

    def grow_to(self, depth: int) -> None:
        with self.lock:
            while len(self.shells) <= depth:
                k = len(self.shells)
                new = set()
                for xi in self.shells[-1]:
                    for j in range(self.rs.rank + 1):
                        nb = apply_affine_generator(self.rs, j, xi)
                        if nb not in self.length:
                            new.add(nb)
                for nb in new:
                    self.length[nb] = k
                self.shells.append(sorted(new))

    def find(self, xi: LatticeVector) -> int:
        depth = len(self.shells) - 1
        while xi not in self.length:
            depth += 1
            self.grow_to(depth)
        return self.length[xi]


_BFS_CACHE: Dict[Tuple[str, int], _CosetBFS] = {}
_CACHE_LOCK = threading.Lock()


def _bfs(rs: RootSystem) -> _CosetBFS:
    key = (rs.type_label, rs.rank)
    with _CACHE_LOCK:
        if key not in _BFS_CACHE:
            _BFS_CACHE[key] = _CosetBFS(rs)
        return _BFS_CACHE[key]


def minimal_coset_length(rs: RootSystem, xi: Sequence) -> int:
    """Length of the minimal representative of ``t_xi W`` (= complex cell dimension)."""
    return _bfs(rs).find(as_lattice(xi, rs.rank))


def reduced_word(rs: RootSystem, xi: Sequence) -> Word:
    """Lexicographically least reduced word of the minimal representative of ``t_xi W``.

    The product ``s_{w[0]} ... s_{w[-1]}`` maps 0 to ``xi``.
    """
    bfs = _bfs(rs)
    cur = as_lattice(xi, rs.rank)
    k = bfs.find(cur)
    word = []
    while k:
        for j in range(rs.rank + 1):
            nb = apply_affine_generator(rs, j, cur)
            if bfs.length.get(nb) == k - 1:
                word.append(j)
                cur, k = nb, k - 1
                break
        else:  # pragma: no cover - would contradict Deodhar's lemma
            raise RuntimeError(f"no descent found at {cur}")
    return tuple(word)


@dataclass(frozen=True)
class CellTable:
    max_length: int
    entries: Dict[int, Tuple[LatticeVector, ...]]

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(self.entries.get(k, ())) for k in range(self.max_length + 1))

    def to_json(self) -> dict:
        return {
            "max_length": self.max_length,
            "cells": {str(k): [list(v) for v in self.entries[k]]
                      for k in range(self.max_length + 1)},
        }


def enumerate_cells(rs: RootSystem, max_length: int) -> CellTable:
    """All cosets ``t_xi W`` with minimal length <= max_length, grouped by length."""
    if max_length < 0:
        raise ValueError("max_length must be >= 0")
    bfs = _bfs(rs)
    bfs.grow_to(max_length)
    return CellTable(max_length, {k: tuple(bfs.shells[k]) for k in range(max_length + 1)})


# ---------------------------------------------------------------------------
# affine elements and the hyperplane-counting oracle


@dataclass(frozen=True)
class AffineElement:
    """``x -> finite_part @ x + translation_part``, i.e. ``t_translation * w``."""

    word: Word
    translation_part: LatticeVector
    finite_part: Tuple[Tuple[int, ...], ...]
    length: int


def _generator_map(rs: RootSystem, i: int):
    n = rs.rank
    cols = [apply_affine_generator(rs, i, tuple(int(k == c) for k in range(n)))
            for c in range(n)]
    shift = apply_affine_generator(rs, i, (0,) * n)
    # affine map: columns include the shift for i = 0; remove it
    cols = [tuple(a - b for a, b in zip(col, shift)) for col in cols]
    return tuple(zip(*cols)), tuple(shift)


def evaluate_word(rs: RootSystem, word: Sequence[int]) -> AffineElement:
    n = rs.rank
    m = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    v = (0,) * n
    for i in word:
        gm, gv = _generator_map(rs, i)
        # (m, v) o (gm, gv): x -> m(gm x + gv) + v
        v = tuple(a + b for a, b in zip(mat_vec(m, gv), v))
        m = tuple(tuple(sum(m[r][k] * gm[k][c] for k in range(n)) for c in range(n))
                  for r in range(n))
    m = tuple(tuple(int(x) for x in row) for row in m)
    v = as_lattice(v)
    return AffineElement(tuple(word), v, m, hyperplane_length(rs, m, v))


def alcove_barycenter(rs: RootSystem) -> Tuple[Fraction, ...]:
    """Barycenter of the fundamental alcove ``{alpha_i > 0, alpha_0 < 1}``."""
    n = rs.rank
    cinv = mat_inverse(rs.cartan_matrix)
    verts = [(Fraction(0),) * n]
    for i in range(n):
        w = tuple(cinv[r][i] for r in range(n))  # fundamental coweight
        verts.append(tuple(c / rs.highest_root[i] for c in w))
    return tuple(sum(v[k] for v in verts) / (n + 1) for k in range(n))


def _count_mirrors(rs: RootSystem, y: Sequence[Fraction]) -> int:
    # barycenter b has 0 < beta(b) < 1, so mirrors {beta = k} between b and y number |floor(beta(y))|
    return sum(abs(math.floor(rs.evaluate(beta, y))) for beta in rs.positive_roots)


def hyperplane_length(rs: RootSystem, finite_part, translation_part) -> int:
    """Number of affine mirrors separating the base alcove from its image."""
    b = alcove_barycenter(rs)
    y = tuple(a + t for a, t in zip(mat_vec(finite_part, b), translation_part))
    return _count_mirrors(rs, y)


def coset_length_oracle(rs: RootSystem, xi: Sequence, weyl=None) -> int:
    """Minimal coset length by mirror counting over all ``t_xi w``, w in W."""
    xi = as_lattice(xi, rs.rank)
    weyl = weyl if weyl is not None else weyl_group_matrices(rs)
    b = alcove_barycenter(rs)
    best = None
    for w in weyl:
        y = tuple(a + t for a, t in zip(mat_vec(w, b), xi))
        c = _count_mirrors(rs, y)
        if best is None or c < best:
            best = c
    return best


def enumerate_reduced_words(rs: RootSystem, max_length: int) -> Tuple[Word, ...]:
    """Every reduced word over ``{0..l}`` of length <= max_length, in shortlex order."""
    b = alcove_barycenter(rs)
    words: List[Word] = [()]
    frontier: List[Word] = [()]
    for k in range(1, max_length + 1):
        nxt = []
        for word in frontier:
            for i in range(rs.rank + 1):
                ext = word + (i,)
                if _count_mirrors(rs, apply_affine_word(rs, ext, b)) == k:
                    nxt.append(ext)
        frontier = nxt
        words.extend(nxt)
    return tuple(words)
