"""Loops sampled on the grid ``theta_j = 2 pi j / N``.

The moment map is ``(p, E)``: the mean torus component of ``gamma^-1 gamma'``
and the energy ``(1/4pi) int |gamma^-1 gamma'|^2``.  Derivatives are spectral
by default.  Rotations are restricted to grid multiples so that the
``T x S^1`` action and ``tau`` are pure index arithmetic on samples.
"""

from __future__ import annotations

import csv
import numbers
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, TextIO

import numpy as np

from ._util import as_lattice, parallel_map
from .cartan import RootSystem
from .involution import LieInvolution
from .realization import KAPPA, to_numpy

BASED_TOL = 1e-10


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True, eq=False)
class DiscretizedLoop:
    samples: np.ndarray
    group_tag: str = ""
    kappa: float = 1.0

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.ndim != 3 or s.shape[1] != s.shape[2]:
            raise ValueError(f"samples must have shape (N, n, n), got {s.shape}")
        if s.shape[0] < 4 or not _is_power_of_two(s.shape[0]):
            raise ValueError(f"N must be a power of two >= 4, got {s.shape[0]}")
        eye = np.eye(s.shape[1])
        if np.abs(s[0] - eye).max() > BASED_TOL:
            raise ValueError("loop is not based: gamma(0) != identity")
        gram = np.einsum("jki,jkl->jil", s.conj(), s)
        if np.abs(gram - eye).max() > BASED_TOL:
            raise ValueError("samples are not unitary")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def size(self) -> int:
        return self.samples.shape[1]

    def _like(self, samples: np.ndarray) -> "DiscretizedLoop":
        return DiscretizedLoop(samples, self.group_tag, self.kappa)


def constant_loop(n: int, N: int, group_tag: str = "", kappa: float = 1.0) -> DiscretizedLoop:
    return DiscretizedLoop(np.broadcast_to(np.eye(n, dtype=complex), (N, n, n)), group_tag, kappa)


def _grid(N: int) -> np.ndarray:
    return 2 * np.pi * np.arange(N) / N


def _exp_skew(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``exp(t_j X)`` for skew-Hermitian X, one eigendecomposition for all t."""
    w, v = np.linalg.eigh(-1j * x)
    phases = np.exp(1j * np.outer(t, w))
    return np.einsum("ik,jk,lk->jil", v, phases, v.conj())


def lattice_matrix(realization, xi: Sequence) -> np.ndarray:
    h = realization.coroot_arrays()
    return np.tensordot(np.asarray(xi, dtype=float), h, axes=1)


def sample_homomorphism_loop(rs: RootSystem, realization, xi: Sequence, N: int) -> DiscretizedLoop:
    """Samples of ``theta -> exp(theta xi)``; xi must be integral so the loop closes."""
    if rs.rank != realization.rank:
        raise ValueError(f"{rs.name} does not match {realization.group_tag}")
    xi = as_lattice(xi, rs.rank)
    if N < 4 or not _is_power_of_two(N):
        raise ValueError(f"N must be a power of two >= 4, got {N}")
    s = _exp_skew(lattice_matrix(realization, xi), _grid(N))
    return DiscretizedLoop(s, realization.group_tag, float(KAPPA[realization.label]))


# ---------------------------------------------------------------------------
# moment map


def derivative(gamma: DiscretizedLoop, method: str = "spectral") -> np.ndarray:
    s = gamma.samples
    N = gamma.N
    if method == "spectral":
        k = np.fft.fftfreq(N, 1.0 / N)
        k[N // 2] = 0  # Nyquist mode has no real derivative
        return np.fft.ifft(1j * k[:, None, None] * np.fft.fft(s, axis=0), axis=0)
    if method == "centered":
        h = 2 * np.pi / N
        return (np.roll(s, -1, axis=0) - np.roll(s, 1, axis=0)) / (2 * h)
    raise ValueError(f"unknown derivative method {method!r}; use spectral or centered")


def _log_derivative(gamma: DiscretizedLoop, method: str) -> np.ndarray:
    s = gamma.samples
    return np.einsum("jki,jkl->jil", s.conj(), derivative(gamma, method))


def energy(gamma: DiscretizedLoop, method: str = "spectral") -> float:
    """Trapezoid rule for ``(1/4pi) int kappa |gamma^-1 gamma'|_F^2``."""
    x = _log_derivative(gamma, method)
    return float(gamma.kappa * np.sum(np.abs(x) ** 2) / (2 * gamma.N))


def torus_projection(gamma: DiscretizedLoop, rs: RootSystem, realization,
                     method: str = "spectral") -> np.ndarray:
    """Mean of ``pr_t(gamma^-1 gamma')`` in coroot coordinates."""
    if rs.rank != realization.rank:
        raise ValueError(f"{rs.name} does not match {realization.group_tag}")
    mean = _log_derivative(gamma, method).mean(axis=0)
    h = realization.coroot_arrays()
    gram = -np.einsum("aij,bji->ab", h, h).real
    b = -np.einsum("aij,ji->a", h, mean).real
    return np.linalg.solve(gram, b)


# ---------------------------------------------------------------------------
# T x S^1 action and tau


def torus_element(realization, phi: Sequence[float]) -> np.ndarray:
    """``exp(sum phi_i H_i)``."""
    return _exp_skew(lattice_matrix(realization, phi), np.array([1.0]))[0]


def act_torus(t: np.ndarray, gamma: DiscretizedLoop) -> DiscretizedLoop:
    t = np.asarray(t, dtype=complex)
    return gamma._like(t @ gamma.samples @ np.linalg.inv(t))


def grid_shift(phi: float, N: int, tol: float = 1e-12) -> int:
    """Convert an angle to a grid shift, rejecting off-grid angles."""
    m = phi * N / (2 * np.pi)
    if abs(m - round(m)) > tol:
        raise ValueError(f"rotation by {phi} is not a multiple of 2pi/{N}")
    return int(round(m))


def act_rotation(m: int, gamma: DiscretizedLoop) -> DiscretizedLoop:
    """``(z.gamma)(theta) = gamma(theta + phi) gamma(phi)^-1`` with ``phi = 2 pi m / N``."""
    if not isinstance(m, numbers.Integral):
        raise ValueError(f"rotation must be a grid shift (integer), got {m!r}; see grid_shift")
    N = gamma.N
    s = gamma.samples
    idx = (np.arange(N) + m) % N
    return gamma._like(s[idx] @ np.linalg.inv(s[m % N]))


def sigma_numeric(sigma: LieInvolution):
    """``g -> M (conj g) M^-1`` on stacks of matrices."""
    m = to_numpy(sigma.matrix)
    minv = np.linalg.inv(m)

    def apply(g: np.ndarray) -> np.ndarray:
        return m @ (g.conj() if sigma.conjugate else g) @ minv

    return apply


def _sigma_for(sigma: LieInvolution, gamma: DiscretizedLoop):
    if not isinstance(sigma, LieInvolution):
        raise ValueError(f"unsupported involution recipe {sigma!r}")
    if sigma.matrix.shape[0] != gamma.size:
        raise ValueError(f"{sigma.label} acts on {sigma.matrix.shape[0]}x{sigma.matrix.shape[0]} "
                         f"matrices, loop has size {gamma.size}")
    return sigma_numeric(sigma)


def _reverse(N: int) -> np.ndarray:
    return (-np.arange(N)) % N


def apply_tau(sigma: LieInvolution, gamma: DiscretizedLoop) -> DiscretizedLoop:
    """``tau(gamma)(theta) = sigma(gamma(-theta))``."""
    f = _sigma_for(sigma, gamma)
    return gamma._like(f(gamma.samples[_reverse(gamma.N)]))


def _max_dist(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b, axis=(1, 2)).max())


def compatibility_residual(sigma: LieInvolution, t: np.ndarray, m: int,
                           gamma: DiscretizedLoop) -> float:
    """``max_j |tau((t, m).gamma) - (t^-1, -m).tau(gamma)|`` for t in the inverted torus."""
    t = np.asarray(t, dtype=complex)
    lhs = apply_tau(sigma, act_torus(t, act_rotation(m, gamma)))
    rhs = act_torus(np.linalg.inv(t), act_rotation(-m, apply_tau(sigma, gamma)))
    return _max_dist(lhs.samples, rhs.samples)


def tau_fixed_residual(sigma: LieInvolution, gamma: DiscretizedLoop) -> float:
    """``max_j |sigma(gamma(theta_j)) - gamma(-theta_j)|``; zero iff tau-fixed on the grid."""
    f = _sigma_for(sigma, gamma)
    return _max_dist(f(gamma.samples), gamma.samples[_reverse(gamma.N)])


# ---------------------------------------------------------------------------
# random loops and sweeps


def _random_skew(n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    x = (a - a.conj().T) / 2
    return x - np.trace(x) / n * np.eye(n)


def random_smooth_loop(realization, N: int, rng: np.random.Generator,
                       factors: int = 3, modes: int = 3) -> DiscretizedLoop:
    """``prod_k exp(f_k(theta) X_k)`` with random X_k and trigonometric f_k, f_k(0) = 0."""
    n = realization.n
    theta = _grid(N)
    s = np.broadcast_to(np.eye(n, dtype=complex), (N, n, n)).copy()
    for _ in range(factors):
        x = _random_skew(n, rng)
        f = np.zeros(N)
        for k in range(1, modes + 1):
            a, b = rng.normal(size=2) / k
            f += a * (np.cos(k * theta) - 1) + b * np.sin(k * theta)
        s = s @ _exp_skew(x, f)
    s[0] = np.eye(n)  # remove rounding at the base point
    return DiscretizedLoop(s, realization.group_tag, float(KAPPA[realization.label]))


@dataclass(frozen=True)
class SweepRow:
    loop_id: int
    N: int
    energy: float
    projection: tuple
    residual_compat: float
    residual_fixed: float


def residual_sweep(rs: RootSystem, realization, sigma: LieInvolution, count: int, N: int,
                   seed: int = 0, shifts: Optional[Iterable[int]] = None,
                   tori: Optional[Iterable[Sequence[float]]] = None) -> List[SweepRow]:
    """Compatibility and fixedness residuals over seeded random loops.

    Each loop gets its own generator seeded from ``(seed, loop_id)`` so the
    rows do not depend on thread scheduling.
    """
    shifts = list(shifts) if shifts is not None else [0, 1, 3, N // 4, N // 2, N - 1, 5, -7]
    if tori is None:
        trng = np.random.default_rng([seed, 10 ** 6])
        tori = [trng.uniform(-np.pi, np.pi, size=rs.rank) for _ in range(8)]
    tmats = [torus_element(realization, phi) for phi in tori]

    def one(loop_id: int) -> SweepRow:
        rng = np.random.default_rng([seed, loop_id])
        g = random_smooth_loop(realization, N, rng)
        res = max(compatibility_residual(sigma, t, m, g) for t in tmats for m in shifts)
        proj = tuple(float(c) for c in torus_projection(g, rs, realization))
        return SweepRow(loop_id, N, energy(g), proj, res, tau_fixed_residual(sigma, g))

    return parallel_map(one, range(count))


def write_sweep_csv(rows: Sequence[SweepRow], fh: TextIO) -> None:
    rank = len(rows[0].projection) if rows else 0
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["loop_id", "N", "energy"] + [f"proj_{i + 1}" for i in range(rank)]
               + ["residual_compat", "residual_fixed"])
    for r in rows:
        w.writerow([r.loop_id, r.N, repr(r.energy)] + [repr(c) for c in r.projection]
                   + [repr(r.residual_compat), repr(r.residual_fixed)])
