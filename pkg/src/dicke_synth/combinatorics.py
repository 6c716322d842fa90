"""Exact binomials, weight-split coefficients, rotation angles and oracle states.

The oracle states here are built by direct enumeration of basis indices and
never touch the circuit machinery; tests use them as ground truth.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_BINOMIAL_N = 4096
ORACLE_CAP = 24


def binomial(a: int, b: int) -> int:
    """C(a, b) as an exact integer, 0 when b < 0 or b > a."""
    if a < 0:
        raise ValueError(f"binomial: a={a} < 0")
    if a > MAX_BINOMIAL_N:
        raise OverflowError(f"binomial: a={a} exceeds supported range {MAX_BINOMIAL_N}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


class BinomialTable:
    """Pascal triangle up to ``max_n`` with the C(a, b) = 0 for b > a convention."""

    def __init__(self, max_n: int):
        if not 0 <= max_n <= MAX_BINOMIAL_N:
            raise ValueError(f"max_n must lie in [0, {MAX_BINOMIAL_N}]")
        self.max_n = max_n
        rows = [[1]]
        for a in range(1, max_n + 1):
            prev = rows[-1]
            rows.append([1] + [prev[b - 1] + prev[b] for b in range(1, a)] + [1])
        self._rows = rows

    def __call__(self, a: int, b: int) -> int:
        if not 0 <= a <= self.max_n:
            raise ValueError(f"a={a} outside table")
        if b < 0 or b > a:
            return 0
        return self._rows[a][b]


@dataclass(frozen=True)
class WeightSplitCoefficients:
    n: int
    m: int
    k: int
    ell: int
    x: tuple  # x_i = C(m, i) C(n-m, ell-i)
    s: tuple  # suffix sums s_i = sum_{j >= i} x_j

    @property
    def total(self) -> int:
        return binomial(self.n, self.ell)

    def amplitudes(self) -> np.ndarray:
        """sqrt(x_i / C(n, ell)) for i = 0..ell."""
        return np.sqrt(np.array(self.x, dtype=float) / self.total)


@lru_cache(maxsize=None)
def split_coefficients(n: int, m: int, k: int, ell: int) -> WeightSplitCoefficients:
    if not (1 <= m < n):
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    if not (0 <= ell <= k <= n):
        raise ValueError(f"need 0 <= ell <= k <= n, got ell={ell}, k={k}, n={n}")
    xs = [binomial(m, i) * binomial(n - m, ell - i) for i in range(ell + 1)]
    ss = []
    acc = 0
    for v in reversed(xs):
        acc += v
        ss.append(acc)
    return WeightSplitCoefficients(n, m, k, ell, tuple(xs), tuple(reversed(ss)))


def rotation_angle(x: int, y: int) -> float:
    """Angle theta with RY(theta)|0> = sqrt(x/y)|0> + sqrt((y-x)/y)|1>."""
    if y <= 0 or x < 0 or x > y:
        raise ValueError(f"rotation_angle needs 0 <= x <= y, y > 0; got x={x}, y={y}")
    r = min(1.0, max(0.0, x / y))
    return 2.0 * math.acos(math.sqrt(r))


def probability_angle(p0: float) -> float:
    """Same convention as :func:`rotation_angle` for a real probability p0."""
    p0 = min(1.0, max(0.0, p0))
    return 2.0 * math.acos(math.sqrt(p0))


def _check_oracle_size(n):
    if not 1 <= n <= ORACLE_CAP:
        raise ValueError(f"oracle states support 1 <= n <= {ORACLE_CAP}, got {n}")


@lru_cache(maxsize=64)
def _weights(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    w = np.zeros_like(idx)
    for j in range(n):
        w += (idx >> j) & 1
    w.setflags(write=False)
    return w


def oracle_dicke_state(n: int, ell: int) -> np.ndarray:
    """Uniform superposition of all n-bit strings with exactly ``ell`` ones."""
    _check_oracle_size(n)
    if not 0 <= ell <= n:
        raise ValueError(f"weight {ell} outside [0, {n}]")
    psi = np.zeros(2**n, dtype=complex)
    psi[_weights(n) == ell] = 1.0 / math.sqrt(binomial(n, ell))
    return psi


def check_amplitudes(alpha, tol=1e-10) -> np.ndarray:
    a = np.asarray(alpha, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("amplitude vector must be one-dimensional and non-empty")
    norm = float(np.sum(np.abs(a) ** 2))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"amplitudes not normalized: sum |a|^2 = {norm}")
    return a


def oracle_symmetric_state(n: int, alpha) -> np.ndarray:
    """sum_l alpha_l D(n, l) for l = 0..len(alpha)-1."""
    a = check_amplitudes(alpha)
    if len(a) - 1 > n:
        raise ValueError(f"{len(a) - 1} exceeds n={n}")
    psi = np.zeros(2**n, dtype=complex)
    for ell, coef in enumerate(a):
        if coef != 0:
            psi += coef * oracle_dicke_state(n, ell)
    return psi
