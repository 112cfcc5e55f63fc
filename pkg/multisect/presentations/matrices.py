from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np


def as_integer_matrix(entries, shape: Tuple[int, int] = None) -> np.ndarray:
    """Exact integer matrix (object dtype, Python ints); ``shape`` fixes empty inputs."""
    A = np.array(entries, dtype=object)
    if A.size == 0:
        return np.zeros(shape if shape is not None else (0, 0), dtype=object)
    if A.ndim != 2:
        raise ValueError(f"Expected a 2-dimensional matrix, got shape {A.shape}")
    return A


def identity_matrix(size: int) -> np.ndarray:
    M = np.zeros((size, size), dtype=object)
    for i in range(size):
        M[i, i] = 1
    return M


def exgcd(a: int, b: int) -> np.ndarray:
    """
    2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0].
    If a divides b, M[0, 1] is 0.
    """
    a_sign = -1 if a < 0 else 1
    a *= a_sign
    b_sign = -1 if b < 0 else 1
    b *= b_sign

    M = np.array([[a, 1, 0], [b, 0, 1]], dtype=object)
    M = M[::-1]
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]

    g = M[0, 0]
    M = M[:, 1:].copy()
    M *= [a_sign, b_sign]
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    return M


@dataclass(frozen=True)
class SmithForm:
    D: np.ndarray
    U: np.ndarray
    V: np.ndarray
    invariant_factors: Tuple[int, ...]

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(int(self.D[i, i]) for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _smallest_pivot(D: np.ndarray, t: int):
    best = None
    rows, cols = D.shape
    for i in range(t, rows):
        for j in range(t, cols):
            value = abs(D[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return None if best is None else best[1:]


def _non_divisible_row(D: np.ndarray, t: int):
    rows, cols = D.shape
    for i in range(t + 1, rows):
        for j in range(t + 1, cols):
            if D[i, j] % D[t, t]:
                return i
    return None


def smith_normal_form(A) -> SmithForm:
    """
    Smith normal form ``D = U @ A @ V`` with unimodular ``U`` and ``V``.

    Pivot on the least nonzero absolute value (first in row-major order), clear
    its column and row with ``exgcd`` steps until both are clear, then fold in
    any row whose entries the pivot fails to divide.
    """
    A = as_integer_matrix(A)
    rows, cols = A.shape
    D = A.copy()
    U, V = identity_matrix(rows), identity_matrix(cols)

    def clear_col(t):
        if (D[t + 1 :, t] == 0).all():
            return False
        for i in range(t + 1, rows):
            M = exgcd(D[t, t], D[i, t])
            D[[t, i]] = M @ D[[t, i]]
            U[[t, i]] = M @ U[[t, i]]
        return True

    def clear_row(t):
        if (D[t, t + 1 :] == 0).all():
            return False
        for j in range(t + 1, cols):
            M = exgcd(D[t, t], D[t, j]).T
            D[:, [t, j]] = D[:, [t, j]] @ M
            V[:, [t, j]] = V[:, [t, j]] @ M
        return True

    for t in range(min(rows, cols)):
        pivot = _smallest_pivot(D, t)
        if pivot is None:
            break
        i, j = pivot
        D[[t, i]] = D[[i, t]]
        U[[t, i]] = U[[i, t]]
        D[:, [t, j]] = D[:, [j, t]]
        V[:, [t, j]] = V[:, [j, t]]
        while True:
            clear_col(t)
            while clear_row(t) and clear_col(t):
                pass
            offending = _non_divisible_row(D, t)
            if offending is None:
                break
            D[t] += D[offending]
            U[t] += U[offending]
        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]

    if rows and cols:
        assert (U @ A @ V == D).all()
    diagonal = [int(D[k, k]) for k in range(min(rows, cols))]
    for previous, current in zip(diagonal, diagonal[1:]):
        assert current == 0 or (previous != 0 and current % previous == 0)
    return SmithForm(D, U, V, tuple(d for d in diagonal if d > 1))


def exponent_matrix(relators: Sequence, generator_count: int) -> np.ndarray:
    """Rows are relators, columns generators, entries exponent sums."""
    return as_integer_matrix(
        [relator.exponent_sums() for relator in relators], shape=(len(relators), generator_count)
    )
