"""Exact integer and mod-N linear algebra for the power-matrix designs.

N is not assumed prime, so nothing here pivots modulo N. Determinants are
taken over the integers (fraction-free elimination) and a system is solved
with Cramer's rule and a single modular inverse of the determinant.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NonUnitError, ParameterError


@dataclass(frozen=True)
class ZModMatrix:
    """A dense matrix over the integers modulo ``modulus``."""

    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ParameterError(f"modulus must be at least 2, got {self.modulus}")
        rows = tuple(tuple(int(x) % self.modulus for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ParameterError("matrix dimensions must be positive")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ParameterError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column_submatrix(self, columns: Sequence[int]) -> "ZModMatrix":
        return ZModMatrix(self.modulus, tuple(tuple(row[c] for c in columns) for row in self.entries))

    def matvec(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise ParameterError(f"vector length {len(x)} != {self.cols} columns")
        N = self.modulus
        return tuple(sum(a * b for a, b in zip(row, x)) % N for row in self.entries)

    def integer_det(self) -> int:
        """Determinant of the stored (reduced) entries over the integers."""
        if not self.is_square:
            raise ParameterError(f"determinant of a {self.rows}x{self.cols} matrix")
        return bareiss_det(self.entries)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if a[j][i] != 0), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        for j in range(i + 1, n):
            for c in range(i + 1, n):
                a[j][c] = (a[j][c] * a[i][i] - a[j][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def vandermonde_det(xs: Sequence[int]) -> int:
    """Product of (x_j - x_i) over i < j, for strictly increasing xs."""
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ParameterError(f"sequence must be strictly increasing: {list(xs)}")
    det = 1
    for i, j in itertools.combinations(range(len(xs)), 2):
        det *= xs[j] - xs[i]
    return det


def m_lcm(k: int, n: int) -> int:
    """lcm of Vandermonde determinants over all increasing n-sequences
    drawn from ``range(k)``.

    Choosing the part size N with N = 1 (mod m_lcm(k, n)) makes every
    n-column submatrix of the k-column power matrix invertible mod N.
    """
    if not 1 <= n <= k:
        raise ParameterError(f"need 1 <= n <= k, got k={k} n={n}")
    result = 1
    for xs in itertools.combinations(range(k), n):
        result = math.lcm(result, vandermonde_det(xs))
    return result


def mod_inverse(a: int, N: int) -> int:
    if N < 2:
        raise ParameterError(f"modulus must be at least 2, got {N}")
    # extended Euclid on (a mod N, N)
    old_r, r = a % N, N
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise NonUnitError(a, N)
    return old_s % N


def solve_unit_system(M: ZModMatrix, rhs: Sequence[int]) -> tuple[int, ...]:
    """Unique solution of ``M x = rhs`` over Z_N when det(M) is a unit.

    Raises NonUnitError when gcd(det M, N) != 1.
    """
    if not M.is_square:
        raise ParameterError(f"expected a square matrix, got {M.rows}x{M.cols}")
    if len(rhs) != M.rows:
        raise ParameterError(f"right-hand side has length {len(rhs)}, expected {M.rows}")
    N = M.modulus
    det = M.integer_det()
    inv = mod_inverse(det, N)
    rhs = [int(b) % N for b in rhs]
    x = []
    for col in range(M.cols):
        replaced = [row[:col] + (b,) + row[col + 1:] for row, b in zip(M.entries, rhs)]
        x.append(bareiss_det(replaced) * inv % N)
    x = tuple(x)
    if M.matvec(x) != tuple(rhs):
        raise AssertionError(f"Cramer solution {x} does not satisfy the system mod {N}")
    return x


def inverse_matrix(M: ZModMatrix) -> ZModMatrix:
    """Inverse over Z_N, one unit-vector solve per column."""
    n = M.rows
    columns = [solve_unit_system(M, [int(i == j) for i in range(n)]) for j in range(n)]
    return ZModMatrix(M.modulus, tuple(tuple(columns[j][i] for j in range(n)) for i in range(n)))


def power_matrix(k: int, rows: int, N: int) -> ZModMatrix:
    """Entry (i, j) is j**i mod N for i < rows, j < k, with 0**0 = 1."""
    if rows < 1 or k < rows:
        raise ParameterError(f"need 1 <= rows <= k, got rows={rows} k={k}")
    return ZModMatrix(N, tuple(tuple(pow(j, i, N) for j in range(k)) for i in range(rows)))
