"""Exact integer matrices, Smith normal form and the lattice computations built on it.

Everything here works over Python ints, so no entry can overflow or be
rounded. Matrices are immutable values; every operation returns a new one.
"""

from __future__ import annotations

import functools
import math
import operator
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "INFINITE",
    "IntMatrix",
    "SmithDecomposition",
    "CokernelInvariants",
    "DiophantineSolution",
    "smith_normal_form",
    "cokernel",
    "solve_diophantine",
    "preimage_lattice_index",
]

#: Marker for an infinite index or order. Compares greater than every int.
INFINITE = math.inf

Index = Union[int, float]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        entries = tuple(operator.index(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be at least 1x1")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def diag(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def _check_same_shape(self, other: "IntMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)]
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} does not fit {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)])

    def minor(self, i: int, j: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[x for c, x in enumerate(self.row(r)) if c != j] for r in range(self.rows) if r != i]
        )

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def adjugate(self) -> "IntMatrix":
        if not self.is_square:
            raise ValueError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return IntMatrix.identity(1)
        return IntMatrix.from_rows(
            [[(-1) ** (i + j) * self.minor(j, i).det() for j in range(n)] for i in range(n)]
        )

    def rank(self) -> int:
        return sum(1 for d in smith_normal_form(self).D.diag() if d != 0)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, self.row(i))) + "]" for i in range(self.rows)) + "]"


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        return self.D.diag()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


@dataclass(frozen=True)
class CokernelInvariants:
    torsion_orders: tuple[int, ...]
    free_rank: int

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Index:
        if self.free_rank:
            return INFINITE
        return math.prod(self.torsion_orders)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_orders


@dataclass(frozen=True)
class DiophantineSolution:
    particular: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@functools.lru_cache(maxsize=4096)
def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form by row/column reduction, pivoting on the smallest nonzero entry."""
    m, n = A.rows, A.cols
    D = A.tolist()
    U = _identity_rows(m)
    V = _identity_rows(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, V):
                for r in M:
                    r[i], r[j] = r[j], r[i]

    def sub_row(src, dst, q):
        # row[dst] -= q * row[src]
        for M in (D, U):
            s, d = M[src], M[dst]
            for c in range(len(d)):
                d[c] -= q * s[c]

    def sub_col(src, dst, q):
        for M in (D, V):
            for r in M:
                r[dst] -= q * r[src]

    for t in range(min(m, n)):
        candidates = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not candidates:
            break
        _, i, j = min(candidates)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    sub_row(t, i, D[i][t] // p)
            for j in range(t + 1, n):
                if D[t][j]:
                    sub_col(t, j, D[t][j] // p)
            leftovers = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            leftovers += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if leftovers:
                # remainders are strictly smaller than the pivot
                _, i, j = min(leftovers)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            sub_row(bad, t, -1)
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]

    return SmithDecomposition(IntMatrix.from_rows(U), IntMatrix.from_rows(D), IntMatrix.from_rows(V))


def cokernel(A: IntMatrix) -> CokernelInvariants:
    """Invariants of ``Z^rows / A Z^cols``."""
    diag = smith_normal_form(A).invariant_factors
    rank = sum(1 for d in diag if d)
    return CokernelInvariants(tuple(d for d in diag if d > 1), A.rows - rank)


def solve_diophantine(A: IntMatrix, b: Sequence[int]) -> Optional[DiophantineSolution]:
    """Integer solutions of ``A x = b``: one particular solution and a kernel basis.

    Returns None when the system has no integer solution.
    """
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.invariant_factors
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    rank = sum(1 for d in diag if d)
    kernel = tuple(snf.V.col(j) for j in range(rank, A.cols))
    return DiophantineSolution(snf.V.apply(y), kernel)


def _columns_to_matrix(columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
    return IntMatrix.from_rows([[c[i] for c in columns] for i in range(nrows)])


def lattice_index(generators: Iterable[Sequence[int]], dim: int) -> Index:
    """Index in ``Z^dim`` of the sublattice spanned by ``generators``."""
    generators = [tuple(g) for g in generators if any(g)]
    if not generators:
        return INFINITE
    return cokernel(_columns_to_matrix(generators, dim)).order


def preimage_lattice_index(R: IntMatrix, B: IntMatrix) -> Index:
    """Index of ``{a in Z^n : R a in B Z^k}`` in ``Z^n``.

    The lattice is the projection onto the first n coordinates of the integer
    kernel of ``[R | -B]``.
    """
    if R.rows != B.rows or not B.is_square:
        raise ValueError(f"R {R.shape} and B {B.shape} do not conform")
    sol = solve_diophantine(R.hstack(-B), (0,) * R.rows)
    assert sol is not None
    n = R.cols
    return lattice_index((v[:n] for v in sol.kernel_basis), n)
