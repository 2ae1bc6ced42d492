"""Exact integer linear algebra: Smith normal form, determinants, minors.

Matrices are plain lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import BadIndex, InfiniteGroup, NonSquare

IntMatrix = list[list[int]]

__all__ = [
    "IntMatrix",
    "AbelianGroup",
    "identity",
    "matmul",
    "transpose",
    "smith_normal_form",
    "smith_decomposition",
    "determinant",
    "determinant_divisors",
    "group_from_matrix",
    "generator_order",
    "parse_matrix",
    "format_matrix",
]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return rows, cols


def _snf(m: Sequence[Sequence[int]], track: bool):
    rows, cols = _shape(m)
    a = [list(map(int, r)) for r in m]
    u = identity(rows) if track else None
    v = identity(cols) if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        rd, rs = a[dst], a[src]
        for j in range(cols):
            if rs[j]:
                rd[j] -= q * rs[j]
        if track:
            ud, us = u[dst], u[src]
            for j in range(rows):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        if track:
            for r in v:
                if r[src]:
                    r[dst] -= q * r[src]

    rank = 0
    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                row = a[i]
                for j in range(t, cols):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) if any(x % p for x in a[i][t + 1:])),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] == 0:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
        rank += 1
    diag = [a[i][i] for i in range(min(rows, cols))]
    return diag, rank, u, v


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Diagonal ``d_1 | d_2 | ... | d_r, 0, ..., 0`` of the Smith form, and the rank ``r``.

    The pivot is always a nonzero entry of least absolute value in the
    remaining submatrix; row and column are cleared by Euclidean steps and
    the pivot is re-chosen until it divides everything left.
    """
    diag, rank, _, _ = _snf(m, track=False)
    return diag, rank


def smith_decomposition(m: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Return ``(diag, U, V)`` with unimodular ``U``, ``V`` and ``U @ m @ V`` diagonal."""
    diag, _, u, v = _snf(m, track=True)
    return diag, u, v


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    rows, cols = _shape(m)
    if rows != cols:
        raise NonSquare(f"{rows}x{cols} matrix has no determinant")
    n = rows
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant_divisors(m: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all ``k x k`` minors (0 if they all vanish).

    Enumerates every minor, so the cost is exponential in the matrix size;
    only meant as a cross-check on small matrices.
    """
    rows, cols = _shape(m)
    if not 1 <= k <= min(rows, cols):
        raise BadIndex(f"k={k} outside 1..{min(rows, cols)}")
    g = 0
    for rs in combinations(range(rows), k):
        sub_rows = [m[i] for i in rs]
        for cs in combinations(range(cols), k):
            g = gcd(g, determinant([[r[j] for j in cs] for r in sub_rows]))
            if g == 1:
                return 1
    return g


def generator_order(m: IntMatrix, j: int) -> int:
    """Order of the ``j``-th generator in the group with relation matrix ``m``.

    From ``U m V = D`` the unit vector ``delta_j`` satisfies
    ``c delta_j in rowspace(m)`` iff ``c V[j][i] / d_i`` is integral for all
    ``i``, so the order is the lcm of ``d_i / gcd(d_i, V[j][i])``.
    """
    diag, _, v = smith_decomposition(m)
    order = 1
    for i, d in enumerate(diag):
        x = v[j][i]
        if d == 0:
            if x:
                raise ValueError("generator has infinite order")
            continue
        q = d // gcd(d, x)
        order = order * q // gcd(order, q)
    return order


_TERM = re.compile(r"Z_(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group by invariant factors ``d_1 | d_2 | ... | d_r``, all ``>= 2``."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        fs = tuple(int(d) for d in self.factors)
        if any(d < 2 for d in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {fs}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def from_diagonal(cls, diag: Iterable[int]) -> AbelianGroup:
        """Drop unit entries from an already sorted Smith diagonal."""
        return cls(tuple(abs(d) for d in diag if abs(d) != 1))

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> AbelianGroup:
        """Canonical form of ``Z_{n_1} + ... + Z_{n_k}`` for arbitrary positive ``n_i``."""
        orders = list(orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be positive: {orders}")
        if not orders:
            return cls()
        mat = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        diag, _ = smith_normal_form(mat)
        return cls.from_diagonal(diag)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        """Minimum number of generators."""
        return len(self.factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " ⊕ ".join(f"Z_{d}" for d in self.factors)

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        """Inverse of ``str``; also accepts ``Z_3^2``, ``+`` and ``(+)`` separators."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        factors: list[int] = []
        for part in re.split(r"⊕|\(\+\)|\+", text):
            hit = _TERM.match(part.strip())
            if not hit:
                raise ValueError(f"cannot parse group term {part!r}")
            factors += [int(hit.group(1))] * int(hit.group(2) or 1)
        return cls(tuple(f for f in factors if f != 1))


def group_from_matrix(m: Sequence[Sequence[int]]) -> AbelianGroup:
    """Group presented by relation matrix ``m`` (rows = relations, columns = generators)."""
    _, cols = _shape(m)
    diag, rank = smith_normal_form(m)
    if rank < cols:
        raise InfiniteGroup(f"relation matrix has rank {rank} < {cols} generators")
    return AbelianGroup.from_diagonal(diag[:rank])


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"rows cols"`` followed by row-major integers."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("missing 'rows cols' header")
    try:
        nums = [int(x) for x in tokens]
    except ValueError as exc:
        raise ValueError(f"non-integer token: {exc}") from None
    rows, cols = nums[0], nums[1]
    if rows < 0 or cols < 0:
        raise ValueError("negative dimension")
    body = nums[2:]
    if len(body) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(body)}")
    return [body[i * cols:(i + 1) * cols] for i in range(rows)]


def format_matrix(m: Sequence[Sequence[int]]) -> str:
    rows, cols = _shape(m)
    lines = [f"{rows} {cols}"] + [" ".join(map(str, r)) for r in m]
    return "\n".join(lines) + "\n"
