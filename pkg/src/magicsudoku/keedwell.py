"""Block-cycle decomposition, quasi-linearity, and linearity degree.

A board decomposes over its upper-left block K when every block equals
alpha^c beta^d K for the cycle operators alpha (cycle mini-rows down)
and beta (cycle mini-columns right). The two 3x3 exponent matrices over
Z3 then classify the board by how many of them are quasi-linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .boards import Block, Board, block, is_sudoku
from .errors import DomainError

__all__ = [
    "ExponentMatrices",
    "KeedwellDecomposition",
    "apply_alpha",
    "apply_beta",
    "swap_block_columns",
    "swap_block_rows",
    "keedwell_decompose",
    "is_quasi_linear",
    "linearity_degree",
]

Matrix = tuple[tuple[int, int, int], ...]


def _as_matrix(m: Sequence[Sequence[int]], name: str) -> Matrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if len(rows) != 3 or any(len(row) != 3 for row in rows):
        raise DomainError(f"{name} is not 3x3")
    if any(x not in (0, 1, 2) for row in rows for x in row):
        raise DomainError(f"{name} has entries outside Z3")
    return rows


@dataclass(frozen=True)
class ExponentMatrices:
    """Alpha- and beta-exponents of each block, normalized so that the
    upper-left block carries (0, 0)."""

    c: Matrix
    d: Matrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", _as_matrix(self.c, "c"))
        object.__setattr__(self, "d", _as_matrix(self.d, "d"))
        if self.c[0][0] != 0 or self.d[0][0] != 0:
            raise DomainError("exponents not normalized: (0,0) block must be K")


@dataclass(frozen=True)
class KeedwellDecomposition:
    K: Block
    exponents: ExponentMatrices


def apply_alpha(blk: Block, e: int) -> Block:
    """Cycle mini-rows down e steps: row r of the result is row
    (r - e) mod 3 of the input."""
    return tuple(blk[(r - e) % 3] for r in range(3))


def apply_beta(blk: Block, e: int) -> Block:
    """Cycle mini-columns right e steps: column c of the result is
    column (c - e) mod 3 of the input."""
    return tuple(tuple(row[(c - e) % 3] for c in range(3)) for row in blk)


def swap_block_rows(blk: Block, a: int, b: int) -> Block:
    """Transpose two mini-rows of a block."""
    if not (0 <= a <= 2 and 0 <= b <= 2 and a != b):
        raise DomainError(f"bad row pair ({a},{b})")
    perm = list(range(3))
    perm[a], perm[b] = perm[b], perm[a]
    return tuple(blk[perm[r]] for r in range(3))


def swap_block_columns(blk: Block, a: int, b: int) -> Block:
    """Transpose two mini-columns of a block."""
    if not (0 <= a <= 2 and 0 <= b <= 2 and a != b):
        raise DomainError(f"bad column pair ({a},{b})")
    perm = list(range(3))
    perm[a], perm[b] = perm[b], perm[a]
    return tuple(tuple(row[perm[c]] for c in range(3)) for row in blk)


def keedwell_decompose(board: Board) -> KeedwellDecomposition | None:
    """Exponents of every block over the upper-left block, or None if
    some block is not a cycle image of it.

    The block entries are distinct, so the position of K[0][0] in a
    target block pins the only candidate exponent pair.
    """
    if not is_sudoku(board):
        raise DomainError("board is not a Sudoku board")
    K = block(board, 0, 0)
    k00 = K[0][0]
    c_rows = []
    d_rows = []
    for i in range(3):
        c_row = []
        d_row = []
        for j in range(3):
            target = block(board, i, j)
            c, d = next(
                (r, col)
                for r in range(3)
                for col in range(3)
                if target[r][col] == k00
            )
            if apply_beta(apply_alpha(K, c), d) != target:
                return None
            c_row.append(c)
            d_row.append(d)
        c_rows.append(tuple(c_row))
        d_rows.append(tuple(d_row))
    return KeedwellDecomposition(
        K, ExponentMatrices(tuple(c_rows), tuple(d_rows))
    )


def is_quasi_linear(m: Sequence[Sequence[int]]) -> bool:
    """True when m[i][j] = m[i][0] + m[0][j] (mod 3) for all i, j."""
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if len(rows) != 3 or any(len(row) != 3 for row in rows):
        raise DomainError("matrix is not 3x3")
    return all(
        (rows[i][j] - rows[i][0] - rows[0][j]) % 3 == 0
        for i in range(3)
        for j in range(3)
    )


def linearity_degree(board: Board) -> int | None:
    """Number of quasi-linear exponent matrices, or None if the board
    has no decomposition."""
    dec = keedwell_decompose(board)
    if dec is None:
        return None
    return int(is_quasi_linear(dec.exponents.c)) + int(
        is_quasi_linear(dec.exponents.d)
    )
