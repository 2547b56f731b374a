"""Canonical nest representatives and nest censuses.

The physical symmetry group of each board family partitions the family
into nests (orbits). Every nest contains exactly one board of a fixed
canonical shape, identified by a two-digit label: for modular-magic
boards the pattern fixes all 27 mini-diagonal cells holding {0,3,6} and
the label reads cells (0,2) and (3,8); for semi-magic boards the
canonical board carries the standard gnomon and the label reads cells
(6,5) and (5,6).

Modular-magic canonicalization scans the materialized 4608-element
physical group for the pattern match; the scan doubles as a uniqueness
check. Semi-magic canonicalization is a constructive reduction (the
full-group scan is kept as a reference oracle for cross-validation).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cache
from typing import Mapping

import numpy as np

from .boards import Board, is_modular_magic, is_semi_magic
from .catalog import h_gamma_group, h_mm_group
from .enumeration import (
    complete_modular_magic,
    complete_standard_gnomon,
    enumerate_modular_magic,
    enumerate_semi_magic,
    standard_gnomon_cells,
)
from .errors import DomainError, IntegrityError

__all__ = [
    "MM",
    "SM",
    "NestLabel",
    "Census",
    "normalize_variant",
    "canonicalize",
    "canonicalize_mm",
    "canonicalize_sm",
    "canonicalize_sm_by_scan",
    "crosscheck_sm",
    "representative",
    "census",
    "mm_labels",
    "sm_labels",
]

MM = "MM"
SM = "SM"

_VARIANT_ALIASES = {
    "mm": MM,
    "modular-magic": MM,
    "modular_magic": MM,
    "sm": SM,
    "semi-magic": SM,
    "semi_magic": SM,
}


def normalize_variant(variant: str) -> str:
    v = _VARIANT_ALIASES.get(str(variant).lower())
    if v is None:
        raise DomainError(f"unknown variant {variant!r}")
    return v


@dataclass(frozen=True, order=True)
class NestLabel:
    """Identifier of a nest: variant plus the two label digits."""

    variant: str
    first: int
    second: int

    def __post_init__(self) -> None:
        if self.variant not in (MM, SM):
            raise DomainError(f"bad variant {self.variant!r}")
        if not (0 <= self.first <= 8 and 0 <= self.second <= 8):
            raise DomainError(f"bad label digits ({self.first},{self.second})")

    def __str__(self) -> str:
        return f"[{self.first},{self.second}]"


@dataclass(frozen=True)
class Census:
    """Per-nest board counts for one variant."""

    variant: str
    counts: Mapping[NestLabel, int]
    total: int


# --- modular-magic canonical pattern ---


def _mm_template() -> tuple[tuple[int, int], ...]:
    """The 27 (cell, digit) pairs of the canonical mini-diagonals:
    block (I,J) holds (3*((I+J)%3) + 3t) mod 9 at diagonal slot t."""
    pairs = []
    for I in range(3):
        for J in range(3):
            for t in range(3):
                pairs.append(
                    (9 * (3 * I + t) + 3 * J + t, (3 * ((I + J) % 3) + 3 * t) % 9)
                )
    return tuple(pairs)


_MM_TEMPLATE = _mm_template()
# Label cells of the canonical pattern: alpha at (0,2), beta at (2,0),
# gamma at (3,8) and repeated at (6,5).
_MM_ALPHA, _MM_BETA, _MM_GAMMA1, _MM_GAMMA2 = 2, 18, 35, 59
_SM_A, _SM_B = 9 * 6 + 5, 9 * 5 + 6


@cache
def _mm_scan_tables():
    group = h_mm_group()
    inv = group.inverse_cell_images
    return inv, _MM_TEMPLATE


def _mm_reduce(cells: bytes) -> tuple[int, int, bytes]:
    """Scan the physical group for the unique pattern-matching image;
    returns (alpha, gamma, canonical cells)."""
    inv, template = _mm_scan_tables()
    arr = np.frombuffer(cells, dtype=np.uint8)
    idx = np.arange(inv.shape[0])
    for pos, val in template:
        idx = idx[arr[inv[idx, pos]] == val]
        if not idx.size:
            raise IntegrityError("no pattern match in physical orbit")
    keep = arr[inv[idx, _MM_ALPHA]] < arr[inv[idx, _MM_BETA]]
    idx = idx[keep]
    keep = arr[inv[idx, _MM_GAMMA1]] == arr[inv[idx, _MM_GAMMA2]]
    idx = idx[keep]
    if not idx.size:
        raise IntegrityError("no pattern match in physical orbit")
    images = arr[inv[idx]]
    distinct = np.unique(images, axis=0)
    if distinct.shape[0] != 1:
        raise IntegrityError(
            f"{distinct.shape[0]} distinct pattern matches in one orbit"
        )
    canon = distinct[0].tobytes()
    return canon[_MM_ALPHA], canon[_MM_GAMMA1], canon


def canonicalize_mm(board: Board) -> tuple[NestLabel, Board]:
    """Canonical form of a modular-magic board under the physical group."""
    if not is_modular_magic(board):
        raise DomainError("board is not modular-magic")
    alpha, gamma, canon = _mm_reduce(board.cells)
    return NestLabel(MM, alpha, gamma), Board._wrap(canon)


# --- semi-magic constructive reduction ---

# Digit-set bitmasks of the two families of mini-lines. In the standard
# gnomon's top-left block the rows are {0,4,8},{5,6,1},{7,2,3} (in that
# order) and the columns are {0,5,7},{4,6,2},{8,1,3}.
_ROW_FAMILY = {0b100010001: 0, 0b001100010: 1, 0b010001100: 2}
_COL_FAMILY_MASKS = frozenset((0b010100001, 0b001010100, 0b100001010))
_POS_048 = {0: 0, 4: 1, 8: 2}
_POS_723 = {7: 0, 2: 1, 3: 2}
_POS_561 = {5: 0, 6: 1, 1: 2}
_MASK_723 = 0b010001100
_MASK_813 = 0b100001010
_TRANSPOSE_IDX = tuple(9 * (i % 9) + i // 9 for i in range(81))
_SM_GNOMON_CELLS = tuple(standard_gnomon_cells())


def _sm_reduce(cells: bytes) -> tuple[bytes, list[int], list[int]]:
    """Forced-step reduction to the standard gnomon.

    Returns (base, rowperm, colperm) with the canonical board given by
    canonical[9R+C] = base[9*rowperm[R]+colperm[C]]; base is the input
    or its transpose. Every step is forced, so no tie-breaking arises.
    """
    m = (1 << cells[0]) | (1 << cells[1]) | (1 << cells[2])
    if m not in _ROW_FAMILY:
        if m not in _COL_FAMILY_MASKS:
            raise IntegrityError("block rows outside both mini-line families")
        cells = bytes(map(cells.__getitem__, _TRANSPOSE_IDX))
    try:
        rowperm = [0] * 9
        colperm = [0] * 9
        for r in range(3):
            m = (1 << cells[9 * r]) | (1 << cells[9 * r + 1]) | (1 << cells[9 * r + 2])
            rowperm[_ROW_FAMILY[m]] = r
        base = 9 * rowperm[0]
        for c in range(3):
            colperm[_POS_048[cells[base + c]]] = c
        m = (1 << cells[base + 3]) | (1 << cells[base + 4]) | (1 << cells[base + 5])
        p1, p2 = (1, 2) if m == _MASK_723 else (2, 1)
        for k in range(3):
            colperm[3 + _POS_723[cells[base + 3 * p1 + k]]] = 3 * p1 + k
            colperm[6 + _POS_561[cells[base + 3 * p2 + k]]] = 3 * p2 + k
        cc0 = colperm[0]
        m = (1 << cells[27 + cc0]) | (1 << cells[36 + cc0]) | (1 << cells[45 + cc0])
        b1, b2 = (1, 2) if m == _MASK_813 else (2, 1)
        for r in range(3 * b1, 3 * b1 + 3):
            m = (1 << cells[9 * r]) | (1 << cells[9 * r + 1]) | (1 << cells[9 * r + 2])
            rowperm[3 + _ROW_FAMILY[m]] = r
        for r in range(3 * b2, 3 * b2 + 3):
            m = (1 << cells[9 * r]) | (1 << cells[9 * r + 1]) | (1 << cells[9 * r + 2])
            rowperm[6 + _ROW_FAMILY[m]] = r
    except KeyError as exc:
        raise IntegrityError("mini-line families inconsistent") from exc
    return cells, rowperm, colperm


def _sm_label(cells: bytes) -> tuple[int, int]:
    base, rowperm, colperm = _sm_reduce(cells)
    return base[9 * rowperm[6] + colperm[5]], base[9 * rowperm[5] + colperm[6]]


def canonicalize_sm(board: Board) -> tuple[NestLabel, Board]:
    """Canonical form of a semi-magic board under the physical group."""
    if not is_semi_magic(board):
        raise DomainError("board is not semi-magic")
    base, rowperm, colperm = _sm_reduce(board.cells)
    canon = bytes(
        base[9 * rowperm[r] + colperm[c]] for r in range(9) for c in range(9)
    )
    for pos, val in _SM_GNOMON_CELLS:
        if canon[pos] != val:
            raise IntegrityError("reduction missed the standard gnomon")
    return NestLabel(SM, canon[_SM_A], canon[_SM_B]), Board._wrap(canon)


@cache
def _sm_scan_tables():
    group = h_gamma_group()
    return group.inverse_cell_images, _SM_GNOMON_CELLS


def canonicalize_sm_by_scan(board: Board) -> tuple[NestLabel, Board]:
    """Reference canonicalization scanning the full 373,248-element
    physical group; slow, used to cross-validate the reduction."""
    if not is_semi_magic(board):
        raise DomainError("board is not semi-magic")
    inv, gnomon = _sm_scan_tables()
    arr = np.frombuffer(board.cells, dtype=np.uint8)
    idx = np.arange(inv.shape[0])
    for pos, val in gnomon:
        idx = idx[arr[inv[idx, pos]] == val]
        if not idx.size:
            raise IntegrityError("no standard-gnomon image in physical orbit")
    images = arr[inv[idx]]
    distinct = np.unique(images, axis=0)
    if distinct.shape[0] != 1:
        raise IntegrityError(
            f"{distinct.shape[0]} distinct standard-gnomon images in one orbit"
        )
    canon = distinct[0].tobytes()
    return NestLabel(SM, canon[_SM_A], canon[_SM_B]), Board._wrap(canon)


def crosscheck_sm(board: Board) -> tuple[NestLabel, Board]:
    """Constructive canonicalization, verified against the scan oracle."""
    label, canon = canonicalize_sm(board)
    scan_label, scan_canon = canonicalize_sm_by_scan(board)
    if label != scan_label or canon != scan_canon:
        raise IntegrityError(
            f"constructive reduction gave {label}, scan oracle gave {scan_label}"
        )
    return label, canon


def canonicalize(variant: str, board: Board) -> tuple[NestLabel, Board]:
    """Dispatch to the variant's canonicalization."""
    if normalize_variant(variant) == MM:
        return canonicalize_mm(board)
    return canonicalize_sm(board)


# --- representatives and label alphabets ---


@cache
def _mm_representatives() -> dict[tuple[int, int], Board]:
    """Solve the canonical pattern for every label candidate; the nine
    solvable ones (each uniquely) form the label alphabet."""
    reps = {}
    for alpha in (1, 2, 7):
        beta = (-3 - alpha) % 9
        for gamma in range(9):
            preset = dict(_MM_TEMPLATE)
            preset[_MM_ALPHA] = alpha
            preset[_MM_BETA] = beta
            preset[_MM_GAMMA1] = gamma
            preset[_MM_GAMMA2] = gamma
            found = complete_modular_magic(preset, limit=2)
            if len(found) > 1:
                raise IntegrityError(f"pattern [{alpha},{gamma}] is ambiguous")
            if found:
                reps[(alpha, gamma)] = found[0]
    if len(reps) != 9:
        raise IntegrityError(f"{len(reps)} modular-magic nest labels, expected 9")
    return reps


@cache
def _sm_representatives() -> dict[tuple[int, int], Board]:
    reps = {(b[_SM_A], b[_SM_B]): b for b in complete_standard_gnomon()}
    if len(reps) != 16:
        raise IntegrityError(f"{len(reps)} semi-magic nest labels, expected 16")
    return reps


def mm_labels() -> tuple[NestLabel, ...]:
    """The nine modular-magic nest labels, sorted."""
    return tuple(NestLabel(MM, a, g) for a, g in sorted(_mm_representatives()))


def sm_labels() -> tuple[NestLabel, ...]:
    """The sixteen semi-magic nest labels, sorted."""
    return tuple(NestLabel(SM, a, b) for a, b in sorted(_sm_representatives()))


def labels(variant: str) -> tuple[NestLabel, ...]:
    return mm_labels() if normalize_variant(variant) == MM else sm_labels()


def representative(label: NestLabel) -> Board:
    """The canonical board of the given nest."""
    table = _mm_representatives() if label.variant == MM else _sm_representatives()
    board = table.get((label.first, label.second))
    if board is None:
        raise DomainError(f"no {label.variant} nest {label}")
    return board


# --- censuses ---


def census(variant: str, partition: tuple[int, int] | None = None) -> Census:
    """Enumerate the variant and count boards per nest label.

    A partition restricts the underlying enumeration slice; partial
    censuses merge by adding counts.
    """
    v = normalize_variant(variant)
    counts: Counter = Counter()
    if v == MM:

        def visit(board: Board) -> None:
            alpha, gamma, _ = _mm_reduce(board.cells)
            counts[(alpha, gamma)] += 1

        total = enumerate_modular_magic(visit, partition)
    else:

        def visit(board: Board) -> None:
            counts[_sm_label(board.cells)] += 1

        total = enumerate_semi_magic(visit, partition)
    mapping = {NestLabel(v, a, b): n for (a, b), n in sorted(counts.items())}
    return Census(v, mapping, total)
