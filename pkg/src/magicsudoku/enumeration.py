"""Exhaustive enumerators for blocks, boards, and gnomon completions.

The modular-magic enumerator assigns cells in row-major order with the
usual Sudoku bitmasks plus sum constraints applied the moment a
mini-row, mini-column, or mini-diagonal completes; completing lines
force the digit outright, so only cells in the upper-left 2x2 corner of
each block ever branch. The semi-magic enumerator assembles boards from
the 72-block catalog with row/column digit-set compatibility pruning.

Both enumerators are deterministic. An optional partition (worker,
worker_count) restricts a run to a slice of the top-level branches so
censuses can be split across processes; the slices are disjoint and
their union is the full enumeration.
"""

from __future__ import annotations

import itertools
from functools import cache
from typing import Callable, Iterator, Mapping

from .boards import Block, Board
from .errors import DomainError

__all__ = [
    "semi_magic_blocks",
    "enumerate_modular_magic",
    "enumerate_semi_magic",
    "iter_modular_magic",
    "iter_semi_magic",
    "complete_standard_gnomon",
    "complete_modular_magic",
    "standard_gnomon_cells",
    "STANDARD_GNOMON_BLOCKS",
]

Visitor = Callable[[Board], None]

#: Blocks of the standard gnomon (first band and first pillar), keyed by
#: block coordinates.
STANDARD_GNOMON_BLOCKS: dict[tuple[int, int], Block] = {
    (0, 0): ((0, 4, 8), (5, 6, 1), (7, 2, 3)),
    (0, 1): ((7, 2, 3), (0, 4, 8), (5, 6, 1)),
    (0, 2): ((5, 6, 1), (7, 2, 3), (0, 4, 8)),
    (1, 0): ((8, 0, 4), (1, 5, 6), (3, 7, 2)),
    (2, 0): ((4, 8, 0), (6, 1, 5), (2, 3, 7)),
}


def standard_gnomon_cells() -> list[tuple[int, int]]:
    """The 45 (cell index, digit) pairs fixed by the standard gnomon."""
    pairs = []
    for (I, J), blk in sorted(STANDARD_GNOMON_BLOCKS.items()):
        for r in range(3):
            for c in range(3):
                pairs.append((9 * (3 * I + r) + 3 * J + c, blk[r][c]))
    return sorted(pairs)


@cache
def semi_magic_blocks() -> tuple[Block, ...]:
    """All 72 blocks with distinct digits and every mini-row and
    mini-column summing to 12, sorted by their flattened entries."""
    found = []
    digits = range(9)
    for r0 in itertools.permutations(digits, 3):
        if sum(r0) != 12:
            continue
        rest = set(digits) - set(r0)
        for r1 in itertools.permutations(sorted(rest), 3):
            if sum(r1) != 12:
                continue
            r2 = tuple(12 - r0[j] - r1[j] for j in range(3))
            if set(r2) == rest - set(r1):
                found.append((r0, r1, r2))
    return tuple(sorted(found))


# --- modular-magic enumeration ---

# Cell kinds: 0 branches freely; 1 closes a mini-row; 2 closes a
# mini-column and the anti-diagonal; 3 closes a mini-column only;
# 4 closes a mini-row, mini-column, and the main diagonal.
def _mm_plan() -> tuple[tuple[int, int, int, int], ...]:
    plan = []
    for idx in range(81):
        r, c = divmod(idx, 9)
        blk = 3 * (r // 3) + c // 3
        rm, cm = r % 3, c % 3
        if rm < 2:
            kind = 1 if cm == 2 else 0
        elif cm == 0:
            kind = 2
        elif cm == 1:
            kind = 3
        else:
            kind = 4
        plan.append((kind, r, c, blk))
    return tuple(plan)


_MM_PLAN = _mm_plan()


def _check_partition(partition: tuple[int, int] | None) -> tuple[int, int]:
    if partition is None:
        return 0, 1
    worker, count = partition
    if count < 1 or not 0 <= worker < count:
        raise DomainError(f"bad partition {partition!r}")
    return worker, count


def enumerate_modular_magic(
    visitor: Visitor | None = None, partition: tuple[int, int] | None = None
) -> int:
    """Visit every modular-magic board once; returns the count.

    Sequential runs visit boards in lexicographic row-major order.
    """
    worker, nparts = _check_partition(partition)
    plan = _MM_PLAN
    grid = bytearray(81)
    rowm = [0] * 9
    colm = [0] * 9
    blkm = [0] * 9
    count = 0

    def rec(idx: int) -> None:
        nonlocal count
        if idx == 81:
            count += 1
            if visitor is not None:
                visitor(Board._wrap(bytes(grid)))
            return
        kind, r, c, blk = plan[idx]
        used = rowm[r] | colm[c] | blkm[blk]
        if kind == 0:
            avail = 0x1FF & ~used
            while avail:
                bit = avail & -avail
                avail ^= bit
                grid[idx] = bit.bit_length() - 1
                rowm[r] |= bit
                colm[c] |= bit
                blkm[blk] |= bit
                rec(idx + 1)
                rowm[r] ^= bit
                colm[c] ^= bit
                blkm[blk] ^= bit
            return
        if kind == 1:
            d = (-grid[idx - 1] - grid[idx - 2]) % 9
        elif kind == 2:
            d = (-grid[idx - 9] - grid[idx - 18]) % 9
            if (grid[idx - 16] + grid[idx - 8] + d) % 9:
                return
        elif kind == 3:
            d = (-grid[idx - 9] - grid[idx - 18]) % 9
        else:
            d = (-grid[idx - 1] - grid[idx - 2]) % 9
            if d != (-grid[idx - 9] - grid[idx - 18]) % 9:
                return
            if (grid[idx - 20] + grid[idx - 10] + d) % 9:
                return
        bit = 1 << d
        if used & bit:
            return
        grid[idx] = d
        rowm[r] |= bit
        colm[c] |= bit
        blkm[blk] |= bit
        rec(idx + 1)
        rowm[r] ^= bit
        colm[c] ^= bit
        blkm[blk] ^= bit

    # Drive the first two cells by hand so partition slicing costs
    # nothing inside the hot recursion.
    for d0 in range(9):
        for d1 in range(9):
            if d1 == d0 or (9 * d0 + d1) % nparts != worker:
                continue
            grid[0], grid[1] = d0, d1
            bits = (1 << d0) | (1 << d1)
            rowm[0] = blkm[0] = bits
            colm[0], colm[1] = 1 << d0, 1 << d1
            rec(2)
    rowm[0] = blkm[0] = colm[0] = colm[1] = 0
    return count


def iter_modular_magic() -> Iterator[Board]:
    """Yield every modular-magic board in enumeration order."""
    boards: list[Board] = []
    enumerate_modular_magic(boards.append)
    return iter(boards)


def complete_modular_magic(
    assignments: Mapping[int, int], limit: int | None = None
) -> list[Board]:
    """All modular-magic boards extending the given cell assignments.

    Stops early once ``limit`` boards are found, if given.
    """
    preset: list[int] = [-1] * 81
    for cell, digit in assignments.items():
        if not (0 <= int(cell) <= 80 and 0 <= int(digit) <= 8):
            raise DomainError(f"bad assignment {cell!r}: {digit!r}")
        preset[cell] = digit
    plan = _MM_PLAN
    grid = bytearray(81)
    rowm = [0] * 9
    colm = [0] * 9
    blkm = [0] * 9
    out: list[Board] = []

    def rec(idx: int) -> bool:
        if idx == 81:
            out.append(Board._wrap(bytes(grid)))
            return limit is not None and len(out) >= limit
        kind, r, c, blk = plan[idx]
        used = rowm[r] | colm[c] | blkm[blk]
        if kind == 0:
            choices = 0x1FF & ~used
        elif kind == 1:
            choices = 1 << (-grid[idx - 1] - grid[idx - 2]) % 9
        elif kind in (2, 3):
            choices = 1 << (-grid[idx - 9] - grid[idx - 18]) % 9
        else:
            d = (-grid[idx - 1] - grid[idx - 2]) % 9
            if d != (-grid[idx - 9] - grid[idx - 18]) % 9:
                return False
            choices = 1 << d
        if preset[idx] >= 0:
            choices &= 1 << preset[idx]
        choices &= ~used
        while choices:
            bit = choices & -choices
            choices ^= bit
            d = bit.bit_length() - 1
            if kind == 2 and (grid[idx - 16] + grid[idx - 8] + d) % 9:
                continue
            if kind == 4 and (grid[idx - 20] + grid[idx - 10] + d) % 9:
                continue
            grid[idx] = d
            rowm[r] |= bit
            colm[c] |= bit
            blkm[blk] |= bit
            stop = rec(idx + 1)
            rowm[r] ^= bit
            colm[c] ^= bit
            blkm[blk] ^= bit
            if stop:
                return True
        return False

    rec(0)
    return out


# --- semi-magic enumeration ---


@cache
def _sm_tables() -> tuple[
    tuple[tuple[bytes, bytes, bytes], ...], tuple[int, ...], tuple[int, ...]
]:
    """Per-block row bytes plus row/column compatibility bitmasks."""
    catalog = semi_magic_blocks()
    n = len(catalog)
    row_sets = []
    col_sets = []
    for blk in catalog:
        rmask = 0
        cmask = 0
        for i in range(3):
            for j in range(3):
                rmask |= 1 << (9 * i + blk[i][j])
                cmask |= 1 << (9 * j + blk[i][j])
        row_sets.append(rmask)
        col_sets.append(cmask)
    row_ok = [0] * n
    col_ok = [0] * n
    for i in range(n):
        for j in range(n):
            if not row_sets[i] & row_sets[j]:
                row_ok[i] |= 1 << j
            if not col_sets[i] & col_sets[j]:
                col_ok[i] |= 1 << j
    rows = tuple(tuple(bytes(blk[i]) for i in range(3)) for blk in catalog)
    return rows, tuple(row_ok), tuple(col_ok)


def _assemble(rows, i) -> bytes:
    """Build board bytes from nine catalog indices in block order."""
    (a, b, c), (d, e, f), (g, h, k) = (
        (rows[i[0]], rows[i[1]], rows[i[2]]),
        (rows[i[3]], rows[i[4]], rows[i[5]]),
        (rows[i[6]], rows[i[7]], rows[i[8]]),
    )
    return b"".join(
        (
            a[0], b[0], c[0], a[1], b[1], c[1], a[2], b[2], c[2],
            d[0], e[0], f[0], d[1], e[1], f[1], d[2], e[2], f[2],
            g[0], h[0], k[0], g[1], h[1], k[1], g[2], h[2], k[2],
        )
    )


def enumerate_semi_magic(
    visitor: Visitor | None = None, partition: tuple[int, int] | None = None
) -> int:
    """Visit every semi-magic board once; returns the count.

    Boards are assembled block by block from the 72-block catalog in
    deterministic catalog order (band 0 blocks vary slowest).
    """
    worker, nparts = _check_partition(partition)
    rows, row_ok, col_ok = _sm_tables()
    n = len(rows)
    count = 0
    for i0 in range(worker % nparts, n, nparts) if nparts > 1 else range(n):
        r0 = row_ok[i0]
        c0 = col_ok[i0]
        m1 = r0
        while m1:
            b1 = m1 & -m1
            m1 ^= b1
            i1 = b1.bit_length() - 1
            c1 = col_ok[i1]
            m2 = r0 & row_ok[i1]
            while m2:
                b2 = m2 & -m2
                m2 ^= b2
                i2 = b2.bit_length() - 1
                c2 = col_ok[i2]
                m3 = c0
                while m3:
                    b3 = m3 & -m3
                    m3 ^= b3
                    i3 = b3.bit_length() - 1
                    r3 = row_ok[i3]
                    m4 = c1 & r3
                    while m4:
                        b4 = m4 & -m4
                        m4 ^= b4
                        i4 = b4.bit_length() - 1
                        m5 = c2 & r3 & row_ok[i4]
                        while m5:
                            b5 = m5 & -m5
                            m5 ^= b5
                            i5 = b5.bit_length() - 1
                            m6 = c0 & col_ok[i3]
                            while m6:
                                b6 = m6 & -m6
                                m6 ^= b6
                                i6 = b6.bit_length() - 1
                                r6 = row_ok[i6]
                                m7 = c1 & col_ok[i4] & r6
                                while m7:
                                    b7 = m7 & -m7
                                    m7 ^= b7
                                    i7 = b7.bit_length() - 1
                                    m8 = c2 & col_ok[i5] & r6 & row_ok[i7]
                                    while m8:
                                        b8 = m8 & -m8
                                        m8 ^= b8
                                        count += 1
                                        if visitor is not None:
                                            visitor(
                                                Board._wrap(
                                                    _assemble(
                                                        rows,
                                                        (
                                                            i0, i1, i2, i3, i4, i5,
                                                            i6, i7, b8.bit_length() - 1,
                                                        ),
                                                    )
                                                )
                                            )
    return count


def iter_semi_magic() -> Iterator[Board]:
    """Yield every semi-magic board in enumeration order."""

    def gen() -> Iterator[Board]:
        # Stream one top-left-block slice at a time to bound memory.
        chunk: list[Board] = []
        for i0 in range(72):
            enumerate_semi_magic(chunk.append, partition=(i0, 72))
            yield from chunk
            chunk.clear()

    return gen()


def random_semi_magic(rng) -> Board:
    """A random semi-magic board, via randomized block assembly.

    Retries from scratch when a partial assembly dead-ends, so draws
    are independent but not uniform across boards.
    """
    rows, row_ok, col_ok = _sm_tables()
    n = len(rows)
    full = (1 << n) - 1
    while True:
        picks = []
        ok = True
        for j in range(9):
            mask = full
            band, pillar = divmod(j, 3)
            for k, i in enumerate(picks):
                if k // 3 == band:
                    mask &= row_ok[i]
                if k % 3 == pillar:
                    mask &= col_ok[i]
            if not mask:
                ok = False
                break
            picks.append(rng.choice(list(_bits(mask))))
        if ok:
            return Board._wrap(_assemble(rows, tuple(picks)))


@cache
def complete_standard_gnomon() -> tuple[Board, ...]:
    """The 16 semi-magic boards whose gnomon is the standard gnomon,
    sorted by their (cell (6,5), cell (5,6)) label pair."""
    catalog = semi_magic_blocks()
    rows, row_ok, col_ok = _sm_tables()
    pos = {key: catalog.index(blk) for key, blk in STANDARD_GNOMON_BLOCKS.items()}
    i0, i1, i2 = pos[(0, 0)], pos[(0, 1)], pos[(0, 2)]
    i3, i6 = pos[(1, 0)], pos[(2, 0)]
    boards = []
    r3 = row_ok[i3]
    r6 = row_ok[i6]
    for i4 in _bits(col_ok[i1] & r3):
        for i5 in _bits(col_ok[i2] & r3 & row_ok[i4]):
            for i7 in _bits(col_ok[i1] & col_ok[i4] & r6):
                for i8 in _bits(col_ok[i2] & col_ok[i5] & r6 & row_ok[i7]):
                    cells = _assemble(rows, (i0, i1, i2, i3, i4, i5, i6, i7, i8))
                    boards.append(Board._wrap(cells))
    boards.sort(key=lambda b: (b[9 * 6 + 5], b[9 * 5 + 6]))
    return tuple(boards)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        bit = mask & -mask
        mask ^= bit
        yield bit.bit_length() - 1
