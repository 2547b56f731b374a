"""Board parsing, formatting, predicates, and serialization."""

import io
import random

import pytest

from magicsudoku.boards import (
    Board,
    block,
    blocks,
    format_board,
    is_magic_mod9_block,
    is_modular_magic,
    is_semi_magic,
    is_semi_magic_block,
    is_sudoku,
    iter_text,
    off_diagonal_set,
    pack,
    parse_board,
    read_mssb,
    unpack,
    write_mssb,
    write_text,
)
from magicsudoku.errors import BoardFormatError, DigitError, StructureError

from conftest import CANON_MM_72


def test_parse_round_trip(board_mm_72):
    assert format_board(board_mm_72) == CANON_MM_72
    assert parse_board(format_board(board_mm_72)) == board_mm_72


def test_parse_ignores_whitespace():
    spaced = "\n".join(CANON_MM_72[i : i + 9] for i in range(0, 81, 9))
    assert parse_board(spaced) == parse_board(CANON_MM_72)
    assert parse_board(" ".join(CANON_MM_72)) == parse_board(CANON_MM_72)


def test_parse_rejects_bad_input():
    with pytest.raises(BoardFormatError):
        parse_board(CANON_MM_72[:-1])
    with pytest.raises(BoardFormatError):
        parse_board(CANON_MM_72 + "0")
    with pytest.raises(DigitError):
        parse_board(CANON_MM_72[:-1] + "9")
    with pytest.raises(DigitError):
        parse_board(CANON_MM_72[:-1] + "x")


def test_board_constructor_validates():
    with pytest.raises(BoardFormatError):
        Board(bytes(80))
    with pytest.raises(DigitError):
        Board(bytes(80) + b"\x09")


def test_cell_accessors(board_mm_72):
    assert board_mm_72.cell(0, 1) == 2
    assert board_mm_72.cell(8, 8) == 0
    assert board_mm_72.row(0) == (0, 2, 7, 3, 1, 5, 6, 4, 8)
    assert board_mm_72.cells[3] == 3
    assert len(board_mm_72.cells) == 81


def test_board_equality_and_hash(board_mm_72, board_mm_11):
    again = parse_board(CANON_MM_72)
    assert board_mm_72 == again
    assert hash(board_mm_72) == hash(again)
    assert board_mm_72 != board_mm_11
    assert len({board_mm_72, again, board_mm_11}) == 2


def test_pretty_format(board_mm_72):
    lines = format_board(board_mm_72, pretty=True).splitlines()
    assert len(lines) == 9
    assert lines[0].replace(" ", "") == CANON_MM_72[:9]


def test_block_extraction(board_mm_72):
    assert block(board_mm_72, 0, 0) == ((0, 2, 7), (1, 3, 5), (8, 4, 6))
    assert block(board_mm_72, 2, 2) == ((3, 1, 5), (8, 6, 4), (7, 2, 0))
    got = blocks(board_mm_72)
    assert len(got) == 9
    assert got[0] == block(board_mm_72, 0, 0)
    assert got[8] == block(board_mm_72, 2, 2)


def test_sudoku_predicate(board_mm_72, board_sm_71):
    assert is_sudoku(board_mm_72)
    assert is_sudoku(board_sm_71)
    cells = bytearray(board_mm_72.cells)
    cells[0] = cells[1]
    assert not is_sudoku(Board(bytes(cells)))


def test_magic_predicates(board_mm_72, board_sm_71):
    assert is_modular_magic(board_mm_72)
    assert not is_semi_magic(board_mm_72)
    assert is_semi_magic(board_sm_71)
    assert not is_modular_magic(board_sm_71)


def test_block_predicates(board_mm_72, board_sm_71):
    assert all(is_magic_mod9_block(b) for b in blocks(board_mm_72))
    assert all(is_semi_magic_block(b) for b in blocks(board_sm_71))
    assert not is_semi_magic_block(block(board_mm_72, 0, 0))
    assert not is_magic_mod9_block(block(board_sm_71, 0, 0))


def test_off_diagonal_set(board_mm_72):
    assert off_diagonal_set(block(board_mm_72, 0, 0)) == frozenset({7, 8})
    for blk in blocks(board_mm_72):
        pair = off_diagonal_set(blk)
        assert len(pair) == 2
        assert pair.isdisjoint({0, 3, 6})


def test_off_diagonal_set_rejects_non_magic(board_sm_71):
    with pytest.raises(StructureError):
        off_diagonal_set(block(board_sm_71, 0, 0))


def test_pack_unpack(board_mm_72, board_sm_71, board_mm_11):
    for board in (board_mm_72, board_sm_71, board_mm_11):
        blob = pack(board)
        assert len(blob) == 41
        assert unpack(blob) == board
    with pytest.raises(BoardFormatError):
        unpack(b"\x00" * 40)
    with pytest.raises(BoardFormatError):
        unpack(b"\x99" * 41)


def test_text_stream_round_trip(board_mm_72, board_sm_71):
    fh = io.StringIO()
    write_text(fh, [board_mm_72, board_sm_71])
    fh.seek(0)
    assert list(iter_text(fh)) == [board_mm_72, board_sm_71]


def test_mssb_round_trip(board_mm_72, board_sm_71, board_mm_12):
    boards = [board_mm_72, board_sm_71, board_mm_12]
    fh = io.BytesIO()
    count = write_mssb(fh, iter(boards))
    assert count == 3
    fh.seek(0)
    assert read_mssb(fh) == boards


def test_mssb_rejects_garbage():
    with pytest.raises(BoardFormatError):
        read_mssb(io.BytesIO(b"NOPE" + bytes(12)))
    fh = io.BytesIO()
    write_mssb(fh, iter([]))
    fh.seek(0)
    assert read_mssb(fh) == []


def test_mssb_many_boards(board_mm_72):
    rng = random.Random(11)
    base = list(board_mm_72.cells)
    boards = []
    for _ in range(257):
        rng.shuffle(base)
        boards.append(Board(bytes(base)))
    fh = io.BytesIO()
    write_mssb(fh, iter(boards))
    fh.seek(0)
    assert read_mssb(fh) == boards
