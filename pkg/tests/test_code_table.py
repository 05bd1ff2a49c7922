from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gks import (
    CodeTable,
    Codeword,
    Exact,
    NoMatch,
    OneError,
    decode,
    lookup_by_underline,
    parse_table,
    serialize_table,
    verify_table,
)
from gks.code_table import decode_scan, to_bits
from gks.errors import (
    BadCharacter,
    HeaderMissing,
    LengthMismatch,
    NotFound,
    UnderlineCountMismatch,
    UnderlinedZero,
)

HEADER = "m=12 u=3\n"


def one_row(line):
    return parse_table(HEADER + line + "\n").rows[0]


def test_parse_first_and_last_rows():
    assert one_row("111000100000 ^^^.........") == Codeword(
        to_bits("111000100000"), frozenset({1, 2, 3})
    )
    assert one_row("110100000111 .........^^^") == Codeword(
        to_bits("110100000111"), frozenset({10, 11, 12})
    )


@pytest.mark.parametrize(
    "line, error",
    [
        ("11100010000 ^^^.........", LengthMismatch),
        ("011000000000 ^^..........", UnderlinedZero),
        ("111000100000 ^^..........", UnderlineCountMismatch),
        ("111000100002 ^^^.........", BadCharacter),
        ("111000100000  ^^^.........", BadCharacter),
        ("111000100000 ^^^........x", BadCharacter),
    ],
)
def test_parse_errors(line, error):
    with pytest.raises(error):
        parse_table(HEADER + line + "\n")


def test_header_missing():
    with pytest.raises(HeaderMissing):
        parse_table("# comment only\n111000100000 ^^^.........\n")


def test_error_carries_line_number():
    with pytest.raises(LengthMismatch, match="line 3"):
        parse_table("# c\n" + HEADER + "1110 ^^^.\n")


def test_canonical_shape(table):
    assert (table.m, table.u, len(table)) == (12, 3, 220)
    assert table.rows[0].string == "111000100000"
    assert table.rows[-1].string == "110100000111"


def test_roundtrip_canonical(table):
    assert parse_table(serialize_table(table)) == table


def test_serialize_empty_and_single():
    empty = CodeTable(12, 3, ())
    assert serialize_table(empty) == "m=12 u=3\n"
    assert parse_table(serialize_table(empty)) == empty
    single = CodeTable(12, 3, (Codeword(to_bits("111000100000"), frozenset({1, 2, 3})),))
    text = serialize_table(single)
    assert text == "m=12 u=3\n111000100000 ^^^.........\n"
    assert parse_table(text) == single


def test_verify_canonical(table):
    report = verify_table(table)
    assert report.passed, report.violations
    assert report.stats["rows"] == 220
    assert report.stats["distinct_ball_members"] == 2200


def test_verify_duplicate_row(table):
    rows = list(table.rows)
    rows[1] = rows[0]
    report = verify_table(CodeTable(12, 3, tuple(rows)))
    assert not report.passed
    assert "coverage: underline set {1,2,3} appears in rows [1, 2]" in report.violations
    assert "coverage: underline set {1,2,4} missing" in report.violations


def test_verify_mini_collision():
    mini = CodeTable(
        4, 1, (Codeword((1, 0, 0, 0), frozenset({1})), Codeword((1, 1, 0, 0), frozenset({2})))
    )
    report = verify_table(mini)
    assert not report.passed
    assert (
        "disjointness: rows 1 and 2 share 1100 (flip 2 of row 1, codeword of row 2)"
        in report.violations
    )


@pytest.mark.parametrize(
    "subset, bits",
    [({1, 2, 3}, "111000100000"), ({1, 2, 4}, "111110000000"), ({10, 11, 12}, "110100000111")],
)
def test_lookup(table, subset, bits):
    assert lookup_by_underline(table, subset).string == bits


def test_lookup_missing(table):
    short = CodeTable(12, 3, table.rows[:-1])
    with pytest.raises(NotFound):
        lookup_by_underline(short, {10, 11, 12})


def test_decode_examples(table):
    assert decode(table, "111000100000") == Exact(1)
    assert decode(table, "000000000000") == NoMatch()


def test_decode_one_error_against_ball_scan(table):
    word = to_bits("111010100000")
    # Brute force: every (row, flip) member of every punctured ball.
    hits = [
        (i, pos)
        for i, row in enumerate(table.rows, 1)
        for member, pos in row.ball()
        if member == word
    ]
    assert hits == [(1, 5)]
    assert decode(table, word) == OneError(1, 5)


def test_every_ball_member_decodes(table):
    for i, row in enumerate(table.rows, 1):
        assert decode(table, row.bits) == Exact(i)
        for p in row.free_positions:
            result = decode(table, row.flip(p))
            assert result == OneError(i, p)
            assert p not in row.underline


def test_subsets_covered(table):
    assert {r.underline for r in table.rows} == {frozenset(s) for s in combinations(range(1, 13), 3)}


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 2**12 - 1))
def test_index_and_scan_decoders_agree(word):
    from gks import canonical_table

    t = canonical_table()
    bits = tuple((word >> (11 - i)) & 1 for i in range(12))
    assert decode(t, bits) == decode_scan(t, bits)


def test_table_copies_identical(table_path):
    from importlib import resources

    bundled = resources.files("gks").joinpath("tables").joinpath("gks_12_3.ucode").read_bytes()
    assert table_path.read_bytes() == bundled


def test_codeword_rejects_underlined_zero():
    with pytest.raises(UnderlinedZero):
        Codeword((0, 1), frozenset({1}))
