"""Tests for the system file format."""

import pytest

from conedec import (
    Mat,
    ParseError,
    SystemFile,
    load_system,
    parse_dual_matrix,
    parse_system,
    render_system,
)

ANCHOR_TEXT = """\
# two equations in six unknowns
n 6
r 2
A
3 1 -4 -9 -1 0
2 -1 1 -3 0 -1
b
1 -3
"""


def test_parse_anchor_file():
    sf = parse_system(ANCHOR_TEXT)
    assert sf.n == 6
    assert sf.r == 2
    assert sf.mode == "eq"
    assert sf.a == Mat([[3, 1, -4, -9, -1, 0], [2, -1, 1, -3, 0, -1]])
    assert sf.b == (1, -3)
    a, b = sf.effective_system()
    assert a == sf.a and b == sf.b


def test_round_trip():
    sf = parse_system(ANCHOR_TEXT)
    assert parse_system(render_system(sf)) == sf
    geq = SystemFile(n=2, r=2, a=Mat([[1, 0], [1, 3]]), b=(1, 2), mode="geq")
    text = render_system(geq)
    assert "mode geq" in text
    assert parse_system(text) == geq


def test_geq_mode_adds_slack_columns():
    sf = parse_system("n 2\nr 1\nmode geq\nA\n2 3\nb\n4\n")
    assert sf.mode == "geq"
    a, b = sf.effective_system()
    assert a == Mat([[2, 3, -1]])
    assert b == (4,)


def test_comments_and_blanks_ignored():
    sf = parse_system(
        "\n# heading\nn 2\n\n  # note\nr 1\nA\n1 1\n# tail\nb\n2\n\n"
    )
    assert sf.a == Mat([[1, 1]])
    assert sf.b == (2,)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_system("n 2\nr 1\nA\n1 2 3\nb\n0\n")
    assert "line 4" in str(exc.value)
    assert "matrix row needs 2 entries, got 3" in str(exc.value)

    with pytest.raises(ParseError) as exc:
        parse_system("n 2\nr 1\nA\n1 x\nb\n0\n")
    assert "line 4" in str(exc.value)
    assert "non-integer" in str(exc.value)

    with pytest.raises(ParseError) as exc:
        parse_system("n 2\nr 1\nA\n1 2\n")
    assert "expected `b`" in str(exc.value)

    with pytest.raises(ParseError) as exc:
        parse_system("m 2\nr 1\nA\n1 2\nb\n0\n")
    assert "line 1" in str(exc.value)

    with pytest.raises(ParseError):
        parse_system("n 0\nr 1\nA\n\nb\n0\n")

    with pytest.raises(ParseError) as exc:
        parse_system("n 2\nr 1\nA\n1 2\nb\n0\nextra stuff\n")
    assert "trailing" in str(exc.value)

    with pytest.raises(ParseError):
        parse_system("")


def test_load_system(tmp_path):
    path = tmp_path / "system.txt"
    path.write_text(ANCHOR_TEXT, encoding="utf-8")
    assert load_system(str(path)) == parse_system(ANCHOR_TEXT)


def test_parse_dual_matrix():
    rows = parse_dual_matrix("# cone data\nd 2\n2 0\n1 3\n")
    assert rows == [[2, 0], [1, 3]]

    with pytest.raises(ParseError) as exc:
        parse_dual_matrix("d 2\n2 0\n")
    assert "expected 2 matrix rows, got 1" in str(exc.value)

    with pytest.raises(ParseError):
        parse_dual_matrix("q 2\n1 0\n0 1\n")
    with pytest.raises(ParseError):
        parse_dual_matrix("")
    with pytest.raises(ParseError):
        parse_dual_matrix("d 0\n")
    with pytest.raises(ParseError) as exc:
        parse_dual_matrix("d 2\n1 0\n0 1 7\n")
    assert "line 3" in str(exc.value)
