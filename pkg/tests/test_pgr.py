from __future__ import annotations

import pytest

from codeglab.algo.corpus import DATA_DIR
from codeglab.algo.errors import GroupDataError, PgrFormatError
from codeglab.algo.pgr import (
    PgrAssertionFailed,
    PgrDuplicateImage,
    PgrImageOutOfRange,
    PgrMalformedLine,
    parse_document,
    parse_group_file,
    parse_group_text,
    serialize_group,
)

S3 = "3\n# S_3 on three points\n2 1 3\n2 3 1\n"


def test_parse_s3():
    G = parse_group_text(S3)
    assert G.degree == 3
    assert G.order == 6
    assert len(G.generators) == 2


def test_trailing_comment_and_headers():
    doc = parse_document("3\n#! order=6\n2 1 3 # a transposition\n2 3 1\n")
    assert doc.headers == {"order": "6"}
    assert doc.header_lines == {"order": 2}
    assert doc.generators == [[2, 1, 3], [2, 3, 1]]


def test_degree_only_is_trivial():
    assert parse_group_text("4\n").order == 1


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("3\n1 1 3\n", PgrDuplicateImage, 2),
        ("3\n2 1 3\n1 2 4\n", PgrImageOutOfRange, 3),
        ("3\n2 1\n", PgrMalformedLine, 2),
        ("3\n2 1 3 \n", PgrMalformedLine, 2),
        ("3\r\n2 1 3\r\n", PgrMalformedLine, 1),
        ("3\n\n2 1 3\n", PgrMalformedLine, 2),
        ("3\n2 x 3\n", PgrMalformedLine, 2),
        ("3\n2 1 ³\n", PgrMalformedLine, 2),
        ("3\n２ 1 3\n", PgrMalformedLine, 2),
        ("３\n", PgrMalformedLine, 1),
        ("3\n2  1 3\n", PgrMalformedLine, 2),
        ("0\n", PgrMalformedLine, 1),
        ("", PgrMalformedLine, 1),
        ("3\n#! colour=red\n", PgrMalformedLine, 2),
    ],
)
def test_format_errors_carry_line_numbers(text, error, line):
    with pytest.raises(error) as info:
        parse_group_text(text)
    assert isinstance(info.value, PgrFormatError)
    assert info.value.line_number == line
    assert str(info.value).startswith(f"line {line}: ")


def test_header_assertions():
    assert parse_group_text("3\n#! order=6\n#! simple=false\n2 1 3\n2 3 1\n").order == 6
    with pytest.raises(PgrAssertionFailed) as info:
        parse_group_text("3\n#! order=3\n2 1 3\n2 3 1\n")
    assert info.value.line_number == 2
    with pytest.raises(PgrAssertionFailed):
        parse_group_text("3\n#! simple=true\n2 1 3\n2 3 1\n")
    with pytest.raises(PgrMalformedLine):
        parse_group_text("3\n#! simple=yes\n2 1 3\n")


def test_serialize_round_trip():
    G = parse_group_text(S3)
    text = serialize_group(G, [("order", "6")])
    assert text == "3\n#! order=6\n2 1 3\n2 3 1\n"
    H = parse_group_text(text)
    assert H.order == 6
    assert [g.one_based() for g in H.generators] == [g.one_based() for g in G.generators]


def test_parse_file(tmp_path):
    path = tmp_path / "s3.pgr"
    path.write_text(S3, encoding="utf-8")
    assert parse_group_file(path).order == 6
    assert parse_group_file(DATA_DIR / "wreath_c3_c3.pgr").order == 81


def test_parse_file_rejects_bad_utf8(tmp_path):
    path = tmp_path / "latin1.pgr"
    path.write_bytes(b"3\n# caf\xe9\n2 1 3\n")
    with pytest.raises(PgrMalformedLine) as info:
        parse_group_file(path)
    assert info.value.line_number == 2


def test_parse_file_unreadable(tmp_path):
    with pytest.raises(GroupDataError, match="file not found"):
        parse_group_file(tmp_path / "absent.pgr")
    with pytest.raises(GroupDataError, match="cannot read"):
        parse_group_file(tmp_path)
