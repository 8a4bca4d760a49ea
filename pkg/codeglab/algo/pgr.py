""".pgr 置换生成元文本格式。

第 1 行为次数 n；可选头部 ``#! order=<int>`` / ``#! simple=<true|false>``；
之后每个非注释行是 n 个以空格分隔的 1 基像；``#`` 开始注释；
换行为 LF，除文件末尾单个 LF 外不容忍多余空白。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .errors import GroupDataError, PgrFormatError
from .perm_group import PermGroup
from .permutation import Permutation
from .structure import is_simple

logger = logging.getLogger(__name__)


class PgrMalformedLine(PgrFormatError):
    reason = "pgr-malformed"


class PgrImageOutOfRange(PgrFormatError):
    reason = "pgr-out-of-range"


class PgrDuplicateImage(PgrFormatError):
    reason = "pgr-duplicate-image"


class PgrAssertionFailed(PgrFormatError):
    reason = "pgr-assertion"


_HEADER_KEYS = ("order", "simple")


@dataclass
class PgrDocument:
    degree: int
    generators: List[List[int]]
    headers: Dict[str, str] = field(default_factory=dict)
    header_lines: Dict[str, int] = field(default_factory=dict)


def _parse_int(token: str, line_number: int) -> int:
    if not (token.isascii() and token.isdigit()):
        raise PgrMalformedLine(f"不是十进制整数: {token!r}", line_number)
    return int(token)


def parse_document(text: str) -> PgrDocument:
    if "\r" in text:
        raise PgrMalformedLine("只允许 LF 换行", 1)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise PgrMalformedLine("空文件", 1)
    for number, line in enumerate(lines, start=1):
        if line != line.rstrip():
            raise PgrMalformedLine("行尾有多余空白", number)
        if not line:
            raise PgrMalformedLine("空行", number)
    degree = _parse_int(lines[0], 1)
    if degree < 1:
        raise PgrMalformedLine("次数必须为正整数", 1)

    doc = PgrDocument(degree=degree, generators=[])
    for number, line in enumerate(lines[1:], start=2):
        if line.startswith("#!"):
            key, sep, value = line[2:].strip().partition("=")
            if not sep or key not in _HEADER_KEYS or not value:
                raise PgrMalformedLine(f"无法识别的头部: {line!r}", number)
            doc.headers[key] = value
            doc.header_lines[key] = number
            continue
        body = line.split("#", 1)[0].rstrip()
        if not body:
            continue
        tokens = body.split(" ")
        if len(tokens) != degree:
            raise PgrMalformedLine(f"需要 {degree} 个像，得到 {len(tokens)}", number)
        images = [_parse_int(tok, number) for tok in tokens]
        seen = set()
        for image in images:
            if not 1 <= image <= degree:
                raise PgrImageOutOfRange(f"像 {image} 超出 1..{degree}", number)
            if image in seen:
                raise PgrDuplicateImage(f"像 {image} 重复出现", number)
            seen.add(image)
        doc.generators.append(images)
    return doc


def _check_headers(doc: PgrDocument, G: PermGroup) -> None:
    if "order" in doc.headers:
        line = doc.header_lines["order"]
        expected = _parse_int(doc.headers["order"], line)
        if G.order != expected:
            raise PgrAssertionFailed(f"order={expected} 但生成的群阶为 {G.order}", line)
    if "simple" in doc.headers:
        line = doc.header_lines["simple"]
        flag = doc.headers["simple"]
        if flag not in ("true", "false"):
            raise PgrMalformedLine(f"simple 只能是 true/false: {flag!r}", line)
        if is_simple(G) != (flag == "true"):
            raise PgrAssertionFailed(f"simple={flag} 与计算结果不符", line)


def parse_group_text(text: str) -> PermGroup:
    doc = parse_document(text)
    G = PermGroup(doc.degree, [Permutation.from_one_based(g) for g in doc.generators])
    _check_headers(doc, G)
    return G


def parse_group_file(path: Union[str, Path]) -> PermGroup:
    path = Path(path)
    logger.debug("reading %s", path)
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise GroupDataError(f"file not found: {path}") from None
    except OSError as exc:
        raise GroupDataError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise PgrMalformedLine("不是合法的 UTF-8", data.count(b"\n", 0, exc.start) + 1) from None
    return parse_group_text(text)


def serialize_group(G: PermGroup, headers: Optional[List[Tuple[str, str]]] = None) -> str:
    lines = [str(G.degree)]
    for key, value in headers or []:
        lines.append(f"#! {key}={value}")
    lines.extend(" ".join(map(str, g.one_based())) for g in G.generators)
    return "\n".join(lines) + "\n"
