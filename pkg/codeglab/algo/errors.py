from __future__ import annotations

from typing import Any, Dict, Optional


class CodeglabError(Exception):
    """所有库内错误的基类"""

    reason = "error"


class GroupDataError(CodeglabError, ValueError):
    """生成元、构造参数或输入数据不合法"""

    reason = "data"


class PgrFormatError(GroupDataError):
    """.pgr 文件格式错误，带行号"""

    reason = "pgr"

    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class MembershipError(GroupDataError):
    reason = "membership"


class PreconditionError(CodeglabError, ValueError):
    """前置条件不满足（与谓词返回 False 区分开）"""

    reason = "precondition"


class EnumerationCapExceeded(CodeglabError):
    reason = "cap"

    def __init__(self, order: int, cap: int) -> None:
        super().__init__(f"group order {order} exceeds enumeration cap {cap}")
        self.order = order
        self.cap = cap


class LiftingPrimeNotFound(CodeglabError):
    reason = "lifting-prime"


class InvariantViolation(CodeglabError, AssertionError):
    """内部不变量被破坏：说明有 bug（或反例）"""

    reason = "invariant"


class BiconditionalViolation(InvariantViolation):
    reason = "biconditional"

    def __init__(self, message: str, diff: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.diff = diff or {}
