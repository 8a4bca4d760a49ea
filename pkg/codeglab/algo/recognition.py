from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Any, Dict, List, Optional, Tuple, Type

from sympy import factorint

from .conjugacy import conjugacy_classes, spectrum
from .constants import ENUMERATION_CAP, TITS_GROUP_ORDER
from .perm_group import PermGroup, center, derived_series, derived_subgroup, quotient
from .structure import (
    is_elementary_abelian,
    is_perfect,
    is_quasisimple,
    is_simple,
    nonidentity_orbits,
    p_core,
)

logger = logging.getLogger(__name__)

OTHER = "other"


@dataclass(frozen=True)
class Fingerprint:
    order: int
    class_size_multiset: Tuple[int, ...]
    element_order_spectrum: Tuple[int, ...]
    is_perfect: bool
    center_order: int
    derived_length_or_bottom: int  # 可解时为导出长度，否则为完全核的阶


def fingerprint(G: PermGroup) -> Fingerprint:
    def build() -> Fingerprint:
        cd = conjugacy_classes(G)
        series = derived_series(G)
        bottom = series[-1].order
        return Fingerprint(
            order=G.order,
            class_size_multiset=tuple(sorted(cd.sizes)),
            element_order_spectrum=tuple(spectrum(G)),
            is_perfect=is_perfect(G),
            center_order=center(G).order,
            derived_length_or_bottom=len(series) - 1 if bottom == 1 else bottom,
        )

    return G.memo("fingerprint", build)


def _is_prime_power(q: int) -> bool:
    return q >= 2 and len(factorint(q)) == 1


def sl2_order(q: int) -> int:
    return q * (q * q - 1)


def psl2_order(q: int) -> int:
    return sl2_order(q) // gcd(2, q - 1)


def _cube_root_bound(n: int) -> int:
    q = 2
    while q ** 3 <= 2 * n:
        q += 1
    return q + 1


def psl2_parameters(order: int) -> List[int]:
    """满足 |PSL_2(q)| = order 的全部素数幂 q ≥ 4（升序）"""
    return [q for q in range(4, _cube_root_bound(order)) if _is_prime_power(q) and psl2_order(q) == order]


def sl2_parameters(order: int) -> List[int]:
    return [q for q in range(2, _cube_root_bound(order)) if _is_prime_power(q) and sl2_order(q) == order]


# ---- 参数化谓词 ----

def is_sl2_3(G: PermGroup) -> bool:
    """阶 24、中心阶 2、导出子群为 Q_8（唯一的对合）"""
    if G.order != 24 or center(G).order != 2:
        return False
    D = derived_subgroup(G)
    if D.order != 8:
        return False
    involutions = [x for x in D.permutations() if x.order() == 2]
    return len(involutions) == 1


def is_psl2(G: PermGroup, q: int) -> bool:
    if q < 4 or not _is_prime_power(q):
        return False
    return G.order == psl2_order(q) and is_simple(G)


def is_sl2(G: PermGroup, q: int) -> bool:
    if not _is_prime_power(q) or G.order != sl2_order(q):
        return False
    if q == 3:
        return is_sl2_3(G)
    if q % 2 == 0:
        return is_psl2(G, q)
    return q >= 5 and is_quasisimple(G) and center(G).order == 2


def is_asl2_3(G: PermGroup) -> bool:
    if G.order != 216:
        return False
    V = p_core(G, 3)
    if V.order != 9 or not is_elementary_abelian(V, 3):
        return False
    if not nonidentity_orbits(G, V).transitive:
        return False
    Q, _ = quotient(G, V)
    return is_sl2_3(Q)


# ---- 注册表 ----

class NamedGroupRecognizer(ABC):
    name: str = ""
    priority: int = 100
    needs_enumeration: bool = True

    @abstractmethod
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        """匹配则返回参数字典（可为空），否则 None"""
        raise NotImplementedError


_RECOGNIZER_REGISTRY: Dict[str, Type[NamedGroupRecognizer]] = {}


def named_group(name: str, priority: int = 100):
    """使用装饰器注册命名群识别器，priority 越小越先尝试。

    示例:
        @named_group("M_11", priority=10)
        class Mathieu11Recognizer(NamedGroupRecognizer):
            ...
    """

    def decorator(cls: Type[NamedGroupRecognizer]) -> Type[NamedGroupRecognizer]:
        if not issubclass(cls, NamedGroupRecognizer):
            raise TypeError("注册对象必须继承 NamedGroupRecognizer")
        if name in _RECOGNIZER_REGISTRY:
            raise ValueError(f"识别器已存在: {name}")
        cls.name = name
        cls.priority = int(priority)
        _RECOGNIZER_REGISTRY[name] = cls
        return cls

    return decorator


def registered_names() -> List[str]:
    return [cls.name for cls in _ordered()]


def _ordered() -> List[Type[NamedGroupRecognizer]]:
    return sorted(_RECOGNIZER_REGISTRY.values(), key=lambda cls: (cls.priority, cls.name))


@named_group("TitsPrime", priority=5)
class TitsRecognizer(NamedGroupRecognizer):
    needs_enumeration = False

    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        if G.order != TITS_GROUP_ORDER or G.is_abelian():
            return None
        return {} if is_perfect(G) else None


@named_group("M_11", priority=10)
class Mathieu11Recognizer(NamedGroupRecognizer):
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        if G.order != 7920 or not is_simple(G):
            return None
        return {} if conjugacy_classes(G).count == 10 else None


@named_group("PSL_3(4)", priority=20)
class PSL34Recognizer(NamedGroupRecognizer):
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        if G.order != 20160 or not is_simple(G):
            return None
        return {} if 15 not in spectrum(G) else None


@named_group("PSL_2(q)", priority=30)
class PSL2Recognizer(NamedGroupRecognizer):
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        qs = psl2_parameters(G.order)
        if not qs or not is_simple(G):
            return None
        return {"q": qs}


@named_group("SL_2(q)", priority=40)
class SL2Recognizer(NamedGroupRecognizer):
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        qs = [q for q in sl2_parameters(G.order) if q >= 4 and is_sl2(G, q)]
        return {"q": qs} if qs else None


@named_group("SL_2(3)", priority=50)
class SL23Recognizer(NamedGroupRecognizer):
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        return {} if is_sl2_3(G) else None


@named_group("ASL_2(3)", priority=60)
class ASL23Recognizer(NamedGroupRecognizer):
    def match(self, G: PermGroup) -> Optional[Dict[str, Any]]:
        return {} if is_asl2_3(G) else None


@dataclass(frozen=True)
class Recognition:
    name: str
    params: Dict[str, Any] = field(default_factory=dict)


def recognize_all(G: PermGroup) -> List[Recognition]:
    """按优先级返回全部匹配的名字"""
    out = []
    for cls in _ordered():
        if cls.needs_enumeration and G.order > ENUMERATION_CAP:
            continue
        params = cls().match(G)
        if params is not None:
            out.append(Recognition(cls.name, params))
    return out


def recognize_named(G: PermGroup) -> Recognition:
    for cls in _ordered():
        if cls.needs_enumeration and G.order > ENUMERATION_CAP:
            continue
        params = cls().match(G)
        if params is not None:
            logger.debug("|G|=%d recognized as %s %s", G.order, cls.name, params)
            return Recognition(cls.name, params)
    return Recognition(OTHER)


def is_named(G: PermGroup, name: str) -> bool:
    cls = _RECOGNIZER_REGISTRY[name]
    if cls.needs_enumeration and G.order > ENUMERATION_CAP:
        return False
    return cls().match(G) is not None


def square_root_prime_power(n: int) -> Optional[int]:
    q = isqrt(n)
    return q if q * q == n and _is_prime_power(q) else None
