from __future__ import annotations

from functools import total_ordering
from math import lcm
from typing import Iterable, List, Sequence, Tuple

from .errors import GroupDataError

Images = Tuple[int, ...]


def compose(a: Images, b: Images) -> Images:
    """先作用 a 再作用 b（0 基像数组）"""
    return tuple(map(b.__getitem__, a))


def invert(a: Images) -> Images:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def identity(degree: int) -> Images:
    return tuple(range(degree))


def element_order(a: Images) -> int:
    """各轮换长度的最小公倍数"""
    seen = [False] * len(a)
    order = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        order = lcm(order, length)
    return order


@total_ordering
class Permutation:
    """{1..n} 上的置换（值对象风格），内部保存 0 基像数组。

    乘法约定：``p * q`` 表示先作用 p 再作用 q，即 i^(pq) = (i^p)^q。
    比较按像数组字典序，用于挑选规范代表元。
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]) -> None:
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise GroupDataError(f"像数组不是双射: {[i + 1 for i in images]}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Permutation is immutable")

    def __reduce__(self):
        return (Permutation, (self.images,))

    @classmethod
    def _trusted(cls, images: Images) -> "Permutation":
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        return cls([i - 1 for i in images])

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """由 1 基轮换构造，例如 ``from_cycles(4, [(1, 2, 3, 4)])``"""
        images = list(range(degree))
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    raise GroupDataError(f"轮换中的点 {point} 超出 1..{degree}")
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a - 1] = b - 1
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(identity(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def one_based(self) -> List[int]:
        return [i + 1 for i in self.images]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise GroupDataError(f"次数不一致: {self.degree} != {other.degree}")
        return Permutation._trusted(compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation._trusted(invert(self.images))

    def __pow__(self, k: int) -> "Permutation":
        base = self.images if k >= 0 else invert(self.images)
        k = abs(k)
        result = identity(self.degree)
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return Permutation._trusted(result)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """self^g = g^-1 self g"""
        return g.inverse() * self * g

    def commutator(self, other: "Permutation") -> "Permutation":
        """[a, b] = a^-1 b^-1 a b"""
        return self.inverse() * other.inverse() * self * other

    def order(self) -> int:
        return element_order(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """非平凡轮换（1 基）"""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start + 1]
            seen.add(start)
            j = self.images[start]
            while j != start:
                seen.add(j)
                cycle.append(j + 1)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"
