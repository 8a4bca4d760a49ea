from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from .constants import CASE_LABELS_A, CASE_LABELS_C
from .constructors import build_builtin
from .errors import GroupDataError
from .perm_group import PermGroup
from .pgr import parse_group_file

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_MANIFEST = DATA_DIR / "corpus.json"

Provenance = Literal["LITERATURE", "DERIVED", "TRIVIAL"]


class PrimeExpectation(BaseModel):
    p: int = Field(..., ge=2)
    direct_hp: bool
    cases_a: List[str] = Field(default_factory=list)
    hp_star: Optional[bool] = Field(None, description="H_p* 的期望值；为空则不检查")
    cases_c: Optional[List[str]] = None
    provenance: Provenance = "DERIVED"

    @model_validator(mode="after")
    def _check_labels(self) -> "PrimeExpectation":
        unknown = [c for c in self.cases_a if c not in CASE_LABELS_A]
        unknown += [c for c in self.cases_c or [] if c not in CASE_LABELS_C]
        if unknown:
            raise ValueError(f"未知的情形标签: {unknown}")
        if self.direct_hp != bool(self.cases_a):
            raise ValueError(f"p={self.p}: direct_hp 与 cases_a 的期望自相矛盾")
        return self


class CorpusEntry(BaseModel):
    id: str
    builtin: Optional[str] = Field(None, description="内置构造器，例如 symmetric:4")
    file: Optional[str] = Field(None, description=".pgr 文件路径，相对清单所在目录")
    primes: List[PrimeExpectation]
    slow: bool = False

    @model_validator(mode="after")
    def _check_source(self) -> "CorpusEntry":
        if (self.builtin is None) == (self.file is None):
            raise ValueError(f"{self.id}: builtin 与 file 必须恰好给出一个")
        if not self.primes:
            raise ValueError(f"{self.id}: 至少需要一个素数")
        return self

    def build(self, base_dir: Path = DATA_DIR) -> PermGroup:
        if self.builtin is not None:
            return build_builtin(self.builtin)
        path = base_dir / self.file
        if not path.is_file():
            raise GroupDataError(f"{self.id}: 找不到生成元文件 {path}")
        return parse_group_file(path)

    def expectation(self, p: int) -> PrimeExpectation:
        for exp in self.primes:
            if exp.p == p:
                return exp
        raise KeyError(p)


class CorpusManifest(BaseModel):
    entries: List[CorpusEntry]
    base_dir: Path = DATA_DIR

    def pairs(self) -> List[tuple]:
        return sorted((entry.id, exp.p) for entry in self.entries for exp in entry.primes)

    def entry(self, entry_id: str) -> CorpusEntry:
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        raise KeyError(entry_id)


class CorpusRepository:
    """语料清单仓库（按路径缓存，单例风格）"""

    _instances: Dict[str, CorpusManifest] = {}

    @classmethod
    def get(cls, manifest: str | os.PathLike | None = None) -> CorpusManifest:
        path = Path(manifest or os.getenv("CODEGLAB_MANIFEST") or DEFAULT_MANIFEST).resolve()
        key = str(path)
        if key not in cls._instances:
            cls._instances[key] = load_manifest(path)
        return cls._instances[key]

    @classmethod
    def clear(cls) -> None:
        cls._instances.clear()


def load_manifest(path: str | os.PathLike) -> CorpusManifest:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise GroupDataError(f"找不到语料清单: {path}") from None
    except json.JSONDecodeError as exc:
        raise GroupDataError(f"语料清单不是合法 JSON: {path}: {exc}") from None
    except UnicodeDecodeError:
        raise GroupDataError(f"语料清单不是合法的 UTF-8: {path}") from None
    if not isinstance(data, dict):
        raise GroupDataError(f"语料清单顶层必须是对象: {path}")
    try:
        manifest = CorpusManifest(entries=data.get("entries", []), base_dir=path.parent)
    except ValidationError as exc:
        raise GroupDataError(f"语料清单格式错误: {exc.errors()[0]['msg']}") from None
    ids = [entry.id for entry in manifest.entries]
    if len(set(ids)) != len(ids):
        raise GroupDataError("语料清单中存在重复的 id")
    logger.debug("loaded %d corpus entries from %s", len(ids), path)
    return manifest
