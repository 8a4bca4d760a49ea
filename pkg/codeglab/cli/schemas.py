from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

from codeglab.algo.classifier import ClassificationReport
from codeglab.algo.corpus import CorpusEntry, PrimeExpectation

Command = Literal["analyze", "chartab", "classify", "verify-corpus"]


class RunConfig(BaseModel):
    command: Command
    builtin: Optional[str] = Field(None, description="内置群，例如 symmetric:4")
    file: Optional[str] = Field(None, description=".pgr 生成元文件")
    primes: List[int] = Field(default_factory=list)
    out: Optional[str] = None
    workers: int = Field(1, ge=1)
    fail_fast: bool = False
    manifest: Optional[str] = None
    timings: bool = False
    progress: bool = False

    @field_validator("primes")
    @classmethod
    def _all_prime(cls, primes: List[int]) -> List[int]:
        for p in primes:
            if not isprime(p):
                raise ValueError(f"prime expected: {p}")
        return primes

    @model_validator(mode="after")
    def _check_source(self) -> "RunConfig":
        if self.command == "verify-corpus":
            return self
        if (self.builtin is None) == (self.file is None):
            raise ValueError("exactly one of --builtin / --file is required")
        if self.command in ("analyze", "classify") and not self.primes:
            raise ValueError("prime expected: at least one --prime")
        return self

    @property
    def group_id(self) -> str:
        return self.builtin if self.builtin is not None else self.file


class ReportModel(BaseModel):
    """单个 (群, 素数) 的报告；字段名与序列化格式保持稳定"""

    group: str
    p: int
    direct_hp: bool
    direct_hp_star: bool
    ti: bool
    cases_a: List[str]
    cases_c: List[str]
    witnesses: Dict[str, Any]
    gcd_set: List[int]
    timings: Optional[Dict[str, float]] = None

    @classmethod
    def from_report(cls, report: ClassificationReport, with_timings: bool = False) -> "ReportModel":
        return cls(
            group=report.group_id,
            p=report.p,
            direct_hp=report.direct_hp,
            direct_hp_star=report.direct_hp_star,
            ti=report.abelian_ti_sylow,
            cases_a=report.theorem_a_cases,
            cases_c=report.corollary_c_cases,
            witnesses=report.witnesses,
            gcd_set=report.gcd_set,
            timings=report.timings if with_timings else None,
        )


class ClassifyModel(BaseModel):
    group: str
    p: int
    order: int
    cases_a: List[str]
    cases_c: List[str]
    params: Dict[str, Any]


class PairResult(BaseModel):
    """verify-corpus 中一个 (条目, 素数) 的结果"""

    group: str
    p: int
    status: Literal["pass", "mismatch", "violation", "error"]
    report: Optional[ReportModel] = None
    mismatches: List[str] = Field(default_factory=list)
    hereditary: List[str] = Field(default_factory=list)
    error: Optional[str] = None


__all__ = [
    "ClassifyModel",
    "CorpusEntry",
    "PairResult",
    "PrimeExpectation",
    "ReportModel",
    "RunConfig",
]
