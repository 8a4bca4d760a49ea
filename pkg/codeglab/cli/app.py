"""命令处理：analyze / chartab / classify / verify-corpus。

退出码：0 成功；1 用法或数据错误；2 定理不变量被破坏或期望不符。
报告按 (group, p) 排序后输出，保证不同 worker 数下的输出逐字节一致。
"""
from __future__ import annotations

import json
import logging
import multiprocessing
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from tqdm import tqdm

from codeglab.algo.character_table import dixon_schneider
from codeglab.algo.classifier import (
    ClassificationReport,
    corollary_c_classify,
    cross_check,
    hereditary_checks,
    theorem_a_classify,
)
from codeglab.algo.constants import CASE_LABELS_A, CASE_LABELS_C
from codeglab.algo.constructors import build_builtin
from codeglab.algo.corpus import CorpusEntry, CorpusRepository, PrimeExpectation
from codeglab.algo.errors import BiconditionalViolation, CodeglabError, InvariantViolation
from codeglab.algo.perm_group import PermGroup
from codeglab.algo.pgr import parse_group_file
from .schemas import ClassifyModel, PairResult, ReportModel, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_VIOLATION = 2


class UsageError(CodeglabError):
    reason = "usage"


def fail(reason: str, detail: Any) -> None:
    print(f"error: {reason}: {detail}", file=sys.stderr)


def to_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, out: Optional[str], to_stdout: bool = True) -> None:
    if to_stdout:
        sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def load_group(config: RunConfig) -> PermGroup:
    if config.builtin is not None:
        return build_builtin(config.builtin)
    return parse_group_file(config.file)


def _report_models(reports: List[ClassificationReport], with_timings: bool) -> List[Dict[str, Any]]:
    ordered = sorted(reports, key=lambda r: (r.group_id, r.p))
    return [ReportModel.from_report(r, with_timings).model_dump(mode="json") for r in ordered]


def analyze(config: RunConfig) -> int:
    G = load_group(config)
    reports = []
    for p in sorted(set(config.primes)):
        report = cross_check(G, p, config.group_id)
        if report.direct_hp:
            hereditary_checks(G, p)
        logger.info("%s p=%d: H_p=%s cases=%s", config.group_id, p, report.direct_hp, report.theorem_a_cases)
        reports.append(report)
    emit(to_json(_report_models(reports, config.timings)), config.out)
    return EXIT_OK


def chartab(config: RunConfig) -> int:
    G = load_group(config)
    G.check_cap()
    emit(dixon_schneider(G).dump(), config.out)
    return EXIT_OK


def classify(config: RunConfig) -> int:
    """只做结构判定，不计算特征标表"""
    G = load_group(config)
    results = []
    for p in sorted(set(config.primes)):
        cases_a = theorem_a_classify(G, p)
        cases_c = corollary_c_classify(G, p, cases_a)
        results.append(
            ClassifyModel(
                group=config.group_id,
                p=p,
                order=G.order,
                cases_a=[c for c in CASE_LABELS_A if c in cases_a],
                cases_c=[c for c in CASE_LABELS_C if c in cases_c],
                params=cases_a,
            ).model_dump(mode="json")
        )
    emit(to_json(results), config.out)
    return EXIT_OK


# ---- verify-corpus ----

_WORKER_GROUPS: Dict[Tuple[str, str], PermGroup] = {}


def _group_for(entry: CorpusEntry, base_dir: Path) -> PermGroup:
    key = (entry.id, str(base_dir))
    if key not in _WORKER_GROUPS:
        _WORKER_GROUPS[key] = entry.build(base_dir)
    return _WORKER_GROUPS[key]


def compare_expectation(report: ClassificationReport, exp: PrimeExpectation) -> List[str]:
    mismatches = []
    if report.direct_hp != exp.direct_hp:
        mismatches.append(f"direct_hp: expected {exp.direct_hp}, got {report.direct_hp}")
    if set(report.theorem_a_cases) != set(exp.cases_a):
        mismatches.append(f"cases_a: expected {sorted(exp.cases_a)}, got {report.theorem_a_cases}")
    if exp.hp_star is not None and report.direct_hp_star != exp.hp_star:
        mismatches.append(f"hp_star: expected {exp.hp_star}, got {report.direct_hp_star}")
    if exp.cases_c is not None and set(report.corollary_c_cases) != set(exp.cases_c):
        mismatches.append(f"cases_c: expected {sorted(exp.cases_c)}, got {report.corollary_c_cases}")
    return mismatches


def verify_pair(task: Tuple[Dict[str, Any], str, int, bool]) -> Dict[str, Any]:
    """worker 入口：一个 (条目, 素数)；返回可 pickle 的 dict"""
    entry_data, base_dir, p, with_timings = task
    entry = CorpusEntry.model_validate(entry_data)
    result = PairResult(group=entry.id, p=p, status="pass")
    try:
        G = _group_for(entry, Path(base_dir))
        report = cross_check(G, p, entry.id)
        result.report = ReportModel.from_report(report, with_timings)
        if report.direct_hp:
            result.hereditary = hereditary_checks(G, p).checked
        result.mismatches = compare_expectation(report, entry.expectation(p))
        if result.mismatches:
            result.status = "mismatch"
    except BiconditionalViolation as exc:
        result.status = "violation"
        result.error = f"{exc.reason}: {exc} {json.dumps(exc.diff, sort_keys=True)}"
    except InvariantViolation as exc:
        result.status = "violation"
        result.error = f"{exc.reason}: {exc}"
    except CodeglabError as exc:
        result.status = "error"
        result.error = f"{exc.reason}: {exc}"
    return result.model_dump(mode="json")


def _run_tasks(tasks: List[Tuple[Dict[str, Any], str, int, bool]], config: RunConfig) -> List[Dict[str, Any]]:
    results: List[Dict[str, Any]] = []
    bar = tqdm(total=len(tasks), desc="corpus", file=sys.stderr, disable=not config.progress)
    pool = multiprocessing.Pool(config.workers) if config.workers > 1 else None
    try:
        stream = pool.imap(verify_pair, tasks) if pool is not None else map(verify_pair, tasks)
        for res in stream:
            results.append(res)
            bar.update(1)
            logger.info("%s p=%d: %s", res["group"], res["p"], res["status"])
            if config.fail_fast and res["status"] != "pass":
                break
    finally:
        bar.close()
        if pool is not None:
            pool.terminate()
            pool.join()
    return results


def _matrix_line(res: Dict[str, Any], with_timings: bool) -> str:
    report = res.get("report") or {}
    cases_a = ",".join(report.get("cases_a") or []) or "-"
    cases_c = ",".join(report.get("cases_c") or []) or "-"
    line = f"{res['status'].upper():<9} {res['group']:<18} p={res['p']:<3} A={cases_a:<6} C={cases_c:<6}"
    if with_timings and report.get("timings"):
        line += f" {sum(report['timings'].values()):8.3f}s"
    if res.get("mismatches"):
        line += "  " + "; ".join(res["mismatches"])
    if res.get("error"):
        line += "  " + res["error"]
    return line.rstrip()


def verify_corpus(config: RunConfig) -> int:
    manifest = CorpusRepository.get(config.manifest)
    tasks = [
        (entry.model_dump(mode="json"), str(manifest.base_dir), exp.p, config.timings)
        for entry in sorted(manifest.entries, key=lambda e: e.id)
        for exp in sorted(entry.primes, key=lambda e: e.p)
    ]
    if not tasks:
        raise UsageError("empty corpus")
    results = sorted(_run_tasks(tasks, config), key=lambda r: (r["group"], r["p"]))

    for res in results:
        print(_matrix_line(res, config.timings))
    counts = {status: sum(r["status"] == status for r in results) for status in ("pass", "mismatch", "violation", "error")}
    print(f"{len(results)}/{len(tasks)} pairs: " + ", ".join(f"{v} {k}" for k, v in counts.items()))
    if config.out:
        emit(to_json(results), config.out, to_stdout=False)

    if counts["violation"] or counts["mismatch"]:
        return EXIT_VIOLATION
    if counts["error"]:
        return EXIT_DATA
    return EXIT_OK


_COMMANDS = {
    "analyze": analyze,
    "chartab": chartab,
    "classify": classify,
    "verify-corpus": verify_corpus,
}


def run(config: RunConfig) -> int:
    """执行命令并把异常映射为退出码与一行 ``error: <reason>: <detail>``"""
    try:
        return _COMMANDS[config.command](config)
    except InvariantViolation as exc:
        fail(exc.reason, exc)
        return EXIT_VIOLATION
    except CodeglabError as exc:
        fail(exc.reason, exc)
        return EXIT_DATA
