"""
命令处理函数

每个 *_validated 处理函数接收已加载的代数和参数字典，返回 CommandResult；
run_command 负责读文件、计时、异常到退出码的映射以及报告信封的组装。
"""

import json
import logging
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable, Optional

from .services.algebra import Algebra, is_lie_superalgebra, validate
from .services.corpus import build_corpus, theorem_family
from .services.decomposer import CheckResult, decompose, simple_implies_connected
from .services.fileformat import dump_algebra, input_digest, load_algebra
from .services.idealkit import (
    center,
    frak_I,
    frak_I_support_by_parity,
    is_tight,
    lie_annihilator,
    lie_annihilator_labels,
    o_pair_span,
    simplicity_oracle,
)
from .services.maxlen import (
    I_PART,
    NOT_I_PART,
    all_neg_I_connected,
    frakI_partition,
    is_maximal_length,
    is_S_multiplicative,
    neg_I_connected,
    property_checks,
    proposition_trichotomy,
    require_maximal_length,
    theorem_simplicity_check,
)
from .services.supportgraph import (
    SupportSymbol,
    connection_classes,
    is_connected,
    star,
    support,
)
from .utils.errors import (
    AlgebraFileError,
    InternalInconsistencyError,
    PreconditionError,
    SetGradError,
)
from .utils.config import get_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_INCONSISTENT = 3

MODES = ("oracle", "theorem", "both")


@dataclass
class CommandResult:
    results: dict
    checks: list = dc_field(default_factory=list)
    exit_code: int = EXIT_OK
    success: bool = True


def _span(alg: Algebra, space) -> dict:
    return {"dim": space.dim, "basis": [alg.format_vector(r) for r in space.rows]}


def _exit_for_checks(checks: list) -> int:
    return EXIT_INCONSISTENT if any(c.failed for c in checks) else EXIT_OK


# ========== 单项命令 ==========

def validate_validated(alg: Algebra, args: dict) -> CommandResult:
    report = validate(alg)
    return CommandResult(
        report.to_dict(), [], EXIT_OK if report.valid else EXIT_DOMAIN, report.valid
    )


def support_validated(alg: Algebra, args: dict) -> CommandResult:
    sets = support(alg)
    results = sets.to_dict()
    results["distinguished"] = alg.distinguished
    results["cells"] = [
        {"label": label, "parity": parity, "dim": len(idx)}
        for (label, parity), idx in alg.cells.items()
    ]
    return CommandResult(results)


def star_validated(alg: Algebra, args: dict) -> CommandResult:
    symbols = args.get("symbols") or []
    if len(symbols) != 2:
        raise PreconditionError("star 需要两个符号，例如: star a b~")
    x, y = (SupportSymbol.parse(s) for s in symbols)
    for s in (x, y):
        if s.base not in alg.labels:
            raise PreconditionError(f"{s.base!r} 不在支撑集中")
    return CommandResult({"x": str(x), "y": str(y), "star": sorted(star(alg, x, y))})


def classes_validated(alg: Algebra, args: dict) -> CommandResult:
    classes = connection_classes(alg)
    results: dict = {"classes": [c.to_dict() for c in classes], "witnesses": []}
    for c in classes:
        for member in c.members[1:]:
            chain = is_connected(alg, c.representative, member)
            results["witnesses"].append({
                "from": c.representative,
                "to": member,
                "chain": None if chain is None else [str(s) for s in chain],
            })
    pair = args.get("symbols") or []
    if len(pair) == 2:
        chain = is_connected(alg, pair[0], pair[1])
        results["query"] = {
            "from": pair[0],
            "to": pair[1],
            "connected": chain is not None,
            "chain": None if chain is None else [str(s) for s in chain],
        }
    return CommandResult(results)


def decompose_validated(alg: Algebra, args: dict) -> CommandResult:
    report = decompose(alg)
    checks = list(report.checks)
    return CommandResult(report.to_dict(alg), checks, _exit_for_checks(checks))


def frak_i_validated(alg: Algebra, args: dict) -> CommandResult:
    ideal = frak_I(alg)
    by_parity = frak_I_support_by_parity(alg)
    char_two = alg.field.characteristic == 2
    skew = is_lie_superalgebra(alg)
    checks = [CheckResult(
        "I_zero_iff_skew_supersymmetric", not char_two, ideal.is_zero == skew,
        f"dim 𝕴 = {ideal.dim}, 超反对称 = {skew}",
    )]
    results = {
        "frak_I": ideal.to_dict(alg),
        "support_even": sorted(by_parity[0]),
        "support_odd": sorted(by_parity[1]),
        "skew_supersymmetric": skew,
        "characteristic_two": char_two,
    }
    return CommandResult(results, checks, _exit_for_checks(checks))


def center_validated(alg: Algebra, args: dict) -> CommandResult:
    return CommandResult({"center": _span(alg, center(alg))})


def lie_annihilator_validated(alg: Algebra, args: dict) -> CommandResult:
    include_o = args.get("include_o", True)
    return CommandResult({
        "include_o": include_o,
        "quantified_labels": list(lie_annihilator_labels(alg, include_o)),
        "lie_annihilator": _span(alg, lie_annihilator(alg, include_o)),
    })


def tight_validated(alg: Algebra, args: dict) -> CommandResult:
    return CommandResult({
        "distinguished": alg.distinguished,
        "L_o": _span(alg, alg.distinguished_component),
        "o_pair_span": _span(alg, o_pair_span(alg)),
        "tight": is_tight(alg),
    })


def maxlen_validated(alg: Algebra, args: dict) -> CommandResult:
    if not is_maximal_length(alg):
        return CommandResult({"maximal_length": False})
    include_o = args.get("include_o", True)
    allow_tilde = args.get("allow_tilde", False)
    part = frakI_partition(alg)
    connectivity = {}
    for upsilon in (I_PART, NOT_I_PART):
        ok, bad = all_neg_I_connected(alg, upsilon, allow_tilde, part)
        connectivity[upsilon] = {
            "all_connected": ok,
            "disconnected": None if bad is None else [f"{a}^{i}" for a, i in bad],
        }
    results: dict = {
        "maximal_length": True,
        "partition": part.to_dict(),
        "allow_tilde": allow_tilde,
        "connectivity": connectivity,
    }
    pair = args.get("symbols") or []
    if len(pair) == 2:
        (a, i), (b, j) = (_cell_arg(s) for s in pair)
        chain = neg_I_connected(alg, a, i, b, j, allow_tilde)
        results["query"] = {
            "from": pair[0],
            "to": pair[1],
            "connected": chain is not None,
            "chain": None if chain is None else [f"{r}^{k}" for r, k in chain],
        }
    checks = property_checks(alg, include_o, allow_tilde)
    return CommandResult(results, checks, _exit_for_checks(checks))


def _cell_arg(text: str) -> tuple[str, int]:
    """'a^1' -> ('a', 1)；缺省奇偶性为 0"""
    label, sep, parity = text.rpartition("^")
    if not sep:
        return text, 0
    if parity not in ("0", "1"):
        raise PreconditionError(f"非法奇偶性: {text!r}")
    return label, int(parity)


def s_mult_validated(alg: Algebra, args: dict) -> CommandResult:
    require_maximal_length(alg)
    return CommandResult(is_S_multiplicative(alg).to_dict())


def _trichotomy_section(alg: Algebra, seed: Optional[int]) -> tuple[dict, list]:
    try:
        result = proposition_trichotomy(alg, seed=seed)
    except PreconditionError as e:
        return {"applicable": False, "reason": str(e)}, []
    section = {"applicable": True}
    section.update(result.to_dict(alg))
    return section, list(result.checks)


def simplicity_validated(alg: Algebra, args: dict) -> CommandResult:
    mode = args.get("mode", "both")
    seed = args.get("seed")
    if mode not in MODES:
        raise PreconditionError(f"未知模式: {mode}")
    results: dict = {"mode": mode}
    checks: list = []

    if mode == "theorem":
        require_maximal_length(alg)

    if mode in ("oracle", "both"):
        verdict = simplicity_oracle(alg, seed=seed)
        results["oracle"] = verdict.to_dict(alg)
        classes = connection_classes(alg)
        results["classes"] = [c.to_dict() for c in classes]
        checks.append(simple_implies_connected(alg, verdict, classes))

    if mode in ("theorem", "both"):
        if is_maximal_length(alg):
            theorem = theorem_simplicity_check(alg, seed=seed)
            results["theorem"] = theorem.to_dict(alg)
            checks.append(CheckResult(
                "theorem_biconditional", theorem.applicable, theorem.consistent,
                f"{sum(r.hypotheses_hold for r in theorem.rows)} 组设置满足全部假设",
            ))
            results["small_cardinality"], extra = _trichotomy_section(alg, seed)
            checks.extend(extra)
        else:
            results["theorem"] = {"applicable": False, "reason": "代数不是极大长度的"}

    return CommandResult(results, checks, _exit_for_checks(checks))


def _lie_annihilator_both(alg: Algebra, args: dict) -> CommandResult:
    return CommandResult({
        "include_o": _span(alg, lie_annihilator(alg, True)),
        "exclude_o": _span(alg, lie_annihilator(alg, False)),
    })


def _s_mult_if_maximal(alg: Algebra, args: dict) -> CommandResult:
    if not is_maximal_length(alg):
        return CommandResult({"maximal_length": False})
    return s_mult_validated(alg, args)


# 档案各节的标题与处理函数，按输出顺序
REPORT_SECTIONS: tuple[tuple[str, Callable[[Algebra, dict], CommandResult]], ...] = (
    ("公理: 超 Leibniz 恒等式与分次", validate_validated),
    ("支撑集 𝔖 与 𝔬", support_validated),
    ("连接与连接类 [a]", classes_validated),
    ("理想 𝕴", frak_i_validated),
    ("中心 𝒵(L)", center_validated),
    ("Lie 型零化子 𝒵_Lie(L)", _lie_annihilator_both),
    ("紧性: L_𝔬 = Σ [L_b, L_c]", tight_validated),
    ("极大长度与 ¬𝕴-连接", maxlen_validated),
    ("𝔖-乘性", _s_mult_if_maximal),
    ("分解 L = 𝒰 + Σ I_[a]", decompose_validated),
    ("单纯性", simplicity_validated),
)


def report_validated(alg: Algebra, args: dict) -> CommandResult:
    """完整档案：依次运行每个分析，以数学记号作为各节标题"""
    results: dict = {}
    checks: list = []
    base_args = {k: v for k, v in args.items() if k != "symbols"}
    for header, handler in REPORT_SECTIONS:
        outcome = handler(alg, base_args)
        results[header] = outcome.results
        checks.extend(outcome.checks)
    return CommandResult(results, checks, _exit_for_checks(checks))


# 需要读入代数文件的命令
COMMANDS: dict[str, Callable[[Algebra, dict], CommandResult]] = {
    "validate": validate_validated,
    "support": support_validated,
    "star": star_validated,
    "classes": classes_validated,
    "decompose": decompose_validated,
    "frak-i": frak_i_validated,
    "center": center_validated,
    "lie-annihilator": lie_annihilator_validated,
    "tight": tight_validated,
    "maxlen": maxlen_validated,
    "s-mult": s_mult_validated,
    "simplicity": simplicity_validated,
    "report": report_validated,
}


def _envelope(command: str, digest: Optional[str], outcome: CommandResult, started: float) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "success": outcome.success,
        "exit_code": outcome.exit_code,
        "results": outcome.results,
        "checks": [c.to_dict() for c in outcome.checks],
        "wall_time_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def _failure(command: str, digest: Optional[str], code: int, error: str, detail: str,
             started: float, results: Optional[dict] = None) -> dict:
    outcome = CommandResult(results or {}, [], code, False)
    envelope = _envelope(command, digest, outcome, started)
    envelope["error"] = error
    envelope["detail"] = detail
    return envelope


def run_command(command: str, path: str, args: Optional[dict] = None) -> dict:
    """读入文件并执行命令，返回报告信封（含 exit_code）"""
    args = args or {}
    started = time.perf_counter()
    handler = COMMANDS[command]
    digest = None
    try:
        digest = input_digest(path)
        alg = load_algebra(path)
    except (AlgebraFileError, OSError) as e:
        logger.error(f"解析代数文件失败: {e}")
        return _failure(command, digest, EXIT_PARSE, "代数文件解析失败", str(e), started)

    if command != "validate":
        report = validate(alg)
        if not report.valid:
            return _failure(command, digest, EXIT_DOMAIN, "代数未通过公理校验",
                            ", ".join(report.failed_axioms), started, report.to_dict())

    try:
        outcome = handler(alg, args)
    except InternalInconsistencyError as e:
        logger.warning(f"内部一致性检查失败: {e}")
        return _failure(command, digest, EXIT_INCONSISTENT, "内部一致性检查失败", str(e), started)
    except (SetGradError, ValueError) as e:
        logger.info(f"命令 {command} 的前提条件不满足: {e}")
        return _failure(command, digest, EXIT_DOMAIN, "前提条件不满足", str(e), started)
    except Exception as e:
        logger.error(f"命令 {command} 执行失败: {repr(e)}", exc_info=True)
        return _failure(command, digest, EXIT_DOMAIN, "命令执行失败", str(e), started)
    logger.info(f"命令 {command} 完成, exit = {outcome.exit_code}")
    return _envelope(command, digest, outcome, started)


def generate_corpus(out_dir: str, seed: Optional[int] = None) -> dict:
    """把验收语料和定理族写成代数文件，并写出 manifest.json"""
    started = time.perf_counter()
    out = Path(out_dir)
    try:
        seed = get_settings().corpus_seed if seed is None else seed
        entries = build_corpus(seed) + theorem_family(seed)
    except SetGradError as e:
        logger.error(f"语料生成失败: {e}")
        return _failure("generate", None, EXIT_DOMAIN, "语料生成失败", str(e), started)
    manifest = []
    for entry in entries:
        target = dump_algebra(entry.algebra, out / f"{entry.name}.json")
        manifest.append({
            "name": entry.name,
            "file": target.name,
            "family": entry.spec.family,
            "seed": entry.spec.seed,
            "expected_valid": entry.expected_valid,
        })
    (out / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    results = {"directory": str(out), "count": len(entries), "instances": manifest}
    return _envelope("generate", None, CommandResult(results), started)
