"""运行验收套件，不一致的实例转储到 findings 目录"""

import argparse
import logging
import sys
import time
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from setgrad_leibniz.services.algebra import is_lie_superalgebra, validate  # noqa: E402
from setgrad_leibniz.services.corpus import build_corpus, theorem_family  # noqa: E402
from setgrad_leibniz.services.decomposer import decompose  # noqa: E402
from setgrad_leibniz.services.fileformat import (  # noqa: E402
    algebra_to_json,
    dump_algebra,
    parse_algebra,
)
from setgrad_leibniz.services.idealkit import (  # noqa: E402
    brute_force_simplicity,
    frak_I,
    simplicity_oracle,
)
from setgrad_leibniz.services.maxlen import (  # noqa: E402
    is_maximal_length,
    proposition_trichotomy,
    theorem_simplicity_check,
)
from setgrad_leibniz.utils.config import get_settings  # noqa: E402
from setgrad_leibniz.utils.errors import PreconditionError, SetGradError  # noqa: E402

logger = logging.getLogger("acceptance")


class Suite:
    def __init__(self, name: str, findings: Path):
        self.name = name
        self.findings = findings
        self.failures: list[str] = []
        self.checked = 0
        self.started = time.perf_counter()

    def fail(self, entry, reason: str) -> None:
        self.failures.append(f"{entry.name}: {reason}")
        dump_algebra(entry.algebra, self.findings / self.name / f"{entry.name}.json")

    def summary(self) -> bool:
        elapsed = time.perf_counter() - self.started
        mark = "✅" if not self.failures else "❌"
        print(f"{mark} {self.name}: {self.checked} 个实例, {len(self.failures)} 个失败 ({elapsed:.2f} s)")
        for line in self.failures[:10]:
            print(f"    - {line}")
        return not self.failures


def suite_axioms(corpus, findings) -> Suite:
    suite = Suite("axioms", findings)
    for entry in corpus:
        suite.checked += 1
        report = validate(entry.algebra)
        if report.valid != entry.expected_valid:
            suite.fail(entry, f"valid = {report.valid}")
        elif not report.valid and not report.violations:
            suite.fail(entry, "拒绝但没有见证")
        round_trip = parse_algebra(algebra_to_json(entry.algebra))
        if round_trip != entry.algebra:
            suite.fail(entry, "序列化往返不一致")
    return suite


def suite_decomposition(valid, findings) -> Suite:
    suite = Suite("decomposition", findings)
    for entry in valid:
        suite.checked += 1
        try:
            report = decompose(entry.algebra)
        except SetGradError as e:
            suite.fail(entry, str(e))
            continue
        failed = [c.name for c in report.checks if c.failed]
        if failed:
            suite.fail(entry, ", ".join(failed))
    return suite


def suite_frak_i(valid, findings) -> Suite:
    suite = Suite("frak_I", findings)
    for entry in valid:
        alg = entry.algebra
        suite.checked += 1
        try:
            ideal = frak_I(alg)
        except SetGradError as e:
            suite.fail(entry, str(e))
            continue
        if alg.field.characteristic != 2 and ideal.is_zero != is_lie_superalgebra(alg):
            suite.fail(entry, "𝕴 = 0 与超反对称性不等价")
    return suite


def suite_oracle(valid, findings) -> Suite:
    suite = Suite("oracle_agreement", findings)
    for entry in valid:
        alg = entry.algebra
        if alg.field.is_rational or len(alg.labels) > 3 or alg.dim > 4:
            continue
        suite.checked += 1
        oracle = simplicity_oracle(alg).is_simple
        try:
            brute = brute_force_simplicity(alg)
        except PreconditionError:
            continue
        if oracle != brute:
            suite.fail(entry, f"oracle = {oracle}, 穷举 = {brute}")
    return suite


def suite_theorem(family, findings) -> Suite:
    suite = Suite("simplicity_theorem", findings)
    applicable = 0
    for entry in family:
        suite.checked += 1
        report = theorem_simplicity_check(entry.algebra)
        applicable += report.applicable
        if not report.consistent:
            suite.fail(entry, "双条件不一致")
    if applicable < 25:
        suite.failures.append(f"满足全部假设的实例只有 {applicable} 个")
    return suite


def suite_small_cardinality(valid, findings) -> Suite:
    suite = Suite("small_cardinality", findings)
    for entry in valid:
        if not is_maximal_length(entry.algebra):
            continue
        try:
            result = proposition_trichotomy(entry.algebra)
        except PreconditionError:
            continue
        suite.checked += 1
        if not result.consistent:
            suite.fail(entry, ", ".join(c.name for c in result.checks if c.failed))
    if suite.checked == 0:
        suite.failures.append("没有实例满足小基数情形的全部前提")
    return suite


def main():
    parser = argparse.ArgumentParser(description="运行验收套件")
    parser.add_argument("--seed", type=int, default=None)
    args = parser.parse_args()
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    findings = Path(settings.findings_dir)
    seed = settings.corpus_seed if args.seed is None else args.seed

    print("🧪 set-graded Leibniz 验收套件")
    print("=" * 50)
    corpus = build_corpus(seed)
    family = theorem_family(seed)
    valid = [e for e in corpus + family if e.expected_valid]
    print(f"📦 语料: {len(corpus)} 个实例, 定理族: {len(family)} 个实例")
    if build_corpus(seed) != corpus:
        print("❌ 语料生成不可复现")
        sys.exit(3)

    suites = [
        suite_axioms(corpus, findings),
        suite_decomposition(valid, findings),
        suite_frak_i(valid, findings),
        suite_oracle(valid, findings),
        suite_theorem(family, findings),
        suite_small_cardinality(valid, findings),
    ]
    ok = all([s.summary() for s in suites])
    print("=" * 50)
    print("✨ 全部通过" if ok else f"⚠️ 存在失败，实例已写入 {findings.absolute()}")
    sys.exit(0 if ok else 3)


if __name__ == "__main__":
    main()
