"""
理想分解：类子空间 L_{[a],𝔬}、V_[a]、类理想 L_[a] 以及全局分解 L = 𝒰 + Σ I_[a]
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

from ..utils.errors import InternalInconsistencyError
from .algebra import Algebra, GradedSubspace
from .exactlin import Subspace, complement_in, intersect, sum_spaces, vec_is_zero
from .idealkit import SimplicityVerdict, center, is_ideal, is_tight, o_pair_span
from .supportgraph import ConnectionClass, connection_classes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """一条可适用/成立的检查结果"""

    name: str
    applicable: bool
    holds: bool
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.applicable and not self.holds

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "detail": self.detail,
        }


def class_head(alg: Algebra, cls: ConnectionClass) -> Subspace:
    """L_{[a],𝔬} = span{[L_b, L_c] : b, c ∈ [a]} ∩ L_𝔬"""
    lo = alg.distinguished_component
    if lo.is_zero:
        return alg.zero
    indices = [i for b in cls.members for i in alg.label_indices[b]]
    return intersect(alg.product_span(indices, indices), lo)


def class_body(alg: Algebra, cls: ConnectionClass) -> Subspace:
    """V_[a] = ⊕_{b ∈ [a]} L_b"""
    indices = [i for b in cls.members for i in alg.label_indices[b]]
    return Subspace.coordinate(alg.field, alg.dim, indices)


@dataclass(frozen=True)
class ClassIdeal:
    cls: ConnectionClass
    head: Subspace
    body: GradedSubspace
    total: GradedSubspace

    def to_dict(self, alg: Algebra) -> dict:
        return {
            "class": self.cls.to_dict(),
            "head_dim": self.head.dim,
            "head": [alg.format_vector(r) for r in self.head.rows],
            "body_dim": self.body.dim,
            "total_dim": self.total.dim,
        }


def _is_subalgebra(alg: Algebra, space: Subspace) -> bool:
    return all(space.contains(alg.multiply(u, v)) for u in space.rows for v in space.rows)


def class_ideal(alg: Algebra, cls: ConnectionClass) -> ClassIdeal:
    """L_[a] = L_{[a],𝔬} ⊕ V_[a]，并直接验证子代数与理想性质"""
    head = class_head(alg, cls)
    body = class_body(alg, cls)
    total = sum_spaces(head, body)
    if total.dim != head.dim + body.dim:
        raise InternalInconsistencyError(f"类 {list(cls.members)}: 头部与主体的和不是直和")
    if not _is_subalgebra(alg, total):
        raise InternalInconsistencyError(f"类 {list(cls.members)}: L_[a] 不是子超代数")
    if not is_ideal(alg, total):
        raise InternalInconsistencyError(f"类 {list(cls.members)}: L_[a] 不是理想")
    return ClassIdeal(
        cls,
        head,
        GradedSubspace.from_subspace(alg, body),
        GradedSubspace.from_subspace(alg, total),
    )


def L_S_o(alg: Algebra) -> Subspace:
    """L_{𝔖,𝔬} = (Σ_{b⋆c={𝔬}} [L_b, L_c]) ∩ L_𝔬"""
    return intersect(o_pair_span(alg), alg.distinguished_component)


def _cross_products_vanish(alg: Algebra, first: Subspace, second: Subspace) -> bool:
    for u in first.rows:
        for v in second.rows:
            if not vec_is_zero(alg.multiply(u, v)) or not vec_is_zero(alg.multiply(v, u)):
                return False
    return True


@dataclass(frozen=True)
class DecompositionReport:
    U: Subspace
    ideals: tuple
    L_S_o: Subspace
    direct: bool
    checks: tuple = dc_field(default=())

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)

    @property
    def consistent(self) -> bool:
        return not any(c.failed for c in self.checks)

    def to_dict(self, alg: Algebra) -> dict:
        return {
            "classes": [ci.cls.to_dict() for ci in self.ideals],
            "ideals": [ci.to_dict(alg) for ci in self.ideals],
            "L_S_o_dim": self.L_S_o.dim,
            "U_dim": self.U.dim,
            "U": [alg.format_vector(r) for r in self.U.rows],
            "direct": self.direct,
            "consistent": self.consistent,
            "checks": [c.to_dict() for c in self.checks],
        }


def decompose(alg: Algebra) -> DecompositionReport:
    """L = 𝒰 + Σ I_[a]，𝒰 为 L_{𝔖,𝔬} 在 L_𝔬 中的确定性补空间"""
    classes = connection_classes(alg)
    ideals = [class_ideal(alg, c) for c in classes]
    lso = L_S_o(alg)
    U = complement_in(lso, alg.distinguished_component)

    total = U
    dim_sum = U.dim
    for ci in ideals:
        total = sum_spaces(total, ci.total.total)
        dim_sum += ci.total.dim
    reconstitutes = total == alg.full
    direct = reconstitutes and dim_sum == alg.dim

    cross_ok = True
    cross_detail = ""
    for i, first in enumerate(ideals):
        for second in ideals[i + 1:]:
            if not _cross_products_vanish(alg, first.total.total, second.total.total):
                cross_ok = False
                cross_detail = f"{list(first.cls.members)} × {list(second.cls.members)}"
                break
        if not cross_ok:
            break

    heads = alg.zero
    for ci in ideals:
        heads = sum_spaces(heads, ci.head)

    o_empty = alg.distinguished is None
    centerless_tight = center(alg).is_zero and is_tight(alg)
    checks = (
        CheckResult("sum_reconstitutes_L", True, reconstitutes,
                    f"dim(U) + Σ dim = {dim_sum}, dim L = {alg.dim}"),
        CheckResult("class_ideals_closed", True, True, f"{len(ideals)} 个类理想通过乘法扫描"),
        CheckResult("cross_class_products_vanish", True, cross_ok, cross_detail),
        CheckResult("heads_sum_to_L_S_o", True, heads == lso),
        CheckResult("direct_when_o_empty", o_empty, direct and U.is_zero),
        CheckResult("direct_when_centerless_and_tight", centerless_tight, direct and U.is_zero),
    )
    report = DecompositionReport(U, tuple(ideals), lso, direct, checks)
    if not report.consistent:
        failed = [c.name for c in checks if c.failed]
        logger.warning(f"分解检查失败: {failed}")
    else:
        logger.info(f"分解完成: {len(ideals)} 个类理想, dim U = {U.dim}, direct = {direct}")
    return report


def simple_implies_connected(
    alg: Algebra, verdict: SimplicityVerdict, classes: Optional[list[ConnectionClass]] = None
) -> CheckResult:
    """单纯 ⇒ 𝔖 \\ {𝔬} 只有一个连接类（只检查蕴含方向）"""
    classes = classes if classes is not None else connection_classes(alg)
    applicable = verdict.is_simple
    return CheckResult(
        "simple_implies_single_class", applicable, len(classes) <= 1, f"{len(classes)} 个连接类"
    )
