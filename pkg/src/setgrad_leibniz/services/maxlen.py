"""
极大长度代数：𝕴 划分、¬𝕴-连接、𝔖-乘性以及单纯性刻画的经验验证
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

from ..utils.errors import (
    EndpointMismatchError,
    InternalInconsistencyError,
    NotMaximalLengthError,
    PreconditionError,
)
from .algebra import Algebra
from .decomposer import CheckResult
from .exactlin import intersect, projective_points, sum_spaces
from .idealkit import (
    SimplicityVerdict,
    closure_of,
    frak_I,
    is_tight,
    lie_annihilator,
    simplicity_oracle,
)
from .supportgraph import SupportSymbol, phi, plain, star, tilde

logger = logging.getLogger(__name__)

I_PART = "I"
NOT_I_PART = "notI"

# (include_o, allow_tilde) 的四种组合，按报告顺序
SETTINGS = ((True, False), (True, True), (False, False), (False, True))

Step = tuple[SupportSymbol, int]


def is_maximal_length(alg: Algebra) -> bool:
    """除 𝔬 外每个 L_a^ī 的维数为 0 或 1"""
    return all(
        len(indices) <= 1
        for (label, _), indices in alg.cells.items()
        if label != alg.distinguished
    )


def require_maximal_length(alg: Algebra) -> None:
    if not is_maximal_length(alg):
        wide = [
            f"{label}^{parity}"
            for (label, parity), idx in alg.cells.items()
            if label != alg.distinguished and len(idx) > 1
        ]
        raise NotMaximalLengthError(f"代数不是极大长度的，维数 > 1 的分量: {wide}")


@dataclass(frozen=True)
class FrakIPartition:
    S_I_0: frozenset
    S_I_1: frozenset
    S_notI_0: frozenset
    S_notI_1: frozenset

    def part(self, upsilon: str, parity: int) -> frozenset:
        if upsilon == I_PART:
            return self.S_I_0 if parity == 0 else self.S_I_1
        return self.S_notI_0 if parity == 0 else self.S_notI_1

    @property
    def S_I(self) -> frozenset:
        return self.S_I_0 | self.S_I_1

    @property
    def S_notI(self) -> frozenset:
        return self.S_notI_0 | self.S_notI_1

    def upsilon_of(self, label: str, parity: int) -> Optional[str]:
        if label in self.part(I_PART, parity):
            return I_PART
        if label in self.part(NOT_I_PART, parity):
            return NOT_I_PART
        return None

    def to_dict(self) -> dict:
        return {
            "S_I_0": sorted(self.S_I_0),
            "S_I_1": sorted(self.S_I_1),
            "S_notI_0": sorted(self.S_notI_0),
            "S_notI_1": sorted(self.S_notI_1),
        }


def frakI_partition(alg: Algebra) -> FrakIPartition:
    """按分量是否属于 𝕴 划分 𝔖 \\ {𝔬}（极大长度下是全有或全无）"""
    require_maximal_length(alg)
    ideal = frak_I(alg).total
    sets: dict[tuple[str, int], set[str]] = {
        (u, p): set() for u in (I_PART, NOT_I_PART) for p in (0, 1)
    }
    for (label, parity) in alg.cells:
        if label == alg.distinguished:
            continue
        piece = alg.homogeneous_piece(label, parity)
        inter = intersect(ideal, piece)
        if inter.is_zero:
            sets[(NOT_I_PART, parity)].add(label)
        elif inter == piece:
            sets[(I_PART, parity)].add(label)
        else:
            raise InternalInconsistencyError(f"𝕴 与 L_{label}^{parity} 真相交")
    return FrakIPartition(
        frozenset(sets[(I_PART, 0)]),
        frozenset(sets[(I_PART, 1)]),
        frozenset(sets[(NOT_I_PART, 0)]),
        frozenset(sets[(NOT_I_PART, 1)]),
    )


# ---------------------------------------------------------------- ¬𝕴-connections

def _connecting_symbols(part: FrakIPartition, allow_tilde: bool) -> list[Step]:
    steps: list[Step] = []
    for k in (0, 1):
        for c in sorted(part.part(NOT_I_PART, k)):
            steps.append((plain(c), k))
            if allow_tilde:
                steps.append((tilde(c), k))
    return steps


def _neg_I_search(
    alg: Algebra, part: FrakIPartition, a: str, i: int, upsilon: str, allow_tilde: bool
) -> dict[tuple[str, int], list[Step]]:
    """从 (a, ī) 出发 BFS，返回每个可达 (b, j̄) 的一条 ¬𝕴-连接"""
    steps = _connecting_symbols(part, allow_tilde)
    start = (frozenset({plain(a)}), i)
    parent: dict = {start: None}
    found: dict[tuple[str, int], list[Step]] = {}

    def chain_to(state) -> list[Step]:
        out: list[Step] = []
        while parent[state] is not None:
            state, step = parent[state]
            out.append(step)
        out.append((plain(a), i))
        return out[::-1]

    queue = deque([start])
    while queue:
        state = queue.popleft()
        symbols, p = state
        for r, k in steps:
            image = phi(alg, symbols, r)
            labels = {s.base for s in image if not s.tilded}
            if not labels:
                continue
            q = (p + k) % 2
            if not labels <= part.part(upsilon, q):
                continue
            nxt = (image, q)
            if nxt in parent:
                continue
            parent[nxt] = (state, (r, k))
            queue.append(nxt)
            for b in sorted(labels):
                found.setdefault((b, q), chain_to(nxt))
    return found


def neg_I_connected(
    alg: Algebra, a: str, i: int, b: str, j: int, allow_tilde: bool = False
) -> Optional[list[Step]]:
    """a ∈ 𝔖_Υ^ī 到 b ∈ 𝔖_Υ^j̄ 的 ¬𝕴-连接；a = b 且 ī = j̄ 时返回空链，不存在时返回 None"""
    part = frakI_partition(alg)
    ua = part.upsilon_of(a, i)
    ub = part.upsilon_of(b, j)
    if ua is None or ub is None:
        raise PreconditionError(f"端点 {a}^{i} 或 {b}^{j} 不在 𝔖 \\ {{𝔬}} 的对应分量中")
    if ua != ub:
        raise EndpointMismatchError(f"{a}^{i} ∈ 𝔖_{ua}，{b}^{j} ∈ 𝔖_{ub}")
    if (a, i) == (b, j):
        return []
    return _neg_I_search(alg, part, a, i, ua, allow_tilde).get((b, j))


def all_neg_I_connected(
    alg: Algebra, upsilon: str, allow_tilde: bool = False, part: Optional[FrakIPartition] = None
) -> tuple[bool, Optional[tuple[tuple[str, int], tuple[str, int]]]]:
    """𝔖_Υ 的所有元素两两 ¬𝕴-连接；返回 (是否成立, 第一个不连通的端点对)"""
    part = part if part is not None else frakI_partition(alg)
    for i in (0, 1):
        for a in sorted(part.part(upsilon, i)):
            found = _neg_I_search(alg, part, a, i, upsilon, allow_tilde)
            for j in (0, 1):
                for b in sorted(part.part(upsilon, j)):
                    if (a, i) != (b, j) and (b, j) not in found:
                        return False, ((a, i), (b, j))
    return True, None


# ---------------------------------------------------------------- 𝔖-multiplicativity

@dataclass(frozen=True)
class SMultResult:
    holds: bool
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"holds": self.holds, "counterexample": self.counterexample}


def _attains(alg: Algebra, a: str, i: int, b: str, j: int, c: str, k: int) -> bool:
    """L_a^ī ⊆ [L_b^j̄, L_c^k̄]"""
    target = alg.homogeneous_piece(a, i)
    prod = alg.product_span(alg.cells.get((b, j), ()), alg.cells.get((c, k), ()))
    return target.is_subspace_of(prod)


def _scan(alg: Algebra, condition: int, left: dict, right: dict) -> Optional[dict]:
    for i in (0, 1):
        for j in (0, 1):
            k = (i + j) % 2
            for a in sorted(left[i]):
                for b in sorted(left[j]):
                    for c in sorted(right[k]):
                        for r in (plain(c), tilde(c)):
                            if a not in star(alg, plain(b), r):
                                continue
                            if not _attains(alg, a, i, b, j, c, k):
                                return {
                                    "condition": condition,
                                    "a": a, "i": i, "b": b, "j": j, "r": str(r), "k": k,
                                }
    return None


def is_S_multiplicative(alg: Algebra, part: Optional[FrakIPartition] = None) -> SMultResult:
    """
    条件 1：a, b ∈ 𝔖_¬𝕴，a ∈ b ⋆ r，r ∈ 𝔖^k̄ ∪̇ 𝔖̃^k̄ ⇒ L_a^ī ⊆ [L_b^j̄, L_{r 的底}^k̄]
    条件 2：c, d ∈ 𝔖_𝕴，r 只取 𝔖_¬𝕴 ∪̇ 𝔖̃_¬𝕴
    只考察 ī = j̄ + k̄ 的奇偶组合
    """
    part = part if part is not None else frakI_partition(alg)
    support_by_parity = {
        p: frozenset(label for (label, q) in alg.cells if q == p) for p in (0, 1)
    }
    not_i = {p: part.part(NOT_I_PART, p) for p in (0, 1)}
    in_i = {p: part.part(I_PART, p) for p in (0, 1)}
    bad = _scan(alg, 1, not_i, support_by_parity) or _scan(alg, 2, in_i, not_i)
    if bad:
        logger.debug(f"𝔖-乘性反例: {bad}")
    return SMultResult(bad is None, bad)


def is_o_pair_generated(alg: Algebra) -> bool:
    """L_𝔬 = Σ_{b⋆c={𝔬}} [L_b, L_c]"""
    return is_tight(alg)


# ---------------------------------------------------------------- property checks

def _homogeneous_generators(alg: Algebra, space_by_cell: dict) -> list:
    out = []
    for space in space_by_cell.values():
        if space.is_zero:
            continue
        if alg.field.is_rational:
            out.extend(space.rows)
        else:
            out.extend(projective_points(space))
    return out


def _check_splitting(alg: Algebra) -> CheckResult:
    lo = alg.distinguished_component
    for cell in alg.cells:
        for v in alg.homogeneous_piece(*cell).rows:
            closure = closure_of(alg, v)
            rebuilt = intersect(closure, lo)
            for other in alg.cells:
                if other[0] == alg.distinguished:
                    continue
                piece = alg.homogeneous_piece(*other)
                inter = intersect(closure, piece)
                if not inter.is_zero and inter != piece:
                    return CheckResult("ideal_closure_splits", True, False,
                                       f"闭包 <{alg.format_vector(v)}> 与 L_{other[0]}^{other[1]} 真相交")
                if inter == piece:
                    rebuilt = sum_spaces(rebuilt, piece)
            if rebuilt != closure:
                return CheckResult("ideal_closure_splits", True, False,
                                   f"闭包 <{alg.format_vector(v)}> 不等于其分量之和")
    return CheckResult("ideal_closure_splits", True, True)


def _lo_parity_decomposition(alg: Algebra, part: FrakIPartition) -> CheckResult:
    """L_𝔬 各奇偶分量由右因子属于 𝔖_¬𝕴 的 𝔬-对乘积生成"""
    o = alg.distinguished
    applicable = o is not None and is_o_pair_generated(alg)
    if not applicable:
        return CheckResult("Lo_parity_decomposition", False, True)
    ok = True
    detail = []
    for target in (0, 1):
        space = alg.zero
        for i in (0, 1):
            j = (target + i) % 2
            for a in alg.labels:
                if (a, i) not in alg.cells:
                    continue
                for b in sorted(part.part(NOT_I_PART, j)):
                    if star(alg, plain(a), plain(b)) != frozenset({o}):
                        continue
                    space = sum_spaces(
                        space, alg.product_span(alg.cells[(a, i)], alg.cells[(b, j)])
                    )
        expected = alg.homogeneous_piece(o, target)
        if space != expected:
            ok = False
            detail.append(f"L_𝔬^{target}: dim {space.dim} != {expected.dim}")
    return CheckResult("Lo_parity_decomposition", True, ok, "; ".join(detail))


def property_checks(
    alg: Algebra, include_o: bool = True, allow_tilde: bool = False
) -> list[CheckResult]:
    """极大长度下理论保证的性质，逐条给出 applicable/holds"""
    require_maximal_length(alg)
    part = frakI_partition(alg)
    ideal = frak_I(alg).total
    lo = alg.distinguished_component
    pair_generated = is_o_pair_generated(alg)
    s_mult = is_S_multiplicative(alg, part).holds
    checks = [_check_splitting(alg)]

    z_lie = lie_annihilator(alg, include_o)
    checks.append(CheckResult(
        "I_cap_Lo_in_lie_annihilator",
        pair_generated,
        intersect(ideal, lo).is_subspace_of(z_lie),
    ))
    checks.append(_lo_parity_decomposition(alg, part))

    not_i_connected, _ = all_neg_I_connected(alg, NOT_I_PART, allow_tilde, part)
    applicable = s_mult and pair_generated and len(part.S_notI) > 1 and not_i_connected
    outside = [
        alg.homogeneous_piece(label, p).rows[0]
        for p in (0, 1) for label in sorted(part.part(NOT_I_PART, p))
    ]
    bad = next((v for v in outside if closure_of(alg, v) != alg.full), None) if applicable else None
    checks.append(CheckResult(
        "ideal_outside_Lo_plus_I_is_L", applicable, bad is None,
        "" if bad is None else f"<{alg.format_vector(bad)}> ≠ L",
    ))

    i_connected, _ = all_neg_I_connected(alg, I_PART, allow_tilde, part)
    applicable = (
        s_mult and pair_generated and z_lie.is_zero and len(part.S_I) > 1 and i_connected
    )
    bad = None
    if applicable:
        by_cell = {cell: intersect(ideal, alg.homogeneous_piece(*cell)) for cell in alg.cells}
        bad = next(
            (v for v in _homogeneous_generators(alg, by_cell) if closure_of(alg, v) != ideal),
            None,
        )
    checks.append(CheckResult(
        "ideal_inside_I_is_I", applicable, bad is None,
        "" if bad is None else f"<{alg.format_vector(bad)}> ≠ 𝕴",
    ))
    return checks


# ---------------------------------------------------------------- simplicity theorem

@dataclass(frozen=True)
class TheoremRow:
    include_o: bool
    allow_tilde: bool
    hypotheses: dict
    lhs: bool
    rhs: bool
    disconnected: Optional[tuple]

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def consistent(self) -> bool:
        return not self.hypotheses_hold or self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "include_o": self.include_o,
            "allow_tilde": self.allow_tilde,
            "hypotheses": dict(self.hypotheses),
            "hypotheses_hold": self.hypotheses_hold,
            "lhs_simple": self.lhs,
            "rhs_connected": self.rhs,
            "disconnected": None if self.disconnected is None else [
                f"{a}^{i}" for a, i in self.disconnected
            ],
            "consistent": self.consistent,
        }


@dataclass(frozen=True)
class TheoremReport:
    verdict: SimplicityVerdict
    partition: FrakIPartition
    s_mult: SMultResult
    rows: tuple

    @property
    def consistent(self) -> bool:
        return all(r.consistent for r in self.rows)

    @property
    def applicable(self) -> bool:
        return any(r.hypotheses_hold for r in self.rows)

    def row(self, include_o: bool, allow_tilde: bool) -> TheoremRow:
        return next(r for r in self.rows if (r.include_o, r.allow_tilde) == (include_o, allow_tilde))

    def to_dict(self, alg: Algebra) -> dict:
        return {
            "verdict": self.verdict.to_dict(alg),
            "partition": self.partition.to_dict(),
            "s_multiplicative": self.s_mult.to_dict(),
            "rows": [r.to_dict() for r in self.rows],
            "applicable": self.applicable,
            "consistent": self.consistent,
        }


def theorem_simplicity_check(alg: Algebra, seed: Optional[int] = None) -> TheoremReport:
    """单纯 ⟺ 𝔖_𝕴 与 𝔖_¬𝕴 都两两 ¬𝕴-连接（在全部假设成立时）；从不覆盖判定器结论"""
    require_maximal_length(alg)
    part = frakI_partition(alg)
    verdict = simplicity_oracle(alg, seed=seed)
    s_mult = is_S_multiplicative(alg, part)
    pair_generated = is_o_pair_generated(alg)
    z_lie_zero = {flag: lie_annihilator(alg, flag).is_zero for flag in (True, False)}
    connectivity = {}
    for allow in (False, True):
        ok_i, bad_i = all_neg_I_connected(alg, I_PART, allow, part)
        ok_n, bad_n = all_neg_I_connected(alg, NOT_I_PART, allow, part)
        connectivity[allow] = (ok_i and ok_n, bad_i or bad_n)

    rows = []
    for include_o, allow_tilde in SETTINGS:
        hyps = {
            "maximal_length": True,
            "s_multiplicative": s_mult.holds,
            "notI_more_than_one": len(part.S_notI) > 1,
            "I_more_than_one": len(part.S_I) > 1,
            "o_pair_generated": pair_generated,
            "lie_annihilator_zero": z_lie_zero[include_o],
        }
        rhs, bad = connectivity[allow_tilde]
        rows.append(TheoremRow(include_o, allow_tilde, hyps, verdict.is_simple, rhs, bad))
    report = TheoremReport(verdict, part, s_mult, tuple(rows))
    if not report.consistent:
        logger.warning("单纯性刻画不一致：假设成立但两侧结论不同")
    return report


# ---------------------------------------------------------------- small-cardinality cases

@dataclass(frozen=True)
class TrichotomyResult:
    case: str
    include_o: bool
    allow_tilde: bool
    verdict: SimplicityVerdict
    checks: tuple
    dim_discrepancy: bool = False

    @property
    def consistent(self) -> bool:
        return not any(c.failed for c in self.checks)

    def to_dict(self, alg: Algebra) -> dict:
        return {
            "case": self.case,
            "include_o": self.include_o,
            "allow_tilde": self.allow_tilde,
            "verdict": self.verdict.to_dict(alg),
            "checks": [c.to_dict() for c in self.checks],
            "dim_discrepancy": self.dim_discrepancy,
            "consistent": self.consistent,
        }


def proposition_trichotomy(alg: Algebra, seed: Optional[int] = None) -> TrichotomyResult:
    """
    |𝔖_¬𝕴| <= 1 或 |𝔖_𝕴| <= 1 时：要么单纯（Case1），要么 L = L_𝔬 ⊕ L_a ⊕ 𝕴 且 𝔖_¬𝕴 = {a}（Case2）
    """
    require_maximal_length(alg)
    part = frakI_partition(alg)
    n_i, n_not = len(part.S_I), len(part.S_notI)
    if not (n_not <= 1 or n_i <= 1):
        raise PreconditionError(f"|𝔖_𝕴| = {n_i}, |𝔖_¬𝕴| = {n_not}，不属于小基数情形")
    if not is_S_multiplicative(alg, part).holds:
        raise PreconditionError("代数不是 𝔖-乘性的")
    if not is_o_pair_generated(alg):
        raise PreconditionError("L_𝔬 不由 𝔬-对乘积生成")
    setting = None
    for include_o, allow_tilde in SETTINGS:
        if not lie_annihilator(alg, include_o).is_zero:
            continue
        if all(all_neg_I_connected(alg, u, allow_tilde, part)[0] for u in (I_PART, NOT_I_PART)):
            setting = (include_o, allow_tilde)
            break
    if setting is None:
        raise PreconditionError("Z_Lie = 0 与连接性假设在任何设置下都不同时成立")

    verdict = simplicity_oracle(alg, seed=seed)
    if verdict.is_simple:
        return TrichotomyResult("Case1", *setting, verdict, ())

    checks = [CheckResult(
        "small_I_with_large_notI_impossible", True, not (n_i <= 1 and n_not > 1),
        f"|𝔖_𝕴| = {n_i}, |𝔖_¬𝕴| = {n_not}",
    )]
    discrepancy = False
    if n_not == 1:
        (a,) = tuple(part.S_notI)
        la = alg.label_component(a)
        ideal = frak_I(alg).total
        lo = alg.distinguished_component
        total = sum_spaces(sum_spaces(lo, la), ideal)
        direct = total == alg.full and lo.dim + la.dim + ideal.dim == alg.dim
        checks.append(CheckResult("L_is_Lo_plus_La_plus_I", True, direct,
                                  f"{lo.dim} + {la.dim} + {ideal.dim} vs {alg.dim}"))
        checks.append(CheckResult("La_is_subalgebra", True,
                                  alg.bracket_spaces(la, la).is_subspace_of(la)))
        discrepancy = la.dim != 1
    else:
        checks.append(CheckResult("notI_is_singleton", True, False, f"|𝔖_¬𝕴| = {n_not}"))
    result = TrichotomyResult("Case2", *setting, verdict, tuple(checks), discrepancy)
    if not result.consistent:
        logger.warning(f"小基数情形检查失败: {[c.name for c in checks if c.failed]}")
    return result
