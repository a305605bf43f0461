"""
理想相关计算：理想闭包、𝕴、中心、Lie 零化子、紧性与单纯性判定
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Union

from ..utils.config import get_settings
from ..utils.errors import InternalInconsistencyError, NonHomogeneousError, PreconditionError
from .algebra import Algebra, GradedSubspace, require_homogeneous, super_sign
from .exactlin import (
    Subspace,
    Vector,
    enumerate_subspaces,
    intersect,
    kernel,
    projective_points,
    random_combination,
    rref,
    sum_spaces,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from .supportgraph import plain, star

logger = logging.getLogger(__name__)

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"
PROBABLY_SIMPLE = "ProbablySimple"


@dataclass(frozen=True)
class IdealClosureResult:
    subspace: GradedSubspace
    generators: tuple
    iterations: int

    def to_dict(self, alg: Algebra) -> dict:
        return {
            "ideal": self.subspace.to_dict(alg),
            "generators": [alg.format_vector(g) for g in self.generators],
            "iterations": self.iterations,
        }


def _close(alg: Algebra, vectors: Iterable[Vector]) -> tuple[Subspace, int]:
    """对任意向量求双边理想闭包；返回 (闭包, 有效扫描轮数)"""
    space = rref(alg.field, alg.dim, vectors)
    frontier = list(space.rows)
    iterations = 0
    while frontier:
        added = []
        for v in frontier:
            for w in alg.adjoint_images(v):
                if not space.contains(w):
                    space = space.with_vector(w)
                    added.append(w)
        if added:
            iterations += 1
            logger.debug(f"理想闭包第 {iterations} 轮: dim={space.dim}")
        frontier = added
    return space, iterations


def ideal_closure(
    alg: Algebra, generators: Union[GradedSubspace, Subspace, Iterable[Vector]]
) -> IdealClosureResult:
    """包含齐次生成元的最小分次理想"""
    if isinstance(generators, GradedSubspace):
        if not generators.is_graded:
            raise NonHomogeneousError("生成子空间不是分次子空间")
        vectors = [r for _, part in generators.pieces for r in part.rows]
    elif isinstance(generators, Subspace):
        graded = GradedSubspace.from_subspace(alg, generators)
        if not graded.is_graded:
            raise NonHomogeneousError("生成子空间不是分次子空间")
        vectors = [r for _, part in graded.pieces for r in part.rows]
    else:
        vectors = [tuple(v) for v in generators]
        require_homogeneous(alg, vectors)
    space, iterations = _close(alg, vectors)
    return IdealClosureResult(GradedSubspace.from_subspace(alg, space), tuple(vectors), iterations)


def closure_of(alg: Algebra, v: Vector) -> Subspace:
    return _close(alg, [v])[0]


def symmetrized_bracket(alg: Algebra, i: int, j: int) -> Vector:
    """s(e_i, e_j) = [e_i, e_j] + (-1)^{|e_i||e_j|} [e_j, e_i]"""
    s = super_sign(alg.field, alg.basis[i].parity, alg.basis[j].parity)
    return vec_add(alg.bracket_basis(i, j), vec_scale(s, alg.bracket_basis(j, i)))


@lru_cache(maxsize=128)
def frak_I(alg: Algebra) -> GradedSubspace:
    """由所有 s(e_i, e_j) 生成的理想 𝕴；断言 [L, 𝕴] = 0"""
    gens = []
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            g = symmetrized_bracket(alg, i, j)
            if not vec_is_zero(g):
                gens.append(g)
    space, _ = _close(alg, gens)
    for k in range(alg.dim):
        e = alg.basis_vector(alg.basis[k].name)
        for w in space.rows:
            if not vec_is_zero(alg.multiply(e, w)):
                raise InternalInconsistencyError(
                    f"[L, 𝕴] ≠ 0: [{alg.basis[k].name}, {alg.format_vector(w)}] ≠ 0"
                )
    result = GradedSubspace.from_subspace(alg, space)
    if not result.is_graded:
        logger.warning(f"𝕴 不是分次子空间 (dim={result.dim})")
    return result


def frak_I_support_by_parity(alg: Algebra) -> dict[int, frozenset[str]]:
    """{ī: 𝔖_𝕴^ī}，其中 𝔖_𝕴^ī = {a ∈ 𝔖\\{𝔬} : 𝕴 ∩ L_a^ī ≠ 0}"""
    ideal = frak_I(alg).total
    out: dict[int, set[str]] = {0: set(), 1: set()}
    for (label, parity) in alg.cells:
        if label == alg.distinguished:
            continue
        if not intersect(ideal, alg.homogeneous_piece(label, parity)).is_zero:
            out[parity].add(label)
    return {p: frozenset(s) for p, s in out.items()}


def frak_I_support(alg: Algebra) -> frozenset[str]:
    """𝔖_𝕴"""
    parts = frak_I_support_by_parity(alg)
    return parts[0] | parts[1]


def _annihilator(alg: Algebra, indices: Iterable[int]) -> Subspace:
    """{x : [x, e_k] = [e_k, x] = 0, k ∈ indices}"""
    zero = alg.field.zero
    constraints = []
    for k in indices:
        for m in range(alg.dim):
            left = [zero] * alg.dim
            right = [zero] * alg.dim
            for i in range(alg.dim):
                left[i] = alg.bracket_basis(i, k)[m]
                right[i] = alg.bracket_basis(k, i)[m]
            constraints.append(tuple(left))
            constraints.append(tuple(right))
    return kernel(alg.field, alg.dim, constraints)


def center(alg: Algebra) -> Subspace:
    """𝒵(L) = {x : [x, L] + [L, x] = 0}"""
    return _annihilator(alg, range(alg.dim))


def lie_annihilator_labels(alg: Algebra, include_o: bool = True) -> tuple[str, ...]:
    excluded = frak_I_support(alg)
    return tuple(
        a
        for a in alg.labels
        if a not in excluded and (include_o or a != alg.distinguished)
    )


def lie_annihilator(alg: Algebra, include_o: bool = True) -> Subspace:
    """𝒵_Lie(L) = {x : [x, L_a] + [L_a, x] = 0 对所有 a ∉ 𝔖_𝕴}；include_o 控制是否量化 𝔬"""
    labels = lie_annihilator_labels(alg, include_o)
    return _annihilator(alg, [i for a in labels for i in alg.label_indices[a]])


def o_pair_span(alg: Algebra) -> Subspace:
    """Σ_{a,b ∈ 𝔖\\{𝔬}, a⋆b={𝔬}} [L_a, L_b]"""
    o = alg.distinguished
    if o is None:
        return alg.zero
    others = [a for a in alg.labels if a != o]
    space = alg.zero
    for a in others:
        for b in others:
            if star(alg, plain(a), plain(b)) == frozenset({o}):
                space = sum_spaces(
                    space, alg.product_span(alg.label_indices[a], alg.label_indices[b])
                )
    return space


def is_tight(alg: Algebra) -> bool:
    """L_𝔬 = 0 或 L_𝔬 = Σ_{a⋆b={𝔬}} [L_a, L_b]"""
    lo = alg.distinguished_component
    return lo.is_zero or o_pair_span(alg) == lo


def is_ideal(alg: Algebra, space: Subspace) -> bool:
    for v in space.rows:
        for w in alg.adjoint_images(v):
            if not space.contains(w):
                return False
    return True


# ---------------------------------------------------------------- simplicity

@dataclass(frozen=True)
class SimplicityVerdict:
    verdict: str
    witness: Optional[Subspace]
    sampled: bool
    reason: str = ""
    tested: int = 0

    @property
    def is_simple(self) -> bool:
        return self.verdict in (SIMPLE, PROBABLY_SIMPLE)

    def to_dict(self, alg: Algebra) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "dim": self.witness.dim,
                "basis": [alg.format_vector(r) for r in self.witness.rows],
            }
        return {
            "verdict": self.verdict,
            "sampled": self.sampled,
            "reason": self.reason,
            "tested": self.tested,
            "witness": witness,
        }


def derived_algebra(alg: Algebra) -> Subspace:
    """[L, L]"""
    return rref(alg.field, alg.dim, alg.products.values())


def _abelian_witness(alg: Algebra, ideal: Subspace) -> Subspace:
    """[L, L] = 0 时的见证理想；没有 0 与 L 之外的理想时（如一维）返回零理想"""
    for i in range(alg.dim):
        c = closure_of(alg, alg.basis_vector(alg.basis[i].name))
        if c != ideal and c != alg.full:
            return c
    return alg.zero


def _test_vectors(
    alg: Algebra, piece: Subspace, rng: random.Random, samples: int
) -> tuple[list[Vector], bool]:
    if not alg.field.is_rational:
        return list(projective_points(piece)), False
    if piece.dim == 1:
        return list(piece.rows), False
    extra = [random_combination(piece, rng) for _ in range(samples)]
    return list(piece.rows) + extra, True


def simplicity_oracle(
    alg: Algebra, seed: Optional[int] = None, samples: Optional[int] = None
) -> SimplicityVerdict:
    """
    单纯性判定：[L, L] ≠ 0，且每个非零齐次向量 v 生成的理想在 v ∈ 𝕴 时等于 𝕴，否则等于 L。
    GF(p) 上遍历每个齐次分量的所有射影点（精确）；ℚ 上维数 >= 2 的分量
    取基向量加 samples 个带种子的随机组合，结论降级为 ProbablySimple。
    """
    settings = get_settings()
    seed = settings.oracle_seed if seed is None else seed
    samples = settings.oracle_samples if samples is None else samples
    ideal = frak_I(alg).total
    if derived_algebra(alg).is_zero:
        witness = _abelian_witness(alg, ideal)
        return SimplicityVerdict(NOT_SIMPLE, witness, False, "[L, L] = 0")

    rng = random.Random(seed)
    full = alg.full
    sampled = False
    tested = 0
    for cell in alg.cells:
        piece = alg.homogeneous_piece(*cell)
        vectors, used_sampling = _test_vectors(alg, piece, rng, samples)
        sampled = sampled or used_sampling
        for v in vectors:
            tested += 1
            closure = closure_of(alg, v)
            in_ideal = ideal.contains(v)
            expected = ideal if in_ideal else full
            if closure != expected:
                reason = (
                    f"{alg.format_vector(v)} ∈ 𝕴 生成的理想不是 𝕴"
                    if in_ideal
                    else f"{alg.format_vector(v)} ∉ 𝕴 生成的理想不是 L"
                )
                logger.info(f"非单纯: {reason}")
                return SimplicityVerdict(NOT_SIMPLE, closure, sampled, reason, tested)
    if sampled:
        logger.warning(f"ℚ 上存在维数 >= 2 的齐次分量，结论基于采样 (seed={seed})")
        return SimplicityVerdict(PROBABLY_SIMPLE, None, True, "未找到反例（采样）", tested)
    return SimplicityVerdict(SIMPLE, None, False, "", tested)


def enumerate_graded_ideals(alg: Algebra, limit: Optional[int] = None) -> list[Subspace]:
    """GF(p) 上逐一枚举各齐次分量子空间之和，保留其中的理想"""
    if alg.field.is_rational:
        raise PreconditionError("分次理想穷举只支持 GF(p)")
    limit = get_settings().enumeration_limit if limit is None else limit
    options = [enumerate_subspaces(alg.homogeneous_piece(*cell)) for cell in alg.cells]
    total = 1
    for opts in options:
        total *= len(opts)
    if total > limit:
        raise PreconditionError(f"候选分次子空间 {total} 个，超过上限 {limit}")
    ideals = []
    for choice in product(*options):
        space = alg.zero
        for part in choice:
            space = sum_spaces(space, part)
        if is_ideal(alg, space):
            ideals.append(space)
    logger.debug(f"穷举 {total} 个候选，得到 {len(ideals)} 个分次理想")
    return ideals


def brute_force_simplicity(alg: Algebra, limit: Optional[int] = None) -> bool:
    """按定义判定：[L, L] ≠ 0 且分次理想只有 0、𝕴、L"""
    if derived_algebra(alg).is_zero:
        return False
    allowed = {alg.zero, frak_I(alg).total, alg.full}
    return all(space in allowed for space in enumerate_graded_ideals(alg, limit))
