"""
构造性语料生成器

除 gen_perturb 外，每个生成器输出的代数都通过 validate（构造保证或生成后复核）。
输出只依赖参数和种子。
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from ..utils.config import get_settings
from ..utils.errors import GenerationError
from .algebra import Algebra, BasisElement, is_lie_superalgebra, validate
from .exactlin import RATIONALS, Field, vec_is_zero

logger = logging.getLogger(__name__)

FAMILIES = ("Abelian", "N2Family", "DirectSum", "Hemisemidirect", "Relabel", "Perturb", "Cyclic")


def _checked(alg: Algebra, what: str) -> Algebra:
    report = validate(alg)
    if not report.valid:
        raise GenerationError(f"{what} 生成了非法代数: {report.failed_axioms}")
    return alg


# ---------------------------------------------------------------- building blocks

def gen_abelian(labels: Mapping[str, Sequence[int]], fld: Field = RATIONALS) -> Algebra:
    """
    所有乘积为零的代数
    labels: {label: [parity, ...]}，每个奇偶性对应一个基元素；空列表的标签不出现在支撑集中
    """
    if not labels:
        raise GenerationError("标签列表不能为空")
    basis = []
    for label, parities in labels.items():
        for k, parity in enumerate(parities):
            basis.append((f"{label}:{k}", label, parity))
    return Algebra.build(fld, basis)


def gen_n2_family(k: int, fld: Field = RATIONALS, distinguished: Optional[str] = None) -> Algebra:
    """k 个 N2（[x_i, x_i] = y_i）的直和；k = 1 时基为 x, y，标签为 a, b"""
    if k < 1:
        raise GenerationError("k 必须 >= 1")
    if k == 1:
        basis = [("x", "a", 0), ("y", "b", 0)]
        products = {("x", "x"): {"y": 1}}
    else:
        basis = []
        products = {}
        for i in range(1, k + 1):
            basis += [(f"x{i}", f"a{i}", 0), (f"y{i}", f"b{i}", 0)]
            products[(f"x{i}", f"x{i}")] = {f"y{i}": 1}
    return Algebra.build(fld, basis, products, distinguished)


def gen_so3(
    fld: Field = RATIONALS,
    names: Sequence[str] = ("X", "Y", "Z"),
    labels: Sequence[str] = ("A", "B", "C"),
) -> Algebra:
    """so(3)：[X,Y]=Z, [Y,Z]=X, [Z,X]=Y，按 ℤ₂×ℤ₂ 方式每条线一个标签"""
    x, y, z = names
    basis = [(x, labels[0], 0), (y, labels[1], 0), (z, labels[2], 0)]
    products = {
        (x, y): {z: 1}, (y, x): {z: -1},
        (y, z): {x: 1}, (z, y): {x: -1},
        (z, x): {y: 1}, (x, z): {y: -1},
    }
    return Algebra.build(fld, basis, products)


def gen_affine_line(fld: Field = RATIONALS, labels: Sequence[str] = ("u", "v")) -> Algebra:
    """二维非交换 Lie 代数 [e, f] = f"""
    basis = [("e", labels[0], 0), ("f", labels[1], 0)]
    products = {("e", "f"): {"f": 1}, ("f", "e"): {"f": -1}}
    return Algebra.build(fld, basis, products)


def gen_heisenberg(fld: Field = RATIONALS, labels: Sequence[str] = ("P", "Q", "Z")) -> Algebra:
    """三维 Heisenberg 代数 [p, q] = z"""
    basis = [("p", labels[0], 0), ("q", labels[1], 0), ("z", labels[2], 0)]
    products = {("p", "q"): {"z": 1}, ("q", "p"): {"z": -1}}
    return Algebra.build(fld, basis, products)


def gen_cyclic(fld: Field = RATIONALS, mu: object = 1) -> Algebra:
    """单生成元 Leibniz 代数：[e, e] = m, [m, e] = μ m"""
    basis = [("e", "a", 0), ("m", "b", 0)]
    products = {("e", "e"): {"m": 1}}
    if fld(mu):
        products[("m", "e")] = {"m": mu}
    return Algebra.build(fld, basis, products)


def gen_cyclic_pair(fld: Field = RATIONALS, mu: object = 1) -> Algebra:
    """
    [e, e] = m1, [m1, e] = m2, [m2, e] = μ m1。
    右乘 e 在 m1、m2 两个标签之间来回，μ ≠ 0 时单纯，且 |𝔖_¬𝕴| = 1、|𝔖_𝕴| = 2。
    """
    if not fld(mu):
        raise GenerationError("μ 必须非零")
    basis = [("e", "a", 0), ("m1", "b1", 0), ("m2", "b2", 0)]
    products = {
        ("e", "e"): {"m1": 1},
        ("m1", "e"): {"m2": 1},
        ("m2", "e"): {"m1": mu},
    }
    return Algebra.build(fld, basis, products)


def gen_parity_gap(fld: Field = RATIONALS) -> Algebra:
    """
    唯一非零乘积 [o_b, o_r] = [o_r, o_b] = e_a 的 Lie 超代数。
    a ∈ b ⋆ r 只来自奇部分，[L_b^0, L_r^0] = 0，是 𝔖-乘性的反例。
    """
    basis = [
        ("e_a", "a", 0),
        ("e_b", "b", 0), ("o_b", "b", 1),
        ("e_r", "r", 0), ("o_r", "r", 1),
    ]
    products = {("o_b", "o_r"): {"e_a": 1}, ("o_r", "o_b"): {"e_a": 1}}
    return Algebra.build(fld, basis, products)


def gen_direct_sum(
    first: Algebra, second: Algebra, distinguished: Optional[str] = None
) -> Algebra:
    """直和；两边的基名称和标签必须互不相交"""
    if first.field != second.field:
        raise GenerationError("直和两边的域不同")
    if set(first.index) & set(second.index):
        raise GenerationError("直和两边的基名称重叠")
    if set(first.labels) & set(second.labels):
        raise GenerationError("直和两边的标签重叠")
    n1 = first.dim
    n2 = second.dim
    zero = first.field.zero
    table = {}
    for (i, j), vec in first.products.items():
        table[(i, j)] = tuple(vec) + (zero,) * n2
    for (i, j), vec in second.products.items():
        table[(i + n1, j + n1)] = (zero,) * n1 + tuple(vec)
    return Algebra(first.field, first.basis + second.basis, table, distinguished)


def adjoint_action(lie: Algebra) -> list[list[tuple]]:
    """伴随右作用：action[j] 的第 i 行是 m_i · y_j = [x_i, y_j] 的坐标"""
    return [[lie.bracket_basis(i, j) for i in range(lie.dim)] for j in range(lie.dim)]


def zero_action(lie: Algebra, module_dim: Optional[int] = None) -> list[list[tuple]]:
    d = lie.dim if module_dim is None else module_dim
    zero_row = tuple(lie.field.zero for _ in range(d))
    return [[zero_row for _ in range(d)] for _ in range(lie.dim)]


def _act(action: Sequence[Sequence[tuple]], vec: Sequence, j: int, fld: Field) -> tuple:
    """(Σ vec_i m_i) · y_j"""
    d = len(vec)
    out = [fld.zero] * d
    for i, c in enumerate(vec):
        if c:
            for k, a in enumerate(action[j][i]):
                if a:
                    out[k] = out[k] + c * a
    return tuple(out)


def check_module_law(lie: Algebra, action: Sequence[Sequence[tuple]]) -> bool:
    """m · [y, z] = (m · y) · z − (m · z) · y"""
    fld = lie.field
    if len(action) != lie.dim:
        return False
    d = len(action[0]) if action else 0
    for i in range(d):
        m = tuple(fld.one if k == i else fld.zero for k in range(d))
        for j in range(lie.dim):
            for k in range(lie.dim):
                left = [fld.zero] * d
                for t, c in enumerate(lie.bracket_basis(j, k)):
                    if c:
                        left = [a + c * b for a, b in zip(left, _act(action, m, t, fld))]
                right = [
                    a - b
                    for a, b in zip(
                        _act(action, _act(action, m, j, fld), k, fld),
                        _act(action, _act(action, m, k, fld), j, fld),
                    )
                ]
                if any(a - b for a, b in zip(left, right)):
                    return False
    return True


def gen_hemisemidirect(
    lie: Algebra,
    action: Sequence[Sequence[tuple]],
    module_parity: int = 0,
    labels: Optional[Sequence[str]] = None,
    names: Optional[Sequence[str]] = None,
) -> Algebra:
    """
    L = g ⊕ M，[(x, m), (y, n)] = ([x, y], m · y)，M 整体放在 module_parity 上。
    labels/names 缺省为 g 的标签/名称加撇号；结果总是重新校验。
    """
    fld = lie.field
    if any(b.parity for b in lie.basis) or not is_lie_superalgebra(lie) or not validate(lie).valid:
        raise GenerationError("g 必须是偶的 Lie 代数")
    if not check_module_law(lie, action):
        raise GenerationError("作用矩阵不满足右模律")
    d = len(action[0]) if action else 0
    if labels is None:
        labels = [f"{b.label}'" for b in lie.basis][:d]
    if names is None:
        names = [f"{b.name}'" for b in lie.basis][:d]
    if len(labels) != d or len(names) != d:
        raise GenerationError("模的标签/名称数量与模维数不符")
    n = lie.dim
    zero = fld.zero
    basis = lie.basis + tuple(BasisElement(names[i], labels[i], module_parity) for i in range(d))
    table = {}
    for (i, j), vec in lie.products.items():
        table[(i, j)] = tuple(vec) + (zero,) * d
    for i in range(d):
        for j in range(n):
            row = tuple(action[j][i])
            if not vec_is_zero(row):
                table[(n + i, j)] = (zero,) * n + row
    return _checked(Algebra(fld, basis, table), "gen_hemisemidirect")


def gen_relabel(
    base: Algebra,
    mapping: Mapping[str, str],
    rescale: Optional[Mapping[str, object]] = None,
    rename: Optional[Mapping[str, str]] = None,
) -> Algebra:
    """
    重命名/合并标签，可选地按 e_i -> c_i e_i 重新缩放基
    （γ'_ijk = c_i c_j γ_ijk / c_k）。合并可能破坏集合分次，因此结果重新校验。
    """
    fld = base.field
    coeffs = [fld(rescale.get(b.name, 1)) if rescale else fld.one for b in base.basis]
    if any(not c for c in coeffs):
        raise GenerationError("缩放系数不能为 0")
    basis = tuple(
        BasisElement(
            (rename or {}).get(b.name, b.name), mapping.get(b.label, b.label), b.parity
        )
        for b in base.basis
    )
    table = {}
    for (i, j), vec in base.products.items():
        table[(i, j)] = tuple(coeffs[i] * coeffs[j] * a / coeffs[k] for k, a in enumerate(vec))
    o = base.distinguished
    return _checked(
        Algebra(fld, basis, table, mapping.get(o, o) if o is not None else None),
        "gen_relabel",
    )


def _random_scalar(fld: Field, rng: random.Random) -> object:
    if fld.is_rational:
        return Fraction(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2, 3]))
    return fld.random_nonzero(rng)


def random_relabel(base: Algebra, seed: int, rescale: bool = True) -> Algebra:
    """标签的随机双射重命名加随机缩放（始终合法）"""
    rng = random.Random(seed)
    labels = list(base.labels)
    fresh = [f"g{seed}_{k}" for k in range(len(labels))]
    rng.shuffle(fresh)
    mapping = dict(zip(labels, fresh))
    factors = {b.name: _random_scalar(base.field, rng) for b in base.basis} if rescale else None
    return gen_relabel(base, mapping, factors)


def gen_perturb(base: Algebra, edits: int, seed: int) -> tuple[Algebra, bool]:
    """随机修改 edits 个结构常数；合法性取自重新校验，而不是预测"""
    rng = random.Random(seed)
    fld = base.field
    n = base.dim
    table = {key: list(vec) for key, vec in base.products.items()}
    for _ in range(edits if n else 0):
        i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        vec = table.setdefault((i, j), [fld.zero] * n)
        current = vec[k]
        new = fld(rng.randint(-3, 3))
        while new == current:
            new = fld(rng.randint(-3, 3))
        vec[k] = new
    alg = base.with_products({key: tuple(vec) for key, vec in table.items()})
    return alg, validate(alg).valid


# ---------------------------------------------------------------- corpus assembly

@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    parameters: Mapping = dc_field(default_factory=dict, hash=False)
    seed: int = 0


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: GeneratorSpec
    algebra: Algebra
    expected_valid: bool = True


CORPUS_FIELDS = (RATIONALS, Field.prime(5), Field.prime(7), Field.prime(3))
MODULE_FIELDS = (Field.prime(5), Field.prime(7))


def _lie_seed(kind: str, fld: Field) -> Algebra:
    if kind == "so3":
        return gen_so3(fld)
    if kind == "affine":
        return gen_affine_line(fld)
    if kind == "heisenberg":
        return gen_heisenberg(fld)
    return gen_abelian({"s": [0], "t": [0]}, fld)


def hemisemidirect_from(kind: str, fld: Field, adjoint: bool, parity: int, shared: bool) -> Algebra:
    """由名字指定的 g、作用方式与标签方式组装半半直积"""
    lie = _lie_seed(kind, fld)
    action = adjoint_action(lie) if adjoint else zero_action(lie)
    labels = [b.label for b in lie.basis] if shared else None
    return gen_hemisemidirect(lie, action, parity, labels)


def theorem_family(seed: int = 0) -> list[CorpusEntry]:
    """满足单纯性刻画全部假设的极大长度实例（单纯与非单纯都有）"""
    entries = []
    fields = (RATIONALS, Field.prime(5), Field.prime(7), Field.prime(11), Field.prime(13))
    for fld in fields:
        for parity in (0, 1):
            base = hemisemidirect_from("so3", fld, True, parity, False)
            spec = GeneratorSpec("Hemisemidirect", {"lie": "so3", "parity": parity,
                                                    "field": fld.name}, seed)
            entries.append(CorpusEntry(f"hsd_so3_{fld.name}_p{parity}", spec, base))
            for t in range(2):
                s = seed * 100 + len(entries) + t
                entries.append(CorpusEntry(
                    f"hsd_so3_{fld.name}_p{parity}_r{s}",
                    GeneratorSpec("Relabel", {"base": "hsd_so3", "field": fld.name}, s),
                    random_relabel(base, s),
                ))
        so3_copy = gen_so3(fld, ("U", "V", "W"), ("D", "E", "F"))
        other = gen_hemisemidirect(so3_copy, adjoint_action(so3_copy), 1)
        first = hemisemidirect_from("so3", fld, True, 0, False)
        entries.append(CorpusEntry(
            f"hsd_so3_pair_{fld.name}",
            GeneratorSpec("DirectSum", {"parts": ["hsd_so3", "hsd_so3"], "field": fld.name}, seed),
            _checked(gen_direct_sum(first, other), "theorem_family"),
        ))
    return entries


def build_corpus(seed: Optional[int] = None) -> list[CorpusEntry]:
    """验收语料：50 交换、50 N2 族、50 半半直积、30 重标记、20 扰动负例、16 循环型"""
    seed = get_settings().corpus_seed if seed is None else seed
    rng = random.Random(seed)
    entries: list[CorpusEntry] = []

    for t in range(50):
        fld = CORPUS_FIELDS[t % len(CORPUS_FIELDS)]
        count = rng.randint(1, 4)
        labels = {
            f"l{c}": [rng.randint(0, 1) for _ in range(rng.randint(0, 2))] for c in range(count)
        }
        if not any(labels.values()):
            labels["l0"] = [0]
        spec = GeneratorSpec("Abelian", {"labels": labels, "field": fld.name}, seed)
        entries.append(CorpusEntry(f"abelian_{t}", spec, gen_abelian(labels, fld)))

    n2_fields = CORPUS_FIELDS + (Field.prime(2),)
    for t in range(50):
        fld = n2_fields[t % len(n2_fields)]
        k = 1 + t % 3
        distinguished = None
        if t % 4 == 3:
            distinguished = "b" if k == 1 else "b1"
        spec = GeneratorSpec("N2Family", {"k": k, "field": fld.name,
                                          "distinguished": distinguished}, seed)
        alg = _checked(gen_n2_family(k, fld, distinguished), "gen_n2_family")
        entries.append(CorpusEntry(f"n2_{k}_{t}", spec, alg))

    kinds = ("so3", "affine", "heisenberg", "abelian")
    for t in range(50):
        fld = MODULE_FIELDS[t % 2]
        kind = kinds[(t // 2) % len(kinds)]
        adjoint = (t // 8) % 2 == 0
        parity = (t // 16) % 2
        shared = (t // 32) % 2 == 1 or t % 5 == 4
        params = {"lie": kind, "adjoint": adjoint, "parity": parity, "shared": shared,
                  "field": fld.name}
        alg = hemisemidirect_from(kind, fld, adjoint, parity, shared)
        entries.append(CorpusEntry(f"hsd_{kind}_{t}", GeneratorSpec("Hemisemidirect", params, seed), alg))

    bases = [e for e in entries if e.spec.family in ("N2Family", "Hemisemidirect")]
    for t in range(30):
        base = bases[rng.randrange(len(bases))]
        s = seed * 1000 + t
        alg = random_relabel(base.algebra, s)
        spec = GeneratorSpec("Relabel", {"base": base.name}, s)
        entries.append(CorpusEntry(f"relabel_{t}", spec, alg))

    made = 0
    attempt = 0
    sources = [e for e in entries if e.algebra.products]
    while made < 20:
        attempt += 1
        if attempt > 2000:
            raise GenerationError("扰动负例生成次数过多")
        base = sources[rng.randrange(len(sources))]
        s = seed * 10000 + attempt
        alg, valid = gen_perturb(base.algebra, 1 + attempt % 2, s)
        if valid:
            continue
        spec = GeneratorSpec("Perturb", {"base": base.name, "edits": 1 + attempt % 2}, s)
        entries.append(CorpusEntry(f"perturb_{made}", spec, alg, expected_valid=False))
        made += 1

    # 小基数情形：|𝔖_¬𝕴| = 1 的单纯实例
    for fld in CORPUS_FIELDS:
        for mu in (1, 2):
            params = {"mu": mu, "field": fld.name}
            entries.append(CorpusEntry(
                f"cyclic_{fld.name}_{mu}", GeneratorSpec("Cyclic", params, seed), gen_cyclic(fld, mu)
            ))
            entries.append(CorpusEntry(
                f"cyclic_pair_{fld.name}_{mu}",
                GeneratorSpec("Cyclic", dict(params, pair=True), seed),
                _checked(gen_cyclic_pair(fld, mu), "gen_cyclic_pair"),
            ))

    logger.info(f"语料生成完成: {len(entries)} 个实例 (seed={seed})")
    return entries
