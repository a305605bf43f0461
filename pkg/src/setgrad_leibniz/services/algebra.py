"""
集合分次 Leibniz 超代数的数据模型与公理校验

代数由有限基和稀疏结构常数给出。每个基元素恰好属于一个 (标签, 奇偶性) 单元，
因此 L = ⊕ L_a = ⊕ (L_a^0 ⊕ L_a^1) 由构造保证。
"""

import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from ..utils.errors import AlgebraStructureError, NonHomogeneousError
from ..utils.validators import validate_parity
from .exactlin import (
    Field,
    Scalar,
    Subspace,
    Vector,
    check_vector,
    intersect,
    rref,
    unit_vector,
    vec_is_zero,
    zero_vector,
)

logger = logging.getLogger(__name__)

# validate 每条公理最多保留的见证数
MAX_WITNESSES = 20

AXIOMS = ("parity_grading", "set_grading", "super_leibniz", "distinguished")

Cell = tuple[str, int]


@dataclass(frozen=True, order=True)
class BasisElement:
    name: str
    label: str
    parity: int

    def to_dict(self) -> dict:
        return {"name": self.name, "label": self.label, "parity": self.parity}


def super_sign(fld: Field, p: int, q: int) -> Scalar:
    """(-1)^{pq}"""
    return -fld.one if (p & q) else fld.one


def _sparse(v: Sequence[Scalar]) -> dict[int, Scalar]:
    return {k: a for k, a in enumerate(v) if a}


def _add_into(acc: dict, k: int, value: Scalar) -> None:
    s = acc.get(k)
    s = value if s is None else s + value
    if s:
        acc[k] = s
    else:
        acc.pop(k, None)


@dataclass(frozen=True)
class Algebra:
    """
    有限维集合分次 Leibniz 超代数（结构常数表示）

    products: (i, j) -> [e_i, e_j] 的坐标向量；缺省即为 0。
    distinguished: 特殊标签 𝔬，None 表示 𝔬 = ∅。
    """

    field: Field
    basis: tuple
    products: Mapping = dc_field(default_factory=dict, hash=False)
    distinguished: Optional[str] = None

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        names = [b.name for b in basis]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise AlgebraStructureError(f"基元素名称重复: {dup}")
        for b in basis:
            if not b.name:
                raise AlgebraStructureError("基元素名称不能为空")
            if not b.label:
                raise AlgebraStructureError(f"基元素 {b.name} 的标签不能为空")
            ok, msg = validate_parity(b.parity)
            if not ok:
                raise AlgebraStructureError(f"基元素 {b.name}: {msg}")
        n = len(basis)
        table = {}
        for key, vec in dict(self.products).items():
            i, j = key
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraStructureError(f"乘积下标越界: {key}")
            vec = tuple(vec)
            try:
                check_vector(self.field, n, vec)
            except ValueError as e:
                raise AlgebraStructureError(f"乘积 [{basis[i].name},{basis[j].name}]: {e}") from e
            if not vec_is_zero(vec):
                table[(i, j)] = vec
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "products", dict(sorted(table.items())))
        if self.distinguished is not None and self.distinguished not in {b.label for b in basis}:
            raise AlgebraStructureError(
                f"特殊标签 {self.distinguished!r} 不在支撑集中（要求 𝔬 ∈ 𝔖 或 𝔬 = ∅）"
            )

    # ------------------------------------------------------------ construction

    @classmethod
    def build(
        cls,
        fld: Field,
        basis: Iterable[tuple[str, str, int]],
        products: Optional[Mapping[tuple[str, str], Mapping[str, object]]] = None,
        distinguished: Optional[str] = None,
    ) -> "Algebra":
        """
        按名称构造代数
        basis: [(name, label, parity), ...]
        products: {(left, right): {basis_name: coeff}}，coeff 可为 int/Fraction/字面量
        """
        elems = tuple(BasisElement(nm, lbl, p) for nm, lbl, p in basis)
        index = {b.name: i for i, b in enumerate(elems)}
        table: dict = {}
        for (left, right), terms in (products or {}).items():
            for nm in (left, right, *terms):
                if nm not in index:
                    raise AlgebraStructureError(f"未知基元素: {nm!r}")
            vec = [fld.zero] * len(elems)
            for nm, coeff in terms.items():
                vec[index[nm]] = vec[index[nm]] + fld(coeff)
            table[(index[left], index[right])] = tuple(vec)
        return cls(fld, elems, table, distinguished)

    def with_products(self, products: Mapping) -> "Algebra":
        return Algebra(self.field, self.basis, products, self.distinguished)

    def with_distinguished(self, label: Optional[str]) -> "Algebra":
        return Algebra(self.field, self.basis, self.products, label)

    # ------------------------------------------------------------ basic queries

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict[str, int]:
        return {b.name: i for i, b in enumerate(self.basis)}

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """支撑集 𝔖（每个出现的标签都有非零分量），按字典序"""
        return tuple(sorted({b.label for b in self.basis}))

    @cached_property
    def cells(self) -> dict[Cell, tuple[int, ...]]:
        out: dict[Cell, list[int]] = {}
        for i, b in enumerate(self.basis):
            out.setdefault((b.label, b.parity), []).append(i)
        return {k: tuple(v) for k, v in sorted(out.items())}

    @cached_property
    def label_indices(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, list[int]] = {}
        for i, b in enumerate(self.basis):
            out.setdefault(b.label, []).append(i)
        return {k: tuple(v) for k, v in sorted(out.items())}

    @cached_property
    def _sparse_products(self) -> dict[tuple[int, int], dict[int, Scalar]]:
        return {key: _sparse(vec) for key, vec in self.products.items()}

    @cached_property
    def _by_left(self) -> dict[int, list[tuple[int, dict[int, Scalar]]]]:
        out: dict[int, list] = {}
        for (i, j), sp in self._sparse_products.items():
            out.setdefault(i, []).append((j, sp))
        return out

    def basis_vector(self, name: str) -> Vector:
        if name not in self.index:
            raise AlgebraStructureError(f"未知基元素: {name!r}")
        return unit_vector(self.field, self.dim, self.index[name])

    def vector(self, coeffs: Mapping[str, object]) -> Vector:
        """{basis_name: coeff} -> 坐标向量"""
        v = list(zero_vector(self.field, self.dim))
        for nm, c in coeffs.items():
            if nm not in self.index:
                raise AlgebraStructureError(f"未知基元素: {nm!r}")
            v[self.index[nm]] = v[self.index[nm]] + self.field(c)
        return tuple(v)

    def format_vector(self, v: Vector) -> str:
        terms = []
        for k, a in enumerate(v):
            if not a:
                continue
            name = self.basis[k].name
            terms.append(name if a == self.field.one else f"{self.field.format(a)}*{name}")
        return " + ".join(terms) if terms else "0"

    # ------------------------------------------------------------ products

    def _mul_sparse(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> dict[int, Scalar]:
        acc: dict[int, Scalar] = {}
        for i, a in u.items():
            for j, sp in self._by_left.get(i, ()):
                b = v.get(j)
                if not b:
                    continue
                c = a * b
                for k, w in sp.items():
                    _add_into(acc, k, c * w)
        return acc

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.products.get((i, j)) or zero_vector(self.field, self.dim)

    def multiply(self, u: Vector, v: Vector) -> Vector:
        """结构常数的双线性延拓"""
        check_vector(self.field, self.dim, u)
        check_vector(self.field, self.dim, v)
        return self._dense(self._mul_sparse(_sparse(u), _sparse(v)))

    def _dense(self, sp: Mapping[int, Scalar]) -> Vector:
        vec = list(zero_vector(self.field, self.dim))
        for k, a in sp.items():
            vec[k] = a
        return tuple(vec)

    def adjoint_images(self, v: Vector) -> list[Vector]:
        """所有非零的 [v, e_k] 与 [e_k, v]"""
        sv = _sparse(v)
        one = self.field.one
        out = []
        for k in range(self.dim):
            for sp in (self._mul_sparse(sv, {k: one}), self._mul_sparse({k: one}, sv)):
                if sp:
                    out.append(self._dense(sp))
        return out

    def bracket_spaces(self, left: Subspace, right: Subspace) -> Subspace:
        """[U, V] = span{[u, v]}"""
        vectors = [self.multiply(u, v) for u in left.rows for v in right.rows]
        return rref(self.field, self.dim, vectors)

    def product_span(self, left: Iterable[int], right: Iterable[int]) -> Subspace:
        """span{[e_i, e_j] : i ∈ left, j ∈ right}"""
        right = tuple(right)
        vectors = [self.products[(i, j)] for i in left for j in right if (i, j) in self.products]
        return rref(self.field, self.dim, vectors)

    # ------------------------------------------------------------ pieces

    def homogeneous_piece(self, label: str, parity: int) -> Subspace:
        """L_a^ī；未知标签返回零子空间"""
        return Subspace.coordinate(self.field, self.dim, self.cells.get((label, parity), ()))

    def label_component(self, label: str) -> Subspace:
        """L_a"""
        return Subspace.coordinate(self.field, self.dim, self.label_indices.get(label, ()))

    def parity_component(self, parity: int) -> Subspace:
        """L^ī"""
        idx = [i for i, b in enumerate(self.basis) if b.parity == parity]
        return Subspace.coordinate(self.field, self.dim, idx)

    @property
    def distinguished_component(self) -> Subspace:
        """L_𝔬，𝔬 = ∅ 时为零"""
        if self.distinguished is None:
            return Subspace.zero(self.field, self.dim)
        return self.label_component(self.distinguished)

    @property
    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    @property
    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def cell_of(self, v: Vector) -> Optional[Cell]:
        """齐次向量所在的 (标签, 奇偶性)；零向量或非齐次向量返回 None"""
        found = {(self.basis[k].label, self.basis[k].parity) for k, a in enumerate(v) if a}
        return found.pop() if len(found) == 1 else None

    def is_homogeneous(self, v: Vector) -> bool:
        return vec_is_zero(v) or self.cell_of(v) is not None

    @cached_property
    def label_targets(self) -> dict[tuple[str, str], frozenset[str]]:
        """(a, b) -> 在 [L_a, L_b] 中出现非零坐标的标签集合"""
        out: dict[tuple[str, str], set[str]] = {}
        for (i, j), sp in self._sparse_products.items():
            key = (self.basis[i].label, self.basis[j].label)
            out.setdefault(key, set()).update(self.basis[k].label for k in sp)
        return {k: frozenset(v) for k, v in sorted(out.items())}

    def to_table(self) -> dict:
        """名称形式的乘法表，便于打印和序列化"""
        return {
            (self.basis[i].name, self.basis[j].name): {
                self.basis[k].name: a for k, a in enumerate(vec) if a
            }
            for (i, j), vec in self.products.items()
        }


# ---------------------------------------------------------------- graded subspaces

@dataclass(frozen=True)
class GradedSubspace:
    """
    子空间及其 (标签, 奇偶性) 分量

    is_graded 为 True 当且仅当 total 等于各分量 total ∩ L_a^ī 的直和。
    """

    total: Subspace
    pieces: tuple  # ((label, parity), Subspace)，仅非零分量
    is_graded: bool

    @classmethod
    def from_subspace(cls, alg: Algebra, space: Subspace) -> "GradedSubspace":
        pieces = []
        dim_sum = 0
        for cell in alg.cells:
            part = intersect(space, alg.homogeneous_piece(*cell))
            if not part.is_zero:
                pieces.append((cell, part))
                dim_sum += part.dim
        return cls(space, tuple(pieces), dim_sum == space.dim)

    @property
    def dim(self) -> int:
        return self.total.dim

    @property
    def is_zero(self) -> bool:
        return self.total.is_zero

    def piece(self, label: str, parity: int) -> Subspace:
        for cell, part in self.pieces:
            if cell == (label, parity):
                return part
        return Subspace.zero(self.total.field, self.total.ambient)

    @property
    def cells(self) -> tuple[Cell, ...]:
        return tuple(cell for cell, _ in self.pieces)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(sorted({cell[0] for cell in self.cells}))

    def contains(self, v: Vector) -> bool:
        return self.total.contains(v)

    def to_dict(self, alg: Algebra) -> dict:
        return {
            "dim": self.dim,
            "is_graded": self.is_graded,
            "basis": [alg.format_vector(r) for r in self.total.rows],
            "pieces": [
                {"label": c[0], "parity": c[1], "dim": p.dim} for c, p in self.pieces
            ],
        }


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    counts: Mapping = dc_field(default_factory=dict, hash=False)
    warnings: tuple = ()
    characteristic_two: bool = False

    @property
    def valid(self) -> bool:
        return not self.violations

    def by_axiom(self, axiom: str) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]

    @property
    def failed_axioms(self) -> list[str]:
        return [a for a in AXIOMS if self.counts.get(a)]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "characteristic_two": self.characteristic_two,
            "counts": {a: self.counts.get(a, 0) for a in AXIOMS},
            "violations": [v.to_dict() for v in self.violations],
            "warnings": list(self.warnings),
        }


class _Collector:
    def __init__(self):
        self.violations: list[Violation] = []
        self.counts: dict[str, int] = {a: 0 for a in AXIOMS}

    def add(self, axiom: str, witness: tuple, detail: str) -> None:
        self.counts[axiom] += 1
        if self.counts[axiom] <= MAX_WITNESSES:
            self.violations.append(Violation(axiom, witness, detail))


def _check_parity(alg: Algebra, out: _Collector) -> None:
    for (i, j), sp in alg._sparse_products.items():
        target = (alg.basis[i].parity + alg.basis[j].parity) % 2
        bad = [alg.basis[k].name for k in sp if alg.basis[k].parity != target]
        if bad:
            out.add(
                "parity_grading",
                (alg.basis[i].name, alg.basis[j].name),
                f"乘积落在奇偶性 {target} 之外的分量: {bad}",
            )


def _check_set_grading(alg: Algebra, out: _Collector) -> None:
    for (a, b), targets in alg.label_targets.items():
        if len(targets) > 1:
            out.add("set_grading", (a, b), f"[L_{a}, L_{b}] 跨越多个分量: {sorted(targets)}")


def _check_super_leibniz(alg: Algebra, out: _Collector) -> None:
    fld = alg.field
    n = alg.dim
    sp = alg._sparse_products
    empty: dict = {}
    for x in range(n):
        ux = {x: fld.one}
        for y in range(n):
            xy = sp.get((x, y), empty)
            for z in range(n):
                yz = sp.get((y, z), empty)
                xz = sp.get((x, z), empty)
                if not (xy or yz or xz):
                    continue
                # [x,[y,z]] - [[x,y],z] + (-1)^{|y||z|} [[x,z],y]
                acc = dict(alg._mul_sparse(ux, yz)) if yz else {}
                if xy:
                    for k, a in alg._mul_sparse(xy, {z: fld.one}).items():
                        _add_into(acc, k, -a)
                if xz:
                    s = super_sign(fld, alg.basis[y].parity, alg.basis[z].parity)
                    for k, a in alg._mul_sparse(xz, {y: fld.one}).items():
                        _add_into(acc, k, s * a)
                if acc:
                    names = (alg.basis[x].name, alg.basis[y].name, alg.basis[z].name)
                    out.add("super_leibniz", names, "超 Leibniz 恒等式不成立")


def _check_distinguished(alg: Algebra, out: _Collector, warnings: list[str]) -> None:
    o = alg.distinguished
    if o is None:
        return
    for a in alg.labels:
        if a == o:
            continue
        if alg.label_targets.get((o, a)) == frozenset({o}):
            out.add("distinguished", (o, a), f"𝔬 ⋆ {a} = {{𝔬}}")
        if alg.label_targets.get((a, o)) == frozenset({o}):
            warnings.append(f"{a} ⋆ 𝔬 = {{𝔬}}（分解定理的证明隐含要求此式不成立）")


def validate(alg: Algebra) -> ValidationReport:
    """校验 ℤ₂ 分次、集合分次、超 Leibniz 恒等式以及 𝔬 的约束"""
    out = _Collector()
    warnings: list[str] = []
    char_two = alg.field.characteristic == 2
    if char_two:
        warnings.append("特征 2：符号因子 (-1)^{ij} 退化为 1")
    _check_parity(alg, out)
    _check_set_grading(alg, out)
    _check_super_leibniz(alg, out)
    _check_distinguished(alg, out, warnings)
    report = ValidationReport(tuple(out.violations), out.counts, tuple(warnings), char_two)
    if report.valid:
        logger.debug(f"代数校验通过: dim={alg.dim}, field={alg.field.name}")
    else:
        logger.info(f"代数校验失败: {report.failed_axioms}")
    return report


def is_lie_superalgebra(alg: Algebra) -> bool:
    """所有齐次基元素对满足 [x,y] = -(-1)^{|x||y|}[y,x]"""
    fld = alg.field
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            s = super_sign(fld, alg.basis[i].parity, alg.basis[j].parity)
            u = alg.bracket_basis(i, j)
            v = alg.bracket_basis(j, i)
            if any(a + s * b for a, b in zip(u, v)):
                return False
    return True


def require_homogeneous(alg: Algebra, vectors: Iterable[Vector]) -> None:
    for v in vectors:
        if not alg.is_homogeneous(v):
            raise NonHomogeneousError(f"生成元不是齐次向量: {alg.format_vector(v)}")
