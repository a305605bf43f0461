"""
Exact linear algebra over ℚ and GF(p).

Scalars are `fractions.Fraction` (rationals) or `GFElement` (prime field). Vectors
are plain tuples of scalars; subspaces are stored in canonical reduced row-echelon
form, so two `Subspace` values are equal iff they span the same space.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence, Union

from ..utils.errors import DimensionMismatchError, FieldMismatchError, NotContainedError
from ..utils.validators import (
    validate_integer_literal,
    validate_prime,
    validate_rational_literal,
)

logger = logging.getLogger(__name__)


class GFElement:
    """
    Element of the prime field GF(p).

    Arithmetic is performed modulo p. Combining elements of different prime fields,
    or a prime-field element with a rational, raises FieldMismatchError. Plain ints
    are accepted and reduced mod p.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other: object) -> int:
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) 与 GF({other.p}) 元素混合运算")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatchError(
            f"GF({self.p}) 元素不能与 {type(other).__name__} 混合运算"
        )

    def __repr__(self) -> str:
        return f"GF{self.p}({self.value})"

    def __str__(self) -> str:
        return str(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __add__(self, other: object) -> "GFElement":
        return GFElement(self.value + self._coerce(other), self.p)

    def __radd__(self, other: object) -> "GFElement":
        return self.__add__(other)

    def __sub__(self, other: object) -> "GFElement":
        return GFElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other: object) -> "GFElement":
        return GFElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other: object) -> "GFElement":
        return GFElement(self.value * self._coerce(other), self.p)

    def __rmul__(self, other: object) -> "GFElement":
        return self.__mul__(other)

    def __neg__(self) -> "GFElement":
        return GFElement(-self.value, self.p)

    def inverse(self) -> "GFElement":
        """Multiplicative inverse by Fermat's little theorem: a^(p-2)."""
        if self.value == 0:
            raise ZeroDivisionError(f"GF({self.p}) 中 0 不可逆")
        return GFElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other: object) -> "GFElement":
        return self * GFElement(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other: object) -> "GFElement":
        return GFElement(self._coerce(other), self.p) * self.inverse()

    def __pow__(self, exponent: int) -> "GFElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return GFElement(pow(self.value, exponent, self.p), self.p)


Scalar = Union[Fraction, GFElement]
Vector = tuple


@dataclass(frozen=True)
class Field:
    """A base field: characteristic 0 means ℚ, otherwise GF(characteristic)."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0:
            ok, msg = validate_prime(self.characteristic)
            if not ok:
                raise ValueError(msg)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    @property
    def tag(self) -> Union[str, dict]:
        """JSON tag used by the algebra file format."""
        return "Q" if self.is_rational else {"GF": self.characteristic}

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value: object) -> Scalar:
        """Convert ints, Fractions, literals and own elements into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise TypeError("布尔值不是域元素")
        if self.is_rational:
            if isinstance(value, GFElement):
                raise FieldMismatchError(f"GF({value.p}) 元素不能放入 Q")
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"无法转换为有理数: {value!r}")
        p = self.characteristic
        if isinstance(value, GFElement):
            if value.p != p:
                raise FieldMismatchError(f"GF({value.p}) 元素不能放入 GF({p})")
            return value
        if isinstance(value, int):
            return GFElement(value, p)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} 的分母在 GF({p}) 中不可逆")
            return GFElement(value.numerator, p) / GFElement(value.denominator, p)
        raise TypeError(f"无法转换为 GF({p}) 元素: {value!r}")

    def parse(self, literal: str) -> Scalar:
        """Parse "p/q" or "n" over ℚ, an integer literal over GF(p)."""
        text = literal.strip()
        if self.is_rational:
            if not validate_rational_literal(text):
                raise ValueError(f"非法有理数字面量: {literal!r}")
            try:
                return Fraction(text)
            except ZeroDivisionError as e:
                raise ValueError(f"分母为 0: {literal!r}") from e
        if not validate_integer_literal(text):
            raise ValueError(f"非法 GF({self.characteristic}) 字面量: {literal!r}")
        return GFElement(int(text), self.characteristic)

    def format(self, value: Scalar) -> str:
        return str(value)

    def contains(self, value: object) -> bool:
        if self.is_rational:
            return isinstance(value, Fraction)
        return isinstance(value, GFElement) and value.p == self.characteristic

    def elements(self) -> Iterator[Scalar]:
        """All elements of GF(p), 0 first."""
        if self.is_rational:
            raise ValueError("Q 是无限域，无法枚举")
        for v in range(self.characteristic):
            yield GFElement(v, self.characteristic)

    def random_nonzero(self, rng: random.Random, bound: int = 5) -> Scalar:
        """Seeded nonzero scalar; small integers over ℚ, uniform over GF(p)."""
        if self.is_rational:
            choices = [k for k in range(-bound, bound + 1) if k != 0]
            return Fraction(rng.choice(choices))
        return GFElement(rng.randrange(1, self.characteristic), self.characteristic)


RATIONALS = Field.rationals()


# ---------------------------------------------------------------- vectors

def zero_vector(field: Field, n: int) -> Vector:
    z = field.zero
    return tuple(z for _ in range(n))


def unit_vector(field: Field, n: int, i: int) -> Vector:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return not any(v)


def support_indices(v: Vector) -> list[int]:
    return [i for i, a in enumerate(v) if a]


def linear_combination(field: Field, n: int, coeffs: Sequence[Scalar],
                       vectors: Sequence[Vector]) -> Vector:
    acc = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                acc[i] = acc[i] + c * a
    return tuple(acc)


def check_vector(field: Field, n: int, v: Sequence[object]) -> None:
    if len(v) != n:
        raise DimensionMismatchError(f"向量长度 {len(v)} 与环境维数 {n} 不符")
    for a in v:
        if not field.contains(a):
            raise FieldMismatchError(f"分量 {a!r} 不属于 {field.name}")


# ---------------------------------------------------------------- echelon core

def _echelon(rows: Iterable[Sequence[Scalar]], ncols: int) -> tuple[list[list], list[int]]:
    """Gauss-Jordan elimination; returns nonzero RREF rows and their pivot columns."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot_row = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of K^ambient stored by its canonical RREF basis."""

    field: Field
    ambient: int
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls.coordinate(field, ambient, range(ambient))

    @classmethod
    def coordinate(cls, field: Field, ambient: int, indices: Iterable[int]) -> "Subspace":
        """span{e_i : i in indices}"""
        idx = sorted(set(indices))
        return cls(field, ambient, tuple(unit_vector(field, ambient, i) for i in idx),
                   tuple(idx))

    def _check(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} 与 {other.field.name} 子空间混合运算")
        if self.ambient != other.ambient:
            raise DimensionMismatchError(
                f"环境维数不符: {self.ambient} != {other.ambient}"
            )

    def reduce(self, v: Vector) -> Vector:
        """Residual of v after eliminating every pivot of this subspace."""
        check_vector(self.field, self.ambient, v)
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Vector) -> bool:
        return vec_is_zero(self.reduce(v))

    def with_vector(self, v: Vector) -> "Subspace":
        if self.contains(v):
            return self
        return rref(self.field, self.ambient, self.rows + (tuple(v),))

    def with_vectors(self, vectors: Iterable[Vector]) -> "Subspace":
        extra = [tuple(v) for v in vectors]
        if not extra:
            return self
        return rref(self.field, self.ambient, self.rows + tuple(extra))

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def complement_in(self, other: "Subspace") -> "Subspace":
        return complement_in(self, other)

    def format_rows(self) -> list[list[str]]:
        return [[self.field.format(a) for a in row] for row in self.rows]


# ---------------------------------------------------------------- operations

def rref(field: Field, ambient: int, vectors: Iterable[Sequence[Scalar]]) -> Subspace:
    """Canonical RREF basis of span(vectors); idempotent."""
    rows = [tuple(v) for v in vectors]
    for v in rows:
        check_vector(field, ambient, v)
    reduced, pivots = _echelon(rows, ambient)
    return Subspace(field, ambient, tuple(tuple(r) for r in reduced), tuple(pivots))


span = rref


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    """Smallest subspace containing both A and B."""
    a._check(b)
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    return rref(a.field, a.ambient, a.rows + b.rows)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """
    A ∩ B by the Zassenhaus construction: row-reduce [[A, A], [B, 0]]; the rows whose
    left half vanishes carry a basis of the intersection in their right half.
    """
    a._check(b)
    n = a.ambient
    if a.is_zero or b.is_zero:
        return Subspace.zero(a.field, n)
    z = zero_vector(a.field, n)
    stacked = [tuple(r) + tuple(r) for r in a.rows] + [tuple(r) + z for r in b.rows]
    reduced, pivots = _echelon(stacked, 2 * n)
    right = [row[n:] for row, p in zip(reduced, pivots) if p >= n]
    return rref(a.field, n, right)


def complement_in(a: Subspace, b: Subspace) -> Subspace:
    """
    C with A ⊕ C = B. B's RREF rows are scanned in increasing pivot order and each row
    not already in A + (rows chosen so far) is kept.
    """
    a._check(b)
    if not a.is_subspace_of(b):
        raise NotContainedError("complement_in 要求 A ⊆ B")
    current = a
    chosen: list[Vector] = []
    for row in b.rows:
        if not current.contains(row):
            current = current.with_vector(row)
            chosen.append(row)
    return rref(a.field, a.ambient, chosen)


def contains(a: Subspace, v: Vector) -> bool:
    return a.contains(v)


def kernel(field: Field, ambient: int, constraints: Iterable[Sequence[Scalar]]) -> Subspace:
    """{x : <c, x> = 0 for every constraint row c}"""
    rows = [tuple(c) for c in constraints]
    for c in rows:
        check_vector(field, ambient, c)
    reduced, pivots = _echelon(rows, ambient)
    pivot_set = set(pivots)
    basis = []
    for f in range(ambient):
        if f in pivot_set:
            continue
        x = [field.zero] * ambient
        x[f] = field.one
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return rref(field, ambient, basis)


# ---------------------------------------------------------------- finite-field enumeration

def iter_elements(space: Subspace) -> Iterator[Vector]:
    """Every vector of a subspace over GF(p), zero included."""
    field = space.field
    for coeffs in product(list(field.elements()), repeat=space.dim):
        yield linear_combination(field, space.ambient, coeffs, space.rows)


def projective_points(space: Subspace) -> Iterator[Vector]:
    """One nonzero representative per line of a subspace over GF(p)."""
    field = space.field
    elements = list(field.elements())
    d = space.dim
    for lead in range(d):
        for tail in product(elements, repeat=d - lead - 1):
            coeffs = [field.zero] * lead + [field.one] + list(tail)
            yield linear_combination(field, space.ambient, coeffs, space.rows)


def enumerate_subspaces(space: Subspace) -> list[Subspace]:
    """All subspaces of a subspace over GF(p), ordered by dimension then rows."""
    points = list(projective_points(space))
    seen = {Subspace.zero(space.field, space.ambient)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for v in points:
                if w.contains(v):
                    continue
                grown = w.with_vector(v)
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return sorted(seen, key=lambda s: (s.dim, s.pivots, [[int(a) for a in r] for r in s.rows]))


def random_combination(space: Subspace, rng: random.Random, bound: int = 5) -> Vector:
    """Seeded nonzero element of `space` (space must be nonzero)."""
    field = space.field
    while True:
        coeffs = [field(rng.randint(-bound, bound)) for _ in range(space.dim)]
        v = linear_combination(field, space.ambient, coeffs, space.rows)
        if not vec_is_zero(v):
            return v
