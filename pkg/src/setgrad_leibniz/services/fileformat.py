"""
代数文件格式（JSON）读写

{
  "field": "Q" | {"GF": p},
  "basis": [{"name": "x", "label": "a", "parity": 0}, ...],
  "products": [{"left": "x", "right": "x", "result": [{"basis": "y", "coeff": "1"}]}],
  "distinguished": "b" | null
}
缺省的乘积为 0；系数一律为字符串。
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field as PydanticField, ValidationError

from ..utils.config import get_settings
from ..utils.errors import AlgebraFileError, AlgebraStructureError
from ..utils.validators import validate_prime
from .algebra import Algebra, BasisElement
from .exactlin import Field

logger = logging.getLogger(__name__)


class GFField(BaseModel):
    model_config = ConfigDict(extra="forbid")

    GF: int = PydanticField(description="素数特征")


class BasisModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = PydanticField(min_length=1)
    label: str = PydanticField(min_length=1)
    parity: Literal[0, 1]


class TermModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    basis: str
    coeff: str


class ProductModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    left: str
    right: str
    result: list[TermModel] = PydanticField(default_factory=list)


class AlgebraFile(BaseModel):
    """代数文件的顶层结构"""

    model_config = ConfigDict(extra="forbid")

    field: Union[Literal["Q"], GFField]
    basis: list[BasisModel]
    products: list[ProductModel] = PydanticField(default_factory=list)
    distinguished: Optional[str] = None


def _location(loc: tuple) -> str:
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out or "<root>"


def _field_of(model: AlgebraFile) -> Field:
    if model.field == "Q":
        return Field.rationals()
    p = model.field.GF
    ok, msg = validate_prime(p)
    if not ok:
        raise AlgebraFileError(msg, "field.GF")
    return Field.prime(p)


def algebra_from_model(model: AlgebraFile) -> Algebra:
    """把已通过结构校验的文件模型转换为 Algebra；名称/系数错误带位置信息"""
    fld = _field_of(model)
    settings = get_settings()
    if len(model.basis) > settings.max_dimension:
        raise AlgebraFileError(
            f"维数 {len(model.basis)} 超过上限 {settings.max_dimension}", "basis"
        )
    index: dict[str, int] = {}
    for k, b in enumerate(model.basis):
        if b.name in index:
            raise AlgebraFileError(f"基元素名称重复: {b.name!r}", f"basis[{k}].name")
        index[b.name] = k
    n = len(model.basis)
    table: dict = {}
    for k, prod in enumerate(model.products):
        for side in ("left", "right"):
            nm = getattr(prod, side)
            if nm not in index:
                raise AlgebraFileError(f"未知基元素: {nm!r}", f"products[{k}].{side}")
        key = (index[prod.left], index[prod.right])
        if key in table:
            raise AlgebraFileError(
                f"乘积 [{prod.left},{prod.right}] 重复定义", f"products[{k}]"
            )
        vec = [fld.zero] * n
        for t, term in enumerate(prod.result):
            where = f"products[{k}].result[{t}]"
            if term.basis not in index:
                raise AlgebraFileError(f"未知基元素: {term.basis!r}", f"{where}.basis")
            try:
                coeff = fld.parse(term.coeff)
            except ValueError as e:
                raise AlgebraFileError(str(e), f"{where}.coeff") from e
            vec[index[term.basis]] = vec[index[term.basis]] + coeff
        table[key] = tuple(vec)
    basis = tuple(BasisElement(b.name, b.label, b.parity) for b in model.basis)
    try:
        return Algebra(fld, basis, table, model.distinguished)
    except AlgebraStructureError as e:
        raise AlgebraFileError(str(e), "distinguished") from e


def parse_algebra(text: str) -> Algebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"JSON 解析失败: {e.msg}", f"line {e.lineno} column {e.colno}") from e
    try:
        model = AlgebraFile.model_validate(data)
    except ValidationError as e:
        err = e.errors()[0]
        raise AlgebraFileError(err["msg"], _location(tuple(err["loc"]))) from e
    return algebra_from_model(model)


def load_algebra(path: Union[str, Path]) -> Algebra:
    """读取代数文件，任何格式问题都抛出带位置的 AlgebraFileError"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise AlgebraFileError(f"无法读取文件: {e}", str(path)) from e
    alg = parse_algebra(text)
    logger.info(f"已加载代数 {path.name}: dim = {alg.dim}, 域 = {alg.field.name}")
    return alg


def algebra_to_model(alg: Algebra) -> AlgebraFile:
    fld = alg.field
    products = []
    for (i, j), vec in alg.products.items():
        products.append(ProductModel(
            left=alg.basis[i].name,
            right=alg.basis[j].name,
            result=[
                TermModel(basis=alg.basis[k].name, coeff=fld.format(c))
                for k, c in enumerate(vec) if c
            ],
        ))
    return AlgebraFile(
        field="Q" if fld.is_rational else GFField(GF=fld.characteristic),
        basis=[BasisModel(name=b.name, label=b.label, parity=b.parity) for b in alg.basis],
        products=products,
        distinguished=alg.distinguished,
    )


def algebra_to_json(alg: Algebra) -> str:
    return algebra_to_model(alg).model_dump_json(indent=2) + "\n"


def dump_algebra(alg: Algebra, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(algebra_to_json(alg), encoding="utf-8")
    return path


def input_digest(path: Union[str, Path]) -> str:
    """输入文件内容的 sha256，用于报告"""
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()
