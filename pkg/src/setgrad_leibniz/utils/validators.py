"""输入校验工具"""

import re
from math import isqrt

_RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(/[+-]?\d+)?$')
_INTEGER_PATTERN = re.compile(r'^[+-]?\d+$')

MAX_PRIME = 2 ** 31


def is_prime(n: int) -> bool:
    """试除法判定素数（p <= 2^31 足够快）"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def validate_prime(p: int) -> tuple[bool, str]:
    """
    验证 GF(p) 的模数
    返回: (是否有效, 错误信息或空字符串)
    """
    if isinstance(p, bool) or not isinstance(p, int):
        return False, f"模数必须是整数: {p!r}"
    if p > MAX_PRIME:
        return False, f"模数 {p} 超过上限 2^31"
    if not is_prime(p):
        return False, f"模数 {p} 不是素数"
    return True, ""


def validate_rational_literal(text: str) -> bool:
    """验证有理数字面量格式 "p/q" 或 "n" """
    if not _RATIONAL_PATTERN.match(text.strip()):
        return False
    if "/" in text:
        return int(text.split("/")[1]) != 0
    return True


def validate_integer_literal(text: str) -> bool:
    """验证 GF(p) 字面量格式（整数）"""
    return bool(_INTEGER_PATTERN.match(text.strip()))


def validate_parity(value: object) -> tuple[bool, str]:
    """校验 Z2 奇偶性（只接受 0 或 1）"""
    if isinstance(value, bool) or value not in (0, 1):
        return False, f"奇偶性必须是 0 或 1: {value!r}"
    return True, ""
