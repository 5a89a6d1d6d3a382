"""
精確整數運算工具模組

所有中間值皆檢查是否落在有號 128 位元範圍內，超出即拋出 OverflowGuardError。
"""

from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

from ..core.exceptions import OverflowGuardError

INT128_BOUND = 1 << 127

Vec3 = Tuple[int, int, int]
Vec2 = Tuple[int, int]
FractionMatrix = Tuple[Tuple[Fraction, Fraction, Fraction], ...]


def checked(value: int, context: str = "") -> int:
    """確認整數落在 [-2^127, 2^127) 內"""
    if -INT128_BOUND <= value < INT128_BOUND:
        return value
    raise OverflowGuardError(f"中間值超出 128 位元範圍: {context}", {"bits": value.bit_length()})


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """擴展歐幾里得演算法，回傳 (g, s, t) 使 s*a + t*b = g >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def cross(o: Vec2, a: Vec2, b: Vec2) -> int:
    """(a - o) x (b - o) 的 z 分量"""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def det3(rows: Sequence[Sequence[int]]) -> int:
    """3x3 整數矩陣行列式"""
    (a, b, c), (d, e, f), (g, h, i) = rows
    value = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return checked(value, "det3")


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return checked(sum(x * y for x, y in zip(u, v)), "dot")


def cramer(rows: Sequence[Vec3], target: Sequence[int]) -> Tuple[Fraction, Fraction, Fraction]:
    """
    求解 target = Σ α_i rows[i]（列組合）

    以 Cramer 法則：α_i = det(rows 中第 i 列換成 target) / det(rows)
    """
    base = det3(rows)
    if base == 0:
        raise ZeroDivisionError("奇異矩陣")
    alphas = []
    for idx in range(3):
        replaced = [tuple(target) if j == idx else rows[j] for j in range(3)]
        alphas.append(Fraction(det3(replaced), base))
    return alphas[0], alphas[1], alphas[2]


def inverse3(rows: Sequence[Vec3]) -> FractionMatrix:
    """以伴隨矩陣求 3x3 整數矩陣的有理反矩陣"""
    base = det3(rows)
    if base == 0:
        raise ZeroDivisionError("奇異矩陣")
    m = rows
    cof = [[0] * 3 for _ in range(3)]
    for r in range(3):
        for c in range(3):
            minor = [[m[i][j] for j in range(3) if j != c] for i in range(3) if i != r]
            cof[r][c] = (-1) ** (r + c) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    # 反矩陣 = 伴隨（餘因子轉置）/ det
    return tuple(
        tuple(Fraction(cof[c][r], base) for c in range(3)) for r in range(3)
    )


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> FractionMatrix:
    size_k = len(b)
    cols = len(b[0])
    return tuple(
        tuple(Fraction(sum(Fraction(row[k]) * b[k][c] for k in range(size_k))) for c in range(cols))
        for row in a
    )


def vec_mat(v: Sequence[int], t: Sequence[Sequence[Fraction]]) -> Tuple[Fraction, ...]:
    """列向量乘矩陣 v·T"""
    return tuple(sum((Fraction(v[k]) * t[k][c] for k in range(len(v))), Fraction(0)) for c in range(len(t[0])))
