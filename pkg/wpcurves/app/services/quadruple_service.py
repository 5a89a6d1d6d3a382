import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from ..core.config import settings
from ..core.exceptions import InvalidInputError, InvariantViolation, PreconditionError
from ..schemas.quadruple import AvoidingWitness, MonomialWitness, Quadruple, ValidityReport
from ..tasks.parallel import run_parallel
from ..utils.intmath import lcm

logger = logging.getLogger(__name__)


def _other_axes(i: int) -> Tuple[int, int]:
    return tuple(j for j in range(3) if j != i)  # type: ignore[return-value]


def _scan_degree(args: Tuple[int, Tuple[int, ...]]) -> List[Tuple[int, Tuple[int, int, int, int]]]:
    """
    掃描單一次數 d 的所有 w0 <= w1 <= w2 < d

    先檢查兩兩互質，再用整數形式的虧格公式過濾，最後檢查條件 (i)(ii)。
    回傳 (genus, 四元組) 列表。
    """
    d, genera = args
    wanted = set(genera)
    found = []
    for w0 in range(1, d):
        g0 = gcd(w0, d)
        for w1 in range(w0, d):
            if gcd(w0, w1) != 1:
                continue
            g1 = gcd(w1, d)
            for w2 in range(w1, d):
                if gcd(w0, w2) != 1 or gcd(w1, w2) != 1:
                    continue
                prod = w0 * w1 * w2
                # 2g·Π = d(d-Σw) + Σ gcd(w_i,d)·Π/w_i - Π
                numerator = (
                    d * (d - w0 - w1 - w2)
                    + g0 * w1 * w2
                    + g1 * w0 * w2
                    + gcd(w2, d) * w0 * w1
                    - prod
                )
                if numerator < 0 or numerator % (2 * prod):
                    continue
                g = numerator // (2 * prod)
                if g not in wanted:
                    continue
                weights = (w0, w1, w2)
                if QuadrupleService.satisfies_conditions(weights, d):
                    found.append((g, (w0, w1, w2, d)))
    return found


class QuadrupleService:
    """四元組有效性、權重正規化、虧格與列舉服務"""

    @staticmethod
    def reduce_weights(w0: int, w1: int, w2: int) -> Tuple[int, int, int]:
        """
        權重正規化

        d_i 為另外兩個權重的 gcd，a_i 為另外兩個 d_i 的 lcm，回傳 w_i / a_i。
        一次即可得到兩兩互質的權重。
        """
        weights = (w0, w1, w2)
        if any(w < 1 for w in weights):
            raise InvalidInputError(f"權重必須為正整數: {weights}")
        ds = [gcd(*(weights[j] for j in _other_axes(i))) for i in range(3)]
        result = []
        for i in range(3):
            j, k = _other_axes(i)
            result.append(weights[i] // lcm(ds[j], ds[k]))
        return result[0], result[1], result[2]

    @staticmethod
    def monomial_witness(weights: Tuple[int, int, int], d: int, i: int) -> Optional[MonomialWitness]:
        """條件 (i)：找 k >= 1 與 j 使 k·w_i + w_j = d（j 可等於 i）"""
        wi = weights[i]
        for j in range(3):
            rest = d - weights[j]
            if rest >= wi and rest % wi == 0:
                return MonomialWitness(k=rest // wi, j=j)
        return None

    @staticmethod
    def avoiding_witness(weights: Tuple[int, int, int], d: int, i: int) -> Optional[AvoidingWitness]:
        """條件 (ii)：找非負 (b, c) 使 b·w_j + c·w_k = d"""
        j, k = _other_axes(i)
        wj, wk = weights[j], weights[k]
        for b in range(d // wj + 1):
            rest = d - b * wj
            if rest % wk == 0:
                exponents = [0, 0, 0]
                exponents[j] = b
                exponents[k] = rest // wk
                return AvoidingWitness(exponents=tuple(exponents))
        return None

    @staticmethod
    def satisfies_conditions(weights: Tuple[int, int, int], d: int) -> bool:
        """只檢查條件 (i)(ii)，供列舉時快速篩選"""
        for i in range(3):
            wi = weights[i]
            if not any(d - wj >= wi and (d - wj) % wi == 0 for wj in weights):
                return False
            j, k = _other_axes(i)
            wj, wk = weights[j], weights[k]
            if not any((d - b * wj) % wk == 0 for b in range(d // wj + 1)):
                return False
        return True

    @staticmethod
    def raw_genus(q: Quadruple) -> Fraction:
        """虧格公式，不檢查 good 條件"""
        w = q.weights
        prod = w[0] * w[1] * w[2]
        value = Fraction(q.d * (q.d - sum(w)), prod)
        value += sum(Fraction(gcd(wi, q.d), wi) for wi in w)
        return (value - 1) / 2

    @classmethod
    def validate(cls, q: Quadruple) -> ValidityReport:
        w = q.weights
        pairwise_coprime = all(gcd(w[i], w[j]) == 1 for i in range(3) for j in range(i + 1, 3))
        degree_dominates = q.d > max(w)
        condition_i = [cls.monomial_witness(w, q.d, i) for i in range(3)]
        condition_ii = [cls.avoiding_witness(w, q.d, i) for i in range(3)]
        divides = [q.d % wi == 0 for wi in w]

        is_good = (
            pairwise_coprime
            and degree_dominates
            and all(c is not None for c in condition_i)
            and all(c is not None for c in condition_ii)
        )

        genus = None
        if is_good:
            for i, wi in enumerate(w):
                if not divides[i] and gcd(wi, q.d) != 1:
                    raise InvariantViolation(
                        "axis-divisibility",
                        f"{q} 第 {i} 軸既不整除 d 也不與 d 互質",
                    )
            genus = cls._integral_genus(q)

        return ValidityReport(
            quadruple=q,
            is_good=is_good,
            pairwise_coprime=pairwise_coprime,
            degree_dominates=degree_dominates,
            condition_i=condition_i,
            condition_ii=condition_ii,
            divides=divides,
            genus=genus,
        )

    @classmethod
    def _integral_genus(cls, q: Quadruple) -> int:
        value = cls.raw_genus(q)
        if value.denominator != 1 or value < 0:
            raise InvariantViolation("genus-integrality", f"{q} 的虧格不是非負整數: {value}")
        return int(value)

    @classmethod
    def genus(cls, q: Quadruple) -> int:
        if not cls.validate(q).is_good:
            raise PreconditionError(f"{q} 不是 good 四元組，無法計算虧格")
        return cls._integral_genus(q)

    @staticmethod
    def family_quadruple(g: int, m: int) -> Quadruple:
        """族 d = (2g+2)m - 1 的成員 (1, (d-1)/2, (d+1)/(2g+2), d)"""
        if g < 1 or m < 1:
            raise InvalidInputError(f"g 與 m 必須 >= 1: g={g}, m={m}")
        d = (2 * g + 2) * m - 1
        return Quadruple(w0=1, w1=(d - 1) // 2, w2=(d + 1) // (2 * g + 2), d=d)

    @classmethod
    def _check_d_max(cls, d_max: int) -> None:
        cap = min(settings.D_MAX_CAP, 200_000)
        if d_max > cap:
            raise InvalidInputError(f"d_max 超過上限 {cap}: {d_max}")

    @classmethod
    def enumerate_good_by_genus(
        cls, d_max: int, genera: Iterable[int], parallelism: int = 1
    ) -> Dict[int, List[Quadruple]]:
        """單次掃描，依虧格分組回傳所有 good 四元組"""
        wanted = tuple(sorted(set(genera)))
        cls._check_d_max(d_max)
        buckets: Dict[int, List[Quadruple]] = {g: [] for g in wanted}
        if d_max < 3 or not wanted:
            return buckets

        degrees = [(d, wanted) for d in range(3, d_max + 1)]
        # 大的 d 工作量較重，先送出
        results = run_parallel(_scan_degree, list(reversed(degrees)), parallelism)
        for chunk in results:
            for g, (w0, w1, w2, d) in chunk:
                buckets[g].append(Quadruple(w0=w0, w1=w1, w2=w2, d=d))
        for g in wanted:
            buckets[g].sort(key=lambda q: q.sort_key)
            logger.info(f"虧格 {g}、d <= {d_max}：找到 {len(buckets[g])} 個 good 四元組")
        return buckets

    @classmethod
    def enumerate_g_good(cls, g: int, d_max: int, parallelism: int = 1) -> List[Quadruple]:
        """列舉 w0 <= w1 <= w2 < d <= d_max 中虧格為 g 的 good 四元組"""
        if g < 1:
            raise InvalidInputError(f"g 必須 >= 1: {g}")
        return cls.enumerate_good_by_genus(d_max, [g], parallelism)[g]
