import logging
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import InvariantViolation, PreconditionError
from ..schemas.polytope import (
    CaseReport,
    Decomposition,
    DistinguishedTriangle,
    LemmaReport,
    Row,
    Triple,
    WeightedPolytope,
)
from ..schemas.quadruple import Quadruple
from ..utils.intmath import cramer, det3, dot
from .quadruple_service import QuadrupleService

logger = logging.getLogger(__name__)

# 各情況下每個軸的指標：None 表示純冪次 (α,0,0)，整數 j 表示列在第 j 軸為 1
CASE_TEMPLATES: Dict[str, Tuple[Optional[int], Optional[int], Optional[int]]] = {
    "a.i": (1, 2, 0),
    "a.ii": (1, 2, 1),
    "b.i": (None, 2, 1),
    "b.ii": (None, 0, 1),
    "b.iii": (None, 0, 0),
    "c": (None, None, 0),
    "d": (None, None, None),
}


class PolytopeService:
    """格多面體 P 與矩陣 M(P) 的建構及引理檢查"""

    @staticmethod
    def monomials_of_degree(weights: Sequence[int], degree: int) -> Tuple[Row, ...]:
        """所有滿足 a·w0 + b·w1 + c·w2 = degree 的非負 (a,b,c)，依字典序"""
        w0, w1, w2 = weights
        points = []
        if degree < 0:
            return ()
        for a in range(degree // w0 + 1):
            rest = degree - a * w0
            for b in range(rest // w1 + 1):
                last = rest - b * w1
                if last % w2 == 0:
                    points.append((a, b, last // w2))
        return tuple(points)

    @classmethod
    def build(cls, q: Quadruple) -> WeightedPolytope:
        report = QuadrupleService.validate(q)
        if not report.is_good:
            raise PreconditionError(f"{q} 不是 good 四元組，無法建構多面體")
        points = cls.monomials_of_degree(q.weights, q.d)
        interior = tuple(p for p in points if min(p) >= 1)
        return WeightedPolytope(quadruple=q, points=points, interior=interior)

    @classmethod
    def interior_count(cls, p: WeightedPolytope) -> int:
        """內點數，並與次數 d - Σw 的單項式個數交叉比對"""
        q = p.quadruple
        direct = len(p.interior)
        shifted = len(cls.monomials_of_degree(q.weights, q.d - sum(q.weights)))
        if direct != shifted:
            raise InvariantViolation(
                "interior-count",
                f"{q} 內點數 {direct} 與平移次數的解數 {shifted} 不一致",
            )
        return direct

    @staticmethod
    def minor_det(v1: Row, v2: Row, v3: Row) -> int:
        return det3((v1, v2, v3))

    @classmethod
    def check_minor_divisibility(cls, p: WeightedPolytope, limit: Optional[int] = None) -> Tuple[int, bool]:
        """
        檢查所有 3x3 子行列式皆可被 d 整除

        點數 <= limit 時窮舉；否則只檢查至少含兩個特殊點的三元組。
        回傳 (檢查數量, 是否窮舉)。
        """
        limit = settings.MINOR_EXHAUSTIVE_LIMIT if limit is None else limit
        d = p.quadruple.d
        exhaustive = p.n <= limit
        if exhaustive:
            candidates = combinations(p.points, 3)
        else:
            rows = cls.distinguished_triangle(p).rows
            candidates = (
                (rows[i], rows[j], v)
                for i, j in combinations(range(3), 2)
                for v in p.points
            )
        checked = 0
        for triple in candidates:
            value = det3(triple)
            if value % d:
                raise InvariantViolation(
                    "minor-divisibility",
                    f"{p.quadruple} 子行列式 {value} 不能被 d={d} 整除",
                    {"triple": triple},
                )
            checked += 1
        return checked, exhaustive

    @staticmethod
    def unimodular_triples(p: WeightedPolytope) -> Iterator[Triple]:
        """依索引字典序列出所有 |det| = d 的三元組"""
        d = p.quadruple.d
        for triple in combinations(p.points, 3):
            if abs(det3(triple)) == d:
                yield triple

    @classmethod
    def find_unimodular_triple(cls, p: WeightedPolytope) -> Triple:
        for triple in cls.unimodular_triples(p):
            return triple
        raise InvariantViolation("unimodular-triple", f"{p.quadruple} 找不到 |det| = d 的三元組")

    @staticmethod
    def _axis_pointers(w: Tuple[int, int, int], d: int) -> Tuple[List[Optional[int]], List[Row]]:
        """每個軸優先取純冪次，否則依索引順序在另一軸加 1"""
        pointers: List[Optional[int]] = []
        rows: List[Row] = []
        for i in range(3):
            row = [0, 0, 0]
            if d % w[i] == 0:
                row[i] = d // w[i]
                pointers.append(None)
            else:
                for j in (x for x in range(3) if x != i):
                    rest = d - w[j]
                    if rest > 0 and rest % w[i] == 0:
                        row[i] = rest // w[i]
                        row[j] = 1
                        pointers.append(j)
                        break
                else:
                    raise InvariantViolation("distinguished-point", f"第 {i} 軸找不到特殊點: w={w}, d={d}")
            rows.append(tuple(row))
        return pointers, rows

    @classmethod
    def distinguished_triangle(cls, p: WeightedPolytope) -> DistinguishedTriangle:
        q = p.quadruple
        w, d = q.weights, q.d
        pointers, rows = cls._axis_pointers(w, d)
        g = QuadrupleService.genus(q)

        for tag, template in CASE_TEMPLATES.items():
            for sigma in permutations(range(3)):
                if all(
                    pointers[sigma[axis]] == (None if template[axis] is None else sigma[template[axis]])
                    for axis in range(3)
                ):
                    return cls._solve_case(tag, sigma, tuple(rows), w, d, g)
        raise InvariantViolation("case-detection", f"{q} 的特殊點模式不符合任何情況: {pointers}")

    @staticmethod
    def _solve_case(
        tag: str, sigma: Tuple[int, int, int], rows: Triple, w: Tuple[int, int, int], d: int, g: int
    ) -> DistinguishedTriangle:
        """在情況座標下讀出 a, b, c 並解出 k, l"""
        W = tuple(w[sigma[i]] for i in range(3))
        case_rows = [tuple(rows[sigma[i]][sigma[j]] for j in range(3)) for i in range(3)]
        a, b, c = case_rows[0][0], case_rows[1][1], case_rows[2][2]

        def exact(num: int, den: int, name: str) -> int:
            if num % den:
                raise InvariantViolation("case-integrality", f"情況 {tag} 的 {name} = {num}/{den} 不是整數")
            return num // den

        k = l = None
        if tag == "a.i":
            predicted = (2 * g + 1) * d
        elif tag == "a.ii":
            k = exact(b - 1, W[2], "k")
            l = exact(a, W[2], "l")
            predicted = (2 * g + 1 + k - l) * d
        elif tag == "b.i":
            k = exact(b - 1, W[2], "k")
            predicted = (2 * g + k) * d
        elif tag == "b.ii":
            k = exact(b, W[0], "k")
            predicted = (2 * g + k) * d
        elif tag == "b.iii":
            k = exact(b, W[0] * W[2], "k")
            predicted = k * d * (d - W[0])
        elif tag == "c":
            k = exact(a, W[1], "k")
            l = exact(c, W[0], "l")
            predicted = (2 * g + k + l - 1) * d
        else:
            k = exact(d, W[0] * W[1] * W[2], "k")
            predicted = k * d * d

        return DistinguishedTriangle(
            rows=rows,
            case_tag=tag,
            permutation=sigma,
            case_weights=W,
            a=a,
            b=b,
            c=c,
            k=k,
            l=l,
            predicted_det=predicted,
        )

    @staticmethod
    def _genus_identity(t: DistinguishedTriangle, d: int, g: int) -> Tuple[str, int, int]:
        W0, W1, W2 = t.case_weights
        a, k, l, c = t.a, t.k, t.l, t.c
        tag = t.case_tag
        if tag == "a.i":
            return (
                "d(d-Σw) + w0w1 + w0w2 + w1w2 = (2g+1)w0w1w2",
                d * (d - W0 - W1 - W2) + W0 * W1 + W0 * W2 + W1 * W2,
                (2 * g + 1) * W0 * W1 * W2,
            )
        if tag == "a.ii":
            return "2g+1 = ak + l - k", 2 * g + 1, a * k + l - k
        if tag == "b.i":
            return "2g = k(a-1)", 2 * g, k * (a - 1)
        if tag == "b.ii":
            return "2g = k(c-1)", 2 * g, k * (c - 1)
        if tag == "b.iii":
            return "2g = k(d-w1-w2)", 2 * g, k * (d - W1 - W2)
        if tag == "c":
            return "2g + l + k - 1 = k·l·w0", 2 * g + l + k - 1, k * l * W0
        return "2g - 2 + kΣw = kd", 2 * g - 2 + k * (W0 + W1 + W2), k * d

    @classmethod
    def verify_case_identities(cls, p: WeightedPolytope) -> CaseReport:
        q = p.quadruple
        g = QuadrupleService.genus(q)
        triangle = cls.distinguished_triangle(p)
        actual = det3(triangle.rows)
        identity, lhs, rhs = cls._genus_identity(triangle, q.d, g)
        report = CaseReport(
            triangle=triangle,
            actual_det=actual,
            predicted_det=triangle.predicted_det,
            det_matches=actual == triangle.predicted_det,
            identity=identity,
            identity_lhs=lhs,
            identity_rhs=rhs,
            identity_holds=lhs == rhs,
        )
        if not report.det_matches:
            raise InvariantViolation(
                "case-determinant",
                f"{q} 情況 {triangle.case_tag}：實際行列式 {actual} 與公式 {triangle.predicted_det} 不符",
                {"report": report.model_dump()},
            )
        if not report.identity_holds:
            raise InvariantViolation(
                "case-genus-identity",
                f"{q} 情況 {triangle.case_tag}：{identity} 不成立（{lhs} != {rhs}）",
                {"report": report.model_dump()},
            )
        return report

    @staticmethod
    def decompose(p: WeightedPolytope, triple: Triple, target: Row) -> Decomposition:
        q = p.quadruple
        degree = dot(target, q.weights)
        if min(target) < 0 or degree <= 0 or degree % q.d:
            raise PreconditionError(f"目標 {target} 的次數 {degree} 不是 d={q.d} 的正整數倍")
        base = det3(triple)
        if abs(base) != q.d:
            raise PreconditionError(f"三元組行列式 {base} 的絕對值不是 d={q.d}")
        alphas = cramer(triple, target)
        if any(a.denominator != 1 for a in alphas):
            raise InvariantViolation(
                "decomposition-integrality",
                f"{q} 的 {target} 分解係數不是整數: {[str(a) for a in alphas]}",
            )
        ints = tuple(int(a) for a in alphas)
        rebuilt = tuple(sum(ints[i] * triple[i][j] for i in range(3)) for j in range(3))
        if rebuilt != tuple(target):
            raise InvariantViolation("decomposition-reconstruction", f"{target} 重建結果為 {rebuilt}")
        return Decomposition(triple=triple, target=tuple(target), alphas=ints)

    @staticmethod
    def bound_status(p: WeightedPolytope, g: int) -> str:
        """n <= 3g+6 為 ok，n = 3g+7 標記為 exceptional，更大則矛盾"""
        if p.n <= 3 * g + 6:
            return "ok"
        if p.n == 3 * g + 7:
            logger.warning(f"⚠️ {p.quadruple} 的點數 {p.n} 達到 3g+7，標記為 exceptional")
            return "exceptional"
        raise InvariantViolation("point-bound", f"{p.quadruple} 的點數 {p.n} 超過 3g+7={3 * g + 7}")

    @classmethod
    def verify_lemmas(cls, p: WeightedPolytope, limit: Optional[int] = None) -> LemmaReport:
        q = p.quadruple
        g = QuadrupleService.genus(q)
        interior = cls.interior_count(p)
        if interior != g:
            raise InvariantViolation("interior-genus", f"{q} 內點數 {interior} 不等於虧格 {g}")
        checked, exhaustive = cls.check_minor_divisibility(p, limit)
        triple = cls.find_unimodular_triple(p)
        case = cls.verify_case_identities(p)
        status = cls.bound_status(p, g)
        logger.debug(f"{q} 檢查完成：n={p.n}, 情況 {case.triangle.case_tag}, 子行列式 {checked} 個")
        return LemmaReport(
            quadruple=q,
            n=p.n,
            interior=interior,
            genus=g,
            minors_checked=checked,
            minors_exhaustive=exhaustive,
            unimodular_triple=triple,
            case=case,
            bound_status=status,
        )
