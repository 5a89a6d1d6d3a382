import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import InvalidInputError, InvariantViolation, PreconditionError
from ..schemas.curve import BasisChange, CurveTerm, SupportCheck, WeightedCurve
from ..schemas.polygon import UnimodularAffineMap
from ..schemas.polytope import Row
from ..schemas.quadruple import Quadruple
from ..utils.intmath import inverse3, matmul, vec_mat
from .polygon_service import PolygonService
from .polytope_service import PolytopeService

logger = logging.getLogger(__name__)


class BasisChangeService:
    """同一多邊形類中兩個四元組之間的基底變換 T 與曲線映射"""

    @classmethod
    def basis_change(cls, q: Quadruple, q2: Quadruple, witness: UnimodularAffineMap) -> BasisChange:
        """
        由見證映射建立列對應 v ↦ v'，並解 A·T = B

        A 為 P 的單模三元組，B 為其在 P' 中的對應列。
        """
        p, p2 = PolytopeService.build(q), PolytopeService.build(q2)
        source = PolygonService.project_polytope(p)
        target = PolygonService.project_polytope(p2)
        return cls._from_projections(q, q2, source, target, witness)

    @staticmethod
    def _from_projections(q, q2, source, target, witness: UnimodularAffineMap) -> BasisChange:
        rows_of = {img: row for row, img in target.images}
        row_map: List[Tuple[Row, Row]] = []
        for row, img in source.images:
            mapped = witness.apply(img)
            if mapped not in rows_of:
                raise PreconditionError(f"見證映射未把 {q} 的多邊形映到 {q2} 的多邊形")
            row_map.append((row, rows_of[mapped]))
        lookup = dict(row_map)

        a_rows = source.triple
        b_rows = tuple(lookup[v] for v in a_rows)
        matrix = matmul(inverse3(a_rows), b_rows)

        for v, v2 in row_map:
            if vec_mat(v, matrix) != tuple(Fraction(x) for x in v2):
                raise InvariantViolation("basis-change", f"{v}·T 不等於 {v2}")
        if any((x * q.d).denominator != 1 for r in matrix for x in r):
            raise InvariantViolation("basis-change-denominator", f"T 的分母不整除 d={q.d}")

        return BasisChange(
            source=q,
            target=q2,
            matrix=matrix,
            row_map=tuple(row_map),
            witness=witness,
        )

    @staticmethod
    def simplicity_key(bc: BasisChange) -> Tuple[int, Fraction, Tuple[Fraction, ...]]:
        """最大分母、元素絕對值和、元素本身"""
        entries = tuple(x for row in bc.matrix for x in row)
        return bc.max_denominator, sum((abs(x) for x in entries), Fraction(0)), entries

    @classmethod
    def all_basis_changes(
        cls, q: Quadruple, q2: Quadruple, allow_reflections: Optional[bool] = None
    ) -> List[BasisChange]:
        if allow_reflections is None:
            allow_reflections = not settings.SL_ONLY
        p, p2 = PolytopeService.build(q), PolytopeService.build(q2)
        source = PolygonService.project_polytope(p)
        target = PolygonService.project_polytope(p2)
        witnesses = PolygonService.all_witnesses(source.polygon, target.polygon, allow_reflections)
        if not witnesses:
            raise InvalidInputError(f"{q} 與 {q2} 的多邊形不等價")
        return [cls._from_projections(q, q2, source, target, w) for w in witnesses]

    @classmethod
    def best_basis_change(
        cls, q: Quadruple, q2: Quadruple, allow_reflections: Optional[bool] = None
    ) -> BasisChange:
        return min(cls.all_basis_changes(q, q2, allow_reflections), key=cls.simplicity_key)

    @staticmethod
    def support_conditions(weights: Sequence[int], support: Sequence[Row]) -> bool:
        """
        平滑判準的支撐集條件

        每個軸 i 都要有 x_i^k·x_j 形式的單項式（k >= 1），且有一項不含 x_i。
        """
        for i in range(3):
            has_near_pure = any(
                e[i] >= 1 and sum(e) - e[i] <= 1 for e in support
            )
            has_avoiding = any(e[i] == 0 for e in support)
            if not (has_near_pure and has_avoiding):
                return False
        return True

    @classmethod
    def map_curve(cls, curve: WeightedCurve, bc: BasisChange, q2: Quadruple) -> Tuple[WeightedCurve, SupportCheck]:
        if curve.quadruple != bc.source or q2 != bc.target:
            raise PreconditionError(f"基底變換是 {bc.source} → {bc.target}，與曲線或目標不符")
        terms = []
        for term in curve.terms:
            image = vec_mat(term.exponents, bc.matrix)
            if any(x.denominator != 1 or x < 0 for x in image):
                raise InvariantViolation("curve-map", f"{term.exponents}·T = {[str(x) for x in image]} 不是非負整數")
            exponents = tuple(int(x) for x in image)
            degree = sum(e * w for e, w in zip(exponents, q2.weights))
            if degree != q2.d:
                raise InvariantViolation("curve-map", f"像 {exponents} 的次數 {degree} 不等於 d'={q2.d}")
            terms.append(CurveTerm(coefficient=term.coefficient, exponents=exponents))

        mapped = WeightedCurve(quadruple=q2, terms=tuple(terms))
        check = SupportCheck(
            source_ok=cls.support_conditions(curve.quadruple.weights, curve.support),
            image_ok=cls.support_conditions(q2.weights, mapped.support),
        )
        if check.regressed:
            logger.warning(f"⚠️ {curve.quadruple} → {q2}：支撐集條件在映射後不再成立")
        return mapped, check
