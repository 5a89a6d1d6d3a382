import json
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..core.exceptions import InvalidInputError
from .polygon import UnimodularAffineMap
from .polytope import Row
from .quadruple import Quadruple

FractionRow = Tuple[Fraction, Fraction, Fraction]


class CurveTerm(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficient: Fraction
    exponents: Row


class WeightedCurve(BaseModel):
    """加權齊次多項式 f，每一項的加權次數皆為 d"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    quadruple: Quadruple
    terms: Tuple[CurveTerm, ...]

    @model_validator(mode="after")
    def check_terms(self) -> "WeightedCurve":
        if not self.terms:
            raise ValueError("多項式至少需要一項")
        w = self.quadruple.weights
        for term in self.terms:
            if min(term.exponents) < 0:
                raise ValueError(f"指數不可為負: {term.exponents}")
            degree = sum(e * wi for e, wi in zip(term.exponents, w))
            if degree != self.quadruple.d:
                raise ValueError(f"單項式 {term.exponents} 的次數 {degree} 不等於 d={self.quadruple.d}")
            if term.coefficient == 0:
                raise ValueError(f"係數為 0 的項不屬於支撐集: {term.exponents}")
        return self

    @property
    def support(self) -> List[Row]:
        return [t.exponents for t in self.terms]

    def to_payload(self) -> Dict[str, Any]:
        return {
            "quadruple": list(self.quadruple.as_tuple()),
            "terms": [
                {"coefficient": str(t.coefficient), "exponents": list(t.exponents)} for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, text: str) -> "WeightedCurve":
        """{"quadruple": [w0,w1,w2,d], "terms": [{"coefficient": "3/2", "exponents": [a,b,c]}]}"""
        try:
            payload = json.loads(text)
            quadruple = Quadruple.of(*payload["quadruple"])
            terms = tuple(
                CurveTerm(coefficient=Fraction(str(t["coefficient"])), exponents=tuple(t["exponents"]))
                for t in payload["terms"]
            )
            return cls(quadruple=quadruple, terms=terms)
        except (ValueError, KeyError, TypeError) as e:
            raise InvalidInputError(f"曲線 JSON 格式錯誤: {str(e)}") from e


class BasisChange(BaseModel):
    """M(P)·T = M(P') 的有理矩陣 T 與列對應"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: Quadruple
    target: Quadruple
    matrix: Tuple[FractionRow, FractionRow, FractionRow]
    row_map: Tuple[Tuple[Row, Row], ...]
    witness: UnimodularAffineMap

    @property
    def max_denominator(self) -> int:
        return max(x.denominator for row in self.matrix for x in row)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "source": list(self.source.as_tuple()),
            "target": list(self.target.as_tuple()),
            "T": [[str(x) for x in row] for row in self.matrix],
            "witness": self.witness.to_json(),
        }


class SupportCheck(BaseModel):
    """平滑判準的支撐集條件在映射前後是否成立"""

    model_config = ConfigDict(frozen=True)

    source_ok: bool
    image_ok: bool

    @property
    def regressed(self) -> bool:
        return self.source_ok and not self.image_ok
