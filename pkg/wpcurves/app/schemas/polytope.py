from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .quadruple import Quadruple

Row = Tuple[int, int, int]
Triple = Tuple[Row, Row, Row]


class WeightedPolytope(BaseModel):
    """次數 d 的所有單項式形成的格多面體 P，points 依字典序即為 M(P) 的列"""

    model_config = ConfigDict(frozen=True)

    quadruple: Quadruple
    points: Tuple[Row, ...]
    interior: Tuple[Row, ...]

    @property
    def n(self) -> int:
        return len(self.points)


class DistinguishedTriangle(BaseModel):
    """三個特殊點與其情況標籤"""

    model_config = ConfigDict(frozen=True)

    rows: Triple = Field(..., description="依實際軸順序 0,1,2 的三個特殊點")
    case_tag: str = Field(..., description="a.i, a.ii, b.i, b.ii, b.iii, c, d")
    permutation: Tuple[int, int, int] = Field(..., description="情況軸 p 對應到實際軸 permutation[p]")
    case_weights: Tuple[int, int, int]
    a: int
    b: int
    c: int
    k: Optional[int] = None
    l: Optional[int] = None
    predicted_det: int


class CaseReport(BaseModel):
    """情況分析的行列式與虧格恆等式檢查結果"""

    model_config = ConfigDict(frozen=True)

    triangle: DistinguishedTriangle
    actual_det: int
    predicted_det: int
    det_matches: bool
    identity: str
    identity_lhs: int
    identity_rhs: int
    identity_holds: bool


class Decomposition(BaseModel):
    """target = α1·v1 + α2·v2 + α3·v3"""

    model_config = ConfigDict(frozen=True)

    triple: Triple
    target: Row
    alphas: Tuple[int, int, int]


class LemmaReport(BaseModel):
    """單一四元組的組合引理檢查彙總"""

    model_config = ConfigDict(frozen=True)

    quadruple: Quadruple
    n: int
    interior: int
    genus: int
    minors_checked: int
    minors_exhaustive: bool
    unimodular_triple: Triple
    case: CaseReport
    bound_status: str
