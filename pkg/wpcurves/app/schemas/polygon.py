from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictInt, field_validator

from .polytope import Row, Triple

Point = Tuple[int, int]
Linear = Tuple[Tuple[int, int], Tuple[int, int]]


class LatticePolygon(BaseModel):
    """凸格多邊形，頂點逆時針排列且嚴格凸"""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[Point, ...]
    lattice_points: Tuple[Point, ...] = Field(..., description="所有格點，依字典序")
    interior: int
    boundary: int
    twice_area: int

    @property
    def n(self) -> int:
        return self.interior + self.boundary

    def to_json(self) -> Dict[str, List[List[int]]]:
        return {"vertices": [list(v) for v in self.vertices]}


class PolygonPayload(BaseModel):
    """多邊形 JSON 輸入，座標必須是整數（不接受小數、布林或字串）"""

    vertices: List[Tuple[StrictInt, StrictInt]]


class UnimodularAffineMap(BaseModel):
    """x ↦ A·x + t，A 為 |det| = 1 的整數矩陣"""

    model_config = ConfigDict(frozen=True)

    linear: Linear = ((1, 0), (0, 1))
    translation: Point = (0, 0)

    @field_validator("linear")
    def check_unimodular(cls, v: Linear) -> Linear:
        det = v[0][0] * v[1][1] - v[0][1] * v[1][0]
        if abs(det) != 1:
            raise ValueError(f"線性部分的行列式必須為 ±1: {det}")
        return v

    @classmethod
    def identity(cls) -> "UnimodularAffineMap":
        return cls()

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.linear
        return a * d - b * c

    def apply(self, point: Point) -> Point:
        (a, b), (c, d) = self.linear
        x, y = point
        return (a * x + b * y + self.translation[0], c * x + d * y + self.translation[1])

    def compose(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """回傳 self ∘ other"""
        (a, b), (c, d) = self.linear
        (e, f), (g, h) = other.linear
        linear = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        tx, ty = self.apply(other.translation)
        return UnimodularAffineMap(linear=linear, translation=(tx, ty))

    def inverse(self) -> "UnimodularAffineMap":
        (a, b), (c, d) = self.linear
        det = self.det
        # det = ±1，反矩陣仍為整數
        inv = ((d * det, -b * det), (-c * det, a * det))
        partial = UnimodularAffineMap(linear=inv)
        tx, ty = partial.apply(self.translation)
        return UnimodularAffineMap(linear=inv, translation=(-tx, -ty))

    def to_json(self) -> Dict[str, List]:
        return {"linear": [list(r) for r in self.linear], "translation": list(self.translation)}


class Projection(BaseModel):
    """P 投影到 ℤ² 的結果與每一列的像"""

    model_config = ConfigDict(frozen=True)

    triple: Triple
    polygon: LatticePolygon
    images: Tuple[Tuple[Row, Point], ...]

    def image_map(self) -> Dict[Row, Point]:
        return dict(self.images)
