from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..core.exceptions import InvalidInputError


class Quadruple(BaseModel):
    """加權平面曲線四元組 (w0, w1, w2, d)，保留使用者給定的順序"""

    model_config = ConfigDict(frozen=True)

    w0: int = Field(..., ge=1, description="x0 的權重")
    w1: int = Field(..., ge=1, description="x1 的權重")
    w2: int = Field(..., ge=1, description="x2 的權重")
    d: int = Field(..., ge=1, description="加權次數")

    @classmethod
    def of(cls, w0: int, w1: int, w2: int, d: int) -> "Quadruple":
        try:
            return cls(w0=w0, w1=w1, w2=w2, d=d)
        except ValidationError as e:
            raise InvalidInputError(f"四元組各項必須為正整數: {(w0, w1, w2, d)}") from e

    @classmethod
    def parse(cls, text: str) -> "Quadruple":
        """解析 "w0,w1,w2,d" 字串"""
        parts = [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]
        if len(parts) != 4:
            raise InvalidInputError(f"四元組需要四個整數: {text!r}")
        try:
            values = [int(p) for p in parts]
        except ValueError as e:
            raise InvalidInputError(f"四元組含非整數: {text!r}") from e
        return cls.of(*values)

    @property
    def weights(self) -> Tuple[int, int, int]:
        return (self.w0, self.w1, self.w2)

    @property
    def normalized_key(self) -> Tuple[int, int, int, int]:
        """權重排序後的鍵，用於去除重複"""
        a, b, c = sorted(self.weights)
        return (a, b, c, self.d)

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.d, self.w0, self.w1, self.w2)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.w0, self.w1, self.w2, self.d)

    def __str__(self) -> str:
        return f"({self.w0},{self.w1},{self.w2},{self.d})"


class MonomialWitness(BaseModel):
    """條件 (i) 的見證：k·w_i + w_j = d"""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    j: int = Field(..., ge=0, le=2)


class AvoidingWitness(BaseModel):
    """條件 (ii) 的見證：次數 d 且第 i 軸指數為 0 的單項式"""

    model_config = ConfigDict(frozen=True)

    exponents: Tuple[int, int, int]


class ValidityReport(BaseModel):
    """四元組的有效性報告；不成立是資料，不是錯誤"""

    model_config = ConfigDict(frozen=True)

    quadruple: Quadruple
    is_good: bool
    pairwise_coprime: bool
    degree_dominates: bool
    condition_i: List[Optional[MonomialWitness]]
    condition_ii: List[Optional[AvoidingWitness]]
    divides: List[bool]
    genus: Optional[int] = None
