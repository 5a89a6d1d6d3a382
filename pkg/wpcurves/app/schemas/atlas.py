from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .polygon import Point
from .polytope import Triple
from .quadruple import Quadruple

ATLAS_VERSION = 1


class AtlasClass(BaseModel):
    """一個多邊形等價類及其成員四元組"""

    model_config = ConfigDict(frozen=True)

    class_index: int
    canonical: Tuple[Point, ...] = Field(..., description="標準形頂點")
    n: int
    members: Tuple[Quadruple, ...]
    triples: Tuple[Triple, ...] = Field(..., description="與 members 一一對應的單模三元組")


class ClassAtlas(BaseModel):
    """依多邊形類分組的 g-good 四元組圖譜"""

    model_config = ConfigDict(frozen=True)

    genus: int
    d_max: int
    classes: Tuple[AtlasClass, ...]

    @property
    def member_count(self) -> int:
        return sum(len(c.members) for c in self.classes)

    def to_payload(self) -> Dict[str, Any]:
        """固定鍵順序的 JSON 結構"""
        return {
            "version": ATLAS_VERSION,
            "g": self.genus,
            "d_max": self.d_max,
            "classes": [
                {
                    "canonical": [list(v) for v in c.canonical],
                    "n": c.n,
                    "members": [list(q.as_tuple()) for q in c.members],
                    "triples": [[list(r) for r in t] for t in c.triples],
                }
                for c in self.classes
            ],
        }

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "ClassAtlas":
        classes = []
        for index, item in enumerate(payload["classes"]):
            classes.append(
                AtlasClass(
                    class_index=index,
                    canonical=tuple(tuple(v) for v in item["canonical"]),
                    n=item["n"],
                    members=tuple(Quadruple.of(*m) for m in item["members"]),
                    triples=tuple(tuple(tuple(r) for r in t) for t in item["triples"]),
                )
            )
        return cls(genus=payload["g"], d_max=payload["d_max"], classes=tuple(classes))


class StabilizationStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    d_max: int
    class_count: int


class StabilizationReport(BaseModel):
    """各 d 上限下的類數，觀察是否穩定"""

    model_config = ConfigDict(frozen=True)

    genus: int
    steps: List[StabilizationStep] = []
    grew_at_last_step: bool = False
    abstract_bound: Optional[int] = Field(None, description="恰有 g 個內點的多邊形類總數")
