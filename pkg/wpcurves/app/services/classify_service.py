import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import InvalidInputError
from ..schemas.atlas import AtlasClass, ClassAtlas, StabilizationReport, StabilizationStep
from ..schemas.polytope import Triple
from ..schemas.quadruple import Quadruple
from ..tasks.parallel import run_parallel
from .polygon_enum_service import PolygonEnumService
from .polygon_service import PolygonService, Vertices, canonical_key
from .polytope_service import PolytopeService
from .quadruple_service import QuadrupleService

logger = logging.getLogger(__name__)


def _classify_member(args: Tuple[Quadruple, bool]) -> Tuple[Vertices, int, Quadruple, Triple]:
    """建構 P、找單模三元組、投影並取標準形"""
    q, allow_reflections = args
    p = PolytopeService.build(q)
    projection = PolygonService.project_polytope(p)
    key = canonical_key(projection.polygon.vertices, allow_reflections)
    return key, p.n, q, projection.triple


class ClassifyService:
    """依多邊形等價類把 g-good 四元組分組"""

    @classmethod
    def group_by_class(
        cls,
        g: int,
        d_max: int,
        parallelism: Optional[int] = None,
        allow_reflections: Optional[bool] = None,
    ) -> ClassAtlas:
        parallelism = settings.PARALLELISM if parallelism is None else parallelism
        if allow_reflections is None:
            allow_reflections = not settings.SL_ONLY

        quadruples = QuadrupleService.enumerate_g_good(g, d_max, parallelism)
        records = run_parallel(_classify_member, [(q, allow_reflections) for q in quadruples], parallelism)

        grouped: Dict[Vertices, List[Tuple[int, Quadruple, Triple]]] = {}
        for key, n, q, triple in records:
            grouped.setdefault(key, []).append((n, q, triple))

        ordered = sorted(grouped.items(), key=lambda item: (item[1][0][0], item[0]))
        classes = []
        for index, (key, members) in enumerate(ordered):
            members.sort(key=lambda m: m[1].sort_key)
            classes.append(
                AtlasClass(
                    class_index=index,
                    canonical=key,
                    n=members[0][0],
                    members=tuple(m[1] for m in members),
                    triples=tuple(m[2] for m in members),
                )
            )
        logger.info(f"虧格 {g}、d <= {d_max}：{len(quadruples)} 個四元組分成 {len(classes)} 類")
        return ClassAtlas(genus=g, d_max=d_max, classes=tuple(classes))

    @staticmethod
    def class_count_at(atlas: ClassAtlas, d_max: int) -> int:
        """只計入 d <= d_max 的成員後仍非空的類數"""
        return sum(1 for c in atlas.classes if any(q.d <= d_max for q in c.members))

    @classmethod
    def stabilization_report(
        cls,
        g: int,
        d_steps: Sequence[int],
        parallelism: Optional[int] = None,
        with_bound: bool = False,
    ) -> StabilizationReport:
        steps = list(d_steps)
        if not steps:
            return StabilizationReport(genus=g)
        if any(b <= a for a, b in zip(steps, steps[1:])):
            raise InvalidInputError(f"d 上限必須嚴格遞增: {steps}")

        atlas = cls.group_by_class(g, steps[-1], parallelism)
        counts = [StabilizationStep(d_max=s, class_count=cls.class_count_at(atlas, s)) for s in steps]
        grew = len(counts) >= 2 and counts[-1].class_count > counts[-2].class_count
        if grew:
            logger.warning(f"⚠️ 虧格 {g} 在最後一步 d <= {steps[-1]} 類數仍在增加")

        bound = None
        if with_bound:
            bound = len(PolygonEnumService.enumerate_classes(g, "inductive", parallelism=parallelism or 1))
        return StabilizationReport(genus=g, steps=counts, grew_at_last_step=grew, abstract_bound=bound)
