import logging
from itertools import combinations
from typing import Iterable, List, Optional, Set, Tuple

from ..core.config import settings
from ..core.exceptions import DegeneratePolygonError, InvalidInputError, InvariantViolation
from ..schemas.polygon import LatticePolygon
from ..tasks.parallel import run_parallel
from .polygon_service import PolygonService, Vertices, canonical_key, hull_vertices, locate, pick_counts

logger = logging.getLogger(__name__)

METHODS = ("inductive", "box")


def _grow_class(args: Tuple[Vertices, int, int, bool]) -> List[Vertices]:
    """對一個等價類加入一個格點 Q，保留凸包恰好多出 Q 的結果"""
    verts, g, margin, allow_reflections = args
    interior, boundary, _ = pick_counts(verts)
    n = interior + boundary
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    children: Set[Vertices] = set()
    for x in range(min(xs) - margin, max(xs) + margin + 1):
        for y in range(min(ys) - margin, max(ys) + margin + 1):
            if locate(verts, (x, y)) >= 0:
                continue
            hull = hull_vertices(verts + ((x, y),))
            i, b, _ = pick_counts(hull)
            # Pick：格點總數 = (2A + b)/2 + 1
            if i + b != n + 1 or i > g:
                continue
            children.add(canonical_key(hull, allow_reflections))
    return sorted(children)


def _normalize(verts: Vertices) -> Vertices:
    """平移到 min x = min y = 0"""
    mx = min(v[0] for v in verts)
    my = min(v[1] for v in verts)
    return tuple((x - mx, y - my) for x, y in verts)


def _extend_in_box(args: Tuple[Vertices, int, int]) -> List[Vertices]:
    """加入任一格點且外框仍在 B x B 內、內點數 <= g 的凸包"""
    verts, g, box = args
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    children: Set[Vertices] = set()
    for x in range(max(xs) - box, min(xs) + box + 1):
        for y in range(max(ys) - box, min(ys) + box + 1):
            if locate(verts, (x, y)) >= 0:
                continue
            hull = hull_vertices(verts + ((x, y),))
            if pick_counts(hull)[0] > g:
                continue
            children.add(_normalize(hull))
    return sorted(children)


class PolygonEnumService:
    """列舉恰有 g 個內點的格多邊形等價類"""

    @staticmethod
    def default_nmax(g: int) -> int:
        return 3 * g + 7

    @classmethod
    def enumerate_classes(
        cls,
        g: int,
        method: str = "inductive",
        bound: Optional[int] = None,
        nmax: Optional[int] = None,
        margin: Optional[int] = None,
        parallelism: int = 1,
        allow_reflections: Optional[bool] = None,
    ) -> List[LatticePolygon]:
        if g < 0:
            raise InvalidInputError(f"g 必須 >= 0: {g}")
        if method not in METHODS:
            raise InvalidInputError(f"未知的列舉方法: {method}")
        if allow_reflections is None:
            allow_reflections = not settings.SL_ONLY

        if method == "inductive":
            limit = cls.default_nmax(g) if nmax is None else nmax
            keys = cls._inductive(
                g, limit, margin if margin is not None else settings.INDUCTIVE_MARGIN, parallelism, allow_reflections
            )
        else:
            box = settings.box_size_for(g) if bound is None else bound
            keys = cls._box(g, box, parallelism, allow_reflections)
            if nmax is not None:
                keys = {k for k in keys if sum(pick_counts(k)[:2]) <= nmax}

        classes = sorted(
            (PolygonService.from_vertices(k) for k in keys),
            key=lambda poly: (poly.n, poly.vertices),
        )
        logger.info(f"方法 {method}：虧格 {g} 共 {len(classes)} 個多邊形類")
        return classes

    @staticmethod
    def _inductive(g: int, nmax: int, margin: int, parallelism: int, allow_reflections: bool) -> Set[Vertices]:
        if nmax < 3:
            return set()
        level: List[Vertices] = [canonical_key(((0, 0), (1, 0), (0, 1)), allow_reflections)]
        found: Set[Vertices] = set()
        for n in range(3, nmax + 1):
            found.update(k for k in level if pick_counts(k)[0] == g)
            logger.debug(f"n={n}：{len(level)} 個類")
            if n == nmax:
                break
            tasks = [(k, g, margin, allow_reflections) for k in level]
            children: Set[Vertices] = set()
            for chunk in run_parallel(_grow_class, tasks, parallelism):
                children.update(chunk)
            level = sorted(children)
        return found

    @staticmethod
    def _box(g: int, box: int, parallelism: int, allow_reflections: bool) -> Set[Vertices]:
        if box < 1:
            raise InvalidInputError(f"盒子邊長必須 >= 1: {box}")
        grid = [(x, y) for x in range(box + 1) for y in range(box + 1)]
        frontier: Set[Vertices] = set()
        for triple in combinations(grid, 3):
            try:
                hull = hull_vertices(triple)
            except DegeneratePolygonError:
                continue
            if pick_counts(hull)[0] <= g:
                frontier.add(_normalize(hull))

        visited: Set[Vertices] = set(frontier)
        while frontier:
            tasks = [(k, g, box) for k in sorted(frontier)]
            fresh: Set[Vertices] = set()
            for chunk in run_parallel(_extend_in_box, tasks, parallelism):
                fresh.update(k for k in chunk if k not in visited)
            visited |= fresh
            frontier = fresh
        logger.debug(f"盒子 {box}x{box}：走訪 {len(visited)} 個多邊形（模平移）")
        return {canonical_key(k, allow_reflections) for k in visited if pick_counts(k)[0] == g}

    @classmethod
    def cross_check(
        cls, g: int, box: Optional[int] = None, nmax: Optional[int] = None, parallelism: int = 1
    ) -> List[LatticePolygon]:
        """兩種方法的結果必須完全相同"""
        limit = cls.default_nmax(g) if nmax is None else nmax
        inductive = cls.enumerate_classes(g, "inductive", nmax=limit, parallelism=parallelism)
        boxed = cls.enumerate_classes(g, "box", bound=box, nmax=limit, parallelism=parallelism)
        left = {p.vertices for p in inductive}
        right = {p.vertices for p in boxed}
        if left != right:
            logger.warning(f"⚠️ 虧格 {g} 兩種列舉結果不同：inductive {len(left)}，box {len(right)}")
            raise InvariantViolation(
                "enumeration-cross-check",
                f"虧格 {g} 的 inductive 與 box 結果不一致",
                {
                    "only_inductive": [list(map(list, k)) for k in sorted(left - right)],
                    "only_box": [list(map(list, k)) for k in sorted(right - left)],
                },
            )
        return inductive

    @staticmethod
    def fuzz_canonical(classes: Iterable[LatticePolygon], seed: int, maps: int, size: int) -> int:
        """每個類套用 maps 個隨機映射，標準形必須不變；回傳檢查次數"""
        allow_reflections = not settings.SL_ONLY
        checked = 0
        for index, poly in enumerate(classes):
            expected = canonical_key(poly.vertices, allow_reflections)
            for trial in range(maps):
                mapping = PolygonService.random_unimodular_map(seed + 1000 * index + trial, size)
                if not allow_reflections and mapping.det != 1:
                    continue
                image = hull_vertices(mapping.apply(v) for v in poly.vertices)
                if canonical_key(image, allow_reflections) != expected:
                    raise InvariantViolation(
                        "canonical-invariance",
                        f"{poly.vertices} 經 {mapping.to_json()} 後標準形改變",
                    )
                checked += 1
        return checked

    @staticmethod
    def count_by_n(classes: Iterable[LatticePolygon]) -> List[Tuple[int, int]]:
        counts: dict = {}
        for poly in classes:
            counts[poly.n] = counts.get(poly.n, 0) + 1
        return sorted(counts.items())
