import logging
from typing import Any, Dict, Optional

import click

from ..core.config import settings
from ..core.exceptions import PreconditionError
from ..schemas.quadruple import Quadruple
from ..services.polygon_service import PolygonService
from ..services.polytope_service import PolytopeService
from ..services.quadruple_service import QuadrupleService
from ..utils.render import render_polygon_svg
from .common import echo_json, echo_table, json_option, wants_json

logger = logging.getLogger(__name__)


def analyze_quadruple(q: Quadruple) -> Dict[str, Any]:
    """完整分析報告，鍵順序固定"""
    if not QuadrupleService.validate(q).is_good:
        raise PreconditionError(f"{q} 不是 good 四元組")
    p = PolytopeService.build(q)
    lemmas = PolytopeService.verify_lemmas(p)
    projection = PolygonService.project(p, lemmas.unimodular_triple)
    canonical = PolygonService.canonical_form(projection.polygon, allow_reflections=not settings.SL_ONLY)
    pieces = PolygonService.triangulate_distinguished(p)
    case = lemmas.case
    return {
        "quadruple": list(q.as_tuple()),
        "genus": lemmas.genus,
        "n": lemmas.n,
        "interior": lemmas.interior,
        "case": {
            "tag": case.triangle.case_tag,
            "permutation": list(case.triangle.permutation),
            "rows": [list(r) for r in case.triangle.rows],
            "k": case.triangle.k,
            "l": case.triangle.l,
            "actual_det": case.actual_det,
            "predicted_det": case.predicted_det,
            "identity": case.identity,
            "identity_holds": case.identity_holds,
        },
        "minors_checked": lemmas.minors_checked,
        "minors_exhaustive": lemmas.minors_exhaustive,
        "unimodular_triple": [list(r) for r in lemmas.unimodular_triple],
        "polygon": [list(v) for v in projection.polygon.vertices],
        "canonical": [list(v) for v in canonical.vertices],
        "bound_status": lemmas.bound_status,
        "distinguished_pieces": pieces,
    }


@click.group(name="poly", help="格多面體分析")
def poly_group():
    pass


@poly_group.command("analyze", help="建構 P 並檢查所有引理，輸出投影多邊形")
@click.argument("w0", type=int)
@click.argument("w1", type=int)
@click.argument("w2", type=int)
@click.argument("d", type=int)
@json_option
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), default=None, help="輸出多邊形 SVG")
def analyze(w0: int, w1: int, w2: int, d: int, as_json: bool, svg_path: Optional[str]):
    q = Quadruple.of(w0, w1, w2, d)
    report = analyze_quadruple(q)

    if svg_path:
        polygon = PolygonService.from_vertices([tuple(v) for v in report["polygon"]])
        render_polygon_svg(polygon, svg_path)
        logger.info(f"SVG 已輸出 {svg_path}")

    if wants_json(as_json):
        echo_json(report)
        return

    case = report["case"]
    rows = [
        ["四元組", str(q)],
        ["虧格", report["genus"]],
        ["格點數 n", report["n"]],
        ["內點數", report["interior"]],
        ["情況", case["tag"]],
        ["k, l", f"{case['k']}, {case['l']}"],
        ["det(Δ)", f"{case['actual_det']}（公式 {case['predicted_det']}）"],
        ["恆等式", f"{case['identity']}: {case['identity_holds']}"],
        ["子行列式檢查", f"{report['minors_checked']}（窮舉: {report['minors_exhaustive']}）"],
        ["單模三元組", report["unimodular_triple"]],
        ["多邊形", report["polygon"]],
        ["標準形", report["canonical"]],
        ["點數上界狀態", report["bound_status"]],
        ["Δ 原始三角形數", report["distinguished_pieces"]],
    ]
    echo_table(rows, ["項目", "值"])
