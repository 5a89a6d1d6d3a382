from pathlib import Path

import click

from ..core.config import settings
from ..core.exceptions import InvalidInputError
from ..schemas.curve import WeightedCurve
from ..schemas.quadruple import Quadruple
from ..services.basis_change_service import BasisChangeService
from .common import echo_json, json_option, wants_json


@click.command(name="map-curve", help="把 Q 上的曲線經基底變換 T 映到 Q' 上")
@click.argument("source")
@click.argument("target")
@click.option("--curve", "curve_path", type=click.Path(exists=True, dir_okay=False), required=True)
@json_option
def map_curve_command(source: str, target: str, curve_path: str, as_json: bool):
    q, q2 = Quadruple.parse(source), Quadruple.parse(target)
    curve = WeightedCurve.from_json(Path(curve_path).read_text(encoding="utf-8"))
    if curve.quadruple != q:
        raise InvalidInputError(f"曲線檔案的四元組 {curve.quadruple} 與 {q} 不同")

    bc = BasisChangeService.best_basis_change(q, q2, allow_reflections=not settings.SL_ONLY)
    mapped, check = BasisChangeService.map_curve(curve, bc, q2)

    if wants_json(as_json):
        echo_json({
            "T": bc.to_payload()["T"],
            "curve": mapped.to_payload(),
            "support": {"source_ok": check.source_ok, "image_ok": check.image_ok},
        })
        return
    click.echo("T =")
    for row in bc.matrix:
        click.echo("  " + "  ".join(str(x) for x in row))
    click.echo(f"f' 於 {q2}:")
    for term in mapped.terms:
        click.echo(f"  {term.coefficient} · x^{term.exponents}")
    click.echo(f"支撐集條件：映射前 {check.source_ok}，映射後 {check.image_ok}")
