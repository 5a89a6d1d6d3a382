from pathlib import Path
from typing import Optional

import click

from ..core.config import settings
from ..core.exceptions import InvalidInputError
from ..services.polygon_enum_service import METHODS, PolygonEnumService
from ..services.polygon_service import PolygonService
from .common import echo_json, echo_table, json_option, wants_json


def _read_polygon(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"無法讀取 {path}: {str(e)}") from e
    return PolygonService.from_json(text)


@click.group(name="polygons", help="格多邊形列舉與等價判定")
def polygons_group():
    pass


@polygons_group.command("enum", help="列舉恰有 g 個內點的多邊形類")
@click.option("--genus", "genus", type=int, required=True)
@click.option("--method", type=click.Choice(METHODS), default="inductive", show_default=True)
@click.option("--box", "box", type=int, default=None, help="盒子法邊長（預設 2g+2）")
@click.option("--nmax", "nmax", type=int, default=None, help="最大格點數（預設 3g+7）")
@click.option("--cross-check", "cross_check", is_flag=True, help="兩種方法比對")
@json_option
def enum(genus: int, method: str, box: Optional[int], nmax: Optional[int], cross_check: bool, as_json: bool):
    if cross_check:
        classes = PolygonEnumService.cross_check(genus, box=box, nmax=nmax, parallelism=settings.PARALLELISM)
    else:
        classes = PolygonEnumService.enumerate_classes(
            genus, method, bound=box, nmax=nmax, parallelism=settings.PARALLELISM
        )

    if wants_json(as_json):
        # JSON lines：每類一行
        for poly in classes:
            echo_json({"n": poly.n, "interior": poly.interior, "vertices": [list(v) for v in poly.vertices]})
        return
    echo_table(PolygonEnumService.count_by_n(classes), ["n", "類數"])
    click.echo(f"虧格 {genus} 共 {len(classes)} 個多邊形類")


@polygons_group.command("fuzz", help="以隨機單模映射檢查標準形不變")
@click.option("--genus", "genus", type=int, required=True)
@click.option("--maps", "maps", type=int, default=20, show_default=True, help="每類的隨機映射數")
@click.option("--size", "size", type=int, default=4, show_default=True, help="每個映射的因子數")
def fuzz(genus: int, maps: int, size: int):
    classes = PolygonEnumService.enumerate_classes(genus, parallelism=settings.PARALLELISM)
    checked = PolygonEnumService.fuzz_canonical(classes, settings.FUZZ_SEED, maps, size)
    click.echo(f"✅ {len(classes)} 類、{checked} 次隨機映射後標準形皆不變（seed={settings.FUZZ_SEED}）")


@polygons_group.command("canonical", help="輸出多邊形 JSON 的標準形")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def canonical(path: str):
    poly = _read_polygon(path)
    form = PolygonService.canonical_form(poly, allow_reflections=not settings.SL_ONLY)
    click.echo(PolygonService.to_json(form))


@polygons_group.command("equivalent", help="判定兩個多邊形是否等價並輸出見證")
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@json_option
def equivalent(first: str, second: str, as_json: bool):
    p1, p2 = _read_polygon(first), _read_polygon(second)
    same, witness = PolygonService.equivalent(p1, p2, allow_reflections=not settings.SL_ONLY)
    if wants_json(as_json):
        echo_json({"equivalent": same, "witness": witness.to_json() if witness else None})
        return
    click.echo("等價" if same else "不等價")
    if witness:
        click.echo(f"見證: {witness.to_json()}")


@polygons_group.command("automorphisms", help="列出把多邊形映到自身的仿射單模映射")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@json_option
def automorphisms(path: str, as_json: bool):
    poly = _read_polygon(path)
    autos = PolygonService.automorphisms(poly, allow_reflections=not settings.SL_ONLY)
    if wants_json(as_json):
        echo_json({"count": len(autos), "maps": [a.to_json() for a in autos]})
        return
    echo_table([[a.linear, a.translation, a.det] for a in autos], ["A", "t", "det"])
    click.echo(f"共 {len(autos)} 個自同構")


@polygons_group.command("hollow", help="列出 n 個格點、無內點的標準代表")
@click.argument("n", type=int)
@json_option
def hollow(n: int, as_json: bool):
    forms = PolygonService.genus_zero_representatives(n)
    if wants_json(as_json):
        for poly in forms:
            echo_json({"n": poly.n, "interior": poly.interior, "vertices": [list(v) for v in poly.vertices]})
        return
    echo_table([[len(p.vertices), p.vertices] for p in forms], ["頂點數", "頂點"])
    click.echo(f"n = {n} 共 {len(forms)} 個無內點的類")
