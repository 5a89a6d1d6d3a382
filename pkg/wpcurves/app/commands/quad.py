import click

from ..core.config import settings
from ..schemas.quadruple import Quadruple
from ..services.quadruple_service import QuadrupleService
from .common import echo_json, echo_table, json_option, wants_json


@click.group(name="quad", help="四元組檢查與列舉")
def quad_group():
    pass


@quad_group.command("check", help="檢查四元組是否 good，並列出每個軸的見證")
@click.argument("w0", type=int)
@click.argument("w1", type=int)
@click.argument("w2", type=int)
@click.argument("d", type=int)
@json_option
def check(w0: int, w1: int, w2: int, d: int, as_json: bool):
    q = Quadruple.of(w0, w1, w2, d)
    report = QuadrupleService.validate(q)
    if wants_json(as_json):
        echo_json(report.model_dump(mode="json"))
        return

    verdict = "good" if report.is_good else "not good"
    click.echo(f"{q}: {verdict}")
    click.echo(f"兩兩互質: {report.pairwise_coprime}，d > max w: {report.degree_dominates}")
    rows = []
    for i in range(3):
        mono = report.condition_i[i]
        avoid = report.condition_ii[i]
        rows.append([
            i,
            f"x{i}^{mono.k}·x{mono.j}" if mono else "-",
            str(avoid.exponents) if avoid else "-",
            report.divides[i],
        ])
    echo_table(rows, ["軸", "條件 (i)", "條件 (ii)", "w | d"])
    if report.genus is not None:
        click.echo(f"虧格 g = {report.genus}")


@quad_group.command("family", help="族 d = (2g+2)m - 1 中的四元組")
@click.argument("g", type=int)
@click.argument("m", type=int)
@json_option
def family(g: int, m: int, as_json: bool):
    q = QuadrupleService.family_quadruple(g, m)
    if wants_json(as_json):
        echo_json(list(q.as_tuple()))
    else:
        click.echo(str(q))


@quad_group.command("reduce", help="權重正規化")
@click.argument("w0", type=int)
@click.argument("w1", type=int)
@click.argument("w2", type=int)
def reduce(w0: int, w1: int, w2: int):
    click.echo(" ".join(str(w) for w in QuadrupleService.reduce_weights(w0, w1, w2)))


@quad_group.command("enum", help="列舉虧格 g、d <= dmax 的 good 四元組")
@click.option("--genus", "genus", type=int, required=True)
@click.option("--dmax", "d_max", type=int, required=True)
@json_option
def enum(genus: int, d_max: int, as_json: bool):
    quadruples = QuadrupleService.enumerate_g_good(genus, d_max, settings.PARALLELISM)
    if wants_json(as_json):
        echo_json([list(q.as_tuple()) for q in quadruples])
        return
    echo_table([q.as_tuple() for q in quadruples], ["w0", "w1", "w2", "d"])
    click.echo(f"共 {len(quadruples)} 個")
