import logging
from typing import Optional

import click

from ..core.config import settings
from ..core.exceptions import InvalidInputError
from ..services.atlas_service import AtlasService
from ..services.classify_service import ClassifyService
from .common import echo_json, echo_table, json_option, wants_json

logger = logging.getLogger(__name__)


def _parse_steps(text: Optional[str]):
    if not text:
        return []
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise InvalidInputError(f"--steps 必須是逗號分隔的整數: {text}") from e


@click.command(name="classify", help="依多邊形類分組 g-good 四元組並寫出圖譜")
@click.option("--genus", "genus", type=int, required=True)
@click.option("--dmax", "d_max", type=int, required=True)
@click.option("--steps", "steps", default=None, help="穩定性報告的 d 上限，例如 30,60")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="匯出成員 CSV")
@click.option("--store", is_flag=True, help="同時寫入資料庫")
@json_option
def classify_command(genus: int, d_max: int, steps: Optional[str], csv_path: Optional[str], store: bool, as_json: bool):
    atlas = ClassifyService.group_by_class(genus, d_max, settings.PARALLELISM)
    path = AtlasService.write_json(atlas, settings.ATLAS_DIR)
    if csv_path:
        AtlasService.export_csv(atlas, csv_path)
    if store:
        run_id = AtlasService.store(atlas, settings.atlas_db_url)
        logger.info(f"圖譜已存入資料庫 run_id={run_id}")

    report = None
    step_list = _parse_steps(steps)
    if step_list:
        report = ClassifyService.stabilization_report(genus, step_list, settings.PARALLELISM)

    if wants_json(as_json):
        payload = {"atlas": str(path), "class_count": len(atlas.classes), "member_count": atlas.member_count}
        if report is not None:
            payload["stabilization"] = report.model_dump(mode="json")
        echo_json(payload)
        return

    rows = [[c.class_index, c.n, len(c.members), str(c.members[0])] for c in atlas.classes]
    echo_table(rows, ["類", "n", "成員數", "代表"])
    click.echo(f"{len(atlas.classes)} 個多邊形類（為 loci 數量的上界），共 {atlas.member_count} 個四元組")
    click.echo(f"圖譜: {path}")
    if report is not None:
        echo_table([[s.d_max, s.class_count] for s in report.steps], ["d 上限", "類數"])
        if report.grew_at_last_step:
            click.echo("⚠️ 最後一步類數仍在增加")
