import json
from typing import Any

import click
from tabulate import tabulate

from ..core.config import settings


def wants_json(flag: bool) -> bool:
    """--json 旗標或 OUTPUT_FORMAT=json"""
    return flag or settings.OUTPUT_FORMAT == "json"


def echo_json(payload: Any) -> None:
    click.echo(json.dumps(payload, ensure_ascii=False))


def echo_table(rows, headers) -> None:
    click.echo(tabulate(rows, headers=headers, tablefmt="simple"))


json_option = click.option("--json", "as_json", is_flag=True, help="以 JSON 輸出")
