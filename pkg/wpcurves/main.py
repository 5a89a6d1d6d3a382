import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from app.commands import commands
from app.core.config import Settings, apply_settings, settings, setup_logging
from app.core.exceptions import InvariantViolation, WPCurvesError

logger = logging.getLogger(__name__)


@click.group(name="wpcurves", help="加權平面曲線四元組與格多面體工具")
@click.option("--parallelism", type=int, default=None, help="平行程序數")
@click.option("--atlas-dir", "atlas_dir", default=None, help="圖譜輸出目錄（覆蓋 ATLAS_DIR）")
@click.option("--seed", type=int, default=None, help="隨機測試種子")
@click.option("--log-level", "log_level", default=None, help="日誌等級")
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default=None, help="輸出格式")
@click.option("--sl-only/--affine", "sl_only", default=None, help="只使用行列式 +1 的等價")
def cli(parallelism, atlas_dir, seed, log_level, output_format, sl_only):
    overrides = {
        "PARALLELISM": parallelism,
        "ATLAS_DIR": atlas_dir,
        "FUZZ_SEED": seed,
        "LOG_LEVEL": log_level,
        "OUTPUT_FORMAT": output_format,
        "SL_ONLY": sl_only,
    }
    # 命令列 > 環境變數 > .env > 預設值
    config = Settings(**{k: v for k, v in overrides.items() if v is not None})
    apply_settings(config)
    setup_logging(settings)
    logger.debug(f"🚀 {settings.APP_NAME} 啟動，parallelism={settings.PARALLELISM}")


for command in commands:
    cli.add_command(command)


def main(argv: Optional[List[str]] = None) -> int:
    """執行命令並回傳結束碼：0 成功、1 輸入錯誤、2 不變量違反"""
    try:
        result = cli.main(args=argv, prog_name="wpcurves", standalone_mode=False)
        return result if isinstance(result, int) else 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        click.echo("已中止", err=True)
        return 1
    except ValidationError as e:
        click.echo(f"❌ 設定或輸入無效: {e}", err=True)
        return 1
    except InvariantViolation as e:
        logger.error(f"❌ 不變量違反 {e.check}: {e.message}")
        click.echo(f"❌ {e.message}", err=True)
        return 2
    except WPCurvesError as e:
        click.echo(f"❌ {e.message}", err=True)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
