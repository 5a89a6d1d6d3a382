"""
平行運算工具

parallelism > 1 時以 multiprocessing.Pool 分派工作（保持輸入順序），
否則在目前行程內依序執行。呼叫端負責排序合併結果。
"""

import logging
from multiprocessing import Pool
from typing import Callable, Iterable, List, TypeVar

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def run_parallel(func: Callable[[T], R], items: Iterable[T], parallelism: int = 1) -> List[R]:
    """對每個項目套用 func，回傳與輸入同順序的結果列表"""
    work = list(items)
    if parallelism <= 1 or len(work) <= 1:
        return [func(item) for item in work]

    chunksize = max(1, len(work) // (parallelism * 4))
    logger.debug(f"平行處理 {len(work)} 項工作，程序數 {parallelism}，chunksize {chunksize}")
    with Pool(processes=parallelism) as pool:
        return list(pool.imap(func, work, chunksize=chunksize))
