from pathlib import Path
import itertools
import json
from datetime import datetime

_COUNTER = itertools.count()


def log_request_response(stage: str, request: dict, response: dict, log_dir: str = "log") -> Path:
    """
    保存日志到 {log_dir}/{timestamp}_{stage}_{counter}.json
    timestamp 格式: YYYYMMDDhhmmss (例如 20251029123511)
    counter 为进程内递增序号，避免同一秒内多个阶段互相覆盖
    直接使用 json.dump(..., default=str) 处理 numpy 数组等不可序列化对象
    """
    directory = Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)
    ts = datetime.now().strftime("%Y%m%d%H%M%S")
    filepath = directory / f"{ts}_{stage}_{next(_COUNTER)}.json"
    payload = {
        "timestamp": ts,
        "request": request,
        "response": response,
    }
    with filepath.open("w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=2, default=str)
    return filepath
