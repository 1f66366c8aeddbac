from __future__ import annotations
import os, sys, time
from typing import Any, Dict, List, Optional, Sequence
from path_tracker import Homotopy, PathResult, TrackOptions, status_counts, track_paths
from run_logger import log_request_response


class ConfigurationError(ValueError):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None


class SolverBase:
    """所有求解器的基础类：
    - 使用 .env 中的 REALWITNESS_* 配置（显式参数优先，其次环境变量，最后默认值）
    - 提供带日志的批量路径跟踪 track_logged
    - 日志写入失败不影响求解结果
    """
    def __init__(self, env_path: Optional[str] = ".env", *, seed: Optional[int] = None,
                 jobs: Optional[int] = None, log_runs: Optional[bool] = None,
                 progress: bool = False, verbose: bool = False, log_default: bool = False):
        if env_path:
            from dotenv import load_dotenv
            load_dotenv(env_path)
        self.seed = seed if seed is not None else _env_int("REALWITNESS_SEED", 0)
        self.jobs = jobs if jobs is not None else _env_int("REALWITNESS_JOBS", 1)
        if self.jobs < 1:
            raise ConfigurationError(f"jobs must be at least 1, got {self.jobs}")
        self.log_runs = log_runs if log_runs is not None else os.getenv("REALWITNESS_LOG", "1" if log_default else "0") == "1"
        self.log_dir = os.getenv("REALWITNESS_LOG_DIR", "log")
        self.output_dir = os.getenv("REALWITNESS_OUTPUT_DIR", "output")
        self.progress = progress
        self.verbose = verbose

    def say(self, message: str) -> None:
        if self.verbose:
            print(message, file=sys.stderr)

    def log(self, stage: str, request: Dict[str, Any], response: Dict[str, Any]) -> None:
        if not self.log_runs:
            return
        try:
            log_request_response(stage, request, response, log_dir=self.log_dir)
        except Exception:
            pass

    def track_logged(self, stage: str, homotopy: Homotopy, starts: Sequence, opts: TrackOptions,
                     extra: Optional[Dict[str, Any]] = None) -> List[PathResult]:
        request_payload = {
            "component": f"{type(self).__name__}.{stage}",
            "unknowns": list(homotopy.unknowns),
            "groups": [list(g) for g in homotopy.groups],
            "paths": len(starts),
            "options": opts.to_dict(),
            "seed": self.seed,
            "jobs": self.jobs,
        }
        if extra:
            request_payload.update(extra)

        started = time.perf_counter()
        try:
            results = track_paths(homotopy, starts, opts, jobs=self.jobs, progress=self.progress, desc=stage)
        except Exception as e:
            # 记录异常（简洁记录），不改变原始异常抛出行为
            self.log(stage, request_payload, {"error": str(e)})
            raise

        self.log(stage, request_payload, {
            "status_counts": status_counts(results),
            "seconds": round(time.perf_counter() - started, 3),
        })
        return results
