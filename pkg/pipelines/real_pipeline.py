from __future__ import annotations
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import numpy as np
from critical_real import (ConfigTemplate, ConfigurationError, CriticalConfig, FULL_VARIETY, RealRunReport, RealSolver,
                           draw_generic, square_reduce)
from path_tracker import complex_list
from poly_core import PolynomialSystem
from witness_membership import WitnessSet


def check_and_continue(file_path: Path) -> bool:
    """检查文件是否存在，若存在则跳过该阶段"""
    if file_path.exists():
        print(f"File already exists at: {file_path}")
        return False
    return True


class RealPipeline:
    """Procedure Real 的分阶段落盘版本：配置 → 起始解 S → 临界路径 → 报告
    负责：
    - 目录准备 output/{task_name}
    - 四个产物写盘：config.json / start_solutions.json / endpoints.json / report.json，外加 index.json
    - config.json 与 start_solutions.json 已存在时直接复用（跳过第 2 步的起始系统求解）
    """
    def __init__(self, *, solver: RealSolver, task_name: str, system: PolynomialSystem,
                 witness: Union[WitnessSet, str], d: Optional[int] = None,
                 template: Optional[ConfigTemplate] = None, system_path: Optional[str] = None,
                 include_timings: bool = False):
        self.solver = solver
        self.task_name = task_name
        self.system = system
        self.witness = witness
        self.d = witness.dimension if isinstance(witness, WitnessSet) else d
        self.template = template
        self.system_path = system_path
        self.include_timings = include_timings
        self.report: Optional[RealRunReport] = None

        self.base_dir = Path(solver.output_dir) / task_name
        self.base_dir.mkdir(parents=True, exist_ok=True)
        self.config_path = self.base_dir / "config.json"
        self.start_path = self.base_dir / "start_solutions.json"
        self.endpoints_path = self.base_dir / "endpoints.json"
        self.report_path = self.base_dir / "report.json"

    def _write(self, path: Path, payload: Dict[str, Any]) -> None:
        path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")

    def _config(self) -> CriticalConfig:
        if not check_and_continue(self.config_path):
            payload = json.loads(self.config_path.read_text(encoding="utf-8"))
            return CriticalConfig.from_dict(payload["config"])
        if self.d is None:
            raise ConfigurationError("pipeline needs the dimension d")
        g, d_eff, _ = square_reduce(self.system, self.d)
        cfg = draw_generic(self.template, self.solver.seed, g, d_eff)
        self._write(self.config_path, {
            "system": self.system_path,
            "d": self.d,
            "seed": self.solver.seed,
            "witness": "full-variety" if self.witness == FULL_VARIETY else "witness-set",
            "config": cfg.to_dict(),
        })
        return cfg

    def _start_solutions(self) -> Optional[List[np.ndarray]]:
        if check_and_continue(self.start_path):
            return None
        payload = json.loads(self.start_path.read_text(encoding="utf-8"))
        return [np.array([complex(re, im) for re, im in s]) for s in payload["solutions"]]

    def run(self) -> Dict[str, Any]:
        # 1) 参数
        cfg = self._config()

        # 2) 起始解（若已有则复用）
        reused = self._start_solutions()
        report = self.solver.run(self.system, self.witness, cfg, d=self.d, start_solutions=reused)
        self.report = report
        if reused is None:
            start_payload = report.start.to_dict() if report.start is not None else {}
            start_payload["solutions"] = [complex_list(s) for s in report.S]
            self._write(self.start_path, start_payload)

        # 3) 临界路径端点
        self._write(self.endpoints_path, {
            "E": [complex_list(e) for e in report.E],
            "E1": [p.to_dict() for p in report.E1],
            "paths": [p.to_dict() for p in report.paths],
        })

        # 4) 报告
        self._write(self.report_path, report.to_json_dict(include_timings=self.include_timings))

        index = {
            "task_name": self.task_name,
            "verified": report.verified,
            "counts": report.counts,
            "reused_start_solutions": reused is not None,
            "artifacts": {
                "config": str(self.config_path),
                "start_solutions": str(self.start_path),
                "endpoints": str(self.endpoints_path),
                "report": str(self.report_path),
            },
        }
        self._write(self.base_dir / "index.json", index)
        return index
