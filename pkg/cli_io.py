# -*- coding: utf-8 -*-
"""
CliIO
- JobSpec: 一次命令行调用的全部参数（命令、系统文件、见证集、参数字面量、种子、容差、输出）
- 字面量: 复数 a+bi / a-bi / bi / i / i/5 / 2/3i，分量可为分数或带指数的小数；向量用逗号分隔
- 命令: real / count / member / track，返回退出码
    0 成功；1 配置或输入错误；2 verified=false（或路径失败）；3 成员测试无定论
- 预设: hypersurface / cubic / quartic / f633，填入系统文件、见证集、维数与固定参数
- count --x-groups "0,1,2,3;4,5,6,7": 另报把 x 拆组后的多齐次 Bézout 数
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from critical_real import (
    FULL_VARIETY,
    ConfigTemplate,
    RealSolver,
    build_critical_homotopy,
    draw_generic,
    split_bezout,
    square_reduce,
)
from path_tracker import Homotopy, PathStatus, TrackOptions, TrackOptionsError, complex_list
from pipelines.real_pipeline import RealPipeline
from poly_core import PolynomialError, PolynomialSystem, parse_system
from solver_base import ConfigurationError, SolverBase
from start_systems import BezoutOverflowError, StartSystemError, k_bound, multihomog_bezout, structure_of
from witness_membership import MembershipInconclusive, MembershipTester, WitnessError, load_witness

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_UNVERIFIED = 2
EXIT_INCONCLUSIVE = 3

FIXTURES = Path(__file__).resolve().parent / "fixtures"

PRESETS: Dict[str, Dict[str, Any]] = {
    "hypersurface": {
        "system": str(FIXTURES / "hypersurf.sys"),
        "full_variety": True,
        "dim": 2,
        "z": "1",
        "gamma": "2+3i",
        "y": "3/8,5/9,1/3",
        "alpha": "1/2-1/5i,6/7+2/3i",
    },
    "cubic": {
        "system": str(FIXTURES / "cubicurve.sys"),
        "witness": str(FIXTURES / "cubic_witness.json"),
        "dim": 1,
        "z": "1/5,1/9",
        "gamma": "3/11-1/13i",
        "y": "1/4,1/6,-3/2",
        "alpha": "1/3-1/7i,6/11+3/4i,2/3-7/8i",
    },
    "quartic": {
        "system": str(FIXTURES / "quartic.sys"),
        "full_variety": True,
        "dim": 3,
        "z": "1",
        "y": "4/3,-9/5,-5/7,8/9",
    },
    "f633": {
        "system": str(FIXTURES / "f633.sys"),
        "full_variety": True,
        "dim": 2,
        "y": "1/5,-3/4,-2/3,7/9,-4/7,12/13,1/2,-10/11",
    },
}


# =======================
# 字面量
# =======================
_TERM_SPLIT = re.compile(r"(?<=[^eE+\-])(?=[+-])")


def _real_part(text: str, literal: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(f"malformed number {literal!r}") from None


def parse_complex(literal: str) -> complex:
    text = literal.strip().replace(" ", "").replace("*", "")
    if not text:
        raise ConfigurationError("empty number literal")
    value = 0j
    for term in _TERM_SPLIT.split(text):
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if body.count("i") > 1:
            raise ConfigurationError(f"malformed number {literal!r}")
        if "i" in body:
            body = body.replace("i", "")
            if body == "" or body.startswith("/"):
                body = "1" + body
            value += sign * 1j * float(_real_part(body, literal))
        else:
            value += sign * float(_real_part(body, literal))
    return complex(value)


def parse_vector(literal: str) -> np.ndarray:
    text = literal.strip().strip("()[]")
    if not text:
        raise ConfigurationError("empty vector literal")
    return np.array([parse_complex(part) for part in text.split(",")], dtype=complex)


def parse_groups(literal: str) -> List[List[int]]:
    """"0,1,2,3;4,5,6,7" → [[0, 1, 2, 3], [4, 5, 6, 7]]（0 起的变量下标）。"""
    try:
        groups = [[int(k) for k in part.split(",")] for part in literal.replace(" ", "").split(";") if part]
    except ValueError:
        raise ConfigurationError(f"malformed variable groups {literal!r}") from None
    if not groups:
        raise ConfigurationError("empty variable groups")
    return groups


# =======================
# JobSpec
# =======================
@dataclass
class JobSpec:
    command: str
    system: Optional[str] = None
    witness: Optional[str] = None
    point: Optional[str] = None
    dim: Optional[int] = None
    full_variety: bool = False
    z: Optional[str] = None
    gamma: Optional[str] = None
    y: Optional[str] = None
    alpha: Optional[str] = None
    seed: Optional[int] = None
    tol_newton: Optional[float] = None
    tol_real: float = 1e-6
    tol_dedup: float = 1e-6
    tol_member: float = 1e-6
    t_endgame: Optional[float] = None
    output: Optional[str] = None
    jobs: Optional[int] = None
    preset: Optional[str] = None
    task: Optional[str] = None
    timings: bool = False
    check_count: bool = False
    cross_check: bool = False
    x_groups: Optional[str] = None
    verbose: bool = False
    env_path: str = ".env"

    def apply_preset(self) -> "JobSpec":
        """预设只填空缺字段；命令行显式给出的值优先。"""
        if self.preset is None:
            return self
        if self.preset not in PRESETS:
            raise ConfigurationError(f"unknown preset {self.preset!r}; choose from {sorted(PRESETS)}")
        for key, value in PRESETS[self.preset].items():
            if key == "full_variety":
                self.full_variety = self.full_variety or (value and self.witness is None)
            elif getattr(self, key) is None:
                setattr(self, key, value)
        return self

    def validate(self) -> "JobSpec":
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command {self.command!r}")
        if self.command in ("real", "count", "track") and not self.system:
            raise ConfigurationError(f"{self.command} needs a system file")
        if self.command == "real" and self.witness is None:
            if not self.full_variety:
                raise ConfigurationError("real needs --witness FILE or --full-variety with --dim")
            if self.dim is None:
                raise ConfigurationError("--full-variety needs --dim")
        if self.command == "count" and self.dim is None and self.witness is None:
            raise ConfigurationError("count needs --dim or --witness")
        if self.command == "member" and (self.witness is None or self.point is None):
            raise ConfigurationError("member needs --witness FILE and --point")
        if self.command == "track" and self.point is None:
            raise ConfigurationError("track needs --point")
        return self

    def track_options(self) -> TrackOptions:
        opts = TrackOptions()
        changes: Dict[str, Any] = {}
        if self.tol_newton is not None:
            changes["corrector_tol"] = self.tol_newton
        if self.t_endgame is not None:
            changes["endgame_t"] = self.t_endgame
        return opts.replace(**changes) if changes else opts

    def template(self) -> ConfigTemplate:
        return ConfigTemplate(
            z=parse_vector(self.z) if self.z else None,
            gamma=parse_complex(self.gamma) if self.gamma else None,
            y=parse_vector(self.y) if self.y else None,
            alpha=parse_vector(self.alpha) if self.alpha else None,
        )


def load_system(path: str) -> PolynomialSystem:
    return parse_system(Path(path).read_text(encoding="utf-8"))


def emit(payload: Dict[str, Any], output: Optional[str]) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2)
    if output:
        out = Path(output)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _solver_kwargs(spec: JobSpec) -> Dict[str, Any]:
    return dict(seed=spec.seed, jobs=spec.jobs, progress=spec.verbose, verbose=spec.verbose, log_default=True)


# =======================
# 命令
# =======================
def cmd_real(spec: JobSpec) -> int:
    system = load_system(spec.system)
    witness = load_witness(spec.witness) if spec.witness else FULL_VARIETY
    solver = RealSolver(spec.env_path, opts=spec.track_options(), real_tol=spec.tol_real,
                        dedup_tol=spec.tol_dedup, member_tol=spec.tol_member,
                        check_count=spec.check_count, cross_check=spec.cross_check,
                        **_solver_kwargs(spec))
    if spec.task:
        pipeline = RealPipeline(solver=solver, task_name=spec.task, system=system, witness=witness,
                                d=spec.dim, template=spec.template(), system_path=spec.system,
                                include_timings=spec.timings)
        pipeline.run()
        report = pipeline.report
    else:
        report = solver.run(system, witness, spec.template(), d=spec.dim)
    emit(report.to_json_dict(include_timings=spec.timings), spec.output)
    return EXIT_OK if report.verified else EXIT_UNVERIFIED


def cmd_count(spec: JobSpec) -> int:
    system = load_system(spec.system)
    d = spec.dim if spec.dim is not None else load_witness(spec.witness).dimension
    g, d_eff, reduced = square_reduce(system, d)
    seed = spec.seed if spec.seed is not None else 0
    cfg = draw_generic(spec.template(), seed, g, d_eff)
    H = build_critical_homotopy(g, d_eff, cfg)
    structure = structure_of(H)
    degree = g.polynomials[0].degree() if g.n == 1 else None
    payload = {
        "system": spec.system,
        "N": g.N,
        "n": g.n,
        "d": d_eff,
        "reduced": reduced,
        "structure": structure.to_dict(),
        "bezout": multihomog_bezout(structure),
        "k_bound": k_bound(g.N, degree // 2) if degree and degree % 2 == 0 else None,
        "config": cfg.to_dict(),
    }
    if spec.x_groups:
        groups = parse_groups(spec.x_groups)
        payload["split"] = {"x_groups": groups, "bezout": split_bezout(H, groups)}
    emit(payload, spec.output)
    return EXIT_OK


def cmd_member(spec: JobSpec) -> int:
    witness = load_witness(spec.witness)
    point = parse_vector(spec.point)
    solver = SolverBase(spec.env_path, **_solver_kwargs(spec))
    tester = MembershipTester(witness, tol=spec.tol_member, seed=solver.seed, opts=spec.track_options(),
                              track=partial(solver.track_logged, "membership"))
    result = tester.run(point)
    emit({"point": complex_list(point), **result.to_dict()}, spec.output)
    if result.inconclusive:
        raise MembershipInconclusive(f"all {len(result.paths)} membership paths failed")
    return EXIT_OK


def cmd_track(spec: JobSpec) -> int:
    system = load_system(spec.system)
    H = Homotopy(system)
    point = parse_vector(spec.point)
    solver = SolverBase(spec.env_path, **_solver_kwargs(spec))
    opts = spec.track_options()
    result = solver.track_logged("track", H, [point], opts.replace(patch_seed=solver.seed))[0]
    payload = {"parameter": H.parameter, "unknowns": list(H.unknowns), **result.to_dict()}
    emit(payload, spec.output)
    return EXIT_UNVERIFIED if result.status is PathStatus.FAILED else EXIT_OK


COMMANDS: Dict[str, Callable[[JobSpec], int]] = {
    "real": cmd_real,
    "count": cmd_count,
    "member": cmd_member,
    "track": cmd_track,
}


def run_job(spec: JobSpec) -> int:
    try:
        spec.apply_preset().validate()
        return COMMANDS[spec.command](spec)
    except MembershipInconclusive as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ConfigurationError, PolynomialError, WitnessError, TrackOptionsError,
            StartSystemError, BezoutOverflowError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


# =======================
# argparse
# =======================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realwitness",
                                     description="Real points on each connected component of a real algebraic set")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--preset", choices=sorted(PRESETS))
        sub.add_argument("--seed", type=int)
        sub.add_argument("--jobs", type=int)
        sub.add_argument("--json", dest="output", metavar="OUT")
        sub.add_argument("--tol-newton", type=float)
        sub.add_argument("--t-endgame", type=float)
        sub.add_argument("--env", dest="env_path", default=".env")
        sub.add_argument("--verbose", action="store_true")

    def parameters(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("system", nargs="?")
        sub.add_argument("--witness", metavar="FILE")
        sub.add_argument("--dim", type=int)
        sub.add_argument("--full-variety", action="store_true")
        sub.add_argument("--z")
        sub.add_argument("--gamma")
        sub.add_argument("--y")
        sub.add_argument("--alpha")

    real = commands.add_parser("real", help="run the full pipeline and report real points")
    parameters(real)
    common(real)
    real.add_argument("--tol-real", type=float, default=1e-6)
    real.add_argument("--tol-dedup", type=float, default=1e-6)
    real.add_argument("--tol-member", type=float, default=1e-6)
    real.add_argument("--task", help="write staged artifacts under the output directory")
    real.add_argument("--timings", action="store_true")
    real.add_argument("--check-count", action="store_true")
    real.add_argument("--cross-check", action="store_true",
                      help="also solve the Fritz John system directly and compare real points")

    count = commands.add_parser("count", help="print the multihomogeneous Bezout count")
    parameters(count)
    common(count)
    count.add_argument("--x-groups", metavar="GROUPS",
                       help='also count with the x variables split, e.g. "0,1,2,3;4,5,6,7"')

    member = commands.add_parser("member", help="homotopy membership test")
    member.add_argument("--witness", metavar="FILE")
    member.add_argument("--point", required=True)
    member.add_argument("--tol-member", type=float, default=1e-6)
    common(member)

    track = commands.add_parser("track", help="track one path of a homotopy (last variable is t)")
    track.add_argument("system")
    track.add_argument("--point", required=True)
    common(track)
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    known = {f.name for f in fields(JobSpec)}
    values = {k: v for k, v in vars(args).items() if k in known}
    return JobSpec(**values)
