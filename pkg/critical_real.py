# -*- coding: utf-8 -*-
"""
CriticalReal
- 输入: 多项式系统 f（N 个变量）、纯 d 维分量 V 的见证集（或 FULL_VARIETY 标记 + d）、参数 (z, γ, y, α)
- 输出: RealRunReport（verified 标志 v 与每个实连通分量上的实点集合 R）
- 流程:
    1) 构造临界点同伦 H(x, λ, t) = [f(x) − tγz ; λ₀(x−y) + Σλᵢ∇fᵢ(x)ᵀ ; α·λ − 1]
    2) 求 H(x, λ, 1) = 0 的非奇异解 S，并检查有限性与非奇异性
    3) 从 S 跟踪到 t = 0，得到 E（端点）与 E1（x 部分极限），检查 π(E) = E1
    4) 取 E1 中的实点，用同伦成员测试筛出落在 V 上的点 R
    5) （可选）直接用 2-齐次起始系统解 H(x, λ, 0)，与 E1 ∩ ℝᴺ 比对
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from path_tracker import (
    Homotopy,
    PathResult,
    PathStatus,
    TrackOptions,
    cluster_points,
    complex_list,
    dedup_points,
    newton_iterate,
    scaled_min_singular_value,
    status_counts,
    unit_phases,
)
from poly_core import DimensionError, Polynomial, PolynomialSystem, fresh_name, sum_of_squares
from solver_base import ConfigurationError, SolverBase
from start_systems import StartSolveResult, multihomog_bezout, solve_start, structure_of
from witness_membership import MembershipTester, WitnessSet

FULL_VARIETY = "full-variety"
CROSS_CHECK_TOL = 1e-5

__all__ = [
    "FULL_VARIETY",
    "ConfigurationError",
    "ConfigTemplate",
    "CriticalConfig",
    "LimitPoint",
    "RealRunReport",
    "RealSolver",
    "build_critical_homotopy",
    "classify_real",
    "cluster_points",
    "dedup_points",
    "draw_generic",
    "fritz_john_homotopy",
    "fritz_john_rank_gap",
    "fritz_john_system",
    "run_real",
    "split_bezout",
    "square_reduce",
]


def _real_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex).reshape(-1)
    if np.any(arr.imag != 0):
        raise ConfigurationError(f"{name} must be real")
    return arr.real.astype(float)


@dataclass
class CriticalConfig:
    z: np.ndarray
    gamma: complex
    y: np.ndarray
    alpha: np.ndarray
    seed: int = 0

    def __post_init__(self):
        self.z = _real_vector(self.z, "z")
        self.y = _real_vector(self.y, "y")
        self.alpha = np.asarray(self.alpha, dtype=complex).reshape(-1)
        self.gamma = complex(self.gamma)

    def validate(self, f: PolynomialSystem, d: int) -> "CriticalConfig":
        N = f.N
        c = N - d
        if self.z.shape != (c,):
            raise ConfigurationError(f"z has {self.z.shape[0]} entries, expected N-d = {c}")
        if self.y.shape != (N,):
            raise ConfigurationError(f"y has {self.y.shape[0]} entries, expected N = {N}")
        if self.alpha.shape != (c + 1,):
            raise ConfigurationError(f"alpha has {self.alpha.shape[0]} entries, expected N-d+1 = {c + 1}")
        if np.any(self.z == 0):
            raise ConfigurationError("every entry of z must be nonzero")
        if self.gamma == 0:
            raise ConfigurationError("gamma must be nonzero")
        if not np.any(self.alpha != 0):
            raise ConfigurationError("alpha must be nonzero")
        if not np.linalg.norm(f.evaluate(self.y)) > 1e-8:
            raise ConfigurationError("y lies on the real zero set of f")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "z": [float(v) for v in self.z],
            "gamma": [self.gamma.real, self.gamma.imag],
            "y": [float(v) for v in self.y],
            "alpha": complex_list(self.alpha),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "CriticalConfig":
        return cls(
            z=payload["z"],
            gamma=complex(*payload["gamma"]),
            y=payload["y"],
            alpha=[complex(re, im) for re, im in payload["alpha"]],
            seed=int(payload.get("seed", 0)),
        )


@dataclass
class ConfigTemplate:
    """用户固定的参数；None 表示由 draw_generic 随机抽取。"""

    z: Optional[Sequence[float]] = None
    gamma: Optional[complex] = None
    y: Optional[Sequence[float]] = None
    alpha: Optional[Sequence[complex]] = None


def _unit_real(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.uniform(-1.0, 1.0, size)
    return v / np.linalg.norm(v)


def _box_real(rng: np.random.Generator, size: int) -> np.ndarray:
    # y 不归一化：单位球面本身可能是 Var_R(f) 的分量
    return rng.uniform(-1.0, 1.0, size)


def draw_generic(template: Optional[ConfigTemplate], seed: int, f: PolynomialSystem, d: int,
                 attempts: int = 100) -> CriticalConfig:
    template = template or ConfigTemplate()
    rng = np.random.default_rng(seed)
    N, c = f.N, f.N - d
    last: Optional[ConfigurationError] = None
    for _ in range(attempts):
        cfg = CriticalConfig(
            z=template.z if template.z is not None else _unit_real(rng, c),
            gamma=template.gamma if template.gamma is not None else np.exp(2j * np.pi * rng.random()),
            y=template.y if template.y is not None else _box_real(rng, N),
            alpha=template.alpha if template.alpha is not None else unit_phases(rng, c + 1),
            seed=seed,
        )
        try:
            return cfg.validate(f, d)
        except ConfigurationError as e:
            last = e
    raise ConfigurationError(f"no admissible configuration in {attempts} draws: {last}")


# =======================
# 临界点同伦
# =======================
def _multiplier_names(variables: Sequence[str], count: int) -> List[str]:
    taken = list(variables)
    names = []
    for k in range(count):
        name = fresh_name(taken, f"lambda{k}")
        taken.append(name)
        names.append(name)
    return names


def _fritz_john_rows(f: PolynomialSystem, y, alpha, nvars: int) -> List[Polynomial]:
    """λ₀(xⱼ−yⱼ) + Σᵢ λᵢ ∂fᵢ/∂xⱼ（j = 1..N）以及 patch 行 α·λ − 1。"""
    N, c = f.N, f.n
    positions = list(range(N))
    lam = [Polynomial.variable(nvars, N + k) for k in range(c + 1)]
    rows = []
    for j in range(N):
        row = lam[0] * (Polynomial.variable(nvars, j) - float(y[j]))
        for i in range(c):
            row = row + lam[i + 1] * f.gradients[i][j].embed(nvars, positions)
        rows.append(row)
    coeffs = np.zeros(nvars, dtype=complex)
    coeffs[N:N + c + 1] = alpha
    rows.append(Polynomial.linear(coeffs, -1))
    return rows


def fritz_john_system(f: PolynomialSystem, y, alpha) -> PolynomialSystem:
    """带 patch 的 Fritz John 系统（即 H 在 t = 0 处），变量为 (x, λ)。"""
    N, c = f.N, f.n
    nvars = N + c + 1
    positions = list(range(N))
    rows = [p.embed(nvars, positions) for p in f.polynomials]
    rows += _fritz_john_rows(f, np.asarray(y, dtype=float), np.asarray(alpha, dtype=complex), nvars)
    return PolynomialSystem(list(f.variables) + _multiplier_names(f.variables, c + 1), rows)


def build_critical_homotopy(f: PolynomialSystem, d: int, cfg: CriticalConfig) -> Homotopy:
    N = f.N
    if not 0 < d < N:
        raise DimensionError(f"need 0 < d < N, got d={d}, N={N}")
    c = N - d
    if f.n != c:
        raise DimensionError(f"f has {f.n} equations, the critical homotopy needs N-d = {c}")
    cfg.validate(f, d)
    nvars = N + c + 2
    positions = list(range(N))
    t = Polynomial.variable(nvars, nvars - 1)
    rows = [p.embed(nvars, positions) - (cfg.gamma * float(zi)) * t for p, zi in zip(f.polynomials, cfg.z)]
    rows += _fritz_john_rows(f, cfg.y, cfg.alpha, nvars)
    multipliers = _multiplier_names(f.variables, c + 1)
    names = list(f.variables) + multipliers
    names.append(fresh_name(names, "t"))
    return Homotopy(
        PolynomialSystem(names, rows),
        groups=[tuple(range(N)), tuple(range(N, N + c + 1))],
        metadata={"d": d, **cfg.to_dict()},
    )


def fritz_john_homotopy(f: PolynomialSystem, y, alpha) -> Homotopy:
    """H(·,1) 就是带 patch 的 Fritz John 系统（t 不出现），用于不经临界点同伦直接求解。"""
    fj = fritz_john_system(f, y, alpha)
    nvars = fj.N + 1
    positions = list(range(fj.N))
    rows = [p.embed(nvars, positions) for p in fj.polynomials]
    names = list(fj.variables) + [fresh_name(fj.variables, "t")]
    return Homotopy(PolynomialSystem(names, rows), groups=[tuple(range(f.N)), tuple(range(f.N, fj.N))])


def split_bezout(H: Homotopy, x_groups: Sequence[Sequence[int]]) -> int:
    """把 x 组拆成 x_groups 后（λ 组不变）的多齐次 Bézout 数；只计数，不用于跟踪。"""
    N = len(H.groups[0])
    flat = sorted(int(k) for g in x_groups for k in g)
    if flat != list(range(N)):
        raise ConfigurationError(f"x groups {list(map(list, x_groups))} do not partition 0..{N - 1}")
    regrouped = Homotopy(H.system, groups=[*x_groups, *H.groups[1:]], metadata=H.metadata)
    return multihomog_bezout(structure_of(regrouped))


def square_reduce(f: PolynomialSystem, d: int) -> Tuple[PolynomialSystem, int, bool]:
    """n > N−d 时改用 g = Σfᵢ²（实零点集不变，g 是超曲面）。返回 (系统, 维数, 是否改写)。"""
    c = f.N - d
    if f.n == c:
        return f, d, False
    if f.n > c:
        return sum_of_squares(f), f.N - 1, True
    raise DimensionError(f"{f.n} equations cannot cut out a {d}-dimensional set in {f.N} variables")


def fritz_john_rank_gap(f: PolynomialSystem, y, x, floor: float = 1e-7) -> float:
    """[x−y, ∇f₁(x)ᵀ, …] 列归一化后的最小奇异值；临界点处应接近 0。

    范数低于 floor 的列（Sing(f) 上近似为零的梯度）保持原样，不放大成噪声方向。
    """
    x = np.asarray(x, dtype=complex)[:f.N]
    columns = np.column_stack([x - np.asarray(y, dtype=float), f.jacobian(x).T])
    norms = np.linalg.norm(columns, axis=0)
    norms[norms < floor] = 1.0
    return float(np.linalg.svd(columns / norms, compute_uv=False)[-1])


# =======================
# 实点判定
# =======================
def _as_approximations(item) -> List[np.ndarray]:
    arr = np.asarray(item, dtype=complex)
    return [arr, arr] if arr.ndim == 1 else list(arr)


def reality(approximations: Sequence, tol: float) -> str:
    """两个近似都实 → real；只有一个实 → borderline；否则 nonreal。"""
    flags = [float(np.max(np.abs(np.asarray(a, dtype=complex).imag), initial=0.0)) < tol for a in approximations]
    if all(flags):
        return "real"
    return "borderline" if any(flags) else "nonreal"


def classify_real(points: Sequence, tol: float = 1e-6) -> List[np.ndarray]:
    """每个元素可以是单个复向量，或它的两个数值近似；返回实点的实部。"""
    out = []
    for item in points:
        approximations = _as_approximations(item)
        if reality(approximations, tol) == "real":
            out.append(np.asarray(approximations[-1]).real.copy())
    return out


def _same_sets(a: Sequence[np.ndarray], b: Sequence[np.ndarray], tol: float) -> bool:
    if len(a) != len(b):
        return False
    near = lambda p, pool: any(np.linalg.norm(p - q) < tol for q in pool)
    return all(near(p, b) for p in a) and all(near(q, a) for q in b)


# =======================
# 报告
# =======================
@dataclass
class LimitPoint:
    point: np.ndarray
    approximations: Tuple[np.ndarray, ...]
    sources: List[int]
    reality: str = "nonreal"

    def to_dict(self) -> Dict[str, Any]:
        return {"point": complex_list(self.point), "reality": self.reality, "paths": self.sources}


@dataclass
class RealRunReport:
    verified: bool
    config: CriticalConfig
    d: int
    reduced: bool = False
    bezout: int = 0
    reasons: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    S: List[np.ndarray] = field(default_factory=list)
    E: List[np.ndarray] = field(default_factory=list)
    E1: List[LimitPoint] = field(default_factory=list)
    real: List[np.ndarray] = field(default_factory=list)
    borderline: List[np.ndarray] = field(default_factory=list)
    nonreal: int = 0
    R: List[np.ndarray] = field(default_factory=list)
    rejected: List[np.ndarray] = field(default_factory=list)
    inconclusive: List[np.ndarray] = field(default_factory=list)
    paths: List[PathResult] = field(default_factory=list)
    start: Optional[StartSolveResult] = None
    direct: Optional[Dict[str, Any]] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def counts(self) -> Dict[str, int]:
        return {
            "paths": len(self.paths),
            "S": len(self.S),
            "E": len(self.E),
            "E1": len(self.E1),
            "real": len(self.real),
            "R": len(self.R),
        }

    def nearest(self) -> Optional[np.ndarray]:
        """R 中离 y 最近的点（R 已按该距离排序）。"""
        return self.R[0] if self.R else None

    def to_json_dict(self, include_timings: bool = False, include_paths: bool = False) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "verified": self.verified,
            "reasons": list(self.reasons),
            "warnings": list(self.warnings),
            "counts": {**self.counts, "bezout": self.bezout, "borderline": len(self.borderline),
                       "nonreal": self.nonreal},
            "status_counts": status_counts(self.paths),
            "R": [complex_list(r) for r in self.R],
            "R_real": [[float(v) for v in r] for r in self.R],
            "E1": [p.to_dict() for p in self.E1],
            "borderline": [complex_list(p) for p in self.borderline],
            "rejected": [[float(v) for v in r] for r in self.rejected],
            "inconclusive": [[float(v) for v in r] for r in self.inconclusive],
            "S": [complex_list(s) for s in self.S],
            "config": self.config.to_dict(),
            "d": self.d,
            "reduced": self.reduced,
            "start_system": self.start.to_dict()["counts"] if self.start is not None else None,
            "timings": {k: round(v, 3) for k, v in self.timings.items()} if include_timings else {},
        }
        if self.direct is not None:
            payload["direct_check"] = self.direct
        if include_paths:
            payload["paths"] = [p.to_dict() for p in self.paths]
        return payload


# =======================
# Procedure Real
# =======================
class RealSolver(SolverBase):
    """
    Procedure Real 的有状态封装
    - 输入: 配置（.env / 显式参数）、TrackOptions 与各项容差
    - 输出: run(...) → RealRunReport
    - 三个跟踪阶段都经 track_logged，写入 start_system / critical_paths / membership 日志
    """

    def __init__(self, env_path: Optional[str] = ".env", *, opts: Optional[TrackOptions] = None,
                 real_tol: float = 1e-6, dedup_tol: float = 1e-6, member_tol: float = 1e-6,
                 check_count: bool = False, cross_check: bool = False, **kwargs):
        super().__init__(env_path, **kwargs)
        self.opts = opts or TrackOptions()
        self.real_tol = real_tol
        self.dedup_tol = dedup_tol
        self.member_tol = member_tol
        self.check_count = check_count
        self.cross_check = cross_check

    def direct_check(self, g: PolynomialSystem, cfg: CriticalConfig, real: Sequence[np.ndarray]) -> Dict[str, Any]:
        """
        直接用 2-齐次起始系统解 H(x, λ, 0)，把实的 x 部分与 E1 ∩ ℝᴺ 比对
        - Sing(f) 有限时两者应一致；不一致只记 warning，不影响 verified
        """
        H0 = fritz_john_homotopy(g, cfg.y, cfg.alpha)
        structure = structure_of(H0)
        bezout = multihomog_bezout(structure)
        track = partial(self.track_logged, "direct_fritz_john", extra={"bezout": bezout})
        result = solve_start(H0, structure, self.seed, self.opts, track=track)
        limits = [p.x_endpoint for p in result.paths
                  if p.converged or p.status is PathStatus.X_CONVERGED_LAMBDA_DIVERGED]
        found = classify_real(dedup_points(limits, self.dedup_tol), self.real_tol)
        found = [p.real for p in dedup_points(found, self.dedup_tol)]
        found.sort(key=lambda r: float(np.linalg.norm(r - cfg.y)))
        return {
            "bezout": bezout,
            "counts": result.to_dict()["counts"],
            "exhaustive": result.exhaustive,
            "real": [[float(v) for v in r] for r in found],
            "agrees": _same_sets(found, list(real), CROSS_CHECK_TOL),
        }

    def _prepare(self, f: PolynomialSystem, witness, d: Optional[int]) -> Tuple[Optional[WitnessSet], int]:
        if isinstance(witness, str) and witness == FULL_VARIETY:
            if d is None:
                raise ConfigurationError("the full-variety marker needs an explicit dimension d")
            ws = None
        elif isinstance(witness, WitnessSet):
            if d is not None and d != witness.dimension:
                raise ConfigurationError(f"d={d} disagrees with the witness set dimension {witness.dimension}")
            if witness.N != f.N:
                raise ConfigurationError(f"witness set lives in {witness.N} variables, f in {f.N}")
            ws, d = witness, witness.dimension
        else:
            raise ConfigurationError("witness must be a WitnessSet or FULL_VARIETY")
        if not 0 < d < f.N:
            raise ConfigurationError(f"need 0 < d < N, got d={d}, N={f.N}")
        return ws, d

    def _given_starts(self, H: Homotopy, points: Sequence) -> List[np.ndarray]:
        target = H.at(1.0).compile()
        out = []
        for k, p in enumerate(points):
            p = np.asarray(p, dtype=complex).reshape(-1)
            if p.shape[0] != H.size:
                raise ConfigurationError(f"start solution {k} has length {p.shape[0]}, expected {H.size}")
            polished = newton_iterate(target.evaluate, target.jacobian, p, 1e-12, 5)
            out.append(polished.point if polished.converged else p)
        return out

    def _check_starts(self, H: Homotopy, S: Sequence[np.ndarray]) -> List[str]:
        reasons = []
        singular = sum(1 for s in S if scaled_min_singular_value(H.jacobian_x(s, 1.0)) <= 1e-8)
        off = sum(1 for s in S if not np.linalg.norm(H.evaluate(s, 1.0)) < 1e-8)
        if singular:
            reasons.append(f"{singular} start solutions are singular")
        if off:
            reasons.append(f"{off} start solutions do not solve H(x, lambda, 1) = 0")
        return reasons

    def run(self, f: PolynomialSystem, witness: Union[WitnessSet, str],
            cfg: Union[CriticalConfig, ConfigTemplate, None] = None, d: Optional[int] = None,
            start_solutions: Optional[Sequence] = None) -> RealRunReport:
        started = time.perf_counter()
        ws, d = self._prepare(f, witness, d)
        g, d_eff, reduced = square_reduce(f, d)
        if reduced:
            self.say(f"Reduced {f.n} equations to a sum of squares (d={d_eff})")
        if not isinstance(cfg, CriticalConfig):
            cfg = draw_generic(cfg, self.seed, g, d_eff)
        cfg.validate(g, d_eff)

        # 1) 构造同伦
        H = build_critical_homotopy(g, d_eff, cfg)
        structure = structure_of(H)
        report = RealRunReport(verified=False, config=cfg, d=d, reduced=reduced,
                               bezout=multihomog_bezout(structure))
        self.say(f"Critical homotopy: {H.size} unknowns, {report.bezout} start paths")

        # 2) S = H(·,1) 的非奇异解
        clock = time.perf_counter()
        if start_solutions is None:
            track = partial(self.track_logged, "start_system", extra={"bezout": report.bezout})
            report.start = solve_start(H, structure, self.seed, self.opts, track=track)
            report.S = report.start.solutions
            if not report.start.exhaustive:
                report.reasons.append(f"{report.start.failed} start-system paths failed and "
                                      f"{report.start.unresolved} ended without a classified limit")
            if self.check_count:
                again = solve_start(H, structure, self.seed + 1, self.opts, track=track)
                if again.count != report.start.count:
                    report.warnings.append(
                        f"|S| = {report.start.count} with seed {self.seed} but {again.count} with seed {self.seed + 1}")
        else:
            report.S = self._given_starts(H, start_solutions)
        report.reasons.extend(self._check_starts(H, report.S))
        report.timings["start_system"] = time.perf_counter() - clock
        self.say(f"Start solutions: {len(report.S)}")
        if report.reasons:
            report.timings["total"] = time.perf_counter() - started
            return report

        # 3) 跟踪临界路径
        clock = time.perf_counter()
        report.paths = self.track_logged("critical_paths", H, report.S, self.opts)
        failed = sum(1 for p in report.paths if p.status is PathStatus.FAILED)
        if failed:
            report.reasons.append(f"{failed} of {len(report.paths)} critical paths failed")
        report.E = dedup_points([p.endpoint for p in report.paths if p.converged], self.dedup_tol)
        limits = [p for p in report.paths
                  if p.converged or p.status is PathStatus.X_CONVERGED_LAMBDA_DIVERGED]
        for cluster in cluster_points([p.x_endpoint for p in limits], self.dedup_tol):
            members = [limits[k] for k in cluster]
            point = np.mean([m.x_endpoint for m in members], axis=0)
            approximations = members[0].approximations or (point, point)
            report.E1.append(LimitPoint(point, tuple(approximations), [m.start_index for m in members],
                                        reality(approximations, self.real_tol)))
        projected = dedup_points([e[:f.N] for e in report.E], self.dedup_tol)
        if not _same_sets(projected, [p.point for p in report.E1], self.dedup_tol):
            report.reasons.append(f"pi(E) has {len(projected)} points but E1 has {len(report.E1)}")
        report.timings["critical_paths"] = time.perf_counter() - clock
        self.say(f"Endpoints: |E| = {len(report.E)}, |E1| = {len(report.E1)}")

        # 4) 实点与成员测试
        clock = time.perf_counter()
        for limit in report.E1:
            if limit.reality == "real":
                report.real.append(limit.point.real.copy())
            elif limit.reality == "borderline":
                report.borderline.append(limit.point)
            else:
                report.nonreal += 1
        tester = None
        if ws is not None:
            tester = MembershipTester(ws, tol=self.member_tol, seed=self.seed, opts=self.opts,
                                      track=partial(self.track_logged, "membership"))
        for r in report.real:
            if not np.linalg.norm(f.evaluate(r)) < 1e-6:
                report.rejected.append(r)
                continue
            if tester is None:
                report.R.append(r)
                continue
            result = tester.run(r)
            if result.inconclusive:
                report.inconclusive.append(r)
            elif result.verdict:
                report.R.append(r)
            else:
                report.rejected.append(r)
        report.R.sort(key=lambda r: float(np.linalg.norm(r - cfg.y)))
        report.timings["membership"] = time.perf_counter() - clock

        if self.cross_check:
            clock = time.perf_counter()
            report.direct = self.direct_check(g, cfg, report.real)
            if not report.direct["agrees"]:
                report.warnings.append(f"direct Fritz John solve found {len(report.direct['real'])} real points, "
                                       f"E1 has {len(report.real)}")
            report.timings["direct_check"] = time.perf_counter() - clock
        report.timings["total"] = time.perf_counter() - started
        report.verified = not report.reasons
        self.say(f"Real points: {len(report.real)} in E1, {len(report.R)} on V")
        return report


def run_real(f: PolynomialSystem, witness: Union[WitnessSet, str],
             cfg: Union[CriticalConfig, ConfigTemplate, None] = None, opts: Optional[TrackOptions] = None, *,
             d: Optional[int] = None, seed: int = 0, jobs: int = 1, progress: bool = False,
             real_tol: float = 1e-6, dedup_tol: float = 1e-6, member_tol: float = 1e-6,
             check_count: bool = False, cross_check: bool = False,
             start_solutions: Optional[Sequence] = None) -> RealRunReport:
    """不读 .env、不写日志的函数式入口。"""
    solver = RealSolver(None, opts=opts, real_tol=real_tol, dedup_tol=dedup_tol, member_tol=member_tol,
                        check_count=check_count, cross_check=cross_check, seed=seed, jobs=jobs, log_runs=False,
                        progress=progress)
    return solver.run(f, witness, cfg, d=d, start_solutions=start_solutions)
