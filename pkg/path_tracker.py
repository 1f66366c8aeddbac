# -*- coding: utf-8 -*-
"""
PathTracker
- 输入: Homotopy（未知量 + 末尾参数 t 的方阵多项式系统），t=1 处的非奇异起点
- 输出: PathResult（状态 / 端点 / x 端点 / 绕数 / 残差 / 步数）
- 做法:
    · 所有路径在射影坐标里跟踪：每个变量组一个齐次化坐标 + 一条随机仿射 patch
    · 预测 RK4（Davidenko 方程），校正 Newton，自适应步长
    · t = t_e 之后交给 Cauchy endgame：绕圈直到闭合，取样本均值
    · direct_finish=True（起始阶段）：先直接跟踪到 t=0 再 Newton，端点非奇异就不进 endgame
    · 组 0（x 组）趋于无穷 → at-infinity；仅后续组趋于无穷 → x-converged-lambda-diverged
    · 射影 patch 用独立的随机流（patch_rng），不与起始系统 / γ / 切片的抽样重合
- 并行: track_paths 用 multiprocessing.Pool，结果按 start index 排序合并
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm.auto import tqdm

from poly_core import DimensionError, Polynomial, PolynomialSystem, fresh_name


class TrackOptionsError(ValueError):
    pass


class PathStatus(str, Enum):
    CONVERGED = "converged"
    CONVERGED_SINGULAR = "converged-singular"
    AT_INFINITY = "at-infinity"
    X_CONVERGED_LAMBDA_DIVERGED = "x-converged-lambda-diverged"
    FAILED = "failed"


@dataclass(frozen=True)
class TrackOptions:
    initial_step: float = 0.1
    min_step: float = 1e-14
    max_step: float = 0.25
    corrector_tol: float = 1e-10
    max_corrector_iterations: int = 3
    step_expansion: float = 2.0
    step_contraction: float = 0.5
    successes_before_expansion: int = 5
    endgame_t: float = 0.01
    endgame_shrink: float = 0.5
    max_endgame_cycles: int = 8
    max_endgame_rounds: int = 10
    endgame_samples: int = 16
    endgame_tol: float = 1e-9
    loop_closure_tol: float = 1e-6
    infinity_threshold: float = 1e12
    endpoint_residual: float = 1e-8
    singular_threshold: float = 1e-8
    max_steps: int = 20000
    patch_seed: int = 0
    direct_finish: bool = False
    max_direct_condition: float = 1e6

    def __post_init__(self):
        if not 0 < self.min_step < self.initial_step < 1:
            raise TrackOptionsError("need 0 < min_step < initial_step < 1")
        if self.max_step < self.initial_step:
            raise TrackOptionsError("max_step must be at least initial_step")
        if not 0 < self.endgame_t < 1:
            raise TrackOptionsError("need 0 < endgame_t < 1")
        if not 0 < self.endgame_shrink < 1:
            raise TrackOptionsError("need 0 < endgame_shrink < 1")
        if not 0 < self.step_contraction < 1 < self.step_expansion:
            raise TrackOptionsError("need step_contraction < 1 < step_expansion")
        if self.max_corrector_iterations < 1 or self.max_endgame_cycles < 1 or self.endgame_samples < 4:
            raise TrackOptionsError("iteration and sample counts are too small")
        if self.infinity_threshold <= 1:
            raise TrackOptionsError("infinity_threshold must exceed 1")

    def replace(self, **changes) -> "TrackOptions":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


class NewtonResult(NamedTuple):
    point: np.ndarray
    converged: bool
    residual: float
    iterations: int


@dataclass
class PathResult:
    start_index: int
    status: PathStatus
    endpoint: Optional[np.ndarray] = None
    x_endpoint: Optional[np.ndarray] = None
    winding: int = 0
    residual: float = float("nan")
    steps: int = 0
    min_singular_value: float = float("nan")
    approximations: Tuple[np.ndarray, ...] = ()
    projective_endpoint: Optional[np.ndarray] = None
    failure: str = ""
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status in (PathStatus.CONVERGED, PathStatus.CONVERGED_SINGULAR)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "start_index": self.start_index,
            "status": self.status.value,
            "endpoint": complex_list(self.endpoint),
            "x_endpoint": complex_list(self.x_endpoint),
            "winding": self.winding,
            "residual": _finite_or_none(self.residual),
            "steps": self.steps,
            "min_singular_value": _finite_or_none(self.min_singular_value),
            "failure": self.failure,
            "message": self.message,
        }


@dataclass
class EndgameResult:
    endpoint: np.ndarray
    winding: int
    ok: bool
    estimates: List[np.ndarray] = field(default_factory=list)
    steps: int = 0
    message: str = ""


def complex_list(vector: Optional[np.ndarray]) -> Optional[List[List[float]]]:
    """复向量 → [[re, im], ...]；非有限值写成 null。"""
    if vector is None:
        return None
    return [[_finite_or_none(z.real), _finite_or_none(z.imag)] for z in np.asarray(vector, dtype=complex)]


def _finite_or_none(value: float) -> Optional[float]:
    value = float(value)
    return value if np.isfinite(value) else None


def scaled_min_singular_value(matrix: np.ndarray) -> float:
    """行归一化后的最小奇异值（非奇异性判据）。"""
    matrix = np.asarray(matrix, dtype=complex)
    norms = np.linalg.norm(matrix, axis=1)
    norms[norms == 0] = 1.0
    return float(np.linalg.svd(matrix / norms[:, None], compute_uv=False)[-1])


def unit_phases(rng: np.random.Generator, size: int) -> np.ndarray:
    """单位范数、各分量相位均匀的随机复向量。"""
    return np.exp(2j * np.pi * rng.random(size)) / np.sqrt(size)


PATCH_STREAM = 0x9A7C


def patch_rng(seed: int) -> np.random.Generator:
    """射影 patch 的随机流：同一 seed 下与 default_rng(seed) 的抽样序列不同。"""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(PATCH_STREAM,)))


# =======================
# Homotopy
# =======================
@dataclass(frozen=True)
class Chart:
    affine: Tuple[int, ...]
    homogenizing: int
    patch: np.ndarray


class Homotopy:
    """H(x, t)：system 的变量表 = 未知量 + 参数 t（最后一个）。构造后不可变。"""

    def __init__(self, system: PolynomialSystem, groups: Optional[Sequence[Sequence[int]]] = None,
                 metadata: Optional[Dict[str, Any]] = None):
        size = system.N - 1
        if size < 1:
            raise DimensionError("a homotopy needs at least one unknown besides t")
        if system.n != size:
            raise DimensionError(f"homotopy must be square: {system.n} equations, {size} unknowns")
        self.system = system
        self.groups: Tuple[Tuple[int, ...], ...] = (
            tuple(tuple(int(k) for k in g) for g in groups) if groups else (tuple(range(size)),)
        )
        flat = sorted(k for g in self.groups for k in g)
        if flat != list(range(size)) or any(not g for g in self.groups):
            raise DimensionError(f"groups {self.groups} do not partition the {size} unknowns")
        self.metadata: Dict[str, Any] = dict(metadata or {})

    @classmethod
    def from_system(cls, system: PolynomialSystem, parameter: str = "t",
                    groups: Optional[Sequence[Sequence[int]]] = None) -> "Homotopy":
        """把名为 parameter 的变量挪到末尾作为 t。"""
        if parameter not in system.variables:
            raise DimensionError(f"system has no variable named {parameter!r}")
        order = [v for v in system.variables if v != parameter] + [parameter]
        positions = [order.index(v) for v in system.variables]
        polys = [p.embed(len(order), positions) for p in system.polynomials]
        return cls(PolynomialSystem(order, polys), groups=groups)

    @property
    def size(self) -> int:
        return self.system.N - 1

    @property
    def unknowns(self) -> Tuple[str, ...]:
        return self.system.variables[:-1]

    @property
    def parameter(self) -> str:
        return self.system.variables[-1]

    def _xt(self, x, t) -> np.ndarray:
        return np.concatenate((np.asarray(x, dtype=complex).reshape(-1), [complex(t)]))

    def evaluate(self, x, t) -> np.ndarray:
        return self.system.evaluate(self._xt(x, t))

    def jacobian(self, x, t) -> Tuple[np.ndarray, np.ndarray]:
        full = self.system.jacobian(self._xt(x, t))
        return full[:, :-1], full[:, -1]

    def jacobian_x(self, x, t) -> np.ndarray:
        return self.system.jacobian(self._xt(x, t))[:, :-1]

    def at(self, t: complex) -> PolynomialSystem:
        return self.system.specialize(self.parameter, t)

    def projectivize(self, rng: np.random.Generator) -> "ProjectiveHomotopy":
        size, m = self.size, len(self.groups)
        width = size + m
        total = width + 1
        positions = list(range(size)) + [width]
        rows = [p.embed(total, positions) for p in self.system.polynomials]
        charts: List[Chart] = []
        patch_rows: List[Polynomial] = []
        for j, group in enumerate(self.groups):
            target = size + j
            rows = [r.homogenize(group, target) for r in rows]
            patch = unit_phases(rng, len(group) + 1)
            coeffs = np.zeros(total, dtype=complex)
            coeffs[list(group)] = patch[:-1]
            coeffs[target] = patch[-1]
            patch_rows.append(Polynomial.linear(coeffs, -1))
            charts.append(Chart(tuple(group), target, patch))
        names = list(self.unknowns)
        for j in range(m):
            names.append(fresh_name(names + [self.parameter], f"h{j}"))
        system = PolynomialSystem(names + [self.parameter], rows + patch_rows)
        groups = [tuple(g) + (size + j,) for j, g in enumerate(self.groups)]
        return ProjectiveHomotopy(system, groups, charts, size, self.metadata)

    def __repr__(self):
        return f"{type(self).__name__}(unknowns={list(self.unknowns)}, groups={self.groups})"


class ProjectiveHomotopy(Homotopy):
    """射影化后的 Homotopy：原未知量保持下标，之后依次是各组齐次化坐标。"""

    def __init__(self, system: PolynomialSystem, groups: Sequence[Sequence[int]], charts: Sequence[Chart],
                 affine_size: int, metadata: Optional[Dict[str, Any]] = None):
        super().__init__(system, groups=groups, metadata=metadata)
        self.charts: Tuple[Chart, ...] = tuple(charts)
        self.affine_size = affine_size

    def projectivize(self, rng: np.random.Generator) -> "ProjectiveHomotopy":
        return self

    @property
    def leading(self) -> Tuple[int, ...]:
        return self.charts[0].affine

    def lift(self, affine) -> np.ndarray:
        affine = np.asarray(affine, dtype=complex).reshape(-1)
        if affine.shape[0] != self.affine_size:
            raise DimensionError(f"point has length {affine.shape[0]}, expected {self.affine_size}")
        v = np.zeros(self.size, dtype=complex)
        for chart in self.charts:
            w = np.append(affine[list(chart.affine)], 1.0)
            scale = chart.patch @ w
            v[list(chart.affine)] = w[:-1] / scale
            v[chart.homogenizing] = 1.0 / scale
        return v

    def lower(self, v) -> Tuple[np.ndarray, List[float]]:
        """射影点 → (仿射点, 各组尺度 |h| / ‖组坐标‖)。"""
        v = np.asarray(v, dtype=complex)
        affine = np.empty(self.affine_size, dtype=complex)
        scales: List[float] = []
        with np.errstate(divide="ignore", invalid="ignore"):
            for chart in self.charts:
                h = v[chart.homogenizing]
                coords = v[list(chart.affine)]
                size = np.linalg.norm(np.append(coords, h))
                scales.append(float(abs(h) / size) if size > 0 else 0.0)
                affine[list(chart.affine)] = coords / h if h != 0 else np.inf
        return affine, scales


# =======================
# Newton / 预测
# =======================
def newton_iterate(evaluate: Callable[[np.ndarray], np.ndarray], jacobian: Callable[[np.ndarray], np.ndarray],
            x0, tol: float, maxit: int) -> NewtonResult:
    """不带阻尼的 Newton；下一步更新量（用同一 Jacobian 估计）小于 tol 即收敛。"""
    x = np.array(x0, dtype=complex)
    values = evaluate(x)
    for k in range(maxit):
        try:
            J = jacobian(x)
            dx = np.linalg.solve(J, -values)
            if not np.all(np.isfinite(dx)):
                return NewtonResult(x, False, float(np.linalg.norm(values)), k)
            x = x + dx
            values = evaluate(x)
            dy = np.linalg.solve(J, -values)
        except np.linalg.LinAlgError:
            return NewtonResult(x, False, float(np.linalg.norm(values)), k + 1)
        if np.all(np.isfinite(dy)) and np.linalg.norm(dy) < tol:
            x = x + dy
            values = evaluate(x)
            return NewtonResult(x, True, float(np.linalg.norm(values)), k + 1)
    return NewtonResult(x, False, float(np.linalg.norm(values)), maxit)


def newton_correct(system: PolynomialSystem, x0, tol: float = 1e-10, maxit: int = 3) -> NewtonResult:
    if system.n != system.N:
        raise DimensionError(f"Newton needs a square system, got {system.n}x{system.N}")
    return newton_iterate(system.evaluate, system.jacobian, x0, tol, maxit)


def _tangent(H: Homotopy, x: np.ndarray, t: complex, dt: complex) -> np.ndarray:
    Jx, Ht = H.jacobian(x, t)
    return np.linalg.solve(Jx, -Ht * dt)


def _rk4(H: Homotopy, x: np.ndarray, t: complex, dt: complex, h: float) -> np.ndarray:
    k1 = _tangent(H, x, t, dt)
    k2 = _tangent(H, x + 0.5 * h * k1, t + 0.5 * h * dt, dt)
    k3 = _tangent(H, x + 0.5 * h * k2, t + 0.5 * h * dt, dt)
    k4 = _tangent(H, x + h * k3, t + h * dt, dt)
    return x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _track_segment(H: Homotopy, x: np.ndarray, t0: complex, t1: complex, opts: TrackOptions,
                   initial: Optional[float] = None, max_step: Optional[float] = None) -> Tuple[np.ndarray, bool, int]:
    """沿直线段 t0 → t1 跟踪（参数 u ∈ [0, 1]）。返回 (点, 是否成功, 步数)。"""
    dt = t1 - t0
    cap = max_step if max_step is not None else opts.max_step
    h = initial if initial is not None else opts.initial_step
    u, streak, steps = 0.0, 0, 0
    while u < 1.0:
        if steps >= opts.max_steps:
            return x, False, steps
        h = min(h, 1.0 - u)
        finishing = u + h >= 1.0
        t_here = t0 + u * dt
        t_next = t1 if finishing else t0 + (u + h) * dt
        steps += 1
        ok = False
        try:
            predicted = _rk4(H, x, t_here, dt, h)
            if np.all(np.isfinite(predicted)):
                corrected = newton_iterate(lambda v: H.evaluate(v, t_next), lambda v: H.jacobian_x(v, t_next),
                                    predicted, opts.corrector_tol, opts.max_corrector_iterations)
                ok = corrected.converged
        except np.linalg.LinAlgError:
            ok = False
        if ok:
            x = corrected.point
            u = 1.0 if finishing else u + h
            streak += 1
            if streak >= opts.successes_before_expansion:
                h = min(h * opts.step_expansion, cap)
                streak = 0
        else:
            h *= opts.step_contraction
            streak = 0
            if h < opts.min_step:
                return x, False, steps
    return x, True, steps


# =======================
# Cauchy endgame
# =======================
def _cauchy_loops(H: Homotopy, x: np.ndarray, radius: float, opts: TrackOptions):
    """绕 |t| = radius 一圈圈走，直到回到起点。返回 (样本, 是否闭合, 绕数, 终点, 步数)。"""
    K = opts.endgame_samples
    nodes = radius * np.exp(2j * np.pi * np.arange(K + 1) / K)
    nodes[K] = radius
    start = x.copy()
    samples: List[np.ndarray] = []
    steps = 0
    for cycle in range(1, opts.max_endgame_cycles + 1):
        for k in range(K):
            samples.append(x)
            x, ok, s = _track_segment(H, x, nodes[k], nodes[k + 1], opts, initial=opts.max_step)
            steps += s
            if not ok:
                return samples, False, cycle, x, steps
        if np.linalg.norm(x - start) < opts.loop_closure_tol * (1.0 + np.linalg.norm(start)):
            return samples, True, cycle, start, steps
    return samples, False, opts.max_endgame_cycles, x, steps


def _endgame(H: Homotopy, x: np.ndarray, t_e: float, opts: TrackOptions) -> EndgameResult:
    radius = t_e
    estimates: List[np.ndarray] = []
    steps = 0
    winding = 0
    for _ in range(opts.max_endgame_rounds):
        samples, closed, winding, x, s = _cauchy_loops(H, x, radius, opts)
        steps += s
        if not closed:
            last = estimates[-1] if estimates else x
            return EndgameResult(last, winding, False, estimates, steps, f"loop did not close at radius {radius:.3e}")
        estimate = np.mean(samples, axis=0)
        estimates.append(estimate)
        if len(estimates) >= 2:
            gap = np.linalg.norm(estimates[-1] - estimates[-2])
            if gap < opts.endgame_tol * (1.0 + np.linalg.norm(estimate)):
                return EndgameResult(estimate, winding, True, estimates, steps)
        x, ok, s = _track_segment(H, x, radius, radius * opts.endgame_shrink, opts)
        steps += s
        if not ok:
            return EndgameResult(estimate, winding, False, estimates, steps, "tracking failed while shrinking the radius")
        radius *= opts.endgame_shrink
    return EndgameResult(estimates[-1], winding, False, estimates, steps, "endgame estimates did not stabilize")


def cauchy_endgame(H: Homotopy, approach, t_e: float, opts: Optional[TrackOptions] = None) -> EndgameResult:
    """approach 为 t = t_e 处路径上的仿射点；返回仿射坐标的端点与估计序列。"""
    opts = opts or TrackOptions()
    P = H.projectivize(patch_rng(opts.patch_seed))
    game = _endgame(P, P.lift(approach), t_e, opts)
    return EndgameResult(
        endpoint=P.lower(game.endpoint)[0],
        winding=game.winding,
        ok=game.ok,
        estimates=[P.lower(e)[0] for e in game.estimates],
        steps=game.steps,
        message=game.message,
    )


# =======================
# 单路径 / 多路径
# =======================
def _failed(index: int, steps: int, failure: str, message: str, point=None) -> PathResult:
    return PathResult(start_index=index, status=PathStatus.FAILED, steps=steps, failure=failure,
                      message=message, projective_endpoint=point)


def _classify(P: ProjectiveHomotopy, game: EndgameResult, opts: TrackOptions, index: int, steps: int) -> PathResult:
    v = game.endpoint
    affine, scales = P.lower(v)
    tiny = 1.0 / opts.infinity_threshold
    lead = list(P.leading)
    residual = float(np.linalg.norm(P.evaluate(v, 0.0)))
    approximations = tuple(P.lower(e)[0][lead] for e in game.estimates[-2:])
    common = dict(start_index=index, winding=game.winding, residual=residual, steps=steps,
                  approximations=approximations, projective_endpoint=v)
    if scales[0] < tiny:
        return PathResult(status=PathStatus.AT_INFINITY, **common)
    if any(s < tiny for s in scales[1:]):
        return PathResult(status=PathStatus.X_CONVERGED_LAMBDA_DIVERGED, x_endpoint=affine[lead], **common)
    if not residual < opts.endpoint_residual:
        return _failed(index, steps, "residual", f"endpoint residual {residual:.3e} too large", v)
    sigma = scaled_min_singular_value(P.jacobian_x(v, 0.0))
    common["min_singular_value"] = sigma
    if sigma > opts.singular_threshold and game.winding == 1:
        polished = newton_iterate(lambda w: P.evaluate(w, 0.0), lambda w: P.jacobian_x(w, 0.0), v,
                           opts.corrector_tol, opts.max_corrector_iterations)
        if polished.converged:
            v = polished.point
            affine = P.lower(v)[0]
            common.update(residual=polished.residual, projective_endpoint=v)
        return PathResult(status=PathStatus.CONVERGED, endpoint=affine, x_endpoint=affine[lead], **common)
    return PathResult(status=PathStatus.CONVERGED_SINGULAR, endpoint=affine, x_endpoint=affine[lead], **common)


def _direct_finish(P: ProjectiveHomotopy, x: np.ndarray, opts: TrackOptions) -> Tuple[Optional[np.ndarray], int]:
    """t_e → 0 直接跟踪再 Newton；只有端点是非奇异根时才返回（射影坐标）。"""
    v, ok, steps = _track_segment(P, x, opts.endgame_t, 0.0, opts)
    if not ok:
        return None, steps
    polished = newton_iterate(lambda w: P.evaluate(w, 0.0), lambda w: P.jacobian_x(w, 0.0), v,
                              opts.corrector_tol, 5)
    if not polished.converged or not polished.residual < opts.endpoint_residual:
        return None, steps
    J = P.jacobian_x(polished.point, 0.0)
    if scaled_min_singular_value(J) <= opts.singular_threshold or np.linalg.cond(J) > opts.max_direct_condition:
        return None, steps
    return polished.point, steps


def track_path(H: Homotopy, start, opts: Optional[TrackOptions] = None, start_index: int = 0) -> PathResult:
    """从 t = 1 跟踪到 t_e，再用 Cauchy endgame 求 t → 0 的极限（direct_finish 时先试直接收尾）。"""
    opts = opts or TrackOptions()
    P = H.projectivize(patch_rng(opts.patch_seed))
    x = P.lift(start)
    values = P.evaluate(x, 1.0)
    if not np.all(np.isfinite(values)) or np.linalg.norm(values) > opts.endpoint_residual:
        polished = newton_iterate(lambda v: P.evaluate(v, 1.0), lambda v: P.jacobian_x(v, 1.0), x,
                           opts.corrector_tol, 5)
        if not polished.converged:
            return _failed(start_index, 0, "start", "start point is not a root of H(., 1)", x)
        x = polished.point
    x, ok, steps = _track_segment(P, x, 1.0, opts.endgame_t, opts)
    if not ok:
        return _failed(start_index, steps, "tracking", "step size underflow before the endgame boundary", x)
    if opts.direct_finish:
        v, s = _direct_finish(P, x, opts)
        steps += s
        if v is not None:
            return _classify(P, EndgameResult(v, 1, True, [v]), opts, start_index, steps)
    game = _endgame(P, x, opts.endgame_t, opts)
    steps += game.steps
    if not game.ok:
        return _failed(start_index, steps, "endgame", game.message, game.endpoint)
    return _classify(P, game, opts, start_index, steps)


_WORKER: Dict[str, Any] = {}


def _init_worker(homotopy: ProjectiveHomotopy, opts: TrackOptions) -> None:
    _WORKER["homotopy"] = homotopy
    _WORKER["opts"] = opts


def _track_worker(task: Tuple[int, np.ndarray]) -> PathResult:
    index, start = task
    return track_path(_WORKER["homotopy"], start, _WORKER["opts"], start_index=index)


def track_paths(H: Homotopy, starts: Sequence, opts: Optional[TrackOptions] = None, jobs: int = 1,
                progress: bool = False, desc: str = "Tracking paths") -> List[PathResult]:
    """批量跟踪；jobs > 1 时用进程池。结果按 start index 排序，与 jobs 无关。"""
    opts = opts or TrackOptions()
    P = H.projectivize(patch_rng(opts.patch_seed))
    P.system.compile()
    tasks = [(k, np.asarray(s, dtype=complex)) for k, s in enumerate(starts)]
    if jobs > 1 and len(tasks) > 1:
        chunksize = max(1, len(tasks) // (4 * jobs))
        with Pool(processes=jobs, initializer=_init_worker, initargs=(P, opts)) as pool:
            results = list(tqdm(pool.imap(_track_worker, tasks, chunksize=chunksize),
                                total=len(tasks), desc=desc, disable=not progress))
    else:
        results = [track_path(P, s, opts, start_index=k)
                   for k, s in tqdm(tasks, desc=desc, disable=not progress)]
    results.sort(key=lambda r: r.start_index)
    return results


def status_counts(results: Sequence[PathResult]) -> Dict[str, int]:
    counts = {status.value: 0 for status in PathStatus}
    for r in results:
        counts[r.status.value] += 1
    return counts


# =======================
# 端点聚类
# =======================
def cluster_points(points: Sequence, tol: float) -> List[List[int]]:
    """贪心聚类：距离某簇均值 < tol 即并入；之后反复合并均值过近的簇。返回下标簇。"""
    vectors = [np.asarray(p, dtype=complex) for p in points]
    clusters: List[List[int]] = []
    means: List[np.ndarray] = []
    for k, v in enumerate(vectors):
        for c, mean in enumerate(means):
            if np.linalg.norm(v - mean) < tol:
                clusters[c].append(k)
                means[c] = np.mean([vectors[i] for i in clusters[c]], axis=0)
                break
        else:
            clusters.append([k])
            means.append(v)
    merged = True
    while merged:
        merged = False
        for a in range(len(means)):
            for b in range(a + 1, len(means)):
                if np.linalg.norm(means[a] - means[b]) < tol:
                    clusters[a].extend(clusters.pop(b))
                    means.pop(b)
                    means[a] = np.mean([vectors[i] for i in clusters[a]], axis=0)
                    merged = True
                    break
            if merged:
                break
    return clusters


def dedup_points(points: Sequence, tol: float) -> List[np.ndarray]:
    vectors = [np.asarray(p, dtype=complex) for p in points]
    return [np.mean([vectors[i] for i in c], axis=0) for c in cluster_points(vectors, tol)]
