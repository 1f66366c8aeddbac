# -*- coding: utf-8 -*-
"""
StartSystems
- 输入: MultiHomStructure（变量分组 + 次数矩阵 D[i][j]）
- 输出:
    · multihomog_bezout：多齐次 Bézout 数（精确整数）
    · build_start_system：线性因子乘积起始系统 + 全部起点
    · solve_start：起始系统 → H(·,1) 的线性同伦，得到非奇异解集 S
- 随机系数全部来自带种子的 numpy Generator，保证可复现
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from path_tracker import (
    Homotopy,
    PathResult,
    PathStatus,
    TrackOptions,
    complex_list,
    dedup_points,
    newton_iterate,
    scaled_min_singular_value,
    track_paths,
)
from poly_core import DimensionError, Polynomial, PolynomialSystem

INT64_MAX = 2 ** 63 - 1
MAX_REDRAWS = 5


class BezoutOverflowError(OverflowError):
    pass


class StartSystemError(RuntimeError):
    pass


class _DegenerateDraw(Exception):
    pass


@dataclass(frozen=True)
class MultiHomStructure:
    groups: Tuple[Tuple[int, ...], ...]
    degrees: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(int(k) for k in g) for g in self.groups)
        degrees = tuple(tuple(int(d) for d in row) for row in self.degrees)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "degrees", degrees)
        if not groups or any(not g for g in groups):
            raise DimensionError("every variable group must be nonempty")
        flat = sorted(k for g in groups for k in g)
        if flat != list(range(len(flat))):
            raise DimensionError(f"groups {groups} do not partition 0..{len(flat) - 1}")
        if len(degrees) != len(flat):
            raise DimensionError(f"structure is not square: {len(degrees)} equations, {len(flat)} unknowns")
        for i, row in enumerate(degrees):
            if len(row) != len(groups):
                raise DimensionError(f"degree row {i} has {len(row)} entries, expected {len(groups)}")
            if any(d < 0 for d in row):
                raise DimensionError(f"degree row {i} has a negative entry")

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def to_dict(self) -> Dict[str, Any]:
        return {"groups": [list(g) for g in self.groups], "degrees": [list(r) for r in self.degrees]}


def _checked(value: int) -> int:
    if value > INT64_MAX:
        raise BezoutOverflowError(f"count {value} exceeds 2^63 - 1")
    return value


def multihomog_bezout(structure: MultiHomStructure) -> int:
    """∏ᵢ(Σⱼ D[i][j]·αⱼ) 中 ∏ αⱼ^{nⱼ} 的系数。逐行相乘，超过组大小的指数直接丢弃。"""
    sizes = structure.sizes
    state: Dict[Tuple[int, ...], int] = {tuple(0 for _ in sizes): 1}
    for row in structure.degrees:
        nxt: Dict[Tuple[int, ...], int] = defaultdict(int)
        for exps, count in state.items():
            for j, d in enumerate(row):
                if d > 0 and exps[j] < sizes[j]:
                    key = exps[:j] + (exps[j] + 1,) + exps[j + 1:]
                    nxt[key] += count * d
        state = nxt
        if not state:
            return 0
    return _checked(state.get(sizes, 0))


def k_bound(N: int, k: int) -> int:
    """K(N, 2k) = N·2k·(2k−1)^{N−1}：偶数次超曲面的路径数上界。"""
    if N < 1 or k < 1:
        raise ValueError("k_bound needs N >= 1 and k >= 1")
    return _checked(N * 2 * k * (2 * k - 1) ** (N - 1))


def structure_of(H: Homotopy) -> MultiHomStructure:
    degrees = [[poly.group_degree(g) for g in H.groups] for poly in H.system.polynomials]
    return MultiHomStructure(H.groups, tuple(tuple(r) for r in degrees))


# =======================
# 乘积起始系统
# =======================
Factor = Tuple[int, np.ndarray]


@dataclass
class StartSystem:
    """第 i 个方程 = ∏ⱼ ∏ₖ (aⱼₖ·x[group j] + bⱼₖ)；factors[i] 存 (组号, [a..., b])。"""

    structure: MultiHomStructure
    factors: List[List[Factor]]
    points: List[np.ndarray]
    seed: int

    def _factor_value(self, factor: Factor, x: np.ndarray) -> complex:
        j, coeffs = factor
        return complex(coeffs[:-1] @ x[list(self.structure.groups[j])] + coeffs[-1])

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        out = np.ones(len(self.factors), dtype=complex)
        for i, row in enumerate(self.factors):
            for factor in row:
                out[i] *= self._factor_value(factor, x)
        return out

    def jacobian(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        total = self.structure.total
        J = np.zeros((len(self.factors), total), dtype=complex)
        for i, row in enumerate(self.factors):
            values = [self._factor_value(f, x) for f in row]
            for k, (j, coeffs) in enumerate(row):
                others = np.prod(values[:k] + values[k + 1:]) if len(values) > 1 else 1.0
                J[i, list(self.structure.groups[j])] += others * coeffs[:-1]
        return J

    def residual(self, point) -> float:
        return float(np.linalg.norm(self.evaluate(point)))

    def as_polynomials(self, nvars: Optional[int] = None) -> List[Polynomial]:
        """展开成 Polynomial（变量数 nvars ≥ 未知量个数，多出的变量系数为 0）。"""
        nvars = self.structure.total if nvars is None else nvars
        polys: List[Polynomial] = []
        for row in self.factors:
            poly = Polynomial.constant(nvars, 1)
            for j, coeffs in row:
                slopes = np.zeros(nvars, dtype=complex)
                slopes[list(self.structure.groups[j])] = coeffs[:-1]
                poly = poly * Polynomial.linear(slopes, coeffs[-1])
            polys.append(poly)
        return polys


def _allocations(structure: MultiHomStructure) -> Iterator[Tuple[int, ...]]:
    """把每个方程分配给一个组，使第 j 组恰好分到 nⱼ 个方程（只考虑 D[i][j] > 0）。"""
    degrees = structure.degrees
    remaining = list(structure.sizes)
    chosen: List[int] = []

    def walk(i: int) -> Iterator[Tuple[int, ...]]:
        if i == len(degrees):
            yield tuple(chosen)
            return
        for j, cap in enumerate(remaining):
            if cap > 0 and degrees[i][j] > 0:
                remaining[j] -= 1
                chosen.append(j)
                yield from walk(i + 1)
                chosen.pop()
                remaining[j] += 1

    return walk(0)


def _draw_factors(structure: MultiHomStructure, rng: np.random.Generator) -> List[List[Factor]]:
    factors: List[List[Factor]] = []
    for row in structure.degrees:
        forms: List[Factor] = []
        for j, d in enumerate(row):
            width = len(structure.groups[j]) + 1
            for _ in range(d):
                forms.append((j, np.exp(2j * np.pi * rng.random(width))))
        factors.append(forms)
    return factors


def _enumerate_roots(structure: MultiHomStructure, factors: List[List[Factor]]) -> List[np.ndarray]:
    points: List[np.ndarray] = []
    for allocation in _allocations(structure):
        blocks: List[List[np.ndarray]] = []
        for j, group in enumerate(structure.groups):
            rows = [i for i, g in enumerate(allocation) if g == j]
            choices = [[c for g, c in factors[i] if g == j] for i in rows]
            solutions: List[np.ndarray] = []
            for combo in itertools.product(*choices):
                A = np.array([c[:-1] for c in combo])
                b = -np.array([c[-1] for c in combo])
                if scaled_min_singular_value(A) <= 1e-8:
                    raise _DegenerateDraw(f"singular factor selection in group {j}")
                solutions.append(np.linalg.solve(A, b))
            blocks.append(solutions)
        for parts in itertools.product(*blocks):
            x = np.empty(structure.total, dtype=complex)
            for group, part in zip(structure.groups, parts):
                x[list(group)] = part
            points.append(x)
    return points


def _draw_start_system(structure: MultiHomStructure, seed: int) -> StartSystem:
    rng = np.random.default_rng(seed)
    factors = _draw_factors(structure, rng)
    start = StartSystem(structure, factors, [], seed)
    for x in _enumerate_roots(structure, factors):
        polished = newton_iterate(start.evaluate, start.jacobian, x, 1e-14, 3)
        if np.all(np.isfinite(polished.point)) and polished.residual < start.residual(x):
            x = polished.point
        if scaled_min_singular_value(start.jacobian(x)) <= 1e-8:
            raise _DegenerateDraw("start point with singular Jacobian")
        start.points.append(x)
    return start


def build_start_system(structure: MultiHomStructure, seed: int = 0) -> StartSystem:
    """退化抽样时以 seed+1, seed+2, … 重抽，最多 5 次。"""
    count = multihomog_bezout(structure)
    reasons: List[str] = []
    for attempt in range(MAX_REDRAWS + 1):
        try:
            start = _draw_start_system(structure, seed + attempt)
        except _DegenerateDraw as e:
            reasons.append(f"seed {seed + attempt}: {e}")
            continue
        if len(start.points) != count:
            raise StartSystemError(f"enumerated {len(start.points)} start points, expected {count}")
        return start
    raise StartSystemError("degenerate start system after redraws: " + "; ".join(reasons))


# =======================
# S = H(·,1) 的非奇异解
# =======================
@dataclass
class StartSolveResult:
    solutions: List[np.ndarray]
    paths: List[PathResult]
    bezout: int
    seed: int
    gamma: complex
    failed: int = 0
    unresolved: int = 0
    singular: int = 0
    infinite: int = 0
    duplicates: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.solutions)

    @property
    def exhaustive(self) -> bool:
        """每条起始路径都有了结论：非奇异有限根、奇异端点或无穷远。"""
        return self.failed == 0 and self.unresolved == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bezout": self.bezout,
            "seed": self.seed,
            "gamma": [self.gamma.real, self.gamma.imag],
            "counts": {
                "S": self.count,
                "failed": self.failed,
                "unresolved": self.unresolved,
                "singular": self.singular,
                "infinite": self.infinite,
                "duplicates": self.duplicates,
            },
            "solutions": [complex_list(s) for s in self.solutions],
        }


TrackFn = Callable[[Homotopy, Sequence, TrackOptions], List[PathResult]]


def blend_homotopy(H: Homotopy, start: StartSystem, gamma: complex) -> Homotopy:
    """(1−t)·H(·,1) + t·γ·P：t=1 为乘积系统，t=0 为 H(·,1)。"""
    target = H.at(1.0)
    size = H.size
    nvars = size + 1
    t = Polynomial.variable(nvars, size)
    positions = list(range(size))
    products = start.as_polynomials(nvars)
    rows = [(1 - t) * p.embed(nvars, positions) + (gamma * t) * q for p, q in zip(target.polynomials, products)]
    return Homotopy(PolynomialSystem(list(H.unknowns) + [H.parameter], rows), groups=start.structure.groups)


def solve_start(H: Homotopy, structure: Optional[MultiHomStructure] = None, seed: int = 0,
                opts: Optional[TrackOptions] = None, jobs: int = 1, progress: bool = False,
                track: Optional[TrackFn] = None, dedup_tol: float = 1e-8) -> StartSolveResult:
    """
    - 输入: H（方阵 Homotopy），其多齐次结构，随机种子
    - 输出: StartSolveResult，其中 solutions 为 H(·,1)=0 的有限非奇异解（去重后再 Newton 精化）
    """
    structure = structure or structure_of(H)
    if structure.total != H.size:
        raise DimensionError(f"structure has {structure.total} unknowns, homotopy has {H.size}")
    # 目标 H(·,1) 的非奇异根直接收尾即可，endgame 只处理其余路径
    opts = (opts or TrackOptions()).replace(direct_finish=True)
    start = build_start_system(structure, seed)
    gamma = complex(np.exp(2j * np.pi * np.random.default_rng([start.seed, 1]).random()))
    blend = blend_homotopy(H, start, gamma)
    if track is None:
        paths = track_paths(blend, start.points, opts, jobs=jobs, progress=progress, desc="Start system")
    else:
        paths = track(blend, start.points, opts)

    result = StartSolveResult([], paths, len(start.points), start.seed, gamma)
    finite: List[np.ndarray] = []
    for path in paths:
        if path.status is PathStatus.CONVERGED:
            finite.append(path.endpoint)
        elif path.status is PathStatus.CONVERGED_SINGULAR:
            result.singular += 1
        elif path.status in (PathStatus.AT_INFINITY, PathStatus.X_CONVERGED_LAMBDA_DIVERGED):
            result.infinite += 1
        elif path.failure in ("start", "tracking"):
            result.failed += 1
        else:
            result.unresolved += 1

    target = H.at(1.0).compile()
    unique = dedup_points(finite, dedup_tol)
    result.duplicates = len(finite) - len(unique)
    for point in unique:
        polished = newton_iterate(target.evaluate, target.jacobian, point, 1e-12, 5)
        result.solutions.append(polished.point if polished.converged else point)
    return result
