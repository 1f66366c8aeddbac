# -*- coding: utf-8 -*-
"""
WitnessMembership
- WitnessSet: {f, L, W}，L 为 d 条线性式（系数 + 常数），W = V ∩ Var(L)
- MembershipTester: 把切片从 L 移到过目标点的 L′，跟踪每个见证点，端点落在目标点附近即判属于 V
- witness_from_parametrization: 由曲线参数化 + 随机超平面构造见证集（伴随矩阵求根）
- 见证集文件为 JSON：system（系统文件文本）/ dimension / degree / slice / points
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from path_tracker import (
    Homotopy,
    PathResult,
    TrackOptions,
    complex_list,
    status_counts,
    track_paths,
    unit_phases,
)
from poly_core import Polynomial, PolynomialError, PolynomialSystem, fresh_name, parse_system


class WitnessError(ValueError):
    pass


class MembershipInconclusive(RuntimeError):
    pass


@dataclass
class WitnessSet:
    system: PolynomialSystem
    slice: np.ndarray
    points: List[np.ndarray]
    dimension: int
    degree: int

    def __post_init__(self):
        self.slice = np.atleast_2d(np.asarray(self.slice, dtype=complex))
        self.points = [np.asarray(p, dtype=complex).reshape(-1) for p in self.points]

    @property
    def N(self) -> int:
        return self.system.N

    def slice_values(self, point) -> np.ndarray:
        point = np.asarray(point, dtype=complex)
        return self.slice[:, :-1] @ point + self.slice[:, -1]

    def slice_system(self) -> List[Polynomial]:
        return [Polynomial.linear(row[:-1], row[-1]) for row in self.slice]

    def validate(self, f_tol: float = 1e-8, slice_tol: float = 1e-10) -> "WitnessSet":
        N, d = self.N, self.dimension
        if not 0 < d < N:
            raise WitnessError(f"dimension {d} out of range for {N} variables")
        if self.slice.shape != (d, N + 1):
            raise WitnessError(f"slice has shape {self.slice.shape}, expected ({d}, {N + 1})")
        if np.linalg.matrix_rank(self.slice[:, :-1]) != d:
            raise WitnessError("slice coefficient matrix is rank deficient")
        if len(self.points) != self.degree:
            raise WitnessError(f"{len(self.points)} witness points for declared degree {self.degree}")
        for k, w in enumerate(self.points):
            if w.shape[0] != N:
                raise WitnessError(f"witness point {k} has length {w.shape[0]}, expected {N}")
            if not np.linalg.norm(self.system.evaluate(w)) < f_tol:
                raise WitnessError(f"witness point {k} is not on Var(f)")
            if not np.linalg.norm(self.slice_values(w)) < slice_tol:
                raise WitnessError(f"witness point {k} is not on the slice")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "system": self.system.to_text(),
            "dimension": self.dimension,
            "degree": self.degree,
            "slice": [[_json_number(c) for c in row] for row in self.slice],
            "points": [complex_list(p) for p in self.points],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "WitnessSet":
        try:
            system = parse_system(payload["system"])
            slice_rows = [[_read_number(c) for c in row] for row in payload["slice"]]
            points = [[_read_number(c) for c in p] for p in payload["points"]]
            return cls(system, np.array(slice_rows, dtype=complex), points,
                       int(payload["dimension"]), int(payload["degree"]))
        except KeyError as e:
            raise WitnessError(f"witness file lacks field {e}") from e
        except PolynomialError as e:
            raise WitnessError(f"witness system: {e}") from e


def _json_number(c: complex):
    c = complex(c)
    return c.real if c.imag == 0 else [c.real, c.imag]


def _read_number(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise WitnessError(f"complex entries must be [re, im] pairs, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def load_witness(path) -> WitnessSet:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise WitnessError(f"{path}: not valid JSON ({e})") from e
    return WitnessSet.from_dict(payload).validate()


def save_witness(ws: WitnessSet, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(ws.to_dict(), ensure_ascii=False, indent=2), encoding="utf-8")
    return path


# =======================
# 成员测试
# =======================
@dataclass
class MembershipResult:
    verdict: bool
    distance: float
    endpoints: List[np.ndarray] = field(default_factory=list)
    paths: List[PathResult] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(1 for p in self.paths if not p.converged)

    @property
    def inconclusive(self) -> bool:
        return bool(self.paths) and self.failed == len(self.paths)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": None if self.inconclusive else self.verdict,
            "inconclusive": self.inconclusive,
            "distance": self.distance if np.isfinite(self.distance) else None,
            "status_counts": status_counts(self.paths),
            "endpoints": [complex_list(e) for e in self.endpoints],
            "paths": [p.to_dict() for p in self.paths],
        }


class MembershipTester:
    """
    同伦成员测试
    - 输入: 见证集、容差、随机种子（决定 γ₁、目标切片斜率以及超定系统的随机化矩阵）
    - 输出: run(point) → MembershipResult
    """

    def __init__(self, witness: WitnessSet, tol: float = 1e-6, seed: int = 0,
                 opts: Optional[TrackOptions] = None, jobs: int = 1, progress: bool = False, track=None):
        self.witness = witness
        self.tol = tol
        self.seed = seed
        self.opts = opts or TrackOptions()
        self.jobs = jobs
        self.progress = progress
        self.track = track
        rng = np.random.default_rng(seed)
        N, d = witness.N, witness.dimension
        self.gamma = complex(np.exp(2j * np.pi * rng.random()))
        self.slopes = np.array([unit_phases(rng, N) for _ in range(d)])
        self.equations = self._square_equations(rng)

    def _square_equations(self, rng: np.random.Generator) -> List[Polynomial]:
        """超定时用单位模随机矩阵把 f 压成 N−d 行。"""
        f = self.witness.system
        rows = self.witness.N - self.witness.dimension
        if f.n < rows:
            raise WitnessError(f"{f.n} equations cannot cut out a {self.witness.dimension}-dimensional set")
        if f.n == rows:
            return list(f.polynomials)
        mix = np.exp(2j * np.pi * rng.random((rows, f.n)))
        out = []
        for r in range(rows):
            poly = Polynomial.constant(f.N, 0)
            for c, p in zip(mix[r], f.polynomials):
                poly = poly + p * complex(c)
            out.append(poly)
        return out

    def homotopy(self, point) -> Homotopy:
        """[f; (1−t)·L′ + t·γ₁·L]，L′ 过 point。"""
        point = np.asarray(point, dtype=complex)
        N = self.witness.N
        if point.shape != (N,):
            raise WitnessError(f"point has shape {point.shape}, expected ({N},)")
        nvars = N + 1
        positions = list(range(N))
        t = Polynomial.variable(nvars, N)
        rows = [p.embed(nvars, positions) for p in self.equations]
        for slopes, row in zip(self.slopes, self.witness.slice):
            target = Polynomial.linear(np.append(slopes, 0), -(slopes @ point))
            start = Polynomial.linear(np.append(row[:-1], 0), row[-1])
            rows.append((1 - t) * target + (self.gamma * t) * start)
        names = list(self.witness.system.variables)
        return Homotopy(PolynomialSystem(names + [fresh_name(names, "t")], rows))

    def run(self, point) -> MembershipResult:
        point = np.asarray(point, dtype=complex)
        H = self.homotopy(point)
        if self.track is None:
            paths = track_paths(H, self.witness.points, self.opts, jobs=self.jobs,
                                progress=self.progress, desc="Membership")
        else:
            paths = self.track(H, self.witness.points, self.opts)
        endpoints = [p.endpoint for p in paths if p.converged]
        distance = min((float(np.linalg.norm(e - point)) for e in endpoints), default=float("inf"))
        return MembershipResult(distance < self.tol, distance, endpoints, paths)


def membership_test(ws: WitnessSet, point, tol: float = 1e-6, seed: int = 0,
                    opts: Optional[TrackOptions] = None, jobs: int = 1) -> bool:
    result = MembershipTester(ws, tol=tol, seed=seed, opts=opts, jobs=jobs).run(point)
    if result.inconclusive:
        raise MembershipInconclusive(f"all {len(result.paths)} membership paths failed")
    return result.verdict


# =======================
# 由参数化曲线构造见证集
# =======================
def _univariate_coefficients(poly: Polynomial) -> np.ndarray:
    coeffs = np.zeros(max(poly.degree(), 0) + 1, dtype=complex)
    for (k,), c in poly.terms.items():
        coeffs[k] += c
    return coeffs


def witness_from_parametrization(curve: Sequence[Polynomial], f: PolynomialSystem, seed: int = 0,
                                 slice_row: Optional[Sequence[complex]] = None,
                                 attempts: int = 10) -> WitnessSet:
    """
    - 输入: N 个单变量多项式（曲线参数化）、环境系统 f、种子；可选给定切片 [a₁..a_N, b]
    - 输出: d = 1 的 WitnessSet，点数 = 曲线次数
    """
    N = f.N
    if len(curve) != N:
        raise WitnessError(f"curve has {len(curve)} coordinates, system has {N} variables")
    if any(p.nvars != 1 for p in curve):
        raise WitnessError("curve coordinates must be polynomials in one parameter")
    degree = max(p.degree() for p in curve)
    if degree < 1:
        raise WitnessError("curve parametrization is constant")

    rng = np.random.default_rng(seed)
    for s in np.exp(2j * np.pi * rng.random(10)):
        image = np.array([p.evaluate([s]) for p in curve])
        if not np.linalg.norm(f.evaluate(image)) < 1e-8:
            raise WitnessError("curve image is not contained in Var(f)")

    for _ in range(attempts):
        row = np.asarray(slice_row, dtype=complex) if slice_row is not None else unit_phases(rng, N + 1)
        substituted = Polynomial.constant(1, row[-1])
        for a, p in zip(row[:-1], curve):
            substituted = substituted + p * complex(a)
        coeffs = _univariate_coefficients(substituted)
        scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
        if coeffs.size - 1 == degree and abs(coeffs[-1]) > 1e-12 * scale:
            roots = np.linalg.eigvals(np.polynomial.polynomial.polycompanion(coeffs))
            roots = np.array([_polish_root(coeffs, r) for r in roots])
            gaps = np.abs(roots[:, None] - roots[None, :]) + np.eye(len(roots))
            if len(roots) == 1 or np.min(gaps) > 1e-8:
                points = [np.array([p.evaluate([s]) for p in curve]) for s in roots]
                return WitnessSet(f, row[None, :], points, 1, degree).validate()
        if slice_row is not None:
            raise WitnessError("given slice is not generic for this curve")
    raise WitnessError(f"no generic slice found in {attempts} draws")


def _polish_root(coeffs: np.ndarray, root: complex, steps: int = 3) -> complex:
    derivative = np.polynomial.polynomial.polyder(coeffs)
    for _ in range(steps):
        slope = np.polynomial.polynomial.polyval(root, derivative)
        if slope == 0:
            break
        root = root - np.polynomial.polynomial.polyval(root, coeffs) / slope
    return complex(root)
