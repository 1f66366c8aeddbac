import numpy as np
import pytest

from conftest import FIXTURES, load_fixture_system
import critical_real
from critical_real import (
    FULL_VARIETY,
    ConfigTemplate,
    ConfigurationError,
    CriticalConfig,
    RealSolver,
    build_critical_homotopy,
    classify_real,
    draw_generic,
    fritz_john_rank_gap,
    fritz_john_system,
    run_real,
    square_reduce,
)
from path_tracker import PathStatus
from poly_core import DimensionError, parse_system
from witness_membership import load_witness

HYPERSURFACE_CONFIG = ConfigTemplate(z=[1], gamma=2 + 3j, y=[3 / 8, 5 / 9, 1 / 3],
                                    alpha=[0.5 - 0.2j, 6 / 7 + 2j / 3])
REAL_POINT = np.array([1 / 48, 0, -1 / 48])


def circle(center=0.0):
    return parse_system(f"variables: x1 x2\n(x1 - {center})^2 + x2^2 - 1\n")


def test_critical_homotopy_shape(hypersurface):
    cfg = draw_generic(HYPERSURFACE_CONFIG, 0, hypersurface, 2)
    H = build_critical_homotopy(hypersurface, 2, cfg)
    assert H.size == 5
    assert H.unknowns == ("x1", "x2", "x3", "lambda0", "lambda1")
    assert H.groups == ((0, 1, 2), (3, 4))
    assert H.metadata["d"] == 2


def test_critical_homotopy_at_zero_is_the_fritz_john_system(hypersurface):
    cfg = draw_generic(None, 5, hypersurface, 2)
    H = build_critical_homotopy(hypersurface, 2, cfg)
    fj = fritz_john_system(hypersurface, cfg.y, cfg.alpha)
    point = np.random.default_rng(1).normal(size=5) + 0.3j
    assert np.allclose(H.evaluate(point, 0.0), fj.evaluate(point))


def test_config_validation(hypersurface):
    good = dict(z=[1], gamma=1j, y=[1, 2, 3], alpha=[1, 1j])
    CriticalConfig(**good).validate(hypersurface, 2)
    with pytest.raises(ConfigurationError):
        CriticalConfig(**{**good, "z": [0]}).validate(hypersurface, 2)
    with pytest.raises(ConfigurationError):
        CriticalConfig(**{**good, "y": [1, 2]}).validate(hypersurface, 2)
    with pytest.raises(ConfigurationError):
        CriticalConfig(**{**good, "y": [1, 0, -1]}).validate(hypersurface, 2)
    with pytest.raises(ConfigurationError):
        CriticalConfig(**{**good, "z": [1j]})


def test_draw_generic_is_deterministic_and_admissible(hypersurface, cubic_system):
    for f, d in ((hypersurface, 2), (cubic_system, 1)):
        a = draw_generic(None, 9, f, d)
        b = draw_generic(None, 9, f, d)
        assert a.to_dict() == b.to_dict()
        assert np.linalg.norm(f.evaluate(a.y)) > 1e-8
        assert abs(abs(a.gamma) - 1) < 1e-12
        assert np.isclose(np.linalg.norm(a.alpha), 1)


def test_draw_generic_handles_a_unit_sphere_component():
    sphere = parse_system("variables: x1 x2 x3\nx1^2 + x2^2 + x3^2 - 1\n")
    for seed in range(5):
        cfg = draw_generic(None, seed, sphere, 2)
        assert np.linalg.norm(sphere.evaluate(cfg.y)) > 1e-8


def test_config_round_trips_through_json(hypersurface):
    cfg = draw_generic(None, 3, hypersurface, 2)
    again = CriticalConfig.from_dict(cfg.to_dict())
    assert again.to_dict() == cfg.to_dict()


def test_square_reduce():
    f = parse_system("variables: x1 x2 x3\nx1 - x2\nx2 - x3\nx3^2 - 1\n")
    g, d, reduced = square_reduce(f, 1)
    assert reduced and d == 2 and g.n == 1
    c = circle()
    same, d, reduced = square_reduce(c, 1)
    assert same is c and not reduced and d == 1
    with pytest.raises(DimensionError):
        square_reduce(circle(), 0)


def test_classify_real():
    real = classify_real([REAL_POINT.astype(complex)])
    assert len(real) == 1 and np.allclose(real[0], REAL_POINT)
    complex_point = np.array([-1 / 3 + 5j / 9, 10 / 9 + 17j / 24, -3 / 8 + 5j / 9])
    assert classify_real([complex_point]) == []
    borderline = [REAL_POINT.astype(complex), REAL_POINT + 1e-3j]
    assert classify_real([borderline]) == []


def test_rank_gap_vanishes_at_critical_points():
    f = circle()
    assert fritz_john_rank_gap(f, [2, 0], [1, 0]) < 1e-12
    assert fritz_john_rank_gap(f, [2, 0], [0, 1]) > 0.1


def test_rank_gap_ignores_noise_gradients_on_the_singular_locus(hypersurface):
    near_singular = REAL_POINT + np.array([3e-11, -2e-11, 1e-11])
    assert fritz_john_rank_gap(hypersurface, [3 / 8, 5 / 9, 1 / 3], near_singular) < 1e-9


def test_hypersurface_example():
    f = load_fixture_system("hypersurf.sys")
    report = run_real(f, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2)
    assert report.verified, report.reasons
    assert report.bezout == 6
    assert len(report.S) == 4
    assert len(report.E1) == 3
    assert len(report.R) == 1
    assert np.linalg.norm(report.R[0] - REAL_POINT) < 1e-7
    sources = [p.sources for p in report.E1 if p.reality == "real"]
    assert [len(s) for s in sources] == [2]


def test_hypersurface_endpoints_are_fritz_john_points(hypersurface):
    report = run_real(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2)
    points = [p.point for p in report.E1]
    for sign in (1, -1):
        expected = np.array([-1 / 3 + sign * 5j / 9, 10 / 9 + sign * 17j / 24, -3 / 8 + sign * 5j / 9])
        assert min(np.linalg.norm(p - expected) for p in points) < 1e-8
    H = build_critical_homotopy(hypersurface, 2, report.config)
    assert report.E
    for e in report.E:
        assert fritz_john_rank_gap(hypersurface, report.config.y, e) < 1e-6
        assert np.linalg.norm(H.evaluate(e, 0.0)) < 1e-8


def test_nonsingular_endpoints_have_winding_one(hypersurface):
    report = run_real(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2)
    converged = [p for p in report.paths if p.status is PathStatus.CONVERGED]
    assert converged
    assert all(p.winding == 1 for p in converged)
    assert all(p.winding >= 1 for p in report.paths if p.converged)


def test_hypersurface_limits_do_not_depend_on_gamma():
    f = load_fixture_system("hypersurf.sys")
    runs = []
    for gamma in (np.exp(0.4j), np.exp(2.5j)):
        template = ConfigTemplate(z=[1], gamma=gamma, y=[3 / 8, 5 / 9, 1 / 3], alpha=[0.5 - 0.2j, 6 / 7 + 2j / 3])
        runs.append([p.point for p in run_real(f, FULL_VARIETY, template, d=2).E1])
    first, second = runs
    assert len(first) == len(second) == 3
    for p in first:
        assert min(np.linalg.norm(p - q) for q in second) < 1e-6


def test_circle_critical_points():
    report = run_real(circle(), FULL_VARIETY, ConfigTemplate(y=[2, 0]), d=1, seed=3)
    assert report.verified, report.reasons
    assert len(report.R) == 2
    assert np.allclose(report.nearest(), [1, 0], atol=1e-8)
    assert np.allclose(report.R[1], [-1, 0], atol=1e-8)


def test_unresolved_start_paths_block_verification(monkeypatch, hypersurface):
    solve = critical_real.solve_start

    def with_an_unresolved_path(*args, **kwargs):
        result = solve(*args, **kwargs)
        result.unresolved += 1
        return result

    monkeypatch.setattr(critical_real, "solve_start", with_an_unresolved_path)
    report = run_real(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2)
    assert not report.verified
    assert any("1 ended without a classified limit" in reason for reason in report.reasons)


def test_direct_fritz_john_solve_agrees_on_the_circle():
    report = run_real(circle(), FULL_VARIETY, ConfigTemplate(y=[2, 0]), d=1, seed=3, cross_check=True)
    assert report.verified, report.reasons
    assert report.direct["bezout"] == 4
    assert report.direct["agrees"]
    assert len(report.direct["real"]) == 2
    assert report.to_json_dict()["direct_check"]["agrees"]
    assert "direct_check" not in run_real(circle(), FULL_VARIETY, ConfigTemplate(y=[2, 0]), d=1, seed=3).to_json_dict()


def test_two_circles_each_get_a_point():
    f = parse_system("variables: x1 x2\n((x1 - 3)^2 + x2^2 - 1)*((x1 + 3)^2 + x2^2 - 1)\n")
    report = run_real(f, FULL_VARIETY, d=1, seed=1)
    for center in (3.0, -3.0):
        gaps = [abs(np.hypot(r[0] - center, r[1]) - 1) for r in report.R]
        assert min(gaps) < 1e-6


def test_y_on_the_variety_is_rejected():
    with pytest.raises(ConfigurationError):
        run_real(circle(), FULL_VARIETY, ConfigTemplate(y=[1, 0]), d=1)


def test_full_variety_needs_a_dimension():
    with pytest.raises(ConfigurationError):
        run_real(circle(), FULL_VARIETY)


def test_given_start_solutions_are_reused(hypersurface):
    first = run_real(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2)
    again = run_real(hypersurface, FULL_VARIETY, first.config, d=2, start_solutions=first.S)
    assert again.start is None
    assert again.verified
    assert np.allclose(again.R[0], first.R[0])


def test_solver_writes_stage_logs(workdir, monkeypatch, hypersurface):
    monkeypatch.setenv("REALWITNESS_LOG", "1")
    solver = RealSolver(None, seed=0)
    solver.run(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2)
    logs = sorted(p.name for p in (workdir / "log").iterdir())
    assert any("_start_system_" in name for name in logs)
    assert any("_critical_paths_" in name for name in logs)


def test_report_json_is_reproducible(hypersurface):
    a = run_real(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2).to_json_dict()
    b = run_real(hypersurface, FULL_VARIETY, HYPERSURFACE_CONFIG, d=2, jobs=2).to_json_dict()
    assert a == b
    assert a["counts"]["R"] == 1
    assert a["timings"] == {}


@pytest.mark.slow
def test_cubic_curve_example(cubic_system):
    template = ConfigTemplate(z=[1 / 5, 1 / 9], gamma=3 / 11 - 1j / 13, y=[1 / 4, 1 / 6, -3 / 2],
                              alpha=[1 / 3 - 1j / 7, 6 / 11 + 3j / 4, 2 / 3 - 7j / 8])
    report = run_real(cubic_system, load_witness(FIXTURES / "cubic_witness.json"), template, jobs=4)
    assert report.bezout == 300
    assert len(report.S) == 95
    assert len(report.real) == 15
    assert len(report.R) == 7
    assert np.allclose(report.nearest(), [0.168, 0.028, 0.005], atol=1e-3)


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_quartic_example(seed):
    f = load_fixture_system("quartic.sys")
    report = run_real(f, FULL_VARIETY, ConfigTemplate(z=[1], y=[4 / 3, -9 / 5, -5 / 7, 8 / 9]), d=3,
                      seed=seed, jobs=4)
    assert report.bezout == 432
    assert len(report.S) == 151
    assert len(report.R) == 28


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 7, 13])
def test_f633_example(seed):
    f = load_fixture_system("f633.sys")
    y = [1 / 5, -3 / 4, -2 / 3, 7 / 9, -4 / 7, 12 / 13, 1 / 2, -10 / 11]
    report = run_real(f, FULL_VARIETY, ConfigTemplate(y=y), d=2, seed=seed, jobs=4)
    assert report.bezout == 1792
    assert len(report.S) == 274
    assert len(report.R) == 36
