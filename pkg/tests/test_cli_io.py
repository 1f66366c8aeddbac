import json

import numpy as np
import pytest

from cli_io import (
    EXIT_CONFIG,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_UNVERIFIED,
    FIXTURES,
    JobSpec,
    build_parser,
    job_from_args,
    parse_complex,
    parse_groups,
    parse_vector,
    run_job,
)
from main import main
from solver_base import ConfigurationError


@pytest.mark.parametrize("literal, expected", [
    ("2+3i", 2 + 3j),
    ("1/2-1/5i", 0.5 - 0.2j),
    ("6/7+2/3i", 6 / 7 + 2j / 3),
    ("i", 1j),
    ("-i/5", -0.2j),
    ("3/11-1/13i", 3 / 11 - 1j / 13),
    ("1e-3", 1e-3),
    ("-2.5e+1+i", -25 + 1j),
    (" 7 ", 7),
])
def test_parse_complex(literal, expected):
    assert parse_complex(literal) == pytest.approx(expected)


@pytest.mark.parametrize("literal", ["", "abc", "1+", "2ii", "1/0"])
def test_parse_complex_rejects_garbage(literal):
    with pytest.raises(ConfigurationError):
        parse_complex(literal)


def test_parse_vector():
    assert np.allclose(parse_vector("3/8,5/9,1/3"), [3 / 8, 5 / 9, 1 / 3])
    assert np.allclose(parse_vector("(1/2-1/5i, 6/7+2/3i)"), [0.5 - 0.2j, 6 / 7 + 2j / 3])


def test_presets_fill_only_missing_fields():
    spec = JobSpec(command="real", preset="hypersurface", y="1,1,1").apply_preset()
    assert spec.full_variety and spec.dim == 2
    assert spec.y == "1,1,1"
    assert spec.gamma == "2+3i"
    with pytest.raises(ConfigurationError):
        JobSpec(command="real", preset="nope").apply_preset()


def test_count_hypersurface(workdir, capsys):
    assert main(["count", str(FIXTURES / "hypersurf.sys"), "--dim", "2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["bezout"] == 6
    assert payload["k_bound"] == 6
    assert payload["structure"]["groups"] == [[0, 1, 2], [3, 4]]


@pytest.mark.parametrize("preset, expected", [("cubic", 300), ("f633", 1792), ("quartic", 432)])
def test_count_presets(workdir, tmp_path, preset, expected):
    out = tmp_path / f"{preset}.json"
    assert main(["count", "--preset", preset, "--json", str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["bezout"] == expected


def test_real_without_dimension_is_a_configuration_error(workdir, capsys):
    code = main(["real", str(FIXTURES / "hypersurf.sys"), "--full-variety"])
    assert code == EXIT_CONFIG
    assert "--dim" in capsys.readouterr().err


def test_missing_system_file_is_a_configuration_error(workdir):
    assert run_job(JobSpec(command="count", system=str(FIXTURES / "missing.sys"), dim=1)) == EXIT_CONFIG


def test_bad_literal_is_a_configuration_error(workdir):
    code = main(["real", "--preset", "hypersurface", "--gamma", "2+3j"])
    assert code == EXIT_CONFIG


def test_real_hypersurface_preset(workdir, capsys):
    assert main(["real", "--preset", "hypersurface"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["verified"]
    assert report["counts"]["S"] == 4
    assert np.allclose(report["R_real"], [[1 / 48, 0, -1 / 48]], atol=1e-7)


def test_real_output_is_byte_identical_across_jobs(workdir, tmp_path):
    outputs = []
    for jobs in ("1", "2"):
        out = tmp_path / f"report_{jobs}.json"
        assert main(["real", "--preset", "hypersurface", "--jobs", jobs, "--json", str(out)]) == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_member_commands(workdir, capsys):
    s = 0.168
    point = f"{s},{s ** 2},{s ** 3}"
    assert main(["member", "--preset", "cubic", "--point", point]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["verdict"] is True
    assert main(["member", "--preset", "cubic", "--point", "1/4,1/6,-3/2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["verdict"] is False
    assert main(["member", "--preset", "cubic", "--point", "0.168,0.028,0.005", "--tol-member", "1e-2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["verdict"] is True


def test_member_needs_a_witness(workdir):
    assert main(["member", "--point", "1,2,3"]) == EXIT_CONFIG


def test_track_command(workdir, tmp_path, capsys):
    system = tmp_path / "path.sys"
    system.write_text("variables: x t\nx^2 - (4 - 3*t)\n", encoding="utf-8")
    assert main(["track", str(system), "--point", "1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "converged"
    assert payload["endpoint"][0][0] == pytest.approx(2)
    stuck = tmp_path / "stuck.sys"
    stuck.write_text("variables: x t\nx^2 - (1 - t)\n", encoding="utf-8")
    assert main(["track", str(stuck), "--point", "0"]) == EXIT_UNVERIFIED


def test_inconclusive_exit_code(workdir, monkeypatch):
    import cli_io
    from path_tracker import PathResult, PathStatus
    from witness_membership import MembershipResult

    def all_failed(self, point):
        return MembershipResult(False, float("inf"), [], [PathResult(0, PathStatus.FAILED)])

    monkeypatch.setattr(cli_io.MembershipTester, "run", all_failed)
    assert main(["member", "--preset", "cubic", "--point", "1,1,1"]) == EXIT_INCONCLUSIVE


def test_task_pipeline_writes_and_reuses_artifacts(workdir):
    args = ["real", "--preset", "hypersurface", "--task", "hyper", "--json", "report.json"]
    assert main(args) == EXIT_OK
    base = workdir / "output" / "hyper"
    for name in ("config.json", "start_solutions.json", "endpoints.json", "report.json", "index.json"):
        assert (base / name).exists()
    index = json.loads((base / "index.json").read_text(encoding="utf-8"))
    assert index["verified"] and not index["reused_start_solutions"]

    assert main(args) == EXIT_OK
    index = json.loads((base / "index.json").read_text(encoding="utf-8"))
    assert index["reused_start_solutions"]
    assert index["counts"]["R"] == 1


def test_job_from_args_keeps_parser_fields():
    args = build_parser().parse_args(["real", "x.sys", "--full-variety", "--dim", "2", "--seed", "4", "--timings"])
    spec = job_from_args(args)
    assert spec.command == "real" and spec.system == "x.sys"
    assert spec.full_variety and spec.dim == 2 and spec.seed == 4 and spec.timings
    assert spec.track_options().endgame_t == 0.01


def test_count_cubic_without_a_preset(workdir, capsys):
    assert main(["count", str(FIXTURES / "cubicurve.sys"), "--dim", "1"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["bezout"] == 300


def test_count_uses_the_preset_configuration(workdir, capsys):
    assert main(["count", "--preset", "cubic"]) == EXIT_OK
    config = json.loads(capsys.readouterr().out)["config"]
    assert np.allclose(config["y"], [1 / 4, 1 / 6, -3 / 2])
    assert np.allclose(config["z"], [1 / 5, 1 / 9])
    assert np.allclose(config["gamma"], [3 / 11, -1 / 13])


def test_count_split_variable_groups(workdir, capsys):
    assert main(["count", "--preset", "f633", "--x-groups", "0,1,2,3;4,5,6,7"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["bezout"] == 1792
    assert payload["split"] == {"x_groups": [[0, 1, 2, 3], [4, 5, 6, 7]], "bezout": 1960}
    assert main(["count", "--preset", "f633", "--x-groups", "0,1;2,x"]) == EXIT_CONFIG


def test_parse_groups():
    assert parse_groups("0,1,2,3;4,5,6,7") == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert parse_groups(" 0, 2 ; 1 ") == [[0, 2], [1]]
    for literal in ("", ";", "0,,1", "a"):
        with pytest.raises(ConfigurationError):
            parse_groups(literal)


def test_real_cross_check_is_reported(workdir, capsys):
    assert main(["real", "--preset", "hypersurface", "--cross-check"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["verified"]
    assert report["direct_check"]["bezout"] == 6


def test_member_tolerance_flag_is_separate_from_dedup():
    args = build_parser().parse_args(["member", "--preset", "cubic", "--point", "1,1,1", "--tol-member", "1e-3"])
    spec = job_from_args(args)
    assert spec.tol_member == 1e-3
    assert spec.tol_dedup == JobSpec(command="member").tol_dedup
