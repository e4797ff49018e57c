"""Exit codes, output formats and figure rendering of the command line."""

import json

import pytest

from hrds.cli import main
from hrds.field import field_spec
from hrds.hermitian import RankSet, zero_matrix
from hrds.setfile import parse_set_file, parse_set_text, write_set_file


@pytest.fixture
def udelta_file(tmp_path):
    path = str(tmp_path / "u.txt")
    assert main(["construct", "udelta", "--q", "2", "--delta", "2", "-o", path]) == 0
    return path


def test_eigen_text_and_json(capsys):
    assert main(["eigen", "--q", "2", "--n", "2"]) == 0
    text = capsys.readouterr().out
    assert "H_2(F_4)" in text
    assert "   5  -3   1" in text
    assert main(["--json", "eigen", "--q", "2", "--n", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["results"]["rows"] == [[1, 1, 1], [5, -3, 1], [10, 2, -2]]


def test_bound_text_and_json(capsys):
    assert main(["bound", "--q", "2", "--n", "3", "--k", "2"]) == 0
    text = capsys.readouterr().out
    assert "certified ceiling for general sets: 36" in text
    assert main(["--json", "bound", "--q", "2", "--n", "3", "--k", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["results"]["certified_ceiling"] == 36
    names = [e["name"] for e in payload["results"]["entries"]]
    assert "even-rank-product" in names and "linear" in names


def test_construct_udelta_stdout_parses(capsys):
    assert main(["construct", "udelta", "--q", "2", "--delta", "2"]) == 0
    captured = capsys.readouterr()
    u = parse_set_text(captured.out)
    assert len(u) == 5 and u.k == 2
    assert "size 5" in captured.err


def test_construct_variants_write_files(tmp_path):
    cases = [
        (["construct", "trace-gram", "--q", "3", "--n", "2"], 9, 2),
        (["construct", "lift-points", "--q", "2", "--n", "3"], 21, 2),
        (["construct", "lift-desarguesian", "--q", "2", "--n", "4", "--r", "2"], 17, 4),
    ]
    for argv, size, k in cases:
        path = str(tmp_path / f"{argv[1]}.txt")
        assert main(argv + ["-o", path]) == 0
        u = parse_set_file(path)
        assert len(u) == size and u.k == k


def test_construct_json_embeds_members_and_text(capsys):
    assert main(["--json", "construct", "udelta", "--q", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    res = payload["results"]
    assert res["size"] == 4  # default delta is 1
    assert len(res["members"]) == 4
    assert parse_set_text(res["setfile"]).members is not None


def test_verify_ok_and_maximal(udelta_file, capsys):
    assert main(["verify", "--file", udelta_file]) == 0
    assert "property holds" in capsys.readouterr().out
    assert main(["verify", "--file", udelta_file, "--maximal"]) == 0
    assert "maximal" in capsys.readouterr().out


def test_verify_flags_violations(tmp_path, capsys):
    spec = field_spec(2, 1)
    bad = RankSet(spec, 2, 2, frozenset({zero_matrix(2), ((1, 0), (0, 0))}))
    path = str(tmp_path / "bad.txt")
    write_set_file(path, bad)
    assert main(["verify", "--file", path]) == 1
    assert "rank 1" in capsys.readouterr().out


def test_verify_k_override(udelta_file, capsys):
    assert main(["verify", "--file", udelta_file, "--k", "1"]) == 1
    capsys.readouterr()


def test_verify_not_maximal(tmp_path, capsys):
    spec = field_spec(2, 1)
    seed = RankSet(spec, 2, 2, frozenset({zero_matrix(2)}))
    path = str(tmp_path / "seed.txt")
    write_set_file(path, seed)
    assert main(["verify", "--file", path]) == 0
    assert main(["verify", "--file", path, "--maximal"]) == 1
    assert "extend" in capsys.readouterr().out.lower()


def test_distribution(udelta_file, capsys):
    assert main(["distribution", "--file", udelta_file]) == 0
    text = capsys.readouterr().out
    assert "1 0 4" in text and "5 9 2" in text and "feasible: yes" in text


def test_distribution_json(udelta_file, capsys):
    assert main(["--json", "distribution", "--file", udelta_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["results"]["feasible"] is True
    assert payload["results"]["inner_distribution"] == ["1", "0", "4"]


def test_search_spectrum(capsys):
    assert main(["search", "spectrum", "--q", "2", "--n", "2", "--k", "2"]) == 0
    captured = capsys.readouterr()
    assert "sizes: 4 5" in captured.out
    assert "complete: yes" in captured.out


def test_search_spectrum_json_with_witnesses(tmp_path, capsys):
    wdir = str(tmp_path / "wit")
    rc = main(
        ["--json", "search", "spectrum", "--q", "2", "--n", "2", "--k", "2",
         "--witness-dir", wdir]
    )
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["results"]["sizes"] == [4, 5]
    assert payload["results"]["complete"] is True
    for size in (4, 5):
        u = parse_set_file(f"{wdir}/witness-{size}.hrds")
        assert len(u) == size


def test_exit_code_2_on_usage_errors(tmp_path, capsys):
    assert main(["eigen", "--q", "6", "--n", "2"]) == 2
    assert main(["verify", "--file", str(tmp_path / "absent.txt")]) == 2
    bad = tmp_path / "mangled.txt"
    bad.write_text("HRDS 1\np=2 e=1 n=2\nmod=1,1,1\n")
    assert main(["verify", "--file", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_exit_code_3_on_budget(capsys):
    rc = main(["search", "spectrum", "--q", "2", "--n", "3", "--k", "2",
               "--budget", "100"])
    assert rc == 3
    assert "budget" in capsys.readouterr().err.lower()


def test_exit_code_3_on_time_limit(capsys):
    rc = main(["search", "spectrum", "--q", "2", "--n", "3", "--k", "2",
               "--time-limit", "0.05"])
    assert rc == 3
    assert "complete: no" in capsys.readouterr().out


def test_figures_render(tmp_path, udelta_file):
    figures = [
        (["eigen", "--q", "2", "--n", "2"], "eigen.png"),
        (["bound", "--q", "2", "--n", "2", "--k", "2"], "bound.png"),
        (["distribution", "--file", udelta_file], "dist.png"),
        (["search", "spectrum", "--q", "2", "--n", "2", "--k", "2"], "spec.png"),
    ]
    for argv, name in figures:
        path = tmp_path / name
        assert main(argv + ["--figure", str(path)]) == 0
        assert path.stat().st_size > 0
