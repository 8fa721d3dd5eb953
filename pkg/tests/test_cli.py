from importlib import resources

import pytest
from click.testing import CliRunner

from qmat.cli import cli, main
from qmat.io import load_qmatroid, read_qmatroid, write_repmatrix
from qmat.represent import RepMatrix

CATALOGUE_DIR = resources.files("qmat").joinpath("data/catalogue")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("u11", "u12", "u13", "u23", "p1", "p1s", "mixed"):
        path = tmp_path / f"{name}.qm"
        path.write_text(CATALOGUE_DIR.joinpath(f"{name}.qm").read_text())
        out[name] = str(path)
    return out


def body(text):
    return text.splitlines()[1:]


def test_sum_then_check(runner, files, tmp_path, named):
    out = str(tmp_path / "out.qm")
    res = runner.invoke(cli, ["sum", files["u12"], files["u11"], "-o", out])
    assert res.exit_code == 0, res.output
    res = runner.invoke(cli, ["check", out])
    assert res.exit_code == 0
    assert "ok" in res.output and "rank(E)=2" in res.output


def test_dual_matches_stored_file(runner, files):
    res = runner.invoke(cli, ["dual", files["u13"]])
    assert res.exit_code == 0
    with open(files["u23"]) as fh:
        assert body(res.output) == body(fh.read())


def test_catalogue_verb(runner, tmp_path):
    res = runner.invoke(cli, ["catalogue", "--q", "2", "--n", "3", "--out", str(tmp_path / "cat")])
    assert res.exit_code == 0, res.output
    assert "n=3: 8 classes" in res.output
    assert "catalogue check: ok" in res.output
    written = sorted(p.name for p in (tmp_path / "cat").iterdir())
    assert len(written) == 8
    for name in written:
        assert (tmp_path / "cat" / name).read_text() == CATALOGUE_DIR.joinpath(name).read_text()


def test_catalogue_all_levels(runner, tmp_path):
    res = runner.invoke(cli, ["catalogue", "--n", "2", "--out", str(tmp_path), "--all-levels"])
    assert res.exit_code == 0
    assert len(list(tmp_path.iterdir())) == 7


def test_families_verb(runner, files):
    res = runner.invoke(cli, ["families", files["p1"]])
    assert res.exit_code == 0
    assert "circuits (5): <100> <010,001>" in res.output
    assert "loopspace: <100>" in res.output


def test_minor_verbs(runner, files, named):
    res = runner.invoke(cli, ["restrict", files["p1"], "100,010"])
    assert res.exit_code == 0
    assert read_qmatroid(res.output).rank_of_E == 1
    res = runner.invoke(cli, ["contract", files["p1"], "100"])
    assert read_qmatroid(res.output) == named["U12"].renamed(None)


def test_union_and_intersect_verbs(runner, files):
    res = runner.invoke(cli, ["union", files["mixed"], files["mixed"]])
    assert read_qmatroid(res.output).rank_of_E == 1
    res = runner.invoke(cli, ["intersect", files["mixed"], files["mixed"]])
    assert read_qmatroid(res.output).rank_of_E == 1
    res = runner.invoke(cli, ["union", files["mixed"], files["u12"]])
    assert res.exit_code == 0


def test_add_loop_verb(runner, files, named):
    res = runner.invoke(cli, ["add-loop", files["u12"], "--at", "0"])
    assert read_qmatroid(res.output) == named["P1"].renamed(None)
    res = runner.invoke(cli, ["add-loop", files["u12"], "--at", "7"])
    assert res.exit_code == 1


def test_from_matrix_verb(runner, tmp_path):
    path = tmp_path / "g.rep"
    path.write_text(write_repmatrix(RepMatrix.over(2, 2, [[1, 2, 0, 0], [0, 0, 1, 2]])))
    res = runner.invoke(cli, ["from-matrix", str(path)])
    assert res.exit_code == 0
    assert read_qmatroid(res.output).rank_of_E == 2


def test_nonrep_verb(runner):
    res = runner.invoke(cli, ["nonrep", "--m-max", "3", "--shape-m", "2"])
    assert res.exit_code == 0
    assert "m=3: 3 circuits: 36" in res.output
    assert "pairs with 4 two-dim circuits: 0" in res.output


def test_connect_verb(runner, files):
    res = runner.invoke(cli, ["--seed", "3", "connect", files["p1"], files["p1s"], "--random", "3"])
    assert res.exit_code == 0
    assert "not transitive (<" in res.output
    assert "hyperplane relation 1 classes" in res.output
    assert "checked 5 q-matroid(s)" in res.output


def test_demo_nonunique_verb(runner, tmp_path):
    res = runner.invoke(cli, ["demo-nonunique", "--out", str(tmp_path)])
    assert res.exit_code == 0
    assert "pairwise non-isomorphic: True" in res.output
    assert len(list(tmp_path.iterdir())) == 4


def test_dot_verb(runner, files, tmp_path):
    res = runner.invoke(cli, ["dot", files["p1"]])
    assert res.exit_code == 0 and res.output.startswith("digraph")
    res = runner.invoke(cli, ["dot", files["p1"], "--max-nodes", "5"])
    assert res.exit_code == 1 and "cap" in res.output
    out = tmp_path / "p1.dot"
    res = runner.invoke(cli, ["dot", files["p1"], "--max-nodes", "5", "--force", "-o", str(out)])
    assert res.exit_code == 0 and out.read_text().count("->") == 35


def test_bad_axioms_exit_one(runner, tmp_path):
    path = tmp_path / "bad.qm"
    path.write_text("qmatroid q=2 n=1\n1 0 0\n1 1 1\n")
    res = runner.invoke(cli, ["check", str(path)])
    assert res.exit_code == 1
    assert "R1" in res.output


def test_parse_error_exit_one(runner, tmp_path):
    path = tmp_path / "bad.qm"
    path.write_text("nonsense\n")
    res = runner.invoke(cli, ["dual", str(path)])
    assert res.exit_code == 1
    assert "error:" in res.output


@pytest.mark.parametrize(
    "args",
    [["frobnicate"], ["check"], ["sum", "--bogus"], ["nonrep", "--m-max", "40"]],
)
def test_usage_errors_exit_two(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_sum_needs_two_files(runner, files):
    assert runner.invoke(cli, ["sum", files["u12"]]).exit_code == 2


def test_main_entry_point(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", files["u13"]])
    assert info.value.code == 0
    assert "ok: q=2 n=3 rank(E)=1" in capsys.readouterr().out


def test_catalogue_files_load(files):
    assert load_qmatroid(files["p1"]).name == "P1"
