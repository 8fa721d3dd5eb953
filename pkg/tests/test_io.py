from importlib import resources

import pytest

from qmat.cli import catalogue_filename
from qmat.core import bicolour, maximal_chains
from qmat.errors import AxiomsFailed, ParseError, TooLargeForDiagram
from qmat.gf import field_make
from qmat.io import (
    emit_dot,
    load_qmatroid,
    parse_dot_edges,
    read_qmatroid,
    read_repmatrix,
    save_qmatroid,
    write_qmatroid,
    write_repmatrix,
)
from qmat.lattice import lattice_for
from qmat.represent import RepMatrix, from_matrix

CATALOGUE_DIR = resources.files("qmat").joinpath("data/catalogue")
STORED = sorted(p.name for p in CATALOGUE_DIR.iterdir() if p.name.endswith(".qm"))


def test_stored_catalogue_is_complete(named):
    assert STORED == sorted(catalogue_filename(x) for x in named)


@pytest.mark.parametrize("fname", STORED)
def test_stored_files_round_trip_exactly(named, fname):
    text = CATALOGUE_DIR.joinpath(fname).read_text()
    M = read_qmatroid(text)
    assert write_qmatroid(M) == text
    assert M == named[M.name]


def test_file_layout(named):
    text = write_qmatroid(named["P1"])
    lines = text.splitlines()
    assert lines[0] == "qmatroid q=2 n=3 name=P1"
    assert lines[1] == "0 0 0"
    assert lines[2] == "1 1 001"
    assert "0 1 100" in lines
    assert lines[-1] == "1 3 100,010,001"


def test_comments_and_prime_power_header(named):
    text = write_qmatroid(named["U12"]).replace("q=2", "q=2^1")
    text = "# a comment\n" + text.replace("\n", "\n\n", 1)
    assert read_qmatroid(text) == named["U12"]


def test_save_and_load(tmp_path, named):
    path = tmp_path / "p2.qm"
    save_qmatroid(named["P2"], path)
    assert load_qmatroid(path) == named["P2"]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "matroid q=2 n=1\n0 0 0\n0 1 1\n",
        "qmatroid q=2\n0 0 0\n",
        "qmatroid q=6 n=1\n0 0 0\n0 1 1\n",
        "qmatroid q=2 n=1\n0 0 0\n",
        "qmatroid q=2 n=1\n0 0 0\n0 1 10\n",
        "qmatroid q=2 n=1\n0 0 0\nx 1 1\n",
        "qmatroid q=2 n=1\n0 0 0\n0 1\n",
        "qmatroid q=2 n=1 junk\n0 0 0\n0 1 1\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        read_qmatroid(text)


def test_axiom_failure_on_read():
    text = "qmatroid q=2 n=1\n1 0 0\n1 1 1\n"
    with pytest.raises(AxiomsFailed) as info:
        read_qmatroid(text)
    assert not info.value.report.ok
    assert read_qmatroid(text, check=False).rank.tolist() == [1, 1]


def test_repmatrix_round_trip():
    rep = RepMatrix.over(2, 3, [[1, 2, 0, 0], [0, 0, 1, 4]])
    text = write_repmatrix(rep)
    assert text.splitlines()[0] == "repmatrix q=2 m=3 k=2 n=4"
    assert text.splitlines()[1] == "001 010 000 000"
    back = read_repmatrix(text)
    assert back == rep
    assert from_matrix(back) == from_matrix(rep)


@pytest.mark.parametrize(
    "text",
    [
        "repmatrix q=2 m=3 k=1\n001 010\n",
        "repmatrix q=2 m=3 k=1 n=2\n001\n",
        "repmatrix q=2 m=3 k=2 n=2\n001 010\n",
        "repmatrix q=2 m=3 k=1 n=2\n001 01x\n",
        "qmatroid q=2 n=1\n",
        "repmatrix q=2 m=30 k=1 n=1\n1\n",
    ],
)
def test_repmatrix_parse_errors(text):
    with pytest.raises(ParseError):
        read_repmatrix(text)


def test_dot_colours(named):
    edges = parse_dot_edges(emit_dot(named["U03"]))
    assert len(edges) == 35
    assert {c for _, _, c in edges} == {"green"}
    L = lattice_for(2, 3)
    colour = {(a, b): c for a, b, c in parse_dot_edges(emit_dot(named["P2*"]))}
    assert colour[0, L.index("001")] == "green"
    assert colour[0, L.index("100")] == "red"


def test_dot_header_and_labels(named):
    text = emit_dot(named["P1"])
    assert text.startswith('digraph "P1" {')
    assert "rankdir=BT;" in text
    assert 's1 [label="001\\nr=1"];' in text


def test_dot_red_edges_per_chain(named):
    for name in ("P1", "P2", "U13"):
        M = named[name]
        colour = {(a, b): c for a, b, c in parse_dot_edges(emit_dot(M))}
        assert colour == dict(zip(bicolour(M).edges, bicolour(M).colours))
        for chain in maximal_chains(M.lattice):
            assert sum(colour[e] == "red" for e in zip(chain, chain[1:])) == M.rank_of_E


def test_dot_size_cap():
    from qmat.construct import uniform

    M = uniform(2, 4, field_make(2))
    with pytest.raises(TooLargeForDiagram):
        emit_dot(M, max_nodes=50)
    assert emit_dot(M, max_nodes=None).count("->") == len(M.lattice.cover_edges)
