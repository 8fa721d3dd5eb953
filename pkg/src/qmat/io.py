"""Text formats: q-matroid rank tables, representation matrices, and DOT diagrams."""

from __future__ import annotations

import re
from pathlib import Path

from qmat.core import QMatroid, bicolour, check_rank_axioms
from qmat.errors import AxiomsFailed, ParseError, QMatError, TooLargeForDiagram
from qmat.gf import field_make, field_of_order
from qmat.lattice import enumerate_lattice
from qmat.represent import RepMatrix

DIAGRAM_CAP = 1000

_HEADER = re.compile(r"^qmatroid\s+(.*)$")
_REP_HEADER = re.compile(r"^repmatrix\s+(.*)$")


def _parse_q(text: str) -> int:
    if "^" in text:
        p, m = text.split("^", 1)
        return int(p) ** int(m)
    return int(text)


def _header_field(q: int, line_no: int):
    try:
        return field_of_order(q)
    except QMatError as exc:
        raise ParseError(f"line {line_no}: {exc}") from None


def _fields(rest: str, line_no: int) -> dict:
    out = {}
    for tok in rest.split():
        if "=" not in tok:
            raise ParseError(f"line {line_no}: expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield i, line


def read_qmatroid(text: str, check: bool = True) -> QMatroid:
    """Parse the line format; rows must follow canonical lattice order."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty q-matroid file")
    no, head = lines[0]
    m = _HEADER.match(head)
    if not m:
        raise ParseError(f"line {no}: expected 'qmatroid q=<q> n=<n>'")
    kv = _fields(m.group(1), no)
    try:
        q, n = _parse_q(kv["q"]), int(kv["n"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"line {no}: bad header ({exc})") from None
    field = _header_field(q, no)
    L = enumerate_lattice(field, n)
    body = lines[1:]
    if len(body) != len(L):
        raise ParseError(f"expected {len(L)} subspace lines, found {len(body)}")
    ranks = []
    for (no, line), space in zip(body, L.spaces):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {no}: expected '<rank> <dim> <rows>'")
        try:
            r, d = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {no}: rank and dim must be integers") from None
        if d != space.dim or parts[2] != space.text():
            raise ParseError(
                f"line {no}: expected subspace {space.text()} (dim {space.dim}), got {parts[2]}"
            )
        ranks.append(r)
    M = QMatroid(L, ranks, name=kv.get("name"))
    if check:
        report = check_rank_axioms(M, limit=10)
        if not report.ok:
            raise AxiomsFailed("rank table violates the q-matroid axioms", report)
    return M


def write_qmatroid(M: QMatroid) -> str:
    head = f"qmatroid q={M.q} n={M.n}"
    if M.name:
        head += f" name={M.name}"
    lines = [head]
    for r, s in zip(M.rank.tolist(), M.lattice.spaces):
        lines.append(f"{r} {s.dim} {s.text()}")
    return "\n".join(lines) + "\n"


def load_qmatroid(path, check: bool = True) -> QMatroid:
    return read_qmatroid(Path(path).read_text(), check=check)


def save_qmatroid(M: QMatroid, path) -> None:
    Path(path).write_text(write_qmatroid(M))


# -- representation matrices ---------------------------------------------

def read_repmatrix(text: str) -> RepMatrix:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty repmatrix file")
    no, head = lines[0]
    m = _REP_HEADER.match(head)
    if not m:
        raise ParseError(f"line {no}: expected 'repmatrix q=<q> m=<m> k=<k> n=<n>'")
    kv = _fields(m.group(1), no)
    try:
        q, deg, k, n = _parse_q(kv["q"]), int(kv["m"]), int(kv["k"]), int(kv["n"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"line {no}: bad header ({exc})") from None
    base = _header_field(q, no)
    try:
        ext = field_make(base.p, base.m * deg)
    except QMatError as exc:
        raise ParseError(f"line {no}: {exc}") from None
    rows = []
    for no, line in lines[1:]:
        cells = line.split()
        if len(cells) != n:
            raise ParseError(f"line {no}: expected {n} entries, found {len(cells)}")
        rows.append([ext.parse(c) for c in cells])
    if len(rows) != k:
        raise ParseError(f"expected {k} matrix rows, found {len(rows)}")
    return RepMatrix(base, ext, rows)


def write_repmatrix(rep: RepMatrix) -> str:
    lines = [f"repmatrix q={rep.base.q} m={rep.m} k={rep.k} n={rep.n}"]
    for row in rep.G:
        lines.append(" ".join(rep.ext.format(x) for x in row))
    return "\n".join(lines) + "\n"


# -- diagrams -------------------------------------------------------------

def emit_dot(M: QMatroid, max_nodes: int | None = DIAGRAM_CAP) -> str:
    """Hasse diagram with red (rank goes up) and green (rank stays) covers."""
    L = M.lattice
    if max_nodes is not None and len(L) > max_nodes:
        raise TooLargeForDiagram(f"{len(L)} subspaces exceed the diagram cap {max_nodes}")
    title = M.name or f"F{M.q}^{M.n}"
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for i, s in enumerate(L.spaces):
        rows = "\\n".join(s.text().split(","))
        lines.append(f'  s{i} [label="{rows}\\nr={int(M.rank[i])}"];')
    colouring = bicolour(M)
    for (a, b), colour in zip(colouring.edges, colouring.colours):
        lines.append(f"  s{a} -> s{b} [color={colour}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_edges(text: str) -> list[tuple[int, int, str]]:
    """(lower, upper, colour) triples from a diagram written by ``emit_dot``."""
    pat = re.compile(r"s(\d+) -> s(\d+) \[color=(\w+)\]")
    return [(int(a), int(b), c) for a, b, c in pat.findall(text)]
