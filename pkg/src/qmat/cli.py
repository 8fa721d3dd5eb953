"""Command-line front end: ``qmat <verb> ...``.

Exit status is 0 on success, 1 on a domain error (bad axioms, bad input
data) and 2 on a usage error.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

import click

from qmat import analysis, construct, core, io, represent
from qmat.errors import AxiomsFailed, QMatError
from qmat.gf import field_of_order


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except AxiomsFailed as exc:
            click.echo(f"error: {exc}", err=True)
            click.echo(exc.report.render(), err=True)
            ctx.exit(1)
        except QMatError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(1)


def _emit(M: core.QMatroid, out: str | None):
    text = io.write_qmatroid(M)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def catalogue_filename(name: str) -> str:
    return name.lower().replace("*", "s") + ".qm"


def _load(path: str) -> core.QMatroid:
    return io.load_qmatroid(path)


out_option = click.option("-o", "--out", type=click.Path(dir_okay=False), help="Write the result here.")
file_arg = click.argument("path", type=click.Path(exists=True, dir_okay=False))


@click.group(cls=_Group)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomised generators.")
@click.pass_context
def cli(ctx, seed):
    """Exact q-matroid computations over small finite fields."""
    ctx.obj = {"rng": random.Random(seed)}


@cli.command()
@file_arg
def check(path):
    """Verify the rank axioms of a q-matroid file."""
    M = io.load_qmatroid(path, check=False)
    report = core.check_rank_axioms(M)
    if not report.ok:
        raise AxiomsFailed(f"{path} fails the rank axioms", report)
    click.echo(f"ok: q={M.q} n={M.n} rank(E)={M.rank_of_E}")


@cli.command()
@file_arg
def families(path):
    """List independents, bases, circuits, flats, hyperplanes, cocircuits and loops."""
    M = _load(path)
    fam = core.derive_families(M)
    for key in ("independent", "bases", "circuits", "flats", "hyperplanes", "spanning", "cocircuits"):
        items = fam.texts(key)
        click.echo(f"{key} ({len(items)}): " + " ".join(f"<{t}>" for t in items))
    click.echo(f"loopspace: {fam.loopspace}")


@cli.command("dual")
@file_arg
@out_option
def dual_cmd(path, out):
    """Dual q-matroid under the standard dot product."""
    _emit(core.dual(_load(path)), out)


@cli.command("restrict")
@file_arg
@click.argument("subspace")
@out_option
def restrict_cmd(path, subspace, out):
    """Restriction to SUBSPACE (rows like 100,010), on fresh coordinates."""
    M = _load(path)
    _emit(core.restrict(M, M.lattice.parse(subspace)), out)


@cli.command("contract")
@file_arg
@click.argument("subspace")
@out_option
def contract_cmd(path, subspace, out):
    """Contraction of SUBSPACE, on quotient coordinates."""
    M = _load(path)
    _emit(core.contract(M, M.lattice.parse(subspace)), out)


@cli.command("union")
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@out_option
def union_cmd(first, second, out):
    """Matroid union of two q-matroids on the same space."""
    _emit(construct.union(_load(first), _load(second)), out)


@cli.command("intersect")
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@out_option
def intersect_cmd(first, second, out):
    """Matroid intersection of two q-matroids on the same space."""
    _emit(construct.intersection(_load(first), _load(second)), out)


@cli.command("sum")
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@out_option
def sum_cmd(paths, out):
    """Direct sum; more than two summands are summed left to right."""
    if len(paths) < 2:
        raise click.UsageError("sum needs at least two q-matroid files")
    _emit(construct.direct_sum_many(*[_load(p) for p in paths]), out)


@cli.command("add-loop")
@file_arg
@click.option("--at", type=int, default=None, help="Coordinate position of the loop (default: last).")
@out_option
def add_loop_cmd(path, at, out):
    """Extend by one coordinate that is a loop."""
    _emit(construct.add_loop(_load(path), at=at), out)


@cli.command("from-matrix")
@file_arg
@out_option
def from_matrix_cmd(path, out):
    """q-matroid represented by a repmatrix file."""
    rep = io.read_repmatrix(Path(path).read_text())
    _emit(represent.from_matrix(rep), out)


@cli.command()
@click.option("--q", "q", type=int, default=2, show_default=True)
@click.option("--n", "n_max", type=click.IntRange(0, 3), default=3, show_default=True,
              help="Dimension; smaller dimensions are listed too.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for one .qm file per class of dimension n.")
@click.option("--all-levels", is_flag=True, help="With --out, also write the smaller dimensions.")
def catalogue(q, n_max, out_dir, all_levels):
    """Enumerate all q-matroids up to isomorphism and check them against the stored catalogue."""
    field = field_of_order(q)
    levels = analysis.generate_catalogue(field, n_max)
    for level in levels:
        names = ", ".join(M.name for M in level.classes)
        click.echo(f"n={level.n}: {len(level.classes)} classes from {level.tables} tables: {names}")
    problems = {}
    if q == 2 and n_max <= 3:
        problems = {k: v for k, v in analysis.verify_catalogue(levels).items() if v}
        click.echo("catalogue check: " + ("ok" if not problems else f"{len(problems)} mismatching entries"))
        for name, items in problems.items():
            for item in items:
                click.echo(f"  {name}: {item}")
    if out_dir:
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        written = 0
        for level in levels if all_levels else levels[-1:]:
            for M in level.classes:
                io.save_qmatroid(M, target / catalogue_filename(M.name))
                written += 1
        click.echo(f"wrote {written} files to {target}")
    if problems:
        sys.exit(1)


@cli.command()
@click.option("--m-max", type=click.IntRange(1, 10), default=6, show_default=True)
@click.option("--shape-m", type=click.IntRange(0, 10), default=3, show_default=True,
              help="Largest degree for the exhaustive block-shape check.")
def nonrep(m_max, shape_m):
    """Circuit counts of the block representations [1 a 0 0; 0 0 1 b] over GF(2^m)."""
    report = represent.nonrep_search(m_max, shape_m)
    click.echo(report.render())
    if not report.ok:
        sys.exit(1)


@cli.command()
@click.argument("paths", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--random", "n_random", type=int, default=0, help="Also test this many random q-matroids.")
@click.option("--q", "q", type=int, default=2, show_default=True)
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.pass_context
def connect(ctx, paths, n_random, q, n):
    """Circuit and hyperplane relations on 1-spaces, and the transitivity conjectures."""
    Ms = [_load(p) for p in paths]
    for p, M in zip(paths, Ms):
        crel = analysis.circuit_relation(M)
        hrel = analysis.hyperplane_relation(M)
        line = f"{p}: circuit relation "
        if crel.is_equivalence:
            line += f"transitive, {crel.class_count()} classes"
        else:
            x, y, z = (M.lattice.label(i) for i in crel.witness)
            line += f"not transitive (<{x}>~<{y}>~<{z}>, <{x}> not related to <{z}>)"
        if hrel.is_equivalence:
            line += f"; hyperplane relation {hrel.class_count()} classes"
        else:
            line += "; hyperplane relation NOT transitive (inconsistent)"
        click.echo(line)
    rng = ctx.obj["rng"]
    field = field_of_order(q)
    for i in range(n_random):
        Ms.append(analysis.random_qmatroid(field, n, rng).renamed(f"random{i}"))
    click.echo(analysis.conjecture_harness(Ms).render())


@cli.command("demo-nonunique")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
def demo_nonunique(out_dir):
    """Four q-matroids on F_2^4 that all have U12 as every coordinate minor."""
    report = analysis.nonuniqueness_demo()
    click.echo(report.render())
    if out_dir:
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        for M in report.variants:
            io.save_qmatroid(M, target / f"{M.name}.qm")
    if not report.ok:
        sys.exit(1)


@cli.command()
@file_arg
@out_option
@click.option("--max-nodes", type=int, default=io.DIAGRAM_CAP, show_default=True)
@click.option("--force", is_flag=True, help="Ignore the node cap.")
def dot(path, out, max_nodes, force):
    """Bicoloured Hasse diagram in DOT format."""
    text = io.emit_dot(_load(path), None if force else max_nodes)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def main(argv=None):
    return cli.main(args=argv, prog_name="qmat")


if __name__ == "__main__":
    main()
