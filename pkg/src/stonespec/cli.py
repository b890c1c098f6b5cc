"""Command-line entry point.

Exit codes: 0 on success, 1 on a mathematical validation failure (with the
witness printed), 2 on schema or input errors, so CI can gate on theorem
suites.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import gelfand as gelfand_mod
from . import io as sio
from . import matrix as matrix_mod
from . import spectral as spectral_mod
from . import stone as stone_mod
from . import verify as verify_mod
from .errors import LatticeError, SchemaError
from .lattice import verify_structure
from .recon import reconstruct as reconstruct_fn

EXIT_MATH = 1
EXIT_SCHEMA = 2


def _fail(code: int, message: str):
    click.echo(message, err=True)
    sys.exit(code)


def _load_lattice(path):
    try:
        return sio.load_lattice(path)
    except SchemaError as exc:
        _fail(EXIT_SCHEMA, f"schema error: {exc}")
    except LatticeError as exc:
        _fail(EXIT_MATH, f"lattice error: {exc}")


@click.group()
def main():
    """Finite orthomodular lattices, Stone spectra and observable functions."""


@main.command()
@click.option("--lattice", "lattice_file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def check(lattice_file, fmt):
    """Verify the structure of a lattice file; exit 0 iff it is an
    orthomodular lattice."""
    L = _load_lattice(lattice_file)
    rep = verify_structure(L)
    if fmt == "json":
        click.echo(json.dumps(rep.to_dict(), indent=2))
    else:
        for key in (
            "is_lattice",
            "is_ortho_complemented",
            "is_orthomodular",
            "is_distributive",
            "is_boolean",
            "is_atomistic",
        ):
            value = getattr(rep, key)
            line = f"{key.removeprefix('is_').replace('_', ' ')}: {str(value).lower()}"
            witness = rep.witnesses.get(key)
            if witness is not None:
                line += f"  (witness: {', '.join(L.names[i] for i in witness)})"
            click.echo(line)
    sys.exit(0 if rep.is_orthomodular_lattice else EXIT_MATH)


@main.command()
@click.option("--lattice", "lattice_file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def quasipoints(lattice_file, fmt):
    """List the quasipoints (and all dual ideals) of a lattice."""
    L = _load_lattice(lattice_file)
    try:
        points = stone_mod.quasipoints(L)
        ideals = stone_mod.enumerate_dual_ideals(L)
    except LatticeError as exc:
        _fail(EXIT_MATH, f"lattice error: {exc}")
    if fmt == "json":
        click.echo(
            json.dumps(
                {
                    "quasipoints": [sorted(int(x) for x in q.members()) for q in points],
                    "dual_ideals": [sorted(int(x) for x in i.members()) for i in ideals],
                },
                indent=2,
            )
        )
    else:
        click.echo(f"{len(points)} quasipoints:")
        for qp in points:
            names = sorted(L.names[int(x)] for x in qp.members())
            click.echo(f"  H({L.names[qp.generator]}) = {{{', '.join(names)}}}")
        click.echo(f"{len(ideals)} dual ideals:")
        for ideal in ideals:
            names = sorted(L.names[int(x)] for x in ideal.members())
            click.echo(f"  H({L.names[ideal.generator]}) = {{{', '.join(names)}}}")


@main.command()
@click.option("--lattice", "lattice_file", required=True, type=click.Path(exists=True))
@click.option("--family", "family_file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def obsfn(lattice_file, family_file, fmt):
    """Print the observable table of a spectral family."""
    L = _load_lattice(lattice_file)
    try:
        E = sio.load_family(family_file, L)
    except SchemaError as exc:
        _fail(EXIT_SCHEMA, f"schema error: {exc}")
    except LatticeError as exc:
        _fail(EXIT_MATH, f"family error: {exc}")
    table = spectral_mod.observable_fn(E)
    if fmt == "json":
        click.echo(json.dumps(sio.table_to_dict(table), indent=2))
    elif fmt == "csv":
        click.echo(sio.family_csv(E), nl=False)
    else:
        for p in L.nonzero():
            click.echo(f"f(H({L.names[int(p)]})) = {float(table.values[p]):g}")


@main.command()
@click.option("--lattice", "lattice_file", required=True, type=click.Path(exists=True))
@click.option("--fn", "fn_file", required=True, type=click.Path(exists=True))
@click.option("--out", "out_file", type=click.Path(), default=None)
def reconstruct(lattice_file, fn_file, out_file):
    """Rebuild the spectral family of an observable table."""
    L = _load_lattice(lattice_file)
    try:
        table = sio.load_table(fn_file, L)
        E = reconstruct_fn(L, table)
    except SchemaError as exc:
        _fail(EXIT_SCHEMA, f"schema error: {exc}")
    except LatticeError as exc:
        _fail(EXIT_MATH, f"validation error: {exc}")
    payload = json.dumps(sio.family_to_dict(E), indent=2)
    if out_file:
        from pathlib import Path

        Path(out_file).write_text(payload + "\n")
        click.echo(f"wrote {out_file}")
    else:
        click.echo(payload)


@main.group()
def matrix():
    """Operations on Hermitian matrix files."""


def _load_matrix(matrix_file):
    try:
        A = sio.load_matrix(matrix_file)
    except SchemaError as exc:
        _fail(EXIT_SCHEMA, f"schema error: {exc}")
    try:
        return matrix_mod.as_hermitian(A), A
    except ValueError:
        return None, sio.load_matrix(matrix_file)


@matrix.command()
@click.option("--matrix", "matrix_file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def spectral(matrix_file, fmt):
    """Spectral family of a Hermitian matrix over its generated lattice."""
    H, _ = _load_matrix(matrix_file)
    if H is None:
        _fail(EXIT_MATH, "matrix is not Hermitian")
    try:
        E = matrix_mod.spectral_family_of(H)
    except matrix_mod.EigenError as exc:
        _fail(EXIT_MATH, f"eigendecomposition error: {exc}")
    if fmt == "json":
        click.echo(json.dumps(sio.family_to_dict(E), indent=2))
    elif fmt == "csv":
        click.echo(sio.family_csv(E), nl=False)
    else:
        L = E.lattice
        for lam, v in E.jumps():
            click.echo(f"E({lam:g}) = {L.names[v]}")


@matrix.command()
@click.option("--matrix", "matrix_file", required=True, type=click.Path(exists=True))
@click.option("--ray", "ray_file", type=click.Path(exists=True), default=None,
              help="evaluate a single ray file instead of the probe sweep")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="csv")
def rays(matrix_file, ray_file, seed, fmt):
    """Ray table (observable, mirrored, expectation) on a probe set."""
    H, _ = _load_matrix(matrix_file)
    if H is None:
        _fail(EXIT_MATH, "matrix is not Hermitian")
    d = matrix_mod.eig(H)
    n = d.n
    probes: list[tuple[str, np.ndarray]]
    if ray_file is not None:
        try:
            x = sio.load_ray(ray_file)
        except SchemaError as exc:
            _fail(EXIT_SCHEMA, f"schema error: {exc}")
        if len(x) != n:
            _fail(EXIT_SCHEMA, f"ray has {len(x)} entries, matrix has {n}")
        probes = [("ray", x)]
    else:
        rng = np.random.default_rng(seed)
        eye = np.eye(n, dtype=np.complex128)
        probes = [(f"e{j + 1}", eye[:, j]) for j in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                probes.append((f"e{i + 1}+e{j + 1}", eye[:, i] + eye[:, j]))
                probes.append((f"e{i + 1}+ie{j + 1}", eye[:, i] + 1j * eye[:, j]))
        for k in range(2 * n):
            probes.append((f"r{k}", matrix_mod.random_ray(n, rng)))
    rows = []
    for label, x in probes:
        rows.append(
            (
                label,
                matrix_mod.ray_obs(d, x),
                matrix_mod.mirrored_ray(d, x),
                matrix_mod.expectation(d, x),
            )
        )
    if fmt == "csv":
        click.echo(sio.rays_csv(rows), nl=False)
    else:
        for label, fv, gv, ev in rows:
            click.echo(f"{label}: f={fv:g} g={gv:g} <Ax,x>={ev:g}")


@matrix.command()
@click.option("--matrix", "matrix_file", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="text")
def gelfand(matrix_file, fmt):
    """Gelfand transform of a (diagonalizable) matrix."""
    _, A = _load_matrix(matrix_file)
    try:
        U, entries = gelfand_mod.diagonalize(A)
    except LatticeError as exc:
        _fail(EXIT_MATH, f"not diagonalizable in an abelian algebra: {exc}")
    alg = gelfand_mod.DiagonalAlgebra.of_dimension(len(entries))
    transform = gelfand_mod.gelfand_transform(alg, entries)
    labels = [f"e{i + 1}" for i in range(alg.n)]
    if fmt == "csv":
        click.echo(sio.transform_csv(labels, transform), nl=False)
    else:
        for label, v in zip(labels, transform):
            click.echo(f"F(A)({label}) = {v.real:g}{v.imag:+g}i")


@matrix.command()
@click.option("--matrix", "matrix_file", required=True, type=click.Path(exists=True))
@click.option("--eps", type=float, required=True)
def approx(matrix_file, eps):
    """Step-operator approximation report at mesh eps."""
    H, _ = _load_matrix(matrix_file)
    if H is None:
        _fail(EXIT_MATH, "matrix is not Hermitian")
    if eps <= 0:
        _fail(EXIT_SCHEMA, "eps must be positive")
    _, rep = matrix_mod.step_approx(H, eps)
    click.echo(f"eps: {rep.eps:g}")
    click.echo(f"observable distance: {rep.f_distance!r}")
    click.echo(f"operator distance: {rep.op_distance!r}")
    click.echo(f"closed form: {'ok' if rep.closed_form_ok else 'FAIL'}")
    sys.exit(0 if rep.passed else EXIT_MATH)


@main.command()
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice(["lattice", "stone", "spectral", "recon", "matrix", "gelfand", "all"]),
    default=("all",),
    show_default=True,
)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
def verify(suites, seed, fmt):
    """Run the verification corpus; exit 0 iff every check passes."""
    checks = verify_mod.run_suites(list(suites), seed)
    if fmt == "json":
        click.echo(verify_mod.render_json(checks), nl=False)
    elif fmt == "csv":
        click.echo(verify_mod.render_csv(checks), nl=False)
    else:
        click.echo(verify_mod.render_text(checks), nl=False)
    sys.exit(0 if all(c.passed for c in checks) else EXIT_MATH)


if __name__ == "__main__":
    main()
