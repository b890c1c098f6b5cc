import json

import numpy as np
import pytest
from click.testing import CliRunner

from stonespec import io as sio
from stonespec.cli import main
from stonespec.corpus import corpus
from stonespec.spectral import make_spectral_family, observable_fn

CORPUS = corpus()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def b2_file(tmp_path):
    path = tmp_path / "b2.json"
    sio.save_lattice(CORPUS["B2"], path)
    return path


@pytest.fixture
def mo2_file(tmp_path):
    path = tmp_path / "mo2.json"
    sio.save_lattice(CORPUS["MO2"], path)
    return path


@pytest.fixture
def benzene_file(tmp_path):
    path = tmp_path / "benzene.json"
    sio.save_lattice(CORPUS["benzene-O6"], path)
    return path


class TestCheck:
    def test_b2_all_true(self, runner, b2_file):
        result = runner.invoke(main, ["check", "--lattice", str(b2_file)])
        assert result.exit_code == 0
        assert "distributive: true" in result.output

    def test_mo2_not_distributive_but_ok(self, runner, mo2_file):
        result = runner.invoke(main, ["check", "--lattice", str(mo2_file)])
        assert result.exit_code == 0
        assert "distributive: false" in result.output
        assert "orthomodular: true" in result.output

    def test_benzene_fails(self, runner, benzene_file):
        result = runner.invoke(main, ["check", "--lattice", str(benzene_file)])
        assert result.exit_code == 1
        assert "orthomodular: false" in result.output
        assert "witness" in result.output

    def test_malformed_json_exits_2(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        result = runner.invoke(main, ["check", "--lattice", str(bad)])
        assert result.exit_code == 2

    def test_cycle_exits_1(self, runner, tmp_path):
        bad = tmp_path / "cycle.json"
        bad.write_text(
            json.dumps(
                {
                    "elements": ["0", "x", "y", "1"],
                    "leq": [[0, 1], [1, 2], [2, 1], [2, 3]],
                    "ortho": [3, 2, 1, 0],
                }
            )
        )
        result = runner.invoke(main, ["check", "--lattice", str(bad)])
        assert result.exit_code == 1

    def test_json_format(self, runner, mo2_file):
        result = runner.invoke(
            main, ["check", "--lattice", str(mo2_file), "--format", "json"]
        )
        data = json.loads(result.output)
        assert data["is_orthomodular"] and not data["is_distributive"]


class TestQuasipoints:
    def test_listing(self, runner, b2_file):
        result = runner.invoke(main, ["quasipoints", "--lattice", str(b2_file)])
        assert result.exit_code == 0
        assert "2 quasipoints" in result.output
        assert "H(p) = {1, p}" in result.output

    def test_json(self, runner, mo2_file):
        result = runner.invoke(
            main, ["quasipoints", "--lattice", str(mo2_file), "--format", "json"]
        )
        data = json.loads(result.output)
        assert len(data["quasipoints"]) == 4
        assert len(data["dual_ideals"]) == 5


class TestObsfnAndReconstruct:
    def test_projection_pattern(self, runner, b2_file, tmp_path):
        B2 = CORPUS["B2"]
        fam = tmp_path / "fam.json"
        sio.save_family(
            make_spectral_family(B2, [(0.0, B2.index("p")), (1.0, B2.top)]), fam
        )
        result = runner.invoke(
            main, ["obsfn", "--lattice", str(b2_file), "--family", str(fam)]
        )
        assert result.exit_code == 0
        assert "f(H(p)) = 0" in result.output
        assert "f(H(q)) = 1" in result.output

    def test_round_trip_through_files(self, runner, b2_file, tmp_path):
        B2 = CORPUS["B2"]
        E = make_spectral_family(B2, [(0.0, B2.index("p")), (1.0, B2.top)])
        table = tmp_path / "table.json"
        sio.save_table(observable_fn(E), table)
        out = tmp_path / "rebuilt.json"
        result = runner.invoke(
            main,
            [
                "reconstruct",
                "--lattice", str(b2_file),
                "--fn", str(table),
                "--out", str(out),
            ],
        )
        assert result.exit_code == 0
        assert sio.load_family(out, B2) == E

    def test_reconstruct_prints_json_by_default(self, runner, b2_file, tmp_path):
        B2 = CORPUS["B2"]
        E = make_spectral_family(B2, [(0.0, B2.index("p")), (1.0, B2.top)])
        table = tmp_path / "table.json"
        sio.save_table(observable_fn(E), table)
        result = runner.invoke(
            main, ["reconstruct", "--lattice", str(b2_file), "--fn", str(table)]
        )
        assert result.exit_code == 0
        assert json.loads(result.output) == sio.family_to_dict(E)

    def test_unreconstructible_table_exits_1(self, runner, mo2_file, tmp_path):
        MO2 = CORPUS["MO2"]
        a = MO2.index("a")
        values = [
            {"element": int(p), "f": 1.0 if int(p) in (a, MO2.top) else 0.0}
            for p in MO2.nonzero()
        ]
        table = tmp_path / "bad.json"
        table.write_text(json.dumps({"values": values}))
        result = runner.invoke(
            main, ["reconstruct", "--lattice", str(mo2_file), "--fn", str(table)]
        )
        assert result.exit_code == 1


class TestMatrixCommands:
    @pytest.fixture
    def matrix_file(self, tmp_path):
        path = tmp_path / "a.json"
        sio.save_matrix(np.diag([1.0, 2.0, 2.0]).astype(complex), path)
        return path

    def test_spectral(self, runner, matrix_file):
        result = runner.invoke(main, ["matrix", "spectral", "--matrix", str(matrix_file)])
        assert result.exit_code == 0
        assert "E(1) = p1" in result.output
        assert "E(2) = 1" in result.output

    def test_rays_csv(self, runner, matrix_file):
        result = runner.invoke(
            main, ["matrix", "rays", "--matrix", str(matrix_file), "--seed", "3"]
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "ray_id,f,g,expectation"
        e1 = next(l for l in lines if l.startswith("e1,"))
        assert e1.split(",")[1] == "1.0"

    def test_single_ray_file(self, runner, matrix_file, tmp_path):
        ray = tmp_path / "ray.json"
        ray.write_text(json.dumps({"re": [1.0, 1.0, 0.0], "im": [0.0, 0.0, 0.0]}))
        result = runner.invoke(
            main,
            ["matrix", "rays", "--matrix", str(matrix_file), "--ray", str(ray)],
        )
        assert result.exit_code == 0
        row = result.output.splitlines()[1].split(",")
        assert row[0] == "ray" and row[1] == "2.0"

    def test_ray_dimension_mismatch(self, runner, matrix_file, tmp_path):
        ray = tmp_path / "ray.json"
        ray.write_text(json.dumps({"re": [1.0, 1.0]}))
        result = runner.invoke(
            main,
            ["matrix", "rays", "--matrix", str(matrix_file), "--ray", str(ray)],
        )
        assert result.exit_code == 2

    def test_gelfand(self, runner, matrix_file):
        result = runner.invoke(
            main, ["matrix", "gelfand", "--matrix", str(matrix_file), "--format", "csv"]
        )
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "atom,re,im"

    def test_approx(self, runner, matrix_file):
        result = runner.invoke(
            main, ["matrix", "approx", "--matrix", str(matrix_file), "--eps", "0.1"]
        )
        assert result.exit_code == 0
        assert "closed form: ok" in result.output

    def test_non_hermitian_exits_1(self, runner, tmp_path):
        path = tmp_path / "nh.json"
        sio.save_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]).astype(complex), path)
        result = runner.invoke(main, ["matrix", "spectral", "--matrix", str(path)])
        assert result.exit_code == 1


class TestVerify:
    def test_stone_suite_passes(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "stone", "--seed", "7"])
        assert result.exit_code == 0
        assert "PASS stone-structure" in result.output

    def test_deterministic_output(self, runner):
        args = ["verify", "--suite", "lattice", "--suite", "stone", "--seed", "11"]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.exit_code == second.exit_code == 0
        assert first.output == second.output

    def test_json_format(self, runner):
        result = runner.invoke(
            main, ["verify", "--suite", "stone", "--seed", "7", "--format", "json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert all(entry["passed"] for entry in data)

    def test_csv_format(self, runner):
        result = runner.invoke(
            main, ["verify", "--suite", "gelfand", "--seed", "7", "--format", "csv"]
        )
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "name,passed,detail"
