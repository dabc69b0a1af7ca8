from pathlib import Path

import pytest

from pytanner.analysis import distance_girth
from pytanner.cli import main
from pytanner.io import load_alist
from pytanner.qc import check_qc_structure

FOUR_CYCLE_ALIST = "2 2\n2 2\n2 2\n2 2\n1 2\n1 2\n1 2\n1 2\n"


def _construct(out: Path, *extra: str) -> int:
    return main(
        [
            "construct",
            "--m", "6",
            "--n", "12",
            "--gamma", "0.5x^2 + 0.5x^3",
            "--out", str(out),
            *extra,
        ]
    )  # fmt: skip


## Construct section


class TestConstruct:
    def test_writes_code(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "code.alist"

        status = _construct(out, "--edge-trials", "2", "--seed", "3")

        assert status == 0
        assert load_alist(out).is_complete()
        assert capsys.readouterr().out == (
            f"mm-pega r=2 N=1 seed=3: 6x12, 30 edges in 30 stages -> {out}\n"
        )

    def test_same_seed_same_file(self, tmp_path: Path):
        first, second = tmp_path / "a.alist", tmp_path / "b.alist"

        assert _construct(first, "--seed", "5") == 0
        assert _construct(second, "--seed", "5") == 0
        assert first.read_text() == second.read_text()

    def test_degree_file(self, tmp_path: Path):
        degrees = tmp_path / "degrees.txt"
        degrees.write_text("3 " * 12 + "\n", encoding="utf-8")
        out = tmp_path / "code.alist"

        status = main(
            [
                "construct", "--m", "6", "--n", "12",
                "--degrees", str(degrees), "--out", str(out),
                "--variant", "m-pega", "--metric", "dist-ace",
            ]
        )  # fmt: skip

        assert status == 0
        assert list(load_alist(out).degrees) == [3] * 12

    def test_qc_code(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "qc.alist"

        status = main(
            [
                "construct", "--m", "8", "--n", "16", "--gamma", "1.0x^2",
                "--qc-n", "4", "--cpm-only", "--out", str(out),
            ]
        )  # fmt: skip

        assert status == 0
        assert "N=4" in capsys.readouterr().out
        check_qc_structure(load_alist(out), 4, cpm_only=True)

    def test_missing_degrees(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "code.alist"

        status = main(["construct", "--m", "2", "--n", "2", "--out", str(out)])

        assert status == 1
        assert "one of --degrees or --gamma" in capsys.readouterr().err
        assert not out.exists()

    def test_exclusive_degree_sources(self):
        with pytest.raises(SystemExit):
            main(["construct", "--degrees", "d.txt", "--gamma", "1.0x^2"])


## Analyze section


class TestAnalyze:
    def test_four_cycle(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        code = tmp_path / "four.alist"
        code.write_text(FOUR_CYCLE_ALIST, encoding="utf-8")
        report = tmp_path / "four.csv"

        status = main(
            [
                "analyze", "--in", str(code), "--ace-depth", "3",
                "--report", str(report),
            ]
        )  # fmt: skip

        assert status == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[1:] == [
            "girth:    4",
            "vnlgd:    1.0000x^4",
            "spectrum: (inf, 0, inf)",
        ]
        header, row = report.read_text(encoding="utf-8").splitlines()
        assert header == "file,m,n,edges,girth,vnlgd,eta_2,eta_4,eta_6"
        assert row.endswith(",2,2,4,4,1.0000x^4,inf,0,inf")

    def test_qc_structure(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "qc.alist"
        main(
            [
                "construct", "--m", "8", "--n", "16", "--gamma", "1.0x^2",
                "--qc-n", "4", "--out", str(out),
            ]
        )  # fmt: skip
        capsys.readouterr()

        assert main(["analyze", "--in", str(out), "--qc-n", "4"]) == 0
        assert "qc:       N=4, 2x4 blocks" in capsys.readouterr().out

    def test_constructed_girth(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "code.alist"
        _construct(out)
        capsys.readouterr()

        assert main(["analyze", "--in", str(out)]) == 0
        girth = distance_girth(load_alist(out))
        assert f"girth:    {girth}\n" in capsys.readouterr().out

    def test_missing_input_option(self, capsys: pytest.CaptureFixture[str]):
        assert main(["analyze"]) == 1
        assert capsys.readouterr().err == (
            "pytanner: error: analyze: missing required option(s) --in\n"
        )

    def test_missing_file(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        assert main(["analyze", "--in", str(tmp_path / "none.alist")]) == 1
        assert capsys.readouterr().err.startswith("pytanner: error:")


## Ensemble section


def test_ensemble(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    report = tmp_path / "ensemble.csv"

    status = main(
        [
            "ensemble", "--m", "6", "--n", "12", "--gamma", "1.0x^2",
            "--count", "3", "--base-seed", "2", "--ace-depth", "4",
            "--workers", "1", "--report", str(report),
        ]
    )  # fmt: skip

    assert status == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "codes:       3"
    assert [line.split(":")[0] for line in lines] == [
        "codes", "maximum", "min vnlgd", "average", "candidates",
    ]  # fmt: skip
    rows = report.read_text(encoding="utf-8").splitlines()
    assert len(rows) == 1 + 3 + 4
    assert [row.split(",")[1] for row in rows[1:4]] == ["2", "3", "4"]


## Simulate section


def test_simulate(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    code = tmp_path / "code.alist"
    report = tmp_path / "ber.csv"
    _construct(code)
    capsys.readouterr()

    status = main(
        [
            "simulate", "--in", str(code), "--ebn0", "1,3",
            "--max-frames", "64", "--batch-size", "32",
            "--min-frame-errors", "5", "--iters", "10",
            "--report", str(report),
        ]
    )  # fmt: skip

    assert status == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("ebn0_db")
    assert len(lines) == 3
    rows = report.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "ebn0_db,frames,bit_errors,frame_errors,ber,fer,avg_iters"
    assert [row.split(",")[0] for row in rows[1:]] == ["1.0", "3.0"]


def test_simulate_rejects_bad_points():
    with pytest.raises(SystemExit):
        main(["simulate", "--in", "code.alist", "--ebn0", "1,x"])


## Config section


class TestConfigFile:
    def test_construct_from_file(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "code.alist"
        config = tmp_path / "run.toml"
        config.write_text(
            'seed = 4\n\n[construct]\nm = 6\nn = 12\ngamma = "1.0x^3"\n'
            f'edge-trials = 2\nout = "{out.as_posix()}"\n',
            encoding="utf-8",
        )

        assert main(["construct", "--config", str(config)]) == 0
        assert "r=2 N=1 seed=4: 6x12, 36 edges" in capsys.readouterr().out

        assert main(["construct", "--config", str(config), "--seed", "9"]) == 0
        assert "seed=9" in capsys.readouterr().out

    def test_simulate_aliases(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        code = tmp_path / "code.alist"
        _construct(code)
        capsys.readouterr()
        config = tmp_path / "run.toml"
        config.write_text(
            f'[simulate]\nin = "{code.as_posix()}"\nebn0 = [2, 4]\n'
            "iters = 5\nmax-frames = 32\nbatch-size = 16\n",
            encoding="utf-8",
        )

        assert main(["simulate", "--config", str(config)]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 3

    def test_unknown_option(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        config = tmp_path / "run.toml"
        config.write_text("[analyze]\ncolour = 1\n", encoding="utf-8")

        assert main(["analyze", "--config", str(config)]) == 1
        assert "unknown analyze option 'colour'" in capsys.readouterr().err

    def test_shared_keys_fit_every_command(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "code.alist"
        config = tmp_path / "run.toml"
        config.write_text(
            'seed = 7\nmetric = "dist-ace"\n\n'
            '[construct]\nm = 6\nn = 12\ngamma = "1.0x^2"\n'
            f'edge-trials = 2\nout = "{out.as_posix()}"\n',
            encoding="utf-8",
        )

        assert main(["construct", "--config", str(config)]) == 0
        assert "seed=7" in capsys.readouterr().out
        assert main(["analyze", "--config", str(config), "--in", str(out)]) == 0
        assert "girth:" in capsys.readouterr().out
        status = main(
            [
                "ensemble", "--config", str(config), "--m", "6", "--n", "12",
                "--gamma", "1.0x^2", "--count", "2", "--workers", "1",
            ]
        )  # fmt: skip
        assert status == 0
        assert capsys.readouterr().out.startswith("codes:       2")
