import sys

import pytest

from bwsd import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def pair_file(tmp_path):
    p = tmp_path / "pair.txt"
    p.write_bytes(b"banana\nanaba\n")
    return str(p)


@pytest.fixture
def fasta_file(tmp_path):
    p = tmp_path / "pair.fa"
    p.write_bytes(b">s1\nbanana\n>s2\nanaba\n")
    return str(p)


class TestBasicRuns:
    def test_sf_expectation(self, capsys, pair_file):
        code, out, _ = run_cli(
            capsys, "--input", pair_file, "--format", "lines",
            "--algorithm", "sf", "--measure", "dm",
        )
        assert code == 0
        assert "0.181818" in out

    def test_rmq_entropy(self, capsys, pair_file):
        code, out, _ = run_cli(
            capsys, "--input", pair_file, "--algorithm", "rmq", "--measure", "de",
        )
        assert code == 0
        assert "0.684038" in out

    def test_default_engine_and_auto_format(self, capsys, fasta_file):
        code, out, _ = run_cli(capsys, "--input", fasta_file)
        assert code == 0
        assert out.splitlines()[0] == "s1\ts2"
        assert "0.181818" in out

    def test_every_engine_same_output(self, capsys, pair_file):
        outputs = set()
        for engine in ("sf", "bit", "bit-sd", "wt", "rmq", "rmq-light"):
            code, out, _ = run_cli(capsys, "--input", pair_file, "--algorithm", engine)
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1

    def test_threads_match_serial(self, capsys, pair_file):
        _, serial, _ = run_cli(capsys, "--input", pair_file)
        _, parallel, _ = run_cli(capsys, "--input", pair_file, "--threads", "4")
        assert serial == parallel

    def test_output_file_and_phylip(self, capsys, tmp_path, pair_file):
        out_path = tmp_path / "m.phy"
        code, out, _ = run_cli(
            capsys, "--input", pair_file, "--output", str(out_path),
            "--output-format", "phylip",
        )
        assert code == 0
        assert out == ""
        lines = out_path.read_text().splitlines()
        assert lines[0] == "2"
        assert lines[1].startswith("1         0.000000")

    def test_measure_both_writes_two_files(self, capsys, tmp_path, pair_file):
        out_path = tmp_path / "m.tsv"
        code, _, _ = run_cli(
            capsys, "--input", pair_file, "--measure", "both",
            "--output", str(out_path),
        )
        assert code == 0
        assert "0.181818" in (tmp_path / "m.tsv.dm").read_text()
        assert "0.684038" in (tmp_path / "m.tsv.de").read_text()

    def test_docs_limit(self, capsys, tmp_path):
        p = tmp_path / "three.txt"
        p.write_bytes(b"aa\nbb\ncc\n")
        code, out, _ = run_cli(capsys, "--input", str(p), "--docs", "2")
        assert code == 0
        assert out.splitlines()[0] == "1\t2"


class TestDiagnostics:
    def test_stats_lines(self, capsys, pair_file):
        code, _, err = run_cli(capsys, "--input", pair_file, "--stats",
                               "--algorithm", "bit")
        assert code == 0
        assert "rank_calls=" in err
        assert "compute_time=" in err
        assert "engine=bit" in err

    def test_dump_da_and_bwt(self, capsys, pair_file):
        code, _, err = run_cli(
            capsys, "--input", pair_file, "--dump-da", "--dump-bwt",
        )
        assert code == 0
        lines = err.splitlines()
        assert lines[0] == "1\t1\ta"
        assert lines[6] == "7\t2\t$1"
        assert len(lines) == 13

    def test_dump_bwt_only(self, capsys, pair_file):
        code, _, err = run_cli(capsys, "--input", pair_file, "--dump-bwt")
        assert code == 0
        assert err.splitlines()[0] == "1\ta"


class TestErrors:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "--input", "/nonexistent/path.txt")
        assert code == 2
        assert "cannot read" in err

    def test_empty_file(self, capsys, tmp_path):
        p = tmp_path / "empty.txt"
        p.write_bytes(b"")
        code, _, err = run_cli(capsys, "--input", str(p))
        assert code == 3
        assert "no documents" in err

    def test_bad_fasta(self, capsys, tmp_path):
        p = tmp_path / "bad.fa"
        p.write_bytes(b"notaheader\nACGT\n")
        code, _, err = run_cli(capsys, "--input", str(p), "--format", "fasta")
        assert code == 3

    def test_nul_byte(self, capsys, tmp_path):
        p = tmp_path / "nul.txt"
        p.write_bytes(b"a\x00b\n")
        code, _, err = run_cli(capsys, "--input", str(p))
        assert code == 3
        assert "byte 0" in err

    def test_docs_zero_is_usage_error(self, capsys, pair_file):
        code, _, err = run_cli(capsys, "--input", pair_file, "--docs", "0")
        assert code == 1

    def test_docs_beyond_collection(self, capsys, pair_file):
        code, _, err = run_cli(capsys, "--input", pair_file, "--docs", "5")
        assert code == 1
        assert "out of range" in err

    def test_unknown_engine_is_usage_error(self, capsys, pair_file):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--input", pair_file, "--algorithm", "suffix-tree"])
        assert exc.value.code == 1

    def test_bad_threads(self, capsys, pair_file):
        code, _, err = run_cli(capsys, "--input", pair_file, "--threads", "0")
        assert code == 1

    def test_both_without_output(self, capsys, pair_file):
        code, _, err = run_cli(capsys, "--input", pair_file, "--measure", "both")
        assert code == 1


def test_console_entry_point_runs(tmp_path):
    import subprocess

    p = tmp_path / "pair.txt"
    p.write_bytes(b"banana\nanaba\n")
    proc = subprocess.run(
        [sys.executable, "-m", "bwsd.cli", "--input", str(p), "--algorithm", "sf"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0.181818" in proc.stdout
