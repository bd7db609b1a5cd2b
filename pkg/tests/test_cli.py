from __future__ import annotations

import subprocess
import sys

import pytest

from semiplanar import catalog
from semiplanar.cli import main, read_poset_file, InputError


def test_count_catalog_ids(capsys):
    assert main(["count", "--id", "A0"]) == 0
    out = capsys.readouterr().out
    assert "|Sub(A)| = 122" in out and "122.0000000000000000" in out
    assert main(["count", "--id", "E1"]) == 0
    assert "79.7500000000000000" in capsys.readouterr().out
    assert main(["count", "--id", "chain4"]) == 0
    out = capsys.readouterr().out
    assert "|Sub(A)| = 16" in out and "256.0000000000000000" in out


def test_count_whole_appendix(tmp_path, capsys):
    path = tmp_path / "appendix.txt"
    path.write_text(catalog.appendix_text())
    assert main(["count", "--input", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.count("Result for A=") == 23
    assert "Result for A=F_0:  |Sub(A)| = 254" in out
    assert "114.2500000000000000" in out


def test_count_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("|A|=2, A(without commas)={ab}. Constraints:\na+b=z\n")
    assert main(["count", "--input", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_planar_messages(capsys):
    assert main(["planar", "--id", "F0"]) == 0
    assert capsys.readouterr().out.strip() == "NonPlanar: contains F0 as subposet (identity)"
    assert main(["planar", "--id", "Crown8"]) == 2
    assert "a and c" in capsys.readouterr().err
    assert main(["planar", "--id", "Crown8_i"]) == 2


def test_planar_from_file(tmp_path, capsys):
    path = tmp_path / "square.txt"
    path.write_text("# a square\nelements: 0abi\nedges: 0a 0b ai bi\n")
    assert main(["planar", "--input", str(path)]) == 0
    assert capsys.readouterr().out.startswith("Planar")


def test_poset_file_errors():
    with pytest.raises(InputError):
        read_poset_file("edges: ab\n")
    with pytest.raises(InputError):
        read_poset_file("elements: ab\nvertices: ab\n")
    with pytest.raises(InputError):
        read_poset_file("elements: ab\nedges: ab ba\n")


def test_census_write_and_read(tmp_path, capsys):
    path = tmp_path / "c4.tsv"
    assert main(["census", "4", "--census-file", str(path)]) == 0
    assert "n=4: 5 classes" in capsys.readouterr().out
    assert main(["census", "--read", "--census-file", str(path)]) == 0
    assert "Planar(sigma): 5" in capsys.readouterr().out
    assert main(["census", "--read"]) == 2
    assert main(["census", "9"]) == 2


def test_verify_only_and_tampering(tmp_path, capsys):
    assert main(["verify-paper", "--only", "sigma-table"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] sigma-table" in out and "1/1 checks passed" in out
    tampered = tmp_path / "appendix.txt"
    tampered.write_text(catalog.appendix_text().replace("e+g=c  f+g=c", "e+g=c"))
    assert main(["verify-paper", "--only", "sigma-table", "--appendix", str(tampered)]) == 1
    assert "[FAIL] sigma-table: F0" in capsys.readouterr().out
    assert main(["verify-paper", "--only", "no-such-check"]) == 2


def test_bench(capsys):
    assert main(["bench", "10", "--samples", "1"]) == 0
    out = capsys.readouterr().out
    assert "random10#0" in out and "MISMATCH" not in out


def test_usage_errors():
    assert main([]) == 2
    assert main(["count"]) == 2
    assert main(["count", "--id", "nope"]) == 2


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "semiplanar", "count", "--id", "F0"],
                          capture_output=True, text=True, check=False)
    assert done.returncode == 0 and "127.0000000000000000" in done.stdout
