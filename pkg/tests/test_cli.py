from __future__ import annotations

import json
import subprocess
import sys

import pytest

from thrackle.cli import run
from thrackle.core_map import parse, serialize, verify_thrackle
from thrackle.musquash import standard_musquash, verify_musquash
from thrackle.search import attach_path
from thrackle.surgery import RemovalBlocked, insert_edge, remove_edge, triangle_empty


@pytest.fixture
def m5(tmp_path):
    p = tmp_path / "m5.json"
    p.write_text(serialize(standard_musquash(5)))
    return str(p)


def test_gen_and_verify(tmp_path, capsys):
    out = tmp_path / "m7.json"
    assert run(["gen", "--n", "7", "--out", str(out)]) == 0
    assert parse(out.read_text()) == standard_musquash(7)
    assert run(["verify", str(out), "--musquash"]) == 0
    assert "thrackle: yes" in capsys.readouterr().out


def test_gen_rejects_even_n(capsys):
    assert run(["gen", "--n", "6"]) == 2


def test_verify_non_musquash(tmp_path):
    p = tmp_path / "w.json"
    p.write_text(serialize(insert_edge(standard_musquash(5), 0, 1, 1)))
    assert run(["verify", str(p)]) == 0
    assert run(["verify", str(p), "--musquash"]) == 1


def test_verify_violation(tmp_path, capsys):
    # forcing a blocked removal leaves a drawing that is not a thrackle
    d = attach_path(standard_musquash(7), 0, 2).completions[0]
    path = next(p for p in (((i - 1) % 7, i, (i + 1) % 7, (i + 2) % 7) for i in range(7))
                if d.vertex_degree(p[1]) == 2 and d.vertex_degree(p[2]) == 2
                and not triangle_empty(d, p))
    with pytest.raises(RemovalBlocked):
        remove_edge(d, path)
    src = tmp_path / "cert.json"
    src.write_text(serialize(d))
    assert run(["remove-edge", str(src), "--path", *map(str, path)]) == 1
    bad = tmp_path / "bad.json"
    assert run(["remove-edge", str(src), "--path", *map(str, path), "--force",
                "--out", str(bad)]) == 0
    assert not verify_thrackle(parse(bad.read_text())).ok
    assert run(["verify", str(bad)]) == 1
    assert "thrackle: no" in capsys.readouterr().out


def test_invalid_input(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{")
    assert run(["verify", str(p)]) == 2
    assert run(["verify", str(tmp_path / "missing.json")]) == 2


def test_labels(m5, capsys):
    assert run(["labels", m5]) == 0
    out = capsys.readouterr().out
    assert "faces: 7" in out and "census: 0:1, 1:5, 2:1" in out


def test_remove_and_insert(m5, tmp_path):
    small = tmp_path / "m3.json"
    assert run(["remove-edge", m5, "--edge", "1", "--out", str(small)]) == 0
    assert verify_musquash(parse(small.read_text()))
    big = tmp_path / "w7.json"
    assert run(["insert-edge", m5, "--edge", "0", "--at", "1", "--out", str(big)]) == 0
    assert len(parse(big.read_text()).edges) == 7
    assert run(["remove-edge", str(big), "--path", "0", "5", "6", "1"]) == 0
    assert run(["insert-edge", m5, "--edge", "0", "--at", "9"]) == 2


def test_tables(capsys):
    assert run(["table", "--which", "1", "--n", "7", "--s", "2"]) == 0
    assert "O1=2" in capsys.readouterr().out
    assert run(["table", "--which", "2"]) == 0
    assert "admissible: 1b, 1β, 1γ, 5α" in capsys.readouterr().out
    assert run(["table", "--which", "2", "--n", "5"]) == 0
    assert "(0,0,0,1,0)" in capsys.readouterr().out
    assert run(["table", "--which", "2", "--n", "9"]) == 2


def test_search_exit_codes(tmp_path, capsys):
    assert run(["search", "--campaign", "figure-eight", "--n", "5", "--m", "3"]) == 0
    assert run(["search", "--campaign", "no55", "--budget", "100"]) == 3
    rep = tmp_path / "r.json"
    assert run(["search", "--campaign", "two-path", "--n", "5", "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["verdict"] == "holds"
    assert run(["search"]) == 2


def test_render_and_sums(m5, tmp_path, capsys):
    out = tmp_path / "m5.svg"
    assert run(["render", m5, "--out", str(out), "--labels"]) == 0
    assert "<svg" in out.read_text()
    assert run(["sums", m5]) == 0
    assert "common value: 0" in capsys.readouterr().out


def test_console_script_entry(m5):
    proc = subprocess.run([sys.executable, "-m", "thrackle.cli", "verify", m5],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "thrackle: yes" in proc.stdout
