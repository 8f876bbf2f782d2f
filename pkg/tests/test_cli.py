import io
import json
import random
import sys
from types import SimpleNamespace

import pytest

from cli import main
from conftest import random_dictionary, random_text
from dictionary import render
from entity.occurrence import ReportMode
from entity.pattern import Regime
from oracle import oracle_dmog


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_stats(write_file):
    code, out = run(["stats", write_file("d.txt", "ab{1,3}cd\n")])
    assert code == 0
    stats = json.loads(out)
    assert (stats["d"], stats["lsc"], stats["M"]) == (1, 1, 2)
    assert stats["regime"] == "uniform"
    assert (stats["alpha_star"], stats["beta_star"]) == (1, 3)


def test_stats_of_empty_dictionary(write_file):
    code, out = run(["stats", write_file("d.txt", "# nothing\n")])
    assert code == 0
    stats = json.loads(out)
    assert stats["d"] == 0 and stats["total_len"] == 0 and stats["degeneracy"] == 0


@pytest.mark.parametrize(
    "dictionary, text, lines",
    [
        ("ab{0,2}cd", "abcd", ["4\t0\t2"]),
        ("ab{1,2}cd", "abxcd", ["5\t0\t2"]),
        ("a{0,1}ba", "aba", ["3\t0\t1"]),
    ],
)
@pytest.mark.parametrize("engine", ["orientation", "threshold"])
def test_match_lines(write_file, dictionary, text, lines, engine):
    d = write_file("d.txt", dictionary + "\n")
    t = write_file("t.txt", text)
    code, out = run(["match", d, t, "--witnesses", "--engine", engine])
    assert code == 0
    assert out.splitlines() == lines
    code, out = run(["match", d, t, "--engine", engine])
    assert out.splitlines() == [line.rsplit("\t", 1)[0] for line in lines]


def test_match_empty_text(write_file):
    code, out = run(["match", write_file("d.txt", "a{*}b\n"), write_file("t.txt", "")])
    assert (code, out) == (0, "")


def test_match_writes_counters(write_file, tmp_path):
    counters = tmp_path / "counters.json"
    code, _ = run(["match", write_file("d.txt", "a{*}b\n"), write_file("t.txt", "aabb"), "--counters", str(counters)])
    assert code == 0
    summary = json.loads(counters.read_text())
    assert summary["characters"] == 4
    assert summary["total_outputs"] == 2
    assert {"work_p50", "work_p90", "work_p99", "work_max", "peak_space", "transient_arrays", "resident_arrays"} <= set(summary)


def test_parse_error_exit_code(write_file):
    code, out = run(["match", write_file("d.txt", "ab{3,1}cd\n"), write_file("t.txt", "abcd")])
    assert code == 1
    assert out == ""


def test_missing_file_exit_code(tmp_path):
    code, _ = run(["stats", str(tmp_path / "missing.txt")])
    assert code == 2


def test_triangles(write_file):
    k3 = write_file("k3.txt", "0 1\n1 2\n0 2\n")
    assert run(["triangles", k3, "--vertex", "0"]) == (0, "0 1 2\n")
    assert run(["triangles", k3, "--vertex", "1", "--bounded", "--alpha", "2"]) == (0, "0 1 2\n")
    star = write_file("star.txt", "0 1\n0 2\n0 3\n")
    assert run(["triangles", star, "--vertex", "0"]) == (0, "")
    k4 = write_file("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert run(["triangles", k4, "--all"]) == (0, "0 1 2\n0 1 3\n0 2 3\n1 2 3\n")


def test_triangles_unknown_vertex(write_file):
    code, _ = run(["triangles", write_file("k3.txt", "0 1\n1 2\n0 2\n"), "--vertex", "9"])
    assert code == 1


@pytest.mark.parametrize("content", ["0 1\n1 x\n", "0 1\n1\n"])
def test_triangles_malformed_edge_list(write_file, content):
    code, out = run(["triangles", write_file("g.txt", content), "--all"])
    assert (code, out) == (1, "")


def test_bench_without_families_writes_header_only():
    code, out = run(["bench", "--families", "--no-timing"])
    assert code == 0
    assert out.splitlines() == [
        "family,size,engine,d,degeneracy,lsc,characters,work_p50,work_p99,work_max,max_ratio"
    ]


def test_bench_is_deterministic(tmp_path):
    argv = ["--seed", "3", "bench", "--families", "random-uniform", "--no-timing", "--workers", "2"]
    first, second = run(argv), run(argv)
    assert first == second
    assert len(first[1].splitlines()) == 1 + 3 * 2
    target = tmp_path / "bench.csv"
    assert run(argv + ["--output", str(target)]) == (0, "")
    assert target.read_text() == first[1]


class _RecordingInput:
    def __init__(self, data: bytes, log):
        self.data = data
        self.log = log
        self.offset = 0

    def read(self, n):
        block = self.data[self.offset:self.offset + n]
        self.offset += len(block)
        if block:
            self.log.append(("read", self.offset))
        return block


class _RecordingOutput(io.StringIO):
    def __init__(self, log):
        super().__init__()
        self.log = log

    def write(self, s):
        self.log.append(("write", int(s.split("\t")[0])))
        return super().write(s)

    def flush(self):
        self.log.append(("flush",))


def test_online_flush_emits_before_next_read(write_file, monkeypatch):
    rng = random.Random(99)
    for k in range(20):
        regime = list(Regime)[k % 3]
        patterns = random_dictionary(rng, regime)
        text = random_text(rng, max_length=60)
        d = write_file("d.txt", "\n".join(render(p) for p in patterns) + "\n")
        log = []
        monkeypatch.setattr(sys, "stdin", SimpleNamespace(buffer=_RecordingInput(text, log)))
        out = _RecordingOutput(log)
        assert main(["match", d, "-", "--witnesses", "--online-flush"], out) == 0

        reads = 0
        for entry in log:
            if entry[0] == "read":
                reads += 1
            elif entry[0] == "write":
                assert entry[1] == reads
        assert reads == len(text)
        expected = [o.line() for o in oracle_dmog(patterns, text, ReportMode.WITNESS)]
        assert out.getvalue().splitlines() == expected
