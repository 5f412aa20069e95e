import json

import pytest

from traceless.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_twobridge_tsv(capsys):
    code, out, _ = run(capsys, "twobridge", "-p", "-5", "-q", "3", "--samples", "1024")
    assert code == 0
    assert "total=5" in out.splitlines()[0]


def test_twobridge_json_unreduced(capsys):
    code, out, _ = run(capsys, "twobridge", "-p", "-3", "-q", "1", "--mode", "unreduced", "--format", "json",
                       "--samples", "1024")
    rec = json.loads(out)
    assert code == 0 and rec["total"] == 6 and rec["mode"] == "unreduced"


def test_twobridge_svg_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    outs = []
    for p in paths:
        code, out, _ = run(capsys, "twobridge", "-p", "-3", "-q", "1", "--epsilon", "0.2", "--svg", str(p),
                           "--samples", "1024")
        assert code == 0
        outs.append(out)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert outs[0] == outs[1]
    assert paths[0].read_text().count('class="generator"') == 3


def test_torus_trace(capsys, tmp_path):
    svg = tmp_path / "t.svg"
    code, out, _ = run(capsys, "torus", "-p", "3", "-q", "4", "--trace", "--svg", str(svg), "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["total"] == 7
    assert sorted(c["kind"] for c in rec["trace"]["components"]) == ["arc", "loop"]
    assert all(c["nonlinearity"] < 1e-6 for c in rec["trace"]["components"])
    assert svg.read_text().count('class="generator"') == 7
    assert 'class="junction"' in svg.read_text()


def test_torus_with_pinned_pair(capsys):
    code, out, _ = run(capsys, "torus", "-p", "3", "-q", "5", "--r", "2", "--s", "-1", "--grid", "256")
    assert code == 0 and "total=9" in out.splitlines()[0]


def test_table_default_and_max_pq(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0 and len(out.splitlines()) == 31
    code, out, _ = run(capsys, "table", "--max-pq", "7", "--format", "json")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert [r["knot"] for r in recs][:3] == ["T(2,3)", "T(3,4)", "T(2,5)"]
    code, out, _ = run(capsys, "table", "--family", "twobridge", "--max-pq", "5")
    assert out.splitlines()[1].startswith("K(-3/1)")


def test_table_output_is_stable(capsys):
    first = run(capsys, "table", "--max-pq", "11")[1]
    assert run(capsys, "table", "--max-pq", "11")[1] == first


@pytest.mark.parametrize(
    "argv, code",
    [
        (["torus", "-p", "4", "-q", "6"], 1),
        (["twobridge", "-p", "4", "-q", "1"], 1),
        (["torus", "-p", "3", "-q", "4", "--r", "3"], 2),
        (["torus", "-p", "3"], 2),
        (["nonsense"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err
