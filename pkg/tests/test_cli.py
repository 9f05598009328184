import json

import pytest

from grpmetric.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_pretty(capsys):
    code, out, _ = run(capsys, "enumerate", "--group", "Z12", "--metric", "psi:6")
    assert code == 0
    assert out.strip() == "t^6 + 2t^5 + 2t^4 + 2t^3 + 2t^2 + 2t + 1"

    code, out, _ = run(capsys, "enumerate", "--group", "Z12", "--metric", "psi:2")
    assert code == 0
    assert out.strip() == "9t^2 + 2t + 1"

    code, out, _ = run(capsys, "enumerate", "--group", "Z8", "--metric", "qadic:2,3")
    assert out.strip() == "4t^3 + 2t^2 + t + 1"

    code, out, _ = run(capsys, "enumerate", "--group", "Z2", "--metric", "hamming")
    assert out.strip() == "t + 1"


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--group", "Z8", "--metric",
                       "qadic:2,3", "--json")
    assert code == 0
    assert json.loads(out) == {"coeffs": [1, 1, 2, 4], "carrier": 8}


def test_enumerate_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "enumerate", "--group", "Z8", "--metric", "bogus")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "enumerate", "--group", "Z12", "--metric", "qadic:2,3")
    assert code == 2


def test_verify_pass_and_report(capsys):
    code, out, _ = run(capsys, "verify", "thm-5.2", "--q", "3", "--n", "3")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass"
    assert report["counts"]["pairs"] == 27 * 26 // 2
    assert report["params"] == {"q": 3, "n": 3}


def test_verify_prop_3_3(capsys):
    code, out, _ = run(capsys, "verify", "prop-3.3", "--p", "2", "--n", "3")
    assert code == 0
    assert json.loads(out)["counts"]["symmetries"] == 48


def test_verify_example_checks(capsys):
    for name in ("ex-4.8", "ex-5.3", "ex-6.5", "ex-6.6", "ex-7.4"):
        code, out, _ = run(capsys, "verify", name)
        assert code == 0, name
        assert json.loads(out)["status"] == "pass"


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "thm-9.9")
    assert code == 2
    assert "unknown check" in err


def test_export_distmatrix(capsys):
    code, out, _ = run(capsys, "export", "distmatrix", "--group", "Z2",
                       "--metric", "hamming")
    assert code == 0
    assert out == "0,1\n0,1\n1,0\n"


def test_export_distmatrix_deterministic(capsys, tmp_path):
    target = tmp_path / "m.csv"
    for _ in range(2):
        code = main(["export", "distmatrix", "--group", "D4",
                     "--metric", "chain:q=2", "--output", str(target)])
        assert code == 0
    first = target.read_bytes()
    main(["export", "distmatrix", "--group", "D4", "--metric", "chain:q=2",
          "--output", str(target)])
    assert target.read_bytes() == first
    header = first.decode().splitlines()[0]
    assert header == "e,r,r2,r3,s,rs,r2s,r3s"


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export", "dot", "--group", "Z8",
                       "--metric", "qadic:2,3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "graph {"
    assert lines[-1] == "}"
    assert "  0 -- 4 [label=1];" in lines
    assert "  0 -- 1 [label=3];" in lines
    assert len(lines) == 2 + 8 * 7 // 2


def test_export_embedding(capsys):
    code, out, _ = run(capsys, "export", "embedding", "--kind", "base_q",
                       "--q", "2", "--n", "3")
    assert code == 0
    assert json.loads(out) == {
        "kind": "base_q", "source": 8, "target": 8,
        "image": [0, 1, 2, 3, 4, 5, 6, 7]}


def test_export_embedding_psi(capsys):
    code, out, _ = run(capsys, "export", "embedding", "--kind", "psi",
                       "--m", "6", "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "psi" and data["source"] == 6 and data["target"] == 9
