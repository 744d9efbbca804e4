import json
import math

import numpy as np
import pytest

from summa.cli import FIGURES, main


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kernel_csv(tmp_path, capsys):
    out = tmp_path / "d5.csv"
    code, _, _ = _run(["kernel", "--d", "1", "--method", "dirichlet", "--n", "5", "--grid", "512",
                       "--format", "csv", "--out", str(out)], capsys)
    assert code == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0].startswith("# summa v1, kernel, ")
    assert lines[1] == "x,value"
    rows = [l for l in lines if not l.startswith("#")]
    assert len(rows) == 513
    values = np.array([float(l.split(",")[1]) for l in rows[1:]])
    assert values.max() == pytest.approx(11.0)


def test_byte_identical_reruns(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["kernel", "--d", "2", "--method", "riesz", "--q", "2", "--gamma", "2", "--n", "4",
                     "--grid", "32", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_names_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["kernel", "--d", "1", "--method", "dirichlet", "--n", "-3"])
    assert exc.value.code == 2
    assert "--n" in capsys.readouterr().err


@pytest.mark.parametrize("argv,flag", [
    (["kernel", "--grid", "100", "--n", "3"], "--grid"),
    (["kernel", "--q", "3", "--n", "3"], "--q"),
    (["kernel", "--method", "bogus", "--n", "3"], "--method"),
    (["kernel", "--unknown", "1"], "--unknown"),
])
def test_argparse_rejections(argv, flag, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_semantic_usage_errors(capsys):
    code, _, err = _run(["kernel", "--d", "2", "--method", "cesaro", "--q", "2", "--n", "3"], capsys)
    assert code == 2 and "--method" in err
    code, _, err = _run(["kernel", "--d", "2", "--n", "3", "--n", "4", "--n", "5"], capsys)
    assert code == 2 and "--n" in err
    code, _, err = _run(["kernel"], capsys)
    assert code == 2 and "--n" in err


def test_computation_error_exit_one(capsys):
    code, _, err = _run(["means", "--d", "1", "--n", "200", "--grid", "64"], capsys)
    assert code == 1 and "ResolutionError" in err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"d": 2, "n": [3, 5], "method": "fejer", "grid": 16}))
    code, out, _ = _run(["kernel", "--config", str(cfg)], capsys)
    assert code == 0 and "n=3x5" in out.splitlines()[0]
    code, out, _ = _run(["kernel", "--config", str(cfg), "--grid", "8"], capsys)
    assert code == 0 and len(out.splitlines()) == 2 + 64
    cfg.write_text(json.dumps({"n": -1}))
    code, _, err = _run(["kernel", "--config", str(cfg)], capsys)
    assert code == 2 and "--n" in err
    cfg.write_text(json.dumps({"wat": 1}))
    code, _, err = _run(["kernel", "--config", str(cfg)], capsys)
    assert code == 2 and "wat" in err


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("SUMMA_THREADS", "zero")
    code, _, err = _run(["kernel", "--n", "3", "--grid", "8"], capsys)
    assert code == 2 and "SUMMA_THREADS" in err
    monkeypatch.setenv("SUMMA_THREADS", "2")
    assert _run(["kernel", "--n", "3", "--grid", "8"], capsys)[0] == 0


def test_verify_identity_report(tmp_path, capsys):
    rep = tmp_path / "out.json"
    code, _, _ = _run(["verify", "--suite", "identity", "--report", str(rep), "--no-timing"], capsys)
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["pass"] is True and doc["suite_id"] == "identity"
    first = rep.read_bytes()
    _run(["verify", "--suite", "identity", "--report", str(rep), "--no-timing"], capsys)
    assert rep.read_bytes() == first


def test_means_maxop_norm(capsys):
    code, out, _ = _run(["means", "--d", "1", "--method", "fejer", "--n", "8", "--grid", "32",
                         "--function", "trig", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["sup_error"] == pytest.approx(3.25 / 8)
    code, out, _ = _run(["maxop", "--d", "2", "--grid", "16", "--variant", "strong"], capsys)
    assert code == 0 and len(out.splitlines()) == 2 + 256
    code, out, _ = _run(["norm", "--function", "constant", "--norm", "lp", "--p", "inf", "--grid", "16"], capsys)
    assert code == 0 and out.splitlines()[-1] == "lp,inf,1"
    code, out, _ = _run(["norm", "--norm", "wiener", "--theta", "fejer", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["value"] == pytest.approx(2.0)


@pytest.mark.parametrize("fig", sorted(FIGURES))
def test_figures(fig, tmp_path, capsys):
    csv = tmp_path / f"{fig}.csv"
    svg = tmp_path / f"{fig}.svg"
    assert main(["figure", "--id", fig, "--out", str(csv)]) == 0
    assert main(["figure", "--id", fig, "--format", "svg", "--out", str(svg)]) == 0
    text = svg.read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    rows = [l for l in csv.read_text().splitlines()[2:]]
    values = np.array([float(r.split(",")[-1]) for r in rows])
    assert np.all(np.isfinite(values))


def test_figure_values(tmp_path):
    out = tmp_path / "f.csv"
    main(["figure", "--id", "f14", "--out", str(out)])
    vals = [float(l.split(",")[1]) for l in out.read_text().splitlines()[2:]]
    assert max(vals) == pytest.approx(5.0)
    main(["figure", "--id", "f17", "--out", str(out)])
    vals = [float(l.split(",")[2]) for l in out.read_text().splitlines()[2:]]
    assert max(vals) == pytest.approx(81.0)
    main(["figure", "--id", "f26", "--out", str(out)])
    rows = [list(map(float, l.split(","))) for l in out.read_text().splitlines()[2:]]
    for t1, t2, v in rows[::97]:
        assert v == pytest.approx(math.exp(-(t1 * t1 + t2 * t2)), rel=1e-12)


def test_unknown_figure(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["figure", "--id", "f99"])
    assert exc.value.code == 2
