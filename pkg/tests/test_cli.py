from pathlib import Path

import pytest

from monce_eval.__main__ import main
from monce_eval.evaluation import EXIT_EVALUATION_ERROR, EXIT_INPUT_ERROR, EXIT_OK
from monce_eval.ingest import write_track_file
from monce_eval.typings import PlotKind

from builders import stream, track

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

PERFECT = "frame,uid,x,y,w,h\n" + "".join(
    f"{f},a,{f},0,10,10\n{f},b,100,{f},10,10\n" for f in range(20)
)


@pytest.fixture
def perfect(write_file):
    return write_file("gt.csv", PERFECT)


def test_perfect_tracker(perfect, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["evaluate", "--gt", str(perfect), "--pred", str(perfect), "--out", str(out)])
    assert code == EXIT_OK
    stdout = capsys.readouterr().out.splitlines()
    assert stdout[0] == "EAO 1.000"
    assert stdout[1] == "EAO_P 1.000"
    assert any(line.startswith("LONGEVITY@50% ") for line in stdout)
    assert any(line.startswith("REID_SHORT ") for line in stdout)
    assert (out / "report.json").is_file()
    assert (out / "dashboard.md").is_file()
    assert not (out / "dashboard.html").exists()
    for kind in PlotKind:
        assert (out / f"{kind.value}.svg").is_file()


def test_repeated_runs_are_byte_identical(perfect, tmp_path, capsys):
    for name in ("a", "b"):
        main(["evaluate", "--gt", str(perfect), "--pred", str(perfect), "--out", str(tmp_path / name)])
    capsys.readouterr()
    for name in ["report.json", "dashboard.md"] + [f"{k.value}.svg" for k in PlotKind]:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_synth_then_evaluate(tmp_path, capsys):
    gt, pred = tmp_path / "gt.csv", tmp_path / "pred.csv"
    code = main(
        [
            "synth",
            "--scenario",
            str(SCENARIOS / "uid_swap.env"),
            "--seed",
            "0",
            "--out-gt",
            str(gt),
            "--out-pred",
            str(pred),
        ]
    )
    assert code == EXIT_OK
    code = main(
        ["evaluate", "--gt", str(gt), "--pred", str(pred), "--out", str(tmp_path / "out"), "--html"]
    )
    assert code == EXIT_OK
    stdout = capsys.readouterr().out.splitlines()
    eao = float(stdout[0].split()[1])
    assert 0.98 <= eao <= 1.0
    assert "LONGEVITY@90% 20" in stdout
    assert (tmp_path / "out" / "dashboard.html").is_file()


def test_criterion_and_no_kde(perfect, tmp_path, capsys):
    code = main(
        [
            "evaluate",
            "--gt",
            str(perfect),
            "--pred",
            str(perfect),
            "--out",
            str(tmp_path),
            "--criterion",
            "original",
            "--no-kde",
        ]
    )
    assert code == EXIT_OK
    stdout = capsys.readouterr().out
    assert "EAO[" not in stdout
    report = (tmp_path / "report.json").read_text(encoding="utf-8")
    assert '"headline_criterion": "original"' in report
    assert '"use_kde_range": false' in report


def test_config_file(perfect, write_file, tmp_path, capsys):
    config = write_file("monce.env", "reid_threshold=5\ncriterion=any\n")
    code = main(
        ["evaluate", "--gt", str(perfect), "--pred", str(perfect), "--config", str(config), "--out", str(tmp_path)]
    )
    assert code == EXIT_OK
    assert '"reid_threshold": 5' in (tmp_path / "report.json").read_text(encoding="utf-8")
    capsys.readouterr()


def test_missing_prediction_file(perfect, tmp_path):
    missing = tmp_path / "nope.csv"
    code = main(["evaluate", "--gt", str(perfect), "--pred", str(missing), "--out", str(tmp_path / "o")])
    assert code == EXIT_INPUT_ERROR


def test_malformed_track_file(perfect, write_file, tmp_path):
    bad = write_file("bad.csv", "0,a,0,0,0,10\n")
    code = main(["evaluate", "--gt", str(perfect), "--pred", str(bad), "--out", str(tmp_path / "o")])
    assert code == EXIT_INPUT_ERROR


def test_undecodable_track_file(perfect, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_bytes(b"0,\xff\xfe,0,0,10,10\n")
    code = main(["evaluate", "--gt", str(perfect), "--pred", str(bad), "--out", str(tmp_path / "o")])
    assert code == EXIT_INPUT_ERROR


def test_invalid_config(perfect, write_file, tmp_path):
    config = write_file("bad.env", "iou_min=1.5\n")
    code = main(
        ["evaluate", "--gt", str(perfect), "--pred", str(perfect), "--config", str(config), "--out", str(tmp_path)]
    )
    assert code == EXIT_INPUT_ERROR


def test_empty_prediction_file(write_file, tmp_path):
    gt = write_file("gt.csv", "0,a,0,0,10,10\n1,a,0,0,10,10\n")
    pred = write_file("pred.csv", "# nothing predicted\n")
    code = main(["evaluate", "--gt", str(gt), "--pred", str(pred), "--out", str(tmp_path / "o")])
    assert code == EXIT_INPUT_ERROR


def test_plot_from_saved_report(perfect, tmp_path, capsys):
    main(["evaluate", "--gt", str(perfect), "--pred", str(perfect), "--out", str(tmp_path / "a")])
    capsys.readouterr()
    code = main(["plot", "--report", str(tmp_path / "a" / "report.json"), "--out", str(tmp_path / "b")])
    assert code == EXIT_OK
    for kind in PlotKind:
        svg = f"{kind.value}.svg"
        assert (tmp_path / "b" / svg).read_bytes() == (tmp_path / "a" / svg).read_bytes()


def test_plot_missing_report(tmp_path):
    assert main(["plot", "--report", str(tmp_path / "none.json"), "--out", str(tmp_path)]) == EXIT_INPUT_ERROR


def test_synth_bad_scenario(write_file, tmp_path):
    scenario = write_file("s.env", "video_length=10\nentity.a=x=1 y=1 w=0 h=2\n")
    code = main(
        ["synth", "--scenario", str(scenario), "--out-gt", str(tmp_path / "g"), "--out-pred", str(tmp_path / "p")]
    )
    assert code == EXIT_INPUT_ERROR


def test_undefined_precision_is_an_evaluation_error(tmp_path):
    # The only prediction is an orphan box too short to reach the EAO range.
    gt = tmp_path / "gt.csv"
    pred = tmp_path / "pred.csv"
    write_track_file(stream(track("a", range(2)), video_length=2), gt)
    write_track_file(stream([(1, "z", 500, 500, 10, 10)]), pred)
    code = main(["evaluate", "--gt", str(gt), "--pred", str(pred), "--out", str(tmp_path / "o")])
    assert code == EXIT_EVALUATION_ERROR


@pytest.mark.parametrize(
    "argv,expected",
    [
        ([], EXIT_INPUT_ERROR),
        (["evaluate", "--gt", "x.csv"], EXIT_INPUT_ERROR),
        (["evaluate", "--gt", "a", "--pred", "b", "--criterion", "all"], EXIT_INPUT_ERROR),
        (["--help"], EXIT_OK),
    ],
)
def test_argument_errors(argv, expected, capsys):
    assert main(argv) == expected
    capsys.readouterr()
