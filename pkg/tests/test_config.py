import pytest

from monce_eval.configuration import (
    ConfigKey,
    EvalConfig,
    KeyValueFile,
    config_from_values,
    read_config_values,
)
from monce_eval.configuration.base_config import DEFAULTS_PATH
from monce_eval.exceptions import InputError
from monce_eval.typings import BandwidthRule, CurveAveraging, UidCriterion


def test_defaults():
    cfg = EvalConfig()
    assert cfg.iou_min == 0.0
    assert cfg.reid_threshold == 30
    assert cfg.kde_density_fraction == 0.5
    assert cfg.localization_grid_step == 0.05
    assert cfg.use_kde_range
    assert cfg.longevity_percentages == (0.5, 0.75, 0.9)
    assert cfg.criteria == (UidCriterion.ANY_UID, UidCriterion.ORIGINAL_UID)
    assert cfg.headline_criterion is UidCriterion.ANY_UID


def test_shipped_defaults_match():
    assert config_from_values(read_config_values(None)) == EvalConfig()


def test_every_key_has_a_default_line():
    with open(DEFAULTS_PATH, encoding="utf-8") as handle:
        lines = [line for line in handle if "=" in line and not line.startswith("#")]
    assert {line.split("=")[0] for line in lines} == {key.value for key in ConfigKey}


def test_string_values():
    cfg = config_from_values(
        {
            "iou_min": "0.25",
            "reid_threshold": "12",
            "kde_bandwidth_rule": "fixed(3.5)",
            "use_kde_range": "false",
            "video_length": "400",
            "longevity_percentages": "0.9, 0.5",
            "curve_averaging": "pooled",
            "criterion": "original",
            "log_level": "debug",
        }
    )
    assert cfg.iou_min == 0.25
    assert cfg.reid_threshold == 12
    assert cfg.kde_bandwidth_rule is BandwidthRule.FIXED
    assert cfg.kde_bandwidth == 3.5
    assert not cfg.use_kde_range
    assert cfg.video_length == 400
    assert cfg.longevity_percentages == (0.5, 0.9)
    assert cfg.curve_averaging is CurveAveraging.POOLED
    assert cfg.criteria == (UidCriterion.ORIGINAL_UID,)
    assert cfg.headline_criterion is UidCriterion.ORIGINAL_UID
    assert cfg.log_level == "DEBUG"


def test_fixed_bandwidth_colon_form():
    assert config_from_values({"kde_bandwidth_rule": "fixed:2"}).kde_bandwidth == 2.0


@pytest.mark.parametrize(
    "key,value",
    [
        ("iou_min", "1.5"),
        ("iou_min", "-0.1"),
        ("reid_threshold", "0"),
        ("reid_threshold", "2.5"),
        ("kde_density_fraction", "0"),
        ("kde_bandwidth_rule", "scott"),
        ("kde_bandwidth_rule", "fixed(-1)"),
        ("localization_grid_step", "0"),
        ("use_kde_range", "maybe"),
        ("video_length", "0"),
        ("longevity_percentages", "0.5,1.5"),
        ("curve_averaging", "median"),
        ("criterion", "every"),
        ("log_level", "LOUD"),
        ("iou_min", "nan"),
    ],
)
def test_invalid_values_name_the_key(key, value):
    with pytest.raises(InputError, match=key):
        config_from_values({key: value})


def test_unknown_key():
    with pytest.raises(InputError, match="unknown key"):
        config_from_values({"iou": "0.1"})


def test_dict_round_trip():
    cfg = config_from_values({"kde_bandwidth_rule": "fixed(4)", "criterion": "any", "video_length": "90"})
    assert EvalConfig.from_dict(cfg.to_dict()) == cfg
    assert EvalConfig.from_dict(EvalConfig().to_dict()) == EvalConfig()


@pytest.mark.parametrize(
    "step,expected",
    [
        (0.25, (0.0, 0.25, 0.5, 0.75, 1.0)),
        (0.3, (0.0, 0.3, 0.6, 0.9, 1.0)),
        (1.0, (0.0, 1.0)),
    ],
)
def test_localization_thresholds(step, expected):
    assert EvalConfig(localization_grid_step=step).localization_thresholds() == expected


def test_key_value_file_prefixes(write_file):
    path = write_file("s.env", "video_length=10\nentity.a=x=1\nempty=\n")
    values = KeyValueFile(path, ("video_length", "entity.", "empty")).store()
    assert values == {"video_length": "10", "entity.a": "x=1"}
    with pytest.raises(InputError, match="entity"):
        KeyValueFile(write_file("t.env", "entity.=1\n"), ("entity.",)).store()


def test_key_value_file_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        KeyValueFile(tmp_path / "missing.env").store()


def test_undecodable_file(tmp_path):
    path = tmp_path / "c.env"
    path.write_bytes(b"iou_min=0.\xff\n")
    with pytest.raises(InputError, match="not valid UTF-8") as excinfo:
        KeyValueFile(path, [k.value for k in ConfigKey]).store()
    assert excinfo.value.path == str(path)
