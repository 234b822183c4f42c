import json

import pytest

from libxostar import env
from libxostar.core import cfg as cfg_mod


def test_defaults():
    cfg = cfg_mod.ClassifierCfg()
    assert cfg["sieve.q_max_index"] == 15
    assert cfg["petri.margin"] == 8
    assert cfg.run.format == "tsv"
    assert cfg.data.newform_db is None


def test_installed_tables_take_precedence(tmp_path, monkeypatch):
    monkeypatch.setattr(env, "DIR_DATAROOT", str(tmp_path))
    cfg = cfg_mod.ClassifierCfg()
    assert cfg.newform_path() == str(tmp_path / "sample" / "newforms.nfd")
    (tmp_path / "newforms.nfd").write_text("")
    assert cfg.newform_path() == str(tmp_path / "newforms.nfd")
    assert cfg.curve_path() == str(tmp_path / "sample" / "curves.ecd")
    cfg["data.curve_db"] = str(tmp_path / "other.ecd")
    assert cfg.curve_path() == str(tmp_path / "other.ecd")


def test_json_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "range": {"n_min": 100, "n_max": 200},
        "sieve": {"exhaustive": True},
    }))
    cfg = cfg_mod.load_classifier_cfg(str(path), use_user_config=False)
    assert (cfg.range.n_min, cfg.range.n_max) == (100, 200)
    assert cfg.sieve.exhaustive is True
    assert cfg.sieve.q_max_index == 15


def test_ini_file(tmp_path):
    path = tmp_path / "cfg.ini"
    path.write_text("[petri]\nmargin = 12\n\n[run]\nformat = structured\n")
    cfg = cfg_mod.load_classifier_cfg(str(path), use_user_config=False)
    assert cfg.petri.margin == 12
    assert cfg.run.format == "structured"


def test_save_and_reload(tmp_path):
    cfg = cfg_mod.ClassifierCfg()
    cfg["range.n_max"] = 500
    path = str(tmp_path / "cfg.json")
    cfg.save_cfg(path)
    again = cfg_mod.load_classifier_cfg(path, use_user_config=False)
    assert again.range.n_max == 500


def test_unknown_key(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"sieve": {"q_prime": [2]}}))
    with pytest.raises(ValueError):
        cfg_mod.load_classifier_cfg(str(path), use_user_config=False)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        cfg_mod.load_classifier_cfg(str(tmp_path / "none.json"),
                                    use_user_config=False)


def test_environment_overrides_paths(tmp_path, monkeypatch):
    monkeypatch.setenv(env.ENV_NEWFORM_DB, str(tmp_path / "nf.nfd"))
    cfg = cfg_mod.load_classifier_cfg(use_user_config=False)
    assert cfg.newform_path() == str(tmp_path / "nf.nfd")
    assert cfg.curve_path().endswith("curves.ecd")
