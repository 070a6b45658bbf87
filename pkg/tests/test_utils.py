# Standard
import json
import os

# Third Party
import pytest

# Local
from dcode.utils import (
    dump_json,
    handle_arg_string,
    load_yaml_config,
    merge_dictionaries,
    resolve_threads,
)


class TestHandleArgString:
    @pytest.mark.parametrize(
        "raw,value",
        [("true", True), ("False", False), ("3", 3), ("-4", -4), ("2.5", 2.5), (" north ", "north")],
    )
    def test_conversions(self, raw, value):
        assert handle_arg_string(raw) == value
        assert type(handle_arg_string(raw)) is type(value)


class TestLoadYamlConfig:
    def test_include_is_overridden_by_includer(self, tmp_path):
        with open(tmp_path / "base.yaml", "w", encoding="utf-8") as f:
            f.write("dgd:\n  base_step: 0.1\n  boost: 3.0\nes:\n  sigma: 0.3\n")
        with open(tmp_path / "run.yaml", "w", encoding="utf-8") as f:
            f.write("include: base.yaml\ndgd:\n  boost: 2.0\n")
        cfg = load_yaml_config(str(tmp_path / "run.yaml"))
        assert cfg == {"dgd": {"base_step": 0.1, "boost": 2.0}, "es": {"sigma": 0.3}}

    def test_missing_include(self, tmp_path):
        with open(tmp_path / "run.yaml", "w", encoding="utf-8") as f:
            f.write("include: [nowhere.yaml]\n")
        with pytest.raises(ValueError, match="nowhere.yaml"):
            load_yaml_config(str(tmp_path / "run.yaml"))

    def test_empty_file(self, tmp_path):
        (tmp_path / "empty.yaml").write_text("")
        assert load_yaml_config(str(tmp_path / "empty.yaml")) == {}


class TestMergeDictionaries:
    def test_nested_merge_leaves_inputs(self):
        first = {"a": {"b": 1, "c": 2}}
        merged = merge_dictionaries(first, {"a": {"c": 3}}, {"d": 4})
        assert merged == {"a": {"b": 1, "c": 3}, "d": 4}
        assert first == {"a": {"b": 1, "c": 2}}


class TestResolveThreads:
    def test_explicit_wins(self, monkeypatch):
        monkeypatch.setenv("DCODE_THREADS", "8")
        assert resolve_threads(2) == 2

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("DCODE_THREADS", "3")
        assert resolve_threads() == 3

    def test_invalid(self, monkeypatch):
        monkeypatch.setenv("DCODE_THREADS", "many")
        with pytest.raises(ValueError, match="DCODE_THREADS"):
            resolve_threads()
        with pytest.raises(ValueError):
            resolve_threads(0)


def test_dump_json_is_stable(tmp_path):
    path = os.path.join(tmp_path, "out", "a.json")
    dump_json({"b": 1, "a": [1, 2]}, path)
    with open(path, "rb") as f:
        first = f.read()
    dump_json({"a": [1, 2], "b": 1}, path)
    with open(path, "rb") as f:
        assert f.read() == first
    assert json.loads(first) == {"a": [1, 2], "b": 1}
