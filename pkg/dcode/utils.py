# Standard
from typing import Any, Dict, Optional
import copy
import json
import logging
import os

# Third Party
import yaml

log_level = getattr(logging, os.getenv("LOG_LEVEL", "info").upper())
logging.basicConfig(
    format="%(asctime)s,%(msecs)03d %(levelname)-8s [%(filename)s:%(lineno)d] %(message)s",
    datefmt="%Y-%m-%d:%H:%M:%S",
    level=log_level,
)
dcode_logger = logging.getLogger("dcode")

THREADS_ENV = "DCODE_THREADS"


def handle_arg_string(arg: str):
    """Turns a raw string (a CSV cell or a CLI value) into a bool, int, float or str"""
    arg = arg.strip()
    if arg.lower() == "true":
        return True
    elif arg.lower() == "false":
        return False
    elif arg.lstrip("-").isnumeric():
        return int(arg)
    try:
        return float(arg)
    except ValueError:
        return arg


def load_yaml_config(yaml_path: str, yaml_dir: Optional[str] = None) -> Dict:
    """Loads a YAML config, resolving an optional top-level `include` directive

    Included files are merged first so that keys of the including file win.
    """
    with open(yaml_path, "rb") as file:
        yaml_config = yaml.safe_load(file) or dict()

    if yaml_dir is None:
        yaml_dir = os.path.dirname(yaml_path)

    if "include" not in yaml_config:
        return yaml_config

    to_include = yaml_config.pop("include")
    if isinstance(to_include, str):
        to_include = [to_include]
    if not isinstance(to_include, list):
        raise ValueError(f"Unhandled input format in 'include' directive: {to_include}")

    included = []
    for path in to_include:
        if not os.path.isfile(path):
            path = os.path.join(yaml_dir, path)
        if not os.path.isfile(path):
            raise ValueError(f"Should not include non-file paths in include directive: {path}")
        included.append(load_yaml_config(path))

    return merge_dictionaries(*included, yaml_config) if included else yaml_config


def merge_dictionaries(*args: Dict) -> Dict:
    def _update(d, u):
        for k, v in u.items():
            if k in d and isinstance(d[k], dict) and isinstance(v, dict):
                d[k] = _update(d[k], v)
            else:
                d[k] = v
        return d

    merged_dict = copy.deepcopy(args[0])
    for new_dict in args[1:]:
        _update(merged_dict, new_dict)
    return merged_dict


def resolve_threads(threads: Optional[int] = None) -> int:
    """Thread count from an explicit value, then $DCODE_THREADS, then the core count"""
    if threads is None:
        env_value = os.getenv(THREADS_ENV)
        if env_value:
            try:
                threads = int(env_value)
            except ValueError:
                raise ValueError(f"{THREADS_ENV} must be an integer, got '{env_value}'")
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"Thread count must be at least 1, got {threads}")
    return threads


def dump_json(obj: Any, path: str) -> None:
    """Writes JSON with sorted keys so identical inputs give byte-identical files"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")
