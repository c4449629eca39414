# utils/config_loader.py
import copy
import os
from functools import lru_cache
from typing import Any, Dict, Optional

import yaml

from utils.errors import ParameterError

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config')
DEFAULT_PROFILE = 'desk'

# environment variable -> (section, key, cast)
ENV_OVERRIDES = {
    'LAB_SWEEP_WORKERS': ('sweep', 'workers', int),
    'LAB_ORACLE_MAX_VERTICES': ('budgets', 'oracle_max_vertices', int),
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_yaml(path: str) -> Dict[str, Any]:
    with open(path, 'r') as file:
        return yaml.safe_load(file) or {}


@lru_cache(maxsize=None)
def _load_files(profile: str) -> Dict[str, Any]:
    common = _read_yaml(os.path.join(CONFIG_DIR, 'common_config.yaml'))
    profile_path = os.path.join(CONFIG_DIR, 'profiles', f'{profile}.yaml')
    if not os.path.exists(profile_path):
        raise ParameterError(f"Unknown profile '{profile}': no file {profile_path}")
    return _merge(common, _read_yaml(profile_path))


def load_config(profile: Optional[str] = None) -> Dict[str, Any]:
    """Load common settings merged with a profile, then apply LAB_* environment overrides.

    The profile defaults to LAB_PROFILE, then to 'desk'.
    """
    profile = profile or os.environ.get('LAB_PROFILE', DEFAULT_PROFILE)
    config = copy.deepcopy(_load_files(profile))
    config['profile'] = profile

    for env_var, (section, key, cast) in ENV_OVERRIDES.items():
        raw = os.environ.get(env_var)
        if raw is None:
            continue
        try:
            value = cast(raw)
        except ValueError:
            raise ParameterError(f"{env_var} must be an integer, got '{raw}'")
        config[section] = {**config.get(section, {}), key: value}

    return config


def budget(name: str, config: Optional[Dict[str, Any]] = None) -> int:
    """Look up one entry of the budgets section"""
    config = config if config is not None else load_config()
    try:
        return int(config['budgets'][name])
    except KeyError:
        raise KeyError(f"Budget '{name}' not found in configuration")
