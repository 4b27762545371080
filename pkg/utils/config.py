"""
Configuration loading
"""

import os
from pathlib import Path
from typing import Dict, Optional

import yaml

DEFAULT_CONFIG_PATH = 'config.yaml'


def load_config(path: Optional[str] = None) -> Dict:
    """
    Load configuration from config.yaml and apply environment overrides.

    A missing file yields an empty configuration; every component has
    in-code defaults for each key it reads.

    Args:
        path: Path to the YAML file

    Returns:
        Configuration dictionary
    """
    config_file = Path(path or DEFAULT_CONFIG_PATH)
    config: Dict = {}
    if config_file.exists():
        with open(config_file, 'r') as f:
            config = yaml.safe_load(f) or {}
        if not isinstance(config, dict):
            raise ValueError(f"{config_file} must contain a mapping at top level")
    elif path is not None:
        raise ValueError(f"Config file not found: {config_file}")

    jobs = os.getenv('S4CENSUS_JOBS')
    if jobs:
        config.setdefault('census', {})['jobs'] = int(jobs)

    cache_dir = os.getenv('S4CENSUS_CACHE_DIR')
    if cache_dir:
        config.setdefault('cache', {})['directory'] = cache_dir

    return config


def section(config: Optional[Dict], name: str) -> Dict:
    """Return a config section, tolerating a missing or empty config."""
    if not config:
        return {}
    return config.get(name) or {}
