import logging
import os
from enum import Enum
from typing import Dict, Type

import yaml

from dedekind_pcoef.collections import ComputationMethod, ReportFormat
from dedekind_pcoef.lattice import config as lattice_config
from dedekind_pcoef.lattice.intervals import DEFAULT_INTERVAL_COUNTER, IntervalCounter
from dedekind_pcoef.utils import not_empty_string

CONFIG_SECTION_NAME = "dedekind_pcoef"
CONFIG_ENV_PREFIX = "DEDEKIND_PCOEF_"
CONFIG_FILE_ENV_NAME = "DEDEKIND_PCOEF_CONFIG"

_config_file_cache: Dict[str, dict] = {}


def load_config_file(path: str = None, collection: str = CONFIG_SECTION_NAME) -> dict:
    """Loads a section of a yaml configuration file. Missing files and sections are empty.

    Args:
        path (str, optional): The file path. Defaults to the value of DEDEKIND_PCOEF_CONFIG.
        collection (str, optional): The section name. Defaults to CONFIG_SECTION_NAME.

    Returns:
        dict: The section values.
    """
    path = path or os.environ.get(CONFIG_FILE_ENV_NAME, None)
    if not not_empty_string(path):
        return {}
    if path not in _config_file_cache:
        try:
            with open(path, "r") as raw:
                _config_file_cache[path] = yaml.safe_load(raw) or {}
        except (OSError, yaml.YAMLError) as ex:
            logging.warning(f"Could not read the configuration file {path}: {ex}")
            _config_file_cache[path] = {}
    section = _config_file_cache[path].get(collection, None)
    return section if isinstance(section, dict) else {}


def get(
    key: str,
    default=None,
    otype: Type = None,
    collection=None,
    allow_empty: bool = False,
):
    """Reads a configuration value, from the environment (DEDEKIND_PCOEF_<KEY>), then
    the configuration file section, then the default.
    """
    otype = otype or (str if default is None else default.__class__)
    collection = collection or CONFIG_SECTION_NAME
    val = os.environ.get(f"{CONFIG_ENV_PREFIX}{key.upper()}", None)
    if val is None:
        val = load_config_file(collection=collection).get(key, None)
        val = None if val is None else str(val)

    if issubclass(otype, Enum):
        allow_empty = False

    if val is None or (not allow_empty and len(val.strip()) == 0):
        assert default is not None, f"Configuration {collection}.{key} not found, and no default value"
        return default

    if otype == bool:
        return val.strip().lower() == "true"

    elif issubclass(otype, Enum):
        return otype(val.strip())
    else:
        return otype(val.strip())


# ------------------------------
# Config values

# Capability caps (largest base set size per method)
DEFAULT_MAX_N: Dict[ComputationMethod, int] = {
    ComputationMethod.BruteForce: get("max_n_bruteforce", 6),
    ComputationMethod.NPlus2: get("max_n_nplus2", 5),
    ComputationMethod.NPlus3: get("max_n_nplus3", 3),
    ComputationMethod.NPlus4: get("max_n_nplus4", 2),
    ComputationMethod.Wiedemann: get("max_n_wiedemann", 4),
}
DEFAULT_MAX_N_CLASSES: int = get("max_n_classes", 6)
DEFAULT_MAX_N_ORACLE: int = get("max_n_oracle", 4)

# Runner
DEFAULT_WORKERS: int = get("workers", 1)
DEFAULT_SHARD_COUNT: int = get("shard_count", 64)
SHOW_RUN_ID_IN_LOGS: bool = get("show_run_id", False)

# Output
DEFAULT_REPORT_FORMAT: ReportFormat = get("report_format", ReportFormat.Yaml)

# Oracle
DEFAULT_ORACLE_SEARCH_LIMIT: int = get("oracle_search_limit", lattice_config.DEFAULT_ORACLE_SEARCH_LIMIT)
DEFAULT_ORACLE_SAMPLE_SEED: int = get("oracle_sample_seed", 0)

# Interval cache
IntervalCounter.max_cache_size = get("interval_cache_size", lattice_config.DEFAULT_INTERVAL_CACHE_SIZE)
DEFAULT_INTERVAL_COUNTER.max_cache_size = IntervalCounter.max_cache_size
