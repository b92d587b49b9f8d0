import yaml
from typing import Any, Dict, Optional
import copy
import os
import logging
from types import SimpleNamespace

logger = logging.getLogger(__name__)

ENV_OUT_DIR = "LOWDEGREE_OUT_DIR"
ENV_THREADS = "LOWDEGREE_THREADS"


def _to_namespace(data: Any) -> Any:
    """Recursively turn mappings into attribute-access namespaces."""
    if isinstance(data, dict):
        return SimpleNamespace(**{key: _to_namespace(value) for key, value in data.items()})
    return data


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    def __init__(self, config_file: Optional[str] = None):
        # Default location is config.yaml next to this module
        config_dir = os.path.dirname(os.path.abspath(__file__))
        self._config_file = config_file or os.path.join(config_dir, 'config.yaml')
        self._config_dict = self._load_config()
        self._apply(self._config_dict)

    def _load_config(self) -> Dict[str, Any]:
        defaults = self._get_default_config()
        try:
            if os.path.exists(self._config_file):
                with open(self._config_file, 'r') as f:
                    config_data = yaml.safe_load(f)
                if config_data is None:
                    logger.warning(f"Configuration file '{self._config_file}' is empty. Using defaults.")
                    return defaults
                # Sections missing from the file fall back to the defaults
                return _merge(defaults, config_data)
            logger.warning(f"Configuration file '{self._config_file}' not found. Creating default.")
            self._create_default_config()
            return defaults
        except Exception as e:
            logger.error(f"Error loading configuration file '{self._config_file}': {e}. Using defaults.")
            return defaults

    def _apply(self, config_data: Dict[str, Any]) -> None:
        config_data = self._apply_environment(config_data)
        self._config_dict = config_data
        for section_name, section_data in config_data.items():
            setattr(self, section_name, _to_namespace(section_data))

    def _apply_environment(self, config_data: Dict[str, Any]) -> Dict[str, Any]:
        config_data = copy.deepcopy(config_data)
        out_dir = os.environ.get(ENV_OUT_DIR)
        if out_dir:
            config_data['output']['directory'] = out_dir
        threads = os.environ.get(ENV_THREADS)
        if threads:
            try:
                config_data['harness']['threads'] = max(1, int(threads))
            except ValueError:
                logger.warning(f"Ignoring non-integer {ENV_THREADS}={threads!r}")
        return config_data

    def load(self, path: str) -> None:
        """Replace the active values with those of another YAML file."""
        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Configuration file '{path}' must contain a mapping")
        self._config_file = path
        self._apply(_merge(self._get_default_config(), data))
        logger.info(f"Loaded configuration from {path}")

    def reset(self) -> None:
        """Return to the packaged configuration file."""
        config_dir = os.path.dirname(os.path.abspath(__file__))
        self._config_file = os.path.join(config_dir, 'config.yaml')
        self._apply(self._load_config())

    def as_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self._config_dict)

    def _get_default_config(self) -> Dict[str, Any]:
        """Returns the default configuration dictionary."""
        return {
            'output': {
                'directory': 'output_data',
                'save_timestamp': True,
                'timestamp_format': "%Y%m%d_%H%M%S"
            },
            'numerics': {
                'zero_tol': 1e-12,
                'dense_cap_qubits': 6,
                'superop_dense_cap_qubits': 5,
                'channel_tol': 1e-9,
                'boolean_table_cap_bits': 22
            },
            'simulation': {
                'cross_check_cap_qubits': 2,
                'max_sampled_outcomes': 20000000,
                'keep_sample_log': True
            },
            'learners': {
                'bh_constant': 2.0,
                'threshold_rule': 'proof',
                'channel': {
                    'phase1_scale': 2.0e-11,
                    'phase2_scale': 1.0e-23,
                    'min_phase1_shots': 1000,
                    'min_pair_shots': 3000
                },
                'unitary': {
                    'phase1_scale': 5.0e-15,
                    'phase2_scale': 3.0e-15,
                    'min_phase1_shots': 1000,
                    'min_part_shots': 2000
                },
                'pauli_channel': {
                    'probe_scale': 1.0,
                    'entangled_scale': 1.0,
                    'enumeration_cap': 100000
                },
                'boolean': {
                    'sample_scale': 1.0
                },
                'bounded_poly': {
                    'phase1_scale': 6.0e-4,
                    'phase2_scale': 2.0e-5,
                    'min_phase1_shots': 500,
                    'min_phase2_examples': 5000
                },
                'tensor': {
                    'sample_scale': 1.0,
                    'bh_constant': 1.0,
                    'threshold': None
                }
            },
            'bh_lab': {
                'sup_norm_cap_log2': 22,
                'rank_one_start_trials': 1024,
                'rank_one_max_trials': 131072,
                'rank_one_rel_tol': 1e-4,
                'rank_one_batch': 4096,
                'varopoulos_dim_cap': 4096,
                'f_phi_cap_qubits': 2,
                'witness_digits': 30
            },
            'qqa': {
                'enumeration_cap_log2': 18
            },
            'harness': {
                'threads': 1,
                'record_prefix': 'rep'
            },
            'logging': {
                'level': 'INFO',
                'format': '%(asctime)s - %(levelname)s - %(message)s'
            }
        }

    def _create_default_config(self):
        """Creates a default config.yaml file if it doesn't exist."""
        try:
            if not os.path.exists(self._config_file):
                logger.info(f"Creating default configuration file: {self._config_file}")
                with open(self._config_file, 'w') as f:
                    yaml.dump(self._get_default_config(), f, default_flow_style=False, sort_keys=False)
        except Exception as e:
            logger.error(f"Error creating default config file '{self._config_file}': {e}")

# Create and export a singleton instance
config = Config()
