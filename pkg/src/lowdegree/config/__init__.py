from .config_manager import Config, config

__all__ = ["Config", "config"]
