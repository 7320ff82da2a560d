#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Configuration manager for qisosrg.
Handles reading and writing the user's default settings.
"""

import os
import stat
import json
import logging
import tempfile

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = os.path.expanduser("~/.config/qisosrg")


class ConfigManager:
    """Manages default settings for builds, searches and certificates."""

    DEFAULTS = {
        "output_dir": "qiso-out",
        "graph_format": "graph6",  # graph6 or dimacs
        "iso_budget": 20000,  # search nodes for the isomorphism search
        "alpha_budget": 2000000,  # branch-and-bound nodes for independence witnesses
        "hom_nmax": 5,
        "seed": 0,
        "threads": 1,
        "debug_mode": False,
        "certificate_format": "json",  # json or yaml
    }

    def __init__(self, config_dir=None):
        """Initialize the configuration manager.

        Args:
            config_dir (str, optional): Directory holding config.json;
                defaults to ~/.config/qisosrg
        """
        self.config_dir = config_dir or DEFAULT_CONFIG_DIR
        self.config_file = os.path.join(self.config_dir, "config.json")
        self._config = dict(self.DEFAULTS)
        self._ensure_config_dir_exists()
        self._load_config()

    @property
    def log_dir(self):
        return os.path.join(self.config_dir, "logs")

    def _ensure_config_dir_exists(self):
        """Create configuration directory if it doesn't exist, with restrictive permissions."""
        try:
            os.makedirs(self.config_dir, exist_ok=True)
            os.chmod(self.config_dir, stat.S_IRWXU)  # 0700
        except OSError as e:
            logger.error(f"Failed to create/secure config directory: {e}")

    def _load_config(self):
        """Load configuration from file, keeping defaults for missing keys."""
        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, 'r') as f:
                    stored_config = json.load(f)
                unknown = set(stored_config) - set(self.DEFAULTS)
                if unknown:
                    logger.warning(f"Ignoring unknown config keys: {sorted(unknown)}")
                self._config.update({k: v for k, v in stored_config.items() if k in self.DEFAULTS})
                logger.info("Configuration loaded successfully")
            except (json.JSONDecodeError, IOError) as e:
                logger.error(f"Failed to load config: {e}")
        else:
            logger.debug("No configuration file found, using defaults")

    def save_config(self):
        """Save current configuration to file with atomic write and restrictive permissions."""
        try:
            fd, tmp_path = tempfile.mkstemp(dir=self.config_dir, suffix=".tmp")
            try:
                with os.fdopen(fd, 'w') as f:
                    json.dump(self._config, f, indent=2, sort_keys=True)
                os.replace(tmp_path, self.config_file)
            except BaseException:
                try:
                    os.unlink(tmp_path)
                except OSError:
                    pass
                raise
            os.chmod(self.config_file, stat.S_IRUSR | stat.S_IWUSR)  # 0600
            logger.info("Configuration saved successfully")
            return True
        except IOError as e:
            logger.error(f"Failed to save config: {e}")
            return False

    def get_output_dir(self):
        return self._config["output_dir"]

    def set_output_dir(self, path):
        self._config["output_dir"] = path

    def get_graph_format(self):
        """Get the graph file format, 'graph6' or 'dimacs'."""
        fmt = self._config.get("graph_format", "graph6")
        if fmt not in ("graph6", "dimacs"):
            logger.warning(f"Unknown graph format {fmt!r}, using graph6")
            return "graph6"
        return fmt

    def set_graph_format(self, fmt):
        if fmt not in ("graph6", "dimacs"):
            raise ValueError(f"Unsupported graph format: {fmt}")
        self._config["graph_format"] = fmt

    def get_iso_budget(self):
        return int(self._config["iso_budget"])

    def set_iso_budget(self, nodes):
        self._config["iso_budget"] = int(nodes)

    def get_alpha_budget(self):
        return int(self._config["alpha_budget"])

    def set_alpha_budget(self, nodes):
        self._config["alpha_budget"] = int(nodes)

    def get_hom_nmax(self):
        return int(self._config["hom_nmax"])

    def set_hom_nmax(self, n_max):
        self._config["hom_nmax"] = int(n_max)

    def get_seed(self):
        return int(self._config["seed"])

    def set_seed(self, seed):
        self._config["seed"] = int(seed)

    def get_threads(self):
        """Get the worker thread count; QISO_THREADS overrides the stored value."""
        env = os.environ.get("QISO_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                logger.warning(f"Ignoring non-integer QISO_THREADS={env!r}")
        return max(1, int(self._config["threads"]))

    def set_threads(self, threads):
        self._config["threads"] = max(1, int(threads))

    def get_debug_mode(self):
        return bool(self._config["debug_mode"])

    def set_debug_mode(self, enabled):
        self._config["debug_mode"] = bool(enabled)

    def get_certificate_format(self):
        return self._config.get("certificate_format", "json")

    def set_certificate_format(self, fmt):
        if fmt not in ("json", "yaml"):
            raise ValueError(f"Unsupported certificate format: {fmt}")
        self._config["certificate_format"] = fmt

    def get_setting(self, key, default=None):
        """Get a configuration setting by key.

        Args:
            key (str): Configuration key
            default: Default value if key doesn't exist

        Returns:
            The configuration value or default
        """
        return self._config.get(key, default)

    def set_setting(self, key, value):
        """Set a configuration setting by key.

        Args:
            key (str): Configuration key
            value: Value to set
        """
        if key not in self.DEFAULTS:
            raise KeyError(f"Unknown configuration key: {key}")
        self._config[key] = value
