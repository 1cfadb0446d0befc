"""
Run-time configuration

Settings are addressed with dotted keys, e.g. ``config.get("jetvar.probe_points")``.
Defaults live in ``config_definition``; a JSON file named by the
``JETVAR_CONFIG`` environment variable may override them, and the command
line overrides both for a single run.
"""
import json
import os
from pathlib import Path

from jetvar.lib.user_input import UserInput

config_definition = {
    "jetvar.max_order": {
        "type": UserInput.OPTION_TEXT,
        "default": 0,
        "coerce_type": int,
        "min": 0,
        "help": "Maximal jet order",
        "tooltip": "0 means: use the order the model declares",
    },
    "jetvar.probe_points": {
        "type": UserInput.OPTION_TEXT,
        "default": 20,
        "coerce_type": int,
        "min": 1,
        "help": "Random probe points for equality checks",
        "tooltip": "Used when canonical forms differ and derived symbols (√g, lowered metric) are involved",
    },
    "jetvar.superpotential_probe_points": {
        "type": UserInput.OPTION_TEXT,
        "default": 50,
        "coerce_type": int,
        "min": 1,
        "help": "Probe points for the superpotential re-verification",
    },
    "jetvar.metric_probe_points": {
        "type": UserInput.OPTION_TEXT,
        "default": 100,
        "coerce_type": int,
        "min": 1,
        "help": "Probe points for metric-bearing model identities",
    },
    "jetvar.seed": {
        "type": UserInput.OPTION_TEXT,
        "default": 0,
        "coerce_type": int,
        "help": "Seed for probe point generation",
    },
    "jetvar.log_level": {
        "type": UserInput.OPTION_CHOICE,
        "default": "WARNING",
        "options": {level: level for level in ("DEBUG", "INFO", "WARNING", "ERROR")},
        "help": "Log level",
    },
    "jetvar.log_file": {
        "type": UserInput.OPTION_TEXT,
        "default": "",
        "help": "Log file",
        "tooltip": "Leave empty to log to stderr only",
    },
    "jetvar.default_format": {
        "type": UserInput.OPTION_CHOICE,
        "default": "text",
        "options": {"text": "Plain text", "latex": "Standalone LaTeX", "json": "JSON (jetvar-report/1)"},
        "help": "Report format",
    },
}


class ConfigManager:
    """
    Dotted-key settings with defaults, file overrides and run-time overrides
    """
    def __init__(self, definition):
        self.definition = definition
        self.overrides = {}
        self.loaded = False

    def load_file(self, path=None):
        """
        Load overrides from a JSON file

        :param path:  File to read; defaults to $JETVAR_CONFIG if set
        """
        path = path or os.environ.get("JETVAR_CONFIG")
        self.loaded = True
        if not path:
            return
        with Path(path).open(encoding="utf-8") as infile:
            values = json.load(infile)
        for key, value in values.items():
            self.set(key, value)

    def get(self, key, default=None):
        """
        Get a setting

        :param str key:  Dotted key
        :param default:  Returned if the key is neither overridden nor declared
        """
        if not self.loaded:
            self.load_file()
        if key in self.overrides:
            return self.overrides[key]
        if key in self.definition:
            return self.definition[key]["default"]
        return default

    def set(self, key, value):
        """
        Override a setting; declared settings are parsed against their definition
        """
        if key in self.definition:
            value = UserInput.parse_value(self.definition[key], value, silently_correct=False)
        self.overrides[key] = value

    def reset(self):
        self.overrides = {}


config = ConfigManager(config_definition)
