"""
Option definitions and value parsing for model and command options
"""
from fractions import Fraction

import sympy


class RequirementsNotMetException(Exception):
    """
    Raised when an option's value is missing and it has no default
    """
    pass


class UserInput:
    """
    Option types, and parsing of raw option values against an option definition

    An option definition is a dictionary with a ``type`` and optionally
    ``default``, ``help``, ``tooltip``, ``options`` (for choices),
    ``coerce_type``, ``min`` and ``max``.
    """
    OPTION_TOGGLE = "toggle"  # boolean
    OPTION_CHOICE = "choice"  # one of ``options``
    OPTION_TEXT = "string"  # free text, optionally coerced
    OPTION_RATIONAL = "rational"  # exact rational number, e.g. 1/2
    OPTION_INFO = "info"  # help text only, carries no value

    @staticmethod
    def parse_all(options, values, silently_correct=True):
        """
        Parse a dictionary of raw values against option definitions

        :param dict options:  Option definitions
        :param dict values:  Raw values, e.g. from a model file
        :param bool silently_correct:  Replace invalid values with defaults
        rather than raising
        :return dict:  Parsed values, one per non-info option
        """
        parsed = {}
        for option, settings in options.items():
            if settings.get("type") == UserInput.OPTION_INFO:
                continue
            parsed[option] = UserInput.parse_value(settings, values.get(option), silently_correct)
        return parsed

    @staticmethod
    def parse_value(settings, choice, silently_correct=True):
        """
        Parse a single raw value

        :param dict settings:  Option definition
        :param choice:  Raw value, or None if not given
        :param bool silently_correct:  Fall back to the default on invalid input
        :return:  Parsed value
        """
        input_type = settings.get("type", UserInput.OPTION_TEXT)

        if choice is None or choice == "":
            if "default" not in settings:
                raise RequirementsNotMetException(f"Option '{settings.get('help', input_type)}' is required")
            return settings["default"]

        try:
            if input_type == UserInput.OPTION_TOGGLE:
                if isinstance(choice, bool):
                    return choice
                if str(choice).lower() in ("true", "yes", "on", "1"):
                    return True
                if str(choice).lower() in ("false", "no", "off", "0"):
                    return False
                raise ValueError(f"'{choice}' is not a boolean")

            elif input_type == UserInput.OPTION_CHOICE:
                if str(choice) not in settings.get("options", {}):
                    raise ValueError(f"'{choice}' is not one of {', '.join(settings.get('options', {}))}")
                return str(choice)

            elif input_type == UserInput.OPTION_RATIONAL:
                value = sympy.Rational(Fraction(str(choice)))
                return UserInput._clamp(settings, value)

            else:
                value = settings["coerce_type"](choice) if "coerce_type" in settings else choice
                return UserInput._clamp(settings, value)

        except (ValueError, TypeError, ZeroDivisionError):
            if silently_correct and "default" in settings:
                return settings["default"]
            raise

    @staticmethod
    def _clamp(settings, value):
        if "min" in settings and value < settings["min"]:
            raise ValueError(f"{value} is below the minimum of {settings['min']}")
        if "max" in settings and value > settings["max"]:
            raise ValueError(f"{value} is above the maximum of {settings['max']}")
        return value
