"""
Logging setup
"""
import logging

from jetvar.config_manager import config


class CustomFormatter(logging.Formatter):
    """
    Formatter that tolerates records without a ``location`` attribute
    """
    def format(self, record):
        if not hasattr(record, 'location'):
            record.location = 'N/A'
        return super().format(record)


formatter = CustomFormatter('%(asctime)s - %(name)s - %(levelname)s - %(location)s - %(message)s')


def get_logger(name="jetvar"):
    """
    Get the package logger, configuring handlers on first use

    Level and optional log file come from ``jetvar.log_level`` and
    ``jetvar.log_file``.

    :param str name:  Logger name; children of "jetvar" share its handlers
    :return logging.Logger:
    """
    log = logging.getLogger("jetvar")
    if not getattr(log, "_jetvar_configured", False):
        log.setLevel(config.get("jetvar.log_level", "WARNING"))
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(formatter)
        log.addHandler(stream_handler)

        if config.get("jetvar.log_file"):
            file_handler = logging.FileHandler(config.get("jetvar.log_file"))
            file_handler.setFormatter(formatter)
            log.addHandler(file_handler)

        log.propagate = False
        log._jetvar_configured = True

    return log if name == "jetvar" else logging.getLogger(name)


def reconfigure():
    """
    Re-read level and handlers after the configuration changed
    """
    log = logging.getLogger("jetvar")
    for handler in list(log.handlers):
        log.removeHandler(handler)
    log._jetvar_configured = False
    return get_logger()
