import logging
from typing import Optional, Union


def setup_logging(level: Optional[Union[int, str]] = None):
    """Configures root logging for the workbench; the CLI calls this once."""
    if level is None:
        from resources.config import get_settings

        level = get_settings().log_level
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


class LoggingMixin:
    @property
    def logger(self) -> logging.Logger:
        if not hasattr(self, "_logger"):
            # Use classname as logger name if not set
            self._logger = logging.getLogger(self.__class__.__name__)
        return self._logger

    @classmethod
    def class_logger(cls) -> logging.Logger:
        return logging.getLogger(cls.__name__)
