"""Logging setup with a rich console handler."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from .config import settings

_configured = False


def setup_logging(level: str | None = None) -> None:
    """Attach a RichHandler to the ``fquant`` logger (idempotent)."""
    global _configured
    logger = logging.getLogger("fquant")
    logger.setLevel((level or settings.log_level).upper())
    if _configured:
        return
    handler = RichHandler(
        console=Console(stderr=True), rich_tracebacks=False, show_path=False, markup=False
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    _configured = True
