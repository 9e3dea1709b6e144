import logging
import warnings

from rich.console import Console
from rich.logging import RichHandler


def initialize_logging(level: str = "WARNING"):
    """Route all logging to a single rich handler on stderr."""
    # Remove any existing handlers
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)

    # stdout carries JSON and .khg payloads, so logs go to stderr only
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        markup=False,
        rich_tracebacks=False,
    )
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(name)s: %(message)s",
        datefmt="[%X]",
        handlers=[handler],
    )

    # Suppress library deprecation noise
    warnings.filterwarnings('ignore', category=DeprecationWarning)
