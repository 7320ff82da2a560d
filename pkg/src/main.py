#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Main entry point for qisosrg.
Sets up logging and hands the command line to the CLI dispatcher.
"""

import sys
import os
import logging

# Import local modules
from cli import EXIT_USAGE, run

LOG_DIR = os.path.expanduser("~/.config/qisosrg/logs")
LOG_FILE = os.path.join(LOG_DIR, "qisosrg.log")

logger = logging.getLogger(__name__)


def setup_logging(level=logging.INFO):
    """Log to ~/.config/qisosrg/logs/qisosrg.log and to the console."""
    handlers = [logging.StreamHandler()]
    try:
        os.makedirs(LOG_DIR, exist_ok=True)
        handlers.insert(0, logging.FileHandler(LOG_FILE))
    except OSError:
        pass
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )


def main(argv=None):
    """Main application entry point."""
    setup_logging()
    try:
        code = run(argv)
    except SystemExit:
        raise
    except Exception as e:
        logger.critical(f"Fatal error: {e}", exc_info=True)
        code = EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
