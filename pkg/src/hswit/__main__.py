"""Module entry point: ``python -m hswit``."""

import sys

from .cli import main

sys.exit(main())
