"""Allow `python -m lucasdual` as an alias for the `lucasdual` script."""

import sys

from .cli import run

sys.exit(run(sys.argv[1:]))
