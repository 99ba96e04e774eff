"""Allow ``python -m pancakes``."""

import sys

from .cli import main

sys.exit(main())
