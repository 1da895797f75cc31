"""``python -m mvnlab``."""

import sys

from mvnlab.cli import main

if __name__ == "__main__":
    sys.exit(main())
