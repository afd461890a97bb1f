"""Run the command line.

Usage:
    python -m app validate workspace.json
    python -m app serve
"""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
