"""
fdots CLI Entry Point

Run with: python -m fdots
"""

import sys

from fdots.cli import main

if __name__ == "__main__":
    sys.exit(main())
