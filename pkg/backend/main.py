"""
Entry point for running the verifier from a source checkout: ``python main.py verify ...``.
"""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
