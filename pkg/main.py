"""
KR-Torus Application Entry Point

This is the main entry point for the KR-Torus command line.
It imports and runs the CLI from the app package.
"""

import sys

from app.main import main

if __name__ == "__main__":
    sys.exit(main())
