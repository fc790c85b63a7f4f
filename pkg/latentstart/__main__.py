#!/usr/bin/env python3
"""
latentstart - batch runner entry point (``python -m latentstart``).
"""
import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
