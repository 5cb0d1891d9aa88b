#!/usr/bin/env python3
"""
Left-Orderability Toolkit
Main entry point
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
