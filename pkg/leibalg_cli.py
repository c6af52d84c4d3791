#!/usr/bin/env python3
"""
Command-line interface for leibalg.
"""

from leibalg.cli.main import main

if __name__ == "__main__":
    main()
