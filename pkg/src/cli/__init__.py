"""
Command-line surface: ``python -m src.cli <command>``.
"""

from src.cli.main import build_parser, main

__all__ = ["build_parser", "main"]
