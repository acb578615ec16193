"""fdots CLI Module"""
from fdots.cli.commands import main

__all__ = ["main"]
