"""
CLI Commands Package Initialization

One module per subcommand of the funcval CLI.
"""

from . import evaluate, table, verify

__all__ = ["evaluate", "table", "verify"]
