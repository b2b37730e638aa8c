"""
API Package Initialization

JSON input/output models for the CLI. Command implementations live in
funcval.api.commands and are imported by the entry point.
"""

from . import models

__all__ = ["models"]
