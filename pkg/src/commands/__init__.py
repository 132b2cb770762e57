# Lexical complexity toolkit CLI commands
from . import agreement, correlate, describe, experiment, freq, origin_gap, report

COMMANDS = [freq, agreement, correlate, origin_gap, experiment, report, describe]

__all__ = ["COMMANDS"]
