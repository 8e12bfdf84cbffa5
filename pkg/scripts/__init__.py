"""Command-line entry points for the verification lab."""
