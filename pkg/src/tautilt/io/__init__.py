"""Command line and file formats."""
