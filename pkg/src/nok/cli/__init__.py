"""Command line interface, model files and expression parsing."""
