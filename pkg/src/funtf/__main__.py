"""Entry point for running funtf as a module: python -m funtf."""

from funtf.cli import app

if __name__ == "__main__":
    app()
