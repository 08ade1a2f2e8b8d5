from hoodhash.cli.main import main

__all__ = ["main"]
