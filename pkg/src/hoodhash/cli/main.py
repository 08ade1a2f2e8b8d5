import logging
from enum import StrEnum
from typing import Optional

from typer import Option, Typer, echo

from hoodhash.cli.bench import bench
from hoodhash.cli.verify import app as verify_app

app = Typer(name="hoodhash", help="Concurrent Robin Hood hash set: benchmarks and verification suites")
app.add_typer(verify_app, name="verify", help="Run correctness suites against the table and the K-CAS engine")
app.command(name="bench")(bench)

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


class LogLevel(StrEnum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


@app.callback()
def configure(
    log_level: Optional[LogLevel] = Option(
        None, "--log-level", case_sensitive=False, help="Logging level (default: HOODHASH_LOG_LEVEL or WARNING)"
    ),
):
    """
    Configure logging once for every command.
    """
    from hoodhash.settings import settings

    level = (log_level or settings.LOG_LEVEL).upper()
    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT)
    logging.getLogger("hoodhash").setLevel(level)


@app.command()
def version():
    """
    Show the installed version of hoodhash.
    """
    from importlib.metadata import PackageNotFoundError
    from importlib.metadata import version as get_version

    try:
        echo(f"hoodhash version: {get_version('hoodhash')}")
    except PackageNotFoundError:
        echo("hoodhash version: development")


def main():
    app(prog_name="hoodhash")


if __name__ == "__main__":
    main()
