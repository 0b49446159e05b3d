import pytest

from entmi.cli import main as cli_main


def _run_cli(argv):
    """Invoke the CLI in-process, turning argparse exits into return codes."""
    try:
        return cli_main(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0


@pytest.fixture
def run_cli():
    return _run_cli
