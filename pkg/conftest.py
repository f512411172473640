import pytest

# Command line options for pytest must be added from conftest.py from where
# `pytest` is called.
def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run the identity suite over many generated variants. This increases test time.",
    )


def pytest_collection_modifyitems(config, items):
    run_slow = config.getoption("--run-slow")
    skip_slow = pytest.mark.skip(reason="need --run-slow option to run")
    for item in items:
        # All tests marked with `pytest.mark.slow` get skipped unless
        # `--run-slow` passed
        if not run_slow and ("slow" in item.keywords):
            item.add_marker(skip_slow)
