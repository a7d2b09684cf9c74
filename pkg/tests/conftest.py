import pytest
import os
import sys
from dotenv import load_dotenv

# Add src/ to the Python path so the package imports without installation
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(project_root, "src"))

# Load environment variables
load_dotenv()

from shifted_orders.algebra_files import bundled_corpus_dir  # noqa: E402
from shifted_orders.field_factory import get_field  # noqa: E402
from shifted_orders.settings import GlobalSettings  # noqa: E402
from shifted_orders.toolkit import ShiftToolkit  # noqa: E402

# Invariants of the bundled corpus; "inf" means the cap was reached
CORPUS_EXPECTED = {
    "semisimple_k2": {"dim": 2, "gldim": 0, "domdim": "inf", "n": 0},
    "loop_sq": {"dim": 2, "gldim": "inf", "domdim": "inf", "n": 0},
    "loop_cube": {"dim": 3, "gldim": "inf", "domdim": "inf", "n": 0},
    "a2": {"dim": 3, "gldim": 1, "domdim": 1, "n": 1},
    "a3_linear": {"dim": 6, "gldim": 1, "domdim": 1, "n": 1},
    "a3_sink": {"dim": 5, "gldim": 1, "domdim": 0, "n": 1},
    "auslander_kx2": {"dim": 5, "gldim": 2, "domdim": 2, "n": 2},
    "auslander_kx3": {"dim": 14, "gldim": 2, "domdim": 2, "n": 2},
    "comm_square": {"dim": 9, "gldim": 2, "domdim": 1, "n": 2},
    "nakayama_a4_rad2": {"dim": 7, "gldim": 3, "domdim": 3, "n": 3},
}


@pytest.fixture(scope="session")
def field():
    """The default working field F_101"""
    return get_field("p101")


@pytest.fixture(scope="session")
def rationals():
    return get_field("q")


@pytest.fixture(scope="session")
def corpus_dir():
    return bundled_corpus_dir()


@pytest.fixture(scope="session")
def settings():
    """Settings pinned to the defaults, whatever the environment says"""
    return GlobalSettings(cap=24, seed=0, default_field="p101", log_level="WARNING", max_workers=1)


@pytest.fixture(scope="session")
def load_toolkit(settings, corpus_dir):
    """Factory returning one shared toolkit per bundled algebra"""
    cache = {}

    def _load(name):
        if name not in cache:
            cache[name] = ShiftToolkit.from_file(corpus_dir / f"{name}.alg", settings=settings)
        return cache[name]
    return _load


@pytest.fixture(scope="session")
def a2(load_toolkit):
    return load_toolkit("a2").algebra


@pytest.fixture(scope="session")
def a3_sink(load_toolkit):
    return load_toolkit("a3_sink").algebra


@pytest.fixture(scope="session")
def loop_sq(load_toolkit):
    return load_toolkit("loop_sq").algebra


@pytest.fixture(scope="session")
def auslander_kx2(load_toolkit):
    return load_toolkit("auslander_kx2").algebra


@pytest.fixture(scope="session")
def nakayama(load_toolkit):
    return load_toolkit("nakayama_a4_rad2").algebra
