import pathlib
import sys

import pytest

# allow running the suite from a fresh checkout without installing
_SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
if str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))

from infoqm import Grid1D, solve_state  # noqa: E402


@pytest.fixture(scope="session")
def states():
    """Solved closed-form states n = 0..7, shared across the suite."""
    return [solve_state(n) for n in range(8)]


@pytest.fixture(scope="session")
def analysis_grid():
    return Grid1D(-14.0, 14.0, 8001)


# the published six-figure reference values the solver must reproduce
GOLDEN_TABLE = {
    0: (0.561903, 0.165957, -1.34046, 0.836186),
    1: (0.8846183, 0.182575, -1.18673, 2.69296),
    2: (1.483947, 0.265717, -0.675132, 3.01642),
    3: (2.374767, 0.271151, -0.650844, 4.71831),
    4: (3.3791495, 0.312319, -0.488143, 5.00752),
    5: (4.5328009, 0.309387, -0.498664, 6.76468),
    6: (5.7558755, 0.334322, -0.413460, 7.03368),
    7: (7.07846158, 0.330258, -0.426725, 8.81483),
}
