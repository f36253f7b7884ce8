import json

import pytest

from pwuncert.piecewise import PiecewisePoly
from pwuncert.poly import Polynomial
from pwuncert.symmetry import asymmetric_cubic

# The rounded-decimal cubic example carries ~1e-10 residues at its support
# boundary; this tolerance admits it into the zero-boundary class.
CUBIC_TOL = 1e-9


@pytest.fixture(scope="session")
def cubic() -> PiecewisePoly:
    return asymmetric_cubic()


@pytest.fixture(scope="session")
def boxcar() -> PiecewisePoly:
    return PiecewisePoly.single("-1/2", "1/2", Polynomial.of([1]))


@pytest.fixture(scope="session")
def quartic_bump() -> PiecewisePoly:
    """(1 - x^2)^2 on [-1, 1]: smooth, even, zero boundary."""
    return PiecewisePoly.single(-1, 1, Polynomial.of([1, 0, -1]) ** 2)


@pytest.fixture
def tent_file(tmp_path):
    path = tmp_path / "tent.json"
    path.write_text(json.dumps(
        {"breakpoints": ["-1", "0", "1"], "pieces": [["1", "1"], ["1", "-1"]]}
    ))
    return str(path)


@pytest.fixture
def cubic_file(tmp_path, cubic):
    path = tmp_path / "cubic.json"
    path.write_text(json.dumps(cubic.to_json_dict()))
    return str(path)
