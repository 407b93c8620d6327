import os
import subprocess
import sys

import numpy as np
import pytest

from hyperstab import kernels
from hyperstab.bell import _element_terms
from hyperstab.stabilizer import generator_arrays, parse_state_spec


def selected_backend(env_value):
    env = dict(os.environ, HYPERSTAB_PURE_PYTHON=env_value)
    out = subprocess.run(
        [sys.executable, "-c", "import hyperstab.kernels as k; print(k.BACKEND)"],
        capture_output=True, text=True, check=True, env=env,
    )
    return out.stdout.strip()


def test_env_forces_python_backend():
    assert selected_backend("1") == "python"


def test_default_prefers_compiled():
    expected = "compiled" if "compiled" in kernels.available_backends() else "python"
    assert selected_backend("") == expected


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.load_backend("fortran")


@pytest.mark.parametrize("name", kernels.available_backends())
def test_backend_kernels_against_each_other(name):
    impl = kernels.load_backend(name)
    ref = kernels.load_backend("python")
    state = parse_state_spec("3:010,4:0110")
    gens = generator_arrays(state)
    assert impl.count_negative(*gens, 0, 0, 0) == ref.count_negative(*gens, 0, 0, 0)
    _, x, z, _ = ref.enumerate_arrays(*gens)
    for vx, vy, vz in [(0, 0, 0), (0b1010011, 0b11, 0b100), (127, 0, 127)]:
        assert impl.bell_sweep(*gens, vx, vy, vz) == ref.bell_sweep(*gens, vx, vy, vz)
        assert np.array_equal(impl.term_parities(x, z, vx, vy, vz), ref.term_parities(x, z, vx, vy, vz))
    sign, incidence = _element_terms(parse_state_spec("3:000"))
    free = [v for v in incidence if v.size]
    ptr = np.concatenate([[0], np.cumsum([v.size for v in free])]).astype(np.int64)
    idx = np.concatenate(free).astype(np.int64)
    assert impl.lhv_exhaustive(sign, ptr, idx)[0] == ref.lhv_exhaustive(sign, ptr, idx)[0] == 6
